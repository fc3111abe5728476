"""Reed-Solomon codes with explicit evaluation points, syndromes, unique
decoding, and the mask construction used to hide one symbol from t observers.

A code [n, k] here is the set of evaluations of degree < k polynomials at n
distinct nonzero points (by default the n smallest nonzero field elements in
index order).  The parity-check matrix comes from the dual GRS description:
row r has entries u_i * pt_i^r where u_i = prod_{j != i} (pt_i - pt_j)^{-1},
so it is deterministic and its first row has all entries nonzero.
"""

import numpy as np

from . import gf


class ReedSolomonCode:
    def __init__(self, n, k, f, points=None):
        if not 1 <= k <= n:
            raise ValueError("need 1 <= k <= n, got k=%d n=%d" % (k, n))
        if n >= f.q:
            raise ValueError("length %d needs more nonzero points than %r has" % (n, f))
        if points is None:
            points = np.arange(1, n + 1, dtype=np.int64)
        else:
            points = np.asarray(points, dtype=np.int64)
            if points.shape != (n,):
                raise ValueError("expected %d evaluation points" % n)
            if np.any(points == 0) or len(set(points.tolist())) != n:
                raise ValueError("evaluation points must be distinct and nonzero")
            f.check_array(points)
        self.n = n
        self.k = k
        self.field = f
        self.points = points
        self.d = n - k + 1
        self.radius = (n - k) // 2
        # pow_table[i, j] = points[i]^j
        pt = f.zeros((n, n))
        pt[:, 0] = 1
        for j in range(1, n):
            pt[:, j] = f.vmul(pt[:, j - 1], points)
        self.pow_table = pt
        self.G = pt[:, :k].T.copy()
        # dual GRS column multipliers
        diffs = f.vsub(points[:, None], points[None, :])
        np.fill_diagonal(diffs, 1)
        u = f.zeros(n)
        u[:] = 1
        for j in range(n):
            u = f.vmul(u, diffs[:, j])
        self.dual_mult = f.vinv(u)
        self.H = f.vmul(self.dual_mult[None, :], pt[:, : n - k].T)
        if n - k > 0 and np.any(gf.mat_mul(f, self.G, self.H.T)):
            raise AssertionError("parity check does not annihilate the code")

    def encode(self, msg):
        """Evaluate the message polynomial; msg is (k,) or a batch (..., k)."""
        msg = np.asarray(msg, dtype=np.int64)
        if msg.shape[-1] != self.k:
            raise ValueError("message length must be %d" % self.k)
        flat = msg.reshape(-1, self.k)
        out = gf.mat_mul(self.field, flat, self.G)
        return out.reshape(msg.shape[:-1] + (self.n,))

    def syndrome(self, word):
        """H times word, shape (..., n) -> (..., n-k)."""
        word = np.asarray(word, dtype=np.int64)
        if word.shape[-1] != self.n:
            raise ValueError("word length must be %d" % self.n)
        flat = word.reshape(-1, self.n)
        out = gf.mat_mul(self.field, flat, self.H.T)
        return out.reshape(word.shape[:-1] + (self.n - self.k,))

    def random_codeword(self, rng, count=None):
        """Uniformly random codeword(s) from a seeded generator."""
        shape = (self.k,) if count is None else (count, self.k)
        return self.encode(self.field.random(rng, shape))

    def contains(self, word):
        return not np.any(self.syndrome(word))

    def unique_decode(self, y):
        """Closest codeword within floor((d-1)/2), or None if there is none.

        Returns (codeword, error) with y = codeword + error.
        """
        y = np.asarray(y, dtype=np.int64)
        X, E, ok = self.unique_decode_batch(y[None, :])
        if not ok[0]:
            return None
        return X[0], E[0]

    def unique_decode_batch(self, Y):
        """Vectorized unique decoding: returns (codewords, errors, ok mask)."""
        f = self.field
        Y = np.asarray(Y, dtype=np.int64)
        nb = Y.shape[0]
        n, k, fr = self.n, self.k, self.radius
        X = Y.copy()
        E = f.zeros(Y.shape)
        syn = self.syndrome(Y)
        clean = ~np.any(syn != 0, axis=1) if syn.shape[1] else np.ones(nb, dtype=bool)
        ok = clean.copy()
        todo = np.nonzero(~clean)[0]
        if fr == 0 or todo.size == 0:
            return X, E, ok
        # Welch-Berlekamp: find Q (deg < k+fr) and monic E (deg fr) with
        # Q(p_i) = y_i * E(p_i); then the codeword polynomial is Q / E.
        Yt = Y[todo]
        m = todo.size
        left = np.broadcast_to(self.pow_table[None, :, : k + fr], (m, n, k + fr))
        right = f.vmul(f.vneg(Yt)[:, :, None], self.pow_table[None, :, :fr])
        A = np.concatenate([left, right], axis=2)
        b = f.vmul(Yt, self.pow_table[None, :, fr])
        sol, solvable = gf.solve_batched(f, A, b)
        Q = sol[:, : k + fr]
        Elow = sol[:, k + fr :]
        # divide Q by the monic E via synthetic division
        rem = Q.copy()
        quot = f.zeros((m, k))
        for d in range(k - 1, -1, -1):
            c = rem[:, d + fr].copy()
            quot[:, d] = c
            rem[:, d : d + fr] = f.vsub(rem[:, d : d + fr], f.vmul(c[:, None], Elow))
            rem[:, d + fr] = 0
        divides = ~np.any(rem[:, :fr] != 0, axis=1)
        cand = self.encode(quot)
        err = f.vsub(Yt, cand)
        close = np.count_nonzero(err, axis=1) <= fr
        good = solvable & divides & close
        sel = todo[good]
        X[sel] = cand[good]
        E[sel] = err[good]
        ok[sel] = True
        return X, E, ok


def rs_build(n, k, f, points=None):
    """Reed-Solomon [n, k] code over f at the n smallest nonzero points."""
    return ReedSolomonCode(n, k, f, points)


class PrivacyPair:
    """An [n, t+1] code C together with a mask row h.

    h is taken from a parity check of the [n+1, t+1] parent code whose last
    entry alpha is nonzero, restricted to the first n coordinates.  For any
    parent codeword (x | x_last): h . x = -alpha * x_last, and for a uniform
    codeword of C the mask h . x stays uniform even after t coordinates of x
    are revealed.
    """

    def __init__(self, code, parent, h, alpha):
        self.code = code
        self.parent = parent
        self.h = h
        self.alpha = alpha
        self.field = code.field

    def mask(self, words):
        """h . word along the last axis."""
        return self.field.vdot(self.h, np.asarray(words, dtype=np.int64))


def build_privacy_pair(n, t, f):
    """Code + mask pair for n channels and t observers; needs n+1 < q."""
    if t < 0 or t + 1 > n:
        raise ValueError("need 0 <= t <= n-1, got t=%d n=%d" % (t, n))
    parent = ReedSolomonCode(n + 1, t + 1, f)
    code = ReedSolomonCode(n, t + 1, f)
    # first parity row of the parent is the dual multiplier vector: all
    # entries nonzero, so it serves directly
    row = parent.H[0]
    h = row[:n].copy()
    alpha = int(row[n])
    if alpha == 0:
        raise AssertionError("dual multiplier vanished (unreachable)")
    return PrivacyPair(code, parent, h, alpha)
