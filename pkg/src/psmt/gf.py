"""Finite fields F_p and F_{p^m} with array-friendly exact arithmetic.

Elements are plain ints in [0, q).  For an extension field of degree m the int
encodes the coefficient vector of the residue polynomial in little-endian base
p: the element c0 + c1*x + ... + c_{m-1}*x^{m-1} has index sum(c_i * p^i).
So 0 and 1 are the field's zero and one in every representation, and "smallest"
always means smallest index.

Scalar ops (add, mul, inv, ...) work on ints; the v-prefixed ops work on numpy
int64 arrays of any shape and are what the coding layers use.  A thin
FieldElement wrapper with operator overloading is provided for interactive use.
"""

import numpy as np


def is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def next_prime_above(n):
    """Smallest prime strictly greater than n."""
    c = n + 1
    while not is_prime(c):
        c += 1
    return c


class FieldElement:
    """An int bound to its field, with operator overloading."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        field.check(value)
        self.field = field
        self.value = value

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise ValueError("elements belong to different fields")
            return other.value
        if isinstance(other, (int, np.integer)):
            self.field.check(int(other))
            return int(other)
        raise TypeError("cannot combine FieldElement with %r" % (other,))

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._coerce(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._coerce(other), self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._coerce(other)))

    def __rtruediv__(self, other):
        return FieldElement(self.field, self.field.div(self._coerce(other), self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, e):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field is other.field and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == int(other)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.value))

    def __int__(self):
        return self.value

    def __repr__(self):
        return "%r(%d)" % (self.field, self.value)


class _FieldBase:
    """Shared plumbing; subclasses fill in the raw arithmetic."""

    def check(self, v):
        if not isinstance(v, (int, np.integer)) or not 0 <= v < self.q:
            raise ValueError("not an element of %r: %r" % (self, v))

    def check_array(self, a):
        a = np.asarray(a, dtype=np.int64)
        if a.size and (a.min() < 0 or a.max() >= self.q):
            raise ValueError("array holds values outside %r" % (self,))
        return a

    def __call__(self, v):
        return FieldElement(self, int(v))

    def elements(self):
        return range(self.q)

    def zeros(self, shape):
        return np.zeros(shape, dtype=np.int64)

    def random(self, rng, shape=()):
        """Uniform elements; index uniformity is element uniformity."""
        return rng.integers(0, self.q, size=shape, dtype=np.int64)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def pow(self, a, e):
        if e < 0:
            return self.pow(self.inv(a), -e)
        r, base = 1, a
        while e:
            if e & 1:
                r = self.mul(r, base)
            base = self.mul(base, base)
            e >>= 1
        return r

    def vdot(self, a, b):
        """Inner product along the last axis."""
        prod = self.vmul(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        out = self.zeros(prod.shape[:-1])
        for i in range(prod.shape[-1]):
            out = self.vadd(out, prod[..., i])
        return out


class PrimeField(_FieldBase):
    """F_p for prime p."""

    def __init__(self, p):
        if not is_prime(p):
            raise ValueError("modulus %d is not prime" % p)
        self.p = p
        self.q = p
        self.deg = 1
        if p <= 1 << 20:
            # inv[a] from the standard recurrence inv[a] = -(p//a) * inv[p%a]
            inv = np.zeros(p, dtype=np.int64)
            if p > 1:
                inv[1] = 1
            for a in range(2, p):
                inv[a] = (-(p // a) * inv[p % a]) % p
            self._inv_table = inv
        else:
            self._inv_table = None

    def add(self, a, b):
        return (a + b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in %r" % self)
        if self._inv_table is not None:
            return int(self._inv_table[a])
        return pow(a, self.p - 2, self.p)

    def vadd(self, a, b):
        return (a + b) % self.p

    def vmul(self, a, b):
        return (a * b) % self.p

    def vneg(self, a):
        return (-a) % self.p

    def vinv(self, a):
        a = np.asarray(a)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in %r" % self)
        if self._inv_table is not None:
            return self._inv_table[a]
        flat = [pow(int(v), self.p - 2, self.p) for v in a.ravel()]
        return np.array(flat, dtype=np.int64).reshape(a.shape)

    def vdot(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        return np.einsum("...i,...i->...", a % self.p, b % self.p) % self.p

    def __repr__(self):
        return "F_%d" % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))


def _poly_trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mul_mod(a, b, modulus, p):
    """Multiply coefficient lists mod (modulus, p).  modulus is monic."""
    m = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    # reduce: x^m = -(modulus minus leading term)
    for d in range(len(prod) - 1, m - 1, -1):
        c = prod[d]
        if c:
            prod[d] = 0
            for j in range(m):
                prod[d - m + j] = (prod[d - m + j] - c * modulus[j]) % p
    prod = prod[:m]
    return prod + [0] * (m - len(prod))


def _poly_divmod(a, b, p):
    """Quotient and remainder of coefficient lists over F_p.  b nonzero."""
    a = list(a)
    b = _poly_trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], p - 2, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    for d in range(len(a) - len(b), -1, -1):
        c = (a[d + len(b) - 1] * inv_lead) % p
        if c:
            q[d] = c
            for j, bj in enumerate(b):
                a[d + j] = (a[d + j] - c * bj) % p
    return q, _poly_trim(a)


def _poly_gcd(a, b, p):
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        _, r = _poly_divmod(a, b, p)
        a, b = b, r
    return a


def poly_is_irreducible(coeffs, p):
    """Irreducibility of a monic polynomial over F_p via x^(p^d) - x gcds."""
    m = len(coeffs) - 1
    if m < 1 or coeffs[-1] != 1:
        return False
    if m == 1:
        return True
    if coeffs[0] == 0:  # divisible by x
        return False
    # x^(p^d) mod f, taking gcd with x^(p^d) - x for d <= m/2
    xp = [0, 1] + [0] * (m - 2) if m >= 2 else [1]
    cur = list(xp)
    for d in range(1, m // 2 + 1):
        nxt = list(cur)
        e = p
        acc = [1] + [0] * (m - 1)
        base = list(nxt)
        while e:
            if e & 1:
                acc = _poly_mul_mod(acc, base, coeffs, p)
            base = _poly_mul_mod(base, base, coeffs, p)
            e >>= 1
        cur = acc
        diff = list(cur)
        diff[1] = (diff[1] - 1) % p
        g = _poly_gcd(diff, coeffs, p)
        if len(g) - 1 >= 1:
            return False
    return True


def default_modulus(p, m):
    """Smallest-index monic irreducible of degree m over F_p."""
    for low in range(p ** m):
        coeffs = []
        v = low
        for _ in range(m):
            coeffs.append(v % p)
            v //= p
        coeffs.append(1)
        if poly_is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise ValueError("no irreducible polynomial found (unreachable)")


class ExtensionField(_FieldBase):
    """F_{p^m} as residues mod an irreducible polynomial, with exp/log tables."""

    _TABLE_LIMIT = 1 << 20

    def __init__(self, p, m, modulus=None):
        if not is_prime(p):
            raise ValueError("characteristic %d is not prime" % p)
        if m < 2:
            raise ValueError("extension degree must be at least 2")
        if p ** m > self._TABLE_LIMIT:
            raise ValueError("field size %d exceeds table limit" % p ** m)
        if modulus is None:
            modulus = default_modulus(p, m)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree %d" % m)
        if not poly_is_irreducible(list(modulus), p):
            raise ValueError("modulus %r is reducible over F_%d" % (modulus, p))
        self.p = p
        self.m = m
        self.deg = m
        self.q = p ** m
        self.modulus = modulus
        self._pow_p = np.array([p ** i for i in range(m)], dtype=np.int64)
        self._build_tables()
        # direct product/sum tables keep hot loops to one fancy index each
        if self.q <= 1 << 10:
            idx = np.arange(self.q, dtype=np.int64)
            self._mul_table = self._vmul_logs(idx[:, None], idx[None, :])
            self._add_table = None if p == 2 else self._vadd_digits(idx[:, None], idx[None, :])
            self._neg_table = None if p == 2 else self._vneg_digits(idx)
        else:
            self._mul_table = self._add_table = self._neg_table = None

    def encode(self, coeffs):
        """Coefficient list (little-endian) -> element index."""
        v = 0
        for c in reversed(coeffs):
            v = v * self.p + (c % self.p)
        return v

    def decode(self, v):
        """Element index -> coefficient list of length m."""
        out = []
        for _ in range(self.m):
            out.append(v % self.p)
            v //= self.p
        return out

    def _raw_mul(self, a, b):
        return self.encode(
            _poly_mul_mod(self.decode(a), self.decode(b), list(self.modulus), self.p)
        )

    def _build_tables(self):
        q = self.q
        # find a multiplicative generator by direct order computation
        for g in range(2, q):
            exp = np.zeros(q - 1, dtype=np.int64)
            exp[0] = 1
            x = 1
            ok = True
            for i in range(1, q - 1):
                x = self._raw_mul(x, g)
                if x == 1:
                    ok = False
                    break
                exp[i] = x
            if ok and self._raw_mul(x, g) == 1:
                log = np.zeros(q, dtype=np.int64)
                log[exp] = np.arange(q - 1)
                self.generator = g
                self._exp = exp
                self._log = log
                return
        raise ValueError("no generator found (unreachable for a field)")

    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        r = 0
        mul = 1
        for _ in range(self.m):
            r += ((a + b) % self.p) * mul
            a //= self.p
            b //= self.p
            mul *= self.p
        return r

    def neg(self, a):
        if self.p == 2:
            return a
        r = 0
        mul = 1
        for _ in range(self.m):
            r += ((-a) % self.p) * mul
            a //= self.p
            mul *= self.p
        return r

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return int(self._exp[(self._log[a] + self._log[b]) % (self.q - 1)])

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in %r" % self)
        return int(self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)])

    def _vadd_digits(self, a, b):
        r = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for i in range(self.m - 1, -1, -1):
            pi = self._pow_p[i]
            r += ((a // pi + b // pi) % self.p) * pi
            a = a % pi
            b = b % pi
        return r

    def _vneg_digits(self, a):
        r = np.zeros(a.shape, dtype=np.int64)
        for i in range(self.m - 1, -1, -1):
            pi = self._pow_p[i]
            r += ((-(a // pi)) % self.p) * pi
            a = a % pi
        return r

    def _vmul_logs(self, a, b):
        nz = (a != 0) & (b != 0)
        av = np.where(a == 0, 1, a)
        bv = np.where(b == 0, 1, b)
        r = self._exp[(self._log[av] + self._log[bv]) % (self.q - 1)]
        return np.where(nz, r, 0)

    def vadd(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        if self._add_table is not None:
            return self._add_table[a, b]
        return self._vadd_digits(a, b)

    def vneg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a.copy()
        if self._neg_table is not None:
            return self._neg_table[a]
        return self._vneg_digits(a)

    def vmul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self._mul_table is not None:
            return self._mul_table[a, b]
        return self._vmul_logs(a, b)

    def vinv(self, a):
        a = np.asarray(a)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in %r" % self)
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def frob(self, a, i=1):
        """a^(p^i), the i-fold Frobenius."""
        return self.pow(a, self.p ** i)

    def vfrob(self, a, i=1):
        a = np.asarray(a, dtype=np.int64)
        e = self.p ** i
        nz = a != 0
        av = np.where(nz, a, 1)
        r = self._exp[(self._log[av] * e) % (self.q - 1)]
        return np.where(nz, r, 0)

    def __repr__(self):
        return "F_%d^%d" % (self.p, self.m)

    def __eq__(self, other):
        return (
            isinstance(other, ExtensionField)
            and other.p == self.p
            and other.m == self.m
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("ExtensionField", self.p, self.m, self.modulus))


def field(p, m=1, modulus=None):
    """Build F_p (m == 1) or F_{p^m}.  Raises ValueError on bad parameters."""
    if m == 1:
        if modulus is not None:
            raise ValueError("modulus only applies to extension fields")
        return PrimeField(p)
    return ExtensionField(p, m, modulus)


def field_of_order(q):
    """Field with q elements, factoring q as a prime power."""
    for p in range(2, q + 1):
        if q % p == 0:
            m = 0
            v = q
            while v % p == 0:
                v //= p
                m += 1
            if v != 1:
                raise ValueError("%d is not a prime power" % q)
            return field(p, m)
    raise ValueError("order must be at least 2")


# --- linear algebra over an arbitrary field object ---------------------------


def _eliminate(f, M, limit):
    """In-place forward/backward elimination on M, pivoting in columns < limit.

    Returns the list of pivot columns.  M ends in reduced row echelon form
    with respect to those columns.
    """
    rows = M.shape[0]
    pivots = []
    r = 0
    for c in range(limit):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            M[[r, pr]] = M[[pr, r]]
        M[r] = f.vmul(M[r], f.vinv(M[r, c : c + 1]))
        factor = M[:, c].copy()
        factor[r] = 0
        M[...] = f.vsub(M, f.vmul(factor[:, None], M[r][None, :]))
        pivots.append(c)
        r += 1
    return pivots


def rref(f, M):
    """Reduced row echelon form and pivot columns."""
    M = np.array(M, dtype=np.int64)
    pivots = _eliminate(f, M, M.shape[1]) if M.size else []
    return M, pivots


def mat_rank(f, M):
    M = np.asarray(M, dtype=np.int64)
    if M.size == 0:
        return 0
    return len(rref(f, M)[1])


def mat_mul(f, A, B):
    """Matrix product over f; falls back to a k-loop for extension fields."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if isinstance(f, PrimeField):
        return (A @ B) % f.p
    out = f.zeros((A.shape[0], B.shape[1]))
    for i in range(A.shape[1]):
        out = f.vadd(out, f.vmul(A[:, i : i + 1], B[i : i + 1, :]))
    return out


def solve_right(f, A, b):
    """Solve A x = b.  b may be a vector or a matrix of stacked columns.

    Returns (x, ok): free variables are set to zero, and ok flags consistency
    (a bool, or a bool array with one entry per right-hand column).
    """
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    single = b.ndim == 1
    b2 = b[:, None] if single else b
    ncols = A.shape[1]
    aug = np.concatenate([A, b2], axis=1)
    pivots = _eliminate(f, aug, ncols)
    zero_rows = ~np.any(aug[:, :ncols] != 0, axis=1)
    if zero_rows.any():
        ok = ~np.any(aug[zero_rows][:, ncols:] != 0, axis=0)
    else:
        ok = np.ones(b2.shape[1], dtype=bool)
    x = f.zeros((ncols, b2.shape[1]))
    for row, col in enumerate(pivots):
        x[col] = aug[row, ncols:]
    if single:
        return x[:, 0], bool(ok[0])
    return x, ok


def null_space(f, A):
    """Rows form a basis of the right null space of A (RREF-derived, so
    deterministic)."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[1]
    R, pivots = rref(f, A)
    free = [c for c in range(n) if c not in pivots]
    basis = f.zeros((len(free), n))
    for i, fc in enumerate(free):
        basis[i, fc] = 1
        for row, pc in enumerate(pivots):
            basis[i, pc] = f.neg(int(R[row, fc]))
    return basis


def solve_batched(f, A, b):
    """Solve A[i] x = b[i] for a stack of systems.

    A has shape (B, R, C) and b (B, R).  Returns (X, ok) with X of shape
    (B, C) (free variables zero) and ok a bool array flagging consistency.
    """
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    nb, rows, ncols = A.shape
    aug = np.concatenate([A, b[:, :, None]], axis=2).copy()
    ptr = np.zeros(nb, dtype=np.int64)
    pivot_row = -np.ones((nb, ncols), dtype=np.int64)
    rowidx = np.arange(rows)
    for c in range(ncols):
        mask = (rowidx[None, :] >= ptr[:, None]) & (aug[:, :, c] != 0)
        has = mask.any(axis=1)
        if not has.any():
            continue
        pr = np.argmax(mask, axis=1)
        bi = np.nonzero(has)[0]
        # swap the found pivot rows up to position ptr
        tmp = aug[bi, ptr[bi], :].copy()
        aug[bi, ptr[bi], :] = aug[bi, pr[bi], :]
        aug[bi, pr[bi], :] = tmp
        inv = f.vinv(aug[bi, ptr[bi], c])
        aug[bi, ptr[bi], :] = f.vmul(aug[bi, ptr[bi], :], inv[:, None])
        factor = aug[bi, :, c].copy()
        factor[np.arange(bi.size), ptr[bi]] = 0
        aug[bi] = f.vsub(aug[bi], f.vmul(factor[:, :, None], aug[bi, ptr[bi], None, :]))
        pivot_row[bi, c] = ptr[bi]
        ptr[bi] += 1
    coeff_zero = ~np.any(aug[:, :, :ncols] != 0, axis=2)
    ok = ~np.any(coeff_zero & (aug[:, :, ncols] != 0), axis=1)
    X = f.zeros((nb, ncols))
    for c in range(ncols):
        rows_c = pivot_row[:, c]
        sel = rows_c >= 0
        if sel.any():
            bi = np.nonzero(sel)[0]
            X[bi, c] = aug[bi, rows_c[bi], ncols]
    return X, ok
