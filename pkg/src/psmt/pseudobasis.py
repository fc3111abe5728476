"""Pseudo-basis selection and error recovery from syndromes.

Received words y^(i) = x^(i) + e^(i) share error support: the adversary sits
on a fixed set of at most t = n - k channels, so the syndromes sigma(y^(i)) =
sigma(e^(i)) live in a space of dimension at most t.  A pseudo-basis is a
minimal subset of the words whose syndromes span all the syndromes.  Whoever
learns the actual errors on those words (by also knowing the originals) can
reproduce every other word's error as the matching linear combination, because
the syndrome map is injective on the span of the e^(i) (all its elements have
weight at most t < d).
"""

import numpy as np

from . import gf
from .channels import ProtocolViolation


class PseudoBasis:
    """Selected word indices, the words themselves, and their syndromes."""

    def __init__(self, indices, words, syndromes):
        self.indices = list(indices)
        self.words = words
        self.syndromes = syndromes

    def __len__(self):
        return len(self.indices)


class ErrorBasis:
    """Actual error vectors behind a pseudo-basis, with their joint support."""

    def __init__(self, indices, errors, syndromes, support):
        self.indices = list(indices)
        self.errors = errors
        self.syndromes = syndromes
        self.support = support

    def __len__(self):
        return len(self.indices)


def compute_pseudo_basis(code, words):
    """Greedy scan in input order, keeping each word whose syndrome is outside
    the span of the syndromes kept so far.  At most n - k words are kept."""
    f = code.field
    words = np.asarray(words, dtype=np.int64)
    syns = code.syndrome(words)
    nsyn = syns.shape[1]
    kept = []
    reduced = f.zeros((0, nsyn))
    pivots = []
    for i in range(words.shape[0]):
        row = syns[i].copy()
        for r, pc in enumerate(pivots):
            if row[pc]:
                row = f.vsub(row, f.vmul(row[pc:pc + 1], reduced[r]))
        nz = np.nonzero(row)[0]
        if nz.size == 0:
            continue
        pc = int(nz[0])
        row = f.vmul(row, f.vinv(row[pc:pc + 1]))
        reduced = np.vstack([reduced, row[None, :]])
        pivots.append(pc)
        kept.append(i)
    return PseudoBasis(kept, words[kept].copy(), syns[kept].copy())


def extract_error_basis(code, pb, originals):
    """Subtract the sent codewords from the pseudo-basis words.

    originals is the full stack of sent codewords, indexed by pb.indices.
    Raises ProtocolViolation if some extracted error is not actually an
    error pattern the code can attribute (weight >= d), which cannot happen
    for an in-model adversary when n - k <= t < d.
    """
    f = code.field
    originals = np.asarray(originals, dtype=np.int64)
    errors = f.vsub(pb.words, originals[pb.indices])
    weights = np.count_nonzero(errors, axis=1)
    if len(pb) and weights.max() >= code.d:
        raise ProtocolViolation("pseudo-basis error of weight %d meets the code"
                                % int(weights.max()))
    support = np.nonzero(np.any(errors != 0, axis=0))[0]
    return ErrorBasis(pb.indices, errors, pb.syndromes, support)


def recover_error(code, basis, syndromes):
    """Error vector(s) with the given syndrome(s) inside the basis span.

    syndromes is one vector of length n - k or a stack of them; returns the
    matching error vector(s).  Raises ProtocolViolation when a syndrome is
    outside the span (the adversary left her channel set)."""
    f = code.field
    syndromes = np.asarray(syndromes, dtype=np.int64)
    single = syndromes.ndim == 1
    targets = syndromes[None, :] if single else syndromes
    if len(basis) == 0:
        if np.any(targets):
            raise ProtocolViolation("nonzero syndrome with an empty error basis")
        out = f.zeros((targets.shape[0], code.n))
        return out[0] if single else out
    lam, ok = gf.solve_right(f, basis.syndromes.T, targets.T)
    if not np.all(ok):
        raise ProtocolViolation("syndrome outside the pseudo-basis span")
    errors = gf.mat_mul(f, lam.T, basis.errors)
    return errors[0] if single else errors
