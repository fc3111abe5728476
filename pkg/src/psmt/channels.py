"""Simulated bundle of n bidirectional channels with a static adversary.

Every transmission is a stack of length-n arrays, one field symbol per channel
per array.  The adversary fixes a set of at most t channels before the run;
she reads those coordinates of everything in both directions and may overwrite
them, and nothing else.  Phases marked public (broadcasts) are additionally
counted as fully visible to her, so privacy audits over-approximate her view.

The session keeps a cost ledger (symbols and bits per phase and direction)
and, optionally, a full transcript of sent/delivered arrays.
"""

import json
import math
from fractions import Fraction

import numpy as np

PHASE_ROUND1 = "round1"
PHASE_PSEUDO_BASIS = "pseudo-basis"
PHASE_PB_OVERHEAD = "pb-overhead"
PHASE_MASKED = "masked-secrets"

BOB_TO_ALICE = "bob->alice"
ALICE_TO_BOB = "alice->bob"


class ProtocolViolation(RuntimeError):
    """The run is inconsistent with the adversary model (more than t corrupted
    channels, or a tampered broadcast that no longer decodes)."""


class AdversaryFault(RuntimeError):
    """An adversary strategy broke the simulator contract (wrong shape or
    out-of-field symbols); a harness bug, not a protocol event."""


class ChannelBundle:
    def __init__(self, n, t, corrupted, field):
        corrupted = tuple(sorted(set(int(c) for c in corrupted)))
        if len(corrupted) > t:
            raise ValueError("adversary owns %d channels, budget is %d" % (len(corrupted), t))
        if corrupted and (corrupted[0] < 0 or corrupted[-1] >= n):
            raise ValueError("corrupted channel index out of range")
        self.n = n
        self.t = t
        self.corrupted = corrupted
        self.field = field


class CostLedger:
    """Symbol counts per (phase, direction); bits are symbols * ceil(log2 q)."""

    def __init__(self, q):
        self.bits_per_symbol = max(1, math.ceil(math.log2(q)))
        self.counts = {}

    def add(self, phase, direction, nsymbols):
        key = (phase, direction)
        self.counts[key] = self.counts.get(key, 0) + int(nsymbols)

    def symbols(self, phase=None, direction=None):
        total = 0
        for (ph, d), c in self.counts.items():
            if phase is not None and ph != phase:
                continue
            if direction is not None and d != direction:
                continue
            total += c
        return total

    def bits(self, phase=None, direction=None):
        return self.symbols(phase, direction) * self.bits_per_symbol

    def rows(self):
        return [
            (ph, d, c, c * self.bits_per_symbol) for (ph, d), c in self.counts.items()
        ]

    def write_csv(self, fh):
        fh.write("phase,direction,symbols,bits\n")
        for ph, d, c, b in self.rows():
            fh.write("%s,%s,%d,%d\n" % (ph, d, c, b))


def cost_report(ledger, num_secrets=None):
    """Per-phase and total counts, plus the exact rate when secrets were sent."""
    report = {
        "phases": {
            (ph, d): {"symbols": c, "bits": b} for ph, d, c, b in ledger.rows()
        },
        "total_symbols": ledger.symbols(),
        "total_bits": ledger.bits(),
    }
    if num_secrets:
        report["rate"] = Fraction(ledger.symbols(), num_secrets)
    return report


class Transcript:
    """Ordered record of every transmission: (direction, phase, public, sent,
    delivered)."""

    def __init__(self):
        self.records = []

    def append(self, direction, phase, public, sent, delivered):
        self.records.append((direction, phase, bool(public), sent, delivered))

    def write_log(self, fh, field=None):
        """One JSON object per line; extension-field symbols become
        coefficient lists."""

        def ser(arr):
            if field is not None and field.deg > 1:
                return [[field.decode(int(v)) for v in row] for row in arr]
            return arr.tolist()

        for direction, phase, public, sent, delivered in self.records:
            fh.write(
                json.dumps(
                    {
                        "direction": direction,
                        "phase": phase,
                        "public": public,
                        "sent": ser(sent),
                        "delivered": ser(delivered),
                    }
                )
            )
            fh.write("\n")


class AdversaryStrategy:
    """Reads and rewrites only her own channels.

    tamper() receives the (num_arrays, num_corrupted) block of symbols she can
    see for one transmission and returns the block to deliver instead.  view
    is the accumulating list of everything she has seen so far this session.
    """

    name = "passive"

    def __init__(self, corrupted, field):
        self.corrupted = tuple(sorted(set(int(c) for c in corrupted)))
        self.field = field

    def reset(self):
        pass

    def tamper(self, direction, phase, observed, view):
        return observed


class PassiveAdversary(AdversaryStrategy):
    pass


class RandomNoiseAdversary(AdversaryStrategy):
    """Rewrites her channels with uniform symbols from a private seeded
    stream (re-seeded identically on reset, so audits stay deterministic)."""

    name = "random-noise"

    def __init__(self, corrupted, field, seed):
        super().__init__(corrupted, field)
        self.seed = seed
        self.reset()

    def reset(self):
        self.rng = np.random.default_rng(self.seed)

    def tamper(self, direction, phase, observed, view):
        return self.field.random(self.rng, observed.shape)


class TargetedSyndromeAdversary(AdversaryStrategy):
    """Round 1: gives word j a single-coordinate error on her j-th channel
    (cycling), with a value that varies by word, so the syndromes of the first
    len(corrupted) words are independent and the pseudo-basis is as large as
    her budget allows.  Round 2: adds 1 on all her channels."""

    name = "targeted-syndrome"

    def tamper(self, direction, phase, observed, view):
        f = self.field
        c = len(self.corrupted)
        if c == 0:
            return observed
        if direction == BOB_TO_ALICE:
            delta = np.zeros(observed.shape, dtype=np.int64)
            rows = np.arange(observed.shape[0])
            delta[rows, rows % c] = 1 + rows % (f.q - 1)
            return f.vadd(observed, delta)
        return f.vadd(observed, 1)


class ReplayAdversary(AdversaryStrategy):
    """Round 1: delivers each word's predecessor on her channels (a shift).
    Round 2: replays her recorded round-1 symbols in place of the broadcast
    content."""

    name = "replay"

    def __init__(self, corrupted, field):
        super().__init__(corrupted, field)
        self.memory = None

    def reset(self):
        self.memory = None

    def tamper(self, direction, phase, observed, view):
        if len(self.corrupted) == 0:
            return observed
        if direction == BOB_TO_ALICE:
            if self.memory is None:
                self.memory = observed.copy()
            return np.roll(observed, 1, axis=0)
        if self.memory is None or self.memory.shape[0] == 0:
            return observed
        idx = np.arange(observed.shape[0]) % self.memory.shape[0]
        return self.memory[idx]


def builtin_adversaries():
    """name -> factory(n, t, field, rng); the rng picks the corrupted set
    (and seeds private randomness) so trials vary but stay reproducible."""

    def pick(n, t, rng):
        return np.sort(rng.choice(n, size=t, replace=False))

    return {
        "passive": lambda n, t, f, rng: PassiveAdversary(pick(n, t, rng), f),
        "random-noise": lambda n, t, f, rng: RandomNoiseAdversary(
            pick(n, t, rng), f, int(rng.integers(0, 2**63 - 1))
        ),
        "targeted-syndrome": lambda n, t, f, rng: TargetedSyndromeAdversary(
            pick(n, t, rng), f
        ),
        "replay": lambda n, t, f, rng: ReplayAdversary(pick(n, t, rng), f),
    }


class ChannelSession:
    """One protocol run's worth of transmissions over a bundle.

    The adversary (if any) is reset at session start.  Her accumulated view
    (taps plus public payloads) lives in eve_view; the transcript is recorded
    only on request since sweeps do not need it.
    """

    def __init__(self, bundle, adversary=None, record_transcript=False):
        if adversary is not None and tuple(adversary.corrupted) != bundle.corrupted:
            raise ValueError("adversary and bundle disagree on corrupted channels")
        self.bundle = bundle
        self.adversary = adversary
        self.ledger = CostLedger(bundle.field.q)
        self.transcript = Transcript() if record_transcript else None
        self.eve_view = []
        if adversary is not None:
            adversary.reset()

    def transmit(self, direction, arrays, phase, public=False):
        f = self.bundle.field
        arrays = np.asarray(arrays, dtype=np.int64)
        if arrays.ndim != 2 or arrays.shape[1] != self.bundle.n:
            raise ValueError("transmission must be a stack of length-%d arrays" % self.bundle.n)
        if arrays.size and (arrays.min() < 0 or arrays.max() >= f.q):
            raise ValueError("transmission holds out-of-field symbols")
        self.ledger.add(phase, direction, arrays.size)
        delivered = arrays
        adv = self.adversary
        if adv is not None and len(adv.corrupted) > 0 and arrays.shape[0] > 0:
            cols = list(adv.corrupted)
            observed = arrays[:, cols].copy()
            self.eve_view.append(("tap", direction, phase, observed))
            replacement = adv.tamper(direction, phase, observed.copy(), self.eve_view)
            replacement = np.asarray(replacement, dtype=np.int64)
            if replacement.shape != observed.shape:
                raise AdversaryFault("tamper block has shape %r, expected %r"
                                     % (replacement.shape, observed.shape))
            if replacement.size and (replacement.min() < 0 or replacement.max() >= f.q):
                raise AdversaryFault("tamper block holds out-of-field symbols")
            if not np.array_equal(replacement, observed):
                delivered = arrays.copy()
                delivered[:, cols] = replacement
        if public:
            self.eve_view.append(("public", direction, phase, arrays))
        if self.transcript is not None:
            self.transcript.append(direction, phase, public, arrays, delivered)
        return delivered

    def view_key(self):
        """Canonical bytes for everything the adversary saw this session."""
        parts = []
        for kind, direction, phase, arr in self.eve_view:
            parts.append(("%s|%s|%s|%r|" % (kind, direction, phase, arr.shape)).encode())
            parts.append(arr.tobytes())
        return b"".join(parts)
