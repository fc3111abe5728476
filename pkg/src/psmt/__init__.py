"""Perfectly secure message transmission over n = 2t+1 channels.

Library layout:

- gf: exact arithmetic in F_p and F_{p^m}, plus linear algebra over either.
- mds: Reed-Solomon codes, syndromes, unique decoding, privacy pairs.
- pseudobasis: pseudo-basis selection and error recovery from syndromes.
- broadcast: repetition and generalized (m-fold) broadcast over n channels.
- channels: the n-channel bundle, adversary strategies, transcripts, cost ledgers.
- protocols: the two-round transmission protocols and the privacy audit.
- rankmetric: Gabidulin codes and the protocol against generalized adversaries.
- cli: command line front end (run / audit / bench).
"""

from .gf import field, PrimeField, ExtensionField, FieldElement
from .mds import ReedSolomonCode, rs_build, build_privacy_pair
from .protocols import SessionParams, run_basic, run_improved, privacy_audit
from .rankmetric import (
    GabidulinCode,
    RankParams,
    run_rank_protocol,
    rank_privacy_audit,
)

__all__ = [
    "field",
    "PrimeField",
    "ExtensionField",
    "FieldElement",
    "ReedSolomonCode",
    "rs_build",
    "build_privacy_pair",
    "SessionParams",
    "run_basic",
    "run_improved",
    "privacy_audit",
    "GabidulinCode",
    "RankParams",
    "run_rank_protocol",
    "rank_privacy_audit",
]
