"""Exact certificates of infinite logconcavity for symmetric sequences."""
from .qfield import PHI, PHI_SQ, Ordering, Q5Number, cmp_phi, cmp_phi_sq_scaled, sign_q5
from .region import RegionPoint, Side, in_region, region_report, side_of
from .seqops import (
    Certificate,
    Parity,
    SymmetricSeq,
    Verdict,
    apply_L,
    classify,
    classify_fast,
    is_logconcave,
    is_strictly_logconcave,
    normalize,
)
from .witness import WitnessParams, build_witness, default_base, triangular_T

__version__ = "0.1.0"

__all__ = [
    "PHI",
    "PHI_SQ",
    "Ordering",
    "Q5Number",
    "cmp_phi",
    "cmp_phi_sq_scaled",
    "sign_q5",
    "RegionPoint",
    "Side",
    "in_region",
    "region_report",
    "side_of",
    "Certificate",
    "Parity",
    "SymmetricSeq",
    "Verdict",
    "apply_L",
    "classify",
    "classify_fast",
    "is_logconcave",
    "is_strictly_logconcave",
    "normalize",
    "WitnessParams",
    "build_witness",
    "default_base",
    "triangular_T",
]
