"""Stern's diatomic sequence, its twist, and exact checks of their generating-series identities."""

from .seqcore import (
    Mat2,
    Rational,
    bits_of,
    rational_at,
    stern,
    stern_pair,
    stern_range,
    transfer_matrix,
    twisted,
    twisted_range,
)
from .zseries import ZSeries
from .idcat import IdentityId, Report, Tables

__all__ = [
    "IdentityId",
    "Mat2",
    "Rational",
    "Report",
    "Tables",
    "ZSeries",
    "bits_of",
    "rational_at",
    "stern",
    "stern_pair",
    "stern_range",
    "transfer_matrix",
    "twisted",
    "twisted_range",
]
