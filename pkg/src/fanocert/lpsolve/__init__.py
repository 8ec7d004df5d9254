"""Exact LP feasibility, Farkas certificates, threshold scans."""

from .certificate import (
    Combination,
    FarkasCertificate,
    combine,
    format_certificate,
    parse_certificate,
    verify_certificate,
)
from .decide import (
    FeasibilityResult,
    TailResult,
    ThresholdReport,
    certify_tail,
    decide,
    scan_threshold,
)

__all__ = [
    "Combination",
    "FarkasCertificate",
    "FeasibilityResult",
    "TailResult",
    "ThresholdReport",
    "certify_tail",
    "combine",
    "decide",
    "format_certificate",
    "parse_certificate",
    "scan_threshold",
    "verify_certificate",
]
