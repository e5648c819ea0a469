"""Unit groups of modular group algebras of 2-groups of maximal class over GF(2)."""

from .algebra import AlgebraElement, CyclicAlgebraElement
from .campaign import explain, run_campaign
from .errors import (
    CapExceeded,
    ClosureCap,
    MaxClassError,
    NotAUnit,
    NotInH,
    NotNormal,
    NotSelfConjugated,
    OutOfRange,
    SizeCap,
    UnknownCheck,
    UnsupportedRange,
    WrongFamily,
)
from .groups import Family, GroupElement, GroupSpec, make_group
from .report import Entry, VerificationReport
from .tables import CosetTable, GroupTable
from .wreath import WreathSpec, build_wreath

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement",
    "CapExceeded",
    "ClosureCap",
    "CosetTable",
    "CyclicAlgebraElement",
    "Entry",
    "Family",
    "GroupElement",
    "GroupSpec",
    "GroupTable",
    "MaxClassError",
    "NotAUnit",
    "NotInH",
    "NotNormal",
    "NotSelfConjugated",
    "OutOfRange",
    "SizeCap",
    "UnknownCheck",
    "UnsupportedRange",
    "VerificationReport",
    "WreathSpec",
    "WrongFamily",
    "build_wreath",
    "explain",
    "make_group",
    "run_campaign",
]
