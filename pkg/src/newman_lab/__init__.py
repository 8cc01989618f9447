"""Signed digit-sum counts over numbers with 0/1 base-b digits."""

from .digits import BaseBNumeral, ResidueClass, ceiling_in_Ab, digit_sum, is_member_Ab, rebase
from .discrepancy import DiscrepancyQuery, discrepancy, power_column
from .errors import DomainError, NewmanLabError, PropertyViolation, ResourceLimitError

__all__ = [
    "BaseBNumeral",
    "DiscrepancyQuery",
    "DomainError",
    "NewmanLabError",
    "PropertyViolation",
    "ResidueClass",
    "ResourceLimitError",
    "ceiling_in_Ab",
    "digit_sum",
    "discrepancy",
    "is_member_Ab",
    "power_column",
    "rebase",
]
__version__ = "0.1.0"
