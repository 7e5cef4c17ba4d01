"""Number and column formatting helpers."""

import math
from typing import Optional, Union

Number = Union[int, float]


def format_number(value: Optional[Number]) -> str:
    """Format a number as its shortest round-trip decimal.

    Args:
        value: Number to format (None renders as an empty field)

    Returns:
        Text that parses back to the identical float
    """
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def column_name(name: str, unit: str) -> str:
    """Build a column header with a bracketed unit annotation.

    Args:
        name: Quantity name (e.g., 'theta_g')
        unit: Unit string, '-' for dimensionless

    Returns:
        Header like 'theta_g[-]'
    """
    return f"{name}[{unit}]"


def format_quantity(value: Number, unit: str = "-", digits: int = 4) -> str:
    """Format a value with its unit for human-readable console output.

    Args:
        value: Value to format
        unit: Unit string
        digits: Significant digits

    Returns:
        Text like '2.517e-12 [-]'
    """
    if value == 0 or not math.isfinite(value):
        text = str(value)
    else:
        text = f"{value:.{digits}g}"
    return f"{text} [{unit}]"
