"""
Parsing helpers for command-line values.
"""

import argparse
import math

from .quantum import ValidationError
from .quantum.spin import PLUS_X, PLUS_Y, PLUS_Z, Direction

AXIS_LABELS = {"x": PLUS_X, "y": PLUS_Y, "z": PLUS_Z}


def parse_direction(text: str) -> Direction:
    """
    Accepts an axis label ("z", "+x", "-y") or a comma-separated vector ("1,0,1"),
    which is normalized.
    """
    label = text.strip().lower()
    sign = 1
    if label[:1] in "+-" and label[1:] in AXIS_LABELS:
        sign = -1 if label[0] == "-" else 1
        label = label[1:]
    if label in AXIS_LABELS:
        return AXIS_LABELS[label] if sign == 1 else -AXIS_LABELS[label]
    try:
        x, y, z = (float(part) for part in label.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"invalid direction {text!r}, expected x/y/z or 'x,y,z'"
        ) from None
    try:
        return Direction.of(x, y, z)
    except ValidationError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def parse_seed(text: str) -> int:
    try:
        return int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None


def to_radians(value: float | None, degrees: bool) -> float | None:
    if value is None or not degrees:
        return value
    return math.radians(value)
