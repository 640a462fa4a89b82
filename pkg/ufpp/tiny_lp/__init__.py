"""Tiny task machinery: exact relaxation, interval flows and grouped rounding."""

from .simplex import *
from .flows import *
from .rounding import *
