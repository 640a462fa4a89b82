"""Geometric solver for large tasks: rectangles, corners and nice colorings."""

from .rectangles import *
from .corners import *
from .coloring import *
