from .version import __version__
from . import constants
from . import utilities
from .core import *
from . import its
from . import medium_dp
from . import tiny_lp
from .framework import *
from . import oracle
from .oracle import *
from .pipeline import *
from . import hardness
from . import generators
from . import bench
from . import parsers
from . import unit_tests
