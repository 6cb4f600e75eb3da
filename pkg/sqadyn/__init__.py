from .package_info import __version__
from .exceptions import *

from .space import *
from .models import *
from .solvers import *
from .response import *
from .benchmark import *
from .interfaces import *
from .utilities import *
