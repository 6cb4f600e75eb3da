from .random import *
from .decorators import *
from .stats import *
