from .topologies import *
from .hamiltonians import *
from .disorder import *
