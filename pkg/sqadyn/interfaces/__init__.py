from .json import *
from .writers import *
from .config import *
