from .sweeps import *
from .presets import *
