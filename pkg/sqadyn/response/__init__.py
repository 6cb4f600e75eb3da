from .susceptibility import *
from .correlation import *
from .stark import *
from .transmission import *
