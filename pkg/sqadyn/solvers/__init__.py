from .eigensolve import *
