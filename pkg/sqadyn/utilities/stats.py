"""
Utility methods to summarize sweep observables.

    Spread:
        Arithmetic mean and population standard deviation, as used for the
        relative frequency spread of a qubit array.

    Fits:
        Least-squares straight line with its coefficient of determination.

"""
from collections import namedtuple

import numpy as np
import scipy.stats

__all__ = ["Spread", "LinearFit", "spread", "linear_fit", "loglog_slope"]

Spread = namedtuple("Spread", ["mean", "std", "relative"])

LinearFit = namedtuple("LinearFit", ["slope", "intercept", "r_squared"])

def spread(values):
    """ Mean, population standard deviation and their ratio.

    Arg:
        values (iterable):
            Real numbers.
    Returns:
        Spread(mean, std, relative):
            `relative` is std/mean, or 0.0 when the std vanishes.
    """
    values = np.asarray(values, dtype=float)
    mean = float(values.mean())
    std = float(values.std())
    relative = std/mean if std else 0.0
    return Spread(mean, std, relative)

def linear_fit(x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if len(x) < 2:
        raise ValueError("A linear fit needs at least two points")
    if np.ptp(y) == 0.0:
        # Constant data is fitted exactly by a flat line
        return LinearFit(0.0, float(y[0]), 1.0)
    result = scipy.stats.linregress(x, y)
    return LinearFit(float(result.slope), float(result.intercept),
                     float(result.rvalue**2))

def loglog_slope(x, y):
    """ Slope of log|y| against log|x|, e.g. the power of a shift law. """
    x = np.abs(np.asarray(x, dtype=float))
    y = np.abs(np.asarray(y, dtype=float))
    return linear_fit(np.log(x), np.log(y)).slope
