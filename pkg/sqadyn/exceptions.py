""" Exceptions and warning categories raised across sqadyn """

__all__ = ["SqadynError", "ConfigurationError", "ValidationError",
           "NumericalError", "RegimeWarning", "OverlapWarning",
           "BroadeningWarning", "ConvergenceWarning",
           "ConventionWarning"]

class SqadynError(Exception):
    pass

class ConfigurationError(SqadynError, ValueError):
    """ Invalid physical parameters, model specs or config fields.

        Args:
            message: (str)
            field: (str, default=None)
                Dotted path of the offending field, e.g. 'model.photon_dim'.
    """
    def __init__(self, message, field=None):
        self.field = field
        if field is not None:
            message = f"{field}: {message}"
        super(ConfigurationError, self).__init__(message)

class ValidationError(SqadynError, ValueError):
    pass

class NumericalError(SqadynError, RuntimeError):
    pass

class RegimeWarning(UserWarning):
    pass

class OverlapWarning(UserWarning):
    pass

class BroadeningWarning(UserWarning):
    pass

class ConvergenceWarning(UserWarning):
    pass

class ConventionWarning(UserWarning):
    pass
