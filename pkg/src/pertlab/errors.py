"""Exception hierarchy shared by all pertlab modules."""


class PertlabError(Exception):
    """Base class for all pertlab errors."""


class ConfigError(PertlabError):
    """Bad user input: malformed perturbation string, grid, or config file."""


class ParityError(ConfigError):
    """Odd power encountered where only even-parity polynomials are allowed."""


class NumericalError(PertlabError):
    """Base class for runtime numerical failures."""


class CutoffTooLargeError(NumericalError):
    """Requested cutoff exceeds what double precision can represent safely."""


class ToleranceError(NumericalError):
    """Adaptive integrator could not meet the requested tolerance."""
