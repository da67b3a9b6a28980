"""Exception hierarchy shared by all modules."""


class PowerForceError(Exception):
    """Base class for every error raised by this package."""


class DomainError(PowerForceError, ValueError):
    """A parameter lies outside its admissible range."""


class ParseError(PowerForceError, ValueError):
    """A text document could not be parsed."""


class GridMismatch(PowerForceError, ValueError):
    """Two wavefunctions (or a wavefunction and an operator) live on different grids."""


class UnsupportedBackend(PowerForceError, ValueError):
    pass


class EdgeLeakage(PowerForceError, ValueError):
    """A state that must be localized has non-negligible weight at the box edge."""


class IncommensurateWavevector(PowerForceError, ValueError):
    """Wavevector is not on the 2*pi/L lattice or is beyond the grid's resolution."""


class IdentityMismatch(PowerForceError, ValueError):
    pass


class EmptyHistory(PowerForceError, ValueError):
    pass


class ModeMismatch(PowerForceError, ValueError):
    pass
