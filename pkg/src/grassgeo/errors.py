"""Exception hierarchy shared across the package."""


class GrassGeoError(Exception):
    """Base class for all errors raised by this package."""


class NumericalFailure(GrassGeoError):
    """A dense linear algebra routine failed to converge."""


class SingularityError(GrassGeoError):
    """A scalar function was evaluated at a singular value where it is undefined."""


class PreconditionError(GrassGeoError):
    """An operation was called with inputs violating its contract."""


class DomainError(GrassGeoError):
    """Input lies outside the domain of the requested map."""


class OnPolarDivisorError(DomainError):
    """The plane has no chart coordinates: it meets the orthocomplement of the
    chart origin, i.e. it lies on the polar divisor."""


class ConjugateToChartError(DomainError):
    """A tangent vector hits a tan singularity; the chart image is undefined
    but the frame image (exp0_frame) still exists."""


class LeftChartError(GrassGeoError):
    """A geodesic integration left the coordinate chart mid-trajectory."""


class WrongChartError(GrassGeoError):
    """The selected rows do not give an invertible block; the plane is not
    representable in the requested chart."""


class DiastasisUndefinedError(DomainError):
    """The overlap vanishes, so the diastasis is undefined (second argument
    on the polar divisor of the first)."""


class UnsupportedSpaceError(GrassGeoError):
    """Operation defined only for one curvature sign."""


class DegenerateSpectrumError(GrassGeoError):
    """Hamiltonian coefficients are not pairwise distinct."""


class ConsistencyError(GrassGeoError):
    """Two internal criteria that must agree disagreed."""


class EnumerationSizeError(GrassGeoError):
    """A combinatorial enumeration would exceed the supported size."""
