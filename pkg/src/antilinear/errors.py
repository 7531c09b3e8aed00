"""Exception hierarchy for the antilinear operator library."""


class AntilinearError(Exception):
    """Base class for every error raised by this package."""


class DimError(AntilinearError):
    """Operand dimensions do not match."""


class ZeroVectorError(AntilinearError):
    """A vector that must be nonzero is zero."""


class UnsupportedDimError(AntilinearError):
    """The operation is not defined in the requested dimension."""


class NotNormalError(AntilinearError):
    """The operator does not commute with its adjoint."""


class NotInvolutionError(AntilinearError):
    """The operator squares neither to 1 nor to -1."""


class NotUnitaryError(AntilinearError):
    """The operator is not unitary."""


class NotConjugationError(AntilinearError):
    """The operator is not a conjugation."""


class CommutationError(AntilinearError):
    """Two operators that must commute do not."""


class NotClosedError(AntilinearError):
    """A curve that must be closed is open."""


class SamplingTooCoarse(AntilinearError):
    """A discretised integral is too far from an integer."""


class NotLagrangianError(AntilinearError):
    """Vectors do not span a maximal real subspace."""


class DegenerateInputError(AntilinearError):
    """Input vectors or operators are (numerically) dependent."""


class BetaError(AntilinearError):
    """A coefficient matrix is not positive with unit diagonal."""


class UndefinedPhaseError(AntilinearError):
    """The phase of a vanishing complex number was requested."""


class BasisError(AntilinearError):
    """A basis is not orthonormal for the stated scalar product."""


class NotPositiveError(AntilinearError):
    """An operator is not Hermitian positive definite."""


class NotSeparatingError(AntilinearError):
    """A bipartite vector has a singular coefficient matrix."""


class NotUnimodularError(AntilinearError):
    """A complex number that must have modulus one does not."""


class IncompatibleError(AntilinearError):
    """Two modular triples do not share their conjugation."""


class DecompositionError(AntilinearError):
    """A supplied decomposition does not reproduce its target."""


class NotProjectionError(AntilinearError):
    """An operator is not a rank-one orthogonal projection."""
