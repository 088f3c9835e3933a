"""Exception and warning types shared across the toolkit."""


class SparsekitError(Exception):
    """Base class for all toolkit errors."""


class RejectedEdge(SparsekitError):
    """Self-loop in the input edge list."""


class BadNodeId(SparsekitError):
    """Node id outside [0, n)."""


class BadWeight(SparsekitError):
    """Edge weight negative, NaN, or infinite."""


class LengthMismatch(SparsekitError):
    """Vector length does not match the node count."""


class TooLargeForDense(SparsekitError):
    """Graph exceeds the dense-operation size guard."""


class IndexOutOfRange(SparsekitError):
    """Adjacency-list index out of range."""


class BadEstimate(SparsekitError):
    """Resistance estimate nonpositive or non-finite."""


class Disconnected(SparsekitError):
    """Operation requires a connected graph."""


class DifferentComponents(SparsekitError):
    """Queried nodes lie in different connected components."""


class ComponentMismatch(SparsekitError):
    """Connected components of the two graphs differ."""


class NotSDD(SparsekitError):
    """Matrix is not symmetric weakly diagonally dominant."""


class NotSDDM(SparsekitError):
    """Matrix is SDD but has positive off-diagonal entries."""


class UnbalancedDemand(SparsekitError):
    """Current demand vector does not sum to zero per component."""


class BadEpsilon(SparsekitError):
    """Epsilon incompatible with the requested construction."""


class BadShape(SparsekitError):
    """Instance parameters violate a divisibility or size constraint."""


class EpsilonTooSmallWarning(UserWarning):
    """Sparsification requested below the useful epsilon >= sqrt(n/m) regime."""


class NoConvergenceWarning(UserWarning):
    """Iterative solver hit its iteration cap; result returned with a flag."""
