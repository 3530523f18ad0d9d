"""Error taxonomy shared across the package.

Every domain failure raised by the library derives from PtqError, so callers
(and the command line driver) can map any of them to a single exit path while
still dispatching on the concrete class.
"""


class PtqError(Exception):
    """Base class for all domain errors."""


class ParseError(PtqError):
    """Source text does not belong to the grammar."""


class NotTClosed(PtqError):
    """A t-closed term was required but the spine test position is the variable k."""


class TClosureError(PtqError):
    """t_close on an already closed term, or t_open on an already open one."""


class UnboundVariable(PtqError):
    """A free variable is missing from the environment."""


class AnchorMismatch(PtqError):
    """The term's spine uses k where the anchor is * or absent, or vice versa."""


class RoleMismatch(PtqError):
    """Claimed role does not fit the subject sort."""


class TypeClash(PtqError):
    """Two types that must coincide do not."""


class NonLinearK(PtqError):
    """Kept for taxonomy completeness; the sorted term representation cannot
    express a non-linear use of k, so this is never raised."""


class DuplicateVariable(PtqError):
    """A written judgment context declares the same name twice."""


class MissingAnnotation(PtqError):
    """The checker requires type annotations on every binder."""


class HoleTypeClash(PtqError):
    """Holes with incompatible types in one term."""


class IllTyped(PtqError):
    """A judgment required to hold does not."""


class MissingVariableMeasure(PtqError):
    """The measure valuation is not total on the free variables."""


class MeasureZero(PtqError):
    """A computation-term measure of zero; impossible on well-formed input."""


class ReservedBaseType(PtqError):
    """The base type o is reserved for CPS type translations."""


class UncurriedNeedsPairs(PtqError):
    """Uncurried CPS output needs the pair-extended term language."""


class FuelExhausted(PtqError):
    """An evaluator ran out of fuel."""


class OracleDiverged(PtqError):
    """The reference evaluator exceeded its fuel inside the harness."""
