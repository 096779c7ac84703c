"""Exception types shared across the package."""
from __future__ import annotations


class NbldpcError(Exception):
    """Base class for package-specific errors."""


class DegreeOutOfRange(NbldpcError, ValueError):
    """Field extension degree outside the supported range 1..16."""


class NonPrimitiveModulus(NbldpcError, ValueError):
    """Modulus polynomial whose root x does not generate GF(q)*."""


class DivisionByZero(NbldpcError, ZeroDivisionError):
    """Inversion or division by the zero field element."""


class IndexOutOfRange(NbldpcError, IndexError):
    """Column (or row) index outside the matrix."""


class DimensionMismatch(NbldpcError, ValueError):
    """Vector/matrix shapes that do not line up."""


class NotSquare(NbldpcError, ValueError):
    """Square-matrix predicate applied to a non-square input."""


class BadShape(NbldpcError, ValueError):
    """Matrix shape violating an operation's precondition (e.g. r < s)."""


class BudgetExceeded(NbldpcError):
    """Search/node budget exhausted before the computation finished.

    Carries whatever partial result is available so callers can report
    honest lower bounds instead of silently truncated answers.
    """

    def __init__(self, message: str, partial=None, s_reached: int | None = None):
        super().__init__(message)
        self.partial = partial
        self.s_reached = s_reached


class IncompleteCollection(NbldpcError, ValueError):
    """Stopping-set collection does not reach the required weight."""


class LabelingFailure(NbldpcError):
    """Greedy labeling exhausted its retries at some column.

    ``insufficient_alphabet`` is a heuristic hint set when the alphabet
    offers fewer nonzero values than there are rank constraints at the
    blocking column.
    """

    def __init__(self, column: int, retries: int, restarts: int,
                 insufficient_alphabet: bool = False):
        super().__init__(
            f"labeling failed at column {column + 1} after {retries} retries "
            f"({restarts} restarts)"
        )
        self.column = column
        self.retries = retries
        self.restarts = restarts
        self.insufficient_alphabet = insufficient_alphabet


class BadPosition(NbldpcError, ValueError):
    """Circulant generator position outside [1, r]."""


class EvenR(NbldpcError, ValueError):
    """Complete-graph base requires odd r."""


class OddR(NbldpcError, ValueError):
    """Complete-bipartite base requires even r."""


class ParameterDomain(NbldpcError, ValueError):
    """Bound parameters outside the formula's domain."""


class NonIntegerStripCount(NbldpcError, ValueError):
    """Gallager ensemble parameters with J not dividing r (or K not dividing n)."""


class AlphabetTooSmall(NbldpcError, ValueError):
    """MDS baseline needs q > n distinct evaluation points."""


class OutOfRange(NbldpcError, KeyError):
    """Requested nu outside the enumerated/analytic range."""


class IncompleteRange(NbldpcError, ValueError):
    """Enumeration result does not cover the range needed by a formula."""
