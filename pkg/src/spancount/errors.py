"""Exception hierarchy shared across the library.

The CLI maps these onto exit codes: invalid input -> 2, exhausted
search budget -> 3.
"""


class SpancountError(Exception):
    """Base class for all library errors."""


class InvalidQueryError(SpancountError, ValueError):
    """A query violated its preconditions (bad sizes, overlap, range)."""


class InvalidStructureError(SpancountError, ValueError):
    """A path/cycle/partition object is malformed (repeats, bad length)."""


class DivisibilityError(SpancountError, ValueError):
    """A divisibility precondition fails, e.g. (k - ell) must divide n."""


class ConstructionError(SpancountError, ValueError):
    """Requested construction is infeasible; message names the constraint."""


class BudgetExceededError(SpancountError, RuntimeError):
    """Exhaustive search hit its node budget; partial results are invalid."""
