"""Exception types shared across the workbench."""


class KripkebenchError(Exception):
    """Base class for all workbench errors."""


class FormatError(KripkebenchError, ValueError):
    """Malformed frame/valuation data or a violated structural invariant."""


class FormulaSyntaxError(KripkebenchError, ValueError):
    """Formula text rejected by the parser.

    Carries the byte offset of the offending position and the set of
    token kinds that would have been accepted there.
    """

    def __init__(self, message: str, offset: int, expected: frozenset[str], found: str):
        super().__init__(f"{message} at byte {offset}: expected one of "
                         f"{{{', '.join(sorted(expected))}}}, found {found!r}")
        self.offset = offset
        self.expected = expected
        self.found = found


class UnknownName(KripkebenchError, ValueError):
    """Formula name not present in the registry."""


class ArityMismatch(KripkebenchError, ValueError):
    """Registry formula instantiated with the wrong parameters."""


class UnknownProperty(KripkebenchError, ValueError):
    """Frame property identifier not recognised."""


class UnknownCheck(KripkebenchError, ValueError):
    """Check id not present in the check registry."""


class EmptyRestriction(KripkebenchError, ValueError):
    """Restriction of a frame to the empty set of worlds."""


class NotTense(KripkebenchError, ValueError):
    """Tense-sum operand whose relations are not mutual converses."""


class BudgetExceeded(KripkebenchError):
    """An enumeration would exceed the configured budget.

    ``needed`` is the number of valuations (or candidate maps) the
    exhaustive run would have required.
    """

    def __init__(self, needed: int, budget: int):
        super().__init__(f"enumeration needs {needed} candidates, budget is {budget}")
        self.needed = needed
        self.budget = budget


class CapExceeded(KripkebenchError):
    """A closure or count grew past the configured cap.

    ``last_size`` is the size reached (or the exact count, when it is
    known without enumeration).
    """

    def __init__(self, last_size: int, cap: int):
        super().__init__(f"size {last_size} exceeds cap {cap}")
        self.last_size = last_size
        self.cap = cap


class NotPretransitive(KripkebenchError, ValueError):
    """Frame whose two-step reachability does not exhaust reachability."""


class NotDefinable(KripkebenchError):
    """A world that no formula can separate from the rest of its block."""

    def __init__(self, world: int, message: str = ""):
        super().__init__(message or f"world {world} is not definable")
        self.world = world
