"""Exception types shared across the package.

Every error carries a stable ``code`` string so the HTTP service can emit
machine-readable error payloads without mapping tables.
"""


class CausalPlanError(Exception):
    code = "CausalPlanError"


# --- graph construction ---

class CycleError(CausalPlanError):
    code = "CycleError"

    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        super().__init__("directed cycle: " + " -> ".join(map(str, self.cycle)))


class SelfLoopError(CausalPlanError):
    code = "SelfLoopError"


class DuplicateEdgeError(CausalPlanError):
    code = "DuplicateEdgeError"


# --- knowledge state ---

class InconsistentPkgError(CausalPlanError):
    code = "InconsistentPkgError"


class ValidationError(CausalPlanError):
    code = "ValidationError"


class InvalidTestError(CausalPlanError):
    code = "InvalidTestError"


class ConflictError(CausalPlanError):
    code = "ConflictError"


class TooLargeError(CausalPlanError):
    code = "TooLargeError"


# --- oracle ---

class TestContextError(CausalPlanError):
    code = "TestContextError"


class UnknownTestError(CausalPlanError):
    code = "UnknownTestError"


class DuplicateSubmissionError(CausalPlanError):
    code = "DuplicateSubmissionError"


# --- optimization ---

class ConfigError(CausalPlanError):
    code = "ConfigError"


class InfeasibleError(CausalPlanError):
    code = "InfeasibleError"


# --- planner ---

class NothingToDoError(CausalPlanError):
    code = "NothingToDoError"


class RoundCapError(CausalPlanError):
    code = "RoundCapError"

    def __init__(self, message, record=None):
        self.record = record
        super().__init__(message)


# --- io / bench ---

class ParseError(CausalPlanError):
    code = "ParseError"

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnpairedError(CausalPlanError):
    code = "UnpairedError"


# --- service ---

class NotFoundError(CausalPlanError):
    code = "NotFoundError"


class SessionDoneError(CausalPlanError):
    code = "SessionDoneError"


class IncompleteRoundError(CausalPlanError):
    code = "IncompleteRoundError"


class NotViableError(CausalPlanError):
    code = "NotViableError"
