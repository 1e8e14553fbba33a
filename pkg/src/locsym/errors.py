"""Exception types shared across the package."""


class LocsymError(Exception):
    """Base class for all package errors."""


class GraphError(LocsymError, ValueError):
    pass


class EndpointOutOfRange(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class ParseError(GraphError):
    """Malformed edge-list input; carries the 1-based line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BudgetExceeded(LocsymError):
    """Canonical labeling search ran out of its node budget."""

    def __init__(self, budget):
        self.budget = budget
        super().__init__(f"canonical labeling exceeded node budget of {budget}")


class InvalidMapping(LocsymError, ValueError):
    pass


class CapExceeded(LocsymError, ValueError):
    pass


class ConfigError(LocsymError, ValueError):
    """Experiment config problem with optional line/column position."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
