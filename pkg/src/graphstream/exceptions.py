"""Exception hierarchy. Data problems are ``ValueError`` subclasses so callers
can catch them generically; runtime faults derive from ``RuntimeError``."""


class GraphStreamError(Exception):
    pass


class InvalidGraphError(GraphStreamError, ValueError):
    def __init__(self, graph_id, violations):
        self.graph_id = graph_id
        self.violations = list(violations)
        details = "; ".join(str(v) for v in self.violations)
        super().__init__(f"graph {graph_id!r} is invalid: {details}")


class DimensionMismatchError(GraphStreamError, ValueError):
    pass


class GedBudgetExceeded(GraphStreamError, RuntimeError):
    """A* search hit its state-expansion limit before proving optimality."""

    def __init__(self, expanded_states, budget):
        self.expanded_states = expanded_states
        self.budget = budget
        super().__init__(f"GED search exhausted budget of {budget} expanded states")


class EmptyClassError(GraphStreamError, ValueError):
    def __init__(self, label):
        self.label = label
        super().__init__(f"class {label} has an empty memory")


class TrainingDivergedError(GraphStreamError, RuntimeError):
    pass


class ParseError(GraphStreamError, ValueError):
    """Malformed input file; ``location`` names the file/line/element."""

    def __init__(self, message, location=None):
        self.location = location
        prefix = f"{location}: " if location else ""
        super().__init__(prefix + message)


class ConfigError(GraphStreamError, ValueError):
    pass


class PipelineStepError(GraphStreamError, RuntimeError):
    def __init__(self, step, cause):
        self.step = step
        self.cause = cause
        super().__init__(f"step t={step} failed: {type(cause).__name__}: {cause}")
