"""Exception types shared across the package.

The CLI maps these onto exit codes: validation problems exit 1, classifier
failures exit 2, resource caps exit 3.
"""


class GraphError(ValueError):
    """Domain error in a graph operation (unknown ids, bad preconditions)."""


class ValidationError(ValueError):
    """Input document or construction failed validation.

    ``violations`` lists every problem found, not just the first one.
    """

    def __init__(self, violations):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class ScoringError(RuntimeError):
    """A classifier could not produce scores (protocol error, timeout, ...)."""


class NotExplainedError(ScoringError):
    """The decision function rejects the full instance, so nothing explains it."""


class CapExceededError(RuntimeError):
    """A configured resource cap (node count, extension count) was exceeded."""
