"""Exception types shared across the package.

The CLI maps these onto exit codes: configuration problems exit 1,
diagnostic/check failures exit 2, divergence exits 3.
"""


class ConfigError(ValueError):
    """Invalid configuration, hyperparameters, or operation inputs."""


class GradientError(ValueError):
    """A non-finite gradient was fed to an optimizer step."""


class DiagnosticError(ValueError):
    """A checker was invoked on a trajectory it cannot interpret."""


class NotApplicableError(DiagnosticError):
    """A checker does not apply to this input (e.g. no smoothness constant)."""


class CheckFailure(RuntimeError):
    """A trajectory checker reported a violation."""

    def __init__(self, report):
        self.report = report
        super().__init__(
            f"check '{report.check_name}' failed: worst_slack={report.worst_slack:.3e} "
            f"at t={report.worst_index} (tolerance {report.tolerance:.1e})"
        )


class DivergenceError(RuntimeError):
    """An iterate became non-finite during a run."""

    def __init__(self, iteration, message="iterate became non-finite"):
        self.iteration = iteration
        super().__init__(f"{message} at iteration {iteration}")


class DegenerateStepWarning(RuntimeWarning):
    """The closed-loop stepsize underflowed to zero; the run is frozen."""
