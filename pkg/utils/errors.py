"""
Exception types shared by the analysis, simulation and CLI layers.
Each class maps to one process exit code in the entry script.
"""


class ConfigError(ValueError):
    """Invalid flag, config-file entry or parameter value (exit code 2)."""

    exit_code = 2


class OutputError(OSError):
    """Output path could not be created or written (exit code 3)."""

    exit_code = 3


class NumericalError(ArithmeticError):
    """
    Numerical failure: non-finite state, step-size violation, pole proximity,
    degenerate crossing or root-finder non-convergence (exit code 4).
    """

    exit_code = 4
