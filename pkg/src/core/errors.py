#!/usr/bin/env python3
"""Exception types raised by the numerical kernels.

All of them derive from ValueError so code that guards a computation with
``except ValueError`` keeps working.
"""


class LabError(ValueError):
    """Base class for glsm-lab failures"""


class DomainError(LabError):
    """Argument outside the domain of a function (theta at 0, |q| >= 1)"""


class PoleError(LabError):
    """A denominator vanishes within tolerance"""


class DegeneracyError(LabError):
    """A removable singularity of higher order than first"""


class GenericityError(LabError):
    """Poles closer than the configured genericity gap"""


class ModelShapeError(LabError):
    """Model does not belong to the family an operation requires"""


class ConvergenceError(LabError):
    """Quadrature or series failed its doubling or ratio test"""


class ConfigError(LabError):
    """Model or run document violates the schema"""
