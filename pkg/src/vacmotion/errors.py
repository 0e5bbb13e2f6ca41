"""Exception types shared by the physics modules and mapped to CLI exit codes."""


class VacuumError(Exception):
    """Base class for every error raised by this package."""


class InvalidInputError(VacuumError, ValueError):
    pass


class DomainError(VacuumError, ValueError):
    """Input lies outside the region where a formula is defined."""


class KinematicsError(DomainError):
    """Trajectory is not timelike, not smooth enough, or hits a singular locus."""


class SingularityError(VacuumError, ArithmeticError):
    """Evaluation point sits on a pole or other singular point."""


class ConsistencyError(VacuumError, RuntimeError):
    """Two independent evaluation routes disagree beyond tolerance."""
