"""Error types shared by the services and the CLI"""
from typing import Any

AUDIT_VIOLATION_EXIT = 3


class ChipFiringError(Exception):
    """Base error; exit_code is what the CLI returns for it"""
    exit_code = 2
    kind = "Error"

    def __init__(self, message: str, **details: Any):
        self.message = message
        self.details = details
        super().__init__(f"{self.kind} ({self.exit_code}): {message}")


class UsageError(ChipFiringError):
    """Bad command line"""
    exit_code = 1
    kind = "Usage error"


class DomainError(ChipFiringError):
    """Parameters outside an operation's domain"""
    kind = "Domain error"


class ContractViolation(ChipFiringError):
    """Inputs that do not belong together, e.g. a configuration for another graph"""
    kind = "Contract violation"


class StructuralError(ChipFiringError):
    """Balance system without a one-dimensional kernel"""
    kind = "Structural error"

    def __init__(self, message: str, rank: int, kernel_dimension: int):
        self.rank = rank
        self.kernel_dimension = kernel_dimension
        super().__init__(message, rank=rank, kernel_dimension=kernel_dimension)


class NoPositiveSolution(ChipFiringError):
    """Kernel vector with zero or mixed-sign entries"""
    kind = "No positive solution"


class UnrealizableSequence(DomainError):
    """Binary string that no vertex of a strongly connected game can produce"""
    kind = "Unrealizable sequence"


class GameFileError(ChipFiringError):
    """Malformed game file"""
    kind = "Parse error"

    def __init__(self, message: str, line_number: int):
        self.line_number = line_number
        super().__init__(f"{message}, line {line_number}", line_number=line_number)


class BudgetExhausted(ChipFiringError):
    """A simulation or enumeration ran out of its configured budget"""
    exit_code = 4
    kind = "Budget exhausted"

    def __init__(self, message: str, rounds_simulated: int = 0):
        self.rounds_simulated = rounds_simulated
        super().__init__(message, rounds_simulated=rounds_simulated)
