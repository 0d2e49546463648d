"""Exception hierarchy shared by every module."""


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of an operation."""


class UnsupportedParameterError(DomainError):
    """Raised for moduli R divisible by 24, where the kernel pole can reach the boundary."""


class PoleError(DomainError):
    """Raised when a meromorphic kernel is evaluated exactly at one of its poles."""


class ContractError(TypeError):
    """Raised when a required optional argument is missing."""


def check_not_multiple_of_24(R: int) -> None:
    if R % 24 == 0:
        raise UnsupportedParameterError(f"R = {R} is divisible by 24; only 24 ∤ R is supported")
