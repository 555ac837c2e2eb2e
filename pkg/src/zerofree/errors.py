class ZeroFreeError(Exception):
    """Base class for errors raised by zerofree."""


class DomainError(ZeroFreeError, ValueError):
    """An argument lies outside the domain of an operation."""


class PoleError(DomainError):
    """Evaluation requested at a pole."""


class CharacterError(DomainError):
    """A value table is not a Dirichlet character."""


class AdmissibilityError(DomainError):
    """A sequence fails one of the log-moment conditions."""

    def __init__(self, message, k=None):
        super().__init__(message)
        self.k = k


class NonIntegrableError(DomainError):
    """psi is not square integrable against du / u^{1+2r}."""


class CoefficientsExhausted(DomainError):
    """A generic coefficient stream is too short for the requested range."""


class ConditioningError(ZeroFreeError):
    """The Gram matrix is not numerically positive semidefinite."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}
