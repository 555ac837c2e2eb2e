"""m-admissible sequences A = (alpha, c) and the exponential sums g_A."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from zerofree.errors import AdmissibilityError, DomainError

__all__ = [
    "AdmissibleSequence",
    "moments",
    "validate",
    "construct",
    "vandermonde_solve",
    "g_A",
    "g_A_derivative",
    "rescale_power",
    "rescale_divide",
]

DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class AdmissibleSequence:
    alphas: tuple
    coeffs: tuple
    order: int

    @property
    def length(self) -> int:
        return len(self.alphas)

    @property
    def max_alpha(self) -> float:
        return max(self.alphas)

    def to_json(self) -> dict:
        return {
            "alphas": list(self.alphas),
            "coeffs": [[c.real, c.imag] for c in self.coeffs],
            "m": self.order,
        }


def moments(alphas, coeffs, m: int) -> list[complex]:
    """sum_j c_j alpha_j (log alpha_j)^k for k = 0..m-1."""
    a = np.asarray(alphas, dtype=float)
    c = np.asarray(coeffs, dtype=complex)
    la = np.log(a)
    return [complex(np.sum(c * a * la**k)) for k in range(m)]


def validate(alphas, coeffs, m: int, tol: float = DEFAULT_TOL) -> AdmissibleSequence:
    """Check the log-moment conditions and return an AdmissibleSequence.

    The tolerance is relative to sum |c_j alpha_j|, so the check is
    invariant under scaling of c. Duplicate alphas are allowed here.
    """
    alphas = tuple(float(a) for a in alphas)
    coeffs = tuple(complex(c) for c in coeffs)
    if len(alphas) == 0:
        raise AdmissibilityError("empty sequence")
    if len(alphas) != len(coeffs):
        raise AdmissibilityError(f"{len(alphas)} alphas but {len(coeffs)} coefficients")
    if m < 0 or int(m) != m:
        raise AdmissibilityError(f"order must be a non-negative integer, got {m!r}")
    for a in alphas:
        if not (0.0 < a <= 1.0) or not math.isfinite(a):
            raise AdmissibilityError(f"alpha {a} outside (0, 1]")
    scale = sum(abs(c * a) for a, c in zip(alphas, coeffs))
    for k, mom in enumerate(moments(alphas, coeffs, int(m))):
        if abs(mom) > tol * max(scale, 1e-300):
            raise AdmissibilityError(
                f"moment condition k={k} fails: |sum c a (log a)^k| = {abs(mom):.3e}", k=k
            )
    return AdmissibleSequence(alphas, coeffs, int(m))


def vandermonde_solve(nodes, rhs) -> np.ndarray:
    """Solve sum_j nodes_j^k z_j = rhs_k (k = 0..n) by Bjorck-Pereyra elimination."""
    x = np.asarray(nodes, dtype=float)
    b = np.array(rhs, dtype=complex)
    n = len(x) - 1
    if len(b) != n + 1:
        raise DomainError("rhs length must match the number of nodes")
    if len(np.unique(x)) != len(x):
        raise DomainError("Vandermonde nodes must be distinct")
    for k in range(n):
        for i in range(n, k, -1):
            b[i] -= x[k] * b[i - 1]
    for k in range(n - 1, -1, -1):
        for i in range(k + 1, n + 1):
            b[i] /= x[i] - x[i - k - 1]
        for i in range(k, n):
            b[i] -= b[i + 1]
    return b


def construct(alphas, m: int) -> AdmissibleSequence:
    """Build an m-admissible sequence on the given alphas with g_A^{(m)}(1) = 1.

    Only c_1..c_m and c_l are non-zero; they come from the Vandermonde
    system in the nodes log(alpha_j) with right-hand side e_m.
    """
    alphas = tuple(float(a) for a in alphas)
    ell = len(alphas)
    if m < 0:
        raise DomainError("order must be non-negative")
    if ell <= m:
        raise DomainError(f"need at least m + 1 = {m + 1} alphas, got {ell}")
    if any(not (0.0 < a <= 1.0) for a in alphas):
        raise DomainError("alphas must lie in (0, 1]")
    if len(set(alphas)) != ell:
        raise DomainError("duplicate alphas make the system singular")
    if any(b <= a for a, b in zip(alphas, alphas[1:])):
        raise DomainError("alphas must be strictly increasing")
    picked = list(range(m)) + [ell - 1]
    nodes = [math.log(alphas[j]) for j in picked]
    rhs = [0.0] * m + [1.0]
    b = vandermonde_solve(nodes, rhs)
    coeffs = [0j] * ell
    for j, bj in zip(picked, b):
        coeffs[j] = complex(bj) / alphas[j]
    return validate(alphas, coeffs, m)


def g_A(seq: AdmissibleSequence, s) -> complex:
    """sum_j c_j alpha_j^s."""
    s = complex(s)
    return sum(c * cmath.exp(s * math.log(a)) for a, c in zip(seq.alphas, seq.coeffs))


def g_A_derivative(seq: AdmissibleSequence, s, k: int) -> complex:
    """k-th derivative of g_A at s."""
    s = complex(s)
    return sum(
        c * math.log(a) ** k * cmath.exp(s * math.log(a)) for a, c in zip(seq.alphas, seq.coeffs)
    )


def rescale_power(seq: AdmissibleSequence, lambda1: float) -> AdmissibleSequence:
    """((alpha_j^l1), (c_j alpha_j^{1-l1})), same order."""
    if not lambda1 > 0:
        raise DomainError("lambda1 must be positive")
    alphas = [a**lambda1 for a in seq.alphas]
    coeffs = [c * a ** (1.0 - lambda1) for a, c in zip(seq.alphas, seq.coeffs)]
    return validate(alphas, coeffs, seq.order)


def rescale_divide(seq: AdmissibleSequence, lambda2: float) -> AdmissibleSequence:
    """((alpha_j / l2), c) for l2 >= max alpha, same order."""
    if not lambda2 >= seq.max_alpha:
        raise DomainError(f"lambda2 = {lambda2} must be >= max alpha = {seq.max_alpha}")
    return validate([a / lambda2 for a in seq.alphas], seq.coeffs, seq.order)
