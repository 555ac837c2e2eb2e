"""Complex special functions: Gamma, Riemann/Hurwitz zeta, Dirichlet L, Beta.

Everything here is double precision. Gamma uses a Lanczos approximation
(g=7, 9 coefficients) with reflection for Re(s) < 1/2; the zeta family uses
Euler-Maclaurin summation with a fixed number of Bernoulli corrections.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from zerofree.errors import DomainError, PoleError

__all__ = [
    "EvalSettings",
    "DEFAULT_SETTINGS",
    "gamma_complex",
    "loggamma_complex",
    "riemann_zeta",
    "hurwitz_zeta",
    "hurwitz_zeta_real",
    "hurwitz_tail_real",
    "dirichlet_l",
    "beta_fn",
    "in_accuracy_window",
]


@dataclass(frozen=True)
class EvalSettings:
    target_abs_error: float = 1e-12
    euler_maclaurin_terms: int = 12
    series_cutoff: int = 20

    def __post_init__(self):
        if not self.target_abs_error > 0:
            raise ValueError("target_abs_error must be positive")
        if self.euler_maclaurin_terms < 1 or self.series_cutoff < 1:
            raise ValueError("term counts must be >= 1")


DEFAULT_SETTINGS = EvalSettings()


def _bernoulli_even(count: int) -> list[float]:
    """B_2, B_4, ..., B_{2*count} via the Akiyama-Tanigawa algorithm."""
    n_max = 2 * count
    out = []
    a = [Fraction(0)] * (n_max + 1)
    for m in range(n_max + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        if m >= 2 and m % 2 == 0:
            out.append(float(a[0]))
    return out


_B2K = _bernoulli_even(30)
# B_{2k} / (2k)!
_B2K_FACT = [b / math.factorial(2 * (k + 1)) for k, b in enumerate(_B2K)]

_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


def _as_complex(s) -> complex:
    z = complex(s)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"non-finite argument {s!r}")
    return z


def _is_nonpositive_integer(z: complex) -> bool:
    return z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real)


def _log_sin_pi(z: complex) -> complex:
    # log(sin(pi z)) without overflow for large |Im z|.
    if abs(z.imag) < 20.0:
        return cmath.log(cmath.sin(math.pi * z))
    if z.imag < 0:
        return _log_sin_pi(z.conjugate()).conjugate()
    # sin(pi z) = e^{-i pi z} (e^{2 i pi z} - 1) / (2i)
    w = cmath.exp(2j * math.pi * z)
    return -1j * math.pi * z + cmath.log((w - 1.0) / 2j)


def loggamma_complex(s) -> complex:
    """A branch of log Gamma(s); exp() of it is Gamma(s)."""
    z = _as_complex(s)
    if _is_nonpositive_integer(z):
        raise PoleError(f"Gamma has a pole at {z}")
    if z.real < 0.5:
        return math.log(math.pi) - _log_sin_pi(z) - loggamma_complex(1.0 - z)
    z -= 1.0
    x = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        x += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(x)


def gamma_complex(s) -> complex:
    """Gamma(s) for complex s; relative accuracy ~1e-14 for |s| <= 100."""
    z = _as_complex(s)
    if _is_nonpositive_integer(z):
        raise PoleError(f"Gamma has a pole at {z}")
    if z.real < 0.5:
        return math.pi / (cmath.sin(math.pi * z) * gamma_complex(1.0 - z))
    z -= 1.0
    x = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        x += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * cmath.exp(-t) * x


def in_accuracy_window(s) -> bool:
    """True when s lies in the window the zeta routines are tuned for."""
    z = complex(s)
    return 0.0 < z.real <= 3.0 and abs(z.imag) <= 200.0


def _em_cutoff(s: complex, settings: EvalSettings) -> int:
    return max(settings.series_cutoff, int(math.ceil(abs(s.imag))) + 1, int(math.ceil(abs(s))) // 2)


def _em_tail(s: complex, x: float, settings: EvalSettings) -> tuple[complex, float]:
    """x^{-s}/2 + sum_k B_2k/(2k)! (s)_{2k-1} x^{-s-2k+1}; also the last term size."""
    xs = x ** (-s)
    total = 0.5 * xs
    rising = s  # (s)_{2k-1}
    inv_x2 = 1.0 / (x * x)
    term_pow = xs / x  # x^{-s-1}
    last = 0.0
    for k in range(settings.euler_maclaurin_terms):
        term = _B2K_FACT[k] * rising * term_pow
        total += term
        last = abs(term)
        rising *= (s + 2 * k + 1) * (s + 2 * k + 2)
        term_pow *= inv_x2
    return total, last


def hurwitz_zeta(s, a: float, settings: EvalSettings = DEFAULT_SETTINGS, full_output: bool = False):
    """Hurwitz zeta(s, a) for complex s != 1 and 0 < a <= 1.

    With ``full_output=True`` returns ``(value, info)`` where info carries the
    size of the last Euler-Maclaurin correction and the accuracy-window flag.
    """
    z = _as_complex(s)
    if z == 1.0:
        raise PoleError("zeta(s, a) has a pole at s = 1")
    a = float(a)
    if not (0.0 < a <= 1.0):
        raise DomainError(f"Hurwitz parameter must lie in (0, 1], got {a}")
    n = _em_cutoff(z, settings)
    m = np.arange(n, dtype=float) + a
    head = complex(np.sum(np.exp(-z * np.log(m))))
    x = a + n
    tail, last = _em_tail(z, x, settings)
    value = head + x ** (1.0 - z) / (z - 1.0) + tail
    if full_output:
        return value, {"last_correction": last, "cutoff": n, "in_window": in_accuracy_window(z)}
    return value


def riemann_zeta(s, settings: EvalSettings = DEFAULT_SETTINGS) -> complex:
    """Riemann zeta(s), s != 1."""
    z = _as_complex(s)
    if z == 1.0:
        raise PoleError("zeta has a pole at s = 1")
    return hurwitz_zeta(z, 1.0, settings)


def hurwitz_tail_real(sigma: float, x):
    """zeta(sigma, x) - x^{1-sigma}/(sigma-1) for real sigma and large x (array).

    This is the asymptotic part x^{-sigma}/2 + Bernoulli corrections; accurate
    to roughly machine precision once x >= 10.
    """
    x = np.asarray(x, dtype=float)
    coefs = []
    rising = sigma
    for k in range(12):
        coefs.append(_B2K_FACT[k] * rising)
        rising *= (sigma + 2 * k + 1) * (sigma + 2 * k + 2)
    inv_x2 = 1.0 / (x * x)
    poly = coefs[-1]
    for c in reversed(coefs[:-1]):
        poly = poly * inv_x2 + c
    return x ** (-sigma) * (0.5 + poly / x)


_REAL_SHIFT = 10


def hurwitz_zeta_real(sigma: float, a):
    """Vectorized Hurwitz zeta for real sigma != 1 and real a > 0 (array)."""
    if sigma == 1.0:
        raise PoleError("zeta(s, a) has a pole at s = 1")
    a = np.asarray(a, dtype=float)
    if a.size == 0:
        return np.zeros_like(a)
    if np.any(a <= 0):
        raise DomainError("Hurwitz parameter must be positive")
    shift = max(0, int(math.ceil(_REAL_SHIFT - float(a.min()))))
    head = np.zeros_like(a)
    for m in range(shift):
        head += (a + m) ** (-sigma)
    x = a + shift
    return head + x ** (1.0 - sigma) / (sigma - 1.0) + hurwitz_tail_real(sigma, x)


def dirichlet_l(chi, s, settings: EvalSettings = DEFAULT_SETTINGS) -> complex:
    """L(chi, s) = q^{-s} sum_{a=1}^{q} chi(a) zeta(s, a/q).

    For non-trivial chi the s = 1 pole terms cancel; they are combined
    analytically so s = 1 itself is evaluated without loss.
    """
    z = _as_complex(s)
    q = chi.modulus
    if chi.is_trivial and z == 1.0:
        raise PoleError("L(chi, s) for a trivial character has a pole at s = 1")
    values = chi.values
    n = _em_cutoff(z, settings)
    total = 0j
    pole_part = 0j
    for a in range(1, q + 1):
        c = values[a % q]
        if c == 0:
            continue
        alpha = a / q
        m = np.arange(n, dtype=float) + alpha
        head = complex(np.sum(np.exp(-z * np.log(m))))
        x = alpha + n
        tail, _ = _em_tail(z, x, settings)
        total += c * (head + tail)
        if chi.is_trivial:
            pole_part += c * x ** (1.0 - z) / (z - 1.0)
        else:
            # (x^{1-s} - 1)/(s - 1); the "-1" sums to zero over a full period.
            lx = math.log(x)
            w = (1.0 - z) * lx
            if abs(w) < 1e-8:
                pole_part += c * (-lx) * (1.0 + w / 2.0)
            else:
                pole_part += c * (cmath.exp(w) - 1.0) / (z - 1.0)
    return q ** (-z) * (total + pole_part)


def beta_fn(x: float, y: float) -> float:
    """Euler Beta function for real x, y > 0."""
    if not (x > 0 and y > 0):
        raise DomainError(f"beta_fn needs x, y > 0, got ({x}, {y})")
    return math.exp(math.lgamma(x) + math.lgamma(y) - math.lgamma(x + y))
