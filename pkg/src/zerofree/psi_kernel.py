"""Test-function profiles phi, the kernel psi and its weighted L^2 norm.

For a series L(s) = sum a_n n^{-s} and a profile phi supported on [0, 1),

    psi(u) = Res(L(s) phi_hat(s) u^s, s = 1) - sum_{n<u} a_n phi(n/u).

For zeta and Dirichlet series with the power profile (1-t)^{-sigma1}, the
sum is rewritten through Hurwitz zeta so that each evaluation costs O(1)
(O(q) for a character mod q) instead of O(u). The same rewrite exposes the
only singularity, (u - n)^{-sigma1} as u -> n+, which the norm quadrature
absorbs into Gauss-Jacobi weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from zerofree._quad import jacobi01
from zerofree.characters import DirichletCharacter
from zerofree.errors import CoefficientsExhausted, DomainError, NonIntegrableError
from zerofree.special_fn import (
    dirichlet_l,
    hurwitz_tail_real,
    hurwitz_zeta_real,
    loggamma_complex,
    riemann_zeta,
)

__all__ = [
    "PhiProfile",
    "SeriesSpec",
    "PsiNormResult",
    "NormSettings",
    "phi_eval",
    "phi_hat",
    "series_l",
    "psi_eval",
    "psi_values",
    "psi_split",
    "psi_direct",
    "psi_asymptotics",
    "psi_norm",
    "c_sigma1",
    "zeta_integrable",
    "prop_convexity_sufficient",
    "selberg_sigma1_threshold",
    "HUXLEY_MU",
]

HUXLEY_MU = 32.0 / 205.0


# ---------------------------------------------------------------- profiles


@dataclass(frozen=True)
class PhiProfile:
    """phi(t) = 1 (Indicator) or (1-t)^{-sigma1} (PowerSingularity) on [0, 1)."""

    kind: str = "indicator"
    sigma1: float = 0.0

    def __post_init__(self):
        if self.kind not in ("indicator", "power"):
            raise DomainError(f"unknown profile kind {self.kind!r}")
        if self.kind == "indicator" and self.sigma1 != 0.0:
            raise DomainError("the indicator profile has sigma1 = 0")
        if not (math.isfinite(self.sigma1) and self.sigma1 < 0.5):
            raise DomainError(f"sigma1 must be < 1/2, got {self.sigma1}")

    @classmethod
    def indicator(cls) -> "PhiProfile":
        return cls("indicator", 0.0)

    @classmethod
    def power(cls, sigma1: float) -> "PhiProfile":
        return cls("power", float(sigma1))

    @property
    def singular(self) -> bool:
        return self.kind == "power" and self.sigma1 != 0.0


def phi_eval(p: PhiProfile, t: float) -> float:
    if t < 0:
        raise DomainError("phi is defined for t >= 0")
    if t >= 1.0:
        return 0.0
    if p.kind == "indicator":
        return 1.0
    return (1.0 - t) ** (-p.sigma1)


def phi_hat(p: PhiProfile, s) -> complex:
    """Mellin transform int_0^1 phi(t) t^{s-1} dt for Re s > 0."""
    s = complex(s)
    if not s.real > 0:
        raise DomainError(f"phi_hat needs Re(s) > 0, got {s}")
    if p.kind == "indicator":
        return 1.0 / s
    sig = p.sigma1
    return np.exp(
        loggamma_complex(s) + loggamma_complex(1.0 - sig) - loggamma_complex(s + 1.0 - sig)
    ).item()


# ------------------------------------------------------------------ series


@dataclass(frozen=True)
class SeriesSpec:
    """Which Dirichlet series feeds psi.

    kind is "zeta", "dirichlet" (non-trivial chi) or "generic". A generic
    series carries its coefficients a_1, a_2, ... in ``coefficients``, the
    Laurent data p_{-1}..p_{-m} of L(s) phi_hat(s) at s = 1 in ``residues``
    and, optionally, a callable for L(s) used by the Mellin closed form.
    """

    kind: str = "zeta"
    chi: DirichletCharacter | None = None
    coefficients: tuple = ()
    residues: tuple = ()
    sigma0: float = 0.0
    l_function: Callable | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in ("zeta", "dirichlet", "generic"):
            raise DomainError(f"unknown series kind {self.kind!r}")
        if not (0.0 <= self.sigma0 < 1.0):
            raise DomainError(f"sigma0 must lie in [0, 1), got {self.sigma0}")
        if self.kind == "dirichlet":
            if self.chi is None:
                raise DomainError("a Dirichlet series needs a character")
            if self.chi.is_trivial:
                raise DomainError(
                    "trivial characters have a pole at s = 1; use kind='generic'"
                )
        if self.kind == "zeta" and self.sigma0 != 0.0:
            raise DomainError("zeta uses sigma0 = 0")

    @classmethod
    def zeta(cls) -> "SeriesSpec":
        return cls("zeta")

    @classmethod
    def dirichlet(cls, chi: DirichletCharacter) -> "SeriesSpec":
        return cls("dirichlet", chi=chi)

    @classmethod
    def generic(cls, coefficients, residues=(), sigma0=0.0, l_function=None) -> "SeriesSpec":
        return cls(
            "generic",
            coefficients=tuple(complex(a) for a in coefficients),
            residues=tuple(complex(p) for p in residues),
            sigma0=float(sigma0),
            l_function=l_function,
        )

    @property
    def pole_order(self) -> int:
        if self.kind == "zeta":
            return 1
        if self.kind == "dirichlet":
            return 0
        return len(self.residues)

    def laurent(self, p: PhiProfile) -> tuple:
        """(p_{-1}, ..., p_{-m}) of L(s) phi_hat(s) at s = 1."""
        if self.kind == "zeta":
            return (phi_hat(p, 1.0),)
        if self.kind == "dirichlet":
            return ()
        return self.residues


def series_l(spec: SeriesSpec, s) -> complex:
    if spec.kind == "zeta":
        return riemann_zeta(s)
    if spec.kind == "dirichlet":
        return dirichlet_l(spec.chi, s)
    if spec.l_function is None:
        raise DomainError("generic series has no L-function callable")
    return complex(spec.l_function(complex(s)))


# -------------------------------------------------------------------- psi


def _psi1(spec: SeriesSpec, p: PhiProfile, u):
    """Residue term u sum_k p_{-k} (log u)^{k-1}/(k-1)!."""
    u = np.asarray(u, dtype=float)
    lap = spec.laurent(p)
    if not lap:
        return np.zeros(u.shape, dtype=complex)
    lu = np.log(u)
    poly = np.zeros(u.shape, dtype=complex)
    for k, pk in enumerate(lap):
        poly = poly + pk * lu**k / math.factorial(k)
    return u * poly


def _coeff(spec: SeriesSpec, n: int) -> complex:
    if spec.kind == "zeta":
        return 1.0
    if spec.kind == "dirichlet":
        return spec.chi(n)
    if n > len(spec.coefficients):
        raise CoefficientsExhausted(
            f"coefficient a_{n} requested but only {len(spec.coefficients)} supplied"
        )
    return spec.coefficients[n - 1]


def psi_direct(spec: SeriesSpec, p: PhiProfile, u: float) -> complex:
    """psi(u) straight from the definition, O(u) work."""
    u = float(u)
    if not u > 0:
        raise DomainError("psi needs u > 0")
    total = complex(_psi1(spec, p, u))
    n = math.ceil(u) - 1
    if n >= 1:
        m = np.arange(1, n + 1, dtype=float)
        a = np.array([_coeff(spec, k) for k in range(1, n + 1)], dtype=complex)
        if p.kind == "indicator":
            total -= complex(np.sum(a))
        else:
            total -= complex(np.sum(a * (1.0 - m / u) ** (-p.sigma1)))
    return total


def _zeta_E(sig: float, u: np.ndarray) -> np.ndarray:
    """E(u) = u/(1-sig) + u^sig zeta(sig, u); tends to 1/2."""
    out = np.empty_like(u)
    big = u >= 10.0
    if np.any(big):
        ub = u[big]
        out[big] = ub**sig * hurwitz_tail_real(sig, ub)
    if np.any(~big):
        us = u[~big]
        out[~big] = us / (1.0 - sig) + us**sig * hurwitz_zeta_real(sig, us)
    return out


def psi_split(spec: SeriesSpec, p: PhiProfile, u):
    """Write psi(u) = reg + sing * (u - n)^{-sigma1} with n = ceil(u) - 1.

    Returns (reg, sing, n) as arrays; sing is zero whenever n = 0 or the
    profile is not singular. Both reg and sing are smooth on (n, n+1].
    """
    u = np.atleast_1d(np.asarray(u, dtype=float))
    if np.any(u <= 0):
        raise DomainError("psi needs u > 0")
    n = (np.ceil(u) - 1).astype(np.int64)
    sing = np.zeros(u.shape, dtype=complex)
    kind = spec.kind

    if kind == "generic":
        reg = np.empty(u.shape, dtype=complex)
        for i, ui in enumerate(u):
            ni = int(n[i])
            if p.singular and ni >= 1:
                sing[i] = -_coeff(spec, ni) * ui**p.sigma1
                # psi without its n-th term, which is the singular one
                head = complex(_psi1(spec, p, ui))
                if ni > 1:
                    m = np.arange(1, ni, dtype=float)
                    a = np.array([_coeff(spec, k) for k in range(1, ni)], dtype=complex)
                    head -= complex(np.sum(a * (1.0 - m / ui) ** (-p.sigma1)))
                reg[i] = head
            else:
                reg[i] = psi_direct(spec, p, ui)
        return reg, sing, n

    if kind == "zeta":
        if p.kind == "indicator" or p.sigma1 == 0.0:
            return (u - n).astype(complex), sing, n
        sig = p.sigma1
        reg = np.empty(u.shape, dtype=float)
        low = n == 0
        reg[low] = u[low] / (1.0 - sig)
        hi = ~low
        if np.any(hi):
            uh = u[hi]
            y = uh - n[hi]
            us = uh**sig
            reg[hi] = _zeta_E(sig, uh) - us * hurwitz_zeta_real(sig, y + 1.0)
            sing[hi] = -us
        return reg.astype(complex), sing, n

    # Dirichlet, non-trivial character
    chi = spec.chi
    q = chi.modulus
    vals = np.array(chi.values, dtype=complex)
    if p.kind == "indicator" or p.sigma1 == 0.0:
        pref = np.array(chi.prefix_sums(), dtype=complex)
        return -pref[n % q], sing, n
    sig = p.sigma1
    y = u - n  # in (0, 1]
    us = u**sig
    reg = np.zeros(u.shape, dtype=complex)
    for a in range(1, q + 1):
        ca = vals[a % q]
        if ca == 0:
            continue
        active = u > a
        if not np.any(active):
            continue
        ua, na, ya = u[active], n[active], y[active]
        # last integer below u congruent to a mod q, measured from u
        back = (na - a) % q
        ya_red = (ya + back) / q
        v1 = (ua - a) / q + 1.0
        term = hurwitz_zeta_real(sig, ya_red + 1.0) - hurwitz_zeta_real(sig, v1)
        # the y^{-sig} piece of zeta(sig, ya_red) is regular unless back == 0
        nonsing = back != 0
        extra = np.zeros(ua.shape)
        extra[nonsing] = ya_red[nonsing] ** (-sig)
        reg[active] += -ca * q ** (-sig) * ua**sig * (term + extra)
    hi = n >= 1
    sing[hi] = -vals[n[hi] % q] * us[hi]
    return reg, sing, n


def psi_values(spec: SeriesSpec, p: PhiProfile, u) -> np.ndarray:
    """Vectorized psi(u)."""
    reg, sing, n = psi_split(spec, p, u)
    if not p.singular:
        return reg
    out = reg.copy()
    hi = n >= 1
    uu = np.atleast_1d(np.asarray(u, dtype=float))
    out[hi] += sing[hi] * (uu[hi] - n[hi]) ** (-p.sigma1)
    return out


def psi_eval(spec: SeriesSpec, p: PhiProfile, u: float) -> complex:
    """psi(u) for u > 0, strict cutoff n < u."""
    u = float(u)
    if not u > 0:
        raise DomainError("psi needs u > 0")
    if spec.kind == "generic":
        return psi_direct(spec, p, u)
    val = complex(psi_values(spec, p, np.array([u]))[0])
    if spec.kind == "zeta" and p.kind == "indicator":
        return complex(u - math.ceil(u) + 1)
    return val


# -------------------------------------------------------------- asymptotics


@dataclass(frozen=True)
class PsiAsymptotics:
    """psi(u) ~ mean + (oscillation with mean square var * u^{2 sigma1})."""

    mean: complex
    var: float
    period: int


@lru_cache(maxsize=128)
def psi_asymptotics(spec: SeriesSpec, p: PhiProfile, at: float = 4096.0) -> PsiAsymptotics:
    """Mean value of psi at infinity and the size of its oscillating part.

    The mean is -L(0) (1/2 for zeta). The variance coefficient is measured
    by quadrature over one period near ``at``.
    """
    if spec.kind == "zeta":
        mean, period = 0.5 + 0j, 1
    elif spec.kind == "dirichlet":
        q = spec.chi.modulus
        mean = sum(a * spec.chi(a) for a in range(1, q + 1)) / q
        period = q
    else:
        raise DomainError("asymptotics are only available for zeta and Dirichlet series")
    k0 = int(at) // period * period
    ks = np.arange(k0, k0 + period, dtype=float)
    total = _interval_integrals(spec, p, ks, weight_exp=0.0, nodes=32, centre=mean)
    var = float(np.sum(total)) / period / (k0 ** (2 * p.sigma1))
    return PsiAsymptotics(complex(mean), var, period)


# ------------------------------------------------------------------- norms


@dataclass(frozen=True)
class PsiNormResult:
    norm_sq: float
    truncation_error_bound: float
    intervals_used: int
    tail_estimate: float = 0.0
    tail_bound_rigorous: bool = True
    decay_exponent: float = float("nan")


@dataclass(frozen=True)
class NormSettings:
    k_max: int = 10_000
    nodes: int = 32
    chunk: int = 2048

    def __post_init__(self):
        if self.k_max < 64 or self.nodes < 2 or self.chunk < 1:
            raise DomainError("k_max >= 64, nodes >= 2 and chunk >= 1 are required")


def _interval_integrals(spec, p, ks, weight_exp, nodes, centre=0.0):
    """int_{k}^{k+1} |psi(u) - centre|^2 u^{-weight_exp} du for each k >= 1."""
    ks = np.asarray(ks, dtype=float)
    sig = p.sigma1 if p.singular else 0.0
    y0, w0 = jacobi01(nodes, 0.0)
    u = ks[:, None] + y0[None, :]
    reg, sing, _ = psi_split(spec, p, u.ravel())
    reg = reg.reshape(u.shape) - centre
    wt = u ** (-weight_exp)
    out = np.sum(w0 * np.abs(reg) ** 2 * wt, axis=1)
    if sig == 0.0:
        return out
    sing = sing.reshape(u.shape)
    # cross term and pure singular term carry (u-k)^{-sig}, (u-k)^{-2 sig}
    y1, w1 = jacobi01(nodes, -sig)
    u1 = ks[:, None] + y1[None, :]
    r1, s1, _ = psi_split(spec, p, u1.ravel())
    r1, s1 = r1.reshape(u1.shape) - centre, s1.reshape(u1.shape)
    out = out + np.sum(w1 * 2.0 * np.real(r1 * np.conj(s1)) * u1 ** (-weight_exp), axis=1)
    y2, w2 = jacobi01(nodes, -2.0 * sig)
    u2 = ks[:, None] + y2[None, :]
    _, s2, _ = psi_split(spec, p, u2.ravel())
    s2 = s2.reshape(u2.shape)
    out = out + np.sum(w2 * np.abs(s2) ** 2 * u2 ** (-weight_exp), axis=1)
    return out


def _decay_exponent(contrib: np.ndarray) -> float:
    """Fit exponent p in I_k ~ k^{-p} from the last two dyadic blocks."""
    k_top = len(contrib)
    j = int(math.floor(math.log2(k_top))) - 1
    if j < 2:
        return float("nan")
    b1 = np.sum(contrib[2 ** (j - 1) - 1 : 2**j - 1])
    b2 = np.sum(contrib[2**j - 1 : 2 ** (j + 1) - 1])
    if b1 <= 0 or b2 <= 0:
        return float("inf")
    return 1.0 - math.log2(b2 / b1)


def c_sigma1(sigma1: float) -> float:
    """Per-interval constant of the zeta-kernel norm bound."""
    s = float(sigma1)
    if not s < 0.5:
        raise DomainError("C(sigma1) needs sigma1 < 1/2")
    return (
        2.0 ** (3 - 2 * s) / ((3 - 2 * s) * (1 - s) ** 2)
        + 2.0 ** (2 - s) / (1 - s) ** 2
        + 1.0 / (1 - 2 * s)
    )


def prop_convexity_sufficient(r: float, sigma1: float, mu: float = HUXLEY_MU) -> bool:
    """Older sufficient condition for zeta integrability via a convexity bound."""
    if 0 < r <= 0.5 and r > max(0.0, sigma1 / (1 - 2 * mu)):
        return True
    if max(0.5, 1 - (1 - 2 * sigma1) / (4 * mu)) < r < 1:
        return True
    return r > 1


def zeta_integrable(r: float, sigma1: float, mu: float = HUXLEY_MU, diagnostic: bool = False):
    """Sharp rule r > max(0, sigma1) for the zeta kernel.

    With ``diagnostic=True`` returns (sharp, sufficient) where the second
    entry is the convexity-based sufficient condition.
    """
    if r == 1.0:
        raise DomainError("r = 1 is excluded when L has a pole at s = 1")
    if not sigma1 < 0.5:
        raise DomainError("sigma1 must be < 1/2")
    sharp = r > max(0.0, sigma1)
    if diagnostic:
        return sharp, prop_convexity_sufficient(r, sigma1, mu)
    return sharp


def selberg_sigma1_threshold(d: float, r: float) -> float:
    """Largest sigma1 (exclusive) allowed for a degree-d Selberg-class series."""
    if d < 0:
        raise DomainError("degree must be >= 0")
    if not (0 < r <= 0.5):
        raise DomainError("threshold is stated for 0 < r <= 1/2")
    return 0.5 - (1 - r) * d / 2.0


def _check_psi_norm_domain(spec, p, r):
    if not r > 0:
        raise NonIntegrableError(f"r = {r} must be positive")
    if spec.kind == "zeta":
        if not zeta_integrable(r, p.sigma1):
            raise NonIntegrableError(
                f"psi is not square integrable for r = {r}, sigma1 = {p.sigma1}: need r > max(0, sigma1)"
            )


def psi_norm(
    spec: SeriesSpec,
    p: PhiProfile,
    r: float,
    settings: NormSettings = NormSettings(),
    check_integrability: bool = True,
) -> PsiNormResult:
    """||psi||^2 in L^2((1, inf), du / u^{1+2r}).

    Unit intervals (k, k+1] up to k_max are integrated with three
    Gauss-Jacobi rules (weights 1, y^{-sigma1}, y^{-2 sigma1}). The rest is
    a mean-value tail estimate; ``truncation_error_bound`` bounds the
    difference between the returned value and the true norm.
    """
    r = float(r)
    if check_integrability:
        _check_psi_norm_domain(spec, p, r)
    k_max = settings.k_max
    if spec.kind == "dirichlet":
        q = spec.chi.modulus
        k_max = max(q, k_max // q * q)
    ks_all = np.arange(1, k_max + 1, dtype=float)
    pieces = []
    for start in range(0, k_max, settings.chunk):
        ks = ks_all[start : start + settings.chunk]
        pieces.append(_interval_integrals(spec, p, ks, 1.0 + 2.0 * r, settings.nodes))
    contrib = np.concatenate(pieces)
    expo = _decay_exponent(contrib)
    if not expo > 1.0:
        raise NonIntegrableError(
            f"interval contributions decay like k^-{expo:.3f}; psi is not square integrable at r = {r}"
        )
    partial = float(np.sum(contrib))
    K = float(k_max + 1)
    sig = p.sigma1 if p.singular else 0.0
    rigorous = True
    if spec.kind == "generic":
        # last-block power-law extrapolation
        tail_est = float(contrib[-1]) * K / (expo - 1.0)
        bound = 2.0 * tail_est
        rigorous = False
    else:
        asy = psi_asymptotics(spec, p, at=min(4096.0, float(k_max)))
        tail_est = abs(asy.mean) ** 2 * K ** (-2 * r) / (2 * r)
        tail_est += asy.var * K ** (2 * sig - 2 * r) / (2 * r - 2 * sig)
        if spec.kind == "zeta" and sig > 0:
            bound = c_sigma1(sig) * (K - 1) ** (-2 * (r - sig)) / (2 * (r - sig))
        elif spec.kind == "zeta":
            # |psi| <= sup over one period, bounded uniformly for sigma1 <= 0
            bound = _sup_sq(spec, p) * K ** (2 * sig - 2 * r) / (2 * r - 2 * sig)
            rigorous = sig == 0.0
        elif sig == 0.0:
            bound = _sup_sq(spec, p) * K ** (-2 * r) / (2 * r)
        else:
            bound = 4.0 * tail_est
            rigorous = False
        bound = max(bound, tail_est)
    err = max(bound - tail_est, tail_est)
    return PsiNormResult(
        norm_sq=partial + tail_est,
        truncation_error_bound=err,
        intervals_used=k_max,
        tail_estimate=tail_est,
        tail_bound_rigorous=rigorous,
        decay_exponent=expo,
    )


def _sup_sq(spec, p) -> float:
    """sup |psi(u)|^2 u^{-2 sigma1} over a late period (sigma1 <= 0), with margin."""
    if not p.singular:
        if spec.kind == "dirichlet":
            return max(abs(s) for s in spec.chi.prefix_sums()) ** 2
        return 1.0
    u = 4096.0 + np.linspace(1e-6, 1.0, 4001)
    vals = psi_values(spec, p, u)
    return 1.5 * float(np.max(np.abs(vals) ** 2 * u ** (-2 * p.sigma1)))
