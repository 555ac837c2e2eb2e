"""Zero-free discs certified by distances or by single admissible sequences.

A pseudo-hyperbolic disc {mu : |(mu - lam)/(mu + conj(lam) - 2 sigma0)| < R}
sits inside the half-plane Re > sigma0. Zero-free statements are about
the translate of that disc by ``shift`` = r - sigma0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from zerofree.admissible import validate
from zerofree.bn_distance import GeneratorFamily, f_hat, gram_matrix
from zerofree.characters import DirichletCharacter, period_sup, polya_vinogradov_bound
from zerofree.errors import DomainError
from zerofree.psi_kernel import (
    NormSettings,
    PhiProfile,
    SeriesSpec,
    c_sigma1,
    phi_hat,
    psi_norm,
)
from zerofree.special_fn import dirichlet_l, riemann_zeta

__all__ = [
    "PseudoHyperbolicDisc",
    "EuclideanDisc",
    "ZetaDiscReport",
    "SiegelResult",
    "pseudo_to_euclid",
    "disc_from_distance",
    "disc_from_sequence",
    "subspace_disc",
    "order_k_disc",
    "zeta_explicit_report",
    "zeta_explicit_disc",
    "zeta_two_point_sequence",
    "dirichlet_disc",
    "dirichlet_real_interval",
    "siegel_criterion",
]

_SLACK = 1e-12


@dataclass(frozen=True)
class PseudoHyperbolicDisc:
    lam: complex
    R: float
    sigma0: float = 0.0
    shift: float = 0.0
    raw_R: float | None = None

    def __post_init__(self):
        if not (0.0 <= self.R <= 1.0):
            raise DomainError(f"R = {self.R} outside [0, 1]")
        if not complex(self.lam).real > self.sigma0:
            raise DomainError("lambda must lie right of sigma0")

    @property
    def clamped(self) -> bool:
        return self.raw_R is not None and self.raw_R != self.R


@dataclass(frozen=True)
class EuclideanDisc:
    center: complex
    radius: float
    is_half_plane: bool = False

    def contains(self, z) -> bool:
        z = complex(z)
        if self.is_half_plane:
            return z.real > self.center.real
        return abs(z - self.center) < self.radius


def _clamped(lam, raw, sigma0, shift) -> PseudoHyperbolicDisc:
    R = min(max(raw, 0.0), 1.0)
    return PseudoHyperbolicDisc(complex(lam), R, sigma0, shift, raw_R=raw)


def pseudo_to_euclid(d: PseudoHyperbolicDisc) -> EuclideanDisc:
    lam = complex(d.lam)
    a, b = lam.real, lam.imag
    R, s0 = d.R, d.sigma0
    if R >= 1.0:
        return EuclideanDisc(complex(s0 + d.shift, b), math.inf, True)
    R2 = R * R
    cx = (a + R2 * (a - 2.0 * s0)) / (1.0 - R2)
    radius = 2.0 * R * (a - s0) / (1.0 - R2)
    return EuclideanDisc(complex(cx + d.shift, b), radius, False)


def _check_distance(lam, d_sq, sigma0):
    lam = complex(lam)
    if not lam.real > sigma0:
        raise DomainError("need Re(lambda) > sigma0")
    trivial = 1.0 / (2.0 * (lam.real - sigma0))
    if d_sq < 0 or d_sq > trivial * (1.0 + _SLACK):
        raise DomainError(f"d_sq = {d_sq} outside [0, {trivial}]")
    return lam, 1.0 - 2.0 * (lam.real - sigma0) * d_sq


def disc_from_distance(lam, d_sq: float, r: float, sigma0: float = 0.0) -> PseudoHyperbolicDisc:
    lam, inner = _check_distance(lam, d_sq, sigma0)
    return _clamped(lam, math.sqrt(max(inner, 0.0)), sigma0, r - sigma0)


def subspace_disc(lam, partial_d_sq: float, r: float, sigma0: float = 0.0) -> PseudoHyperbolicDisc:
    """Same as disc_from_distance; the distance came from a sub-family."""
    return disc_from_distance(lam, partial_d_sq, r, sigma0)


def order_k_disc(lam, d_sq: float, r: float, sigma0: float, k: int) -> PseudoHyperbolicDisc:
    """Disc free of zeros of multiplicity >= k."""
    if int(k) != k or k < 1:
        raise DomainError("k must be a positive integer")
    lam, inner = _check_distance(lam, d_sq, sigma0)
    return _clamped(lam, max(inner, 0.0) ** (1.0 / (2 * k)), sigma0, r - sigma0)


def disc_from_sequence(lam, A, fam: GeneratorFamily) -> PseudoHyperbolicDisc:
    lam = complex(lam)
    s0 = fam.sigma0
    if not lam.real > s0:
        raise DomainError("need Re(lambda) > sigma0")
    norm_sq = float(gram_matrix(fam, (A,))[0, 0].real)
    if not norm_sq > 0:
        raise DomainError("generator has zero norm")
    raw = math.sqrt(2.0 * (lam.real - s0)) * abs(f_hat(fam, A, lam)) / math.sqrt(norm_sq)
    return _clamped(lam, raw, s0, fam.r - s0)


# ------------------------------------------------------------ explicit zeta


@dataclass(frozen=True)
class ZetaDiscReport:
    disc: EuclideanDisc
    F: float
    R: float
    clamped: bool
    psi_norm_value: float
    norm_mode: str


def _zeta_domain(lam, r, sigma1, alpha):
    lam = complex(lam)
    if not sigma1 < 0.5:
        raise DomainError("sigma1 must be < 1/2")
    if not (max(0.0, sigma1) < r < 1.0):
        raise DomainError(f"need max(0, sigma1) < r < 1, got r = {r}, sigma1 = {sigma1}")
    if not lam.real > 0:
        raise DomainError("need Re(lambda) > 0")
    if not (0.0 < alpha < 1.0):
        raise DomainError("alpha must lie in (0, 1)")
    return lam


def zeta_explicit_report(
    lam, r: float, sigma1: float, alpha: float = 0.25, norm_mode: str = "bound"
) -> ZetaDiscReport:
    """Zero-free disc of zeta from the two-point sequence ((alpha, 1), c).

    norm_mode "bound" uses C(sigma1) zeta(1 + 2(r - sigma1)) for ||psi||^2;
    "computed" uses the quadrature value from psi_norm.
    """
    lam = _zeta_domain(lam, r, sigma1, alpha)
    if norm_mode == "bound":
        psi_sq = c_sigma1(sigma1) * riemann_zeta(1.0 + 2.0 * (r - sigma1)).real
    elif norm_mode == "computed":
        prof = PhiProfile.power(sigma1) if sigma1 != 0 else PhiProfile.indicator()
        psi_sq = psi_norm(SeriesSpec.zeta(), prof, r, NormSettings()).norm_sq
    else:
        raise DomainError(f"unknown norm mode {norm_mode!r}")
    prof = PhiProfile.power(sigma1) if sigma1 != 0 else PhiProfile.indicator()
    w = lam + r
    num = (
        math.sqrt(2.0 * lam.real)
        * abs(alpha**w - alpha)
        * abs(phi_hat(prof, w))
        * abs(riemann_zeta(w))
    )
    den = (alpha**r + alpha) * (
        math.sqrt(psi_sq) + 1.0 / ((1.0 - sigma1) * math.sqrt(2.0 - 2.0 * r))
    )
    F = num / den
    pdisc = _clamped(lam, F, 0.0, r)
    return ZetaDiscReport(pseudo_to_euclid(pdisc), F, pdisc.R, pdisc.clamped, psi_sq, norm_mode)


def zeta_explicit_disc(lam, r, sigma1, alpha=0.25, norm_mode="bound") -> EuclideanDisc:
    return zeta_explicit_report(lam, r, sigma1, alpha, norm_mode).disc


def zeta_two_point_sequence(alpha: float):
    """The 1-admissible pair ((alpha, 1), (1, -alpha)) behind the explicit disc."""
    return validate([alpha, 1.0], [1.0, -alpha], 1)


# -------------------------------------------------------------- Dirichlet


def dirichlet_disc(
    lam, r: float, chi: DirichletCharacter, bound_mode: str = "exact_period_sup"
) -> PseudoHyperbolicDisc:
    """Pseudo-hyperbolic disc (sigma0 = 0, shift r) free of zeros of L(chi, .)."""
    lam = complex(lam)
    if chi.is_trivial:
        raise DomainError("needs a non-trivial character")
    if not r > 0:
        raise DomainError("r must be positive")
    if not lam.real > 0:
        raise DomainError("need Re(lambda) > 0")
    if bound_mode == "exact_period_sup":
        B = period_sup(chi)
    elif bound_mode == "polya_vinogradov":
        B = polya_vinogradov_bound(chi)
    else:
        raise DomainError(f"unknown bound mode {bound_mode!r}")
    w = lam + r
    raw = math.sqrt(2.0 * lam.real) * abs(dirichlet_l(chi, w)) / abs(w) * math.sqrt(2.0 * r) / B
    return _clamped(lam, raw, 0.0, r)


def dirichlet_real_interval(r: float, d_sq: float) -> float:
    """Abscissa beyond which L(chi, sigma) has no real zero."""
    if not (0.5 <= r < 1.0):
        raise DomainError("need 1/2 <= r < 1")
    trivial = 1.0 / (2.0 - 2.0 * r)
    if d_sq < 0 or d_sq > trivial * (1.0 + _SLACK):
        raise DomainError(f"d_sq = {d_sq} outside [0, {trivial}]")
    return 1.0 - (1.0 - r) * math.sqrt(max(0.0, 1.0 - 2.0 * (1.0 - r) * d_sq))


@dataclass(frozen=True)
class SiegelResult:
    holds: bool
    slack: float
    threshold: float


def siegel_criterion(d_sq: float, r: float, q: int, C: float) -> SiegelResult:
    """Check d^2 <= 1/(2-2r) - C^2 / (2 (log q)^2 (1-r)^3)."""
    if not (0.5 <= r < 1.0):
        raise DomainError("need 1/2 <= r < 1")
    if not (int(q) == q and q >= 3):
        raise DomainError("need an integer modulus q >= 3")
    if not C > 0:
        raise DomainError("need C > 0")
    lq = math.log(q)
    threshold = 1.0 / (2.0 - 2.0 * r) - C * C / (2.0 * lq * lq * (1.0 - r) ** 3)
    slack = threshold - d_sq
    return SiegelResult(slack >= 0, slack, threshold)
