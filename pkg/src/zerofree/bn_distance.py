"""Generators f_{A,r}, their Mellin transforms, Gram systems and distances.

f_{A,r}(t) = t^{r - sigma0} sum_j c_j psi(alpha_j / t) lives in
L^2((0, 1), t^{2 sigma0 - 1} dt). Inner products are computed in t-space:
every alpha_j / n is a panel breakpoint down to t_c = min(alpha) / u_max, the
power singularity (b - t)^{-sigma1} at a panel's right end b is handled by
Gauss-Jacobi rules, and (0, t_c) is covered by a mean-value estimate of psi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from zerofree._quad import jacobi01
from zerofree.admissible import AdmissibleSequence, g_A, g_A_derivative
from zerofree.characters import DirichletCharacter
from zerofree.errors import AdmissibilityError, ConditioningError, DomainError, NonIntegrableError
from zerofree.psi_kernel import (
    PhiProfile,
    SeriesSpec,
    phi_hat,
    psi_asymptotics,
    psi_eval,
    psi_split,
    series_l,
    zeta_integrable,
)
from zerofree.special_fn import _B2K_FACT

__all__ = [
    "QuadSettings",
    "GeneratorFamily",
    "DistanceResult",
    "f_eval",
    "f_hat",
    "mellin_by_quadrature",
    "inner_product",
    "gram_matrix",
    "target_inner",
    "target_norm_sq",
    "distance",
    "dirichlet_quadratic",
    "dirichlet_dr_upper",
]


@dataclass(frozen=True)
class QuadSettings:
    u_max: float = 8192.0
    nodes: int = 16
    chunk: int = 2048
    psd_tol: float = 1e-8
    eig_cutoff: float = 1e-12

    def __post_init__(self):
        if not (self.u_max >= 16 and self.nodes >= 2 and self.chunk >= 1):
            raise DomainError("u_max >= 16, nodes >= 2 and chunk >= 1 are required")


@dataclass(frozen=True)
class GeneratorFamily:
    sequences: tuple
    r: float
    spec: SeriesSpec = field(default_factory=SeriesSpec.zeta)
    profile: PhiProfile = field(default_factory=PhiProfile.indicator)
    quad: QuadSettings = field(default_factory=QuadSettings)

    def __post_init__(self):
        object.__setattr__(self, "sequences", tuple(self.sequences))
        r, sig = float(self.r), self.profile.sigma1
        m_L = self.spec.pole_order
        if m_L >= 1 and r == 1.0:
            raise DomainError("r = 1 is excluded when L has a pole at s = 1")
        if self.spec.kind == "zeta":
            ok = zeta_integrable(r, sig)
        else:
            ok = r > max(0.0, sig)
        if not ok:
            raise NonIntegrableError(f"r = {r} needs r > max(0, sigma1 = {sig})")
        for seq in self.sequences:
            self.check_sequence(seq)

    def check_sequence(self, seq: AdmissibleSequence):
        if not isinstance(seq, AdmissibleSequence):
            raise DomainError("generators must be AdmissibleSequence instances")
        if seq.order < self.spec.pole_order:
            raise AdmissibilityError(
                f"sequence order {seq.order} is below the pole order {self.spec.pole_order}",
                k=seq.order,
            )

    def with_sequences(self, sequences) -> "GeneratorFamily":
        return GeneratorFamily(tuple(sequences), self.r, self.spec, self.profile, self.quad)

    @property
    def sigma0(self) -> float:
        return self.spec.sigma0


@dataclass(frozen=True)
class DistanceResult:
    d_sq: float
    coefficients: tuple
    gram_condition: float
    residual_check: float
    target_norm_sq: float = 0.0
    projection_sq: float = 0.0
    gram_min_eig: float = 0.0
    clamped: bool = False
    tail_bound: float = 0.0


# ------------------------------------------------------------- evaluation


def f_eval(fam: GeneratorFamily, A: AdmissibleSequence, t: float) -> complex:
    """f_{A,r}(t) for t in (0, 1]; exactly zero beyond max alpha."""
    t = float(t)
    if not (0.0 < t <= 1.0):
        raise DomainError(f"t must lie in (0, 1], got {t}")
    if t > A.max_alpha:
        return 0j
    total = 0j
    for a, c in zip(A.alphas, A.coeffs):
        if c != 0:
            total += c * psi_eval(fam.spec, fam.profile, a / t)
    return t ** (fam.r - fam.sigma0) * total


def f_hat(fam: GeneratorFamily, A: AdmissibleSequence, s) -> complex:
    """Mellin transform of f_{A,r} at s, Re s > sigma0, in closed form."""
    s = complex(s)
    if not s.real > fam.sigma0:
        raise DomainError(f"f_hat needs Re(s) > sigma0 = {fam.sigma0}")
    w = s + fam.r - fam.sigma0
    lap = fam.spec.laurent(fam.profile)
    if lap and abs(w - 1.0) < 1e-7:
        # the pole of L phi_hat at 1 is cancelled by the zero of g_A
        lim = sum(
            pk * g_A_derivative(A, 1.0, k + 1) / math.factorial(k + 1) for k, pk in enumerate(lap)
        )
        return -complex(lim)
    return -series_l(fam.spec, w) * phi_hat(fam.profile, w) * g_A(A, w)


def target_norm_sq(fam: GeneratorFamily, lam) -> float:
    lam = complex(lam)
    if not lam.real > fam.sigma0:
        raise DomainError(f"need Re(lambda) > sigma0 = {fam.sigma0}")
    return 1.0 / (2.0 * lam.real - 2.0 * fam.sigma0)


def target_inner(fam: GeneratorFamily, lam, A: AdmissibleSequence) -> complex:
    """<f_A, t^{conj(lambda) - 2 sigma0}> on (0, 1), which equals f_hat(lambda)."""
    return f_hat(fam, A, lam)


# ------------------------------------------------------- panel machinery


def _unique_alphas(seqs):
    vals = sorted({a for seq in seqs for a in seq.alphas})
    return np.array(vals, dtype=float)


def _coeff_matrix(seqs, alphas):
    C = np.zeros((len(seqs), len(alphas)), dtype=complex)
    index = {a: k for k, a in enumerate(alphas)}
    for g, seq in enumerate(seqs):
        for a, c in zip(seq.alphas, seq.coeffs):
            C[g, index[a]] += c
    return C


def _breakpoints(alphas, t_c, graded: bool):
    pts = [np.array([t_c])]
    for a in alphas:
        n_top = int(math.floor(a / t_c))
        pts.append(a / np.arange(1, n_top + 1, dtype=float))
    b = np.unique(np.concatenate(pts))
    keep = np.concatenate([[True], np.diff(b) > 1e-12 * b[1:]])
    b = b[keep]
    if not graded or len(b) < 3:
        return b
    # A panel followed by a much narrower one sees the next singular point
    # just outside its right end; grade it geometrically toward that end.
    gap = np.diff(b)
    extra = []
    for i in np.nonzero(gap[1:] < 0.25 * gap[:-1])[0]:
        lo, hi, d = b[i], b[i + 1], gap[i + 1]
        k = 1
        while True:
            x = hi - d * (2.0**k - 1.0)
            if x - lo <= d * 2.0 ** (k - 1):
                break
            extra.append(x)
            k += 1
    if extra:
        b = np.unique(np.concatenate([b, np.array(extra)]))
    return b


class _Panels:
    """Breakpoint panels with per-rule evaluation of the generator functions."""

    def __init__(self, fam: GeneratorFamily, seqs):
        self.fam = fam
        self.seqs = seqs
        self.alphas = _unique_alphas(seqs)
        self.C = _coeff_matrix(seqs, self.alphas)
        self.supp = np.array([s.max_alpha for s in seqs])
        self.t_c = float(self.alphas.min()) / fam.quad.u_max
        self.sig = fam.profile.sigma1 if fam.profile.singular else 0.0
        bp = _breakpoints(self.alphas, self.t_c, graded=self.sig != 0.0)
        self.a = bp[:-1]
        self.b = bp[1:]

    def evaluate(self, sl, beta):
        """Nodes, weights and (reg, sing) parts of every generator on panels sl.

        f_g(t) = reg_g(t) + sing_g(t) (b - t)^{-sigma1}; the returned weights
        already include (b - a)^{1 + beta}. Shapes: t (P, n), reg (G, P, n).
        """
        fam = self.fam
        sig = self.sig
        a, b = self.a[sl], self.b[sl]
        y, w = jacobi01(fam.quad.nodes, beta)
        h = (b - a)[:, None]
        t = b[:, None] - h * y[None, :]
        wts = w[None, :] * h ** (1.0 + beta)
        P, n = t.shape
        G = len(self.seqs)
        reg = np.zeros((G, P, n), dtype=complex)
        sing = np.zeros((G, P, n), dtype=complex)
        for k, alpha in enumerate(self.alphas):
            ck = self.C[:, k]
            if not np.any(ck):
                continue
            u = alpha / t
            r_k, s_k, n_k = psi_split(fam.spec, fam.profile, u.ravel())
            r_k, s_k, n_k = r_k.reshape(u.shape), s_k.reshape(u.shape), n_k.reshape(u.shape)
            if sig != 0.0:
                ub = alpha / b
                nb = np.rint(ub)
                at_end = (nb >= 1) & (np.abs(ub - nb) <= 1e-9 * nb)
                at_end = at_end[:, None] & (n_k == nb[:, None])
                # (u - n)^{-sig} = (n / t)^{-sig} (b - t)^{-sig} when b = alpha / n
                with np.errstate(divide="ignore", invalid="ignore"):
                    s_end = np.where(at_end, s_k * (n_k / t) ** (-sig), 0.0)
                    s_in = np.where(
                        at_end | (n_k < 1), 0.0, s_k * (u - n_k) ** (-sig)
                    )
                r_k = r_k + s_in
                sing += ck[:, None, None] * s_end[None]
            reg += ck[:, None, None] * r_k[None]
        scale = t ** (fam.r - fam.sigma0)
        inside = b[None, :] <= self.supp[:, None] * (1.0 + 1e-12)
        mask = inside[:, :, None] * scale[None]
        return t, wts, reg * mask, sing * mask

    def chunks(self):
        step = self.fam.quad.chunk
        for start in range(0, len(self.a), step):
            yield slice(start, start + step)


def _gram_quadrature(fam, seqs):
    pan = _Panels(fam, seqs)
    G = len(seqs)
    M = np.zeros((G, G), dtype=complex)
    e = 2.0 * fam.sigma0 - 1.0
    sig = pan.sig
    for sl in pan.chunks():
        t0, w0, r0, s0 = pan.evaluate(sl, 0.0)
        if sig == 0.0:
            M += np.einsum("gpn,hpn,pn->gh", r0, np.conj(r0), w0 * t0**e)
            continue
        M += np.einsum("gpn,hpn,pn->gh", r0, np.conj(r0), w0 * t0**e)
        t1, w1, r1, s1 = pan.evaluate(sl, -sig)
        cross = np.einsum("gpn,hpn,pn->gh", r1, np.conj(s1), w1 * t1**e)
        M += cross + cross.conj().T
        t2, w2, r2, s2 = pan.evaluate(sl, -2.0 * sig)
        M += np.einsum("gpn,hpn,pn->gh", s2, np.conj(s2), w2 * t2**e)
    tail, bound = _gram_tail(fam, pan)
    return M + tail, bound, pan


def _gram_tail(fam, pan):
    """Estimate of int_0^{t_c} f_g conj(f_h) t^{2 sigma0 - 1} dt, plus a size bound."""
    G = len(pan.seqs)
    if fam.spec.kind == "generic":
        return np.zeros((G, G), dtype=complex), float("nan")
    asy = psi_asymptotics(fam.spec, fam.profile)
    r, sig, tc = fam.r, pan.sig, pan.t_c
    Csum = pan.C.sum(axis=1)
    mean_part = abs(asy.mean) ** 2 * np.outer(Csum, np.conj(Csum)) * tc ** (2 * r) / (2 * r)
    v = asy.var * pan.alphas ** (2 * sig) * tc ** (2 * r - 2 * sig) / (2 * r - 2 * sig)
    var_part = (pan.C * v[None, :]) @ np.conj(pan.C).T
    # Minkowski bound on the neglected piece for each generator
    amp = np.abs(pan.C) @ np.sqrt(v)
    mean_amp = abs(asy.mean) * np.abs(pan.C).sum(axis=1) * math.sqrt(tc ** (2 * r) / (2 * r))
    bound = float(np.max((amp + mean_amp) ** 2)) if G else 0.0
    return mean_part + var_part, bound


def gram_matrix(fam: GeneratorFamily, seqs=None) -> np.ndarray:
    """M[i, j] = <f_i, f_j> for the family's generators (or ``seqs``)."""
    seqs = fam.sequences if seqs is None else tuple(seqs)
    for seq in seqs:
        fam.check_sequence(seq)
    if not seqs:
        return np.zeros((0, 0), dtype=complex)
    M, _, _ = _gram_quadrature(fam, seqs)
    return 0.5 * (M + M.conj().T)


def inner_product(fam: GeneratorFamily, A: AdmissibleSequence, B: AdmissibleSequence) -> complex:
    """<f_A, f_B> = int_0^1 f_A conj(f_B) t^{2 sigma0 - 1} dt."""
    M = gram_matrix(fam, (A, B))
    return complex(M[0, 1])


def _mean_tail_mellin(fam, w, U):
    """int_U^inf Mean(u) u^{-w-1} du with the mean-value model of psi."""
    if fam.spec.kind == "zeta":
        sig = fam.profile.sigma1 if fam.profile.singular else 0.0
        total = 0.5 * U ** (-w) / w
        rising = sig
        for k in range(12):
            total += _B2K_FACT[k] * rising * U ** (1 - 2 * (k + 1) - w) / (w + 2 * (k + 1) - 1)
            rising *= (sig + 2 * k + 1) * (sig + 2 * k + 2)
        return total
    asy = psi_asymptotics(fam.spec, fam.profile)
    return asy.mean * U ** (-w) / w


def mellin_by_quadrature(fam: GeneratorFamily, A: AdmissibleSequence, s) -> complex:
    """int_0^1 f_A(t) t^{s-1} dt by panel quadrature (an oracle for f_hat)."""
    s = complex(s)
    fam.check_sequence(A)
    pan = _Panels(fam, (A,))
    sig = pan.sig
    total = 0j
    for sl in pan.chunks():
        t0, w0, r0, _ = pan.evaluate(sl, 0.0)
        total += np.sum(r0[0] * w0 * t0 ** (s - 1.0))
        if sig != 0.0:
            t1, w1, _, s1 = pan.evaluate(sl, -sig)
            total += np.sum(s1[0] * w1 * t1 ** (s - 1.0))
    if fam.spec.kind != "generic":
        w = s + fam.r - fam.sigma0
        for k, alpha in enumerate(pan.alphas):
            total += pan.C[0, k] * alpha**w * _mean_tail_mellin(fam, w, alpha / pan.t_c)
    return complex(total)


# --------------------------------------------------------------- distance


def distance(fam: GeneratorFamily, lam) -> DistanceResult:
    """Squared distance from t^{conj(lam) - 2 sigma0} to the span of the generators."""
    lam = complex(lam)
    tn = target_norm_sq(fam, lam)
    seqs = fam.sequences
    if not seqs:
        return DistanceResult(tn, (), 1.0, 0.0, tn, 0.0, 0.0, False, 0.0)
    M, tail_bound, _ = _gram_quadrature(fam, seqs)
    M = 0.5 * (M + M.conj().T)
    G = M.T  # G[i, j] = <f_j, f_i>
    b = np.array([np.conj(target_inner(fam, lam, A)) for A in seqs])
    evals, evecs = np.linalg.eigh(G)
    top = float(evals[-1])
    diag = {"eigenvalues": evals.tolist(), "t_tail_bound": tail_bound}
    if top <= 0 or evals[0] < -fam.quad.psd_tol * top:
        raise ConditioningError("Gram matrix is not positive semidefinite", diag)
    keep = evals > fam.quad.eig_cutoff * top
    inv = np.zeros_like(evals)
    inv[keep] = 1.0 / evals[keep]
    proj = evecs.conj().T @ b
    x = evecs @ (inv * proj)
    explained = float(np.sum(inv * np.abs(proj) ** 2))
    raw = tn - explained
    resid = float(np.linalg.norm(G @ x - b) / max(np.linalg.norm(b), 1e-300))
    cond = top / float(evals[keep].min())
    return DistanceResult(
        d_sq=max(raw, 0.0),
        coefficients=tuple(complex(v) for v in x),
        gram_condition=cond,
        residual_check=resid,
        target_norm_sq=tn,
        projection_sq=explained,
        gram_min_eig=float(evals[0]),
        clamped=raw < 0,
        tail_bound=tail_bound,
    )


# ------------------------------------------------- Dirichlet upper bound


def dirichlet_quadratic(chi: DirichletCharacter, r: float, alpha: float, periods: int = 65536):
    """(A0, A1, A2) with int_0^1 |t^{1-r} - c t^r S(alpha/t)|^2 dt/t = A0 - 2 Re(c A1) + |c|^2 A2.

    S(u) = sum_{n<u} chi(n) is constant on each panel [alpha/(n+1), alpha/n),
    so panel integrals are exact; beyond ``periods`` full periods the period
    means of S and |S|^2 take over.
    """
    if chi.is_trivial:
        raise DomainError("needs a non-trivial character")
    if not (0.0 < alpha <= 1.0):
        raise DomainError("alpha must lie in (0, 1]")
    if not (0.0 < r < 1.0):
        raise DomainError("r must lie in (0, 1)")
    q = chi.modulus
    pref = np.array(chi.prefix_sums()[:q], dtype=complex)  # S on (n, n+1], n mod q
    N = q * periods
    n = np.arange(1, N + 1, dtype=float)
    S = pref[np.arange(1, N + 1) % q]
    lo, hi = alpha / (n + 1.0), alpha / n
    A0 = 1.0 / (2.0 - 2.0 * r)
    A1 = complex(np.sum(S * (hi - lo)))
    A2 = float(np.sum(np.abs(S) ** 2 * (hi ** (2 * r) - lo ** (2 * r)))) / (2 * r)
    tc = alpha / (N + 1.0)
    A1 += complex(np.mean(pref)) * tc
    A2 += float(np.mean(np.abs(pref) ** 2)) * tc ** (2 * r) / (2 * r)
    return A0, A1, A2


def dirichlet_dr_upper(chi: DirichletCharacter, r: float, alpha: float = 1.0) -> float:
    """min over c of the one-generator quadratic; below 1/(2-2r) when L(chi, 1) != 0."""
    if not (0.5 <= r < 1.0):
        raise DomainError("r must lie in [1/2, 1)")
    A0, A1, A2 = dirichlet_quadratic(chi, r, alpha)
    if A2 <= 0.0:
        return A0
    return A0 - abs(A1) ** 2 / A2
