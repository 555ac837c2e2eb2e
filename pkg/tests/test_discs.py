import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from zerofree.admissible import construct
from zerofree.bn_distance import GeneratorFamily, QuadSettings, distance, f_hat, gram_matrix
from zerofree.characters import kronecker_character, validate_character
from zerofree.discs import (
    EuclideanDisc,
    PseudoHyperbolicDisc,
    dirichlet_disc,
    dirichlet_real_interval,
    disc_from_distance,
    disc_from_sequence,
    order_k_disc,
    pseudo_to_euclid,
    siegel_criterion,
    subspace_disc,
    zeta_explicit_disc,
    zeta_explicit_report,
    zeta_two_point_sequence,
)
from zerofree.errors import DomainError
from zerofree.psi_kernel import PhiProfile, SeriesSpec
from zerofree.special_fn import dirichlet_l, riemann_zeta

CHI3 = kronecker_character(-3)
ZERO_A = 0.5 + 49.773832477672302j
ZERO_B = 0.5 + 52.970321477714461j


# ----------------------------------------------------------- conversion


def test_pseudo_to_euclid_example():
    e = pseudo_to_euclid(PseudoHyperbolicDisc(0.5, 1 / 3))
    assert abs(e.center - 0.625) < 1e-15 and abs(e.radius - 0.375) < 1e-15


def test_degenerate_radii():
    e = pseudo_to_euclid(PseudoHyperbolicDisc(0.3 + 2j, 0.0, 0.1, 0.4))
    assert e.radius == 0 and abs(e.center - (0.7 + 2j)) < 1e-15
    h = pseudo_to_euclid(PseudoHyperbolicDisc(0.3 + 2j, 1.0, 0.1, 0.4))
    assert h.is_half_plane and h.center.real == 0.5
    assert h.contains(0.51 + 100j) and not h.contains(0.49)


def test_disc_validation():
    with pytest.raises(DomainError):
        PseudoHyperbolicDisc(0.5, 1.2)
    with pytest.raises(DomainError):
        PseudoHyperbolicDisc(0.1, 0.5, sigma0=0.2)


@given(
    st.floats(0.001, 5), st.floats(-100, 100), st.floats(0, 0.999), st.floats(0, 0.9), st.floats(0, 1)
)
def test_euclid_disc_is_the_pseudo_hyperbolic_set(a_off, b, R, s0, shift):
    lam = complex(s0 + a_off, b)
    e = pseudo_to_euclid(PseudoHyperbolicDisc(lam, R, s0, shift))
    assert e.center.real - e.radius >= s0 + shift - 1e-12 * max(1, e.radius)
    # boundary points satisfy |(mu - lam)/(mu + conj(lam) - 2 s0)| = R
    for th in np.linspace(0, 2 * np.pi, 7):
        mu = e.center - shift + e.radius * np.exp(1j * th)
        rho = abs((mu - lam) / (mu + lam.conjugate() - 2 * s0))
        assert abs(rho - R) < 1e-9


# --------------------------------------------------------- from distance


def test_disc_from_distance_examples():
    assert disc_from_distance(0.5, 0.0, 0.5).R == 1.0
    assert disc_from_distance(0.5, 1.0, 0.5).R == 0.0
    assert abs(disc_from_distance(0.5, 0.375, 0.5).R - 0.7906) < 1e-4
    d = disc_from_distance(0.8 + 1j, 0.1, 0.6, 0.2)
    assert d.shift == pytest.approx(0.4)
    with pytest.raises(DomainError):
        disc_from_distance(0.5, 1.01, 0.5)


def test_subspace_alias():
    for args in [(0.5, 0.0, 0.5), (0.5, 1.0, 0.5), (0.5, 0.375, 0.5)]:
        assert subspace_disc(*args) == disc_from_distance(*args)


def test_order_k_examples_and_monotonicity():
    rng = np.random.default_rng(1)
    for _ in range(10):
        lam = complex(rng.uniform(0.1, 2), rng.uniform(-50, 50))
        d = rng.uniform(0, 1 / (2 * lam.real))
        assert order_k_disc(lam, d, 0.5, 0.0, 1).R == pytest.approx(disc_from_distance(lam, d, 0.5).R, abs=1e-15)
        radii = [order_k_disc(lam, d, 0.5, 0.0, k).R for k in range(1, 12)]
        assert all(b >= a for a, b in zip(radii, radii[1:]))
    # inner value 0.625 at k = 2
    assert abs(order_k_disc(0.5, 0.375, 0.5, 0.0, 2).R - 0.8891) < 1e-4
    assert order_k_disc(0.5, 0.375, 0.5, 0.0, 10**6).R > 0.9999
    with pytest.raises(DomainError):
        order_k_disc(0.5, 0.3, 0.5, 0.0, 0)


# --------------------------------------------------------- from sequence


def test_disc_from_sequence_vanishes_at_a_zero():
    fam = GeneratorFamily((), 0.3, quad=QuadSettings(u_max=256))
    rho = 0.5 + 14.134725141734693j
    d = disc_from_sequence(rho - 0.3, zeta_two_point_sequence(0.5), fam)
    assert d.R < 1e-9


def test_sequence_disc_never_beats_distance_disc():
    rng = np.random.default_rng(9)
    quad = QuadSettings(u_max=512)
    for _ in range(10):
        A = construct(list(np.sort(rng.uniform(0.15, 1.0, 3))), 1)
        fam = GeneratorFamily((A,), float(rng.uniform(0.3, 0.8)), quad=quad)
        lam = complex(rng.uniform(0.05, 1.5), rng.uniform(-40, 40))
        seq = disc_from_sequence(lam, A, fam)
        dist = disc_from_distance(lam, distance(fam, lam).d_sq, fam.r)
        assert seq.R <= dist.R + 1e-9


def test_sequence_disc_reproduces_explicit_numerator():
    # with the alpha = 1/4 pair the sequence disc and the explicit disc share
    # the numerator; the explicit one divides by an upper bound of ||f_A||
    lam, r, sig = 0.3 + 20j, 0.6, 0.2
    prof = PhiProfile.power(sig)
    A = zeta_two_point_sequence(0.25)
    fam = GeneratorFamily((A,), r, SeriesSpec.zeta(), prof, QuadSettings(u_max=2048))
    norm = math.sqrt(gram_matrix(fam)[0, 0].real)
    seq = disc_from_sequence(lam, A, fam)
    rep = zeta_explicit_report(lam, r, sig, 0.25, "computed")
    den = (0.25**r + 0.25) * (math.sqrt(rep.psi_norm_value) + 1 / ((1 - sig) * math.sqrt(2 - 2 * r)))
    assert norm <= den
    assert abs(seq.raw_R * norm - rep.F * den) < 1e-9 * rep.F * den
    assert seq.R >= rep.R


# ---------------------------------------------------------- explicit zeta


def test_explicit_example_and_flanking_zeros():
    rep = zeta_explicit_report(0.01 + 50j, 0.49, 0.4)
    assert abs(rep.disc.center - (0.5 + 50j)) < 1e-3
    assert abs(rep.disc.radius / 3.75e-6 - 1) < 0.03
    assert not rep.disc.contains(ZERO_A) and not rep.disc.contains(ZERO_B)
    mp.mp.dps = 20
    for z in (ZERO_A, ZERO_B):
        assert abs(complex(mp.zeta(z))) < 1e-12


def test_explicit_disc_has_no_small_zeta_on_boundary():
    e = zeta_explicit_disc(0.01 + 50j, 0.49, 0.4)
    th = np.linspace(0, 2 * np.pi, 400, endpoint=False)
    for z in e.center + e.radius * np.exp(1j * th):
        assert abs(riemann_zeta(z)) >= 1e-6


def test_explicit_other_regimes():
    e = zeta_explicit_disc(1 + 0j, 0.5, 0.0)
    assert e.radius > 0 and riemann_zeta(1.5).real != 0
    comp = zeta_explicit_report(0.01 + 50j, 0.49, 0.4, norm_mode="computed")
    bound = zeta_explicit_report(0.01 + 50j, 0.49, 0.4, norm_mode="bound")
    assert comp.psi_norm_value <= bound.psi_norm_value and comp.disc.radius >= bound.disc.radius
    for bad in [dict(r=1.0, sigma1=0.4), dict(r=0.3, sigma1=0.4), dict(r=0.5, sigma1=0.5)]:
        with pytest.raises(DomainError):
            zeta_explicit_disc(0.01 + 50j, **bad)
    with pytest.raises(DomainError):
        zeta_explicit_disc(0.01 + 50j, 0.49, 0.4, norm_mode="other")


# -------------------------------------------------------------- Dirichlet


def test_dirichlet_disc_examples():
    d = dirichlet_disc(0.5, 0.5, CHI3)
    assert abs(d.R - dirichlet_l(CHI3, 1).real) < 1e-12 and abs(d.R - 0.6046) < 1e-4
    pv = dirichlet_disc(0.5, 0.5, CHI3, "polya_vinogradov")
    assert pv.R < d.R
    with pytest.raises(DomainError):
        dirichlet_disc(0.5, 0.5, validate_character(4, [0, 1, 0, 1]))


def test_dirichlet_disc_zero_gives_zero_radius():
    chi4 = kronecker_character(-4)
    mp.mp.dps = 25
    rho = mp.findroot(lambda s: mp.dirichlet(s, [0, 1, 0, -1]), mp.mpc(0.5, 6.0209))
    d = dirichlet_disc(complex(rho) - 0.3, 0.3, chi4)
    assert d.R < 1e-9


def test_dirichlet_clamping_flag():
    d = dirichlet_disc(5.0, 0.5, kronecker_character(5))
    assert d.R <= 1 and (d.clamped == (d.raw_R > 1))


def test_real_interval_examples():
    assert dirichlet_real_interval(0.6, 0.0) == pytest.approx(0.6)
    assert dirichlet_real_interval(0.6, 1 / 0.8) == pytest.approx(1.0)
    got = dirichlet_real_interval(0.5, 0.3954)
    assert got == pytest.approx(1 - 0.5 * math.sqrt(1 - 0.3954), abs=1e-15)
    assert abs(got - 0.6111) < 2e-4
    with pytest.raises(DomainError):
        dirichlet_real_interval(0.4, 0.1)


def test_siegel_examples():
    C = 0.4
    res = siegel_criterion(0.3, 0.5, 3, C)
    assert res.threshold == pytest.approx(1 - 4 * C**2 / math.log(3) ** 2)
    assert res.holds is False or res.slack >= 0
    assert siegel_criterion(0.1, 0.5, 10**6, C).holds
    assert not siegel_criterion(1.0, 0.5, 10**6, 1e-3).holds
    slacks = [siegel_criterion(0.3, 0.5, 1000, c).slack for c in (0.1, 0.2, 0.4, 0.8)]
    assert all(b < a for a, b in zip(slacks, slacks[1:]))
    with pytest.raises(DomainError):
        siegel_criterion(0.3, 0.5, 2, C)
