import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from twophoton import entropy, states
from twophoton.entropy import Classification
from twophoton.errors import DomainError
from twophoton.states import FiveParamState, TwoPhotonParams

from helpers import params_from_rho, random_density, random_five

# Reference values computed with mpmath at 30 digits.
S1_HALF = 0.562335144618808350
S_HALF_QUARTERS = 1.039720770839917964
S_MODEL_C_0_08 = 0.325082973391448240
S_MODEL_A_05_066 = 0.987665180149044451
H_THIRD = 0.636514168294812818
LN2 = 0.693147180559945309
TWO_LN2 = 1.386294361119890619

unit = st.floats(0, 1)


def test_constants():
    assert entropy.LN2 == pytest.approx(LN2, abs=1e-16)
    assert entropy.S_MAX == pytest.approx(TWO_LN2, abs=1e-16)


def test_xlogx_zero_branch():
    assert entropy.xlogx(0.0) == 0.0
    assert entropy.xlogx(1e-16) == 0.0
    assert entropy.xlogx(1.0) == 0.0
    assert entropy.xlogx(0.5) == pytest.approx(0.5 * math.log(0.5))


# --- single photon ----------------------------------------------------------------


def test_single_photon_endpoints():
    assert entropy.single_photon_entropy(0.0) == pytest.approx(LN2, abs=1e-15)
    assert entropy.single_photon_entropy(1.0) == 0.0


def test_single_photon_half():
    assert entropy.single_photon_entropy(0.5) == pytest.approx(S1_HALF, abs=1e-15)


@pytest.mark.parametrize("bad", [-0.1, 1.1, 2.0])
def test_single_photon_domain(bad):
    with pytest.raises(DomainError):
        entropy.single_photon_entropy(bad)


def test_single_photon_tolerates_roundoff():
    assert entropy.single_photon_entropy(1.0 + 1e-12) == 0.0


def test_single_photon_strictly_decreasing():
    xs = np.linspace(0, 1, 1001)
    vals = np.array([entropy.single_photon_entropy(x) for x in xs])
    assert np.all(np.diff(vals) < 0)


@given(unit)
def test_single_photon_matches_binary_entropy(x):
    assert entropy.single_photon_entropy(x) == pytest.approx(entropy.binary_entropy((1 + x) / 2), abs=1e-14)


# --- spectrum entropy -----------------------------------------------------------------


def test_entropy_from_spectrum_values():
    assert entropy.entropy_from_spectrum([0.25] * 4) == pytest.approx(TWO_LN2, abs=1e-15)
    assert entropy.entropy_from_spectrum([1, 0, 0, 0]) == 0.0
    assert entropy.entropy_from_spectrum([0.5, 0.25, 0.25, 0]) == pytest.approx(S_HALF_QUARTERS, abs=1e-15)


def test_entropy_from_spectrum_clamps_tiny_negative():
    assert entropy.entropy_from_spectrum([1.0 + 5e-11, 0, 0, -5e-11]) == pytest.approx(0.0, abs=1e-9)


@pytest.mark.parametrize(
    "lams",
    [[0.5, 0.5, 0.1, -0.1], [0.5, 0.5, 0.5, 0.5], [1.5, -0.5, 0, 0], [1, 0, 0]],
)
def test_entropy_from_spectrum_rejects(lams):
    with pytest.raises(DomainError):
        entropy.entropy_from_spectrum(lams)


@given(st.lists(st.floats(0, 1), min_size=4, max_size=4).filter(lambda v: sum(v) > 1e-3))
def test_entropy_bounds(raw):
    lams = np.array(raw) / sum(raw)
    s = entropy.entropy_from_spectrum(lams)
    assert -1e-15 <= s <= TWO_LN2 + 1e-12


# --- closed forms -------------------------------------------------------------------------


def test_model_a_value():
    assert entropy.entropy_model_a(0.5, 0.66) == pytest.approx(S_MODEL_A_05_066, abs=1e-13)


def test_model_c_value():
    assert entropy.entropy_model_c(0.0, 0.8) == pytest.approx(S_MODEL_C_0_08, abs=1e-14)


def test_model_a_at_zeta33_one_is_single_photon():
    for z in np.linspace(0, 1, 21):
        assert entropy.entropy_model_a(z, 1.0) == pytest.approx(entropy.single_photon_entropy(z), abs=1e-14)


def test_model_c_at_zeta_zero_is_single_photon():
    for x in np.linspace(0, 1, 21):
        assert entropy.entropy_model_c(x, 0.0) == pytest.approx(entropy.single_photon_entropy(x), abs=1e-14)


def test_model_b_symmetric_boundary():
    assert entropy.entropy_model_b(1 / 3, 1 / 3) == pytest.approx(H_THIRD, abs=1e-15)


def test_model_b_depends_on_sum_only():
    for total in (0.2, 0.7, 1.0, 1.5):
        vals = [entropy.entropy_model_b(a, total - a) for a in np.linspace(max(0, total - 1), min(1, total), 7)]
        assert max(vals) - min(vals) < 1e-15


def test_model_entropies_match_numeric():
    for z, z33 in ((0.3, 0.2), (0.5, 0.66), (0.0, -1.0), (0.9, 0.85)):
        numeric = entropy.joint_entropy(states.model_a(z, z33).to_params())
        assert entropy.entropy_model_a(z, z33) == pytest.approx(numeric, abs=1e-10)
    for a, b in ((0.1, 0.2), (0.5, 0.5), (0.0, 1.0)):
        numeric = entropy.joint_entropy(states.model_b(a, b).to_params())
        assert entropy.entropy_model_b(a, b) == pytest.approx(numeric, abs=1e-10)
    for x, z in ((0.3, 0.4), (0.6, 0.8), (0.0, 0.9)):
        numeric = entropy.joint_entropy(states.model_c(x, z).to_params())
        assert entropy.entropy_model_c(x, z) == pytest.approx(numeric, abs=1e-10)


def test_closed_five_matches_numeric(rng):
    worst = 0.0
    for s in random_five(rng, 1000):
        worst = max(worst, abs(entropy.entropy_five_closed(s) - entropy.joint_entropy(s.to_params())))
    assert worst < 1e-10


def test_closed_five_rejects_unphysical():
    with pytest.raises(DomainError):
        entropy.entropy_five_closed(FiveParamState(0, 0, 0, 0, 1.5))


def test_model_domain_errors():
    with pytest.raises(DomainError):
        entropy.entropy_model_a(0.9, 0.5)
    with pytest.raises(DomainError):
        entropy.entropy_model_b(1.2, 0.0)
    with pytest.raises(DomainError):
        entropy.entropy_model_c(0.8, 0.8)


def test_model_c_decreases_with_zeta():
    for xi in (0.0, 0.3, 0.6):
        zs = np.linspace(0, math.sqrt(1 - xi * xi), 50)
        vals = [entropy.entropy_model_c(xi, z) for z in zs]
        assert np.all(np.diff(vals) < 1e-15)


# --- report & classification -----------------------------------------------------------------


def test_classify_bands():
    assert entropy.classify(0.1, -0.1) is Classification.EXOTIC
    assert entropy.classify(0.1, 0.0) is Classification.BOUNDARY
    assert entropy.classify(0.1, 5e-10) is Classification.BOUNDARY
    assert entropy.classify(-5e-10, 0.2) is Classification.BOUNDARY
    assert entropy.classify(0.1, 0.2) is Classification.NON_EXOTIC


def test_report_maximally_mixed():
    r = entropy.entropy_report(TwoPhotonParams.zeros())
    assert r.s_joint == pytest.approx(TWO_LN2, abs=1e-14)
    assert r.s1 == r.s2 == pytest.approx(LN2, abs=1e-15)
    assert r.mutual == pytest.approx(0.0, abs=1e-14)
    assert r.classification is Classification.NON_EXOTIC


def test_report_model_c_is_exotic():
    r = entropy.entropy_report(states.model_c(0.0, 0.8).to_params())
    assert r.s_joint == pytest.approx(S_MODEL_C_0_08, abs=1e-12)
    assert r.s_cond_2g1 == pytest.approx(S_MODEL_C_0_08 - LN2, abs=1e-12)
    assert r.classification is Classification.EXOTIC


def test_report_bell_state():
    r = entropy.entropy_report(states.model_a(1.0, 1.0).to_params())
    assert r.s_joint == pytest.approx(0.0, abs=1e-9)
    assert r.mutual == pytest.approx(2 * LN2, abs=1e-9)
    assert r.classification is Classification.EXOTIC


def test_report_product_state_is_additive():
    p = TwoPhotonParams.product([0.3, 0, 0.4], [0, 0.6, 0])
    r = entropy.entropy_report(p)
    assert r.s_joint == pytest.approx(r.s1 + r.s2, abs=1e-10)
    assert r.mutual == pytest.approx(0.0, abs=1e-10)


def test_report_model_b_on_crossing_line():
    """On xi3_1 = (1 - xi3_2)/2 the joint entropy equals S1."""
    for b in (0.0, 0.1, 0.2, 0.4, 1 / 3, 0.6):
        a = (1 - b) / 2
        r = entropy.entropy_report(states.model_b(a, b).to_params())
        assert r.s_joint == pytest.approx(r.s1, abs=1e-10)
        assert abs(r.s_cond_2g1) < 1e-9


def test_report_model_b_symmetric_boundary():
    r = entropy.entropy_report(states.model_b(1 / 3, 1 / 3).to_params())
    assert r.s_joint == pytest.approx(H_THIRD, abs=1e-10)
    assert r.classification is Classification.BOUNDARY


def test_report_rejects_unphysical():
    with pytest.raises(DomainError):
        entropy.entropy_report(FiveParamState(0, 0, 0, 0, 1.5).to_params())


def test_araki_lieb_and_subadditivity(rng):
    for _ in range(500):
        r = entropy.entropy_report(params_from_rho(random_density(rng, rank=int(rng.integers(1, 5)))))
        assert r.araki_lieb_ok(1e-9)
        assert r.mutual >= -1e-9


def test_pure_states_have_equal_marginals(rng):
    for _ in range(100):
        r = entropy.entropy_report(params_from_rho(random_density(rng, rank=1)))
        assert r.s_joint == pytest.approx(0.0, abs=1e-8)
        assert r.s1 == pytest.approx(r.s2, abs=1e-8)
