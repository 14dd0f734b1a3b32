from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import gaussians, rationals, unit_values
from twistedhv.algebra import CI, CL, CLI, I
from twistedhv.involutions import PlusType
from twistedhv.modules import HVSeries
from twistedhv.scalar import GaussianRational as G, UnitPhase
from twistedhv.unitarity import (
    CSV_HEADER, Inconsistent, Indefinite, PositiveDefinite, check_contravariance,
    decide_unitary, normalize_alpha, predicate_unitary, scan, solve_gram,
)

F = Fraction
U1 = UnitPhase(1)
U34 = UnitPhase(G(F(3, 5), F(4, 5)))
U724 = UnitPhase(G(F(-7, 25), F(24, 25)))


def test_gram_examples():
    g = solve_gram(HVSeries(F(1, 3), F(1, 2), 0), PlusType(1, U1), (-5, 5))
    assert g.status == PositiveDefinite()
    assert all(v == 1 for v in g.entries.values())
    bad = solve_gram(HVSeries(F(1, 3), 1, 0), PlusType(1, U1), (-5, 5))
    assert isinstance(bad.status, Indefinite) and bad.status.witness_k == 0
    assert bad.entries[0] == bad.entries[-1] * -2
    scaled = solve_gram(HVSeries(F(1, 3), F(1, 2), 0), PlusType(4, U1), (-5, 5))
    assert scaled.status == PositiveDefinite()
    assert all(scaled.entries[k] == F(4) ** k for k in range(-5, 6))


def test_gram_inconsistent():
    g = solve_gram(HVSeries(F(1, 3), F(1, 2), 1), PlusType(1, U34), (-4, 4))
    assert isinstance(g.status, Inconsistent)


def test_gram_window_precondition():
    with pytest.raises(ValueError):
        solve_gram(HVSeries(0, F(1, 2), 0), PlusType(1, U1), (0, 2))


def test_predicate_examples():
    assert predicate_unitary(F(1, 3), G(F(1, 2), 1), 0, U724)
    assert predicate_unitary(F(1, 3), F(1, 2), G(-2, 1), U34)
    assert not predicate_unitary(F(1, 3), F(1, 2), 1, U34)
    assert not predicate_unitary(G(F(1, 3), 1), F(1, 2), 0, U1)


def test_decide_examples():
    v = decide_unitary(HVSeries(F(1, 3), F(1, 2), 0), PlusType(1, U1), (-8, 8))
    assert v.predicate_result and v.gram_result and v.consistent
    v = decide_unitary(HVSeries(F(1, 3), 1, 0), PlusType(1, U1), (-8, 8))
    assert not v.predicate_result and not v.gram_result and v.consistent
    v = decide_unitary(HVSeries(F(1, 3), F(1, 2), 1), PlusType(1, U34), (-8, 8))
    assert not v.predicate_result and not v.gram_result and v.consistent


def test_decide_rejects_minus_type():
    from twistedhv.involutions import MinusType

    with pytest.raises(TypeError):
        decide_unitary(HVSeries(0, F(1, 2), 0), MinusType(1, 1), (-4, 4))


def test_contravariance_examples():
    spec, theta = HVSeries(F(1, 3), F(1, 2), 0), PlusType(1, U1)
    g = solve_gram(spec, theta, (-5, 5))
    assert check_contravariance(spec, theta, g, 3).passed
    g.entries[0] = G(2)
    rep = check_contravariance(spec, theta, g, 3)
    assert not rep.passed
    assert (rep.witness["generator"], rep.witness["j"], rep.witness["k"]) == ("L[1]", -1, 0)


def test_central_generators_trivially_contravariant():
    from twistedhv.involutions import apply
    from twistedhv.modules import ModuleVector, act

    spec, theta = HVSeries(F(1, 3), F(1, 2), 0), PlusType(1, U1)
    for z in (CL, CI, CLI):
        assert not act(spec, z, ModuleVector.basis(2))
        assert not act(spec, apply(theta, z), ModuleVector.basis(2))


def test_normalize_alpha_examples():
    spec = HVSeries(F(1, 3), F(1, 2), 0)
    g = solve_gram(spec, PlusType(4, U1), (-5, 5))
    g1 = normalize_alpha(g, 4)
    assert all(v == 1 for v in g1.entries.values())
    assert normalize_alpha(g1, 1).entries == g1.entries
    g.entries.update({k: 3 * G(2) ** k for k in g.entries})
    assert all(v == 3 for v in normalize_alpha(g, 2).entries.values())
    with pytest.raises(ValueError):
        normalize_alpha(g, 0)


alphas = st.sampled_from([F(1), F(2), F(4), F(1, 3), F(5, 2)])
phases = st.one_of(st.just(G(1)), unit_values)


def _c_for(u: G, t: F) -> G:
    # c = t (1 + conj(u)) solves c u = conj(c); for u = -1 use c = t i
    base = 1 + u.conjugate()
    return (base if base else G(0, 1)) * t


@settings(max_examples=30)
@given(rationals, rationals, st.fractions(min_value=-5, max_value=5, max_denominator=7), phases, alphas)
def test_unitary_points_have_alpha_power_gram(a, bim, t, u, alpha):
    b = G(F(1, 2), bim)
    c = _c_for(u, t)
    spec, theta = HVSeries(a, b, c), PlusType(alpha, UnitPhase(u))
    assert predicate_unitary(a, b, c, theta.phase)
    g = solve_gram(spec, theta, (-5, 5))
    assert g.status == PositiveDefinite()
    assert all(g.entries[k] == alpha**k for k in g.entries)
    g1 = normalize_alpha(g, alpha)
    assert check_contravariance(spec, PlusType(1, theta.phase), g1, 3).passed


def _off_degenerate(a, b, window=(-5, 5)):
    # skip the loci where some L-equation loses exactly one coefficient
    lo, hi = window
    for k in range(lo, hi + 1):
        for n in (1, 2):
            left, right = a + k + b * n, (a + k + n - b * n).conjugate()
            if bool(left) != bool(right):
                return False
    return True


def _window_around(a, half=5):
    # the sign change of the form sits near k = -Re a
    centre = -round(a.re)
    return (centre - half, centre + half)


@settings(max_examples=40)
@given(gaussians, gaussians, gaussians, phases, alphas)
def test_oracle_equivalence_random(a, b, c, u, alpha):
    window = _window_around(a)
    assume(_off_degenerate(a, b, window))
    v = decide_unitary(HVSeries(a, b, c), PlusType(alpha, UnitPhase(u)), window, 2)
    assert v.consistent, v.to_dict()


@pytest.mark.parametrize("b", [0, 1])
def test_window_must_reach_the_sign_change(b):
    spec, theta = HVSeries(6, b, 0), PlusType(1, U1)
    assert solve_gram(spec, theta, (-5, 5)).positive_definite
    assert not decide_unitary(spec, theta, (-10, 10)).gram_result


@settings(max_examples=30)
@given(rationals, gaussians, phases)
def test_i_contravariance_iff_c_condition(a, c, u):
    spec, theta = HVSeries(a, F(1, 2), c), PlusType(1, UnitPhase(u))
    g = solve_gram(HVSeries(a, F(1, 2), 0), theta, (-4, 4))
    assert g.positive_definite
    rep = check_contravariance(spec, theta, g, 2)
    assert rep.passed == (c * u == c.conjugate())


def test_scan_example():
    rep = scan([0, F(1, 3), F(1, 2)], [0, F(1, 2), 1, G(F(1, 2), 1)], [0, 1], [1], (-6, 6))
    assert rep.total == 24 and rep.passed
    for row in rep.rows:
        assert (row["predicate"] and row["gram"]) == (row["b_re"] == "1/2" and row["c_im"] == "0")
    lines = rep.to_csv().splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert len(lines) == 25


def test_scan_empty_and_single():
    assert scan([], [0], [0], [1], (-4, 4)).total == 0
    one = scan([0], [G(F(1, 2), 2)], [0], [1], (-4, 4))
    assert one.unitary == 1


def test_scan_deterministic_json():
    a = scan([0, F(1, 2)], [F(1, 2)], [0, G(-2, 1)], [1, U34.value], (-4, 4)).to_json()
    b = scan([0, F(1, 2)], [F(1, 2)], [0, G(-2, 1)], [1, U34.value], (-4, 4)).to_json()
    assert a == b and '"schema": 1' in a
