from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import gaussians
from twistedhv.algebra import CL, I, L, LieElement
from twistedhv.modules import (
    HVSeries, ModuleVector, ProperSubmodule, Simple, UnsupportedGenerator, VirAab, VirAalpha,
    VirBbeta, act, action_coefficient, action_is_representation, detect_simplicity,
    iso_predicate_Aab, simplicity_predicate_Aab,
)
from twistedhv.scalar import GaussianRational as G

F = Fraction


def v(k):
    return ModuleVector.basis(k)


def test_action_examples():
    assert act(HVSeries(F(1, 3), F(1, 2), 0), L(1), v(0)) == ModuleVector({1: F(5, 6)})
    assert act(HVSeries(0, G(F(1, 2), 1), G(-2, 1)), I(-2), v(5)) == ModuleVector({3: G(-2, 1)})
    assert act(VirAalpha(2), L(3), v(0)) == ModuleVector({3: 15})
    assert act(VirBbeta(2), L(3), v(-3)) == ModuleVector({0: -15})


def test_action_coefficient_examples():
    c = G(3, -1)
    assert action_coefficient(HVSeries(0, F(1, 2), c), 7, "I", -3) == c
    assert action_coefficient(HVSeries(F(1, 3), F(1, 2), 0), 2, "L", 1) == F(7, 3)
    assert action_coefficient(VirAab(0, 1), -4, "L", 4) == 0


def test_unsupported_generators():
    with pytest.raises(UnsupportedGenerator):
        act(VirAab(0, 1), I(2), v(0))
    with pytest.raises(UnsupportedGenerator):
        action_coefficient(VirBbeta(1), 1, "I", 0)
    assert not act(VirAab(0, 1), CL, v(3))


def test_i0_acts_as_c():
    c = G(F(2, 3), -1)
    assert act(HVSeries(F(1, 3), F(1, 2), c), I(0), v(4)) == ModuleVector({4: c})


def test_linearity():
    spec = HVSeries(F(1, 3), G(F(1, 2), 2), G(-2, 1))
    x = LieElement({L(2): 3, I(-1): G(0, 1)})
    w = ModuleVector({0: 1, 5: F(1, 2)})
    expected = (
        act(spec, L(2), v(0)).scale(3) + act(spec, L(2), v(5)).scale(F(3, 2))
        + act(spec, I(-1), v(0)).scale(G(0, 1)) + act(spec, I(-1), v(5)).scale(G(0, F(1, 2)))
    )
    assert act(spec, x, w) == expected


HV_TUPLES = [
    (F(1, 3), F(1, 2), G(-2, 1)), (0, 0, 0), (0, 1, 1), (F(-2, 5), G(F(1, 2), 3), G(0, 1)),
    (G(1, 1), G(2, -1), 5), (F(7, 2), F(1, 4), F(-1, 3)), (2, F(1, 2), 0), (F(1, 2), 1, G(1, 1)),
    (G(0, F(1, 3)), 0, 2), (F(-5, 3), F(3, 2), G(F(1, 2), F(-1, 2))),
]


@pytest.mark.parametrize("abc", HV_TUPLES, ids=str)
def test_hv_representation(abc):
    assert action_is_representation(HVSeries(*abc), 4).passed


@pytest.mark.parametrize("ab", [t[:2] for t in HV_TUPLES], ids=str)
def test_vir_families_representation(ab):
    for spec in (VirAab(*ab), VirAalpha(ab[0]), VirBbeta(ab[0])):
        assert action_is_representation(spec, 4).passed, spec


def test_synthetic_negative():
    rep = action_is_representation(HVSeries(0, 0, 0, centrals={"CL": 1}), 5)
    assert not rep.passed
    assert rep.witness["pair"] == ["L[2]", "L[-2]"]
    assert rep.witness["vector"] == "v[0]"
    assert rep.witness["bracket_action"] != rep.witness["commutator_action"]


def test_synthetic_negative_named_pair():
    spec = HVSeries(0, 0, 0, centrals={"CL": 1})
    lhs = act(spec, LieElement({L(0): -4, CL: F(1, 2)}), v(0))
    rhs = act(spec, L(2), act(spec, L(-2), v(0))) - act(spec, L(-2), act(spec, L(2), v(0)))
    assert lhs != rhs


@given(gaussians, gaussians, gaussians, st.integers(-20, 20), st.integers(-6, 6), st.integers(-6, 6))
def test_hv_i_modes_commute(a, b, c, k, m, n):
    spec = HVSeries(a, b, c)
    assert act(spec, I(m), act(spec, I(n), v(k))) == act(spec, I(n), act(spec, I(m), v(k)))


@given(gaussians, gaussians, st.integers(-30, 30))
def test_weights(a, b, k):
    assert act(VirAab(a, b), L(0), v(k)) == ModuleVector({k: a + k})


def test_simplicity_examples():
    assert isinstance(detect_simplicity(VirAab(F(1, 3), 0), 6), Simple)
    up = detect_simplicity(VirAab(0, 1), 6)
    assert isinstance(up, ProperSubmodule) and up.cofinite and up.excluded == {0}
    down = detect_simplicity(VirAab(0, 0), 6)
    assert isinstance(down, ProperSubmodule) and not down.cofinite and down.basis_subset == {0}
    assert isinstance(detect_simplicity(VirAab(3, 1), 6), ProperSubmodule)
    assert detect_simplicity(VirAab(3, 1), 6).excluded == {-3}


def test_simplicity_outside_window():
    # the invariant vector sits outside the window; degenerate loci are solved exactly
    got = detect_simplicity(VirAab(-40, 0), 5)
    assert isinstance(got, ProperSubmodule)
    assert got.basis_subset == {40} and not got.cofinite


def test_simplicity_other_families():
    a = detect_simplicity(VirAalpha(2), 5)
    assert isinstance(a, ProperSubmodule) and a.cofinite and a.excluded == {0}
    b = detect_simplicity(VirBbeta(2), 5)
    assert isinstance(b, ProperSubmodule) and b.basis_subset == {0}
    assert isinstance(detect_simplicity(HVSeries(0, 0, 1), 5), Simple)
    assert isinstance(detect_simplicity(HVSeries(0, 0, 0), 5), ProperSubmodule)


def _closed(spec, sub: ProperSubmodule, r):
    lo, hi = sub.window
    for k in range(lo, hi + 1):
        if not sub.contains(k):
            continue
        for m in range(-r, r + 1):
            for j, _ in act(spec, L(m), v(k)).items():
                if lo <= j <= hi and not sub.contains(j):
                    return False
    return True


GRID = [F(-1), F(0), F(2), F(1, 3), F(-5, 2), F(7, 4)]
B_GRID = [F(0), F(1), F(1, 2), F(2), F(-1, 3), F(3, 4)]


@pytest.mark.parametrize("a", GRID, ids=str)
@pytest.mark.parametrize("b", B_GRID, ids=str)
def test_simplicity_matches_predicate(a, b):
    got = detect_simplicity(VirAab(a, b), 6)
    assert isinstance(got, Simple) == simplicity_predicate_Aab(a, b)
    if isinstance(got, ProperSubmodule):
        assert _closed(VirAab(a, b), got, 6)


def test_iso_examples():
    assert iso_predicate_Aab(F(1, 3), 0, F(7, 3), 0)
    assert iso_predicate_Aab(F(1, 3), 0, F(1, 3), 1)
    assert not iso_predicate_Aab(0, 0, 0, 1)
    assert not iso_predicate_Aab(F(1, 3), 0, F(1, 2), 0)
    assert not iso_predicate_Aab(F(1, 3), F(1, 2), F(1, 3), 0)
