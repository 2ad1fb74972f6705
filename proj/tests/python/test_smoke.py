"""Smoke tests for the bevholt extension module."""

import math
from fractions import Fraction

import pytest

import bevholt
from bevholt import cplx, rational, real


def F(p, q=1):
    return Fraction(p, q)


def test_version():
    assert bevholt.__version__


def test_rational_iterate_is_exact():
    m = rational.model(1, F(1), F(1))
    traj = rational.iterate(m, [F(1)], 5)
    assert traj.values == [F(1), F(1, 2), F(1, 3), F(1, 4), F(1, 5)]
    assert traj.complete


def test_fraction_round_trip_and_step():
    m = rational.model(8, F(-1), F(12))
    z = rational.step(m, F(1), 0)
    assert z == F(1, 11)
    assert isinstance(z, Fraction)


def test_singularity_is_an_error_not_infinity():
    m = rational.model(1, F(1, 2), F(-1))
    with pytest.raises(bevholt.SingularityError):
        rational.step(m, F(1, 2), 0)
    traj = rational.iterate(m, [F(1, 2)], 10)
    assert not traj.complete
    assert traj.truncated_at == 1
    assert len(traj.values) == 1


def test_closed_forms_agree_with_iteration():
    m = rational.model(2, [F(1, 2), F(1, 3)], [F(1), F(-2, 3)])
    ic = [F(3, 4), F(-5, 2)]
    traj = rational.iterate(m, ic, 41)
    for j in range(2):
        for n in range(20):
            v = traj.values[2 * n + j]
            assert rational.closed_form_general(m, ic, n, j) == v
            assert rational.closed_form_k_periodic(m, ic, n, j) == v


def test_ecological_model():
    m = rational.ecological_model(1, F(2), F(1))
    assert m.ecological
    assert m.coefficient_a(0) == F(1, 2)
    assert m.coefficient_b(0) == F(1, 2)
    assert rational.closed_form_ecological(m, [F(2)], 1, 0) == F(4, 3)


def test_compare_methods_exact():
    m = rational.model(1, F(1, 2), F(1, 2))
    report = rational.compare_methods(m, [F(2)], 30)
    assert report.exact_backend
    assert report.all_exact()
    assert report.max_rel_error() == 0.0


def test_two_cycle_period():
    ic = [F(1), F(2), F(1), F(-1, 2), F(1), F(1, 2), F(-1, 4), F(1, 2)]
    m = rational.model(8, F(-1), F(12))
    report = rational.certified_period(m, ic, 96)
    assert report.minimal_period == 16
    assert report.certified_by == bevholt.PeriodCertificate.two_cycle


def test_periodic_seed_and_detection_in_float():
    k = 16
    a = [3 + math.sin(2 * math.pi * j / k) for j in range(k)]
    b = [2 + math.cos(2 * math.pi * j / k) for j in range(k)]
    m = real.model(k, a, b)
    ic = real.periodic_initial_conditions(m)
    assert ic[0] == pytest.approx(-2 / 3)
    traj = real.iterate(m, ic, 300)
    report = real.detect_period(traj, rel_tol=1e-9)
    assert report.minimal_period == k


def test_symmetry_residual_zero_for_zeta2():
    m = rational.model(2, [F(1, 2), F(1, 3)], [F(1), F(2)])
    fam = rational.InfinitesimalFamily.zeta2(m, [F(1), F(1)], 30)
    for n in range(10):
        assert rational.symmetry_residual(m, fam, n, F(3, 2)) == 0
    assert rational.characteristic_value(fam, 0, F(3)) == F(9)


def test_zeta3_complex_residual_small():
    m = cplx.model(4, [0.5, -0.25, 0.75, 0.5], [1.0, 0.5, -1.0, 2.0])
    fam = cplx.InfinitesimalFamily.zeta3(m, [0j, 0j, 0j, 0j], 1, 40)
    worst = max(
        abs(cplx.symmetry_residual(m, fam, n, complex(1.5, 0))) for n in range(30)
    )
    assert worst < 1e-10


def test_linearization():
    m = rational.model(1, F(1), F(1))
    rep = rational.linearized_trajectory(m, [F(1)], 6)
    assert rep.s == [F(n + 1) for n in range(6)]
    assert rep.recurrence_exact and rep.direct_exact


def test_classify():
    m = real.model(14, 14.0, -2.0)
    rep = real.classify(m, 0.0)
    assert rep.classification == bevholt.Stability.locally_asymptotically_stable
    assert len(rep.roots) == 14
    assert abs(abs(rep.roots[0]) - 14 ** (-1 / 14)) < 1e-12
    assert real.classify(m, 6.5).classification == bevholt.Stability.unstable
    nh = real.model(3, 1.0, 1.0)
    assert real.classify(nh, 0.0).classification == bevholt.Stability.non_hyperbolic


def test_sufficient_stability():
    assert bevholt.sufficient_stability([1 / 14] + [0.0] * 13)
    assert not bevholt.sufficient_stability([0.5, 0.6])


def test_build_lambda_roots_of_unity():
    lam = bevholt.build_lambda(4, 1, 8)
    assert lam[0] == 1 and abs(lam[1] - 1j) < 1e-15
    assert lam[4] == lam[0]


def test_config_error_for_formula_in_rational_backend():
    with pytest.raises(ValueError):
        rational.CoefficientSequence.formula("3 + sin(n*pi/8)")
