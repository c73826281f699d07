from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qsymmod.ncalg import gen_poly, tensor
from qsymmod.numeric import (ClassicalPoint, NumericError, TrigTerm, apply_d0, cholesky_oracle,
                             eval_at_point, falsify, falsify_in, gauss_legendre, permutations,
                             presentation_points, reconstruct_s, signed_permutations,
                             verify_segments_eigenbasis)
from qsymmod.presentations import hyperoctahedral, permutation_times_z2, quantum_permutation, z2


def test_point_counts():
    assert len(list(signed_permutations(2))) == 8
    assert len(list(signed_permutations(3))) == 48
    assert len(list(permutations(3))) == 6


def test_classical_points_of_standard_presentations():
    assert len(presentation_points(hyperoctahedral(2))) == 8
    assert len(presentation_points(quantum_permutation(2))) == 2
    assert len(presentation_points(z2())) == 2
    assert len(presentation_points(permutation_times_z2(2))) == 4


def test_eval_word_order_matters():
    a = np.array([[0, 1], [1, 0]], dtype=complex)
    pt = ClassicalPoint.make({("u", None): a})
    u11, u12 = gen_poly("u", 1, 1), gen_poly("u", 1, 2)
    assert eval_at_point(u12 * u12, pt) == 1
    assert eval_at_point(u11 + 3, pt) == 3


def test_tensor_evaluation_uses_slots():
    pts = presentation_points(hyperoctahedral(2))
    x = gen_poly("u", 1, 1)
    val = eval_at_point(tensor(x, x), pts[0], {1: pts[0], 2: pts[-1]})
    assert val == pts[0].matrix("u")[0, 0] * pts[-1].matrix("u")[0, 0]


def test_falsify_finds_commutation_failure_only_when_it_exists():
    p = hyperoctahedral(2)
    u = lambda i, j: gen_poly("u", i, j)
    # classical points commute, so a commutator is never refuted
    assert falsify_in(p, u(1, 1) * u(2, 2) - u(2, 2) * u(1, 1)) is None
    # but the row sum is not constant on signed permutations
    w = falsify_in(p, u(1, 1) + u(1, 2) - u(2, 1) - u(2, 2))
    assert w is not None and abs(w.value) > 1


def test_falsify_reports_relation_index():
    pt = ClassicalPoint.make({("z", None): np.array([[-1]], dtype=complex)})
    z = gen_poly("z", 1, 1)
    w = falsify([z * z - 1, z - 1], [pt], 1e-9)
    assert w.relation_index == 1


herm = st.lists(st.floats(-2, 2), min_size=6, max_size=6)


@given(herm)
def test_cholesky_oracle_reconstructs(xs):
    b = np.array([[xs[0] + 1j * xs[1], xs[2]], [xs[3], xs[4] + 1j * xs[5]]])
    s = b @ b.conj().T + np.eye(2)
    p = cholesky_oracle(s)
    assert np.max(np.abs(reconstruct_s(p) - s)) < 1e-8


def test_cholesky_oracle_rejects_non_hermitian():
    with pytest.raises(NumericError):
        cholesky_oracle(np.array([[1, 2], [0, 1]]))


def test_trig_derivative_rules():
    s = TrigTerm("sin", 3, Fraction(1))
    assert s.derivative() == TrigTerm("cos", 3, Fraction(3), 1)
    assert s.derivative().derivative() == TrigTerm("sin", 3, Fraction(-9), 2)
    f, g = apply_d0([s], [TrigTerm("cos", 3, Fraction(1))])
    assert f == [TrigTerm("sin", 3, Fraction(3), 1)] and g == [TrigTerm("cos", 3, Fraction(3), 1)]


def test_gauss_legendre_integrates_polynomials_exactly():
    assert abs(gauss_legendre(lambda x: x ** 5, 4) - 1 / 6) < 1e-14


@pytest.mark.parametrize("N", [1, 2, 4])
def test_segments_eigenbasis(N):
    r = verify_segments_eigenbasis(N)
    assert r["ok"]
    assert [e["eigenvalue"] for e in r["eigen"]][N + 1] == "1*pi"
