import cmath
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qsymmod.arith import Matrix, Scalar
from qsymmod.ncalg import (Generator, NcPoly, ParseError, PresentationError, build_au,
                           check_coassociativity, circle_presentation, counit_kills_relations,
                           format_poly, free_product, gen_poly, parse_generator, parse_poly,
                           substitute, tensor)
from qsymmod.numeric import ClassicalPoint, eval_at_point
from qsymmod.presentations import (SWAP, free_orthogonal, hyperoctahedral, permutation_times_z2,
                                   quantum_permutation, z2)

# frozen snapshot of A_u(diag(4,1))
AU_DIAG_4_1 = [
    "u[1,2] u*[1,2] + u[1,1] u*[1,1] - 1",
    "u[1,2] u*[2,2] + u[1,1] u*[2,1]",
    "u[2,2] u*[1,2] + u[2,1] u*[1,1]",
    "u[2,2] u*[2,2] + u[2,1] u*[2,1] - 1",
    "u*[2,1] u[2,1] + u*[1,1] u[1,1] - 1",
    "u*[2,1] u[2,2] + u*[1,1] u[1,2]",
    "u*[2,2] u[2,1] + u*[1,2] u[1,1]",
    "u*[2,2] u[2,2] + u*[1,2] u[1,2] - 1",
    "1/4 u[2,1] u*[2,1] + u[1,1] u*[1,1] - 1",
    "u[2,1] u*[2,2] + 4 u[1,1] u*[1,2]",
    "1/4 u[2,2] u*[2,1] + u[1,2] u*[1,1]",
    "u[2,2] u*[2,2] + 4 u[1,2] u*[1,2] - 1",
    "4 u*[1,2] u[1,2] + u*[1,1] u[1,1] - 1",
    "4 u*[1,2] u[2,2] + u*[1,1] u[2,1]",
    "u*[2,2] u[1,2] + 1/4 u*[2,1] u[1,1]",
    "u*[2,2] u[2,2] + 1/4 u*[2,1] u[2,1] - 1",
]


def test_build_au_snapshot():
    p = build_au(Matrix.diag([4, 1]))
    assert [str(r) for r in p.relations] == AU_DIAG_4_1


@pytest.mark.parametrize("d", [1, 2, 3])
def test_build_au_relation_count(d):
    assert len(build_au(Matrix.identity(d)).relations) == 4 * d * d


def test_build_au_rejects_non_positive():
    with pytest.raises(PresentationError):
        build_au(Matrix.diag([1, -1]))


def _point(u):
    return ClassicalPoint.make({("u", None): np.asarray(u, dtype=complex)})


def test_au_relations_numeric_oracle():
    """Diagonal phases satisfy the twisted relations for diagonal s; a rotation does not."""
    p = build_au(Matrix.diag([4, 1]))
    good = _point(np.diag([cmath.exp(0.3j), cmath.exp(-1.1j)]))
    assert max(abs(eval_at_point(r, good)) for r in p.relations) < 1e-12
    c, s = np.cos(0.4), np.sin(0.4)
    rot = _point([[c, -s], [s, c]])
    vals = [abs(eval_at_point(r, rot)) for r in p.relations]
    assert max(vals[:8]) < 1e-12      # unitary
    assert max(vals[8:]) > 1e-3       # but not twisted-compatible


def test_relation_counts():
    assert len(quantum_permutation(2).relations) == 12
    assert len(hyperoctahedral(2).relations) == 16
    assert len(z2().relations) == 2
    two = free_product([circle_presentation("a"), circle_presentation("b")])
    assert len(two.relations) == 8


def test_free_product_rejects_collisions():
    with pytest.raises(PresentationError):
        free_product([circle_presentation("a"), circle_presentation("a")])


@pytest.mark.parametrize("p", [hyperoctahedral(2), quantum_permutation(2), z2(), free_orthogonal(SWAP),
                               build_au(Matrix.diag([4, 1])), permutation_times_z2(2)],
                         ids=lambda p: p.name)
def test_standard_presentations_are_coassociative_and_counital(p):
    assert all(check_coassociativity(p).values())
    assert counit_kills_relations(p) == []


# --- polynomial algebra -------------------------------------------------------

letters = st.builds(Generator, st.sampled_from(["u", "v"]), st.integers(1, 2), st.integers(1, 2),
                    st.sampled_from([None, -1, 0, 2]), st.booleans())
coeffs = st.builds(Scalar, st.fractions(-3, 3, max_denominator=3), st.fractions(-3, 3, max_denominator=3))
polys = st.builds(lambda ts: sum((NcPoly.word(w, c) for w, c in ts), NcPoly.zero()),
                  st.lists(st.tuples(st.lists(letters, max_size=3).map(tuple), coeffs), max_size=4))


@given(polys)
def test_print_parse_roundtrip(p):
    assert parse_poly(str(p)) == p
    assert parse_poly(format_poly(p)) == p


@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == NcPoly.zero()


@given(polys, polys)
def test_star_is_antimultiplicative_involution(a, b):
    assert a.star().star() == a
    assert (a * b).star() == b.star() * a.star()
    assert (a + b).star() == a.star() + b.star()


@given(letters)
def test_generator_text_roundtrip(g):
    assert parse_generator(str(g)) == g


def test_grammar_examples():
    p = parse_poly("2 u[1,1] u*[1,2] - (1/2+3i) z + 1")
    assert str(p) == "2 u[1,1] u*[1,2] + (-1/2-3i) z + 1"
    assert parse_poly("v[-1;2,1]") == gen_poly("v", 2, 1, -1)
    assert parse_poly("u[1,2]@1 u[1,1]@2") == tensor(gen_poly("u", 1, 2), gen_poly("u", 1, 1))
    assert parse_poly("0") == NcPoly.zero()
    assert parse_poly("(2i) z") == NcPoly.gen(Generator("z", 1, 1), Scalar(0, 2))


@pytest.mark.parametrize("text,coeff", [("(i) z", Scalar(0, 1)), ("(-i) z", Scalar(0, -1)),
                                        ("(1-i) z", Scalar(1, -1)), ("(-3/2i) z", Scalar(0, Fraction(-3, 2)))])
def test_pure_and_signed_imaginary_coefficients(text, coeff):
    p = parse_poly(text)
    assert p == NcPoly.gen(Generator("z", 1, 1), coeff)
    assert parse_poly(str(p)) == p


@pytest.mark.parametrize("text,col", [("u[1,1] + + 2", 10), ("u[1,1 ", 2), ("3 $", 3)])
def test_parse_error_reports_column(text, col):
    with pytest.raises(ParseError) as exc:
        parse_poly(text)
    assert f"column {col}" in str(exc.value)


def test_deglex_order_puts_starred_after_plain():
    u, us = Generator("u", 1, 1), Generator("u", 1, 1, starred=True)
    assert u < us
    assert (NcPoly.gen(us) - NcPoly.gen(u)).leading_word() == (us,)
    assert (NcPoly.word((u, u)) + NcPoly.gen(us)).leading_word() == (u, u)


def test_substitute_homomorphism():
    u11, u12 = gen_poly("u", 1, 1), gen_poly("u", 1, 2)
    sq = {Generator("u", 1, 1): u12 * u12, Generator("u", 1, 2): u11}
    assert substitute(u11 * u12, sq) == u12 * u12 * u11
    assert substitute(u11 * u12, sq, anti=True) == u11 * u12 * u12


def test_delta_on_products_is_multiplicative():
    p = hyperoctahedral(2)
    x, y = gen_poly("u", 1, 1), gen_poly("u", 2, 1)
    assert p.delta(x * y) == (p.delta(x) * p.delta(y)).slot_ordered()
    assert p.epsilon(x * y) == Scalar(0)
    assert p.epsilon(x * x) == Scalar(1)
