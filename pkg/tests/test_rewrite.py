import functools
import operator
import random

import pytest
from hypothesis import given, settings, strategies as st

from qsymmod.arith import Scalar
from qsymmod.ncalg import NcPoly, circle_presentation, gen_poly
from qsymmod.presentations import hyperoctahedral, quantum_permutation
from qsymmod.rewrite import (INCONCLUSIVE, PROVEN, DegreeOverflow, RewriteConfig, audit_rule, complete,
                             implies, reduce, replay, tensor_system)

u = lambda i, j: gen_poly("u", i, j)
v = lambda i, j: gen_poly("v", i, j)


@pytest.fixture(scope="module")
def hyper6():
    return complete(hyperoctahedral(2), RewriteConfig(6))


@pytest.fixture(scope="module")
def perm4():
    return complete(quantum_permutation(2), RewriteConfig(4))


def test_circle_completes_in_one_pass():
    sys = complete(circle_presentation(), RewriteConfig(4))
    assert sys.complete and sys.passes == 1
    x = u(1, 1)
    assert reduce(sys, x * x.star() * x - x)[1].proven


def test_cubic_relation_in_hyperoctahedral(hyper6):
    # u11 is a self-adjoint partial isometry-like element: u11^3 = u11
    assert reduce(hyper6, u(1, 1) ** 3 - u(1, 1))[1].proven
    leads = {str(hyper6.rule_poly(r)) for r in hyper6.active_rules()}
    assert "u[1,1] u[1,1] u[1,1] - u[1,1]" in leads


def test_quantum_permutation_two_is_commutative(perm4):
    assert reduce(perm4, v(1, 1) * v(1, 2) - v(1, 2) * v(1, 1))[1].proven
    assert reduce(perm4, v(1, 2) - 1 + v(1, 1))[1].proven


def test_noncommutativity_stays_inconclusive(hyper6):
    nf, cert = reduce(hyper6, u(1, 1) * u(2, 2) - u(2, 2) * u(1, 1))
    assert cert.status == INCONCLUSIVE and nf
    assert "nonzero normal form" in cert.note


def test_replay_and_digest(hyper6):
    p = (u(1, 1) * u(1, 1) + u(1, 2) * u(1, 2) - 1) * u(2, 1) * u(2, 1)
    nf, cert = reduce(hyper6, p)
    assert cert.proven and not nf
    assert replay(p, cert) == NcPoly.zero()
    _, again = reduce(hyper6, p)
    assert again.digest() == cert.digest()


def test_every_rule_audits(hyper6, perm4):
    for sys in (hyper6, perm4):
        assert all(audit_rule(sys, r) for r in sys.rules)


def test_degree_overflow(perm4):
    with pytest.raises(DegreeOverflow):
        reduce(perm4, v(1, 1) ** 5)
    _, cert = reduce(perm4, v(1, 1) ** 5 - v(1, 1), allow_overflow=True)
    assert cert.status in (PROVEN, INCONCLUSIVE)


def test_memoized_completion():
    cfg = RewriteConfig(4)
    assert complete(quantum_permutation(2), cfg) is complete(quantum_permutation(2), cfg)


def test_implies():
    x = u(1, 1)
    assert implies([x * x - x], x ** 3 - x, RewriteConfig(4)).proven
    assert not implies([x * x - x], x - 1, RewriteConfig(4)).proven


def test_tensor_system_commutes_slots(hyper6):
    ts = tensor_system(hyper6)
    a, b = u(1, 1).at_slot(1), u(2, 1).at_slot(2)
    assert reduce(ts, b * a - a * b)[1].proven
    assert reduce(ts, (u(1, 1) ** 3 - u(1, 1)).at_slot(2) * a)[1].proven


def test_config_validation():
    with pytest.raises(ValueError):
        RewriteConfig(4, monomial_order="lex")
    cfg = RewriteConfig(5, 10, 99)
    assert RewriteConfig.from_json(cfg.to_json()) == cfg


# --- confluence: random reduction orders reach the engine's normal form ---------

def _random_normal_form(sys, p, rng):
    rules = [sys.rule_poly(r) for r in sys.active_rules()]
    leads = [r.leading_word() for r in rules]
    while True:
        options = []
        for w in p.terms:
            for r, lw in zip(rules, leads):
                for pos in range(len(w) - len(lw) + 1):
                    if w[pos:pos + len(lw)] == lw:
                        options.append((w, pos, r, lw))
        if not options:
            return p
        w, pos, r, lw = rng.choice(options)
        c = p.terms[w] / r.terms[lw]
        p = p - NcPoly.word(w[:pos], c) * r * NcPoly.word(w[pos + len(lw):])


letters = st.sampled_from([u(i, j) for i in (1, 2) for j in (1, 2)])
words = st.lists(letters, min_size=0, max_size=4).map(
    lambda ws: functools.reduce(operator.mul, ws, NcPoly.one()))
coeffs = st.integers(-3, 3).map(Scalar)
polys = st.lists(st.tuples(words, coeffs), max_size=3).map(
    lambda ts: sum((w * c for w, c in ts), NcPoly.zero()))


@settings(max_examples=40)
@given(polys, st.integers(0, 10 ** 6))
def test_random_reduction_order_confluence(hyper6, p, seed):
    nf, _ = reduce(hyper6, p)
    assert _random_normal_form(hyper6, p, random.Random(seed)) == nf


@settings(max_examples=40)
@given(polys, polys)
def test_normal_form_is_linear(hyper6, p, q):
    assert reduce(hyper6, p + q)[0] == reduce(hyper6, p)[0] + reduce(hyper6, q)[0]


@settings(max_examples=40)
@given(words, st.integers(0, 15), words)
def test_ideal_elements_reduce_to_zero(hyper6, left, k, right):
    rel = hyperoctahedral(2).relations[k]
    p = left * rel * right
    if p.degree() > 6:
        return
    nf, cert = reduce(hyper6, p)
    assert cert.proven and replay(p, cert) == NcPoly.zero()
