from fractions import Fraction

import numpy as np
import pytest

from qsymmod.arith import Matrix
from qsymmod.catalog import (CATALOG, SegmentsParams, derive_w_chain, load_catalog, parse_matrix_param,
                             r_of, segments_filtration, w_chain_relations)
from qsymmod.filtration import validate
from qsymmod.numeric import ClassicalPoint, eval_at_point
from qsymmod.presentations import SWAP
from qsymmod.rewrite import INCONCLUSIVE, RewriteConfig, audit_rule, complete, replay


def test_exponent_pattern():
    assert [r_of(n) for n in range(-2, 3)] == [2, 1, 2, 1, 2]


def test_segment_dimensions():
    spec = segments_filtration(SegmentsParams(3, 2))
    assert spec.algebra.dim == 5 * 3
    assert spec.module_dim == 5 * 3
    assert [len(b) for b in spec.blocks] == [3] * 5


def test_bad_params():
    with pytest.raises(ValueError):
        SegmentsParams(0, 1)


@pytest.fixture(scope="module")
def chain():
    return derive_w_chain(2, RewriteConfig(6))


def test_w_chain_all_proven(chain):
    assert chain["all_proven"] and chain["complete"]
    kinds = {l["link"] for l in chain["links"]}
    assert kinds == {"symmetric", "step", "square", "power"}
    assert sum(l["link"] == "power" for l in chain["links"]) == 5 * 4


def test_w_chain_traces_replay(chain):
    for link in chain["links"]:
        assert replay(link["polynomial"], link["certificate"]).is_zero()


def test_w_chain_rules_audit(chain):
    sys = complete(chain["presentation"], RewriteConfig(6))
    assert all(audit_rule(sys, r) for r in sys.rules)


def test_w_chain_pairs_are_distinct():
    _, pairs = w_chain_relations(2)
    assert len(pairs) == len(set(pairs))
    assert ((1, 1), (0, 0)) in pairs


def _without_idempotents(pres):
    rels = [r for r in pres.relations
            if not (len(r.terms) == 2 and {len(w) for w in r.terms} == {1, 2}
                    and all(g.block == 0 for w in r.terms for g in w))]
    return pres.__class__(pres.name, pres.families, tuple(rels), pres.comul, pres.counit, pres.antipode)


def test_chain_needs_idempotent_relation():
    pres, _ = w_chain_relations(2)
    weak = _without_idempotents(pres)
    assert len(weak.relations) == len(pres.relations) - 4
    from qsymmod.ncalg import gen_poly
    from qsymmod.rewrite import reduce
    sys = complete(weak, RewriteConfig(6))
    w2_minus_v = gen_poly("v", 1, 1, 1) ** 2 - gen_poly("v", 1, 1, 0)
    assert reduce(sys, w2_minus_v, allow_overflow=True)[1].status == INCONCLUSIVE
    # counterexample: every v(n) equal to the constant diag(1,-1)
    m = np.diag([1, -1]).astype(complex)
    pt = ClassicalPoint.make({("v", n): m for n in range(-2, 3)})
    assert max(abs(eval_at_point(r, pt)) for r in weak.relations) < 1e-12
    assert abs(eval_at_point(w2_minus_v, pt)) < 1e-12          # (1,1) entry happens to agree
    w22 = gen_poly("v", 2, 2, 1) ** 2 - gen_poly("v", 2, 2, 0)
    assert abs(eval_at_point(w22, pt)) == 2                    # but w² ≠ v at (2,2)
    assert max(abs(eval_at_point(r, pt)) for r in pres.relations) > 0


@pytest.mark.parametrize("uri,nE", [
    ("catalog:segments?d=2&N=1", 6),
    ("catalog:segments?d=2&N=2#quotient", 10),
    ("catalog:free-orthogonal?P=swap", 2),
    ("catalog:free-orthogonal?P=1,0;0,1", 2),
    ("catalog:two-point", 2),
])
def test_load_catalog(uri, nE):
    spec, cert = load_catalog(uri)
    assert spec.module_dim == nE and validate(spec).ok and cert is not None


def test_load_catalog_degree_override():
    _, cert = load_catalog("catalog:segments?d=2&N=1", degree=5)
    assert cert.cfg.max_degree == 5


@pytest.mark.parametrize("uri", ["segments", "catalog:nope", "catalog:segments#bogus"])
def test_load_catalog_errors(uri):
    with pytest.raises(ValueError):
        load_catalog(uri)


def test_parse_matrix_param():
    assert parse_matrix_param("swap") == SWAP
    assert parse_matrix_param("I3") == Matrix.identity(3)
    assert parse_matrix_param("2,0;0,1/2") == Matrix.diag([2, Fraction(1, 2)])


def test_catalog_registry():
    assert sorted(CATALOG) == ["free-orthogonal", "segments", "two-point"]
