import pytest

from qsymmod.arith import Matrix
from qsymmod.catalog import (SegmentsParams, au_assignment, au_source, b_context, column_sum_difference,
                             free_orthogonal_spec, omega, permutation_into_hyper, segments_certificate,
                             segments_filtration, segments_subalgebra, two_point_spec)
from qsymmod.coaction import (MorphismError, ShapeError, check_group_like, check_morphism,
                              check_subalgebra_preserved, fullness_coefficients, trivial_certificate,
                              universal_presentation, unitarity_targets, verify_all)
from qsymmod.ncalg import Generator, NcPoly, gen_poly, substitute
from qsymmod.numeric import ClassicalPoint, eval_at_point
from qsymmod.presentations import SWAP, hyperoctahedral, z2
from qsymmod.rewrite import INCONCLUSIVE, PROVEN, REFUTED, RewriteConfig

SMALL = SegmentsParams(2, 1)


@pytest.fixture(scope="module")
def small_seg():
    return segments_filtration(SMALL)


def test_small_segments_hyper_all_proven(small_seg):
    rep = verify_all(small_seg, segments_certificate(SMALL, "hyper"))
    assert rep.all_proven, rep.summary()
    assert rep.axioms["a_multiplicative"].skipped_undefined == 12
    assert rep.axioms["e_module_map"].skipped_undefined == 20


def test_small_segments_quotient_all_proven(small_seg):
    assert verify_all(small_seg, segments_certificate(SMALL, "quotient")).all_proven


def test_trivial_coaction_is_proven():
    spec = two_point_spec()[0]
    assert verify_all(spec, trivial_certificate(spec)).all_proven


def _as_hyper(cert):
    """Move a permutation certificate onto A_h(2) generators: v_ij -> u_ij (exponent 1 everywhere)."""
    f = lambda g: gen_poly("u", g.row, g.col, starred=g.starred)
    cert.target = hyperoctahedral(2)
    cert.alpha = [[substitute(x, f) for x in row] for row in cert.alpha]
    cert.beta = [[[substitute(x, f) for x in row] for row in m] for m in cert.beta]
    return cert


def test_wrong_exponents_are_refuted(small_seg):
    rep = verify_all(small_seg, _as_hyper(segments_certificate(SMALL, "permutation")))
    assert rep.status == REFUTED
    a = rep.axioms["a_multiplicative"]
    assert a.status == REFUTED
    point = a.witnesses[0]["point"]["point"]["u"]
    assert "-1" in str(point)
    # structural axioms that do not see the exponents stay proven
    assert rep.axioms["f_coassociative_alpha"].status == PROVEN


def test_deleted_relation_gives_inconclusive(small_seg):
    cert = segments_certificate(SMALL, "hyper")
    cert.target = cert.target.without_relation(0)   # u11* = u11
    rep = verify_all(small_seg, cert)
    assert rep.status == INCONCLUSIVE
    assert any(a.status == INCONCLUSIVE for a in rep.axioms.values())


def test_shape_errors(small_seg):
    cert = segments_certificate(SMALL, "hyper")
    cert.beta = cert.beta[:-1]
    with pytest.raises(ShapeError):
        verify_all(small_seg, cert)
    cert = segments_certificate(SMALL, "hyper")
    cert.beta[0] = [row[:1] for row in cert.beta[0]]
    with pytest.raises(ShapeError):
        verify_all(small_seg, cert)
    cert = segments_certificate(SMALL, "hyper")
    cert.beta[0][0][0] = gen_poly("w", 1, 1)
    with pytest.raises(ShapeError):
        verify_all(small_seg, cert)


def test_unitarity_targets_count():
    spec, _, cert = free_orthogonal_spec(SWAP)
    assert len(unitarity_targets(spec, cert)) == 4 * 4


def test_au_morphisms_into_targets():
    spec, target, cert = free_orthogonal_spec(SWAP)
    src = au_source(spec, 0)
    assert all(c.proven for _, c in check_morphism(src, target, au_assignment(cert, 0), cert.cfg))


def test_permutation_into_hyper_is_a_morphism():
    src, tgt, assign = permutation_into_hyper(2)
    certs = check_morphism(src, tgt, assign, RewriteConfig(6))
    assert len([l for l, _ in certs if l.startswith("relation")]) == 12
    assert all(c.proven for _, c in certs)


def test_identity_on_letters_is_not_a_morphism_from_permutation_to_hyper():
    src, tgt, _ = permutation_into_hyper(2)
    assign = {Generator("v", i, j): gen_poly("u", i, j) for i in (1, 2) for j in (1, 2)}
    certs = check_morphism(src, tgt, assign, RewriteConfig(6))
    assert not all(c.proven for _, c in certs)


def test_counit_violation_raises():
    src, tgt, assign = permutation_into_hyper(2)
    assign = dict(assign)
    assign[Generator("v", 1, 1)] = NcPoly.zero()
    with pytest.raises(MorphismError):
        check_morphism(src, tgt, assign, RewriteConfig(4))


@pytest.mark.parametrize("which,kind,status", [
    ("B", "quotient", PROVEN), ("B", "hyper", REFUTED),
    ("C", "hyper", PROVEN), ("D", "permutation", PROVEN), ("D", "hyper", REFUTED),
])
def test_subalgebra_preservation(small_seg, which, kind, status):
    rep = check_subalgebra_preserved(small_seg, segments_certificate(SMALL, kind),
                                     segments_subalgebra(SMALL, which), which)
    assert rep.status == status


def test_subalgebra_dimensions():
    # B: 2 endpoint constraints; C: 3; D: 1
    nA = 3 * 2
    assert len(segments_subalgebra(SMALL, "B")) == nA - 2
    assert len(segments_subalgebra(SMALL, "C")) == nA - 3
    assert len(segments_subalgebra(SMALL, "D")) == nA - 1


def test_non_subalgebra_rejected(small_seg):
    with pytest.raises(ShapeError):
        check_subalgebra_preserved(small_seg, segments_certificate(SMALL, "hyper"),
                                   [small_seg.algebra.basis(1)])


def test_group_like():
    cfg = RewriteConfig(6)
    assert check_group_like(b_context(2), omega(2), cfg).all_proven
    assert check_group_like(z2(), gen_poly("z", 1, 1), RewriteConfig(4)).all_proven
    rep = check_group_like(hyperoctahedral(2), omega(2), cfg)
    # ω² = 1 and ω* = ω hold in A_h(2) already; Δ(ω) = ω⊗ω needs the row-sum relations
    assert rep.axioms["group_like_square"].status == PROVEN
    assert rep.axioms["group_like_comul"].status == REFUTED


def test_column_sums_agree_in_b_context():
    from qsymmod.rewrite import complete, reduce
    for D in (4, 6):
        assert reduce(complete(b_context(2), RewriteConfig(D)), column_sum_difference(2))[1].proven


def test_fullness_coefficients_reproduce_basis():
    spec = two_point_spec()[0]
    for r, coeffs in enumerate(fullness_coefficients(spec)):
        acc = [sum((c * spec.inner_tensor[m][n][t] for (m, n), c in coeffs.items()),
                   spec.algebra.basis(0)[1]) for t in range(spec.algebra.dim)]
        assert acc == spec.algebra.basis(r)


def test_universal_presentation_free_orthogonal():
    spec = free_orthogonal_spec(Matrix.identity(2))[0]
    pres, cert = universal_presentation(spec)
    rels = {str(r) for r in pres.relations}
    for i in (1, 2):
        for j in (1, 2):
            assert f"v*[0;{i},{j}] - v[0;{i},{j}]" in rels
    assert len(pres.relations) == len(set(pres.relations))
    # the catalog certificate factors through it: A_o(I) satisfies every relation
    assert verify_all(spec, cert).all_proven


def test_universal_presentation_segments_shape():
    pres, _ = universal_presentation(segments_filtration(SegmentsParams(2, 1)))
    assert [(f.name, f.block, f.rows, f.cols) for f in pres.families] == [
        ("v", -1, 2, 2), ("v", 0, 2, 2), ("v", 1, 2, 2)]


def test_universal_relations_hold_at_classical_hyper_points():
    """Substituting v(n) -> u^r(n) at signed permutations satisfies every universal relation."""
    from qsymmod.numeric import signed_permutations
    from qsymmod.catalog import r_of
    pres, _ = universal_presentation(segments_filtration(SegmentsParams(2, 1)))
    for m in signed_permutations(2):
        vals = {}
        for n in (-1, 0, 1):
            vals[("v", n)] = m ** r_of(n)  # entrywise power
        pt = ClassicalPoint.make(vals)
        assert max(abs(eval_at_point(r, pt)) for r in pres.relations) < 1e-9
