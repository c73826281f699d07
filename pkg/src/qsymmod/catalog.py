"""Built-in specs, presentations and certificates.

Segments [0,1] x {1..d}:  A-basis a(k,i) = cos(πk·)e_i for 0 <= k <= 2N,
module basis e(n,i) = (sin(πn·), cos(πn·))e_i for |n| <= N, one block per n.
Products overflowing the cap 2N (or |n| > N for the module) are undefined.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .arith import ONE, ZERO, Matrix, Scalar, mat_inverse
from .coaction import CoactionCertificate
from .filtration import AlgebraData, FiltrationSpec, compute_s
from .ncalg import Family, Generator, NcPoly, Presentation, build_au, gen_poly, unitarity_relations
from .presentations import (SWAP, free_orthogonal, hyperoctahedral, permutation_times_z2,
                            quantum_permutation)
from .rewrite import RewriteConfig, complete, reduce

HALF = Scalar(Fraction(1, 2))


def r_of(n: int) -> int:
    """Exponent pattern: 2 for even n, 1 for odd n."""
    return 2 if n % 2 == 0 else 1


@dataclass(frozen=True)
class SegmentsParams:
    d: int = 2
    N: int = 2

    def __post_init__(self):
        if self.d < 1 or self.N < 1:
            raise ValueError("segments need d >= 1 and N >= 1")


# ---------------------------------------------------------------------------
# segments


def _seg_algebra(d: int, N: int) -> AlgebraData:
    K = 2 * N
    idx = [(k, i) for k in range(K + 1) for i in range(d)]
    pos = {x: p for p, x in enumerate(idx)}
    n = len(idx)
    sc = []
    for (k, i) in idx:
        row = []
        for (l, j) in idx:
            if i != j:
                row.append(tuple([ZERO] * n))
                continue
            if k + l > K:
                row.append(None)
                continue
            v = [ZERO] * n
            v[pos[(abs(k - l), i)]] = v[pos[(abs(k - l), i)]] + HALF
            v[pos[(k + l, i)]] = v[pos[(k + l, i)]] + HALF
            row.append(tuple(v))
        sc.append(tuple(row))
    unit = tuple(ONE if k == 0 else ZERO for (k, i) in idx)
    trace = tuple(ONE if k == 0 else ZERO for (k, i) in idx)
    labels = tuple(f"{k},{i + 1}" for (k, i) in idx)
    return AlgebraData(n, tuple(sc), Matrix.identity(n), unit, trace, labels)


def _seg_alg_index(d: int, k: int, i: int) -> int:
    return k * d + i


def _seg_mod_index(d: int, N: int, n: int, i: int) -> int:
    return (n + N) * d + i


def segments_filtration(params: SegmentsParams) -> FiltrationSpec:
    d, N = params.d, params.N
    A = _seg_algebra(d, N)
    nA = A.dim
    nE = (2 * N + 1) * d
    mods = [(n, i) for n in range(-N, N + 1) for i in range(d)]
    inner = []
    for (n, i) in mods:
        row = []
        for (m, j) in mods:
            v = [ZERO] * nA
            if i == j:
                v[_seg_alg_index(d, abs(n - m), i)] = ONE
            row.append(tuple(v))
        inner.append(tuple(row))
    action = []
    for (n, i) in mods:
        row = []
        for k in range(2 * N + 1):
            for j in range(d):
                if j != i:
                    row.append(tuple([ZERO] * nE))
                    continue
                if abs(n + k) > N or abs(n - k) > N:
                    row.append(None)
                    continue
                v = [ZERO] * nE
                for t in (n + k, n - k):
                    p = _seg_mod_index(d, N, t, i)
                    v[p] = v[p] + HALF
                row.append(tuple(v))
        action.append(tuple(row))
    blocks = tuple(tuple(_seg_mod_index(d, N, n, i) for i in range(d)) for n in range(-N, N + 1))
    xi0 = tuple(ONE if n == 0 else ZERO for (n, i) in mods)
    return FiltrationSpec(A, nE, blocks, tuple(inner), tuple(action), Matrix.identity(nE), xi0,
                          tuple(range(-N, N + 1)), f"segments(d={d},N={N})")


def _power(x: NcPoly, r: int) -> NcPoly:
    return x ** r


def segments_certificate(params: SegmentsParams, kind: str = "hyper",
                         cfg: Optional[RewriteConfig] = None) -> CoactionCertificate:
    """``hyper``: A_h(d) with exponents r(k), r(n).  ``quotient``: A_s(d)⊗C(Z2) with
    v_ki z^[odd].  ``permutation``: A_s(d) acting by v_ki on every level."""
    d, N = params.d, params.N
    K = 2 * N
    nA = (K + 1) * d
    cfg = cfg or RewriteConfig(6)
    if kind == "hyper":
        target = hyperoctahedral(d)
        entry = lambda k, i, level: _power(gen_poly("u", k + 1, i + 1), r_of(level))
    elif kind == "quotient":
        target = permutation_times_z2(d)
        z = gen_poly("z", 1, 1)
        entry = lambda k, i, level: gen_poly("v", k + 1, i + 1) * (z if level % 2 else NcPoly.one())
    elif kind == "permutation":
        target = quantum_permutation(d)
        entry = lambda k, i, level: gen_poly("v", k + 1, i + 1)
    else:
        raise ValueError(f"unknown segments certificate {kind!r}")
    alpha = [[NcPoly.zero() for _ in range(nA)] for _ in range(nA)]
    for k in range(K + 1):
        for i in range(d):
            for l in range(d):
                alpha[_seg_alg_index(d, k, l)][_seg_alg_index(d, k, i)] = entry(l, i, k)
    beta = []
    for n in range(-N, N + 1):
        beta.append([[entry(k, i, n) for i in range(d)] for k in range(d)])
    return CoactionCertificate(target, alpha, beta, cfg, f"segments-{kind}")


def segments_spec(params: SegmentsParams, cfg: Optional[RewriteConfig] = None) -> tuple:
    return (segments_filtration(params), segments_certificate(params, "hyper", cfg),
            segments_certificate(params, "quotient", cfg))


def endpoint_functionals(params: SegmentsParams) -> tuple:
    """Coordinates of f ↦ f_i(0) and f ↦ f_i(1) on the A-basis, per segment i."""
    d, K = params.d, 2 * params.N
    nA = (K + 1) * d
    at0, at1 = [], []
    for i in range(d):
        v0, v1 = [ZERO] * nA, [ZERO] * nA
        for k in range(K + 1):
            v0[_seg_alg_index(d, k, i)] = ONE
            v1[_seg_alg_index(d, k, i)] = Scalar(-1 if k % 2 else 1)
        at0.append(v0)
        at1.append(v1)
    return at0, at1


def segments_subalgebra(params: SegmentsParams, which: str) -> list:
    """Basis of B (both endpoints identified across segments), C (all endpoint
    values equal) or D (left endpoints identified)."""
    from .arith import nullspace
    at0, at1 = endpoint_functionals(params)
    d = params.d
    cons = []
    if which in ("B", "D"):
        cons += [[a - b for a, b in zip(at0[i], at0[0])] for i in range(1, d)]
    if which == "B":
        cons += [[a - b for a, b in zip(at1[i], at1[0])] for i in range(1, d)]
    if which == "C":
        cons += [[a - b for a, b in zip(at0[i], at0[0])] for i in range(1, d)]
        cons += [[a - b for a, b in zip(at1[i], at0[0])] for i in range(d)]
    if which not in ("B", "C", "D", "A"):
        raise ValueError(f"unknown subalgebra {which!r}")
    nA = len(at0[0])
    if not cons:
        return [[ONE if r == s else ZERO for r in range(nA)] for s in range(nA)]
    return nullspace(cons, nA)


def b_context(d: int = 2) -> Presentation:
    """A_h(d) with the relations forced by preserving B: equal row sums, and
    their antipode images (equal column sums)."""
    base = hyperoctahedral(d)
    u = lambda i, j: gen_poly("u", i, j)
    rows = [sum((u(i, k) for k in range(1, d + 1)), NcPoly.zero()) for i in range(1, d + 1)]
    cols = [sum((u(k, i) for k in range(1, d + 1)), NcPoly.zero()) for i in range(1, d + 1)]
    extra = [rows[i] - rows[0] for i in range(1, d)] + [cols[i] - cols[0] for i in range(1, d)]
    return base.with_relations(extra, f"A_h({d}) restricted to B")


def omega(d: int = 2, column: int = 1) -> NcPoly:
    return sum((gen_poly("u", k, column) for k in range(1, d + 1)), NcPoly.zero())


def column_sum_difference(d: int = 2) -> NcPoly:
    return omega(d, 1) - omega(d, 2)


# ---------------------------------------------------------------------------
# free orthogonal


def _scalar_algebra() -> AlgebraData:
    return AlgebraData(1, (((ONE,),),), Matrix.identity(1), (ONE,), (ONE,), ("1",))


def free_orthogonal_spec(P: Matrix, cfg: Optional[RewriteConfig] = None) -> tuple:
    n = P.rows
    mat_inverse(P)  # raises on singular P
    A = _scalar_algebra()
    inner = tuple(tuple((ONE if m == k else ZERO,) for k in range(n)) for m in range(n))
    action = tuple(((tuple(ONE if q == m else ZERO for q in range(n))),) for m in range(n))
    spec = FiltrationSpec(A, n, (tuple(range(n)),), inner, action, P, tuple([ZERO] * n),
                          (0,), f"free-orthogonal(P={P})")
    target = free_orthogonal(P)
    beta = [[[gen_poly("u", k + 1, j + 1) for j in range(n)] for k in range(n)]]
    cert = CoactionCertificate(target, [[NcPoly.one()]], beta, cfg or RewriteConfig(4),
                               "free-orthogonal")
    return spec, target, cert


# ---------------------------------------------------------------------------
# a C*-algebra as a module over itself


def cstar_filtration_spec(alg: AlgebraData, blocks, labels=None, name: str = "") -> FiltrationSpec:
    """E = A with ⟨a|b⟩ = a*b, right multiplication, J = star and ξ0 = 1."""
    n = alg.dim
    eye = [alg.basis(r) for r in range(n)]
    inner = []
    for m in range(n):
        row = []
        for k in range(n):
            prod = alg.mul(alg.star(eye[m]), eye[k])
            if prod is None:
                raise ValueError("inner products must be defined on the whole basis")
            row.append(tuple(prod))
        inner.append(tuple(row))
    action = tuple(tuple(None if alg.struct_consts[m][r] is None else tuple(alg.struct_consts[m][r])
                         for r in range(n)) for m in range(n))
    return FiltrationSpec(alg, n, tuple(tuple(b) for b in blocks), tuple(inner), action,
                          alg.star_matrix, tuple(alg.unit_vector),
                          tuple(labels) if labels is not None else None, name)


def two_point_algebra() -> AlgebraData:
    """Functions on two points in the basis a0 = (1,1), a1 = (1,-1); τ = mean."""
    sc = (((ONE, ZERO), (ZERO, ONE)), ((ZERO, ONE), (ONE, ZERO)))
    return AlgebraData(2, sc, Matrix.identity(2), (ONE, ZERO), (ONE, ZERO), ("(1,1)", "(1,-1)"))


def two_point_spec(cfg: Optional[RewriteConfig] = None) -> tuple:
    alg = two_point_algebra()
    spec = cstar_filtration_spec(alg, [(0,), (1,)], (0, 1), "two-point")
    target = quantum_permutation(2)
    v = lambda i, j: gen_poly("v", i, j)
    # α(e_i) = Σ_k e_k ⊗ v_ki with e_1 = (a0 + a1)/2, e_2 = (a0 - a1)/2
    a01 = (v(1, 1) - v(1, 2) + v(2, 1) - v(2, 2)) * HALF
    a11 = (v(1, 1) - v(1, 2) - v(2, 1) + v(2, 2)) * HALF
    a00 = (v(1, 1) + v(1, 2) + v(2, 1) + v(2, 2)) * HALF
    a10 = (v(1, 1) + v(1, 2) - v(2, 1) - v(2, 2)) * HALF
    alpha = [[a00, a01], [a10, a11]]
    beta = [[[a00]], [[a11]]]
    cert = CoactionCertificate(target, alpha, beta, cfg or RewriteConfig(4), "two-point-permutation")
    return spec, target, cert


# ---------------------------------------------------------------------------
# universal-property morphisms


def au_source(spec: FiltrationSpec, block, name: str = "u") -> Presentation:
    return build_au(compute_s(spec, block), name, None)


def au_assignment(cert: CoactionCertificate, block_pos: int, name: str = "u") -> dict:
    v = cert.beta[block_pos]
    d = len(v)
    return {Generator(name, j + 1, k + 1): v[j][k] for j in range(d) for k in range(d)}


def permutation_into_hyper(d: int = 2) -> tuple:
    """A_s(d) → A_h(d), v_ij ↦ u_ij²."""
    src, tgt = quantum_permutation(d), hyperoctahedral(d)
    assign = {Generator("v", i, j): gen_poly("u", i, j) ** 2
              for i in range(1, d + 1) for j in range(1, d + 1)}
    return src, tgt, assign


# ---------------------------------------------------------------------------
# derivation chain from a generic coaction on segments


def w_chain_relations(d: int, window: int = 2) -> tuple:
    """Relations extracted from a generic filtration-preserving coaction.

    Families v^(n) (family "v", block n) for |n| <= window.  Besides
    self-adjointness, unitarity and the row orthogonality, the |n−m| relations
    are instantiated exactly at the pairs the chain uses, and v^(0) entries are
    idempotent (this comes from α(e_i) = α(e_i)² via the ξ0 axiom).
    """
    ns = list(range(-window, window + 1))
    V = {n: Family("v", d, d, n) for n in ns}
    v = lambda n, i, j: gen_poly("v", i + 1, j + 1, n)
    rels = []
    for n in ns:
        for i in range(d):
            for j in range(d):
                rels.append(v(n, i, j).star() - v(n, i, j))
        rels += unitarity_relations(V[n].matrix())
    for n in ns:
        for m in ns:
            for k in range(d):
                for i in range(d):
                    for j in range(d):
                        if i != j:
                            rels.append(v(n, k, i) * v(m, k, j))
    for k in range(d):
        for i in range(d):
            rels.append(v(0, k, i) * v(0, k, i) - v(0, k, i))
    pairs = []
    for n in ns:
        if n != 0 and -n in ns:
            pairs.append(((n, 0), (0, -n)))
    for n in ns:
        if n + 1 in ns and -1 in ns:
            pairs.append(((n + 1, 0), (n, -1)))
    if 1 in ns:
        pairs.append(((1, 1), (0, 0)))
    pairs = list(dict.fromkeys(pairs))
    for (n, m), (n2, m2) in pairs:
        assert abs(n - m) == abs(n2 - m2)
        for k in range(d):
            for i in range(d):
                rels.append(v(n, k, i) * v(m, k, i) - v(n2, k, i) * v(m2, k, i))
    fams = tuple(V[n] for n in ns)
    return Presentation(f"generic segments coaction (d={d}, |n|<={window})", fams, tuple(rels)), pairs


def derive_w_chain(d: int = 2, cfg: Optional[RewriteConfig] = None, window: int = 2) -> dict:
    if d < 2:
        raise ValueError("d must be >= 2")
    cfg = cfg or RewriteConfig(6)
    pres, pairs = w_chain_relations(d, window)
    sys = complete(pres, cfg)
    v = lambda n, i, j: gen_poly("v", i + 1, j + 1, n)
    w = lambda i, j: v(1, i, j)
    links = []

    def add(kind: str, label: str, poly: NcPoly):
        _, cert = reduce(sys, poly, allow_overflow=True)
        links.append({"link": kind, "identity": label, "certificate": cert, "polynomial": poly})

    ij = [(i, j) for i in range(d) for j in range(d)]
    for n in range(1, window + 1):
        for i, j in ij:
            add("symmetric", f"v({n})[{i + 1},{j + 1}] = v({-n})[{i + 1},{j + 1}]", v(n, i, j) - v(-n, i, j))
    for n in range(0, window):
        for i, j in ij:
            add("step", f"v({n + 1})[{i + 1},{j + 1}] = v({n})[{i + 1},{j + 1}] w[{i + 1},{j + 1}]",
                v(n + 1, i, j) - v(n, i, j) * w(i, j))
    for i, j in ij:
        add("square", f"w[{i + 1},{j + 1}]^2 = v[{i + 1},{j + 1}]", w(i, j) * w(i, j) - v(0, i, j))
    for n in range(-window, window + 1):
        for i, j in ij:
            add("power", f"v({n})[{i + 1},{j + 1}] = w[{i + 1},{j + 1}]^{r_of(n)}",
                v(n, i, j) - w(i, j) ** r_of(n))
    return {"d": d, "window": window, "max_degree": cfg.max_degree, "pairs": pairs,
            "presentation": pres, "rules": sys.size, "complete": sys.complete, "links": links,
            "all_proven": all(l["certificate"].proven for l in links)}


# ---------------------------------------------------------------------------
# registry


CATALOG = {
    "segments": "segments [0,1] x {1..d} truncated at |n| <= N; certificates hyper, quotient, permutation",
    "free-orthogonal": "C^n over C with J = P; certificate over A_o(P) (P=I or P=swap, or P=a,b;c,d)",
    "two-point": "functions on two points as a module over themselves; certificate over A_s(2)",
}


def parse_matrix_param(text: str) -> Matrix:
    t = text.strip().lower()
    if t in ("i", "id", "identity"):
        return Matrix.identity(2)
    if t == "swap":
        return SWAP
    if t.startswith("i") and t[1:].isdigit():
        return Matrix.identity(int(t[1:]))
    rows = [r.split(",") for r in t.split(";")]
    return Matrix.from_rows([[Fraction(x) for x in r] for r in rows])


def load_catalog(uri: str, degree: Optional[int] = None) -> tuple:
    """Resolve ``catalog:NAME?k=v&...#certificate`` to (spec, certificate or None)."""
    from urllib.parse import parse_qsl
    if not uri.startswith("catalog:"):
        raise ValueError(f"not a catalog URI: {uri}")
    rest = uri[len("catalog:"):]
    frag = ""
    if "#" in rest:
        rest, frag = rest.split("#", 1)
    name, _, query = rest.partition("?")
    params = dict(parse_qsl(query))
    if name == "segments":
        sp = SegmentsParams(int(params.get("d", 2)), int(params.get("N", 2)))
        cfg = RewriteConfig(degree or 6)
        spec = segments_filtration(sp)
        cert = segments_certificate(sp, frag or "hyper", cfg)
        return spec, cert
    if name == "free-orthogonal":
        P = parse_matrix_param(params.get("P", "I"))
        spec, _, cert = free_orthogonal_spec(P, RewriteConfig(degree or 4))
        return spec, cert
    if name == "two-point":
        spec, _, cert = two_point_spec(RewriteConfig(degree or 4))
        return spec, cert
    raise ValueError(f"unknown catalog entry {name!r}")
