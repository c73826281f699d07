"""Verification of candidate filtration-preserving coactions.

Every axiom becomes a finite list of polynomial identities in the target
algebra Q (or in Q⊗Q for coassociativity) which must reduce to zero modulo
the completed target relations.

Conventions.  α(a_r) = Σ_s a_s ⊗ alpha[s][r].  For block i with basis
e_i1..e_id, β(e_ij) = Σ_k e_ik ⊗ beta_i[k][j].  An element of A⊗Q is a list
of polynomials indexed by the A-basis, an element of E⊗Q a list indexed by
the module basis.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional, Sequence

from .arith import ONE, ZERO, Scalar, mat_inverse, nullspace, rank, solve
from .filtration import FiltrationSpec, compute_s
from .ncalg import (Generator, NcPoly, Presentation, poly_bar, poly_matmul, poly_transpose,
                    scalar_matrix, substitute, tensor)
from .numeric import falsify_in, presentation_points
from .rewrite import (INCONCLUSIVE, PROVEN, REFUTED, MembershipCertificate, RewriteConfig,
                      complete, reduce, tensor_system)


class ShapeError(ValueError):
    pass


class MorphismError(ValueError):
    pass


@dataclass
class CoactionCertificate:
    target: Presentation
    alpha: list                    # n_A x n_A NcPoly
    beta: list                     # one d_i x d_i NcPoly matrix per block, in spec order
    cfg: RewriteConfig = field(default_factory=RewriteConfig)
    name: str = ""

    def global_beta(self, spec: FiltrationSpec) -> list:
        """B[p][m] with β(ε_m) = Σ_p ε_p ⊗ B[p][m] (block diagonal)."""
        n = spec.module_dim
        B = [[NcPoly.zero() for _ in range(n)] for _ in range(n)]
        for blk, mat in zip(spec.blocks, self.beta):
            for j, m in enumerate(blk):
                for k, p in enumerate(blk):
                    B[p][m] = mat[k][j]
        return B

    def check_shapes(self, spec: FiltrationSpec) -> None:
        nA = spec.algebra.dim
        if len(self.alpha) != nA or any(len(r) != nA for r in self.alpha):
            raise ShapeError(f"alpha must be {nA}x{nA}")
        if len(self.beta) != len(spec.blocks):
            raise ShapeError(f"beta has {len(self.beta)} blocks, spec has {len(spec.blocks)}")
        for lab, blk, mat in zip(spec.labels, spec.blocks, self.beta):
            d = len(blk)
            if len(mat) != d or any(len(r) != d for r in mat):
                raise ShapeError(f"beta block {lab} must be {d}x{d}")
        letters = {g.base() for g in self.target.generators()}
        for poly in self.all_entries():
            for g in poly.generators():
                if g.base() not in letters:
                    raise ShapeError(f"generator {g} is not in the target alphabet")

    def all_entries(self):
        for row in self.alpha:
            yield from row
        for mat in self.beta:
            for row in mat:
                yield from row

    def used_generators(self) -> list:
        return sorted({g.base() for p in self.all_entries() for g in p.generators()})


# ---------------------------------------------------------------------------
# reports


@dataclass
class AxiomResult:
    name: str
    status: str = PROVEN
    instances: int = 0
    proven: int = 0
    skipped_undefined: int = 0
    witnesses: list = field(default_factory=list)
    digests: list = field(default_factory=list)
    note: str = ""

    def add(self, label: str, cert: MembershipCertificate) -> None:
        self.instances += 1
        self.digests.append(cert.digest())
        if cert.proven:
            self.proven += 1
            return
        if self.status == PROVEN:
            self.status = INCONCLUSIVE
        if len(self.witnesses) < 5:
            w = {"instance": label, "status": cert.status}
            if cert.normal_form is not None:
                w["normal_form"] = str(cert.normal_form)
            if cert.note:
                w["note"] = cert.note
            self.witnesses.append(w)

    def refute(self, label: str, witness) -> None:
        self.status = REFUTED
        self.witnesses.insert(0, {"instance": label, "status": REFUTED, "point": witness.to_json()})

    def digest(self) -> str:
        h = hashlib.sha256()
        for d in self.digests:
            h.update(d.encode())
        return h.hexdigest()

    def to_json(self) -> dict:
        out = {"status": self.status, "instances": self.instances, "proven": self.proven,
               "trace_sha256": self.digest()}
        if self.skipped_undefined:
            out["skipped_undefined"] = self.skipped_undefined
        if self.witnesses:
            out["witnesses"] = self.witnesses
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class AxiomReport:
    axioms: dict = field(default_factory=dict)
    info: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        st = [a.status for a in self.axioms.values()]
        if REFUTED in st:
            return REFUTED
        if INCONCLUSIVE in st:
            return INCONCLUSIVE
        return PROVEN

    @property
    def all_proven(self) -> bool:
        return self.status == PROVEN

    def merge(self, other: "AxiomReport") -> "AxiomReport":
        out = AxiomReport(dict(self.axioms), dict(self.info))
        out.axioms.update(other.axioms)
        out.info.update(other.info)
        return out

    def to_json(self) -> dict:
        return {"status": self.status,
                "axioms": {k: self.axioms[k].to_json() for k in sorted(self.axioms)},
                "info": self.info}

    def summary(self) -> str:
        lines = []
        for k in sorted(self.axioms):
            a = self.axioms[k]
            extra = f", {a.skipped_undefined} undefined skipped" if a.skipped_undefined else ""
            lines.append(f"{a.status:<18} {k}  ({a.proven}/{a.instances}{extra})")
        lines.append(f"overall: {self.status}")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# the checking context


class _Checker:
    """Target system, tensor system and numeric refutation shared by the axioms."""

    def __init__(self, target: Presentation, cfg: RewriteConfig, refute: bool = True):
        self.target = target
        self.cfg = cfg
        self.sys = complete(target, cfg)
        self._tsys = None
        self.refute_enabled = refute
        self._points = None

    @property
    def tsys(self):
        if self._tsys is None:
            self._tsys = tensor_system(self.sys)
        return self._tsys

    @property
    def points(self) -> list:
        if self._points is None:
            self._points = presentation_points(self.target)
        return self._points

    def check(self, res: AxiomResult, label: str, poly: NcPoly, tensor_alphabet: bool = False) -> None:
        system = self.tsys if tensor_alphabet else self.sys
        _, cert = reduce(system, poly, allow_overflow=True)
        res.add(label, cert)
        if not cert.proven and self.refute_enabled and res.status != REFUTED:
            wit = falsify_in(self.target, cert.normal_form, self.points)
            if wit is not None:
                res.refute(label, wit)


class _Collector:
    """Stand-in for _Checker that records the identities instead of deciding them."""

    sys = None

    def __init__(self):
        self.polys: dict = {}

    def check(self, res: AxiomResult, label: str, poly: NcPoly, tensor_alphabet: bool = False) -> None:
        self.polys.setdefault(res.name, []).append((label, poly))


# helpers on A⊗Q and E⊗Q


def _zero_vec(n: int) -> list:
    return [NcPoly.zero() for _ in range(n)]


def _alpha_of(cert: CoactionCertificate, x: Sequence[Scalar]) -> list:
    """α(Σ x_r a_r) as an element of A⊗Q."""
    n = len(cert.alpha)
    out = _zero_vec(n)
    for r, xr in enumerate(x):
        if xr:
            for s in range(n):
                if cert.alpha[s][r]:
                    out[s] = out[s] + cert.alpha[s][r] * xr
    return out


def _mul_AQ(spec: FiltrationSpec, X: Sequence[NcPoly], Y: Sequence[NcPoly]):
    A = spec.algebra
    out = _zero_vec(A.dim)
    for p, xp in enumerate(X):
        if not xp:
            continue
        for q, yq in enumerate(Y):
            if not yq:
                continue
            prod = xp * yq
            if not prod:
                continue
            c = A.struct_consts[p][q]
            if c is None:
                return None
            for t, ct in enumerate(c):
                if ct:
                    out[t] = out[t] + prod * ct
    return out


def _star_AQ(spec: FiltrationSpec, X: Sequence[NcPoly]) -> list:
    A = spec.algebra
    out = _zero_vec(A.dim)
    for s, xs in enumerate(X):
        if not xs:
            continue
        xst = xs.star()
        for t in range(A.dim):
            st = A.star_matrix[t, s]
            if st:
                out[t] = out[t] + xst * st
    return out


def _const_AQ(x: Sequence[Scalar]) -> list:
    return [NcPoly.const(c) for c in x]


def _inner_EQ(spec: FiltrationSpec, X: Sequence[NcPoly], Y: Sequence[NcPoly]) -> list:
    out = _zero_vec(spec.algebra.dim)
    for p, xp in enumerate(X):
        if not xp:
            continue
        xs = xp.star()
        for q, yq in enumerate(Y):
            if not yq:
                continue
            prod = xs * yq
            if not prod:
                continue
            for t, h in enumerate(spec.inner_tensor[p][q]):
                if h:
                    out[t] = out[t] + prod * h
    return out


def _act_EQ(spec: FiltrationSpec, X: Sequence[NcPoly], Y: Sequence[NcPoly]):
    out = _zero_vec(spec.module_dim)
    for p, xp in enumerate(X):
        if not xp:
            continue
        for s, ys in enumerate(Y):
            if not ys:
                continue
            prod = xp * ys
            if not prod:
                continue
            g = spec.action_tensor[p][s]
            if g is None:
                return None
            for q, gq in enumerate(g):
                if gq:
                    out[q] = out[q] + prod * gq
    return out


def _basis_label(spec: FiltrationSpec, m: int) -> str:
    b, j = spec.block_of(m)
    return f"e[{spec.labels[b]};{j + 1}]"


def _alg_label(spec: FiltrationSpec, r: int) -> str:
    labs = spec.algebra.labels
    return f"a[{labs[r]}]" if labs else f"a[{r}]"


def _v_matrices(spec: FiltrationSpec, cert: CoactionCertificate) -> list:
    return [[list(row) for row in mat] for mat in cert.beta]


# ---------------------------------------------------------------------------
# axioms (a)-(g)


def verify_coaction(spec: FiltrationSpec, cert: CoactionCertificate, refute: bool = True,
                    checker=None) -> AxiomReport:
    cert.check_shapes(spec)
    ck = checker or _Checker(cert.target, cert.cfg, refute)
    A = spec.algebra
    nA, nE = A.dim, spec.module_dim
    eye = [A.basis(r) for r in range(nA)]
    alpha_cols = [_alpha_of(cert, eye[r]) for r in range(nA)]
    B = cert.global_beta(spec)
    beta_cols = [[B[p][m] for p in range(nE)] for m in range(nE)]
    rep = AxiomReport()

    # (a) multiplicativity
    res = AxiomResult("a_multiplicative")
    for r in range(nA):
        for s in range(nA):
            c = A.struct_consts[r][s]
            lhs = _mul_AQ(spec, alpha_cols[r], alpha_cols[s])
            if c is None or lhs is None:
                res.skipped_undefined += 1
                continue
            rhs = _alpha_of(cert, c)
            for t in range(nA):
                ck.check(res, f"{_alg_label(spec, r)}*{_alg_label(spec, s)} @ {_alg_label(spec, t)}",
                         lhs[t] - rhs[t])
    rep.axioms[res.name] = res

    # (b) star
    res = AxiomResult("b_star")
    for r in range(nA):
        lhs = _alpha_of(cert, A.star(eye[r]))
        rhs = _star_AQ(spec, alpha_cols[r])
        for t in range(nA):
            ck.check(res, f"{_alg_label(spec, r)} @ {_alg_label(spec, t)}", lhs[t] - rhs[t])
    rep.axioms[res.name] = res

    # (c) unit
    res = AxiomResult("c_unit")
    lhs = _alpha_of(cert, A.unit_vector)
    for t in range(nA):
        ck.check(res, f"@ {_alg_label(spec, t)}", lhs[t] - NcPoly.const(A.unit_vector[t]))
    rep.axioms[res.name] = res

    # (d) inner products
    res = AxiomResult("d_inner_product")
    for m in range(nE):
        for n in range(nE):
            lhs = _inner_EQ(spec, beta_cols[m], beta_cols[n])
            rhs = _alpha_of(cert, spec.inner_tensor[m][n])
            for t in range(nA):
                ck.check(res, f"<{_basis_label(spec, m)}|{_basis_label(spec, n)}> @ {_alg_label(spec, t)}",
                         lhs[t] - rhs[t])
    rep.axioms[res.name] = res

    # (e) module map
    res = AxiomResult("e_module_map")
    for m in range(nE):
        for r in range(nA):
            g = spec.action_tensor[m][r]
            rhs = _act_EQ(spec, beta_cols[m], alpha_cols[r])
            if g is None or rhs is None:
                res.skipped_undefined += 1
                continue
            lhs = _zero_vec(nE)
            for p, gp in enumerate(g):
                if gp:
                    for q in range(nE):
                        if beta_cols[p][q]:
                            lhs[q] = lhs[q] + beta_cols[p][q] * gp
            for q in range(nE):
                ck.check(res, f"{_basis_label(spec, m)}.{_alg_label(spec, r)} @ {_basis_label(spec, q)}",
                         lhs[q] - rhs[q])
    rep.axioms[res.name] = res

    # (f) coassociativity
    res = AxiomResult("f_coassociative_alpha")
    for r in range(nA):
        for t in range(nA):
            acc = NcPoly.zero()
            for s in range(nA):
                if cert.alpha[t][s] and cert.alpha[s][r]:
                    acc = acc + tensor(cert.alpha[t][s], cert.alpha[s][r])
            ck.check(res, f"{_alg_label(spec, r)} @ {_alg_label(spec, t)}",
                     acc - cert.target.delta(cert.alpha[t][r]), tensor_alphabet=True)
    rep.axioms[res.name] = res
    res = AxiomResult("f_coassociative_beta")
    for m in range(nE):
        for p in range(nE):
            acc = NcPoly.zero()
            for q in range(nE):
                if B[p][q] and B[q][m]:
                    acc = acc + tensor(B[p][q], B[q][m])
            if not acc and not B[p][m]:
                continue
            ck.check(res, f"{_basis_label(spec, m)} @ {_basis_label(spec, p)}",
                     acc - cert.target.delta(B[p][m]), tensor_alphabet=True)
    rep.axioms[res.name] = res

    # (g) density witnesses
    res = AxiomResult("g_density_beta")
    vs = _v_matrices(spec, cert)
    for lab, v in zip(spec.labels, vs):
        d = len(v)
        for j in range(d):
            for l in range(d):
                acc = NcPoly.zero()
                for k in range(d):
                    acc = acc + v[l][k] * v[j][k].star()
                ck.check(res, f"block {lab}: j={j + 1} @ l={l + 1}", acc - (ONE if l == j else ZERO))
    rep.axioms[res.name] = res

    res = AxiomResult("g_density_alpha")
    xs = []
    for lab, v in zip(spec.labels, vs):
        s = compute_s(spec, lab)
        xs.append(poly_matmul(poly_matmul(scalar_matrix(mat_inverse(s)), poly_transpose(v)),
                              scalar_matrix(s)))
    for bi, (labi, blki) in enumerate(zip(spec.labels, spec.blocks)):
        for bj, (labj, blkj) in enumerate(zip(spec.labels, spec.blocks)):
            vj, xi = vs[bj], xs[bi]
            for m in range(len(blki)):
                for n in range(len(blkj)):
                    lhs = _zero_vec(nA)
                    for k in range(len(blki)):
                        for l in range(len(blkj)):
                            right = vj[n][l].star() * xi[k][m]
                            if not right:
                                continue
                            al = _alpha_of(cert, spec.inner_tensor[blki[k]][blkj[l]])
                            for t in range(nA):
                                if al[t]:
                                    lhs[t] = lhs[t] + al[t] * right
                    want = spec.inner_tensor[blki[m]][blkj[n]]
                    for t in range(nA):
                        ck.check(res, f"blocks ({labi},{labj}) m={m + 1} n={n + 1} @ {_alg_label(spec, t)}",
                                 lhs[t] - NcPoly.const(want[t]))
    rep.axioms[res.name] = res
    rep.info["target"] = cert.target.name
    if ck.sys is None:
        return rep
    rep.info["rewrite"] = {"max_degree": cert.cfg.max_degree, "rules": ck.sys.size,
                           "complete": ck.sys.complete, "passes": ck.sys.passes}
    rep.info["generators_used"] = [str(g) for g in cert.used_generators()]
    return rep


# ---------------------------------------------------------------------------
# axioms (h)-(j) and the unitarity theorem-check


def j_equivariance_polys(spec: FiltrationSpec, cert: CoactionCertificate) -> list:
    """Entries of j·B̄ − B·j, where (J⊗*)β(ε_m) = Σ_l ε_l ⊗ Σ_p j[l,p] B[p][m]*
    and β(J ε_m) = Σ_l ε_l ⊗ Σ_p B[l][p] j[p,m]."""
    B = cert.global_beta(spec)
    n = spec.module_dim
    J = spec.j_matrix
    out = []
    for l in range(n):
        for m in range(n):
            acc = NcPoly.zero()
            for p in range(n):
                if J[l, p] and B[p][m]:
                    acc = acc + B[p][m].star() * J[l, p]
                if B[l][p] and J[p, m]:
                    acc = acc - B[l][p] * J[p, m]
            out.append(((l, m), acc))
    return out


def verify_filtration_axioms(spec: FiltrationSpec, cert: CoactionCertificate,
                             refute: bool = True, checker=None) -> AxiomReport:
    cert.check_shapes(spec)
    ck = checker or _Checker(cert.target, cert.cfg, refute)
    A = spec.algebra
    nA, nE = A.dim, spec.module_dim
    rep = AxiomReport()

    res = AxiomResult("h_trace")
    for r in range(nA):
        acc = NcPoly.zero()
        for s in range(nA):
            if A.trace_vector[s] and cert.alpha[s][r]:
                acc = acc + cert.alpha[s][r] * A.trace_vector[s]
        ck.check(res, _alg_label(spec, r), acc - NcPoly.const(A.trace_vector[r]))
    rep.axioms[res.name] = res

    res = AxiomResult("i_j_equivariance")
    for (l, m), poly in j_equivariance_polys(spec, cert):
        ck.check(res, f"{_basis_label(spec, m)} @ {_basis_label(spec, l)}", poly)
    rep.axioms[res.name] = res

    res = AxiomResult("j_xi0_fixed")
    B = cert.global_beta(spec)
    if not any(spec.xi0):
        res.note = "xi0 = 0, axiom vacuous"
    for p in range(nE):
        acc = NcPoly.zero()
        for m in range(nE):
            if spec.xi0[m] and B[p][m]:
                acc = acc + B[p][m] * spec.xi0[m]
        if not any(spec.xi0):
            continue
        ck.check(res, f"@ {_basis_label(spec, p)}", acc - NcPoly.const(spec.xi0[p]))
    rep.axioms[res.name] = res
    return rep


def unitarity_targets(spec: FiltrationSpec, cert: CoactionCertificate) -> list:
    """(label, polynomial) for v v* − I, v* v − I, vᵗ s v̄ s⁻¹ − I and s v̄ s⁻¹ vᵗ − I per block."""
    out = []
    for lab, v in zip(spec.labels, _v_matrices(spec, cert)):
        d = len(v)
        s = compute_s(spec, lab)
        sm, sinv = scalar_matrix(s), scalar_matrix(mat_inverse(s))
        vd = poly_transpose(poly_bar(v))
        vb = poly_bar(v)
        vt = poly_transpose(v)
        mats = {
            "v v* - I": poly_matmul(v, vd),
            "v* v - I": poly_matmul(vd, v),
            "v^t s vbar s^-1 - I": poly_matmul(poly_matmul(poly_matmul(vt, sm), vb), sinv),
            "s vbar s^-1 v^t - I": poly_matmul(poly_matmul(poly_matmul(sm, vb), sinv), vt),
        }
        for name, M in mats.items():
            for j in range(d):
                for k in range(d):
                    out.append((f"block {lab}: {name} [{j + 1},{k + 1}]", M[j][k] - (ONE if j == k else ZERO)))
    return out


def unitarity_theorem_check(spec: FiltrationSpec, cert: CoactionCertificate,
                            refute: bool = True) -> AxiomReport:
    ck = _Checker(cert.target, cert.cfg, refute)
    res = AxiomResult("unitary_blocks")
    for label, poly in unitarity_targets(spec, cert):
        ck.check(res, label, poly)
    rep = AxiomReport()
    rep.axioms[res.name] = res
    return rep


def verify_all(spec: FiltrationSpec, cert: CoactionCertificate, refute: bool = True) -> AxiomReport:
    rep = verify_coaction(spec, cert, refute)
    rep = rep.merge(verify_filtration_axioms(spec, cert, refute))
    return rep.merge(unitarity_theorem_check(spec, cert, refute))


# ---------------------------------------------------------------------------
# morphisms, subalgebras, group-like elements


def _lookup(assignment: Mapping[Generator, NcPoly]) -> Callable:
    def look(g: Generator):
        if g in assignment:
            return assignment[g]
        if g.starred and g.star() in assignment:
            return assignment[g.star()].star()
        return None
    return look


def check_morphism(source: Presentation, target: Presentation, assignment: Mapping[Generator, NcPoly],
                   cfg: RewriteConfig) -> list:
    """One (label, certificate) per source relation, after compatibility checks.

    Star and Δ compatibility are first tried as exact identities; when that
    fails they are reduced in the target (resp. its tensor square).  A
    compatibility condition that is not Proven raises MorphismError.
    """
    look = _lookup(assignment)
    for g in source.generators():
        if look(g) is None:
            raise MorphismError(f"no image for {g}")
    sys = complete(target, cfg)
    out = []
    for g in source.generators():
        img = look(g)
        # star compatibility when both g and g* were assigned
        if g.star() in assignment:
            diff = assignment[g.star()] - img.star()
            if diff and not reduce(sys, diff, allow_overflow=True)[1].proven:
                raise MorphismError(f"assignment not star-compatible at {g}")
        if g in source.comul and target.comul:
            lhs = target.delta(img)
            rhs = substitute(source.comul_of(g), lambda h: look(h.at_slot(0)).at_slot(h.slot)).slot_ordered()
            diff = lhs - rhs
            if diff:
                cert = reduce(tensor_system(sys), diff, allow_overflow=True)[1]
                if not cert.proven:
                    raise MorphismError(f"assignment does not intertwine the comultiplications at {g}")
                out.append((f"comul {g}", cert))
        if g in source.counit and target.counit:
            if target.epsilon(img) != source.counit[g]:
                raise MorphismError(f"assignment does not preserve the counit at {g}")
    for k, rel in enumerate(source.relations):
        img = substitute(rel, look)
        out.append((f"relation {k}: {rel}", reduce(sys, img, allow_overflow=True)[1]))
    return out


def morphism_report(source: Presentation, target: Presentation, assignment, cfg: RewriteConfig,
                    name: str = "morphism") -> AxiomReport:
    rep = AxiomReport()
    res = AxiomResult(name)
    for label, cert in check_morphism(source, target, assignment, cfg):
        res.add(label, cert)
    rep.axioms[name] = res
    rep.info[name] = {"source": source.name, "target": target.name}
    return rep


def validate_subalgebra(spec: FiltrationSpec, basis: Sequence[Sequence[Scalar]]) -> list:
    """Problems preventing ``basis`` from spanning a unital *-subalgebra."""
    A = spec.algebra
    rows = [list(b) for b in basis]
    problems = []
    rk = rank(rows) if rows else 0

    def inside(x) -> bool:
        return rank(rows + [list(x)]) == rk

    if not inside(A.unit_vector):
        problems.append("unit not in span")
    for k, b in enumerate(rows):
        if not inside(A.star(b)):
            problems.append(f"star of element {k} not in span")
        for l, c in enumerate(rows):
            prod = A.mul(b, c)
            if prod is not None and not inside(prod):
                problems.append(f"product of elements {k},{l} not in span")
    return problems


def annihilator(spec: FiltrationSpec, basis: Sequence[Sequence[Scalar]]) -> list:
    """Functionals φ (coordinate vectors) vanishing on the span of ``basis``."""
    return nullspace([list(b) for b in basis], spec.algebra.dim)


def check_subalgebra_preserved(spec: FiltrationSpec, cert: CoactionCertificate,
                               subalgebra: Sequence[Sequence[Scalar]], name: str = "subalgebra",
                               refute: bool = True) -> AxiomReport:
    problems = validate_subalgebra(spec, subalgebra)
    if problems:
        raise ShapeError(f"not a unital *-subalgebra: {'; '.join(problems)}")
    ck = _Checker(cert.target, cert.cfg, refute)
    phis = annihilator(spec, subalgebra)
    res = AxiomResult(f"preserves_{name}")
    for k, b in enumerate(subalgebra):
        img = _alpha_of(cert, b)
        for f, phi in enumerate(phis):
            acc = NcPoly.zero()
            for s, ps in enumerate(phi):
                if ps and img[s]:
                    acc = acc + img[s] * ps
            ck.check(res, f"element {k} / functional {f}", acc)
    rep = AxiomReport()
    rep.axioms[res.name] = res
    rep.info[res.name] = {"dimension": len(subalgebra), "functionals": len(phis)}
    return rep


def check_group_like(target: Presentation, element: NcPoly, cfg: RewriteConfig,
                     refute: bool = True) -> AxiomReport:
    ck = _Checker(target, cfg, refute)
    rep = AxiomReport()
    checks = (
        ("group_like_square", element * element - 1, False),
        ("group_like_self_adjoint", element.star() - element, False),
        ("group_like_comul", target.delta(element) - tensor(element, element), True),
    )
    for name, poly, tens in checks:
        res = AxiomResult(name)
        ck.check(res, str(element), poly, tensor_alphabet=tens)
        rep.axioms[name] = res
    return rep


def trivial_certificate(spec: FiltrationSpec, cfg: Optional[RewriteConfig] = None) -> CoactionCertificate:
    from .ncalg import scalar_presentation
    nA = spec.algebra.dim
    alpha = [[NcPoly.one() if s == r else NcPoly.zero() for r in range(nA)] for s in range(nA)]
    beta = [[[NcPoly.one() if j == k else NcPoly.zero() for j in range(len(blk))]
             for k in range(len(blk))] for blk in spec.blocks]
    return CoactionCertificate(scalar_presentation(), alpha, beta, cfg or RewriteConfig(2), "trivial")


# ---------------------------------------------------------------------------
# the universal object as generators and relations


def _monic(p: NcPoly) -> NcPoly:
    lead = p.leading_word()
    return p * p.terms[lead].inverse()


def fullness_coefficients(spec: FiltrationSpec) -> list:
    """For each algebra basis element a_r, coefficients c[(m, n)] with
    a_r = Σ c[(m, n)] ⟨ε_m|ε_n⟩."""
    nA, nE = spec.algebra.dim, spec.module_dim
    pairs = [(m, n) for m in range(nE) for n in range(nE)]
    rows = [[spec.inner_tensor[m][n][t] for (m, n) in pairs] for t in range(nA)]
    out = []
    for r in range(nA):
        x = solve(rows, spec.algebra.basis(r))
        if x is None:
            raise ShapeError(f"inner products do not span the algebra (missing a[{r}])")
        out.append({pr: c for pr, c in zip(pairs, x) if c})
    return out


def universal_certificate(spec: FiltrationSpec, cfg: Optional[RewriteConfig] = None,
                          name: str = "v") -> CoactionCertificate:
    """Free product of A_u(s) over the blocks, with β the generic matrices and
    α forced by α(⟨x|y⟩) = ⟨β x|β y⟩."""
    from .ncalg import build_au, free_product
    parts, beta = [], []
    for pos, lab in enumerate(spec.labels):
        blk = lab if isinstance(lab, int) and not isinstance(lab, bool) else pos
        p = build_au(compute_s(spec, lab), name, blk)
        parts.append(p)
        beta.append([list(row) for row in p.families[0].matrix()])
    target = free_product(parts, "*".join(p.name for p in parts))
    cert = CoactionCertificate(target, [[NcPoly.zero()] * spec.algebra.dim for _ in range(spec.algebra.dim)],
                               beta, cfg or RewriteConfig(), "universal")
    B = cert.global_beta(spec)
    cols = [[B[p][m] for p in range(spec.module_dim)] for m in range(spec.module_dim)]
    nA = spec.algebra.dim
    alpha = [[NcPoly.zero() for _ in range(nA)] for _ in range(nA)]
    for r, coeffs in enumerate(fullness_coefficients(spec)):
        for (m, n), c in sorted(coeffs.items()):
            ip = _inner_EQ(spec, cols[m], cols[n])
            for s in range(nA):
                if ip[s]:
                    alpha[s][r] = alpha[s][r] + ip[s] * c
    cert.alpha = alpha
    return cert


UNIVERSAL_AXIOMS = ("d_inner_product", "e_module_map", "h_trace", "i_j_equivariance", "j_xi0_fixed")


def universal_presentation(spec: FiltrationSpec, cfg: Optional[RewriteConfig] = None) -> tuple:
    """(presentation, certificate): the free product of the A_u(s) together with
    every nonzero filtration identity on the generic β, made monic and deduplicated."""
    cert = universal_certificate(spec, cfg)
    col = _Collector()
    verify_coaction(spec, cert, checker=col)
    verify_filtration_axioms(spec, cert, checker=col)
    extra: dict = {}
    for ax in UNIVERSAL_AXIOMS:
        for _, poly in col.polys.get(ax, []):
            if poly:
                extra.setdefault(_monic(poly), None)
    rels = tuple(dict.fromkeys(list(cert.target.relations) + list(extra)))
    t = cert.target
    pres = Presentation(f"universal({spec.name or 'spec'})", t.families, rels, t.comul, t.counit, t.antipode)
    cert.target = pres
    return pres, cert
