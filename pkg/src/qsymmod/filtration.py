"""Finite data for a Hilbert module with an orthogonal filtration, its
validation, and the twisting matrices s⁽ⁱ⁾ of each block.

Truncated examples are allowed to leave some products undefined: a ``None``
entry in ``struct_consts[r][s]`` or ``action_tensor[m][r]`` means the result
leaves the truncation.  Checks that would need such a product are skipped and
the number of skipped instances is reported.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .arith import (ONE, ZERO, Matrix, Scalar, SingularMatrixError, TOLERANCES,
                    first_nonpositive_minor, is_hermitian,
                    mat_inverse, rank)


class SpecError(ValueError):
    pass


Vec = list  # list[Scalar]


def _zeros(n: int) -> Vec:
    return [ZERO] * n


def _axpy(acc: Vec, c: Scalar, x: Sequence[Scalar]) -> None:
    for i, v in enumerate(x):
        if v:
            acc[i] = acc[i] + c * v


@dataclass(frozen=True)
class AlgebraData:
    dim: int
    struct_consts: tuple          # [r][s] -> tuple of Scalars (length dim) or None
    star_matrix: Matrix           # a_r* = Σ_t star[t, r] a_t
    unit_vector: tuple
    trace_vector: tuple
    labels: Optional[tuple] = None

    def basis(self, r: int) -> Vec:
        v = _zeros(self.dim)
        v[r] = ONE
        return v

    def mul(self, x: Sequence[Scalar], y: Sequence[Scalar]) -> Optional[Vec]:
        """x·y, or None when a needed product is outside the truncation."""
        out = _zeros(self.dim)
        for r, xr in enumerate(x):
            if not xr:
                continue
            for s, ys in enumerate(y):
                if not ys:
                    continue
                c = self.struct_consts[r][s]
                if c is None:
                    return None
                _axpy(out, xr * ys, c)
        return out

    def star(self, x: Sequence[Scalar]) -> Vec:
        out = _zeros(self.dim)
        for r, xr in enumerate(x):
            if xr:
                for t in range(self.dim):
                    st = self.star_matrix[t, r]
                    if st:
                        out[t] = out[t] + xr.conj() * st
        return out

    def tau(self, x: Sequence[Scalar]) -> Scalar:
        acc = ZERO
        for xr, tr in zip(x, self.trace_vector):
            if xr and tr:
                acc = acc + xr * tr
        return acc

    def defined(self, r: int, s: int) -> bool:
        return self.struct_consts[r][s] is not None


@dataclass(frozen=True)
class FiltrationSpec:
    algebra: AlgebraData
    module_dim: int
    blocks: tuple                 # tuple of tuples of module-basis indices (0-based)
    inner_tensor: tuple           # [m][n] -> tuple of Scalars (length n_A)
    action_tensor: tuple          # [m][r] -> tuple of Scalars (length n_E) or None
    j_matrix: Matrix              # J(ε_m) = Σ_l j[l, m] ε_l, antilinear
    xi0: tuple
    block_labels: Optional[tuple] = None
    name: str = ""

    @property
    def labels(self) -> tuple:
        return self.block_labels if self.block_labels is not None else tuple(range(len(self.blocks)))

    def block_index(self, label) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise SpecError(f"unknown block {label!r}") from None

    def block_of(self, m: int) -> tuple:
        """(block position, position inside block) of module basis vector m."""
        for b, blk in enumerate(self.blocks):
            if m in blk:
                return b, blk.index(m)
        raise SpecError(f"basis vector {m} in no block")

    def basis(self, m: int) -> Vec:
        v = _zeros(self.module_dim)
        v[m] = ONE
        return v

    def inner(self, x: Sequence[Scalar], y: Sequence[Scalar]) -> Vec:
        """⟨x|y⟩_A, antilinear in x."""
        out = _zeros(self.algebra.dim)
        for m, xm in enumerate(x):
            if not xm:
                continue
            cx = xm.conj()
            for n, yn in enumerate(y):
                if yn:
                    _axpy(out, cx * yn, self.inner_tensor[m][n])
        return out

    def act(self, x: Sequence[Scalar], a: Sequence[Scalar]) -> Optional[Vec]:
        out = _zeros(self.module_dim)
        for m, xm in enumerate(x):
            if not xm:
                continue
            for r, ar in enumerate(a):
                if not ar:
                    continue
                g = self.action_tensor[m][r]
                if g is None:
                    return None
                _axpy(out, xm * ar, g)
        return out

    def apply_j(self, x: Sequence[Scalar]) -> Vec:
        out = _zeros(self.module_dim)
        for m, xm in enumerate(x):
            if xm:
                cx = xm.conj()
                for l in range(self.module_dim):
                    jl = self.j_matrix[l, m]
                    if jl:
                        out[l] = out[l] + cx * jl
        return out

    def tau_gram(self) -> Matrix:
        """T[m][n] = τ(⟨ε_m|ε_n⟩_A)."""
        A = self.algebra
        return Matrix.from_rows([[A.tau(self.inner_tensor[m][n]) for n in range(self.module_dim)]
                                 for m in range(self.module_dim)])


# ---------------------------------------------------------------------------
# validation


@dataclass
class Check:
    name: str
    passed: bool
    witness: Optional[dict] = None
    skipped: int = 0
    note: str = ""

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.skipped:
            out["skipped_undefined"] = self.skipped
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class ValidationReport:
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": [c.to_json() for c in self.checks]}

    def summary(self) -> str:
        lines = []
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            extra = f" (skipped {c.skipped} undefined)" if c.skipped else ""
            wit = f"  {c.witness}" if c.witness and not c.passed else ""
            lines.append(f"{mark} {c.name}{extra}{wit}")
        return "\n".join(lines)


def _s(x: Scalar) -> str:
    return str(x)


def _vec_str(v) -> list:
    return [str(x) for x in v]


def _shape_problems(spec: FiltrationSpec) -> list:
    A = spec.algebra
    n, nE = A.dim, spec.module_dim
    out = []
    if len(A.struct_consts) != n or any(len(row) != n for row in A.struct_consts):
        out.append("struct_consts must be dim x dim")
    else:
        for r in range(n):
            for s in range(n):
                c = A.struct_consts[r][s]
                if c is not None and len(c) != n:
                    out.append(f"struct_consts[{r}][{s}] has length {len(c)}")
    if A.star_matrix.shape != (n, n):
        out.append("star_matrix must be dim x dim")
    if len(A.unit_vector) != n or len(A.trace_vector) != n:
        out.append("unit_vector and trace_vector must have length dim")
    if len(spec.inner_tensor) != nE or any(len(row) != nE for row in spec.inner_tensor):
        out.append("inner_tensor must be n_E x n_E")
    elif any(len(spec.inner_tensor[m][k]) != n for m in range(nE) for k in range(nE)):
        out.append("inner_tensor entries must have length dim")
    if len(spec.action_tensor) != nE or any(len(row) != n for row in spec.action_tensor):
        out.append("action_tensor must be n_E x dim")
    if spec.j_matrix.shape != (nE, nE):
        out.append("j_matrix must be n_E x n_E")
    if len(spec.xi0) != nE:
        out.append("xi0 must have length n_E")
    if spec.block_labels is not None and len(spec.block_labels) != len(spec.blocks):
        out.append("block_labels must match blocks")
    return out


def validate(spec: FiltrationSpec) -> ValidationReport:
    rep = ValidationReport()
    problems = _shape_problems(spec)
    rep.checks.append(Check("shapes", not problems, {"problems": problems} if problems else None))
    if problems:
        return rep
    A = spec.algebra
    n, nE = A.dim, spec.module_dim
    eye = [A.basis(r) for r in range(n)]

    # associativity
    fail, skipped = None, 0
    for r in range(n):
        for s in range(n):
            rs = A.mul(eye[r], eye[s])
            for t in range(n):
                st = A.mul(eye[s], eye[t])
                if rs is None or st is None:
                    skipped += 1
                    continue
                left, right = A.mul(rs, eye[t]), A.mul(eye[r], st)
                if left is None or right is None:
                    skipped += 1
                    continue
                if left != right and fail is None:
                    fail = {"triple": [r, s, t], "left": _vec_str(left), "right": _vec_str(right)}
    rep.checks.append(Check("associativity", fail is None, fail, skipped))

    # unit
    fail, skipped = None, 0
    one = list(A.unit_vector)
    for r in range(n):
        for side, val in (("left", A.mul(one, eye[r])), ("right", A.mul(eye[r], one))):
            if val is None:
                skipped += 1
            elif val != eye[r] and fail is None:
                fail = {"basis": r, "side": side, "product": _vec_str(val)}
    rep.checks.append(Check("unit", fail is None, fail, skipped))

    # star involution and antimultiplicativity
    fail = None
    for r in range(n):
        back = A.star(A.star(eye[r]))
        if back != eye[r]:
            fail = {"basis": r, "star_star": _vec_str(back)}
            break
    rep.checks.append(Check("star_involution", fail is None, fail))
    fail, skipped = None, 0
    for r in range(n):
        for s in range(n):
            rs = A.mul(eye[r], eye[s])
            rhs = A.mul(A.star(eye[s]), A.star(eye[r]))
            if rs is None or rhs is None:
                skipped += 1
                continue
            if A.star(rs) != rhs and fail is None:
                fail = {"pair": [r, s], "left": _vec_str(A.star(rs)), "right": _vec_str(rhs)}
    rep.checks.append(Check("star_antimultiplicative", fail is None, fail, skipped))

    # trace
    t1 = A.tau(one)
    rep.checks.append(Check("trace_unit_positive", t1.is_real() and t1.re > 0,
                            {"tau_one": _s(t1)}, note=f"tau(1) = {t1}"))
    fail = None
    for r in range(n):
        if A.tau(A.star(eye[r])) != A.tau(eye[r]).conj():
            fail = {"basis": r}
            break
    rep.checks.append(Check("trace_star", fail is None, fail))

    # faithfulness on the subspace where the Gram matrix is defined
    covered = []
    for r in range(n):
        if all(A.mul(A.star(eye[x]), eye[y]) is not None
               for x in covered + [r] for y in covered + [r]):
            covered.append(r)
    G = Matrix.from_rows([[A.tau(A.mul(A.star(eye[x]), eye[y])) for y in covered] for x in covered])
    bad = first_nonpositive_minor(G) if covered else None
    note = "" if len(covered) == n else f"Gram defined on {len(covered)} of {n} basis elements"
    wit = None
    if bad is not None or not is_hermitian(G):
        wit = {"basis_subset": covered, "minor": None if bad is None else {"order": bad[0], "value": _s(bad[1])}}
    rep.checks.append(Check("trace_faithful", wit is None, wit, n - len(covered), note))

    # module: block partition
    seen = [x for blk in spec.blocks for x in blk]
    empty = [spec.labels[b] for b, blk in enumerate(spec.blocks) if len(blk) == 0]
    part_ok = sorted(seen) == list(range(nE)) and not empty
    wit = None
    if not part_ok:
        wit = {"empty_blocks": [str(x) for x in empty],
               "missing": sorted(set(range(nE)) - set(seen)),
               "repeated": sorted({x for x in seen if seen.count(x) > 1})}
    rep.checks.append(Check("blocks_partition", part_ok, wit))

    # inner product symmetry
    fail = None
    for m in range(nE):
        for k in range(nE):
            lhs = list(spec.inner_tensor[k][m])
            rhs = A.star(spec.inner_tensor[m][k])
            if lhs != rhs:
                fail = {"pair": [m, k], "inner_nm": _vec_str(lhs), "star_inner_mn": _vec_str(rhs)}
                break
        if fail:
            break
    rep.checks.append(Check("inner_hermitian", fail is None, fail))

    # right A-linearity of the inner product
    fail, skipped = None, 0
    for m in range(nE):
        for k in range(nE):
            for r in range(n):
                ea = spec.act(spec.basis(k), eye[r])
                rhs = A.mul(spec.inner_tensor[m][k], eye[r])
                if ea is None or rhs is None:
                    skipped += 1
                    continue
                lhs = spec.inner(spec.basis(m), ea)
                if lhs != rhs and fail is None:
                    fail = {"m": m, "n": k, "r": r, "left": _vec_str(lhs), "right": _vec_str(rhs)}
    rep.checks.append(Check("inner_right_linear", fail is None, fail, skipped))

    # module action: unit and associativity
    fail, skipped = None, 0
    for m in range(nE):
        e = spec.basis(m)
        u = spec.act(e, one)
        if u is None:
            skipped += 1
        elif u != e and fail is None:
            fail = {"m": m, "unit_action": _vec_str(u)}
        for r in range(n):
            er = spec.act(e, eye[r])
            for s in range(n):
                rs = A.mul(eye[r], eye[s])
                if er is None or rs is None:
                    skipped += 1
                    continue
                left, right = spec.act(er, eye[s]), spec.act(e, rs)
                if left is None or right is None:
                    skipped += 1
                    continue
                if left != right and fail is None:
                    fail = {"m": m, "r": r, "s": s}
    rep.checks.append(Check("module_action", fail is None, fail, skipped))

    # τ-Gram: positivity and block orthonormality
    T = spec.tau_gram()
    bad = first_nonpositive_minor(T)
    rep.checks.append(Check("scalar_product_positive", bad is None and is_hermitian(T),
                            None if bad is None else {"order": bad[0], "minor": _s(bad[1])}))
    within, across = None, None
    for b, blk in enumerate(spec.blocks):
        for x, m in enumerate(blk):
            for y, k in enumerate(blk):
                want = ONE if x == y else ZERO
                if T[m, k] != want and within is None:
                    within = {"block": str(spec.labels[b]), "j": x + 1, "k": y + 1, "value": _s(T[m, k])}
    for b1, blk1 in enumerate(spec.blocks):
        for b2, blk2 in enumerate(spec.blocks):
            if b1 >= b2:
                continue
            for x, m in enumerate(blk1):
                for y, k in enumerate(blk2):
                    if T[m, k] and across is None:
                        across = {"blocks": [str(spec.labels[b1]), str(spec.labels[b2])],
                                  "j": x + 1, "k": y + 1, "value": _s(T[m, k])}
    rep.checks.append(Check("block_orthonormal", within is None, within))
    rep.checks.append(Check("blocks_orthogonal", across is None, across))

    # J
    try:
        mat_inverse(spec.j_matrix)
        j_ok = True
    except SingularMatrixError:
        j_ok = False
    rep.checks.append(Check("j_invertible", j_ok, None if j_ok else {"j_matrix": str(spec.j_matrix)}))

    # fullness: inner products span A
    rows = [list(spec.inner_tensor[m][k]) for m in range(nE) for k in range(nE)]
    rk = rank(rows)
    rep.checks.append(Check("fullness", rk == n, None if rk == n else {"rank": rk, "dim": n}))
    return rep


# ---------------------------------------------------------------------------
# the matrices s⁽ⁱ⁾ and p⁽ⁱ⁾


def left_gram(spec: FiltrationSpec, i) -> Matrix:
    """G[j][k] = τ(⟨J e_ij | J e_ik⟩_A); linear in j, antilinear in k."""
    b = spec.block_index(i)
    blk = spec.blocks[b]
    Je = [spec.apply_j(spec.basis(m)) for m in blk]
    A = spec.algebra
    return Matrix.from_rows([[A.tau(spec.inner(Je[j], Je[k])) for k in range(len(blk))]
                             for j in range(len(blk))])


def compute_s(spec: FiltrationSpec, i) -> Matrix:
    """Exact s⁽ⁱ⁾; equals pᵗ p̄ for the change of basis p from the left-orthonormal basis."""
    return left_gram(spec, i)


def _float_vec(v) -> np.ndarray:
    return np.array([complex(x) for x in v], dtype=complex)


def left_gram_float(spec: FiltrationSpec, i) -> np.ndarray:
    b = spec.block_index(i)
    blk = spec.blocks[b]
    H = np.array([[_float_vec(spec.inner_tensor[m][k]) for k in range(spec.module_dim)]
                  for m in range(spec.module_dim)])
    tau = _float_vec(spec.algebra.trace_vector)
    T = H @ tau
    J = spec.j_matrix.to_float()[:, list(blk)]
    # ⟨J e_j | J e_k⟩ with J e_j = Σ_l J[l, j] ε_l (coefficients of a basis vector are real)
    return J.conj().T @ T @ J


def compute_left_basis_float(spec: FiltrationSpec, i) -> tuple:
    """Gram–Schmidt under the left product; returns (p, F) with f = e F and p = F⁻¹,
    so that e_j = Σ_k p[k, j] f_k and pᵗ p̄ reproduces s⁽ⁱ⁾."""
    G = left_gram_float(spec, i)
    d = G.shape[0]
    tol = TOLERANCES["factorization"]
    F = np.zeros((d, d), dtype=complex)

    def prod(x, y):  # linear in x, antilinear in y
        return x @ G @ y.conj()

    for k in range(d):
        v = np.zeros(d, dtype=complex)
        v[k] = 1.0
        for _ in range(2):  # re-orthogonalize once for stability
            for q in range(k):
                v = v - prod(v, F[:, q]) * F[:, q]
        nrm = prod(v, v).real
        if nrm <= tol:
            raise SpecError(f"left Gram numerically singular in block {i!r}")
        F[:, k] = v / np.sqrt(nrm)
    p = np.linalg.inv(F)
    return p, F


def s_matrices(spec: FiltrationSpec) -> dict:
    return {lab: compute_s(spec, lab) for lab in spec.labels}
