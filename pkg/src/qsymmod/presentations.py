"""Named Woronowicz presentations: A_h(d), A_s(d), C(Z2), A_u(s), A_o(P)."""

from __future__ import annotations

from typing import Optional

from .arith import ONE, Matrix, mat_inverse
from .ncalg import (Family, Generator, NcPoly, Presentation, PresentationError, build_au,
                    multiplicative_tables, poly_bar, poly_matmul, scalar_matrix,
                    self_adjoint_antipode, tensor, tensor_product, unitarity_relations)


def hyperoctahedral(d: int, name: str = "u") -> Presentation:
    """Self-adjoint u with orthogonal rows/columns entries and square sums 1."""
    if d < 1:
        raise PresentationError("d must be >= 1")
    fam = Family(name, d, d)
    u = fam.matrix()
    rels = []
    for i in range(d):
        for j in range(d):
            rels.append(u[i][j].star() - u[i][j])
    for i in range(d):
        for j in range(d):
            for k in range(d):
                if j != k:
                    rels.append(u[i][j] * u[i][k])
                    rels.append(u[j][i] * u[k][i])
    for i in range(d):
        rels.append(sum((u[i][l] * u[i][l] for l in range(d)), NcPoly.zero()) - 1)
        rels.append(sum((u[l][i] * u[l][i] for l in range(d)), NcPoly.zero()) - 1)
    comul, counit = multiplicative_tables(fam)
    return Presentation(f"A_h({d})", (fam,), tuple(rels), comul, counit, self_adjoint_antipode(fam))


def quantum_permutation(d: int, name: str = "v") -> Presentation:
    """Self-adjoint projections with row and column sums 1.

    For d >= 3 the pairwise orthogonality inside rows and columns is added
    explicitly (it needs positivity, which pure rewriting cannot use).
    """
    if d < 1:
        raise PresentationError("d must be >= 1")
    fam = Family(name, d, d)
    v = fam.matrix()
    rels = []
    for i in range(d):
        for j in range(d):
            rels.append(v[i][j] * v[i][j] - v[i][j])
    for i in range(d):
        rels.append(sum((v[i][l] for l in range(d)), NcPoly.zero()) - 1)
    for i in range(d):
        rels.append(sum((v[l][i] for l in range(d)), NcPoly.zero()) - 1)
    if d >= 3:
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    if j != k:
                        rels.append(v[i][j] * v[i][k])
                        rels.append(v[j][i] * v[k][i])
    for i in range(d):
        for j in range(d):
            rels.append(v[i][j].star() - v[i][j])
    comul, counit = multiplicative_tables(fam)
    return Presentation(f"A_s({d})", (fam,), tuple(rels), comul, counit, self_adjoint_antipode(fam))


def z2(name: str = "z") -> Presentation:
    """Functions on Z2: one self-adjoint unitary, group-like."""
    fam = Family(name, 1, 1)
    z = NcPoly.gen(Generator(name, 1, 1))
    rels = (z.star() - z, z * z - 1)
    g = Generator(name, 1, 1)
    return Presentation("C(Z2)", (fam,), rels, {g: tensor(z, z)}, {g: ONE},
                        {g: z, g.star(): z})


def permutation_times_z2(d: int) -> Presentation:
    return tensor_product(quantum_permutation(d), z2(), f"A_s({d}) (x) C(Z2)")


def universal_unitary(s: Matrix, name: str = "u", block: Optional[int] = None) -> Presentation:
    return build_au(s, name, block)


def free_orthogonal(P: Matrix, name: str = "u") -> Presentation:
    """Unitary u with u = P ū P⁻¹."""
    n = P.rows
    Pinv = mat_inverse(P)
    fam = Family(name, n, n)
    u = fam.matrix()
    ub = poly_bar(u)
    twisted = poly_matmul(poly_matmul(scalar_matrix(P), ub), scalar_matrix(Pinv))
    rels = unitarity_relations(u)
    rels += [u[i][j] - twisted[i][j] for i in range(n) for j in range(n)]
    comul, counit = multiplicative_tables(fam)
    antipode = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            antipode[Generator(name, i, j)] = NcPoly.gen(Generator(name, j, i, None, True))
            acc = NcPoly.zero()
            for a in range(1, n + 1):
                for b in range(1, n + 1):
                    c = Pinv[i - 1, a - 1] * P[b - 1, j - 1]
                    if c:
                        acc = acc + NcPoly.gen(Generator(name, b, a, None, True), c)
            antipode[Generator(name, i, j, None, True)] = acc
    return Presentation(f"A_o({P})", (fam,), tuple(rels), comul, counit, antipode)


SWAP = Matrix.from_rows([[0, 1], [1, 0]])


def standard_presentation(name: str, **params) -> Presentation:
    key = name.replace(" ", "").lower()
    if key in ("a_h", "ah", "hyperoctahedral"):
        return hyperoctahedral(int(params.get("d", 2)))
    if key in ("a_s", "as", "permutation", "quantum-permutation"):
        return quantum_permutation(int(params.get("d", 2)))
    if key in ("c(z2)", "z2", "cz2"):
        return z2()
    if key in ("a_s(x)c(z2)", "as-z2", "permutation-z2"):
        return permutation_times_z2(int(params.get("d", 2)))
    if key in ("a_u", "au", "universal-unitary"):
        return universal_unitary(params["s"])
    if key in ("a_o", "ao", "free-orthogonal"):
        return free_orthogonal(params["P"])
    raise PresentationError(f"unknown presentation {name!r}")
