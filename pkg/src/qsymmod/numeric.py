"""Floating-point side: evaluation at classical points, falsification,
the Cholesky cross-check for s⁽ⁱ⁾, and the segments eigenbasis check."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Sequence

import numpy as np

from .arith import TOLERANCES
from .ncalg import Family, Generator, NcPoly, Presentation

DEFAULT_SEED = 20240613
_SEED = [DEFAULT_SEED]


def set_seed(seed: int) -> None:
    """Seed used when sampling classical points of large presentations."""
    _SEED[0] = int(seed)


class NumericError(ValueError):
    pass


@dataclass(frozen=True)
class ClassicalPoint:
    """One complex matrix per family label (name, block)."""

    values: tuple  # tuple of ((name, block), matrix as tuple of tuples)
    label: str = ""

    @classmethod
    def make(cls, mapping: Mapping, label: str = "") -> "ClassicalPoint":
        items = []
        for key in sorted(mapping, key=lambda k: (k[0], (0, 0) if k[1] is None else (1, k[1]))):
            m = np.asarray(mapping[key], dtype=complex)
            items.append((key, tuple(tuple(complex(x) for x in row) for row in m)))
        return cls(tuple(items), label)

    def matrix(self, name: str, block=None) -> np.ndarray:
        for key, m in self.values:
            if key == (name, block):
                return np.array(m, dtype=complex)
        raise NumericError(f"point has no value for family {name!r} block {block!r}")

    def value(self, g: Generator) -> complex:
        for key, m in self.values:
            if key == (g.family, g.block):
                x = m[g.row - 1][g.col - 1]
                return x.conjugate() if g.starred else x
        raise NumericError(f"point does not cover generator {g}")

    def describe(self) -> dict:
        out = {}
        for (name, block), m in self.values:
            k = name if block is None else f"{name}[{block}]"
            out[k] = [[_fmt_complex(x) for x in row] for row in m]
        return out


def _fmt_complex(x: complex) -> str:
    re = 0.0 if abs(x.real) < 1e-15 else x.real
    im = 0.0 if abs(x.imag) < 1e-15 else x.imag
    if im == 0:
        return f"{re:.12g}"
    return f"{re:.12g}{im:+.12g}i"


def eval_at_point(poly: NcPoly, point, slots: Optional[Mapping[int, ClassicalPoint]] = None) -> complex:
    """Evaluate with every generator a commuting scalar.  Letters tagged with a
    tensor slot s use ``slots[s]`` (defaulting to ``point``)."""
    cache: dict = {}
    total = 0j
    for w, c in poly.terms.items():
        v = complex(c)
        for g in w:
            x = cache.get(g)
            if x is None:
                pt = point if not g.slot or slots is None else slots.get(g.slot, point)
                x = pt.value(g)
                cache[g] = x
            v *= x
            if v == 0:
                break
        total += v
    return total


# ---------------------------------------------------------------------------
# point families


def signed_permutations(d: int) -> Iterator[np.ndarray]:
    """Permutations in lexicographic order, each with signs (+ before -)."""
    for perm in itertools.permutations(range(d)):
        for signs in itertools.product((1, -1), repeat=d):
            m = np.zeros((d, d), dtype=complex)
            for r, c in enumerate(perm):
                m[r, c] = signs[r]
            yield m


def permutations(d: int) -> Iterator[np.ndarray]:
    for perm in itertools.permutations(range(d)):
        m = np.zeros((d, d), dtype=complex)
        for r, c in enumerate(perm):
            m[r, c] = 1
        yield m


def phased_permutations(d: int) -> Iterator[np.ndarray]:
    """Monomial matrices with fourth-root-of-unity entries."""
    phases = (1, 1j, -1, -1j)
    for perm in itertools.permutations(range(d)):
        for ph in itertools.product(phases, repeat=d):
            m = np.zeros((d, d), dtype=complex)
            for r, c in enumerate(perm):
                m[r, c] = ph[r]
            yield m


_CAYLEY2 = np.array([[1, 1j], [1, -1j]], dtype=complex) / math.sqrt(2)


def family_candidates(fam: Family) -> list:
    d = fam.rows
    if fam.rows != fam.cols:
        raise NumericError("only square families have classical candidates")
    if d > 3:
        return []
    out = list(phased_permutations(d))
    if d == 2:
        # conjugates of real signed permutations: points of twisted orthogonal groups
        out += [_CAYLEY2 @ m @ _CAYLEY2.conj().T for m in signed_permutations(2)]
    seen, uniq = set(), []
    for m in out:
        key = tuple(np.round(m, 9).ravel().tolist())
        if key not in seen:
            seen.add(key)
            uniq.append(m)
    return uniq


def _holds(relations: Sequence[NcPoly], point: ClassicalPoint, tol: float) -> bool:
    return all(abs(eval_at_point(r, point)) <= tol for r in relations)


def presentation_points(p: Presentation, limit: int = 4096, seed: Optional[int] = None,
                        tol: Optional[float] = None) -> list:
    """Classical points of a presentation among the standard candidates.

    Families are filtered one at a time on their own relations, then the
    product is filtered on the rest.  Products larger than ``limit`` are
    sampled with a seeded generator.
    """
    tol = TOLERANCES["relation"] if tol is None else tol
    per_family = []
    for fam in p.families:
        own = [r for r in p.relations if {(g.family, g.block) for g in r.generators()} <= {fam.label}]
        good = []
        for m in family_candidates(fam):
            pt = ClassicalPoint.make({fam.label: m})
            if _holds(own, pt, tol):
                good.append(m)
        per_family.append(good)
    if not p.families:
        return [ClassicalPoint.make({}, "trivial")]
    total = 1
    for g in per_family:
        total *= len(g)
    if total == 0:
        return []
    if total <= limit:
        combos = itertools.product(*[range(len(g)) for g in per_family])
    else:
        rng = np.random.default_rng(_SEED[0] if seed is None else seed)
        combos = [tuple(int(rng.integers(len(g))) for g in per_family) for _ in range(limit)]
    out = []
    seen = set()
    for idx in combos:
        if idx in seen:
            continue
        seen.add(idx)
        mapping = {fam.label: per_family[k][i] for k, (fam, i) in enumerate(zip(p.families, idx))}
        pt = ClassicalPoint.make(mapping, "/".join(str(i) for i in idx))
        if _holds(p.relations, pt, tol):
            out.append(pt)
    return out


def family_points(fam_label: tuple, kind: str, d: int) -> list:
    gen = {"signed": signed_permutations, "perm": permutations, "phased": phased_permutations}[kind]
    return [ClassicalPoint.make({fam_label: m}) for m in gen(d)]


@dataclass
class Witness:
    point: ClassicalPoint
    relation_index: int
    value: complex

    def to_json(self) -> dict:
        return {"point": self.point.describe(), "relation_index": self.relation_index,
                "abs_value": float(f"{abs(self.value):.12g}")}


def falsify(relations: Sequence[NcPoly], points: Iterable[ClassicalPoint],
            tol: Optional[float] = None, slots: Optional[Mapping] = None) -> Optional[Witness]:
    """First point (in enumeration order) where some relation exceeds the tolerance."""
    tol = TOLERANCES["relation"] if tol is None else tol
    if not relations:
        return None
    for pt in points:
        for k, r in enumerate(relations):
            v = eval_at_point(r, pt, slots)
            if abs(v) > tol:
                return Witness(pt, k, v)
    return None


def falsify_in(p: Presentation, poly: NcPoly, points: Optional[list] = None,
               tol: Optional[float] = None) -> Optional[Witness]:
    """Look for a classical point of ``p`` where ``poly`` does not vanish.

    Polynomials in a tensor alphabet are evaluated on pairs of points."""
    tol = TOLERANCES["relation"] if tol is None else tol
    pts = presentation_points(p) if points is None else points
    slots = sorted({g.slot for g in poly.generators()})
    if not slots or slots == [0]:
        return falsify([poly], pts, tol)
    for combo in itertools.product(pts, repeat=len(slots)):
        mapping = dict(zip(slots, combo))
        v = eval_at_point(poly, combo[0], mapping)
        if abs(v) > tol:
            return Witness(ClassicalPoint(tuple(x for pt in combo for x in pt.values),
                                          "x".join(pt.label for pt in combo)), 0, v)
    return None


# ---------------------------------------------------------------------------
# Cholesky oracle for s = pᵗ p̄


def cholesky_oracle(s) -> np.ndarray:
    """A factor p with pᵗ p̄ = s.  With s = L L^† (Cholesky), p = Lᵗ."""
    s = np.asarray(s, dtype=complex)
    if not np.allclose(s, s.conj().T, atol=TOLERANCES["factorization"]):
        raise NumericError("matrix is not Hermitian")
    try:
        L = np.linalg.cholesky(s)
    except np.linalg.LinAlgError as exc:
        raise NumericError("matrix is not positive definite") from exc
    return L.T


def reconstruct_s(p: np.ndarray) -> np.ndarray:
    return p.T @ p.conj()


def max_abs(a) -> float:
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0


# ---------------------------------------------------------------------------
# segments: eigenvectors of D0 = [[0, -d/dx], [d/dx, 0]]


@dataclass(frozen=True)
class TrigTerm:
    """coef · π^power · f(πk x) with f in {sin, cos}."""

    kind: str
    k: int
    coef: Fraction
    power: int = 0

    def derivative(self) -> "TrigTerm":
        if self.kind == "sin":
            return TrigTerm("cos", self.k, self.coef * self.k, self.power + 1)
        return TrigTerm("sin", self.k, -self.coef * self.k, self.power + 1)

    def scale(self, c: Fraction, dpow: int = 0) -> "TrigTerm":
        return TrigTerm(self.kind, self.k, self.coef * c, self.power + dpow)

    def at(self, x: Fraction) -> tuple:
        """Exact value at x ∈ {0, 1}: (rational multiple, π power)."""
        if x not in (0, 1):
            raise ValueError("exact evaluation only at the endpoints")
        if self.kind == "sin":
            return Fraction(0), self.power
        return self.coef * (1 if x == 0 or self.k % 2 == 0 else -1), self.power


def _canon(terms: Sequence[TrigTerm]) -> dict:
    out: dict = {}
    for t in terms:
        if t.coef == 0:
            continue
        key = (t.kind, abs(t.k), t.power)
        # sin is odd, cos is even in k
        c = t.coef * (-1 if t.kind == "sin" and t.k < 0 else 1)
        out[key] = out.get(key, Fraction(0)) + c
    return {k: v for k, v in out.items() if v != 0}


def apply_d0(f: Sequence[TrigTerm], g: Sequence[TrigTerm]) -> tuple:
    """D0 (f, g) = (−g', f')."""
    return [t.derivative().scale(Fraction(-1)) for t in g], [t.derivative() for t in f]


def _exact_integral_cos_cos(n: int, m: int) -> Fraction:
    n, m = abs(n), abs(m)
    if n == m == 0:
        return Fraction(1)
    return Fraction(1, 2) if n == m else Fraction(0)


def _exact_integral_sin_sin(n: int, m: int) -> Fraction:
    n, m = abs(n), abs(m)
    if n == 0 or m == 0 or n != m:
        return Fraction(0)
    return Fraction(1, 2)


def gauss_legendre(fn, npts: int) -> float:
    x, w = np.polynomial.legendre.leggauss(npts)
    xs = 0.5 * (x + 1.0)
    return float(0.5 * np.sum(w * fn(xs)))


def verify_segments_eigenbasis(N: int, quadrature_points: int = 64) -> dict:
    if N < 1:
        raise ValueError("N must be >= 1")
    tol = TOLERANCES["quadrature"]
    eig = []
    ok = True
    for k in range(-N, N + 1):
        f = [TrigTerm("sin", k, Fraction(1))]
        g = [TrigTerm("cos", k, Fraction(1))]
        df, dg = apply_d0(f, g)
        # expected: π k (f, g)
        want_f = [t.scale(Fraction(k), 1) for t in f]
        want_g = [t.scale(Fraction(k), 1) for t in g]
        match = _canon(df) == _canon(want_f) and _canon(dg) == _canon(want_g)
        boundary = all(t.at(Fraction(x))[0] == 0 for t in f for x in (0, 1))
        ok &= match and boundary
        eig.append({"k": k, "eigenvalue": f"{k}*pi" if k else "0", "eigen_equation": match,
                    "sin_vanishes_at_endpoints": boundary})
    ortho = []
    worst = 0.0
    for n in range(0, N + 1):
        for m in range(0, N + 1):
            for kind, exact, fn in (
                    ("cos*cos", _exact_integral_cos_cos(n, m),
                     lambda x, n=n, m=m: np.cos(np.pi * n * x) * np.cos(np.pi * m * x)),
                    ("sin*sin", _exact_integral_sin_sin(n, m),
                     lambda x, n=n, m=m: np.sin(np.pi * n * x) * np.sin(np.pi * m * x))):
                q = gauss_legendre(fn, quadrature_points)
                err = abs(q - float(exact))
                worst = max(worst, err)
                ortho.append({"n": n, "m": m, "integrand": kind, "exact": str(exact),
                              "within_tolerance": err < tol})
    # module basis τ-Gram: ∫ sin(πn)sin(πm) + cos(πn)cos(πm) = δ_nm
    gram_ok = True
    for n in range(-N, N + 1):
        for m in range(-N, N + 1):
            exact = (_exact_integral_sin_sin(n, m) * (1 if n * m >= 0 else -1)
                     + _exact_integral_cos_cos(n, m))
            gram_ok &= exact == (1 if n == m else 0)
            q = gauss_legendre(lambda x: np.cos(np.pi * (n - m) * x), quadrature_points)
            err = abs(q - float(exact))
            worst = max(worst, err)
            gram_ok &= err < tol
    quad_ok = all(o["within_tolerance"] for o in ortho)
    return {"N": N, "quadrature_points": quadrature_points, "eigen": eig,
            "orthonormality": ortho, "module_gram_identity": gram_ok,
            "max_quadrature_error_below_tolerance": worst < tol,
            "ok": bool(ok and quad_ok and gram_ok)}
