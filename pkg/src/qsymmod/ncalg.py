"""Polynomials in the free *-algebra on indexed generators, and Woronowicz
presentations given by generators, relations and generator-level Δ, ε, S.

Text syntax (frozen; see README "Polynomial syntax")::

    poly    := '0' | term (('+' | '-') term)*
    term    := [coef] factor*            (at least one of the two)
    coef    := INT ['/' INT] | '(' complex ')'
    complex := rational | rational 'i' | rational ('+'|'-') rational 'i'
    factor  := '1' | letter
    letter  := NAME ['*'] ['[' [INT ';'] INT ',' INT ']'] ['@' INT]

``u[i;j,k]`` is entry (j, k) of the family ``u`` attached to block ``i``;
``u[j,k]`` has no block; a bare ``z`` is the single entry of a 1x1 family.
Indices are 1-based.  ``@s`` tags tensor slot ``s`` (slot 0 is omitted).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .arith import ONE, ZERO, Matrix, Scalar, is_hermitian_positive, mat_inverse


class PresentationError(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, msg: str, text: str, pos: int):
        super().__init__(f"{msg} at column {pos + 1}: {text!r}")
        self.pos = pos


@dataclass(frozen=True)
class Generator:
    family: str
    row: int
    col: int
    block: Optional[int] = None
    starred: bool = False
    slot: int = 0

    @cached_property
    def key(self) -> tuple:
        # canonical global order: slot, family, block, row, col, star flag
        b = (0, 0) if self.block is None else (1, self.block)
        return (self.slot, self.family, b, self.row, self.col, self.starred)

    def __lt__(self, other: "Generator") -> bool:
        return self.key < other.key

    def star(self) -> "Generator":
        return replace(self, starred=not self.starred)

    def base(self) -> "Generator":
        """The unstarred, slot-0 generator."""
        if not self.starred and self.slot == 0:
            return self
        return replace(self, starred=False, slot=0)

    def at_slot(self, slot: int) -> "Generator":
        return self if self.slot == slot else replace(self, slot=slot)

    def __str__(self) -> str:
        s = self.family + ("*" if self.starred else "")
        if not (self.block is None and self.row == 1 and self.col == 1 and _is_scalar_family(self.family)):
            idx = f"{self.row},{self.col}"
            if self.block is not None:
                idx = f"{self.block};{idx}"
            s += f"[{idx}]"
        if self.slot:
            s += f"@{self.slot}"
        return s


# Families printed without brackets when 1x1 and unblocked.
_SCALAR_FAMILIES = {"z"}


def _is_scalar_family(name: str) -> bool:
    return name in _SCALAR_FAMILIES


def register_scalar_family(name: str) -> None:
    _SCALAR_FAMILIES.add(name)


Word = tuple  # tuple[Generator, ...]


def word_key(w: Word) -> tuple:
    return (len(w), tuple(g.key for g in w))


def star_word(w: Word) -> Word:
    return tuple(g.star() for g in reversed(w))


class NcPoly:
    """Finite linear combination of words with :class:`Scalar` coefficients.

    Instances are treated as immutable once constructed.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Optional[Mapping] = None):
        if terms:
            self.terms = {w: c for w, c in terms.items() if c}
        else:
            self.terms = {}
        self._hash = None

    # constructors
    @classmethod
    def _raw(cls, terms: dict) -> "NcPoly":
        p = cls.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls) -> "NcPoly":
        return cls._raw({})

    @classmethod
    def one(cls) -> "NcPoly":
        return cls._raw({(): ONE})

    @classmethod
    def const(cls, c) -> "NcPoly":
        c = Scalar.coerce(c)
        return cls._raw({(): c} if c else {})

    @classmethod
    def gen(cls, g: Generator, coef=ONE) -> "NcPoly":
        return cls._raw({(g,): Scalar.coerce(coef)})

    @classmethod
    def word(cls, w: Iterable[Generator], coef=ONE) -> "NcPoly":
        c = Scalar.coerce(coef)
        return cls._raw({tuple(w): c} if c else {})

    @classmethod
    def parse(cls, text: str) -> "NcPoly":
        return parse_poly(text)

    # queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def generators(self) -> set:
        return {g for w in self.terms for g in w}

    def leading_word(self) -> Word:
        return max(self.terms, key=word_key)

    def constant_term(self) -> Scalar:
        return self.terms.get((), ZERO)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: word_key(t[0]), reverse=True)

    # arithmetic
    def __add__(self, other) -> "NcPoly":
        if not isinstance(other, NcPoly):
            other = NcPoly.const(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out.get(w)
            if v is None:
                out[w] = c
            else:
                v = v + c
                if v:
                    out[w] = v
                else:
                    del out[w]
        return NcPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "NcPoly":
        return NcPoly._raw({w: -c for w, c in self.terms.items()})

    def __sub__(self, other) -> "NcPoly":
        if not isinstance(other, NcPoly):
            other = NcPoly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "NcPoly":
        return NcPoly.const(other) - self

    def __mul__(self, other) -> "NcPoly":
        if not isinstance(other, NcPoly):
            c = Scalar.coerce(other)
            if not c:
                return NcPoly.zero()
            return NcPoly._raw({w: c * v for w, v in self.terms.items()})
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                v = out.get(w)
                c = c1 * c2
                if v is None:
                    out[w] = c
                else:
                    v = v + c
                    if v:
                        out[w] = v
                    else:
                        del out[w]
        return NcPoly._raw({w: c for w, c in out.items() if c})

    def __rmul__(self, other) -> "NcPoly":
        c = Scalar.coerce(other)
        return NcPoly._raw({w: c * v for w, v in self.terms.items()} if c else {})

    def __pow__(self, n: int) -> "NcPoly":
        out = NcPoly.one()
        for _ in range(n):
            out = out * self
        return out

    def star(self) -> "NcPoly":
        return NcPoly._raw({star_word(w): c.conj() for w, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, NcPoly):
            if isinstance(other, (int, Fraction, Scalar)):
                other = NcPoly.const(other)
            else:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # slots
    def at_slot(self, slot: int) -> "NcPoly":
        return NcPoly._raw({tuple(g.at_slot(slot) for g in w): c for w, c in self.terms.items()})

    def slot_ordered(self) -> "NcPoly":
        """Move letters of lower slots to the left (tensor factors commute)."""
        out: dict = {}
        for w, c in self.terms.items():
            nw = tuple(sorted(w, key=lambda g: g.slot)) if len(w) > 1 else w
            v = out.get(nw)
            out[nw] = c if v is None else v + c
        return NcPoly._raw({w: c for w, c in out.items() if c})

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"NcPoly({format_poly(self)!r})"


def gen_poly(family: str, row: int, col: int, block=None, starred=False, slot=0) -> NcPoly:
    return NcPoly.gen(Generator(family, row, col, block, starred, slot))


def tensor(*factors: NcPoly) -> NcPoly:
    """x1 ⊗ x2 ⊗ ... as a slot-tagged polynomial (slot k for factor k)."""
    out = NcPoly.one()
    for k, f in enumerate(factors, start=1):
        out = out * f.at_slot(k)
    return out.slot_ordered()


# ---------------------------------------------------------------------------
# substitution


def substitute(poly: NcPoly, assignment: Mapping[Generator, NcPoly] | Callable,
               anti: bool = False) -> NcPoly:
    """Homomorphic (or, with ``anti``, antihomomorphic) image of ``poly``.

    ``assignment`` maps generators to images; a starred generator missing from
    the mapping gets the star of its unstarred image.
    """
    lookup = assignment if callable(assignment) else _mapping_lookup(assignment)
    cache: dict = {}
    out = NcPoly.zero()
    for w, c in poly.terms.items():
        img = NcPoly.const(c)
        letters = reversed(w) if anti else w
        for g in letters:
            gi = cache.get(g)
            if gi is None:
                gi = lookup(g)
                if gi is None:
                    raise PresentationError(f"missing image for generator {g}")
                cache[g] = gi
            img = img * gi
            if not img:
                break
        out = out + img
    return out


def _mapping_lookup(assignment: Mapping[Generator, NcPoly]) -> Callable:
    def look(g: Generator):
        if g in assignment:
            return assignment[g]
        if g.starred and g.star() in assignment:
            return assignment[g.star()].star()
        return None
    return look


def identity_assignment(g: Generator) -> NcPoly:
    return NcPoly.gen(g)


# ---------------------------------------------------------------------------
# formatting and parsing


def format_scalar(c: Scalar) -> str:
    if c.is_real():
        return str(c.re)
    if not c.re:
        return f"({c.im}i)"
    sign = "+" if c.im > 0 else "-"
    return f"({c.re}{sign}{abs(c.im)}i)"


def format_poly(p: NcPoly) -> str:
    if not p.terms:
        return "0"
    parts = []
    for w, c in p.sorted_terms():
        neg = c.is_real() and c.re < 0
        mag = -c if neg else c
        word = " ".join(str(g) for g in w)
        if not w:
            body = format_scalar(mag)
        elif mag == ONE:
            body = word
        else:
            body = f"{format_scalar(mag)} {word}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<letter>[A-Za-z_][A-Za-z0-9_]*\*?
        (?:\[\s*(?:-?\d+\s*;\s*)?\d+\s*,\s*\d+\s*\])?
        (?:@\d+)?)
  | (?P<cplx>\(\s*[^()]*\))
  | (?P<num>\d+(?:\s*/\s*\d+)?)
  | (?P<op>[+\-])
""", re.VERBOSE)

_LETTER = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)(\*?)(?:\[\s*(?:(-?\d+)\s*;\s*)?(\d+)\s*,\s*(\d+)\s*\])?(?:@(\d+))?$")
_CPLX = re.compile(r"^\(\s*(?:([+-]?\s*\d+(?:/\d+)?)\s*(?:([+-])\s*(\d+(?:/\d+)?)?\s*i)?|([+-]?\s*(?:\d+(?:/\d+)?)?)\s*i)\s*\)$")


def parse_generator(text: str) -> Generator:
    m = _LETTER.match(text.strip())
    if not m:
        raise ParseError("bad generator", text, 0)
    name, star, block, row, col, slot = m.groups()
    return Generator(name, int(row) if row else 1, int(col) if col else 1,
                     int(block) if block is not None else None, bool(star), int(slot) if slot else 0)


def _parse_complex(tok: str, text: str, pos: int) -> Scalar:
    m = _CPLX.match(tok)
    if not m:
        raise ParseError("bad complex coefficient", text, pos)
    re_s, sign, im_s, pure_im = m.groups()
    if re_s is not None:
        re_v = Fraction(re_s.replace(" ", ""))
        if sign is None:
            return Scalar(re_v)
        im_v = Fraction(im_s) if im_s else Fraction(1)
        return Scalar(re_v, im_v if sign == "+" else -im_v)
    s = (pure_im or "1").replace(" ", "")
    if s in ("+", "-"):
        s += "1"
    return Scalar(0, Fraction(s))


def parse_poly(text: str) -> NcPoly:
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError("unexpected character", text, pos)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(kind), pos))
        pos = m.end()
    if not tokens:
        raise ParseError("empty polynomial", text, 0)
    out = NcPoly.zero()
    i = 0
    while i < len(tokens):
        sign = 1
        kind, tok, tpos = tokens[i]
        if kind == "op":
            sign = 1 if tok == "+" else -1
            i += 1
            if i == len(tokens):
                raise ParseError("missing term after operator", text, len(text))
            kind, tok, tpos = tokens[i]
        elif i > 0:
            raise ParseError("expected '+' or '-'", text, tpos)
        coef = Scalar(sign)
        seen = False
        if kind == "num":
            coef = coef * Scalar(Fraction(tok.replace(" ", "")))
            seen = True
            i += 1
        elif kind == "cplx":
            coef = coef * _parse_complex(tok, text, tpos)
            seen = True
            i += 1
        word = []
        while i < len(tokens) and tokens[i][0] in ("letter", "num"):
            k2, t2, p2 = tokens[i]
            if k2 == "num":
                if t2.strip() != "1":
                    raise ParseError("numeric factor other than 1 inside a word", text, p2)
            else:
                word.append(parse_generator(t2))
            seen = True
            i += 1
        if not seen:
            raise ParseError("expected a term", text, tpos)
        out = out + NcPoly.word(word, coef)
    return out


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class Family:
    name: str
    rows: int
    cols: int
    block: Optional[int] = None

    def generators(self) -> list:
        return [Generator(self.name, i, j, self.block)
                for i in range(1, self.rows + 1) for j in range(1, self.cols + 1)]

    def matrix(self, starred: bool = False) -> list:
        return [[NcPoly.gen(Generator(self.name, i, j, self.block, starred))
                 for j in range(1, self.cols + 1)] for i in range(1, self.rows + 1)]

    @property
    def label(self) -> tuple:
        return (self.name, self.block)


@dataclass(frozen=True)
class Presentation:
    """Generators and relations (each asserted = 0) plus coalgebra tables.

    ``comul`` maps unstarred generators to slot-tagged polynomials (slots 1, 2);
    ``counit`` maps unstarred generators to scalars; ``antipode`` maps every
    letter (starred ones included) to a polynomial.
    """

    name: str
    families: tuple
    relations: tuple
    comul: Mapping = field(default_factory=dict, compare=False)
    counit: Mapping = field(default_factory=dict, compare=False)
    antipode: Mapping = field(default_factory=dict, compare=False)

    def generators(self) -> list:
        return [g for f in self.families for g in f.generators()]

    def letters(self) -> list:
        return sorted([g for g in self.generators()] + [g.star() for g in self.generators()])

    def family(self, name: str, block=None) -> Family:
        for f in self.families:
            if f.name == name and f.block == block:
                return f
        raise KeyError((name, block))

    def labels(self) -> set:
        return {f.label for f in self.families}

    def max_relation_degree(self) -> int:
        return max((r.degree() for r in self.relations), default=0)

    def with_relations(self, extra: Iterable[NcPoly], name: Optional[str] = None) -> "Presentation":
        return replace(self, name=name or self.name, relations=self.relations + tuple(extra))

    def without_relation(self, index: int, name: Optional[str] = None) -> "Presentation":
        rels = self.relations[:index] + self.relations[index + 1:]
        return replace(self, name=name or f"{self.name} minus relation {index}", relations=rels)

    # coalgebra maps applied to polynomials
    def comul_of(self, g: Generator) -> NcPoly:
        img = self.comul.get(g.base())
        if img is None:
            raise PresentationError(f"no comultiplication for {g}")
        return img.star().slot_ordered() if g.starred else img

    def delta(self, poly: NcPoly) -> NcPoly:
        """Δ(poly) in the tensor-square alphabet (slots 1, 2)."""
        return substitute(poly, self.comul_of).slot_ordered()

    def counit_of(self, g: Generator) -> Scalar:
        c = self.counit.get(g.base())
        if c is None:
            raise PresentationError(f"no counit for {g}")
        return c.conj() if g.starred else c

    def epsilon(self, poly: NcPoly) -> Scalar:
        total = ZERO
        for w, c in poly.terms.items():
            v = c
            for g in w:
                v = v * self.counit_of(g)
                if not v:
                    break
            total = total + v
        return total

    def antipode_of(self, g: Generator) -> NcPoly:
        img = self.antipode.get(g)
        if img is None:
            raise PresentationError(f"no antipode for {g}")
        return img

    def apply_antipode(self, poly: NcPoly) -> NcPoly:
        return substitute(poly, self.antipode_of, anti=True)


def multiplicative_tables(fam: Family) -> tuple:
    """Δ(u_ij) = Σ_k u_ik ⊗ u_kj and ε(u_ij) = δ_ij for a square family."""
    d = fam.rows
    comul, counit = {}, {}
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            g = Generator(fam.name, i, j, fam.block)
            acc = NcPoly.zero()
            for k in range(1, d + 1):
                acc = acc + tensor(NcPoly.gen(Generator(fam.name, i, k, fam.block)),
                                   NcPoly.gen(Generator(fam.name, k, j, fam.block)))
            comul[g] = acc
            counit[g] = ONE if i == j else ZERO
    return comul, counit


def unitary_antipode(fam: Family, s: Optional[Matrix] = None) -> dict:
    """S(u_ij) = u*_ji and S(u*_ij) = (s⁻¹ uᵗ s)_ij."""
    d = fam.rows
    s = s or Matrix.identity(d)
    sinv = mat_inverse(s)
    out = {}
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            out[Generator(fam.name, i, j, fam.block)] = NcPoly.gen(Generator(fam.name, j, i, fam.block, True))
            acc = NcPoly.zero()
            for a in range(1, d + 1):
                for b in range(1, d + 1):
                    c = sinv[i - 1, a - 1] * s[b - 1, j - 1]
                    if c:
                        acc = acc + NcPoly.gen(Generator(fam.name, b, a, fam.block), c)
            out[Generator(fam.name, i, j, fam.block, True)] = acc
    return out


def self_adjoint_antipode(fam: Family) -> dict:
    """S(u_ij) = S(u*_ij) = u_ji for self-adjoint unitary families."""
    out = {}
    for i in range(1, fam.rows + 1):
        for j in range(1, fam.cols + 1):
            img = NcPoly.gen(Generator(fam.name, j, i, fam.block))
            out[Generator(fam.name, i, j, fam.block)] = img
            out[Generator(fam.name, i, j, fam.block, True)] = img
    return out


def matrix_entries_minus_identity(m: Sequence[Sequence[NcPoly]]) -> list:
    out = []
    for i, row in enumerate(m):
        for j, x in enumerate(row):
            out.append(x - (ONE if i == j else ZERO))
    return out


def poly_matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list:
    """Product of matrices whose entries are NcPoly or Scalar (order preserved)."""
    n, m, p = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = NcPoly.zero()
            for k in range(m):
                x, y = a[i][k], b[k][j]
                if isinstance(x, Scalar) and not x or isinstance(y, Scalar) and not y:
                    continue
                if isinstance(x, Scalar) and isinstance(y, Scalar):
                    acc = acc + NcPoly.const(x * y)
                elif isinstance(x, Scalar):
                    acc = acc + y * x
                else:
                    acc = acc + x * y
            row.append(acc)
        out.append(row)
    return out


def scalar_matrix(m: Matrix) -> list:
    return m.tolist()


def poly_transpose(m: Sequence[Sequence]) -> list:
    return [list(r) for r in zip(*m)]


def poly_bar(m: Sequence[Sequence[NcPoly]]) -> list:
    """Entrywise star (the matrix ū)."""
    return [[x.star() for x in r] for r in m]


def poly_dagger(m: Sequence[Sequence[NcPoly]]) -> list:
    return poly_transpose(poly_bar(m))


def unitarity_relations(u: Sequence[Sequence[NcPoly]]) -> list:
    return (matrix_entries_minus_identity(poly_matmul(u, poly_dagger(u)))
            + matrix_entries_minus_identity(poly_matmul(poly_dagger(u), u)))


def twisted_relations(u: Sequence[Sequence[NcPoly]], s: Matrix) -> list:
    """Entries of uᵗ s ū s⁻¹ − I and s ū s⁻¹ uᵗ − I."""
    sinv = mat_inverse(s)
    ut = poly_transpose(u)
    ub = poly_bar(u)
    first = poly_matmul(poly_matmul(poly_matmul(ut, scalar_matrix(s)), ub), scalar_matrix(sinv))
    second = poly_matmul(poly_matmul(poly_matmul(scalar_matrix(s), ub), scalar_matrix(sinv)), ut)
    return matrix_entries_minus_identity(first) + matrix_entries_minus_identity(second)


def build_au(s: Matrix, name: str = "u", block: Optional[int] = None) -> Presentation:
    """Universal presentation on a unitary multiplicative matrix twisted by ``s``."""
    if not is_hermitian_positive(s):
        raise PresentationError("twisting matrix must be Hermitian positive-definite")
    fam = Family(name, s.rows, s.rows, block)
    u = fam.matrix()
    rels = unitarity_relations(u) + twisted_relations(u, s)
    comul, counit = multiplicative_tables(fam)
    label = f"A_u({s})" if block is None else f"A_u^{block}({s})"
    return Presentation(label, (fam,), tuple(rels), comul, counit, unitary_antipode(fam, s))


def free_product(ps: Sequence[Presentation], name: Optional[str] = None) -> Presentation:
    if len(ps) == 1:
        return ps[0]
    seen: set = set()
    fams, rels = [], []
    comul, counit, antipode = {}, {}, {}
    for p in ps:
        clash = seen & p.labels()
        if clash:
            raise PresentationError(f"family label collision: {sorted(clash, key=str)}")
        seen |= p.labels()
        fams.extend(p.families)
        rels.extend(p.relations)
        comul.update(p.comul)
        counit.update(p.counit)
        antipode.update(p.antipode)
    return Presentation(name or " * ".join(p.name for p in ps), tuple(fams), tuple(rels),
                        comul, counit, antipode)


def commutator(x: NcPoly, y: NcPoly) -> NcPoly:
    return x * y - y * x


def tensor_product(p: Presentation, q: Presentation, name: Optional[str] = None) -> Presentation:
    """Algebraic tensor product: free product plus cross-commutation of all letters."""
    base = free_product([p, q], name or f"{p.name} (x) {q.name}")
    cross = [commutator(NcPoly.gen(a), NcPoly.gen(b)) for a in p.letters() for b in q.letters()]
    return base.with_relations(cross)


def tensor_square(p: Presentation) -> Presentation:
    """Presentation on left (slot 1) and right (slot 2) copies with cross-commutators."""
    fams = tuple(p.families)
    rels = [r.at_slot(1) for r in p.relations] + [r.at_slot(2) for r in p.relations]
    letters = p.letters()
    rels += [commutator(NcPoly.gen(a.at_slot(2)), NcPoly.gen(b.at_slot(1)))
             for a in letters for b in letters]
    return Presentation(f"{p.name} (x) {p.name}", fams, tuple(rels))


def circle_presentation(name: str = "u") -> Presentation:
    return build_au(Matrix.identity(1), name)


def scalar_presentation() -> Presentation:
    """The one-dimensional Woronowicz algebra C (no generators)."""
    return Presentation("C", (), ())


def check_coassociativity(p: Presentation) -> dict:
    """(Δ⊗id)Δ(g) == (id⊗Δ)Δ(g) termwise in the tensor cube, per generator."""
    out = {}
    for g in p.generators():
        d = p.comul_of(g)
        left = NcPoly.zero()
        right = NcPoly.zero()
        for w, c in d.terms.items():
            lw = NcPoly.const(c)
            rw = NcPoly.const(c)
            for x in w:
                if x.slot == 1:
                    lw = lw * p.comul_of(x.at_slot(0))  # slots 1,2
                    rw = rw * NcPoly.gen(x)
                else:
                    lw = lw * NcPoly.gen(x.at_slot(3))
                    rw = rw * _shift_slots(p.comul_of(x.at_slot(0)), 1)
            left = left + lw
            right = right + rw
        out[g] = left.slot_ordered() == right.slot_ordered()
    return out


def _shift_slots(poly: NcPoly, by: int) -> NcPoly:
    return NcPoly._raw({tuple(g.at_slot(g.slot + by) for g in w): c for w, c in poly.terms.items()})


def shift_slots(poly: NcPoly, by: int) -> NcPoly:
    return _shift_slots(poly, by)


def counit_kills_relations(p: Presentation) -> list:
    """Indices of relations not annihilated by ε (empty when ε is a character)."""
    return [i for i, r in enumerate(p.relations) if p.epsilon(r)]
