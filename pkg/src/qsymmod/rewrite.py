"""Degree-truncated Buchberger–Mora completion in the free algebra on letters
g and g* (treated as independent), with replayable reduction traces.

Internally words are tuples of small ints.  Each system owns an alphabet in
which codes are assigned in the global generator order, so deg-lex on codes
is deg-lex on generators.  Letters that only appear in reduced inputs get
fresh codes above the alphabet; deg-lex stays a monomial order, which is all
reduction needs.
"""

from __future__ import annotations

import hashlib
import heapq
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .arith import ONE, Scalar
from .ncalg import Generator, NcPoly, Presentation

PROVEN = "Proven"
INCONCLUSIVE = "Inconclusive"
REFUTED = "RefutedNumerically"


class DegreeOverflow(ValueError):
    pass


@dataclass(frozen=True)
class RewriteConfig:
    max_degree: int = 4
    max_passes: int = 64
    max_rules: int = 20000
    monomial_order: str = "deglex"

    def __post_init__(self):
        if self.monomial_order != "deglex":
            raise ValueError("only the deg-lex order is supported")
        if self.max_degree < 1:
            raise ValueError("max_degree must be positive")

    def to_json(self) -> dict:
        return {"max_degree": self.max_degree, "max_passes": self.max_passes,
                "max_rules": self.max_rules, "monomial_order": self.monomial_order}

    @classmethod
    def from_json(cls, d: dict) -> "RewriteConfig":
        return cls(int(d.get("max_degree", 4)), int(d.get("max_passes", 64)),
                   int(d.get("max_rules", 20000)), d.get("monomial_order", "deglex"))


@dataclass
class Rule:
    id: int
    lead: tuple          # code word
    tail: dict           # code word -> Scalar; lead -> tail means lead = tail mod ideal
    source: tuple        # ("input", k) | ("overlap", a, b, k) | ("retired", rule id)
    scale: Scalar        # source reduced by `derivation` equals scale * (lead - tail)
    derivation: list     # reduction steps applied to the source
    active: bool = True


@dataclass
class MembershipCertificate:
    status: str
    reduction_trace: list = field(default_factory=list)   # (rule id, word, pos)
    basis_size: int = 0
    degree_reached: int = 0
    normal_form: Optional[NcPoly] = None
    rules: dict = field(default_factory=dict)              # rule id -> NcPoly used in trace
    complete: bool = True
    note: str = ""

    @property
    def proven(self) -> bool:
        return self.status == PROVEN

    def digest(self) -> str:
        h = hashlib.sha256()
        for rid, word, pos in self.reduction_trace:
            h.update(f"{rid}|{' '.join(map(str, word))}|{pos};".encode())
        return h.hexdigest()

    def to_json(self) -> dict:
        out = {"status": self.status, "trace_steps": len(self.reduction_trace),
               "trace_sha256": self.digest(), "basis_size": self.basis_size,
               "degree_reached": self.degree_reached, "complete": self.complete}
        if self.status != PROVEN and self.normal_form is not None:
            out["normal_form"] = str(self.normal_form)
        if self.note:
            out["note"] = self.note
        return out


# ---------------------------------------------------------------------------
# alphabets and conversions


class Alphabet:
    def __init__(self, letters: Iterable[Generator]):
        ordered = sorted(set(letters), key=lambda g: g.key)
        self.letters: list = list(ordered)
        self.code: dict = {g: i for i, g in enumerate(ordered)}
        self.size = len(ordered)

    def encode_letter(self, g: Generator) -> int:
        c = self.code.get(g)
        if c is None:
            c = len(self.letters)
            self.letters.append(g)
            self.code[g] = c
        return c

    def encode(self, p: NcPoly) -> dict:
        enc = self.encode_letter
        return {tuple(enc(g) for g in w): c for w, c in p.terms.items()}

    def decode_word(self, w: tuple) -> tuple:
        L = self.letters
        return tuple(L[c] for c in w)

    def decode(self, terms: dict) -> NcPoly:
        return NcPoly({self.decode_word(w): c for w, c in terms.items()})


def _key(w: tuple) -> tuple:
    return (len(w), w)


def _lead(terms: dict) -> tuple:
    return max(terms, key=_key)


def _heap_key(w: tuple) -> tuple:
    return (-len(w), tuple(-c for c in w))


def _add_into(acc: dict, w: tuple, c: Scalar) -> None:
    v = acc.get(w)
    if v is None:
        acc[w] = c
    else:
        v = v + c
        if v:
            acc[w] = v
        else:
            del acc[w]


# ---------------------------------------------------------------------------
# the system


class RewriteSystem:
    """Reduction rules over an alphabet; confluent up to ``degree_bound`` when
    ``complete`` is true."""

    def __init__(self, alphabet: Alphabet, degree_bound: int):
        self.alphabet = alphabet
        self.degree_bound = degree_bound
        self.rules: list = []          # every rule ever created, by id
        self.index: dict = {}          # lead -> active rule
        self.lead_lengths: list = []
        self.complete = True
        self.passes = 0
        self.truncated_overlaps = 0
        self.inputs: list = []         # encoded input polynomials

    # rule bookkeeping
    def active_rules(self) -> list:
        return [r for r in self.rules if r.active]

    @property
    def size(self) -> int:
        return len(self.index)

    def _refresh_lengths(self) -> None:
        self.lead_lengths = sorted({len(w) for w in self.index})

    def _find(self, w: tuple):
        """Leftmost-shortest rule occurrence inside w, as (rule, pos)."""
        index = self.index
        n = len(w)
        for pos in range(n):
            for L in self.lead_lengths:
                if pos + L > n:
                    break
                r = index.get(w[pos:pos + L])
                if r is not None:
                    return r, pos
        return None

    def rule_poly(self, r: Rule) -> NcPoly:
        terms = dict(r.tail)
        terms = {w: -c for w, c in terms.items()}
        terms[r.lead] = ONE
        return self.alphabet.decode(terms)

    def _reduce_terms(self, terms: dict, record: bool = True) -> tuple:
        """Full reduction of an encoded polynomial; returns (normal form, steps)."""
        work = dict(terms)
        heap = [(_heap_key(w), w) for w in work]
        heapq.heapify(heap)
        out: dict = {}
        steps: list = []
        find = self._find
        while heap:
            _, w = heapq.heappop(heap)
            c = work.pop(w, None)
            if c is None:
                continue
            hit = find(w) if self.index else None
            if hit is None:
                out[w] = c
                continue
            r, pos = hit
            if record:
                steps.append((r.id, w, pos))
            left, right = w[:pos], w[pos + len(r.lead):]
            for tw, tc in r.tail.items():
                nw = left + tw + right
                had = nw in work
                _add_into(work, nw, c * tc)
                if not had and nw in work:
                    heapq.heappush(heap, (_heap_key(nw), nw))
        return out, steps

    # public API
    def reduce(self, poly: NcPoly, allow_overflow: bool = False) -> tuple:
        return reduce(self, poly, allow_overflow)

    def to_json(self) -> dict:
        return {
            "complete": self.complete,
            "passes": self.passes,
            "degree_bound": self.degree_bound,
            "rules": [str(self.rule_poly(r)) for r in self.active_rules()],
        }


def _monic(terms: dict) -> tuple:
    lw = _lead(terms)
    lc = terms[lw]
    inv = lc.inverse()
    tail = {w: -(c * inv) for w, c in terms.items() if w != lw}
    return lw, tail, lc


def _overlaps(a: tuple, b: tuple, bound: int) -> list:
    """Proper overlaps k: suffix of a of length k equals prefix of b."""
    out = []
    la, lb = len(a), len(b)
    for k in range(1, min(la, lb)):
        if la + lb - k > bound:
            continue
        if a[la - k:] == b[:k]:
            out.append(k)
    return out


def _spoly(sys: RewriteSystem, a: Rule, b: Rule, k: int) -> dict:
    """a.lead = X·B, b.lead = B·Y with |B| = k:  (a)·Y − X·(b)."""
    X = a.lead[:len(a.lead) - k]
    Y = b.lead[k:]
    acc: dict = {}
    for w, c in a.tail.items():
        _add_into(acc, w + Y, -c)
    for w, c in b.tail.items():
        _add_into(acc, X + w, c)
    return acc


def _with_stars(relations: Sequence[NcPoly]) -> list:
    out, seen = [], set()
    for r in relations:
        for q in (r, r.star()):
            if q and q not in seen and -q not in seen:
                seen.add(q)
                out.append(q)
    return out


_CACHE: dict = {}


def complete(source, cfg: RewriteConfig) -> RewriteSystem:
    """Complete a presentation (or a list of relations) up to ``cfg.max_degree``."""
    relations = source.relations if isinstance(source, Presentation) else tuple(source)
    key = (tuple(relations), cfg)
    hit = _CACHE.get(key)
    if hit is not None:
        return hit
    rels = _with_stars(relations)
    too_big = [r for r in rels if r.degree() > cfg.max_degree]
    if too_big:
        raise DegreeOverflow(f"relation of degree {too_big[0].degree()} exceeds bound {cfg.max_degree}")
    letters = {g for r in rels for g in r.generators()}
    letters |= {g.star() for g in letters}
    sys = RewriteSystem(Alphabet(letters), cfg.max_degree)
    sys.inputs = [sys.alphabet.encode(r) for r in rels]

    seq = 0
    batch = []
    for k, t in enumerate(sys.inputs):
        batch.append((_key(_lead(t)), seq, t, ("input", k)))
        seq += 1

    while batch:
        if sys.passes >= cfg.max_passes:
            sys.complete = False
            break
        sys.passes += 1
        batch.sort(key=lambda x: (x[0], x[1]))
        nxt = []
        for _, _, terms, src in batch:
            nf, steps = sys._reduce_terms(terms)
            if not nf:
                continue
            if len(sys.index) >= cfg.max_rules:
                sys.complete = False
                nxt = []
                break
            lead, tail, lc = _monic(nf)
            rule = Rule(len(sys.rules), lead, tail, src, lc, steps)
            sys.rules.append(rule)
            # retire rules whose lead contains the new lead
            for old in list(sys.index.values()):
                if old is rule or not _contains(old.lead, lead):
                    continue
                old.active = False
                del sys.index[old.lead]
                t = dict(old.tail)
                t = {w: -c for w, c in t.items()}
                t[old.lead] = ONE
                nxt.append((_key(old.lead), seq, t, ("retired", old.id)))
                seq += 1
            sys.index[lead] = rule
            sys._refresh_lengths()
            for other in list(sys.index.values()):
                for a, b in ((rule, other), (other, rule)) if other is not rule else ((rule, rule),):
                    for k in _overlaps(a.lead, b.lead, 10 ** 9):
                        if len(a.lead) + len(b.lead) - k > cfg.max_degree:
                            sys.truncated_overlaps += 1
                            continue
                        sp = _spoly(sys, a, b, k)
                        if sp:
                            w = a.lead + b.lead[k:]
                            nxt.append((_key(w), seq, sp, ("overlap", a.id, b.id, k)))
                            seq += 1
        batch = nxt
    _CACHE[key] = sys
    return sys


def _contains(big: tuple, small: tuple) -> bool:
    n, m = len(big), len(small)
    if m > n:
        return False
    for i in range(n - m + 1):
        if big[i:i + m] == small:
            return True
    return False


def reduce(sys: RewriteSystem, poly: NcPoly, allow_overflow: bool = False) -> tuple:
    deg = poly.degree()
    if deg > sys.degree_bound and not allow_overflow:
        raise DegreeOverflow(f"degree {deg} exceeds bound {sys.degree_bound}")
    terms = sys.alphabet.encode(poly)
    nf, steps = sys._reduce_terms(terms)
    used = sorted({rid for rid, _, _ in steps})
    rules = {rid: sys.rule_poly(sys.rules[rid]) for rid in used}
    trace = [(rid, sys.alphabet.decode_word(w), pos) for rid, w, pos in steps]
    nf_poly = sys.alphabet.decode(nf)
    status = PROVEN if not nf else INCONCLUSIVE
    note = ""
    if status == INCONCLUSIVE:
        if deg > sys.degree_bound:
            note = f"degree {deg} beyond completion bound {sys.degree_bound}"
        elif not sys.complete:
            note = "completion stopped before closure"
        else:
            note = f"nonzero normal form at bound {sys.degree_bound}"
    cert = MembershipCertificate(status, trace, sys.size, max(deg, 0), nf_poly, rules,
                                 sys.complete, note)
    return nf_poly, cert


def implies(source_relations: Sequence[NcPoly], target: NcPoly, cfg: RewriteConfig) -> MembershipCertificate:
    sys = complete(tuple(source_relations), cfg)
    return reduce(sys, target, allow_overflow=True)[1]


def replay(poly: NcPoly, cert: MembershipCertificate) -> NcPoly:
    """Apply a certificate's trace with plain polynomial arithmetic."""
    p = poly
    for rid, word, pos in cert.reduction_trace:
        rule = cert.rules[rid]
        c = p.terms.get(tuple(word))
        if c is None:
            raise ValueError(f"trace step on absent word {word}")
        lead_len = len(rule.leading_word())
        left = NcPoly.word(word[:pos], c)
        right = NcPoly.word(word[pos + lead_len:])
        p = p - left * rule * right
    return p


def audit_rule(sys: RewriteSystem, rule: Rule) -> bool:
    """Re-derive a rule from its recorded source, independently of the engine."""
    alpha = sys.alphabet
    kind = rule.source[0]
    if kind == "input":
        src = alpha.decode(sys.inputs[rule.source[1]])
    elif kind == "retired":
        src = sys.rule_poly(sys.rules[rule.source[1]])
    else:
        _, a, b, k = rule.source
        ra, rb = sys.rule_poly(sys.rules[a]), sys.rule_poly(sys.rules[b])
        la = sys.rules[a].lead
        X = alpha.decode_word(la[:len(la) - k])
        Y = alpha.decode_word(sys.rules[b].lead[k:])
        src = ra * NcPoly.word(Y) - NcPoly.word(X) * rb
    p = src
    for rid, w, pos in rule.derivation:
        r = sys.rules[rid]
        word = alpha.decode_word(w)
        c = p.terms[word]
        p = p - NcPoly.word(word[:pos], c) * sys.rule_poly(r) * NcPoly.word(word[pos + len(r.lead):])
    return p == sys.rule_poly(rule) * rule.scale


def tensor_system(sys: RewriteSystem, slots: Sequence[int] = (1, 2)) -> RewriteSystem:
    """Rules for Q⊗Q (or higher tensor powers) from a completed system of Q.

    Slot copies of every active rule plus commutation rules y@b x@a → x@a y@b
    for b > a.  Leads of different kinds never overlap in a way that needs new
    rules, so no completion is run.
    """
    base = [g for g in sys.alphabet.letters[:sys.alphabet.size]]
    letters = [g.at_slot(s) for s in slots for g in base]
    out = RewriteSystem(Alphabet(letters), sys.degree_bound * len(slots))
    out.complete = sys.complete
    rid = 0
    for s in slots:
        for r in sys.active_rules():
            poly = sys.rule_poly(r).at_slot(s)
            terms = out.alphabet.encode(poly)
            lead, tail, lc = _monic(terms)
            rule = Rule(rid, lead, tail, ("slot", s, r.id), lc, [])
            out.rules.append(rule)
            out.index[lead] = rule
            rid += 1
    for ia, a in enumerate(slots):
        for b in slots[ia + 1:]:
            for y in base:
                for x in base:
                    yb, xa = y.at_slot(b), x.at_slot(a)
                    lead = (out.alphabet.code[yb], out.alphabet.code[xa])
                    tail = {(out.alphabet.code[xa], out.alphabet.code[yb]): ONE}
                    rule = Rule(rid, lead, tail, ("commute", a, b), ONE, [])
                    out.rules.append(rule)
                    out.index[lead] = rule
                    rid += 1
    out._refresh_lengths()
    return out
