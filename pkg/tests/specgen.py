"""Seeded random valid specs: A = C^k with weights q_t^2, E = A^r, random blocks and J."""

from fractions import Fraction
import random

from qsymmod.arith import ONE, ZERO, Matrix, Scalar, determinant
from qsymmod.filtration import AlgebraData, FiltrationSpec

PYTHAGOREAN = [Fraction(3, 5), Fraction(4, 5), Fraction(5, 13), Fraction(12, 13),
               Fraction(8, 17), Fraction(15, 17), Fraction(1, 2), Fraction(1)]


def commutative_algebra(weights):
    k = len(weights)
    sc = tuple(tuple(tuple(ONE if (r == s == t) else ZERO for t in range(k)) for s in range(k))
               for r in range(k))
    return AlgebraData(k, sc, Matrix.identity(k), tuple([ONE] * k),
                       tuple(Scalar(w) for w in weights), tuple(f"p{t}" for t in range(k)))


def _gauss_rational(rng):
    return Scalar(Fraction(rng.randint(-4, 4), rng.randint(1, 3)), Fraction(rng.randint(-4, 4), rng.randint(1, 3)))


def random_spec(seed: int, max_dim: int = 6) -> FiltrationSpec:
    rng = random.Random(seed)
    k = rng.randint(1, 3)
    q = [rng.choice(PYTHAGOREAN) for _ in range(k)]
    alg = commutative_algebra([x * x for x in q])
    r = rng.randint(1, max(1, max_dim // k))
    nE = r * k
    # basis vector (l, t) is the t-th projection in copy l, scaled by 1/q_t
    vec = [(l, t) for l in range(r) for t in range(k)]
    inner = tuple(tuple(tuple(Scalar(1 / (q[t] * q[t])) if (m == n and u == t) else ZERO for u in range(k))
                        for n in range(nE)) for m, (l, t) in enumerate(vec))
    action = tuple(tuple(tuple(ONE if (n == m and s == t) else ZERO for n in range(nE)) for s in range(k))
                   for m, (l, t) in enumerate(vec))
    perm = list(range(nE))
    rng.shuffle(perm)
    cuts = sorted(rng.sample(range(1, nE), rng.randint(0, nE - 1))) if nE > 1 else []
    blocks, prev = [], 0
    for c in cuts + [nE]:
        blocks.append(tuple(sorted(perm[prev:c])))
        prev = c
    while True:
        J = Matrix.from_rows([[_gauss_rational(rng) for _ in range(nE)] for _ in range(nE)])
        if determinant(J):
            break
    return FiltrationSpec(alg, nE, tuple(blocks), inner, action, J, tuple([ZERO] * nE),
                          None, f"random-{seed}")
