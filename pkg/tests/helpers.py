"""Shared generators and independent oracles for the test-suite."""
import random
from fractions import Fraction

from toricmodels.fan import make_orthant_fan, stellar_subdivide_2cone
from toricmodels.lattice import solve_left


def random_complete_fan(rng: random.Random, n: int, moves: int):
    f = make_orthant_fan(n)
    for _ in range(moves):
        f = stellar_subdivide_2cone(f, rng.choice(f.cones_of_dim(2)))
    return f


def random_character(rng: random.Random, n: int, lo=-4, hi=4):
    while True:
        chi = tuple(rng.randint(lo, hi) for _ in range(n))
        if any(chi):
            return chi


def interior_point(rng: random.Random, rays, scale=1000):
    w = [rng.randint(1, scale) for _ in rays]
    return tuple(sum(a * r[j] for a, r in zip(w, rays)) for j in range(len(rays[0])))


def in_cone(rays, p) -> bool:
    """Exact membership of p in the simplicial cone spanned by ``rays``."""
    if not rays:
        return not any(p)
    x = solve_left(rays, p)
    return x is not None and all(c >= 0 for c in x)


def cone_contains_exact(rays, p):
    return in_cone(list(rays), [Fraction(v) for v in p])


# -- binomial systems over roots of unity ---------------------------------

def _minor_gcd(rows, s):
    import itertools
    from math import gcd

    from toricmodels.lattice import determinant

    n = len(rows[0])
    g = 0
    for ri in itertools.combinations(range(len(rows)), s):
        for ci in itertools.combinations(range(n), s):
            g = gcd(g, determinant([[rows[i][j] for j in ci] for i in ri]))
    return g


def grid_order(rows, torsions):
    """N such that every component of the system meets mu_N^n in N^(n-s) points."""
    from math import lcm

    from toricmodels.lattice import rank

    s = rank(rows)
    d = _minor_gcd(rows, s) if s else 1
    return lcm(*(Fraction(t).denominator for t in torsions), 1) * d, s


def brute_force_solutions(rows, torsions, n, N):
    """Exponent vectors a in (Z/N)^n with chi(exp(2 pi i a / N)) = exp(2 pi i tau) for each row."""
    import numpy as np

    grid = np.indices((N,) * n).reshape(n, -1).T.astype(np.int64)
    ok = np.ones(len(grid), dtype=bool)
    for chi, tau in zip(rows, torsions):
        target = Fraction(tau) * N
        assert target.denominator == 1
        ok &= (grid @ np.array(chi, dtype=np.int64) - int(target)) % N == 0
    return grid[ok]


def point_on_layer(a, N, layer) -> bool:
    for chi, v in zip(layer.characters, layer.values):
        if (Fraction(sum(c * x for c, x in zip(chi, a)), N) - v.torsion) % 1 != 0:
            return False
    return True


def random_layer(rng: random.Random, n: int, max_order=6, entries=2):
    from toricmodels.arrangement import Layer, TorusValue
    from toricmodels.lattice import Sublattice, saturate

    while True:
        r = rng.randint(1, n)
        rows = [tuple(rng.randint(-entries, entries) for _ in range(n)) for _ in range(r)]
        S = saturate(Sublattice.spanned_by(rows, n))
        if S.rank:
            break
    vals = []
    for _ in range(S.rank):
        q = rng.randint(1, max_order)
        vals.append(TorusValue(Fraction(rng.randrange(q), q)))
    return Layer(S, tuple(vals))


def layer_through(rng: random.Random, n: int, point, max_rank=None, entries=2):
    """Random layer containing the torsion point exp(2 pi i point)."""
    from toricmodels.arrangement import Layer, TorusValue
    from toricmodels.lattice import Sublattice, saturate

    max_rank = n if max_rank is None else max_rank
    while True:
        rows = [tuple(rng.randint(-entries, entries) for _ in range(n)) for _ in range(rng.randint(1, max_rank))]
        S = saturate(Sublattice.spanned_by(rows, n))
        if S.rank:
            break
    vals = tuple(TorusValue(sum(c * p for c, p in zip(chi, point))) for chi in S.basis)
    return Layer(S, vals)
