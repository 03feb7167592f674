"""Smooth simplicial fans.

A fan stores a table of primitive rays and its maximal cones as sorted tuples
of ray indices. Faces are recomputed from the maximal cones on demand.
"""
from __future__ import annotations

import itertools
from collections import defaultdict, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from . import feasibility
from .errors import (
    ConeNotInFan,
    DimensionMismatch,
    InputError,
    MixedDimension,
    NotATwoFace,
)
from .lattice import (
    Sublattice,
    complete_to_basis,
    is_primitive,
    kernel_basis,
    pairing,
    rank,
    smith_normal_form,
    solve_left,
    unimodular_inverse,
    vec,
)

Cone = tuple  # sorted tuple of ray indices


@dataclass(frozen=True, eq=False)
class Fan:
    rank: int
    rays: tuple
    maximal_cones: tuple

    def __post_init__(self):
        rays = tuple(vec(r) for r in self.rays)
        for r in rays:
            if len(r) != self.rank:
                raise DimensionMismatch(f"ray {r} does not live in rank {self.rank}")
            if not is_primitive(r):
                raise InputError(f"ray {r} is not primitive")
        if len(set(rays)) != len(rays):
            raise InputError("duplicate rays")
        cones = {tuple(sorted(set(c))) for c in self.maximal_cones}
        for c in cones:
            if any(i < 0 or i >= len(rays) for i in c):
                raise InputError(f"cone {c} references a missing ray")
        # drop cones that are faces of other listed cones
        sets = [frozenset(c) for c in cones]
        maximal = [c for c, s in zip(cones, sets) if not any(s < t for t in sets)]
        if not maximal:
            maximal = [()]
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "maximal_cones", tuple(sorted(maximal)))

    @classmethod
    def from_vectors(cls, rank: int, cones: Iterable[Iterable[Sequence[int]]]) -> "Fan":
        """Build a fan from cones given directly by their ray vectors."""
        table: dict = {}
        idx = []
        for c in cones:
            idx.append([table.setdefault(vec(r), len(table)) for r in c])
        return cls(rank, tuple(table), tuple(idx))

    # -- views -------------------------------------------------------------

    def cone_rays(self, cone: Cone) -> tuple:
        return tuple(self.rays[i] for i in cone)

    def vector_cones(self) -> frozenset:
        return frozenset(frozenset(self.cone_rays(c)) for c in self.maximal_cones)

    def __eq__(self, other):
        if not isinstance(other, Fan):
            return NotImplemented
        return self.rank == other.rank and self.vector_cones() == other.vector_cones()

    def __hash__(self):
        return hash((self.rank, self.vector_cones()))

    @cached_property
    def cones(self) -> frozenset:
        """Every cone of the fan (all faces of maximal cones), zero cone included."""
        out = set()
        for c in self.maximal_cones:
            for k in range(len(c) + 1):
                out.update(itertools.combinations(c, k))
        return frozenset(out)

    def cones_of_dim(self, k: int) -> list:
        return sorted(c for c in self.cones if len(c) == k)

    def dimension(self) -> int:
        return max(len(c) for c in self.maximal_cones)

    def ray_index(self, v: Sequence[int]) -> int:
        try:
            return self.rays.index(vec(v))
        except ValueError:
            raise ConeNotInFan(f"{tuple(v)} is not a ray of the fan") from None

    def cone_from_vectors(self, vectors: Iterable[Sequence[int]]) -> Cone:
        c = tuple(sorted(self.ray_index(v) for v in vectors))
        if c not in self.cones:
            raise ConeNotInFan(f"rays {list(vectors)} do not span a cone of the fan")
        return c

    def check_cone(self, cone: Cone) -> Cone:
        c = tuple(sorted(cone))
        if c not in self.cones:
            raise ConeNotInFan(f"{cone} is not a cone of the fan")
        return c

    def canonical(self) -> "Fan":
        """Same fan with rays sorted lexicographically."""
        order = sorted(range(len(self.rays)), key=lambda i: self.rays[i])
        new = {old: k for k, old in enumerate(order)}
        cones = [tuple(sorted(new[i] for i in c)) for c in self.maximal_cones]
        return Fan(self.rank, tuple(self.rays[i] for i in order), tuple(cones))

    @cached_property
    def _inverses(self) -> dict:
        # integer inverse of the ray matrix of each full-dimensional maximal cone
        out = {}
        for c in self.maximal_cones:
            if len(c) == self.rank and self.rank > 0:
                out[c] = unimodular_inverse(self.cone_rays(c))
        return out


def two_dim_cones(f: Fan) -> list:
    return f.cones_of_dim(2)


def is_unimodular(rays: Sequence[Sequence[int]], n: int) -> bool:
    if not rays:
        return True
    s = smith_normal_form(rays, n)
    return s.rank == len(rays) and all(d == 1 for d in s.invariant_factors)


def is_smooth(f: Fan) -> bool:
    return all(is_unimodular(f.cone_rays(c), f.rank) for c in f.maximal_cones)


def _opposite_sides(f: Fan, wall: Cone, a: Cone, b: Cone) -> bool:
    (normal,) = kernel_basis(f.cone_rays(wall), f.rank) if wall else ((1,),)
    (x,) = set(a) - set(wall)
    (y,) = set(b) - set(wall)
    return pairing(normal, f.rays[x]) * pairing(normal, f.rays[y]) < 0


def is_complete(f: Fan) -> bool:
    """Completeness of a pure full-dimensional simplicial fan.

    Every wall must bound exactly two maximal cones lying on opposite sides of
    it, the cones must be connected through walls, and an interior point of
    one cone must lie in no other cone (this rules out multiple coverings).
    """
    n = f.rank
    if any(len(c) != n for c in f.maximal_cones):
        raise MixedDimension("some maximal cone is not full-dimensional")
    if n == 0:
        return True
    walls = defaultdict(list)
    for k, c in enumerate(f.maximal_cones):
        for w in itertools.combinations(c, n - 1):
            walls[w].append(k)
    if any(len(v) != 2 for v in walls.values()):
        return False
    cones = f.maximal_cones
    if not all(_opposite_sides(f, w, cones[a], cones[b]) for w, (a, b) in walls.items()):
        return False
    first = f.cone_rays(cones[0])
    centre = tuple(sum(r[j] for r in first) for j in range(n))
    if int(locate_points(f, [centre]).sum()) != 1:
        return False
    adj = defaultdict(set)
    for a, b in walls.values():
        adj[a].add(b)
        adj[b].add(a)
    seen = {0}
    todo = deque([0])
    while todo:
        k = todo.popleft()
        for j in adj[k] - seen:
            seen.add(j)
            todo.append(j)
    return len(seen) == len(f.maximal_cones)


def cones_meet_in_common_face(f: Fan, c1: Cone, c2: Cone) -> bool:
    """Exact test that the two cones intersect in the cone on their shared rays."""
    r1, r2 = f.cone_rays(c1), f.cone_rays(c2)
    common = set(c1) & set(c2)
    extra = [k for k, i in enumerate(c1) if i not in common]
    if not extra:
        return True
    # a >= 0, b >= 0, sum a_i r_i - sum b_j s_j = 0, sum of extra a_i = 1
    na, nb = len(r1), len(r2)
    nv = na + nb
    cons = []
    for i in range(na):
        cons.append(([int(k == i) for k in range(nv)], 0, ">="))
    for j in range(nb):
        cons.append(([int(k == na + j) for k in range(nv)], 0, ">="))
    for d in range(f.rank):
        cons.append(([r[d] for r in r1] + [-s[d] for s in r2], 0, "=="))
    cons.append(([int(k in extra) for k in range(na)] + [0] * nb, -1, "=="))
    return feasibility.solve(cons, nv) is None


def satisfies_intersection_condition(f: Fan) -> bool:
    cones = f.maximal_cones
    return all(
        cones_meet_in_common_face(f, a, b) and cones_meet_in_common_face(f, b, a)
        for a, b in itertools.combinations(cones, 2)
    )


def is_face_closed(f: Fan) -> bool:
    cones = f.cones
    return all(all(sub in cones for sub in itertools.combinations(c, len(c) - 1)) for c in cones if c)


# -- point location --------------------------------------------------------

def cone_coefficients(rays: Sequence[Sequence[int]], point: Sequence) -> Optional[tuple]:
    """Coefficients of ``point`` on independent ``rays`` (None if off the span)."""
    return solve_left(rays, point)


def containing_cones(f: Fan, point: Sequence) -> list:
    """Maximal cones containing ``point`` (exact rational arithmetic)."""
    out = []
    for c in f.maximal_cones:
        x = cone_coefficients(f.cone_rays(c), point)
        if x is not None and all(a >= 0 for a in x):
            out.append(c)
    return out


def support_face(f: Fan, cone: Cone, point: Sequence) -> Cone:
    """Smallest face of ``cone`` containing ``point``."""
    x = cone_coefficients(f.cone_rays(cone), point)
    return tuple(i for i, a in zip(cone, x) if a != 0)


def locate_points(f: Fan, points: Sequence[Sequence[int]]) -> np.ndarray:
    """Boolean matrix ``M[p, k]``: integer point p lies in maximal cone k.

    Requires full-dimensional maximal cones; uses int64 arithmetic and falls
    back to exact Python integers when entries could overflow.
    """
    inv = [f._inverses[c] for c in f.maximal_cones]
    pts = [vec(p) for p in points]
    bound = max((abs(x) for m in inv for r in m for x in r), default=0)
    pbound = max((abs(x) for p in pts for x in p), default=0)
    dtype = np.int64 if bound * pbound * max(f.rank, 1) < 2**62 else object
    A = np.array(inv, dtype=dtype)  # (m, n, n)
    P = np.array(pts, dtype=dtype)  # (p, n)
    coeff = np.einsum("pi,mij->pmj", P, A)
    return (coeff >= 0).all(axis=2)


# -- constructions ---------------------------------------------------------

def make_orthant_fan(n: int) -> Fan:
    rays = []
    for i in range(n):
        for s in (1, -1):
            rays.append(tuple(s * int(j == i) for j in range(n)))
    cones = [tuple(2 * i + (sgn == -1) for i, sgn in enumerate(signs))
             for signs in itertools.product((1, -1), repeat=n)]
    return Fan(n, tuple(rays), tuple(cones))


def make_weyl_fan_A(n: int) -> Fan:
    """Weyl chamber fan of type A_n in the coweight basis of the adjoint torus.

    A cocharacter is recorded by its pairings with the simple roots. The
    chamber of a permutation w has rays the indicator vectors of the top-k
    sets {w(1), ..., w(k)} of R^{n+1} modulo the diagonal.
    """
    if n < 1:
        raise InputError("type A_n needs n >= 1")

    def ray(subset):
        ind = [int(i in subset) for i in range(n + 1)]
        return tuple(ind[k] - ind[k + 1] for k in range(n))

    cones = []
    for w in itertools.permutations(range(n + 1)):
        cones.append([ray(set(w[:k])) for k in range(1, n + 1)])
    return Fan.from_vectors(n, cones)


def stellar_subdivide_2cone(f: Fan, sigma: Cone) -> Fan:
    """Insert the ray e1+e2 into the 2-cone ``sigma`` = C(e1, e2)."""
    sigma = tuple(sorted(sigma))
    if len(sigma) != 2 or sigma not in f.cones:
        raise NotATwoFace(f"{sigma} is not a two-dimensional cone of the fan")
    i, j = sigma
    new_ray = tuple(a + b for a, b in zip(f.rays[i], f.rays[j]))
    assert is_primitive(new_ray)
    k = len(f.rays)
    cones = []
    for c in f.maximal_cones:
        if i in c and j in c:
            cones.append(tuple(sorted((set(c) - {j}) | {k})))
            cones.append(tuple(sorted((set(c) - {i}) | {k})))
        else:
            cones.append(c)
    return Fan(f.rank, f.rays + (new_ray,), tuple(cones))


def orbit_closure_fan(f: Fan, cone: Cone) -> Fan:
    """Star of ``cone`` projected to Z^n / (Z^n ∩ span cone)."""
    cone = f.check_cone(cone)
    if not cone:
        return f
    n, k = f.rank, len(cone)
    M = complete_to_basis(Sublattice(n, f.cone_rays(cone)))
    Minv = unimodular_inverse(M)

    def project(v):
        coords = [sum(v[a] * Minv[a][b] for a in range(n)) for b in range(n)]
        return tuple(coords[k:])

    cones = []
    for c in f.maximal_cones:
        if set(cone) <= set(c):
            cones.append([project(f.rays[i]) for i in c if i not in cone])
    return Fan.from_vectors(n - k, cones)


def product_fan(f: Fan, g: Fan) -> Fan:
    n, m = f.rank, g.rank
    cones = []
    for a in f.maximal_cones:
        for b in g.maximal_cones:
            cones.append([r + (0,) * m for r in f.cone_rays(a)] + [(0,) * n + r for r in g.cone_rays(b)])
    return Fan.from_vectors(n + m, cones)


def transform_fan(f: Fan, A: Sequence[Sequence[int]]) -> Fan:
    """Apply the unimodular map ``v -> A v`` to every ray."""
    def apply(v):
        return tuple(sum(A[i][j] * v[j] for j in range(len(v))) for i in range(len(A)))

    return Fan(len(A), tuple(apply(r) for r in f.rays), f.maximal_cones)


def cone_dimension(rays: Sequence[Sequence[int]]) -> int:
    return rank(rays) if rays else 0


def fan_to_json(f: Fan) -> dict:
    f = f.canonical()
    return {"rank": f.rank, "rays": [list(r) for r in f.rays],
            "maximal_cones": [list(c) for c in f.maximal_cones]}


def fan_from_json(data: dict) -> Fan:
    try:
        return Fan(int(data["rank"]), tuple(vec(r) for r in data["rays"]),
                   tuple(tuple(int(i) for i in c) for c in data["maximal_cones"]))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed fan: {exc}") from exc
