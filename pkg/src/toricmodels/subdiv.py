"""Subdivide a smooth fan until given characters are sign-coherent on every cone.

A character is *bad* on a two-dimensional cone C(e1, e2) when its pairings with
e1 and e2 have strictly opposite signs. Each move inserts e1 + e2 into a bad
cone of maximal score (largest pairing magnitude first, then cones whose two
magnitudes agree); ties go to the lexicographically smallest pair of rays.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Sequence

from .arrangement import Arrangement, reduce_span, xi_of
from .errors import ConeNotInFan, NotBadCone, ZeroCharacter
from .fan import Cone, Fan, make_orthant_fan, product_fan, stellar_subdivide_2cone, transform_fan
from .lattice import pairing, unimodular_inverse, vec


class SignStatus(enum.Enum):
    NON_NEG = "NonNeg"
    NON_POS = "NonPos"
    MIXED = "Mixed"


@dataclass(frozen=True, order=True)
class Score:
    M: int
    eps: int


@dataclass(frozen=True)
class TraceStep:
    character: tuple
    cone: tuple  # the two ray vectors of the subdivided cone
    new_ray: tuple

    def to_json(self) -> dict:
        return {"character": list(self.character), "cone": [list(r) for r in self.cone],
                "new_ray": list(self.new_ray)}

    @classmethod
    def from_json(cls, data: dict) -> "TraceStep":
        return cls(vec(data["character"]), tuple(vec(r) for r in data["cone"]), vec(data["new_ray"]))


def sign_status(chi: Sequence[int], cone: Cone, f: Fan) -> SignStatus:
    cone = f.check_cone(cone)
    values = [pairing(chi, f.rays[i]) for i in cone]
    if all(v >= 0 for v in values):
        return SignStatus.NON_NEG
    if all(v <= 0 for v in values):
        return SignStatus.NON_POS
    return SignStatus.MIXED


def _is_bad(chi, f: Fan, cone: Cone) -> bool:
    a, b = (pairing(chi, f.rays[i]) for i in cone)
    return a * b < 0


def bad_two_cones(f: Fan, chi: Sequence[int]) -> list:
    return [c for c in f.cones_of_dim(2) if _is_bad(chi, f, c)]


def _score_values(a: int, b: int) -> Score:
    M = max(abs(a), abs(b))
    return Score(M, int(abs(a) == abs(b)))


def score(sigma: Cone, chi: Sequence[int], f: Fan) -> Score:
    sigma = f.check_cone(sigma)
    if len(sigma) != 2:
        raise ConeNotInFan(f"{sigma} is not two-dimensional")
    a, b = (pairing(chi, f.rays[i]) for i in sigma)
    if a * b >= 0:
        raise NotBadCone(f"pairings ({a}, {b}) are not of opposite sign")
    return _score_values(a, b)


def _tie_key(f: Fan, cone: Cone) -> tuple:
    return tuple(sorted(f.cone_rays(cone)))


def choose_cone(f: Fan, chi: Sequence[int], bad: Optional[list] = None) -> Optional[Cone]:
    """Bad two-cone of maximal score, ties broken by the smaller sorted ray pair."""
    bad = bad_two_cones(f, chi) if bad is None else bad
    if not bad:
        return None
    return min(bad, key=lambda c: (_neg(score(c, chi, f)), _tie_key(f, c)))


def _neg(s: Score) -> tuple:
    return (-s.M, -s.eps)


def measure(f: Fan, chi: Sequence[int]) -> tuple[int, int, int]:
    """The triple (M, eps, q): top score over bad cones and how many attain it."""
    scores = [score(c, chi, f) for c in bad_two_cones(f, chi)]
    if not scores:
        return (0, 0, 0)
    top = max(scores)
    return (top.M, top.eps, scores.count(top))


def iter_moves(f: Fan, chi: Sequence[int]) -> Iterator[tuple[Fan, Cone, Fan]]:
    """Yield ``(before, sigma, after)`` for each move resolving ``chi``."""
    while True:
        sigma = choose_cone(f, chi)
        if sigma is None:
            return
        g = stellar_subdivide_2cone(f, sigma)
        yield f, sigma, g
        f = g


def resolve_character(
    f: Fan,
    chi: Sequence[int],
    max_moves: Optional[int] = None,
    on_move: Optional[Callable[[Fan, Cone, Fan], None]] = None,
) -> tuple[Fan, list]:
    chi = vec(chi)
    trace = []
    for before, sigma, after in iter_moves(f, chi):
        trace.append(TraceStep(chi, tuple(before.cone_rays(sigma)), after.rays[-1]))
        if on_move is not None:
            on_move(before, sigma, after)
        f = after
        if max_moves is not None and len(trace) > max_moves:
            raise RuntimeError(f"no termination within {max_moves} moves")
    return f, trace


def normalize_characters(xi: Sequence[Sequence[int]]) -> list:
    """Drop duplicates and negatives (same constraint), keeping first occurrences."""
    seen = set()
    out = []
    for chi in xi:
        chi = vec(chi)
        if not any(chi):
            raise ZeroCharacter("the zero character carries no constraint")
        if chi in seen:
            continue
        seen.add(chi)
        seen.add(tuple(-x for x in chi))
        out.append(chi)
    return out


def resolve_all(
    f: Fan,
    xi: Sequence[Sequence[int]],
    max_moves: Optional[int] = None,
    on_move: Optional[Callable[[Fan, Cone, Fan], None]] = None,
) -> tuple[Fan, list]:
    trace = []
    for chi in normalize_characters(xi):
        f, steps = resolve_character(f, chi, max_moves, on_move)
        trace.extend(steps)
    return f, trace


def replay(f: Fan, trace: Sequence[TraceStep]) -> Fan:
    for step in trace:
        f = stellar_subdivide_2cone(f, f.cone_from_vectors(step.cone))
    return f


def is_sign_coherent(f: Fan, xi: Sequence[Sequence[int]]) -> bool:
    """Independent check over maximal cones: each character's pairings share a sign."""
    for c in f.maximal_cones:
        for chi in xi:
            values = [pairing(chi, r) for r in f.cone_rays(c)]
            if min(values, default=0) < 0 < max(values, default=0):
                return False
    return True


def construct_fan(arrangement: Arrangement) -> tuple[Fan, list]:
    """Smooth projective fan on which every layer of ``arrangement`` has property (E).

    Starts from the orthant fan in the rank of the span of the characters and
    extends by the orthant fan on a complement, back in the input coordinates.
    """
    reduced, M = reduce_span(arrangement)
    n, r = arrangement.rank, reduced.rank
    fan, trace = resolve_all(make_orthant_fan(r), xi_of(reduced))
    if r == n:
        return fan, trace
    # cocharacter coordinates y (dual to the rows of M) map back by v = M^-1 y
    Minv = unimodular_inverse(M)
    full = transform_fan(product_fan(fan, make_orthant_fan(n - r)), Minv)

    def lift_ray(y):
        y = tuple(y) + (0,) * (n - r)
        return tuple(sum(Minv[i][j] * y[j] for j in range(n)) for i in range(n))

    def lift_chi(c):
        c = tuple(c) + (0,) * (n - r)
        return tuple(sum(c[i] * M[i][j] for i in range(n)) for j in range(n))

    lifted = [TraceStep(lift_chi(s.character), tuple(lift_ray(v) for v in s.cone), lift_ray(s.new_ray))
              for s in trace]
    return full, lifted
