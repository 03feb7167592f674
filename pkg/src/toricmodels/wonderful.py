"""Building sets, nested sets and blowup orders over a strata poset.

Everything here is combinatorial: strata are compared by containment and
intersected component by component, and codimensions come from the strata
dimension formula.
"""
from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .errors import CapExceeded, NotBuilding
from .strata import StrataPoset, Stratum


def is_transversal(strata: Sequence[Stratum], P: StrataPoset) -> bool:
    """Codimensions add up on every component of the intersection."""
    total = sum(s.codim for s in strata)
    return all(c.codim == total for c in P.intersect_all(strata))


def minimal_elements(items: Iterable[Stratum], P: StrataPoset) -> list:
    items = list(items)
    return [a for a in items if not any(b != a and P.leq(b, a) for b in items)]


def factors(s: Stratum, G: Iterable[Stratum], P: StrataPoset) -> list:
    """Minimal elements of G containing ``s``."""
    return minimal_elements((g for g in G if P.leq(s, g)), P)


def _factorizes(s: Stratum, F: list, P: StrataPoset) -> bool:
    if len(F) < 2:
        return False
    if not is_transversal(F, P):
        return False
    return s in P.intersect_all(F) and s.codim == sum(f.codim for f in F)


def is_building(G: Iterable[Stratum], P: StrataPoset, universe: Optional[Iterable[Stratum]] = None) -> bool:
    """Check the building condition for every stratum of ``universe`` outside G.

    ``universe`` defaults to all proper strata of ``P``; pass the strata
    generated by G to test G against the arrangement it induces.
    """
    G = set(G)
    universe = P.proper() if universe is None else list(universe)
    return all(_factorizes(s, factors(s, G, P), P) for s in universe if s not in G)


def minimal_building_set(P: StrataPoset) -> list:
    """Strata that are not transversal intersections of larger building elements."""
    G = []
    for s in P.proper():  # decreasing dimension
        if not _factorizes(s, factors(s, G, P), P):
            G.append(s)
    return G


def induced_arrangement(G: Iterable[Stratum], P: StrataPoset) -> list:
    """Closure of G under taking components of pairwise intersections."""
    found = list(dict.fromkeys(G))
    seen = set(found)
    frontier = list(found)
    while frontier:
        new = []
        for a in frontier:
            for b in list(seen):
                for c in P.intersect(a, b):
                    if c not in seen:
                        seen.add(c)
                        new.append(c)
        found.extend(new)
        frontier = new
    return sorted(found, key=P.index)


def is_nested(T: Iterable[Stratum], G: Iterable[Stratum], P: StrataPoset) -> bool:
    T = list(dict.fromkeys(T))
    G = list(G)
    if len(T) <= 1:
        return True
    mins = minimal_elements(T, P)
    if len(mins) > 1:
        target = set(mins)
        below = (s for s in P.proper() if all(P.leq(s, m) for m in mins))
        if not any(set(factors(s, G, P)) == target for s in below):
            return False
    for m in mins:
        upper = [a for a in T if a != m and P.leq(m, a)]
        if not is_nested(upper, G, P):
            return False
    return True


def blowup_schedule(G: Iterable[Stratum], P: StrataPoset, check: bool = True) -> list:
    """Order G by increasing dimension; each initial segment is building.

    Initial segments are tested against the arrangement they induce.
    """
    order = sorted(G, key=lambda s: (s.dim, P.index(s)))
    if check:
        for i in range(1, len(order) + 1):
            seg = order[:i]
            if not is_building(seg, P, induced_arrangement(seg, P)):
                raise NotBuilding(f"initial segment of length {i} is not building")
    return order


def nested_sets(G: Sequence[Stratum], P: StrataPoset, cap: int = 100_000) -> list:
    """All G-nested subsets, smallest first, including the empty set."""
    G = sorted(G, key=P.index)
    out = [()]

    def grow(current, start):
        for i in range(start, len(G)):
            cand = current + (G[i],)
            if is_nested(cand, G, P):
                out.append(cand)
                if len(out) > cap:
                    raise CapExceeded(f"more than {cap} nested sets")
                grow(cand, i + 1)

    grow((), 0)
    return sorted(out, key=lambda t: (len(t), [P.index(s) for s in t]))
