"""Layer closures in a toric variety and the poset of strata they cut out.

A stratum is the closure of an A-layer intersected with the orbit closure of
a cone lying in the layer's cocharacter space V_H. The ambient torus counts
as the trivial layer, so toric boundary strata appear with it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm
from typing import Optional, Sequence, Union

from .arrangement import Arrangement, Layer, LayerPoset, all_A_layers, intersect_layers
from .errors import PropertyEViolated
from .fan import Fan
from .feasibility import strictly_positive_point
from .lattice import (
    Sublattice,
    complete_to_basis,
    integer_coordinates,
    kernel_basis,
    pairing,
    rank,
    vector_gcd,
)


def _basis_of(obj) -> tuple:
    if isinstance(obj, Layer):
        return obj.characters
    if isinstance(obj, Sublattice):
        return obj.basis
    return tuple(tuple(r) for r in obj)


def subtorus_space_basis(L: Union[Layer, Sublattice]) -> tuple:
    """Basis of the cocharacters of H, i.e. the lattice points of V_H."""
    gamma = L.gamma if isinstance(L, Layer) else L
    return kernel_basis(gamma.basis, gamma.n)


def nonnegative_basis(gamma, rays: Sequence[Sequence[int]]) -> Optional[tuple]:
    """Integral basis of ``gamma`` pairing nonnegatively with every ray, if any.

    Follows the usual argument: find a character strictly positive on the
    rays it does not annihilate, complete it to a basis, then shift the other
    basis vectors by multiples of it.
    """
    B = _basis_of(gamma)
    r = len(B)
    if r == 0:
        return ()
    P = [[pairing(chi, e) for chi in B] for e in rays]

    flipped = []
    for i, chi in enumerate(B):
        col = [row[i] for row in P]
        if all(v >= 0 for v in col):
            flipped.append(chi)
        elif all(v <= 0 for v in col):
            flipped.append(tuple(-x for x in chi))
        else:
            break
    else:
        return tuple(flipped)

    x = strictly_positive_point(P, r)
    if x is None:
        return None
    den = lcm(*(c.denominator for c in x))
    c = [int(v * den) for v in x]
    g = vector_gcd(c)
    c = [v // g for v in c]
    if not any(c):
        # every ray is orthogonal to gamma
        c = [int(i == 0) for i in range(r)]
    coords = [list(row) for row in complete_to_basis(Sublattice(r, [c]))]
    pos = [sum(p * a for p, a in zip(row, c)) for row in P]
    for k in range(1, r):
        val = [sum(p * a for p, a in zip(row, coords[k])) for row in P]
        shift = max((-(v // w) for v, w in zip(val, pos) if w > 0 and v < 0), default=0)
        coords[k] = [a + shift * b for a, b in zip(coords[k], c)]
    return tuple(tuple(sum(a * B[i][j] for i, a in enumerate(row)) for j in range(len(B[0])))
                 for row in coords)


def has_property_E(gamma, rays: Sequence[Sequence[int]]) -> bool:
    return nonnegative_basis(gamma, rays) is not None


def property_E_witness(f: Fan, L: Union[Layer, Sublattice]) -> Optional[tuple]:
    """A maximal cone (as ray vectors) on which ``L`` fails property (E), or None."""
    for c in f.maximal_cones:
        rays = f.cone_rays(c)
        if not has_property_E(L, rays):
            return rays
    return None


def orbit_meets_layer(rays: Sequence[Sequence[int]], L: Layer) -> bool:
    """Whether the orbit of the cone meets the closure of ``L`` (cone inside V_H)."""
    return all(pairing(chi, e) == 0 for chi in L.characters for e in rays)


def closure_fan(f: Fan, L: Layer) -> Fan:
    """Fan of the layer closure: cones of ``f`` inside V_H in a basis of X_*(H)."""
    witness = property_E_witness(f, L)
    if witness is not None:
        raise PropertyEViolated(f"layer {L.characters} fails property (E)", witness)
    K = subtorus_space_basis(L)
    inside = [c for c in f.cones if orbit_meets_layer(f.cone_rays(c), L)]
    cones = [[integer_coordinates(K, r) for r in f.cone_rays(c)] for c in inside]
    return Fan.from_vectors(len(K), cones)


@dataclass(frozen=True)
class Stratum:
    layer: Layer
    cone: tuple  # sorted ray vectors of a cone of the ambient fan

    @property
    def n(self) -> int:
        return self.layer.n

    @property
    def dim(self) -> int:
        return self.n - self.layer.rank - len(self.cone)

    @property
    def codim(self) -> int:
        return self.n - self.dim

    @property
    def key(self) -> tuple:
        return (self.layer.key, self.cone)

    def __eq__(self, other):
        return isinstance(other, Stratum) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def is_ambient(self) -> bool:
        return self.layer.rank == 0 and not self.cone

    def to_json(self) -> dict:
        return {"dim": self.dim, "layer": self.layer.to_json(), "cone": [list(r) for r in self.cone]}

    def label(self) -> str:
        gamma = ",".join("(" + ",".join(map(str, chi)) + ")" for chi in self.layer.characters) or "T"
        vals = ",".join(str(v.torsion) + ("" if not v.generic else "|" + ",".join(map(str, v.generic)))
                        for v in self.layer.values)
        cone = ",".join("(" + ",".join(map(str, r)) + ")" for r in self.cone) or "0"
        return f"[{gamma}]={vals} cone {cone} dim {self.dim}" if vals else f"T cone {cone} dim {self.dim}"


def _sort_key(s: Stratum):
    return (-s.dim, s.layer.rank, s.layer.key, s.cone)


@dataclass
class StrataPoset:
    fan: Fan
    layers: LayerPoset
    elements: list
    _index: dict = field(default_factory=dict, repr=False)
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.elements.sort(key=_sort_key)
        self._index = {s: i for i, s in enumerate(self.elements)}
        self._ray_index = {r: i for i, r in enumerate(self.fan.rays)}

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, s):
        return s in self._index

    def index(self, s: Stratum) -> int:
        return self._index[s]

    @property
    def n(self) -> int:
        return self.fan.rank

    @property
    def ambient(self) -> Stratum:
        return self.elements[0]

    def proper(self) -> list:
        """Strata properly contained in the toric variety."""
        return [s for s in self.elements if not s.is_ambient()]

    def leq(self, a: Stratum, b: Stratum) -> bool:
        """Containment ``a ⊆ b``."""
        return b.layer.contains(a.layer) and set(b.cone) <= set(a.cone)

    def is_cone(self, rays) -> bool:
        try:
            idx = tuple(sorted(self._ray_index[r] for r in rays))
        except KeyError:
            return False
        return idx in self.fan.cones

    def intersect(self, a: Stratum, b: Stratum) -> list:
        """Connected components of ``a ∩ b`` as strata (empty list if disjoint)."""
        key = frozenset((a.key, b.key))
        if key in self._cache:
            return self._cache[key]
        cone = tuple(sorted(set(a.cone) | set(b.cone)))
        out = []
        if self.is_cone(cone):
            if a.layer.contains(b.layer):
                parts = [b.layer]
            elif b.layer.contains(a.layer):
                parts = [a.layer]
            else:
                parts = intersect_layers(a.layer, b.layer)
            for L in parts:
                if orbit_meets_layer(cone, L):
                    out.append(self.lookup(Stratum(L, cone)))
        self._cache[key] = out
        return out

    def intersect_all(self, strata: Sequence[Stratum]) -> list:
        strata = list(strata)
        if not strata:
            return [self.ambient]
        current = [strata[0]]
        for s in strata[1:]:
            nxt = []
            for c in current:
                for piece in self.intersect(c, s):
                    if piece not in nxt:
                        nxt.append(piece)
            current = nxt
        return current

    def lookup(self, s: Stratum) -> Stratum:
        return self.elements[self._index[s]]

    def covers(self) -> list:
        """Hasse diagram edges (i, j): element i is covered by element j."""
        N = len(self.elements)
        above = [[j for j in range(N) if j != i and self.leq(self.elements[i], self.elements[j])]
                 for i in range(N)]
        aset = [set(a) for a in above]
        return [(i, j) for i in range(N) for j in above[i] if not any(j in aset[m] for m in above[i])]

    def to_json(self) -> dict:
        return {
            "rank": self.n,
            "strata": [dict(id=i, **s.to_json()) for i, s in enumerate(self.elements)],
            "covers": [list(e) for e in self.covers()],
        }

    def to_dot(self) -> str:
        lines = ["digraph strata {", "  rankdir=BT;"]
        for i, s in enumerate(self.elements):
            lines.append(f'  s{i} [label="{s.label()}"];')
        for i, j in self.covers():
            lines.append(f"  s{i} -> s{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_strata_poset(f: Fan, a: Arrangement) -> StrataPoset:
    layers = all_A_layers(a)
    elements = []
    for L in layers:
        witness = property_E_witness(f, L)
        if witness is not None:
            raise PropertyEViolated(f"A-layer {L.characters} fails property (E)", witness)
        for c in f.cones:
            rays = f.cone_rays(c)
            if orbit_meets_layer(rays, L):
                elements.append(Stratum(L, tuple(sorted(rays))))
    return StrataPoset(f, layers, elements)


def check_clean(a: Stratum, b: Stratum, P: StrataPoset) -> bool:
    """Dimension test for a clean intersection of two strata.

    Every component must have the dimension of the intersection of tangent
    spaces, n - rank(Gamma_a + Gamma_b) - dim(cone_a + cone_b).
    """
    n = P.n
    chars = a.layer.characters + b.layer.characters
    rays = tuple(set(a.cone) | set(b.cone))
    expected = n - (rank(chars) if chars else 0) - (rank(rays) if rays else 0)
    return all(c.dim == expected for c in P.intersect(a, b))
