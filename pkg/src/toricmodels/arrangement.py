"""Layers, toric arrangements and their intersections.

Values of characters live in the divisible group (Q/Z) x Q^k: a value
``TorusValue(t, (g1, ..., gk))`` stands for exp(2 pi i t) * p1^g1 ... pk^gk
where p1..pk are multiplicatively independent parameters. The group law is
written multiplicatively (``*``, ``/``, ``**``) to match the torus.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

from .errors import InputError, NotSplitSummand, ParameterMismatch
from .lattice import (
    Sublattice,
    complete_to_basis,
    hermite_form,
    identity,
    integer_coordinates,
    is_split_summand,
    saturate,
    smith_normal_form,
    unimodular_inverse,
    vec,
)


@dataclass(frozen=True, order=True)
class TorusValue:
    torsion: Fraction = Fraction(0)
    generic: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", Fraction(self.torsion) % 1)
        object.__setattr__(self, "generic", tuple(Fraction(g) for g in self.generic))

    @classmethod
    def one(cls, k: int = 0) -> "TorusValue":
        return cls(Fraction(0), (Fraction(0),) * k)

    @property
    def parameters(self) -> int:
        return len(self.generic)

    def _check(self, other: "TorusValue"):
        if self.parameters != other.parameters:
            raise ParameterMismatch(f"{self.parameters} vs {other.parameters} parameters")

    def __mul__(self, other: "TorusValue") -> "TorusValue":
        self._check(other)
        return TorusValue(self.torsion + other.torsion,
                          tuple(a + b for a, b in zip(self.generic, other.generic)))

    def __truediv__(self, other: "TorusValue") -> "TorusValue":
        return self * other ** -1

    def __pow__(self, q) -> "TorusValue":
        """Integer powers; for a fraction p/q this picks the root with torsion t*p/q."""
        q = Fraction(q)
        return TorusValue(self.torsion * q, tuple(g * q for g in self.generic))

    def is_one(self) -> bool:
        return self.torsion == 0 and not any(self.generic)

    def to_json(self) -> dict:
        return {"torsion": str(self.torsion), "generic": [str(g) for g in self.generic]}

    @classmethod
    def from_json(cls, data) -> "TorusValue":
        if isinstance(data, (int, str)):
            return cls(Fraction(data))
        return cls(Fraction(data.get("torsion", 0)), tuple(Fraction(g) for g in data.get("generic", ())))


def value_eq(u: TorusValue, v: TorusValue) -> bool:
    u._check(v)
    return u == v


def value_mul(u: TorusValue, v: TorusValue) -> TorusValue:
    return u * v


def value_pow(u: TorusValue, q) -> TorusValue:
    return u ** q


def _combine(coeffs: Sequence[int], values: Sequence[TorusValue], k: int) -> TorusValue:
    out = TorusValue.one(k)
    for c, v in zip(coeffs, values):
        if c:
            out = out * v ** c
    return out


@dataclass(frozen=True)
class Layer:
    """The coset {t : chi(t) = value(chi) for chi in gamma} of a subtorus.

    ``gamma`` must be a split direct summand; ``values`` gives the value of
    each of its basis characters.
    """

    gamma: Sublattice
    values: tuple
    parameters: int = 0

    def __post_init__(self):
        values = tuple(self.values)
        if len(values) != self.gamma.rank:
            raise InputError(f"{len(values)} values for a rank {self.gamma.rank} lattice")
        for v in values:
            if v.parameters != self.parameters:
                raise ParameterMismatch(f"value {v} does not have {self.parameters} parameters")
        if not is_split_summand(self.gamma):
            raise NotSplitSummand(f"{self.gamma.basis} is not a split direct summand")
        object.__setattr__(self, "values", values)

    @classmethod
    def torus(cls, n: int, k: int = 0) -> "Layer":
        return cls(Sublattice(n, ()), (), k)

    @property
    def n(self) -> int:
        return self.gamma.n

    @property
    def rank(self) -> int:
        return self.gamma.rank

    @property
    def dim(self) -> int:
        return self.n - self.rank

    @property
    def characters(self) -> tuple:
        return self.gamma.basis

    def value_of(self, chi: Sequence[int]) -> TorusValue:
        c = integer_coordinates(self.gamma.basis, chi)
        if c is None:
            raise InputError(f"{tuple(chi)} is not in the layer's lattice")
        return _combine(c, self.values, self.parameters)

    @cached_property
    def key(self) -> tuple:
        basis = hermite_form(self.gamma.basis)
        return (self.n, basis, tuple(self.value_of(chi) for chi in basis))

    def __eq__(self, other):
        if not isinstance(other, Layer):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def canonical(self) -> "Layer":
        _, basis, values = self.key
        return Layer(Sublattice(self.n, basis), values, self.parameters)

    def contains(self, other: "Layer") -> bool:
        """Set containment ``other ⊆ self`` of the cosets."""
        return other.gamma.contains(self.gamma) and all(
            other.value_of(chi) == v for chi, v in zip(self.characters, self.values))

    def to_json(self) -> dict:
        return {"gamma": [list(r) for r in self.characters], "values": [v.to_json() for v in self.values]}


def components(generators: Sequence[Sequence[int]], values: Sequence[TorusValue], n: int, k: int = 0) -> list:
    """Connected components of {t : chi_j(t) = values_j for all j}.

    The generators may be dependent and need not span a saturated lattice.
    Returns an empty list when the equations are inconsistent.
    """
    gens = [vec(g) for g in generators]
    values = list(values)
    if len(gens) != len(values):
        raise InputError("one value per generator is required")
    if not gens:
        return [Layer.torus(n, k)]
    s = smith_normal_form(gens, n)
    r = s.rank
    # rows of U past the rank are relations among the generators
    for rel in s.U[r:]:
        if not _combine(rel, values, k).is_one():
            return []
    image = [_combine(s.U[i], values, k) for i in range(r)]
    d = s.invariant_factors
    saturated = [s.V_inv[i] for i in range(r)]
    roots = [[image[i] ** Fraction(1, d[i]) * TorusValue(Fraction(j, d[i]), (0,) * k) for j in range(d[i])]
             for i in range(r)]
    out = []
    _extend(out, [], roots, Sublattice(n, saturated), k)
    return out


def _extend(out, chosen, roots, gamma, k):
    if len(chosen) == len(roots):
        out.append(Layer(gamma, tuple(chosen), k).canonical())
        return
    for v in roots[len(chosen)]:
        _extend(out, chosen + [v], roots, gamma, k)


def normalize_layer(generators, values, n: int, k: int = 0) -> list:
    """Split an arbitrary system of character equations into genuine layers.

    A basis that already spans a split summand is kept as given, since the
    subdivision depends on the chosen characters.
    """
    gens = [vec(g) for g in generators]
    lattice = Sublattice.spanned_by(gens, n)
    if lattice.rank == len(gens) and is_split_summand(lattice):
        return [Layer(Sublattice(n, gens), tuple(values), k)]
    return components(gens, values, n, k)


def intersect_layers(L1: Layer, L2: Layer) -> list:
    if L1.n != L2.n:
        raise InputError("layers live in different tori")
    if L1.parameters != L2.parameters:
        raise ParameterMismatch("layers use different parameter counts")
    return components(L1.characters + L2.characters, L1.values + L2.values, L1.n, L1.parameters)


@dataclass(frozen=True)
class Arrangement:
    rank: int
    layers: tuple = ()
    parameters: int = 0

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))
        for L in self.layers:
            if L.n != self.rank or L.parameters != self.parameters:
                raise InputError("all layers must share rank and parameter count")


def xi_of(a: Arrangement) -> list:
    seen = set()
    out = []
    for L in a.layers:
        for chi in L.characters:
            if chi in seen:
                continue
            seen.add(chi)
            seen.add(tuple(-x for x in chi))
            out.append(chi)
    return out


@dataclass
class LayerPoset:
    """All A-layers with the top torus; ``leq(a, b)`` means layer a ⊆ layer b."""

    layers: list
    top: Layer
    _index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._index = {L: i for i, L in enumerate(self.layers)}

    def __len__(self):
        return len(self.layers)

    def __iter__(self):
        return iter(self.layers)

    def __contains__(self, L):
        return L in self._index

    def leq(self, a: Layer, b: Layer) -> bool:
        return b.contains(a)

    def covers(self) -> list:
        rel = [(i, j) for i, a in enumerate(self.layers) for j, b in enumerate(self.layers)
               if i != j and b.contains(a)]
        above = {}
        for i, j in rel:
            above.setdefault(i, set()).add(j)
        return [(i, j) for i, j in rel if not any(j in above.get(m, ()) for m in above[i])]


def all_A_layers(a: Arrangement) -> LayerPoset:
    top = Layer.torus(a.rank, a.parameters)
    found = {}
    for L in a.layers:
        found.setdefault(L.canonical(), None)
    frontier = list(found)
    while frontier:
        new = []
        current = list(found)
        for L1 in frontier:
            for L2 in current:
                for C in intersect_layers(L1, L2):
                    if C not in found:
                        found[C] = None
                        new.append(C)
        frontier = new
    layers = sorted(found, key=lambda L: (L.rank, L.key))
    return LayerPoset([top] + [L for L in layers if L != top], top)


def from_digraph(vertices: int, arrows: Sequence[tuple[int, int]],
                 values: Optional[Sequence[TorusValue]] = None, parameters: int = 0) -> Arrangement:
    """Divisorial arrangement of a directed graph on vertices 1..vertices.

    The arrow i -> j gives the character e_i - e_j written in the simple-root
    basis alpha_k = e_k - e_{k+1} of the A_n root lattice, n = vertices - 1.
    """
    n = vertices - 1
    if values is None:
        values = [TorusValue.one(parameters)] * len(arrows)
    if len(values) != len(arrows):
        raise InputError("one value per arrow is required")
    layers = []
    for (i, j), v in zip(arrows, values):
        if i == j:
            raise InputError(f"self-loop at vertex {i}")
        if not (1 <= i <= vertices and 1 <= j <= vertices):
            raise InputError(f"arrow ({i}, {j}) leaves the vertex range")
        lo, hi = min(i, j), max(i, j)
        sign = 1 if i < j else -1
        chi = tuple(sign * int(lo <= m < hi) for m in range(1, n + 1))
        layers.append(Layer(Sublattice(n, (chi,)), (v,), parameters))
    return Arrangement(n, tuple(layers), parameters)


def reduce_span(a: Arrangement) -> tuple[Arrangement, tuple]:
    """Rewrite the arrangement in a basis whose first vectors span its characters.

    Returns the arrangement on the rank-r span together with the unimodular
    change of basis M; a character chi has coordinates chi . M^-1, whose
    entries past r vanish.
    """
    n = a.rank
    span = saturate(Sublattice.spanned_by(xi_of(a), n))
    if span.rank == n:
        return a, identity(n)
    M = complete_to_basis(span)
    Minv = unimodular_inverse(M)
    r = span.rank

    def coords(chi):
        c = [sum(chi[i] * Minv[i][j] for i in range(n)) for j in range(n)]
        assert not any(c[r:])
        return tuple(c[:r])

    layers = [Layer(Sublattice(r, [coords(chi) for chi in L.characters]), L.values, a.parameters)
              for L in a.layers]
    return Arrangement(r, tuple(layers), a.parameters), M


def arrangement_from_json(data: dict) -> Arrangement:
    try:
        n = int(data["rank"])
        k = int(data.get("parameters", 0))
        layers = []
        for entry in data.get("layers", []):
            gens = [vec(g) for g in entry["gamma"]]
            vals = [TorusValue.from_json(v) for v in entry.get("values", [{}] * len(gens))]
            if any(len(g) != n for g in gens):
                raise InputError("character length differs from the rank")
            if any(not any(g) for g in gens):
                raise InputError("zero character in a layer")
            for v in vals:
                if v.parameters != k:
                    raise InputError(f"value {v} needs {k} generic exponents")
            if len(vals) != len(gens):
                raise InputError("one value per character is required")
            parts = normalize_layer(gens, vals, n, k)
            if not parts:
                raise InputError(f"layer {entry} is empty (inconsistent values)")
            layers.extend(parts)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed arrangement: {exc}") from exc
    return Arrangement(n, tuple(layers), k)


def arrangement_to_json(a: Arrangement) -> dict:
    return {"rank": a.rank, "parameters": a.parameters, "layers": [L.to_json() for L in a.layers]}
