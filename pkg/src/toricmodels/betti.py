"""Even Betti numbers of smooth complete toric varieties and codim-2 blowups."""
from __future__ import annotations

from math import comb
from typing import Sequence

from .errors import DimensionMismatch, MixedDimension, NotComplete
from .fan import Fan, is_complete


def _require_complete(f: Fan) -> None:
    try:
        ok = is_complete(f)
    except MixedDimension as exc:
        raise NotComplete(str(exc)) from exc
    if not ok:
        raise NotComplete("fan is not complete")


def d_vector(f: Fan) -> tuple:
    """Number of cones of each dimension 0..n."""
    _require_complete(f)
    counts = [0] * (f.rank + 1)
    for c in f.cones:
        counts[len(c)] += 1
    return tuple(counts)


def betti_numbers(f: Fan) -> tuple:
    """(b_0, b_2, ..., b_2n) via h_k = sum_{i>=k} (-1)^(i-k) C(i,k) d_{n-i}."""
    d = d_vector(f)
    n = f.rank
    return tuple(sum((-1) ** (i - k) * comb(i, k) * d[n - i] for i in range(k, n + 1))
                 for k in range(n + 1))


def euler_characteristic(f: Fan) -> int:
    return sum(betti_numbers(f))


def blowup_update(p_x: Sequence[int], p_y: Sequence[int]) -> tuple:
    """Poincaré polynomial after blowing up a codimension-2 center.

    ``p_y`` has length len(p_x) - 2 (or is empty / all zero for an empty
    center); the exceptional P^1-bundle adds one copy shifted by t^2.
    """
    p_x = list(p_x)
    p_y = list(p_y)
    if not any(p_y):
        return tuple(p_x)
    if len(p_y) != len(p_x) - 2:
        raise DimensionMismatch(f"center of length {len(p_y)} in a variety of length {len(p_x)}")
    for k, b in enumerate(p_y):
        p_x[k + 1] += b
    return tuple(p_x)
