"""Exact feasibility of small rational linear systems.

Equalities are eliminated by substitution, the remaining inequalities by
Fourier-Motzkin elimination; a witness is recovered by back-substitution.
Only meant for the handful of variables that cone computations need.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

# A constraint is (coeffs, const, kind) meaning  coeffs . x + const  KIND  0
# with KIND one of "==", ">=", ">".
Constraint = tuple


def _normalize(coeffs, const):
    nums = [c for c in coeffs if c] + ([const] if const else [])
    if not nums:
        return tuple(coeffs), const
    den = 1
    for c in nums:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    k = int(const * den)
    g = 0
    for c in ints + [k]:
        g = gcd(g, c)
    return tuple(Fraction(c, g) for c in ints), Fraction(k, g)


def solve(constraints: Sequence[Constraint], nvars: int) -> Optional[tuple[Fraction, ...]]:
    """Return a rational point satisfying all constraints, or None."""
    eqs = []
    ineqs = []
    for coeffs, const, kind in constraints:
        row = ([Fraction(c) for c in coeffs], Fraction(const))
        (eqs if kind == "==" else ineqs).append(row + (kind == ">",))

    # Substitution for equalities: x_p = -(rest + const) / a_p.
    subs = []  # (pivot, coeffs, const) with the pivot coefficient 1
    for coeffs, const, _ in eqs:
        coeffs, const = list(coeffs), const
        for p, e_coeffs, e_const in subs:
            f = coeffs[p]
            if f:
                coeffs = [a - f * b for a, b in zip(coeffs, e_coeffs)]
                const -= f * e_const
        p = next((i for i, c in enumerate(coeffs) if c), None)
        if p is None:
            if const != 0:
                return None
            continue
        a = coeffs[p]
        coeffs = [c / a for c in coeffs]
        const /= a
        new_subs = []
        for q, e_coeffs, e_const in subs:
            f = e_coeffs[p]
            if f:
                e_coeffs = [x - f * y for x, y in zip(e_coeffs, coeffs)]
                e_const -= f * const
            new_subs.append((q, e_coeffs, e_const))
        subs = new_subs + [(p, coeffs, const)]

    rows = []
    for coeffs, const, strict in ineqs:
        for p, e_coeffs, e_const in subs:
            f = coeffs[p]
            if f:
                coeffs = [a - f * b for a, b in zip(coeffs, e_coeffs)]
                const -= f * e_const
        rows.append(_normalize(coeffs, const) + (strict,))

    pivots = {p for p, _, _ in subs}
    free = [i for i in range(nvars) if i not in pivots]
    stages = []
    current = set(rows)
    for var in free:
        stages.append((var, current))
        pos = [r for r in current if r[0][var] > 0]
        neg = [r for r in current if r[0][var] < 0]
        nxt = {r for r in current if r[0][var] == 0}
        for pc, pk, ps in pos:
            for nc, nk, ns in neg:
                a, b = pc[var], -nc[var]
                coeffs = [b * x + a * y for x, y in zip(pc, nc)]
                nxt.add(_normalize(coeffs, b * pk + a * nk) + (ps or ns,))
        current = nxt
    for _, const, strict in current:
        if const < 0 or (strict and const == 0):
            return None

    x = [Fraction(0)] * nvars
    for var, stage in reversed(stages):
        lo = hi = None
        for coeffs, const, _ in stage:
            a = coeffs[var]
            if not a:
                continue
            rest = const + sum(c * x[i] for i, c in enumerate(coeffs) if i != var)
            bound = -rest / a
            if a > 0:
                lo = bound if lo is None else max(lo, bound)
            else:
                hi = bound if hi is None else min(hi, bound)
        if lo is not None and hi is not None:
            x[var] = (lo + hi) / 2
        elif lo is not None:
            x[var] = lo + 1
        elif hi is not None:
            x[var] = hi - 1
    for p, coeffs, const in reversed(subs):
        x[p] = -(const + sum(c * x[i] for i, c in enumerate(coeffs) if i != p))
    return tuple(x)


def strictly_positive_point(rows: Sequence[Sequence[int]], nvars: int) -> Optional[tuple[Fraction, ...]]:
    """A point ``x`` with ``row . x > 0`` for every nonzero row, or None."""
    cons = [(r, 0, ">") for r in rows if any(r)]
    return solve(cons, nvars)
