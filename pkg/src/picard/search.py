"""Bounded searches for ring combinations, via exact linear algebra.

Ansatz coefficients are spanned by all monomials up to a degree bound; the
resulting linear systems are solved over the base field (rationals stand in
for the integers, with integrality enforced afterwards).  Failure to find a
combination within the budget is a budget statement, never a proof.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .rings import BaseRing, Element, INTEGERS, RingTower


@dataclass(frozen=True)
class Budget:
    """Default bounds for every bounded search."""

    max_degree: int = 3
    max_candidates: int = 1000
    seed: int = 0


def monomials_up_to(ring: RingTower, degree: int, limit: int = 100000):
    """All normal-form monomials of total degree <= degree, graded order."""
    ranges = []
    for _ in range(ring.nvars):
        ranges.append(range(degree + 1))
    for ext in ring.exts:
        ranges.append(range(min(degree, ext.degree - 1) + 1))
    out = []
    for key in itertools.product(*ranges):
        if sum(key) <= degree:
            out.append(key)
            if len(out) > limit:
                raise ValueError("monomial budget exceeded")
    out.sort(key=lambda k: (sum(k), k))
    return [ring.monomial(k) for k in out]


def _field_of(base: BaseRing):
    return BaseRing.rationals() if base.kind == INTEGERS else base


def _to_field(base: BaseRing, field: BaseRing, s):
    return Fraction(s) if base.kind == INTEGERS else s


def _assemble(constraints, nunknowns, monomials):
    """Rows over the field for sum_j a_j mult_{c,j} = target_c, a_j in span."""
    if not constraints:
        raise ValueError("no constraints")
    ring = monomials[0].ring
    base = ring.base
    field = _field_of(base)
    index = [(j, m) for j in range(nunknowns) for m in range(len(monomials))]
    rows = []
    rhs = []
    for mults, target in constraints:
        prods = {}
        keys = set(target.terms)
        for ci, (j, m) in enumerate(index):
            p = monomials[m] * mults[j]
            prods[ci] = p
            keys.update(p.terms)
        for key in sorted(keys):
            row = [
                _to_field(base, field, prods[ci].terms.get(key, base.zero()))
                for ci in range(len(index))
            ]
            rows.append(row)
            rhs.append(_to_field(base, field, target.terms.get(key, base.zero())))
    return field, index, rows, rhs


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def solve_combination(constraints, nunknowns: int, monomials):
    """Elements (a_1..a_n) satisfying every ``sum_j a_j*mult_j = target``.

    Returns None when no solution exists in the spanned ansatz (over the
    integers: when no integral solution is found there).
    """
    field, index, rows, rhs = _assemble(constraints, nunknowns, monomials)
    ring = monomials[0].ring
    sol = linalg.solve(field, rows, rhs)
    if sol is None:
        return None
    if ring.base.kind == INTEGERS and any(v.denominator != 1 for v in sol):
        return None
    out = [ring.zero() for _ in range(nunknowns)]
    for (j, m), v in zip(index, sol):
        if field.is_zero(v):
            continue
        c = int(v) if ring.base.kind == INTEGERS else v
        out[j] = out[j] + monomials[m] * ring.const(c)
    return out


def kernel_combinations(constraints, nunknowns: int, monomials):
    """Basis of element tuples (a_1..a_n) with ``sum_j a_j*mult_j = 0`` for
    every constraint; over the integers, denominators are cleared."""
    ring = monomials[0].ring
    zero_targets = [(mults, ring.zero()) for mults, _ in constraints]
    field, index, rows, rhs = _assemble(zero_targets, nunknowns, monomials)
    basis = linalg.kernel_basis(field, rows, len(index))
    out = []
    for vec in basis:
        if ring.base.kind == INTEGERS:
            denom = 1
            for v in vec:
                denom = denom * v.denominator // _gcd(denom, v.denominator)
            vec = [v * denom for v in vec]
        tup = [ring.zero() for _ in range(nunknowns)]
        for (j, m), v in zip(index, vec):
            if field.is_zero(v):
                continue
            c = int(v) if ring.base.kind == INTEGERS else v
            tup[j] = tup[j] + monomials[m] * ring.const(c)
        out.append(tuple(tup))
    return out
