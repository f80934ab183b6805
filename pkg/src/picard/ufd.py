"""Gcd, exact division and Bezout search in the factorial layers of a tower.

The factorial layers are the base ring (integers or a field) together with
the polynomial variables — elements whose extension exponents all vanish.
Gcds run a primitive pseudo-remainder recursion on a main variable;
normalization makes the graded-lex leading coefficient positive over the
integers and 1 over fields.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .rings import (
    BaseRing,
    Element,
    INTEGERS,
    PRIME_FIELD,
    PresentationError,
    RATIONALS,
    RingTower,
    term_sort_key,
)


class UndefinedGcdError(ArithmeticError):
    """gcd(0, 0) has no meaning."""


def in_ufd_layer(e: Element) -> bool:
    """True when the element avoids all extension generators."""
    nv = e.ring.nvars
    return all(not any(key[nv:]) for key in e.terms)


def _require_ufd(e: Element):
    if not in_ufd_layer(e):
        raise PresentationError("operation restricted to the polynomial (factorial) layer")
    if e.ring.base.kind not in (INTEGERS, RATIONALS, PRIME_FIELD):
        raise PresentationError("factorial base must be the integers or a field")


def leading_term(e: Element):
    """(key, scalar) of the graded-lex leading term; None for zero."""
    if e.is_zero():
        return None
    key = min(e.terms, key=term_sort_key)
    return key, e.terms[key]


def normalize(e: Element) -> Element:
    """Positive leading integer coefficient over ZZ, graded-lex monic over fields."""
    if e.is_zero():
        return e
    base = e.ring.base
    _, lc = leading_term(e)
    if base.kind == INTEGERS:
        return -e if lc < 0 else e
    inv = base.invert(lc)
    return e * e.ring.const(inv)


def exact_divide(a: Element, b: Element):
    """Quotient a / b when division is exact in the layer, else None."""
    if b.is_zero():
        return None
    if a.is_zero():
        return a
    ring = a.ring
    base = ring.base
    lt_b = leading_term(b)
    q = ring.zero()
    rem = a
    while not rem.is_zero():
        (kb, cb) = lt_b
        (ka, ca) = leading_term(rem)
        dk = tuple(x - y for x, y in zip(ka, kb))
        if any(d < 0 for d in dk):
            return None
        c = base.divide(ca, cb)
        if c is None:
            return None
        t = ring.monomial(dk, c)
        q = q + t
        rem = rem - t * b
    return q


def divides(b: Element, a: Element) -> bool:
    return exact_divide(a, b) is not None


def _scalar_gcd(base: BaseRing, values):
    if base.kind == INTEGERS:
        g = 0
        for v in values:
            g = math.gcd(g, abs(v))
        return g
    return base.one() if any(not base.is_zero(v) for v in values) else base.zero()


def _main_var(a: Element, b: Element):
    for i, name in enumerate(a.ring.vars):
        if any(k[i] for k in a.terms) or any(k[i] for k in b.terms):
            return name
    return None


def _content_and_primitive(e: Element, var: str):
    parts = e.coefficients_in(var)
    cont = None
    for c in parts.values():
        cont = c if cont is None else gcd_ufd(cont, c)
        if cont.total_degree() == 0 and cont.ring.base.kind != INTEGERS:
            break
    cont = normalize(cont)
    prim = exact_divide(e, cont)
    return cont, prim


def _pseudo_rem(a: Element, b: Element, var: str) -> Element:
    ring = a.ring
    x = ring.var(var)
    db = b.degree_in(var)
    lb_parts = b.coefficients_in(var)
    lb = lb_parts[db]
    rem = a
    while not rem.is_zero() and rem.degree_in(var) >= db:
        da = rem.degree_in(var)
        la = rem.coefficients_in(var)[da]
        rem = lb * rem - la * x ** (da - db) * b
    return rem


def gcd_ufd(a: Element, b: Element) -> Element:
    """Normalized gcd in a factorial layer via primitive pseudo-remainders."""
    _require_ufd(a)
    _require_ufd(b)
    if a.ring != b.ring:
        raise PresentationError("mixed rings")
    if a.is_zero() and b.is_zero():
        raise UndefinedGcdError("gcd(0, 0) is undefined")
    if a.is_zero():
        return normalize(b)
    if b.is_zero():
        return normalize(a)
    ring = a.ring
    var = _main_var(a, b)
    if var is None:
        g = _scalar_gcd(ring.base, list(a.terms.values()) + list(b.terms.values()))
        return normalize(ring.const(g))
    da, db = a.degree_in(var), b.degree_in(var)
    if da == 0 or db == 0:
        # one side is free of the main variable: gcd with the other's content
        free, mixed = (a, b) if da == 0 else (b, a)
        cont, _ = _content_and_primitive(mixed, var)
        return gcd_ufd(free, cont)
    ca, pa = _content_and_primitive(a, var)
    cb, pb = _content_and_primitive(b, var)
    if pa.degree_in(var) < pb.degree_in(var):
        pa, pb = pb, pa
    while not pb.is_zero():
        r = _pseudo_rem(pa, pb, var)
        if r.is_zero():
            pa, pb = pb, r
            break
        _, r = _content_and_primitive(r, var)
        pa, pb = pb, r
    return normalize(gcd_ufd(ca, cb) * pa)


def lcm_ufd(a: Element, b: Element) -> Element:
    if a.is_zero() or b.is_zero():
        return a.ring.zero()
    g = gcd_ufd(a, b)
    return normalize(exact_divide(a * b, g))


# ---------------------------------------------------------------------------
# Bezout identities in principal layers (ZZ, one variable over a field)
# ---------------------------------------------------------------------------


def _is_pid_layer(ring: RingTower) -> bool:
    if ring.base.kind == INTEGERS:
        return True  # constants handled; variable content requires the F[x] case
    return ring.base.is_field()


def extended_euclid(a: Element, b: Element):
    """(g, u, v) with u*a + v*b = g in ZZ or in F[x] (one active variable)."""
    _require_ufd(a)
    _require_ufd(b)
    ring = a.ring
    base = ring.base
    used = {i for e in (a, b) for k in e.terms for i, x in enumerate(k) if x}
    if base.kind == INTEGERS:
        if used:
            raise PresentationError("integer Bezout data requires constant inputs")
        x, y = a.constant_value(), b.constant_value()
        g, u, v = _xgcd_int(x, y)
        return ring.const(g), ring.const(u), ring.const(v)
    if len(used) > 1:
        raise PresentationError("Bezout search needs a principal layer (one variable over a field)")
    r0, r1 = a, b
    s0, s1 = ring.one(), ring.zero()
    t0, t1 = ring.zero(), ring.one()
    var = ring.vars[used.pop()] if used else None
    while not r1.is_zero():
        q = _field_poly_quot(r0, r1, var)
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    lc = leading_term(r0)[1]
    inv = ring.const(base.invert(lc))
    return r0 * inv, s0 * inv, t0 * inv


def _field_poly_quot(a: Element, b: Element, var):
    ring = a.ring
    base = ring.base
    if var is None or b.degree_in(var) == 0:
        return a * ring.const(base.invert(b.constant_value()))
    x = ring.var(var)
    db = b.degree_in(var)
    lb = b.coefficients_in(var)[db].constant_value()
    q = ring.zero()
    rem = a
    while not rem.is_zero() and rem.degree_in(var) >= db:
        da = rem.degree_in(var)
        la = rem.coefficients_in(var)[da].constant_value()
        t = ring.const(base.mul(la, base.invert(lb))) * x ** (da - db)
        q = q + t
        rem = rem - t * b
    return q


def _xgcd_int(a: int, b: int):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def bezout_coefficients(elements):
    """Coefficients c_i with sum c_i * s_i = 1 in a principal layer, else None."""
    if not elements:
        return None
    ring = elements[0].ring
    g = elements[0]
    coeffs = [ring.one()]
    for e in elements[1:]:
        g2, u, v = extended_euclid(g, e)
        coeffs = [c * u for c in coeffs] + [v]
        g = g2
    if not g.is_one():
        if ring.try_invert(g) is None:
            return None
        inv = ring.try_invert(g)
        coeffs = [c * inv for c in coeffs]
    return coeffs
