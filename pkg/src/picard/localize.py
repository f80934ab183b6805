"""Rings of fractions with a fixed denominator base, and Bezout certificates.

A localized element is numerator / s**exponent for a declared denominator
base s.  Equality is cross-multiplied, which presumes the tower is an
integral domain (a documented precondition of the presentation).
"""

from __future__ import annotations

from .rings import Element, PresentationError, RingTower
from . import ufd


class StructureError(ValueError):
    """Operands disagree about the ambient ring or denominator base."""


class CertificateError(ValueError):
    """A claimed certificate identity fails to verify."""


class LocalizedElement:
    """numerator / s**exponent in the fraction ring with denominators s**n."""

    __slots__ = ("ring", "s", "num", "exp")

    def __init__(self, ring: RingTower, s: Element, num, exp: int = 0):
        if exp < 0:
            raise PresentationError("exponent must be non-negative")
        self.ring = ring
        self.s = ring.normal_form(s)
        self.num = ring.normal_form(num)
        self.exp = exp

    def __repr__(self):
        if self.exp == 0:
            return f"({self.num})"
        return f"({self.num})/({self.s})^{self.exp}"

    def _check_compatible(self, other: "LocalizedElement"):
        if not isinstance(other, LocalizedElement):
            raise StructureError("expected a localized element")
        if self.ring != other.ring:
            raise StructureError("mismatched rings")

    def __add__(self, other):
        self._check_compatible(other)
        if self.s != other.s:
            raise StructureError("mismatched denominator bases; map into a common chart first")
        n, m = self.exp, other.exp
        # common denominator s**max(n, m)
        k = max(n, m)
        num = self.num * self.s ** (k - n) + other.num * self.s ** (k - m)
        return LocalizedElement(self.ring, self.s, num, k)

    def __neg__(self):
        return LocalizedElement(self.ring, self.s, -self.num, self.exp)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Element) or not isinstance(other, LocalizedElement):
            return LocalizedElement(self.ring, self.s, self.num * self.ring.normal_form(other), self.exp)
        self._check_compatible(other)
        if self.s != other.s:
            raise StructureError("mismatched denominator bases; map into a common chart first")
        return LocalizedElement(self.ring, self.s, self.num * other.num, self.exp + other.exp)

    __rmul__ = __mul__

    def equals(self, other: "LocalizedElement") -> bool:
        """Cross-multiplied equality a/s^n = b/s^m  <=>  a s^m = b s^n."""
        self._check_compatible(other)
        if self.s != other.s:
            raise StructureError("mismatched denominator bases; map into a common chart first")
        return self.num * self.s**other.exp == other.num * self.s**self.exp

    def is_one(self) -> bool:
        return self.num == self.s**self.exp

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def map_to(self, t: Element) -> "LocalizedElement":
        """Image in the fraction ring of s*t:  a/s^n  ->  a t^n / (s t)^n."""
        t = self.ring.normal_form(t)
        return LocalizedElement(self.ring, self.s * t, self.num * t**self.exp, self.exp)


def localized_equal(p: LocalizedElement, q: LocalizedElement) -> bool:
    """Equality of fractions, lifting into the product chart when the
    denominator bases differ (s versus t compares inside the s*t chart)."""
    if not isinstance(p, LocalizedElement) or not isinstance(q, LocalizedElement):
        raise StructureError("expected localized elements")
    if p.ring != q.ring:
        raise StructureError("mismatched rings")
    if p.s == q.s:
        return p.equals(q)
    return p.map_to(q.s).equals(q.map_to(p.s))


def unit_in_localization(le: LocalizedElement):
    """Inverse of a/s^n in the fraction ring, or None when undecided/not a unit.

    Decidable in factorial layers: a is a unit of the fraction ring exactly
    when every irreducible factor of a divides s.  Towers with extensions
    need an explicit inverse witness instead.
    """
    ring = le.ring
    if le.num.is_zero():
        return None
    inv = ring.try_invert(le.num)
    if inv is not None:
        return LocalizedElement(ring, le.s, inv * le.s**le.exp, 0)
    if not (ufd.in_ufd_layer(le.num) and ufd.in_ufd_layer(le.s)):
        return None
    # peel common factors: a unit iff a divides a power of s (up to a unit)
    r = le.num
    for _ in range(200):
        if ring.try_invert(r) is not None:
            break
        g = ufd.gcd_ufd(r, le.s)
        if ring.is_unit(g):
            return None  # a factor of the numerator never divides s
        r = ufd.exact_divide(r, g)
    else:
        return None
    m = 0
    power = ring.one()
    while m <= 200:
        b = ufd.exact_divide(power, le.num)
        if b is not None:
            # num * b = s^m, hence (num/s^n)^-1 = b / s^(m-n)
            if m >= le.exp:
                return LocalizedElement(ring, le.s, b, m - le.exp)
            return LocalizedElement(ring, le.s, b * le.s ** (le.exp - m), 0)
        power = power * le.s
        m += 1
    return None


class BezoutCertificate:
    """Elements s_i and coefficients c_i with sum c_i s_i = 1 (verified)."""

    def __init__(self, elements, coefficients):
        if not elements or len(elements) != len(coefficients):
            raise CertificateError("need matching non-empty element/coefficient lists")
        ring = elements[0].ring
        self.ring = ring
        self.elements = [ring.normal_form(e) for e in elements]
        self.coefficients = [ring.normal_form(c) for c in coefficients]
        if not verify_bezout(self):
            raise CertificateError("sum c_i * s_i does not reduce to 1")

    @classmethod
    def unchecked(cls, elements, coefficients):
        obj = cls.__new__(cls)
        ring = elements[0].ring
        obj.ring = ring
        obj.elements = [ring.normal_form(e) for e in elements]
        obj.coefficients = [ring.normal_form(c) for c in coefficients]
        return obj


def verify_bezout(cert: BezoutCertificate) -> bool:
    """True exactly when sum c_i * s_i reduces to 1."""
    total = cert.ring.zero()
    for c, s in zip(cert.coefficients, cert.elements):
        total = total + c * s
    return total.is_one()
