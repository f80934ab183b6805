"""Exact arithmetic in explicitly presented commutative ring towers.

A tower is a presentation

    base ring -> polynomial layer in named variables -> chain of monogenic
    monic extensions,

where each extension generator carries a monic minimal polynomial whose
coefficients live one layer down.  Every element has a unique normal form:
a sparse map from exponent vectors to base scalars, with each extension
exponent reduced below the degree of its defining polynomial.

Base scalars are plain ints (integers), ``Fraction`` (rationals), reduced
ints (prime fields) or coefficient tuples (a number field presented by a
monic minimal polynomial over the rationals).  No floating point anywhere.
"""

from __future__ import annotations

import math
from fractions import Fraction


class PresentationError(ValueError):
    """Malformed ring presentation, or a symbol the ring does not know."""


class HomomorphismError(ValueError):
    """Proposed generator images violate a defining relation."""


# ---------------------------------------------------------------------------
# base rings and their scalars
# ---------------------------------------------------------------------------

INTEGERS = "integers"
RATIONALS = "rationals"
PRIME_FIELD = "prime_field"
NUMBER_LAYER = "number_layer"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class BaseRing:
    """Coefficient ring at the bottom of a tower.

    One of: the integers, the rationals, a prime field, or a number layer
    Q[w]/(m) given by the coefficients of a monic minimal polynomial m.
    """

    def __init__(self, kind, p=None, name=None, min_poly=None):
        self.kind = kind
        self.p = p
        self.name = name
        self.min_poly = min_poly  # tuple of Fractions c0..c_{d-1}, monic lead implied
        if kind == PRIME_FIELD:
            if not _is_prime(p):
                raise PresentationError(f"{p} is not prime")
        if kind == NUMBER_LAYER:
            if not min_poly:
                raise PresentationError("number layer needs a minimal polynomial of degree >= 1")
            self.min_poly = tuple(Fraction(c) for c in min_poly)

    @staticmethod
    def integers() -> "BaseRing":
        return BaseRing(INTEGERS)

    @staticmethod
    def rationals() -> "BaseRing":
        return BaseRing(RATIONALS)

    @staticmethod
    def prime_field(p: int) -> "BaseRing":
        return BaseRing(PRIME_FIELD, p=p)

    @staticmethod
    def number_layer(name: str, min_poly) -> "BaseRing":
        return BaseRing(NUMBER_LAYER, name=name, min_poly=min_poly)

    # -- structural identity

    def __eq__(self, other):
        return (
            isinstance(other, BaseRing)
            and (self.kind, self.p, self.name, self.min_poly)
            == (other.kind, other.p, other.name, other.min_poly)
        )

    def __hash__(self):
        return hash((self.kind, self.p, self.name, self.min_poly))

    def __repr__(self):
        if self.kind == INTEGERS:
            return "ZZ"
        if self.kind == RATIONALS:
            return "QQ"
        if self.kind == PRIME_FIELD:
            return f"GF({self.p})"
        return f"QQ[{self.name}]/(deg {len(self.min_poly)})"

    @property
    def degree(self) -> int:
        return len(self.min_poly) if self.kind == NUMBER_LAYER else 1

    def is_field(self) -> bool:
        return self.kind in (RATIONALS, PRIME_FIELD, NUMBER_LAYER)

    # -- scalar arithmetic

    def zero(self):
        if self.kind == NUMBER_LAYER:
            return (Fraction(0),) * self.degree
        return 0 if self.kind != RATIONALS else Fraction(0)

    def one(self):
        return self.from_int(1)

    def from_int(self, n: int):
        if self.kind == INTEGERS:
            return int(n)
        if self.kind == RATIONALS:
            return Fraction(n)
        if self.kind == PRIME_FIELD:
            return n % self.p
        return (Fraction(n),) + (Fraction(0),) * (self.degree - 1)

    def from_fraction(self, q: Fraction):
        q = Fraction(q)
        if self.kind == RATIONALS:
            return q
        if self.kind == INTEGERS:
            if q.denominator != 1:
                raise PresentationError(f"{q} is not an integer")
            return q.numerator
        if self.kind == PRIME_FIELD:
            inv = pow(q.denominator % self.p, -1, self.p)
            return (q.numerator * inv) % self.p
        return (q,) + (Fraction(0),) * (self.degree - 1)

    def coerce(self, x):
        """Accept an int, Fraction or already-valid scalar of this base."""
        if isinstance(x, bool):
            raise PresentationError("booleans are not scalars")
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, Fraction):
            return self.from_fraction(x)
        if self.kind == NUMBER_LAYER and isinstance(x, tuple):
            if len(x) != self.degree:
                raise PresentationError("wrong coefficient tuple length")
            return tuple(Fraction(c) for c in x)
        raise PresentationError(f"cannot interpret {x!r} as a scalar of {self!r}")

    def add(self, a, b):
        if self.kind == PRIME_FIELD:
            return (a + b) % self.p
        if self.kind == NUMBER_LAYER:
            return tuple(x + y for x, y in zip(a, b))
        return a + b

    def neg(self, a):
        if self.kind == PRIME_FIELD:
            return (-a) % self.p
        if self.kind == NUMBER_LAYER:
            return tuple(-x for x in a)
        return -a

    def mul(self, a, b):
        if self.kind == PRIME_FIELD:
            return (a * b) % self.p
        if self.kind == NUMBER_LAYER:
            d = self.degree
            raw = [Fraction(0)] * (2 * d - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        if y:
                            raw[i + j] += x * y
            # reduce by w^d = -(c_{d-1} w^{d-1} + ... + c_0)
            for k in range(2 * d - 2, d - 1, -1):
                c = raw[k]
                if c:
                    raw[k] = Fraction(0)
                    for j, mj in enumerate(self.min_poly):
                        raw[k - d + j] -= c * mj
            return tuple(raw[:d])
        return a * b

    def is_zero(self, a) -> bool:
        if self.kind == NUMBER_LAYER:
            return all(c == 0 for c in a)
        return a == 0

    def invert(self, a):
        """Multiplicative inverse, or None when a is not a unit."""
        if self.is_zero(a):
            return None
        if self.kind == INTEGERS:
            return a if a in (1, -1) else None
        if self.kind == RATIONALS:
            return Fraction(1) / a
        if self.kind == PRIME_FIELD:
            return pow(a, -1, self.p)
        # extended Euclid in QQ[w] against the minimal polynomial
        m = list(self.min_poly) + [Fraction(1)]
        r0, r1 = m, list(a)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while any(c != 0 for c in r1):
            q, r = _poly_divmod_q(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub_q(s0, _poly_mul_q(q, s1))
        r0 = _poly_trim_q(r0)
        if len(r0) != 1:
            return None  # min_poly reducible and a shares a factor
        lead_inv = Fraction(1) / r0[0]
        inv = [c * lead_inv for c in s0]
        inv = (inv + [Fraction(0)] * self.degree)[: self.degree]
        return tuple(inv)

    def divide(self, a, b):
        """Exact division a / b, or None when not exact (integers) / b = 0."""
        if self.is_zero(b):
            return None
        if self.kind == INTEGERS:
            q, r = divmod(a, b)
            return q if r == 0 else None
        inv = self.invert(b)
        return None if inv is None else self.mul(a, inv)

    # -- text form (decimal strings, arbitrary precision)

    def scalar_to_str(self, a) -> str:
        if self.kind == NUMBER_LAYER:
            return ",".join(str(c) for c in a)
        return str(a)

    def scalar_from_str(self, s: str):
        if self.kind == NUMBER_LAYER:
            parts = s.split(",")
            if len(parts) != self.degree:
                raise PresentationError(f"expected {self.degree} components in {s!r}")
            return tuple(Fraction(c) for c in parts)
        if self.kind == INTEGERS:
            return int(s)
        if self.kind == PRIME_FIELD:
            return int(s) % self.p
        return Fraction(s)

    def random_scalar(self, rng, bound: int = 5):
        if self.kind == PRIME_FIELD:
            return rng.randrange(self.p)
        if self.kind == NUMBER_LAYER:
            return tuple(Fraction(rng.randint(-bound, bound)) for _ in range(self.degree))
        n = rng.randint(-bound, bound)
        return self.from_int(n)


def convert_scalar(x, src: BaseRing, dst: BaseRing):
    """Map a scalar of src into dst along the canonical inclusion."""
    if src == dst:
        return x
    if src.kind == INTEGERS:
        return dst.from_int(x)
    if src.kind == RATIONALS:
        return dst.from_fraction(x)
    if src.kind == NUMBER_LAYER and all(c == 0 for c in x[1:]):
        return dst.from_fraction(x[0])
    raise PresentationError(f"no canonical map for {x!r} from {src!r} to {dst!r}")


# dense univariate helpers over QQ used by number-layer inversion


def _poly_trim_q(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_sub_q(a, b):
    n = max(len(a), len(b))
    return _poly_trim_q([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _poly_mul_q(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _poly_trim_q(out)


def _poly_divmod_q(a, b):
    a = _poly_trim_q(a)
    b = _poly_trim_q(b)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    r = list(a)
    while len(r) >= len(b) and r:
        c = r[-1] / b[-1]
        k = len(r) - len(b)
        q[k] = c
        for i, bc in enumerate(b):
            r[k + i] -= c * bc
        r = _poly_trim_q(r)
    return q, r


# ---------------------------------------------------------------------------
# ring towers
# ---------------------------------------------------------------------------


class Extension:
    """One monogenic monic layer: g**degree rewrites to ``tail``."""

    __slots__ = ("name", "degree", "tail")

    def __init__(self, name: str, degree: int, tail: dict):
        self.name = name
        self.degree = degree
        self.tail = tail  # exponent key -> scalar, in the enclosing ring's key space

    def rekeyed(self, fn) -> "Extension":
        return Extension(self.name, self.degree, {fn(k): v for k, v in self.tail.items()})


class RingTower:
    """base -> polynomial variables -> nested monogenic monic extensions.

    Keys of element maps are exponent tuples: variable exponents first, then
    one slot per extension generator.  ``integral_domain`` is a declared
    property of the presentation; degree-2 extensions get a best-effort
    irreducibility sanity check when it is claimed.
    """

    def __init__(self, base: BaseRing, vars=(), integral_domain: bool = True, _exts=()):
        self.base = base
        self.vars = tuple(vars)
        self.exts = tuple(_exts)
        self.integral_domain = integral_domain
        names = list(self.vars) + [e.name for e in self.exts]
        if len(set(names)) != len(names):
            raise PresentationError("generator names must be distinct")
        self._index = {n: i for i, n in enumerate(names)}

    # -- structure

    @property
    def nvars(self) -> int:
        return len(self.vars)

    @property
    def width(self) -> int:
        return len(self.vars) + len(self.exts)

    def generator_names(self):
        return list(self.vars) + [e.name for e in self.exts]

    def __eq__(self, other):
        if not isinstance(other, RingTower):
            return NotImplemented
        return (
            self.base == other.base
            and self.vars == other.vars
            and self.integral_domain == other.integral_domain
            and len(self.exts) == len(other.exts)
            and all(
                a.name == b.name and a.degree == b.degree and a.tail == b.tail
                for a, b in zip(self.exts, other.exts)
            )
        )

    def __hash__(self):
        return hash(
            (
                self.base,
                self.vars,
                self.integral_domain,
                tuple((e.name, e.degree, frozenset(e.tail.items())) for e in self.exts),
            )
        )

    def __repr__(self):
        parts = [repr(self.base)]
        if self.vars:
            parts.append("[" + ",".join(self.vars) + "]")
        for e in self.exts:
            parts.append(f"<{e.name}:deg{e.degree}>")
        return "".join(parts)

    # -- construction

    def extend(self, name: str, coeffs, check_domain: bool = True) -> "RingTower":
        """Adjoin a generator with monic minimal polynomial T^d + sum c_j T^j.

        ``coeffs`` lists c_0 .. c_{d-1} as elements of this ring (ints and
        Fractions are coerced).  The new ring keeps the integral-domain claim
        of this one; for degree 2 the claim is sanity-checked where a square
        test is available.
        """
        coeffs = [self.normal_form(c) for c in coeffs]
        d = len(coeffs)
        if d < 1:
            raise PresentationError("extension degree must be >= 1")
        if name in self._index:
            raise PresentationError(f"duplicate generator name {name!r}")
        if self.integral_domain and check_domain and d == 2:
            self._degree2_domain_check(coeffs[0], coeffs[1], name)
        tail: dict = {}
        for j, c in enumerate(coeffs):
            for key, s in c.terms.items():
                nk = key + (j,)
                cur = tail.get(nk)
                tail[nk] = self.base.neg(s) if cur is None else self.base.add(cur, self.base.neg(s))
        tail = {k: v for k, v in tail.items() if not self.base.is_zero(v)}
        exts = tuple(e.rekeyed(lambda k: k + (0,)) for e in self.exts) + (Extension(name, d, tail),)
        return RingTower(self.base, self.vars, self.integral_domain, exts)

    def _degree2_domain_check(self, c0, c1, name):
        # T^2 + c1 T + c0 splits over the fraction field iff c1^2 - 4 c0 is a
        # square there; verify when the discriminant is constant or univariate.
        if self.base.kind == PRIME_FIELD and self.base.p <= 10_000:
            a0, a1 = c0.constant_value(), c1.constant_value()
            if a0 is not None and a1 is not None:
                for t in range(self.base.p):
                    if (t * t + a1 * t + a0) % self.base.p == 0:
                        raise PresentationError(
                            f"{name}: degree-2 polynomial has root {t}; quotient is not an "
                            "integral domain (pass integral_domain=False)"
                        )
                return
        disc = c1 * c1 - 4 * c0
        if self.base.kind == PRIME_FIELD and self.base.p == 2:
            return  # discriminant criterion fails in characteristic 2; trusted
        c = disc.constant_value()
        if c is not None:
            if _constant_is_square(self.base, c):
                raise PresentationError(
                    f"{name}: discriminant {self.base.scalar_to_str(c)} is a square; "
                    "quotient is not an integral domain (pass integral_domain=False)"
                )
            return
        uni = _as_univariate_over_base(disc)
        if uni is not None and self.base.kind in (RATIONALS, PRIME_FIELD, INTEGERS):
            if _univariate_is_square(self.base, uni):
                raise PresentationError(
                    f"{name}: discriminant is a polynomial square; quotient is not an "
                    "integral domain (pass integral_domain=False)"
                )
        # multivariate discriminants are trusted input

    def with_extra_vars(self, names) -> "RingTower":
        """Same presentation with additional polynomial variables appended."""
        names = tuple(names)
        for n in names:
            if n in self._index:
                raise PresentationError(f"duplicate generator name {n!r}")
        nv = self.nvars
        k = len(names)

        def rekey(key):
            return key[:nv] + (0,) * k + key[nv:]

        exts = tuple(e.rekeyed(rekey) for e in self.exts)
        return RingTower(self.base, self.vars + names, self.integral_domain, exts)

    def drop_extensions(self, count: int) -> "RingTower":
        """The prefix sub-tower with the top ``count`` extensions removed."""
        if not 0 <= count <= len(self.exts):
            raise PresentationError("bad extension count")
        if count == 0:
            return self
        keep = len(self.exts) - count
        nv = self.nvars

        def rekey(key):
            return key[: nv + keep]

        exts = tuple(self.exts[i].rekeyed(rekey) for i in range(keep))
        return RingTower(self.base, self.vars, self.integral_domain, exts)

    # -- element constructors

    def zero(self) -> "Element":
        return Element(self, {})

    def one(self) -> "Element":
        return self.const(1)

    def const(self, x) -> "Element":
        s = self.base.coerce(x)
        if self.base.is_zero(s):
            return Element(self, {})
        return Element(self, {(0,) * self.width: s})

    def monomial(self, key, scalar=1) -> "Element":
        key = tuple(key)
        if len(key) != self.width or any(e < 0 for e in key):
            raise PresentationError("bad exponent vector")
        s = self.base.coerce(scalar)
        if self.base.is_zero(s):
            return Element(self, {})
        return self.normal_form({key: s})

    def var(self, name: str) -> "Element":
        if name not in self.vars:
            raise PresentationError(f"unknown variable {name!r}")
        return self._gen_by_index(self._index[name])

    def gen(self, name: str) -> "Element":
        for e in self.exts:
            if e.name == name:
                return self._gen_by_index(self._index[name])
        raise PresentationError(f"unknown extension generator {name!r}")

    def symbol(self, name: str) -> "Element":
        """Any named generator; unknown names raise a presentation error."""
        if name not in self._index:
            raise PresentationError(f"unknown symbol {name!r} in {self!r}")
        return self._gen_by_index(self._index[name])

    def _gen_by_index(self, i: int) -> "Element":
        key = tuple(1 if j == i else 0 for j in range(self.width))
        return Element(self, {key: self.base.one()})

    def generators(self):
        return [self._gen_by_index(i) for i in range(self.width)]

    def normal_form(self, x) -> "Element":
        """Reduce an element expression to its canonical sparse map.

        Accepts an Element (returned as is: arithmetic keeps normal forms),
        an int/Fraction/base scalar, or a raw ``{exponent key: scalar}`` map
        whose extension exponents may exceed their bounds.
        """
        if isinstance(x, Element):
            if x.ring != self:
                raise PresentationError("element belongs to a different ring")
            return x
        if isinstance(x, (int, Fraction)):
            return self.const(x)
        if isinstance(x, dict):
            raw = {}
            for key, s in x.items():
                key = tuple(key)
                if len(key) != self.width or any(e < 0 for e in key):
                    raise PresentationError("bad exponent vector")
                s = self.base.coerce(s)
                if key in raw:
                    s = self.base.add(raw[key], s)
                raw[key] = s
            return Element(self, self._reduce(raw))
        return self.const(self.base.coerce(x))

    # -- normal-form reduction

    def _reduce(self, terms: dict) -> dict:
        nv = self.nvars
        for k in range(len(self.exts) - 1, -1, -1):
            pos = nv + k
            d = self.exts[k].degree
            tail = self.exts[k].tail
            while True:
                over = [key for key in terms if key[pos] >= d]
                if not over:
                    break
                nxt = {key: v for key, v in terms.items() if key[pos] < d}
                for key in over:
                    s = terms[key]
                    rem = list(key)
                    rem[pos] -= d
                    if not tail:
                        continue  # g**d = 0
                    for tkey, tval in tail.items():
                        nk = tuple(a + b for a, b in zip(rem, tkey))
                        sv = self.base.mul(s, tval)
                        cur = nxt.get(nk)
                        nxt[nk] = sv if cur is None else self.base.add(cur, sv)
                terms = nxt
        return {k: v for k, v in terms.items() if not self.base.is_zero(v)}

    # -- random elements (seeded suites)

    def random_element(self, rng, max_degree=2, coeff_bound=5, terms=3) -> "Element":
        out = self.zero()
        for _ in range(terms):
            key = []
            budget = max_degree
            for _ in range(self.nvars):
                e = rng.randint(0, budget)
                key.append(e)
                budget -= e
            for ext in self.exts:
                e = rng.randint(0, min(budget, ext.degree - 1))
                key.append(e)
                budget -= e
            s = self.base.random_scalar(rng, coeff_bound)
            out = out + self.monomial(tuple(key), s) if not self.base.is_zero(s) else out
        return out

    # -- multiplication matrices, trace and norm

    def mult_matrix(self, e: "Element", layer: int | None = None):
        """Matrix of multiplication by e on the power basis of one extension.

        ``layer`` is the 1-based extension index (default: topmost).  The
        element must not involve generators above that layer.  Entries are
        elements with zero exponent in the chosen generator and above.
        """
        if layer is None:
            layer = len(self.exts)
        if not 1 <= layer <= len(self.exts):
            raise PresentationError("no such extension layer")
        pos = self.nvars + layer - 1
        for key in e.terms:
            for p in range(pos + 1, self.width):
                if key[p]:
                    raise PresentationError("element involves generators above the layer")
        d = self.exts[layer - 1].degree
        g = self._gen_by_index(pos)
        cols = []
        for j in range(d):
            prod = e * g**j
            coords = [self.zero()] * d
            for key, s in prod.terms.items():
                jj = key[pos]
                low = key[:pos] + (0,) + key[pos + 1 :]
                coords[jj] = coords[jj] + Element(self, {low: s})
            cols.append(coords)
        return [[cols[j][i] for j in range(d)] for i in range(d)]

    def trace_and_norm(self, e: "Element", layer: int | None = None):
        """Trace and determinant of the multiplication-by-e matrix."""
        m = self.mult_matrix(e, layer)
        tr = self.zero()
        for i in range(len(m)):
            tr = tr + m[i][i]
        return tr, grid_det(m)

    # -- units

    def try_invert(self, e: "Element"):
        """Inverse of e, or None when e is not a unit.

        Decision: nonzero scalars in field bases, constant units in the
        polynomial layer, and in extension layers a unit norm one layer down
        (inverse assembled from the adjugate of the multiplication matrix).
        """
        e = self.normal_form(e)
        return self._invert_at(e, len(self.exts))

    def is_unit(self, e: "Element") -> bool:
        return self.try_invert(e) is not None

    def _invert_at(self, e: "Element", layer: int):
        if e.is_zero():
            return None
        if layer == 0:
            c = e.constant_value()
            if c is None:
                return None  # non-constant polynomial over a domain base
            inv = self.base.invert(c)
            return None if inv is None else self.const(inv)
        pos = self.nvars + layer - 1
        if all(key[pos] == 0 for key in e.terms):
            return self._invert_at(e, layer - 1)
        m = self.mult_matrix(e, layer)
        det = grid_det(m)
        dinv = self._invert_at(det, layer - 1)
        if dinv is None:
            return None
        adj = grid_adjugate(m)
        g = self._gen_by_index(pos)
        inv = self.zero()
        for j in range(len(m)):
            inv = inv + adj[j][0] * dinv * g**j
        if not (e * inv).is_one():
            raise ArithmeticError("inverse certificate failed")  # unreachable for free layers
        return inv


def _constant_is_square(base: BaseRing, c) -> bool:
    if base.kind == INTEGERS:
        if c < 0:
            return False
        r = math.isqrt(c)
        return r * r == c
    if base.kind == RATIONALS:
        if c < 0:
            return False
        rn, rd = math.isqrt(c.numerator), math.isqrt(c.denominator)
        return rn * rn == c.numerator and rd * rd == c.denominator
    if base.kind == PRIME_FIELD:
        p = base.p
        if p == 2 or c % p == 0:
            return True
        return pow(c, (p - 1) // 2, p) == 1
    return False  # number layers: trusted


def _as_univariate_over_base(e: "Element"):
    """Dense coefficient list when e uses at most one generator, else None."""
    used = set()
    for key in e.terms:
        for i, ex in enumerate(key):
            if ex:
                used.add(i)
    if len(used) > 1:
        return None
    pos = used.pop() if used else 0
    deg = max((key[pos] for key in e.terms), default=0)
    out = [e.ring.base.zero()] * (deg + 1)
    for key, s in e.terms.items():
        out[key[pos]] = s
    return out


def _univariate_is_square(base: BaseRing, coeffs) -> bool:
    coeffs = list(coeffs)
    while coeffs and base.is_zero(coeffs[-1]):
        coeffs.pop()
    if not coeffs:
        return True
    deg = len(coeffs) - 1
    if deg % 2:
        return False
    if base.kind == INTEGERS:
        coeffs = [Fraction(c) for c in coeffs]
        field = BaseRing.rationals()
    else:
        field = base
    if not _constant_is_square(field, coeffs[-1]):
        return False
    # candidate square root by leading-coefficient recursion
    h = deg // 2
    if field.kind == RATIONALS:
        lead = Fraction(math.isqrt(coeffs[-1].numerator), math.isqrt(coeffs[-1].denominator))
    else:
        lead = _prime_field_sqrt(field, coeffs[-1])
        if lead is None:
            return False
    root = [field.zero()] * (h + 1)
    root[h] = lead
    rem = list(coeffs)
    two_lead_inv = field.invert(field.add(lead, lead))
    if two_lead_inv is None:
        return False
    for k in range(h - 1, -1, -1):
        # coefficient of x^(k+h) in (root^2) must match rem
        acc = field.zero()
        for i in range(k + 1, h + 1):
            j = k + h - i
            if 0 <= j <= h:
                acc = field.add(acc, field.mul(root[i], root[j]))
        diff = field.add(coeffs[k + h], field.neg(acc))
        root[k] = field.mul(diff, two_lead_inv)
    sq = [field.zero()] * (2 * h + 1)
    for i in range(h + 1):
        for j in range(h + 1):
            sq[i + j] = field.add(sq[i + j], field.mul(root[i], root[j]))
    if len(sq) != len(coeffs):
        return False
    return all(field.is_zero(field.add(a, field.neg(b))) for a, b in zip(sq, coeffs))


def _prime_field_sqrt(base: BaseRing, a):
    for t in range(base.p):
        if (t * t) % base.p == a % base.p:
            return t
    return None


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------


def term_sort_key(key):
    """Graded lexicographic, largest first when used as an ascending key."""
    return (-sum(key), tuple(-e for e in key))


class Element:
    """A ring element in canonical normal form (never mutate ``terms``)."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: RingTower, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- basic queries

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        if len(self.terms) != 1:
            return False
        key, s = next(iter(self.terms.items()))
        return not any(key) and s == self.ring.base.one()

    def __bool__(self):
        return bool(self.terms)

    def constant_value(self):
        """The base scalar when the element is constant, else None."""
        if not self.terms:
            return self.ring.base.zero()
        if len(self.terms) == 1:
            key, s = next(iter(self.terms.items()))
            if not any(key):
                return s
        return None

    def total_degree(self) -> int:
        return max((sum(k) for k in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.ring._index[name]
        return max((k[i] for k in self.terms), default=-1)

    def coefficients_in(self, name: str) -> dict:
        """Split by the exponent of one generator: {exp: cofactor element}."""
        i = self.ring._index[name]
        out: dict = {}
        for key, s in self.terms.items():
            low = key[:i] + (0,) + key[i + 1 :]
            part = out.setdefault(key[i], {})
            part[low] = s
        return {e: Element(self.ring, t) for e, t in out.items()}

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: term_sort_key(kv[0]))

    # -- arithmetic

    def _coerce(self, other):
        if isinstance(other, Element):
            if other.ring != self.ring:
                raise PresentationError("mixed rings in arithmetic")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        base = self.ring.base
        out = dict(self.terms)
        for key, s in other.terms.items():
            cur = out.get(key)
            v = s if cur is None else base.add(cur, s)
            if base.is_zero(v):
                out.pop(key, None)
            else:
                out[key] = v
        return Element(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        base = self.ring.base
        return Element(self.ring, {k: base.neg(v) for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        base = self.ring.base
        raw: dict = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                nk = tuple(a + b for a, b in zip(k1, k2))
                sv = base.mul(v1, v2)
                cur = raw.get(nk)
                raw[nk] = sv if cur is None else base.add(cur, sv)
        return Element(self.ring, self.ring._reduce(raw))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            inv = self.ring.try_invert(self)
            if inv is None:
                raise ArithmeticError("negative power of a non-unit")
            return inv ** (-n)
        out = self.ring.one()
        b = self
        while n:
            if n & 1:
                out = out * b
            b = b * b
            n >>= 1
        return out

    def __truediv__(self, other):
        """Division by a unit (scalars included)."""
        other = self._coerce(other)
        inv = self.ring.try_invert(other)
        if inv is None:
            raise ArithmeticError("division by a non-unit")
        return self * inv

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Element):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        names = self.ring.generator_names()
        bits = []
        for key, s in self.sorted_terms():
            mono = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(names, key) if e
            )
            cs = self.ring.base.scalar_to_str(s)
            if mono:
                bits.append(mono if cs == "1" else (f"-{mono}" if cs == "-1" else f"{cs}*{mono}"))
            else:
                bits.append(cs)
        out = " + ".join(bits)
        return out.replace("+ -", "- ")


# ---------------------------------------------------------------------------
# determinants over a commutative ring (division free, small sizes)
# ---------------------------------------------------------------------------


def grid_det(m):
    n = len(m)
    if n == 0:
        raise ValueError("empty matrix")
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    ring = m[0][0].ring
    out = ring.zero()
    sign = 1
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        t = m[0][j] * grid_det(minor)
        out = out + t if sign > 0 else out - t
        sign = -sign
    return out


def grid_adjugate(m):
    n = len(m)
    ring = m[0][0].ring
    if n == 1:
        return [[ring.one()]]
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [
                [m[r][c] for c in range(n) if c != j] for r in range(n) if r != i
            ]
            cof = grid_det(minor)
            adj[j][i] = cof if (i + j) % 2 == 0 else -cof
    return adj


# ---------------------------------------------------------------------------
# ring homomorphisms
# ---------------------------------------------------------------------------


class RingHom:
    """Homomorphism given by images of the named generators.

    Base scalars map along the canonical inclusion, except that a
    number-layer base generator may be sent to an explicit image
    (``base_image``) — e.g. coefficient conjugation.
    Construction verifies every defining relation of the source.
    """

    def __init__(self, source: RingTower, target: RingTower, images: dict,
                 base_image: Element | None = None, check: bool = True):
        self.source = source
        self.target = target
        self.images = {}
        for name in source.generator_names():
            if name not in images:
                raise HomomorphismError(f"missing image for generator {name!r}")
            img = images[name]
            self.images[name] = target.normal_form(img)
        self.base_image = None if base_image is None else target.normal_form(base_image)
        if source.base.kind == NUMBER_LAYER and self.base_image is None and source.base != target.base:
            raise HomomorphismError("number-layer base needs an explicit base image")
        if check:
            self._verify()

    def _verify(self):
        if self.base_image is not None:
            m = self.source.base.min_poly
            val = self.base_image ** len(m)
            for j, c in enumerate(m):
                val = val + self.target.const(c) * self.base_image**j
            if not val.is_zero():
                raise HomomorphismError("base generator image violates its minimal polynomial")
        nv = self.source.nvars
        for k, ext in enumerate(self.source.exts):
            g_img = self.images[ext.name]
            tail_elem = Element(self.source, ext.tail)
            lhs = g_img ** ext.degree
            rhs = self.apply(tail_elem)
            if lhs != rhs:
                raise HomomorphismError(
                    f"image of {ext.name!r} violates its degree-{ext.degree} relation"
                )

    def _map_scalar(self, s):
        src, dst = self.source.base, self.target.base
        if self.base_image is not None and src.kind == NUMBER_LAYER:
            out = self.target.zero()
            for j, c in enumerate(s):
                if c:
                    out = out + self.target.const(c) * self.base_image**j
            return out
        return self.target.const(convert_scalar(s, src, dst))

    def apply(self, e: Element) -> Element:
        if e.ring != self.source:
            raise PresentationError("element not in the source ring")
        names = self.source.generator_names()
        out = self.target.zero()
        cache: dict = {}
        for key, s in e.terms.items():
            term = self._map_scalar(s)
            for n, exp in zip(names, key):
                if exp:
                    pw = cache.get((n, exp))
                    if pw is None:
                        pw = self.images[n] ** exp
                        cache[(n, exp)] = pw
                    term = term * pw
            out = out + term
        return out

    __call__ = apply

    @staticmethod
    def identity(ring: RingTower) -> "RingHom":
        return RingHom(ring, ring, {n: ring.symbol(n) for n in ring.generator_names()}, check=False)


def inclusion(sub: RingTower, big: RingTower) -> RingHom:
    """Canonical inclusion when ``sub``'s generators all exist in ``big``."""
    return RingHom(sub, big, {n: big.symbol(n) for n in sub.generator_names()}, check=False)


def apply_hom(hom: RingHom, e: Element) -> Element:
    return hom.apply(e)
