"""Projective modules presented as images of idempotent matrices.

Rank-one projectors are certified by trace/determinant identities; ranks at
explicit field points stand in for ranks at primes.  Includes the two stock
examples over the circle ring and over ZZ[X,Y,Z]/(X^2-X+YZ), surjection
splitting with bounded search, tensor/dual constructions, and the
principal-generator procedure for ideals of factorial rings.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import linalg, ufd
from .localize import CertificateError
from .matrices import EvaluationPoint, MatrixOverRing
from .report import FAIL, INCONCLUSIVE, PASS, CertificateReport
from .rings import BaseRing, Element, PresentationError, RingTower, inclusion
from .search import Budget, monomials_up_to, solve_combination


class Projector:
    """A square matrix P with P*P = P, standing for the module Im(P)."""

    __slots__ = ("matrix",)

    def __init__(self, matrix: MatrixOverRing):
        if not matrix.is_square():
            raise PresentationError("projectors are square")
        if matrix * matrix != matrix:
            raise CertificateError("matrix is not idempotent")
        self.matrix = matrix

    @property
    def ring(self) -> RingTower:
        return self.matrix.ring

    @property
    def size(self) -> int:
        return self.matrix.rows

    def __repr__(self):
        return f"Projector({self.matrix!r})"

    def __eq__(self, other):
        return isinstance(other, Projector) and self.matrix == other.matrix

    def columns(self):
        """Generators of Im(P): the images of the standard basis."""
        return [self.matrix.column(j) for j in range(self.size)]


def is_rank_one_projector_2x2(m: MatrixOverRing) -> bool:
    """Trace 1 and determinant 0; for 2x2 this is exactly rank-one projector."""
    if m.rows != 2 or m.cols != 2:
        raise PresentationError("this criterion is the 2x2 case")
    if not (m.trace().is_one() and m.det().is_zero()):
        return False
    if m * m != m:  # Hamilton-Cayley: f^2 - Tr(f) f + det(f) = 0
        raise ArithmeticError("trace/determinant identities held but idempotency failed")
    return True


# ---------------------------------------------------------------------------
# stock examples
# ---------------------------------------------------------------------------


def circle_ring() -> RingTower:
    """QQ[x] with a square root y of 1 - x^2 (functions on the unit circle)."""
    R = RingTower(BaseRing.rationals(), ("x",))
    x = R.var("x")
    return R.extend("y", [x * x - 1, 0])


def mobius_projector() -> Projector:
    """The rank-one projector (1/2) [[1+x, y], [y, 1-x]] over the circle ring."""
    A = circle_ring()
    x, y = A.var("x"), A.gen("y")
    half = A.const(Fraction(1, 2))
    m = MatrixOverRing(A, [[half * (1 + x), half * y], [half * y, half * (1 - x)]])
    return Projector(m)


def universal_ring() -> RingTower:
    """ZZ[y, z] with a generator x satisfying x^2 = x - y z."""
    R = RingTower(BaseRing.integers(), ("y", "z"))
    y, z = R.var("y"), R.var("z")
    return R.extend("x", [y * z, -1])


def universal_projector() -> Projector:
    """[[x, z], [y, 1-x]] over ZZ[X,Y,Z]/(X^2-X+YZ): trace 1, determinant 0."""
    A = universal_ring()
    x, y, z = A.gen("x"), A.var("y"), A.var("z")
    m = MatrixOverRing(A, [[x, z], [y, 1 - x]])
    return Projector(m)


# ---------------------------------------------------------------------------
# decomposition, rank, duality
# ---------------------------------------------------------------------------


def complement_decomposition(P: Projector):
    """The complementary projector 1-P with the direct-sum certificate."""
    ident = MatrixOverRing.identity(P.ring, P.size)
    comp = ident - P.matrix
    cert = {
        "product_zero": (P.matrix * comp) == MatrixOverRing.zero(P.ring, P.size, P.size),
        "sum_identity": (P.matrix + comp) == ident,
    }
    return Projector(comp), cert


def rank_at_point(P: Projector, pt: EvaluationPoint) -> int:
    """Rank of the evaluated matrix over the point's field."""
    return linalg.rank(pt.target, pt.matrix_values(P.matrix))


def tensor_projector(P: Projector, R: Projector) -> Projector:
    if P.ring != R.ring:
        raise PresentationError("mixed rings in tensor product")
    return Projector(P.matrix.kronecker(R.matrix))


def dual_projector(P: Projector) -> Projector:
    return Projector(P.matrix.transpose())


def evaluation_pairing_certificate(P: Projector) -> Element:
    """Trace of P: equals 1 exactly when the pairing L (x) dual(L) -> A is onto."""
    return P.matrix.trace()


@dataclass
class SectionCertificate:
    established: bool
    section: list | None = None
    generic_identity: bool = False
    reason: str = ""


def split_surjection(P: Projector, alpha, x=None, budget: Budget = Budget()):
    """Certify a linear splitting of alpha: Im(P) -> A.

    ``alpha`` is a row of elements; a supplied ``x`` in Im(P) with
    alpha(x) = 1 is verified, otherwise a bounded search looks for one among
    combinations of the column generators.  The emitted section is
    a |-> a*x, certified by the identity alpha(a*x) = a for a generic a.
    """
    ring = P.ring
    alpha = [ring.normal_form(a) for a in alpha]
    if len(alpha) != P.size:
        raise PresentationError("alpha has the wrong arity")

    def pairing(vec):
        acc = ring.zero()
        for a, v in zip(alpha, vec):
            acc = acc + a * v
        return acc

    if x is not None:
        x = [ring.normal_form(v) for v in x]
        proj = [pairing_row(P.matrix, i, x) for i in range(P.size)]
        if proj != x:
            raise CertificateError("supplied vector is not in the image of the projector")
        if not pairing(x).is_one():
            raise CertificateError("alpha(x) != 1: no section certificate")
    else:
        mults = [pairing(P.matrix.column(j)) for j in range(P.size)]
        monos = monomials_up_to(ring, budget.max_degree, budget.max_candidates)
        sol = solve_combination([(mults, ring.one())], P.size, monos)
        if sol is None:
            return SectionCertificate(
                established=False,
                reason="surjectivity not established: no preimage of 1 within the degree budget",
            )
        x = [pairing_row(P.matrix, i, sol) for i in range(P.size)]
        assert pairing(x).is_one()
    # generic identity alpha(a * x) = a in the ring with one extra symbol
    fresh = _fresh_name(ring, "a")
    big = ring.with_extra_vars((fresh,))
    lift = inclusion(ring, big)
    a = big.var(fresh)
    lhs = big.zero()
    for ai, xi in zip(alpha, x):
        lhs = lhs + lift(ai) * (a * lift(xi))
    generic_ok = lhs == a
    return SectionCertificate(True, section=x, generic_identity=generic_ok)


def pairing_row(m: MatrixOverRing, i: int, vec):
    acc = m.ring.zero()
    for j in range(m.cols):
        acc = acc + m[i, j] * vec[j]
    return acc


def _fresh_name(ring: RingTower, stem: str) -> str:
    names = set(ring.generator_names())
    if stem not in names:
        return stem
    k = 0
    while f"{stem}{k}" in names:
        k += 1
    return f"{stem}{k}"


# ---------------------------------------------------------------------------
# principal generator of an invertible ideal over a factorial layer
# ---------------------------------------------------------------------------


def principal_generator_in_ufd(gens, forms, partition):
    """Generator of the ideal I = (gens) from a projectivity certificate.

    ``forms`` lists fractions xi_i = (num, den) with xi_i * I inside the
    ring; ``partition`` lists x_i in I with sum xi_i x_i = 1.  Each ideal
    {c : c*xi_i in A} is principal with generator den_i / gcd(den_i, num_i);
    their intersection (an lcm) is I.  The returned generator carries a
    membership identity d = sum (d xi_i) x_i and divides every input
    generator exactly.
    """
    if not gens or not forms or len(forms) != len(partition):
        raise CertificateError("need generators and matching forms/partition lists")
    ring = gens[0].ring
    gens = [ring.normal_form(g) for g in gens]
    fracs = [(ring.normal_form(n), ring.normal_form(d)) for n, d in forms]
    xs = [ring.normal_form(x) for x in partition]
    for n, d in fracs:
        if d.is_zero():
            raise CertificateError("zero denominator in a form")
    # certificate: xi_i * g integral for every generator
    for i, (n, d) in enumerate(fracs):
        for g in gens:
            if ufd.exact_divide(n * g, d) is None:
                raise CertificateError(f"form {i} does not map generator {g!r} into the ring")
    # certificate: sum xi_i x_i = 1, cleared to the common denominator
    common = ring.one()
    for _, d in fracs:
        common = common * d
    acc = ring.zero()
    for (n, d), x in zip(fracs, xs):
        cof = ufd.exact_divide(common, d)
        acc = acc + n * x * cof
    if acc != common:
        raise CertificateError("partition of unity fails: sum xi_i x_i != 1")
    # conductor generators and their lcm
    d_out = ring.one()
    for n, d in fracs:
        g = ufd.gcd_ufd(n, d) if not n.is_zero() else d
        c_i = ufd.exact_divide(d, g)
        d_out = ufd.lcm_ufd(d_out, c_i)
    d_out = ufd.normalize(d_out)
    # membership: d = sum (d xi_i) x_i with each d xi_i integral
    total = ring.zero()
    for (n, d), x in zip(fracs, xs):
        q = ufd.exact_divide(d_out * n, d)
        if q is None:
            raise CertificateError("computed generator is not in a conductor ideal")
        total = total + q * x
    if total != d_out:
        raise CertificateError("membership identity failed for the computed generator")
    for g in gens:
        if ufd.exact_divide(g, d_out) is None:
            raise CertificateError(f"computed generator does not divide {g!r}")
    return d_out


# ---------------------------------------------------------------------------
# the non-freeness evidence suite for the universal example
# ---------------------------------------------------------------------------


def universal_nonfreeness_suite(seed: int = 0, samples: int = 500) -> CertificateReport:
    """Replay of the norm obstructions showing Im([[x,z],[y,1-x]]) is not free."""
    rep = CertificateReport("universal-nonfreeness", {"seed": seed, "samples": samples})
    A = universal_ring()
    x, y, z = A.gen("x"), A.var("y"), A.var("z")
    _, n_x = A.trace_and_norm(x)
    _, n_1mx = A.trace_and_norm(1 - x)
    rep.add("norm-of-x", n_x == y * z and n_1mx == y * z, "N(x) = N(1-x) = y z",
            {"N(x)": n_x, "N(1-x)": n_1mx})

    Ab = A.with_extra_vars(("alpha", "beta"))
    al, be = Ab.var("alpha"), Ab.var("beta")
    xb, yb, zb = Ab.gen("x"), Ab.var("y"), Ab.var("z")
    _, norm_gen = Ab.trace_and_norm(al + be * xb)
    lhs = 4 * norm_gen
    rhs = (2 * al + be) ** 2 + be * be * (4 * yb * zb - 1)
    rep.add("norm-square-identity", lhs == rhs,
            "4 N(alpha + beta x) = (2 alpha + beta)^2 + beta^2 (4 y z - 1)",
            {"difference": lhs - rhs})

    rng = random.Random(seed)
    bad = []
    if samples <= 0:
        rep.add("norm-avoids-ny", INCONCLUSIVE, "N(alpha + beta x) != n y on random samples",
                {"note": "empty sample"})
    else:
        for _ in range(samples):
            a = _random_yz_poly(A, rng)
            b = _random_yz_poly(A, rng)
            _, nm = A.trace_and_norm(a + b * x)
            for n in range(-5, 6):
                if n and nm == n * y:
                    bad.append({"alpha": a, "beta": b, "n": n})
        rep.add("norm-avoids-ny", not bad, "N(alpha + beta x) != n y for 0 < |n| <= 5",
                bad or {"samples": samples})

    obstruction_ok = True
    witnesses = []
    pts = [(Fraction(-1, 2), Fraction(-1, 2))]
    for _ in range(49):
        yv = -Fraction(rng.randint(1, 9), rng.randint(1, 9))
        k = Fraction(rng.randint(0, 9))
        zv = (1 + k) / (4 * yv)
        pts.append((yv, zv))
    for yv, zv in pts:
        disc = 4 * yv * zv - 1
        if disc < 0 or yv >= 0:
            obstruction_ok = False
        av, bv = Fraction(rng.randint(-9, 9)), Fraction(rng.randint(-9, 9))
        val = (2 * av + bv) ** 2 + bv * bv * disc
        npos = rng.randint(1, 5)
        if not (val >= 0 and 4 * npos * yv < 0):
            obstruction_ok = False
            witnesses.append({"y": str(yv), "z": str(zv), "value": str(val)})
    rep.add("sign-obstruction", obstruction_ok,
            "(2a+b)^2 + b^2(4yz-1) >= 0 while 4ny < 0 at points with 4yz >= 1, y < 0",
            witnesses or {"points": len(pts)})
    return rep


def _random_yz_poly(A: RingTower, rng, degree: int = 2, bound: int = 4) -> Element:
    out = A.zero()
    for _ in range(3):
        dy = rng.randint(0, degree)
        dz = rng.randint(0, degree - dy)
        c = rng.randint(-bound, bound)
        if c:
            out = out + A.monomial((dy, dz, 0), c)
    return out
