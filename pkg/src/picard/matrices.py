"""Matrices with entries in a ring tower, and evaluation at field points."""

from __future__ import annotations

from . import linalg
from .rings import (
    BaseRing,
    Element,
    HomomorphismError,
    PresentationError,
    RingHom,
    RingTower,
    convert_scalar,
    grid_adjugate,
    grid_det,
)


class MatrixOverRing:
    """Immutable rows-of-elements matrix over a fixed tower."""

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring: RingTower, entries):
        self.ring = ring
        self.entries = tuple(tuple(ring.normal_form(e) for e in row) for row in entries)
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0
        if any(len(r) != self.cols for r in self.entries):
            raise PresentationError("ragged matrix")

    @staticmethod
    def identity(ring: RingTower, n: int) -> "MatrixOverRing":
        return MatrixOverRing(
            ring, [[ring.one() if i == j else ring.zero() for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def zero(ring: RingTower, rows: int, cols: int) -> "MatrixOverRing":
        return MatrixOverRing(ring, [[ring.zero()] * cols for _ in range(rows)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, MatrixOverRing)
            and self.ring == other.ring
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.ring, self.entries))

    def __repr__(self):
        body = "; ".join(", ".join(repr(e) for e in row) for row in self.entries)
        return f"[{body}]"

    def _coerce(self, other):
        if not isinstance(other, MatrixOverRing) or other.ring != self.ring:
            raise PresentationError("mixed rings in matrix arithmetic")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        return MatrixOverRing(
            self.ring,
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)],
        )

    def __sub__(self, other):
        other = self._coerce(other)
        return MatrixOverRing(
            self.ring,
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)],
        )

    def __neg__(self):
        return MatrixOverRing(self.ring, [[-a for a in r] for r in self.entries])

    def __mul__(self, other):
        if isinstance(other, MatrixOverRing):
            other = self._coerce(other)
            if self.cols != other.rows:
                raise PresentationError("dimension mismatch")
            out = []
            for i in range(self.rows):
                row = []
                for j in range(other.cols):
                    acc = self.ring.zero()
                    for k in range(self.cols):
                        acc = acc + self.entries[i][k] * other.entries[k][j]
                    row.append(acc)
                out.append(row)
            return MatrixOverRing(self.ring, out)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, a) -> "MatrixOverRing":
        a = self.ring.normal_form(a)
        return MatrixOverRing(self.ring, [[a * e for e in r] for r in self.entries])

    def transpose(self) -> "MatrixOverRing":
        return MatrixOverRing(
            self.ring, [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)]
        )

    def is_square(self) -> bool:
        return self.rows == self.cols

    def trace(self) -> Element:
        if not self.is_square():
            raise PresentationError("trace of a non-square matrix")
        t = self.ring.zero()
        for i in range(self.rows):
            t = t + self.entries[i][i]
        return t

    def det(self) -> Element:
        if not self.is_square():
            raise PresentationError("determinant of a non-square matrix")
        return grid_det([list(r) for r in self.entries])

    def adjugate(self) -> "MatrixOverRing":
        return MatrixOverRing(self.ring, grid_adjugate([list(r) for r in self.entries]))

    def inverse(self):
        """Inverse when det is a unit of the tower, else None."""
        d = self.det()
        dinv = self.ring.try_invert(d)
        if dinv is None:
            return None
        return self.adjugate().scale(dinv)

    def kronecker(self, other: "MatrixOverRing") -> "MatrixOverRing":
        other = self._coerce(other)
        out = []
        for i in range(self.rows):
            for k in range(other.rows):
                row = []
                for j in range(self.cols):
                    for l in range(other.cols):
                        row.append(self.entries[i][j] * other.entries[k][l])
                out.append(row)
        return MatrixOverRing(self.ring, out)

    def map(self, fn) -> "MatrixOverRing":
        return MatrixOverRing(self.ring, [[fn(e) for e in r] for r in self.entries])

    def apply_hom(self, hom: RingHom) -> "MatrixOverRing":
        return MatrixOverRing(hom.target, [[hom(e) for e in r] for r in self.entries])

    def column(self, j: int):
        return [self.entries[i][j] for i in range(self.rows)]


class EvaluationPoint:
    """Assignment of field scalars to all generators, respecting relations.

    Stands in for reduction at a maximal ideal: evaluation lands in the
    target field, where numeric ranks can be computed.
    """

    def __init__(self, ring: RingTower, target: BaseRing, assignments: dict):
        if not target.is_field():
            raise PresentationError("evaluation target must be a field")
        self.ring = ring
        self.target = target
        self.const_ring = RingTower(target, (), integral_domain=True)
        images = {}
        for name in ring.generator_names():
            if name not in assignments:
                raise HomomorphismError(f"missing value for generator {name!r}")
            images[name] = self.const_ring.const(target.coerce(assignments[name]))
        self.hom = RingHom(ring, self.const_ring, images)

    def value(self, e: Element):
        out = self.hom(e)
        c = out.constant_value()
        return c

    def matrix_values(self, m: MatrixOverRing):
        return [[self.value(e) for e in row] for row in m.entries]


def rank_at(base: BaseRing, scalar_rows) -> int:
    return linalg.rank(base, scalar_rows)
