"""Euclidean isometries with rational data.

An ``Isometry`` is ``u -> L u + t`` with ``L`` orthogonal (exactly) and ``t``
rational. For every group in this project ``L`` is a signed permutation
matrix, but nothing here depends on that.
"""

from collections.abc import Callable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from src.errors import DegenerateSimplex
from src.geometry import (
    ConvexPolyhedron,
    Halfspace,
    Point3,
    format_rational,
    rational,
    solve3,
)

Rows = tuple[Point3, Point3, Point3]

_E = (Point3.of(1, 0, 0), Point3.of(0, 1, 0), Point3.of(0, 0, 1))


def _transpose(rows: Rows) -> Rows:
    r0, r1, r2 = rows
    return (
        Point3(r0.x, r1.x, r2.x),
        Point3(r0.y, r1.y, r2.y),
        Point3(r0.z, r1.z, r2.z),
    )


def _mat_vec(rows: Rows, v: Point3) -> Point3:
    return Point3(rows[0].dot(v), rows[1].dot(v), rows[2].dot(v))


def _mat_mul(a: Rows, b: Rows) -> Rows:
    cols = _transpose(b)
    r0, r1, r2 = (Point3(row.dot(cols[0]), row.dot(cols[1]), row.dot(cols[2])) for row in a)
    return (r0, r1, r2)


@dataclass(frozen=True, slots=True)
class Isometry:
    """Affine isometry ``u -> linear . u + translation``.

    Attributes:
        linear: Rows of the orthogonal linear part.
        translation: Translation vector.
    """

    linear: Rows
    translation: Point3

    def __post_init__(self) -> None:
        product = _mat_mul(self.linear, _transpose(self.linear))
        if product != _E:
            raise ValueError("Linear part is not orthogonal")

    # Construction -----------------------------------------------------------

    @classmethod
    def _trusted(cls, linear: Rows, translation: Point3) -> "Isometry":
        # Products and inverses of orthogonal matrices skip the orthogonality check.
        obj = object.__new__(cls)
        object.__setattr__(obj, "linear", linear)
        object.__setattr__(obj, "translation", translation)
        return obj

    @classmethod
    def identity(cls) -> "Isometry":
        return cls(_E, Point3.zero())

    @classmethod
    def pure_translation(cls, v: Point3) -> "Isometry":
        return cls(_E, v)

    @classmethod
    def from_map(cls, f: Callable[[Point3], Point3]) -> "Isometry":
        """Recover an affine isometry from a function by sampling the origin and unit vectors."""
        origin = f(Point3.zero())
        columns = [f(e) - origin for e in _E]
        rows = _transpose((columns[0], columns[1], columns[2]))
        return cls(rows, origin)

    @classmethod
    def from_points(cls, source: Sequence[Point3], target: Sequence[Point3]) -> "Isometry":
        """The affine isometry sending four affinely independent points to four others.

        Raises:
            DegenerateSimplex: If the source points are coplanar.
            ValueError: If the induced affine map is not an isometry.
        """
        s0, t0 = source[0], target[0]
        ds = [p - s0 for p in source[1:4]]
        dt = [p - t0 for p in target[1:4]]
        # Row k of L solves ds[i] . row_k = dt[i].component_k for i = 0..2.
        rows = []
        for component in ("x", "y", "z"):
            row = solve3(ds, [getattr(d, component) for d in dt])
            if row is None:
                raise DegenerateSimplex("Source points are coplanar")
            rows.append(row)
        linear: Rows = (rows[0], rows[1], rows[2])
        return cls(linear, t0 - _mat_vec(linear, s0))

    @classmethod
    def reflection_through(cls, a: Point3, b: Point3, c: Point3) -> "Isometry":
        """Mirror reflection in the plane through three points."""
        n = (b - a).cross(c - a)
        nn = n.norm2()

        def mirror(u: Point3) -> Point3:
            return u - n.scale(2 * (u - a).dot(n) / nn)

        return cls.from_map(mirror)

    @classmethod
    def from_strings(cls, values: Sequence[str]) -> "Isometry":
        """Inverse of ``to_strings``: nine row-major entries then the translation."""
        q = [rational(v) for v in values]
        rows: Rows = (Point3(*q[0:3]), Point3(*q[3:6]), Point3(*q[6:9]))
        return cls(rows, Point3(*q[9:12]))

    # Algebra ----------------------------------------------------------------

    def apply(self, p: Point3) -> Point3:
        return _mat_vec(self.linear, p) + self.translation

    def __call__(self, p: Point3) -> Point3:
        return self.apply(p)

    def compose(self, other: "Isometry") -> "Isometry":
        """``self`` after ``other``."""
        return Isometry._trusted(
            _mat_mul(self.linear, other.linear),
            _mat_vec(self.linear, other.translation) + self.translation,
        )

    def __matmul__(self, other: "Isometry") -> "Isometry":
        return self.compose(other)

    def inverse(self) -> "Isometry":
        lt = _transpose(self.linear)
        return Isometry._trusted(lt, -_mat_vec(lt, self.translation))

    def power(self, k: int) -> "Isometry":
        result = Isometry.identity()
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            result = base.compose(result)
        return result

    def conjugate_by(self, g: "Isometry") -> "Isometry":
        """``g . self . g^-1``."""
        return g.compose(self).compose(g.inverse())

    def apply_linear(self, v: Point3) -> Point3:
        return _mat_vec(self.linear, v)

    def apply_halfspace(self, h: Halfspace) -> Halfspace:
        """Image of ``n . u <= d``: ``(L n) . u <= d + (L n) . t``."""
        n = self.apply_linear(h.normal)
        return Halfspace.of(n, h.d + n.dot(self.translation))

    def apply_polyhedron(self, poly: ConvexPolyhedron) -> ConvexPolyhedron:
        return poly.map_affine(self.apply, self.apply_halfspace)

    # Classification -----------------------------------------------------------

    @property
    def determinant(self) -> int:
        r0, r1, r2 = self.linear
        return int(r0.dot(r1.cross(r2)))

    @property
    def trace(self) -> Fraction:
        return self.linear[0].x + self.linear[1].y + self.linear[2].z

    def is_identity(self) -> bool:
        return self.linear == _E and self.translation.is_zero()

    def is_translation(self) -> bool:
        return self.linear == _E

    def linear_order(self, limit: int = 12) -> int:
        """Order of the linear part (at most ``limit`` is searched)."""
        current = self.linear
        for k in range(1, limit + 1):
            if current == _E:
                return k
            current = _mat_mul(self.linear, current)
        raise ValueError("Linear part has no finite order within the limit")

    def is_rotation_like(self) -> bool:
        """Orientation preserving with a non-identity linear part."""
        return self.determinant == 1 and self.linear != _E

    def fixes(self, p: Point3) -> bool:
        return self.apply(p) == p

    def to_strings(self) -> list[str]:
        """Twelve "num/den" strings: row-major linear part then translation."""
        entries = [c for row in self.linear for c in row] + list(self.translation)
        return [format_rational(c) for c in entries]

    def __str__(self) -> str:
        # Render as the image of a symbolic point, e.g. "(1-x, -y, z)".
        parts = []
        for row, t in zip(self.linear, self.translation, strict=True):
            terms = []
            for coeff, symbol in zip(row, "xyz", strict=True):
                if coeff == 1:
                    terms.append(f"+{symbol}")
                elif coeff == -1:
                    terms.append(f"-{symbol}")
                elif coeff:
                    sign = "+" if coeff > 0 else ""
                    terms.append(f"{sign}{coeff}*{symbol}")
            text = "".join(terms)
            if t:
                text = f"{t}{text}"
            parts.append(text.lstrip("+") or "0")
        return "(" + ", ".join(parts) + ")"
