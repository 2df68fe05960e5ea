"""Signed image sets for the wedge ``0 < theta < pi/N``.

The image solution is a signed sum over the dihedral group of order 2N:
N rotations by multiples of ``2 pi / N`` (sign +1) and N reflections
(sign -1).  Each group element acts on the *arguments* of a free solution,
``psi(Q @ (x, y))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .gaussian import GaussianPacket2D

CLOSURE_TOL = 1e-10

# cos and sin of 2 pi r for the special first-quadrant fractions r of a turn
_EXACT_QUADRANT = {
    Fraction(0): (1.0, 0.0),
    Fraction(1, 12): (math.sqrt(3.0) / 2, 0.5),
    Fraction(1, 8): (math.sqrt(0.5), math.sqrt(0.5)),
    Fraction(1, 6): (0.5, math.sqrt(3.0) / 2),
}


def turn_cos_sin(k: int, n: int) -> tuple[float, float]:
    """``cos`` and ``sin`` of ``2 pi k / n`` with exact argument reduction.

    The angle is reduced to the first octant in rational arithmetic, so
    quarter-turn symmetries hold exactly and the 30/45/60 degree values are
    correctly rounded (``cos(2 pi / 3)`` is exactly ``-0.5``).
    """
    q = Fraction(k, n) % 1
    quadrant = math.floor(q * 4)
    r = q - Fraction(quadrant, 4)
    if r in _EXACT_QUADRANT:
        cs, sn = _EXACT_QUADRANT[r]
    elif r <= Fraction(1, 8):
        cs, sn = math.cos(2 * math.pi * r), math.sin(2 * math.pi * r)
    else:
        rest = 2 * math.pi * (Fraction(1, 4) - r)
        cs, sn = math.sin(rest), math.cos(rest)
    for _ in range(quadrant):
        cs, sn = -sn, cs
    return cs + 0.0, sn + 0.0


@dataclass(frozen=True)
class PlaneIsometry:
    """Linear map ``(x, y) -> (a x + b y, c x + d y)``."""

    a: float
    b: float
    c: float
    d: float

    @classmethod
    def rotation(cls, phi: float) -> "PlaneIsometry":
        # Counter-clockwise rotation of the argument by phi.
        cs, sn = math.cos(phi), math.sin(phi)
        return cls(cs, -sn, sn, cs)

    @classmethod
    def rotation_turns(cls, k: int, n: int) -> "PlaneIsometry":
        """Rotation by ``2 pi k / n`` with correctly reduced entries."""
        cs, sn = turn_cos_sin(k, n)
        return cls(cs, 0.0 - sn, sn, cs)

    @classmethod
    def identity(cls) -> "PlaneIsometry":
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def reflection(cls, phi: float) -> "PlaneIsometry":
        """Reflection across the line through the origin at polar angle ``phi``."""
        cs, sn = math.cos(2 * phi), math.sin(2 * phi)
        return cls(cs, sn, sn, -cs)

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]])

    @property
    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    def compose(self, other: "PlaneIsometry") -> "PlaneIsometry":
        """``self @ other``: apply ``other`` first."""
        a, b, c, d = self.a, self.b, self.c, self.d
        return PlaneIsometry(
            a * other.a + b * other.c,
            a * other.b + b * other.d,
            c * other.a + d * other.c,
            c * other.b + d * other.d,
        )

    def transpose(self) -> "PlaneIsometry":
        return PlaneIsometry(self.a, self.c, self.b, self.d)

    def apply(self, x, y):
        return self.a * x + self.b * y, self.c * x + self.d * y

    def max_deviation(self, other: "PlaneIsometry") -> float:
        return max(
            abs(self.a - other.a),
            abs(self.b - other.b),
            abs(self.c - other.c),
            abs(self.d - other.d),
        )

    def orthogonality_error(self) -> float:
        a, b, c, d = self.a, self.b, self.c, self.d
        return max(
            abs(a * a + c * c - 1.0),
            abs(b * b + d * d - 1.0),
            abs(a * b + c * d),
            abs(abs(self.det) - 1.0),
        )


@dataclass(frozen=True)
class ImageTerm:
    isometry: PlaneIsometry
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign!r}")


def build_wedge_images(n_wedge: int) -> list[ImageTerm]:
    """The 2N signed argument transforms for the ``pi/N`` wedge.

    Ordered as ``[R_0, R_0 F, R_1, R_1 F, ...]`` where ``R_k`` is the
    rotation by ``2 pi k / N`` and ``F`` is the reflection ``y -> -y``
    across the wall ``theta = 0``.  For N=3 this reproduces the six terms
    of the 60 degree solution in their textbook order.
    """
    if isinstance(n_wedge, bool) or int(n_wedge) != n_wedge or n_wedge < 1:
        raise ValueError(f"n_wedge must be a positive integer, got {n_wedge!r}")
    n_wedge = int(n_wedge)
    flip = PlaneIsometry(1.0, 0.0, 0.0, -1.0)
    terms = []
    for k in range(n_wedge):
        rot = PlaneIsometry.rotation_turns(k, n_wedge)
        terms.append(ImageTerm(rot, 1))
        terms.append(ImageTerm(rot.compose(flip), -1))
    return terms


def inside_wedge(n_wedge: int, x, y):
    """True strictly inside ``r > 0, 0 < theta < pi / N``; walls are outside.

    The wall ``theta = 0`` is tested as ``y > 0`` and the wall
    ``theta = pi / N`` through the sign of the cross product with its unit
    direction, so samples lying on a wall up to rounding of that product
    are excluded.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    theta = math.pi / n_wedge
    cs, sn = math.cos(theta), math.sin(theta)
    cross = cs * y - sn * x  # > 0 beyond the second wall
    if n_wedge == 1:
        return y > 0
    if n_wedge == 2:
        return (y > 0) & (x > 0)
    return (y > 0) & (cross < 0)


@dataclass
class ClosureReport:
    ok: bool
    max_deviation: float
    problems: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def verify_closure(terms: list[ImageTerm], tol: float = CLOSURE_TOL) -> ClosureReport:
    """Check group closure, ``sign == det`` and the N/N determinant split.

    Failures are collected in the report, never raised.
    """
    problems = []
    worst = 0.0
    if not terms:
        return ClosureReport(False, math.inf, ["empty term list"])
    for i, term in enumerate(terms):
        q = term.isometry
        err = q.orthogonality_error()
        worst = max(worst, err)
        if err > tol:
            problems.append(f"term {i}: not orthogonal (error {err:.3e})")
        det_sign = 1 if q.det > 0 else -1
        if det_sign != term.sign:
            problems.append(f"term {i}: sign mismatch (sign {term.sign:+d}, det {q.det:+.3f})")
    n_pos = sum(1 for t in terms if t.isometry.det > 0)
    n_neg = len(terms) - n_pos
    if n_pos != n_neg:
        problems.append(f"determinant split {n_pos}/{n_neg}, expected equal halves")
    identity = PlaneIsometry.identity()
    if terms[0].isometry.max_deviation(identity) > tol or terms[0].sign != 1:
        problems.append("term 0 is not the +1 identity")
    for i, ti in enumerate(terms):
        for j, tj in enumerate(terms):
            prod = ti.isometry.compose(tj.isometry)
            devs = [prod.max_deviation(tk.isometry) for tk in terms]
            k = int(np.argmin(devs))
            worst = max(worst, devs[k])
            if devs[k] > tol:
                problems.append(f"terms {i}*{j}: product not in set (distance {devs[k]:.3e})")
            elif terms[k].sign != ti.sign * tj.sign:
                problems.append(f"terms {i}*{j}: sign not multiplicative")
    return ClosureReport(not problems, worst, problems)


@dataclass(frozen=True)
class WedgeSystem:
    """Wedge index, its signed image terms, and the packet being imaged."""

    n_wedge: int
    terms: tuple[ImageTerm, ...]
    packet: GaussianPacket2D

    @classmethod
    def build(cls, n_wedge: int, packet: GaussianPacket2D) -> "WedgeSystem":
        return cls(n_wedge, tuple(build_wedge_images(n_wedge)), packet)

    @property
    def wedge_angle(self) -> float:
        return math.pi / self.n_wedge

    def image_centers(self, t=0.0) -> np.ndarray:
        """Classical centers of every image packet at time ``t``, shape (2N, 2).

        Term ``psi(Q r)`` peaks where ``Q r`` equals the packet center, i.e.
        at ``Q^T`` applied to the center.
        """
        px, py = self.packet.px_params, self.packet.py_params
        cx = px.x0 + px.p0 * t / px.m
        cy = py.x0 + py.p0 * t / py.m
        return np.array([term.isometry.transpose().apply(cx, cy) for term in self.terms])
