"""Points of the Riemann sphere and generalized circles with a chosen disc.

A generalized circle is stored as the Hermitian form

    A |z|^2 + B conj(z) + conj(B) z + C,      A, C real,

and the closed disc it bounds is ``{z : side * form(z) <= 0}``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DegenerateCircle


class Infinity:
    """The point at infinity. Use the module singleton ``INF``."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (Infinity, ())


INF = Infinity()

SpherePoint = Union[complex, Infinity]


def is_inf(z) -> bool:
    return z is INF


def chordal_distance(z: SpherePoint, w: SpherePoint) -> float:
    """Chordal distance on the unit sphere (diameter 2)."""
    if is_inf(z) and is_inf(w):
        return 0.0
    if is_inf(z):
        z, w = w, z
    if is_inf(w):
        return 2.0 / math.sqrt(1.0 + abs(z) ** 2)
    return 2.0 * abs(z - w) / math.sqrt((1.0 + abs(z) ** 2) * (1.0 + abs(w) ** 2))


_TOL = 1e-13


@dataclass(frozen=True)
class GeneralizedCircle:
    A: float
    B: complex
    C: float
    side: int = 1

    def __post_init__(self):
        A, B, C = float(self.A), complex(self.B), float(self.C)
        if abs(B) ** 2 - A * C <= 0:
            raise DegenerateCircle(f"|B|^2 - AC = {abs(B) ** 2 - A * C:.3g} <= 0")
        if self.side not in (1, -1):
            raise ValueError("side must be +1 or -1")
        scale = max(abs(A), abs(B), abs(C))
        A, B, C = A / scale, B / scale, C / scale
        side = self.side
        flip = False
        if abs(A) > _TOL:
            flip = A < 0
        else:
            A = 0.0
            flip = B.real < -_TOL or (abs(B.real) <= _TOL and B.imag < 0)
        if flip:
            A, B, C, side = -A, -B, -C, -side
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "C", C)
        object.__setattr__(self, "side", side)

    # constructors

    @classmethod
    def from_center_radius(cls, center: complex, radius: float, interior: bool = True):
        center = complex(center)
        if radius <= 0:
            raise DegenerateCircle("radius must be positive")
        return cls(1.0, -center, abs(center) ** 2 - radius ** 2, 1 if interior else -1)

    @classmethod
    def line(cls, point: complex, normal: complex):
        """Line through ``point``; the disc is the half-plane ``normal`` points away from."""
        normal = complex(normal) / abs(normal)
        # Re(conj(normal) (z - point)) <= 0
        B = normal / 2
        return cls(0.0, B, -(normal.conjugate() * complex(point)).real, 1)

    @classmethod
    def from_hermitian(cls, H, side: int = 1):
        H = np.asarray(H, dtype=complex)
        return cls(H[0, 0].real, H[0, 1], H[1, 1].real, side)

    @classmethod
    def through(cls, z1: complex, z2: complex, z3: complex, inside: SpherePoint | None = None):
        """Circle through three finite points; ``inside`` picks the disc."""
        # solve A|z|^2 + 2 Re(conj(B) z) + C = 0 for real unknowns A, Re B, Im B, C
        rows = []
        for z in (z1, z2, z3):
            z = complex(z)
            rows.append([abs(z) ** 2, 2 * z.real, 2 * z.imag, 1.0])
        _, _, vh = np.linalg.svd(np.array(rows))
        A, br, bi, C = vh[-1]
        circle = cls(A, complex(br, bi), C, 1)
        if inside is not None and not circle.contains(inside):
            circle = circle.flipped()
        return circle

    # geometry

    @property
    def hermitian(self) -> np.ndarray:
        return np.array([[self.A, self.B], [self.B.conjugate(), self.C]], dtype=complex)

    @property
    def is_line(self) -> bool:
        return self.A == 0.0

    @property
    def center(self) -> complex:
        if self.is_line:
            raise DegenerateCircle("a line has no center")
        return -self.B / self.A

    @property
    def radius(self) -> float:
        if self.is_line:
            return math.inf
        return math.sqrt(abs(self.B) ** 2 - self.A * self.C) / abs(self.A)

    @property
    def bounded(self) -> bool:
        """True when the chosen disc is a bounded Euclidean disc."""
        return not self.is_line and self.side == 1

    def form(self, z: SpherePoint) -> float:
        if is_inf(z):
            return math.copysign(math.inf, self.A) if self.A else 0.0
        return (self.A * abs(z) ** 2 + 2 * (self.B.conjugate() * z).real + self.C)

    def signed_distance(self, z: SpherePoint) -> float:
        """Euclidean distance to the circle, negative inside the chosen disc."""
        if is_inf(z):
            if self.is_line:
                return 0.0
            return -math.inf if self.side == -1 else math.inf
        if self.is_line:
            # form is 2 Re(conj(B) z) + C, with |2B| the gradient norm
            return self.side * self.form(z) / (2 * abs(self.B))
        return self.side * (abs(z - self.center) - self.radius)

    def contains(self, z: SpherePoint, tol: float = 0.0) -> bool:
        return self.signed_distance(z) <= tol

    def flipped(self) -> "GeneralizedCircle":
        return GeneralizedCircle(self.A, self.B, self.C, -self.side)

    def same_circle(self, other: "GeneralizedCircle", tol: float = 1e-9) -> bool:
        v = np.array([self.A, self.B.real, self.B.imag, self.C])
        w = np.array([other.A, other.B.real, other.B.imag, other.C])
        return bool(min(np.linalg.norm(v - w), np.linalg.norm(v + w)) <= tol)

    def same_disc(self, other: "GeneralizedCircle", tol: float = 1e-9) -> bool:
        v = self.side * np.array([self.A, self.B.real, self.B.imag, self.C])
        w = other.side * np.array([other.A, other.B.real, other.B.imag, other.C])
        return bool(np.linalg.norm(v - w) <= tol)

    def sample(self, k: int = 16) -> list[complex]:
        """``k`` finite points on the circle."""
        if self.is_line:
            foot = -self.C * self.B / (2 * abs(self.B) ** 2)
            tangent = 1j * self.B / abs(self.B)
            ts = np.tan(np.pi * (np.arange(k) + 0.5) / k - np.pi / 2)
            return [foot + t * tangent for t in ts]
        c, r = self.center, self.radius
        return [c + r * cmath.exp(2j * math.pi * j / k) for j in range(k)]

    def interior_point(self) -> SpherePoint:
        """A point well inside the chosen disc."""
        if self.is_line:
            foot = -self.C * self.B / (2 * abs(self.B) ** 2)
            inward = -self.side * self.B / abs(self.B)
            return foot + inward
        if self.side == 1:
            return self.center
        return INF

    def separation(self, other: "GeneralizedCircle") -> float:
        """Positive gap between the closed discs, normalized by scale; <= 0 if they meet."""
        s, o = self, other
        if not s.bounded and o.bounded:
            s, o = o, s
        if s.bounded and o.bounded:
            gap = abs(s.center - o.center) - s.radius - o.radius
            return gap / max(1.0, s.radius, o.radius)
        if s.bounded and not o.is_line:
            # o is the exterior of a circle: s must sit inside the complementary open disc
            gap = o.radius - abs(s.center - o.center) - s.radius
            return gap / max(1.0, s.radius, o.radius)
        if s.bounded and o.is_line:
            gap = o.signed_distance(s.center) - s.radius
            return gap / max(1.0, s.radius)
        if s.is_line and o.is_line:
            nu_s = s.side * s.B / abs(s.B)
            nu_o = o.side * o.B / abs(o.B)
            if abs(nu_s + nu_o) > 1e-12:
                return -math.inf
            return o.signed_distance(s.sample(1)[0])
        # both discs contain infinity
        return -math.inf

    def disjoint(self, other: "GeneralizedCircle", margin: float = 0.0) -> bool:
        return self.separation(other) > margin

    def inside(self, other: "GeneralizedCircle", margin: float = 0.0) -> bool:
        """True when this closed disc lies in the interior of ``other``."""
        return self.separation(other.flipped()) > margin

    def __str__(self):
        if self.is_line:
            return f"line(B={self.B:.6g}, C={self.C:.6g}, side={self.side:+d})"
        kind = "disc" if self.side == 1 else "exterior"
        return f"{kind}(center={self.center:.6g}, radius={self.radius:.6g})"
