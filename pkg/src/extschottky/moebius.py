"""Conformal and anticonformal automorphisms of the Riemann sphere.

An :class:`ExtendedMoebius` stores a normalized matrix ``[a, b; c, d]`` and an
orientation flag. Orientation-preserving maps act by ``z -> (az+b)/(cz+d)``,
reversing ones by ``z -> (a conj(z) + b)/(c conj(z) + d)``.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .circles import INF, GeneralizedCircle, SpherePoint, is_inf
from .errors import IdentityInput, InvalidOrder, NumericallyAmbiguous

EPS_DET = 1e-12
EPS_CLASS = 1e-9
# classification snaps within EPS_CLASS and refuses to decide up to this multiple of it
AMBIGUITY_FACTOR = 100.0
MAX_ORDER_SEARCH = 720


def _canonical_sign(m: np.ndarray) -> np.ndarray:
    flat = m.ravel()
    scale = np.max(np.abs(flat))
    for x in flat:
        if abs(x) > 1e-12 * scale:
            if x.real > 1e-12 * scale:
                return m
            if x.real < -1e-12 * scale or x.imag < 0:
                return -m
            return m
    return m


def _normalize(m) -> np.ndarray:
    m = np.asarray(m, dtype=complex).reshape(2, 2)
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    if abs(det) < 1e-300:
        raise ValueError("singular matrix")
    m = m / cmath.sqrt(det)
    return _canonical_sign(m)


@dataclass(frozen=True, eq=False)
class ExtendedMoebius:
    matrix: np.ndarray
    reversing: bool = False
    order: Optional[int] = field(default=None, compare=False)
    # set by compose/inverse, whose outputs already have determinant 1
    _unit_det: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        m = self.matrix if self._unit_det else _normalize(self.matrix)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "reversing", bool(self.reversing))

    @classmethod
    def from_coefficients(cls, a, b, c, d, reversing=False, order=None):
        return cls(np.array([[a, b], [c, d]], dtype=complex), reversing, order)

    @classmethod
    def identity(cls):
        return cls(np.eye(2, dtype=complex))

    @property
    def a(self) -> complex:
        return complex(self.matrix[0, 0])

    @property
    def b(self) -> complex:
        return complex(self.matrix[0, 1])

    @property
    def c(self) -> complex:
        return complex(self.matrix[1, 0])

    @property
    def d(self) -> complex:
        return complex(self.matrix[1, 1])

    @property
    def trace(self) -> complex:
        return self.a + self.d

    def __call__(self, z: SpherePoint) -> SpherePoint:
        return evaluate(self, z)

    def __matmul__(self, other: "ExtendedMoebius") -> "ExtendedMoebius":
        return compose(self, other)

    def inverse(self) -> "ExtendedMoebius":
        return inverse(self)

    def __pow__(self, k: int) -> "ExtendedMoebius":
        return power(self, k)

    def distance_to_identity(self) -> float:
        """min over signs of ||M -/+ I||; infinite for orientation-reversing maps."""
        if self.reversing:
            return math.inf
        eye = np.eye(2)
        return float(min(np.linalg.norm(self.matrix - eye), np.linalg.norm(self.matrix + eye)))

    def isclose(self, other: "ExtendedMoebius", tol: float = 1e-9) -> bool:
        if self.reversing != other.reversing:
            return False
        return bool(min(np.linalg.norm(self.matrix - other.matrix),
                        np.linalg.norm(self.matrix + other.matrix)) <= tol)

    def __repr__(self):
        return f"ExtendedMoebius({format_transform(self)})"


def compose(s: ExtendedMoebius, t: ExtendedMoebius) -> ExtendedMoebius:
    """``s o t``. The inner matrix is conjugated when the outer map reverses orientation."""
    inner = t.matrix.conj() if s.reversing else t.matrix
    m = _canonical_sign(s.matrix @ inner)
    return ExtendedMoebius(m, s.reversing != t.reversing, None, True)


def inverse(t: ExtendedMoebius) -> ExtendedMoebius:
    m = t.matrix
    inv = np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]])
    if t.reversing:
        inv = inv.conj()
    return ExtendedMoebius(_canonical_sign(inv), t.reversing, t.order, True)


def power(t: ExtendedMoebius, k: int) -> ExtendedMoebius:
    if k < 0:
        return power(inverse(t), -k)
    result = ExtendedMoebius.identity()
    base = t
    while k:
        if k & 1:
            result = compose(result, base)
        base = compose(base, base)
        k >>= 1
    return result


def conjugate(g: ExtendedMoebius, t: ExtendedMoebius) -> ExtendedMoebius:
    """``g t g^-1`` carrying the declared order along."""
    out = compose(compose(g, t), inverse(g))
    return ExtendedMoebius(out.matrix, out.reversing, t.order)


def evaluate(t: ExtendedMoebius, z: SpherePoint) -> SpherePoint:
    a, b, c, d = t.a, t.b, t.c, t.d
    if is_inf(z):
        if abs(c) <= 1e-15 * max(abs(a), 1.0):
            return INF
        return a / c
    w = complex(z).conjugate() if t.reversing else complex(z)
    num = a * w + b
    den = c * w + d
    if abs(den) <= 1e-15 * max(abs(num), 1e-300):
        return INF
    return num / den


# classification


class Tag(str, enum.Enum):
    IDENTITY = "Identity"
    ELLIPTIC = "Elliptic"
    PARABOLIC = "Parabolic"
    LOXODROMIC = "Loxodromic"
    REFLECTION = "Reflection"
    IMAGINARY_REFLECTION = "ImaginaryReflection"
    PSEUDO_ELLIPTIC = "PseudoElliptic"
    GLIDE_REFLECTION = "GlideReflection"
    PSEUDO_PARABOLIC = "PseudoParabolic"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class TransformClass:
    tag: Tag
    order: Optional[int] = None
    angle: Optional[float] = None
    multiplier: Optional[float] = None

    def __str__(self):
        if self.tag in (Tag.ELLIPTIC, Tag.PSEUDO_ELLIPTIC) and self.order:
            return f"{self.tag.value}({self.order})"
        if self.tag is Tag.LOXODROMIC and self.multiplier is not None:
            return f"Loxodromic(|k|={self.multiplier:.6g})"
        return self.tag.value


def _finite_order(t: ExtendedMoebius, eps: float, limit: int = MAX_ORDER_SEARCH) -> Optional[int]:
    p = t
    for k in range(1, limit + 1):
        if p.distance_to_identity() <= eps * 10 * k:
            return k
        p = compose(p, t)
    return None


def _verify_declared_order(t: ExtendedMoebius, eps: float) -> int:
    k = t.order
    if power(t, k).distance_to_identity() > eps * 10 * k:
        raise InvalidOrder(f"declared order {k} does not annihilate the transformation")
    for j in range(1, k):
        if k % j == 0 and power(t, j).distance_to_identity() <= eps * 10 * j:
            raise InvalidOrder(f"declared order {k} but t^{j} is the identity")
    return k


def _classify_preserving(t: ExtendedMoebius, eps: float) -> TransformClass:
    t2 = t.trace ** 2
    band = AMBIGUITY_FACTOR * eps
    near4 = abs(t2 - 4)
    if near4 <= eps:
        if t.distance_to_identity() <= math.sqrt(eps):
            return TransformClass(Tag.IDENTITY, order=1)
        return TransformClass(Tag.PARABOLIC)
    if near4 <= band:
        raise NumericallyAmbiguous(f"trace^2 = {t2:.12g} is within {band:g} of 4")
    # distance from trace^2 to the real segment [0, 4]
    x = min(max(t2.real, 0.0), 4.0)
    dist = abs(t2 - x)
    if dist <= eps:
        c = min(max(math.sqrt(max(t2.real, 0.0)) / 2, 0.0), 1.0)
        angle = 2 * math.acos(c)
        order = _verify_declared_order(t, eps) if t.order else _finite_order(t, eps)
        return TransformClass(Tag.ELLIPTIC, order=order, angle=angle)
    if dist <= band:
        raise NumericallyAmbiguous(f"trace^2 = {t2:.12g} is within {band:g} of [0, 4]")
    tr = t.trace
    root = cmath.sqrt(tr * tr - 4)
    k = abs((tr + root) / 2) ** 2
    if k < 1:
        k = 1 / k
    return TransformClass(Tag.LOXODROMIC, multiplier=k)


def classify(t: ExtendedMoebius, eps: float = EPS_CLASS) -> TransformClass:
    if not t.reversing:
        return _classify_preserving(t, eps)
    square = compose(t, t)
    inner = _classify_preserving(square, eps)
    if inner.tag is Tag.IDENTITY:
        tag = Tag.REFLECTION if reflection_sign(t) == 1 else Tag.IMAGINARY_REFLECTION
        return TransformClass(tag, order=2)
    if inner.tag is Tag.ELLIPTIC:
        if t.order:
            order = _verify_declared_order(t, eps)
        else:
            order = 2 * inner.order if inner.order else None
        return TransformClass(Tag.PSEUDO_ELLIPTIC, order=order, angle=inner.angle)
    if inner.tag is Tag.LOXODROMIC:
        return TransformClass(Tag.GLIDE_REFLECTION, multiplier=math.sqrt(inner.multiplier))
    return TransformClass(Tag.PSEUDO_PARABOLIC)


def reflection_sign(t: ExtendedMoebius) -> int:
    """+1 when ``M conj(M) = +I`` and -1 when it is ``-I`` (orientation-reversing input)."""
    mm = t.matrix @ t.matrix.conj()
    return 1 if np.linalg.norm(mm - np.eye(2)) <= np.linalg.norm(mm + np.eye(2)) else -1


# fixed points


@dataclass(frozen=True)
class FixedSet:
    points: tuple = ()
    circle: Optional[GeneralizedCircle] = None

    @property
    def empty(self) -> bool:
        return not self.points and self.circle is None


def _quadratic_fixed_points(m: np.ndarray) -> tuple:
    a, b, c, d = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
    scale = max(abs(a), abs(b), abs(c), abs(d))
    if abs(c) <= 1e-14 * scale:
        if abs(d - a) <= 1e-14 * scale:
            return (INF,)
        return (complex(b / (d - a)), INF)
    disc = cmath.sqrt((d - a) ** 2 + 4 * b * c)
    z1 = complex((a - d + disc) / (2 * c))
    z2 = complex((a - d - disc) / (2 * c))
    if abs(z1 - z2) <= 1e-12 * max(1.0, abs(z1)):
        return (z1,)
    return tuple(sorted((z1, z2), key=lambda z: (z.real, z.imag)))


def _reflection_circle(t: ExtendedMoebius) -> GeneralizedCircle:
    a, b, c, d = t.a, t.b, t.c, t.d
    # fixed points satisfy c|z|^2 - a conj(z) + d z - b = 0; rotate to a Hermitian form
    n = np.array([[c, -a], [d, -b]])
    i, j = np.unravel_index(np.argmax(np.abs(n)), n.shape)
    ratio = n[j, i].conjugate() / n[i, j]
    h = cmath.exp(0.5j * cmath.phase(ratio)) * n
    return GeneralizedCircle.from_hermitian(0.5 * (h + h.conj().T))


def fixed_set(t: ExtendedMoebius, eps: float = EPS_CLASS) -> FixedSet:
    if not t.reversing:
        if t.distance_to_identity() <= eps:
            raise IdentityInput("the identity fixes every point")
        return FixedSet(points=_quadratic_fixed_points(t.matrix))
    cls = classify(t, eps)
    if cls.tag is Tag.REFLECTION:
        return FixedSet(circle=_reflection_circle(t))
    if cls.tag is Tag.IMAGINARY_REFLECTION:
        return FixedSet()
    square = compose(t, t)
    candidates = _quadratic_fixed_points(square.matrix)
    keep = []
    for p in candidates:
        q = evaluate(t, p)
        if is_inf(p) and is_inf(q):
            keep.append(p)
        elif not is_inf(p) and not is_inf(q) and abs(p - q) <= 1e-9 * max(1.0, abs(p)):
            keep.append(p)
    return FixedSet(points=tuple(keep))


# circles


def apply_to_circle(t: ExtendedMoebius, circle: GeneralizedCircle) -> GeneralizedCircle:
    """Image of the circle and of its chosen disc."""
    m = t.matrix
    inv = np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]])
    h = circle.hermitian
    if t.reversing:
        p = inv.conj()
        out = (p.conj().T @ h @ p).conj()
    else:
        out = inv.conj().T @ h @ inv
    out = 0.5 * (out + out.conj().T)
    return GeneralizedCircle.from_hermitian(out, circle.side)


def disc_image(t: ExtendedMoebius, center: complex, radius: float, interior: bool = True):
    """Image of the disc ``|z - center| <= radius`` (or its exterior) as
    ``(center, radius)``, or None when the image contains infinity.

    Works from the pole's mirror point so that tiny discs keep their radius.
    """
    return disc_image_coeffs((t.a, t.b, t.c, t.d, t.reversing), center, radius, interior)


def disc_image_coeffs(m: tuple, center: complex, radius: float, interior: bool = True):
    """:func:`disc_image` for a raw ``(a, b, c, d, reversing)`` tuple."""
    a, b, c, d, reversing = m
    if reversing:
        center = complex(center).conjugate()

    def g(z):
        return (a * z + b) / (c * z + d)

    scale = max(abs(a), abs(b), abs(c), abs(d))
    if abs(c) <= 1e-15 * scale:
        if not interior:
            return None
        return g(center), abs(a / d) * radius
    pole = -d / c
    offset = pole - center
    if (abs(offset) < radius) == interior:
        return None
    if abs(offset) <= 1e-300:
        mirror_image = a / c
        boundary = center + radius
    else:
        mirror_image = g(center + radius * radius / offset.conjugate())
        boundary = center - radius * offset / abs(offset)
    return mirror_image, abs(g(boundary) - mirror_image)


# constructors


def from_three_points(src, dst) -> ExtendedMoebius:
    """Orientation-preserving map sending src[k] to dst[k]; entries may be INF."""

    def to_zero_one_inf(z1, z2, z3):
        # z -> (z - z1)(z2 - z3) / ((z - z3)(z2 - z1)) with infinity cases
        if is_inf(z1):
            return np.array([[0, z2 - z3], [1, -z3]], dtype=complex)
        if is_inf(z2):
            return np.array([[1, -z1], [1, -z3]], dtype=complex)
        if is_inf(z3):
            return np.array([[1, -z1], [0, z2 - z1]], dtype=complex)
        return np.array([[z2 - z3, -z1 * (z2 - z3)], [z2 - z1, -z3 * (z2 - z1)]], dtype=complex)

    f = to_zero_one_inf(*src)
    g = to_zero_one_inf(*dst)
    g_inv = np.array([[g[1, 1], -g[0, 1]], [-g[1, 0], g[0, 0]]])
    return ExtendedMoebius(g_inv @ f)


def disc_to_disc(src: GeneralizedCircle, dst: GeneralizedCircle) -> ExtendedMoebius:
    """An orientation-preserving map carrying the disc of ``src`` onto the disc of ``dst``."""
    p = src.sample(3)
    q = dst.sample(3)
    t = from_three_points(p, q)
    probe = src.interior_point()
    if not dst.contains(evaluate(t, probe)):
        t = from_three_points(p, (q[2], q[1], q[0]))
    return t


def rotation(angle: float, order: Optional[int] = None) -> ExtendedMoebius:
    half = cmath.exp(0.5j * angle)
    return ExtendedMoebius(np.array([[half, 0], [0, 1 / half]]), False, order)


def dilation(k: complex, reversing: bool = False) -> ExtendedMoebius:
    """``z -> k z`` (or ``k conj(z)``)."""
    r = cmath.sqrt(k)
    return ExtendedMoebius(np.array([[r, 0], [0, 1 / r]]), reversing)


def conjugation() -> ExtendedMoebius:
    """``J(z) = conj(z)``."""
    return ExtendedMoebius(np.eye(2), True, 2)


# text form


def _fmt_complex(x: complex) -> str:
    re = 0.0 if x.real == 0 else x.real
    im = 0.0 if x.imag == 0 else x.imag
    return f"{re:.17g}{'+' if im >= 0 else '-'}{abs(im):.17g}i"


def format_transform(t: ExtendedMoebius) -> str:
    a, b, c, d = (_fmt_complex(x) for x in (t.a, t.b, t.c, t.d))
    return f"[{a}, {b}; {c}, {d}] {'-' if t.reversing else '+'}"


def _parse_complex(s: str) -> complex:
    s = s.strip().replace(" ", "").replace("I", "i")
    if not s:
        raise ValueError("empty entry")
    if s.endswith("i"):
        body = s[:-1]
        if body in ("", "+", "-"):
            s = body + "1i"
    return complex(s.replace("i", "j"))


def parse_transform(text: str) -> ExtendedMoebius:
    """Parse ``[a, b; c, d] +`` (or ``-``, ``preserving``, ``reversing``)."""
    text = text.strip()
    if not text.startswith("[") or "]" not in text:
        raise ValueError(f"cannot parse transformation {text!r}")
    body, _, tail = text[1:].partition("]")
    rows = body.split(";")
    if len(rows) != 2:
        raise ValueError("expected two rows separated by ';'")
    entries = [_parse_complex(x) for row in rows for x in row.split(",")]
    if len(entries) != 4:
        raise ValueError("expected four matrix entries")
    flag = tail.strip().lower()
    if flag in ("", "+", "preserving"):
        reversing = False
    elif flag in ("-", "reversing"):
        reversing = True
    else:
        raise ValueError(f"unknown orientation flag {flag!r}")
    return ExtendedMoebius.from_coefficients(*entries, reversing=reversing)
