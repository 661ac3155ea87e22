"""The nine basic groups T0-T8 of type n, built in model position and then
moved into a host disc.

Every factor carries the data the ping-pong check needs:

* ``free_disc`` -- a disc E whose translates under the nontrivial factor
  elements are pairwise disjoint from E; the host region is its complement.
* ``pairing`` -- for factors with an infinite cyclic part, discs D, D' with
  ``A(ext D) = int D'``.
* ``finite`` -- the finite part (powers of B, or of the single finite
  generator), which must preserve ``D u D'``.

T8 additionally holds its Fuchsian subgroup F as a nested assembly.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from ..circles import GeneralizedCircle
from ..errors import InvalidOrder, ParityViolation, RelationFailure, WrongTransformClass
from ..moebius import (
    ExtendedMoebius,
    Tag,
    apply_to_circle,
    classify,
    compose,
    conjugate,
    dilation,
    disc_image,
    disc_to_disc,
    from_three_points,
    inverse,
    power,
)

KINDS = ("T0", "T1", "T2", "T3", "T4", "T5", "T6", "T7", "T8")
DEFAULT_LAMBDA = 2.0
RELATION_TOL = 1e-9


@dataclass(frozen=True)
class Element:
    """A nontrivial element of one factor, in the factor's normal form."""

    label: str
    transform: ExtendedMoebius
    length: int
    key: tuple = ()


@dataclass(frozen=True)
class Pairing:
    source: GeneralizedCircle  # disc D
    target: GeneralizedCircle  # disc D'
    generator: str


@dataclass(frozen=True)
class BasicGroupSpec:
    kind: str
    n: Optional[int]
    generators: tuple  # ((name, ExtendedMoebius), ...)
    params: dict = field(default_factory=dict, compare=False)
    free_disc: Optional[GeneralizedCircle] = None
    pairing: Optional[Pairing] = None
    sub: Optional[object] = None  # GroupAssembly for the F part of T8

    # generator access

    def generator(self, name: str) -> ExtendedMoebius:
        for key, t in self.generators:
            if key == name:
                return t
        raise KeyError(name)

    @property
    def pairing_generator(self) -> Optional[ExtendedMoebius]:
        return self.generator(self.pairing.generator) if self.pairing else None

    @property
    def finite_generator(self) -> Optional[tuple]:
        """(name, transform, order) of the finite cyclic part, if any."""
        if self.kind == "T8":
            return None
        for name, t in self.generators:
            if self.pairing and name == self.pairing.generator:
                continue
            if t.order is not None:
                return name, t, t.order
        return None

    @property
    def hosts(self) -> tuple:
        if self.kind == "HNN":
            return (self.pairing.source, self.pairing.target)
        return (self.free_disc.flipped(),)

    def circles(self) -> list:
        """Every circle drawn for this factor (pairing discs, F hosts, host)."""
        out = []
        if self.pairing:
            out += [self.pairing.source, self.pairing.target]
        if self.sub is not None:
            for f in self.sub.factors:
                out += f.circles()
        if self.kind != "HNN":
            out.append(self.free_disc)
        return out

    # elements

    def finite_elements(self) -> list:
        fin = self.finite_generator
        if fin is None:
            return []
        name, t, order = fin
        out = []
        p = t
        for j in range(1, order):
            out.append(Element(_pow_label(name, j), p, 1, (0, j)))
            p = compose(p, t)
        return out

    def elements(self, max_length: int) -> list:
        """Nontrivial elements of length <= max_length, each exactly once."""
        if max_length <= 0:
            return []
        if self.kind == "T8":
            return self._t8_elements(max_length)
        finite = [Element("", ExtendedMoebius.identity(), 0, (0, 0))] + self.finite_elements()
        if not self.pairing:
            return finite[1:]
        a = self.pairing_generator
        aname = self.pairing.generator
        out = []
        for i in _exponents(max_length):
            ai = power(a, i) if i else ExtendedMoebius.identity()
            for g in finite:
                if i == 0 and g.length == 0:
                    continue
                length = abs(i) + g.length
                if length > max_length:
                    continue
                label = " ".join(x for x in (_pow_label(aname, i) if i else "", g.label) if x)
                out.append(Element(label, compose(ai, g.transform), length, (i, g.key[1])))
        return out

    def _t8_elements(self, max_length: int) -> list:
        from .words import enumerate_reduced_words

        sigma = self.generator("s")
        out = [Element("s", sigma, 1, (1, ()))]
        for word, t in enumerate_reduced_words(self.sub, max_length):
            out.append(Element(f"F[{word.label}]", t, word.length, (0, word.letters)))
            if word.length + 1 <= max_length:
                out.append(Element(f"s F[{word.label}]", compose(sigma, t), word.length + 1,
                                   (1, word.letters)))
        return out

    def image_disc(self, element: Element):
        """``(center, radius)`` of the disc ``x(E)`` (or its analogue for HNN
        letters), which lies inside the host region."""
        if self.kind == "HNN":
            i = element.key[0]
            t = self.pairing_generator
            if i > 0:
                return _disc_image(power(t, i - 1), self.pairing.target)
            return _disc_image(power(t, i + 1), self.pairing.source)
        return _disc_image(element.transform, self.free_disc)

    def conjugated(self, phi: ExtendedMoebius) -> "BasicGroupSpec":
        gens = tuple((name, conjugate(phi, t)) for name, t in self.generators)
        free = apply_to_circle(phi, self.free_disc) if self.free_disc else None
        pairing = None
        if self.pairing:
            pairing = Pairing(apply_to_circle(phi, self.pairing.source),
                              apply_to_circle(phi, self.pairing.target),
                              self.pairing.generator)
        sub = self.sub.conjugated(phi) if self.sub is not None else None
        # a recorded host no longer describes the conjugated factor
        params = {k: v for k, v in self.params.items() if k != "host"}
        return replace(self, generators=gens, params=params, free_disc=free, pairing=pairing, sub=sub)

    def placed(self, host: GeneralizedCircle) -> "BasicGroupSpec":
        """Conjugate so that the host region becomes the disc ``host``."""
        if self.kind == "HNN":
            raise ValueError("an HNN factor is placed by its pairing discs")
        phi = disc_to_disc(self.free_disc.flipped(), host)
        return self.conjugated(phi)

    def describe(self) -> str:
        bits = [self.kind]
        keys = ("d", "lam", "orders", "loxodromic") if self.kind == "T8" else ("d", "lam")
        for key in keys:
            if self.params.get(key) not in (None, (), []):
                bits.append(f"{key}={self.params[key]}")
        return " ".join(bits)


def _disc_image(t: ExtendedMoebius, disc: GeneralizedCircle):
    return disc_image(t, disc.center, disc.radius, disc.side == 1)


def _exponents(limit: int):
    yield 0
    for k in range(1, limit + 1):
        yield k
        yield -k


def _pow_label(name: str, k: int) -> str:
    return name if k == 1 else f"{name}^{k}"


# validation


def _check_order_constraints(kind: str, n: int, d: Optional[int], orders=()):
    if n is None or n < 1:
        raise InvalidOrder("n must be a positive integer")
    if kind == "T6" and n % 2:
        raise ParityViolation("T6 requires n even")
    if kind in ("T7", "T8") and n % 2 == 0:
        raise ParityViolation(f"{kind} requires n odd")
    if kind in ("T2", "T4"):
        if d is None or d < 2 or n % d:
            raise InvalidOrder(f"{kind}: elliptic order {d} must be >= 2 and divide n={n}")
    if kind in ("T3", "T5"):
        if d is None or d < 1 or n % d or n % (2 * d) == 0:
            raise InvalidOrder(f"{kind}: order 2d={None if d is None else 2 * d} must divide 2n "
                               f"but not n={n}")
    if kind == "T8":
        for r in orders:
            if r < 2 or n % r:
                raise InvalidOrder(f"T8: elliptic order {r} of F must be >= 2 and divide n={n}")


def _residual(*letters: ExtendedMoebius) -> float:
    """``||W -/+ I||`` for the product W of the letters, relative to their norms.

    Dividing by the product of ``||M|| / sqrt 2`` (which is 1 for unitary
    letters) keeps the residual at rounding level for badly scaled placements.
    """
    w = ExtendedMoebius.identity()
    scale = 1.0
    for t in letters:
        w = compose(w, t)
        scale *= max(1.0, float(np.linalg.norm(t.matrix)) / math.sqrt(2))
    return w.distance_to_identity() / scale


def relation_residuals(spec: BasicGroupSpec) -> dict:
    """Relative residuals of the declared relations of the factor."""
    out = {}
    if spec.kind in ("T4", "T6"):
        a, b = spec.generator("A"), spec.generator("B")
        out["AB=BA"] = _residual(a, b, inverse(a), inverse(b))
    if spec.kind == "T5":
        a, b = spec.generator("A"), spec.generator("B")
        out["B^-1ABA=I"] = _residual(inverse(b), a, b, a)
    if spec.kind == "T8":
        s = spec.generator("s")
        out["sF=Fs"] = max((_residual(s, t, inverse(s), inverse(t)) for _, t in spec.sub.generators),
                           default=0.0)
    fin = spec.finite_generator
    if fin is not None:
        name, t, order = fin
        out[f"{name}^{order}=I"] = _residual(*([t] * order))
    return out


def check_relations(spec: BasicGroupSpec, tol: float = RELATION_TOL) -> None:
    for rel, value in relation_residuals(spec).items():
        if value > tol:
            raise RelationFailure(f"{spec.kind}: relation {rel} fails (residual {value:.3g})")


_EXPECTED = {
    "T0": {"A": (Tag.LOXODROMIC,)},
    "T1": {"A": (Tag.GLIDE_REFLECTION,)},
    "T2": {"B": (Tag.ELLIPTIC,)},
    "T3": {"B": (Tag.PSEUDO_ELLIPTIC, Tag.IMAGINARY_REFLECTION)},
    "T4": {"A": (Tag.LOXODROMIC,), "B": (Tag.ELLIPTIC,)},
    "T5": {"A": (Tag.LOXODROMIC,), "B": (Tag.PSEUDO_ELLIPTIC, Tag.IMAGINARY_REFLECTION)},
    "T6": {"A": (Tag.GLIDE_REFLECTION,), "B": (Tag.ELLIPTIC,)},
    "T7": {"s": (Tag.REFLECTION,)},
    "T8": {"s": (Tag.REFLECTION,)},
}


def check_generator_classes(kind: str, generators) -> None:
    expected = _EXPECTED[kind]
    for name, t in generators:
        if name not in expected:
            raise WrongTransformClass(f"{kind} has no generator named {name!r}")
        tag = classify(t).tag
        if tag not in expected[name]:
            raise WrongTransformClass(f"{kind}: generator {name} is {tag.value}, expected "
                                      f"{'/'.join(x.value for x in expected[name])}")


def validate_generators(kind: str, generators: dict, n: int, d: Optional[int] = None) -> dict:
    """Check explicitly given generators against a kind's class and relations.

    Returns the relation residuals; raises on a wrong class or failed relation.
    """
    _check_order_constraints(kind, n, d)
    gens = []
    for name, t in generators.items():
        if kind in ("T2", "T4") and name == "B":
            t = ExtendedMoebius(t.matrix, t.reversing, d)
        elif kind in ("T3", "T5") and name == "B":
            t = ExtendedMoebius(t.matrix, t.reversing, 2 * d)
        elif kind == "T6" and name == "B":
            t = ExtendedMoebius(t.matrix, t.reversing, 2)
        gens.append((name, t))
    check_generator_classes(kind, gens)
    spec = BasicGroupSpec(kind, n, tuple(gens), {"d": d})
    residuals = relation_residuals(spec)
    for rel, value in residuals.items():
        if value > RELATION_TOL:
            raise RelationFailure(f"{kind}: relation {rel} fails (residual {value:.3g})")
    return residuals


# models


# fraction of the largest admissible free disc actually used
FILL = 0.8


def _annulus_disc(lam: float, angular: float) -> GeneralizedCircle:
    """Disc on the positive axis inside ``lam^-1/2 < |z| < lam^1/2`` whose
    half-angle seen from 0 is below ``angular``."""
    lo, hi = lam ** -0.5, lam ** 0.5
    center = 0.5 * (lo + hi)
    rho = FILL * min(0.5 * (hi - lo), center * math.sin(min(angular, math.pi / 2)))
    return GeneralizedCircle.from_center_radius(center, rho)


def _sector_disc(angle: float) -> GeneralizedCircle:
    """Disc centered at 1 whose half-angle seen from 0 is below ``angle``."""
    return GeneralizedCircle.from_center_radius(1.0, FILL * math.sin(min(angle, math.pi / 2)))


def _loxodromic_pairing(lam: float, name: str = "A") -> Pairing:
    inner = GeneralizedCircle.from_center_radius(0.0, lam ** -0.5)
    outer = GeneralizedCircle.from_center_radius(0.0, lam ** 0.5, interior=False)
    return Pairing(inner, outer, name)


def pseudo_elliptic(d: int) -> ExtendedMoebius:
    """``z -> exp(i pi/d) / conj(z)``, of order 2d (an imaginary reflection for d=1)."""
    mu = cmath.exp(1j * math.pi / d)
    return ExtendedMoebius(np.array([[0, mu], [1, 0]]), True, 2 * d)


def elliptic(d: int) -> ExtendedMoebius:
    """Rotation ``z -> exp(2 pi i/d) z`` of order d."""
    w = cmath.exp(1j * math.pi / d)
    return ExtendedMoebius(np.array([[w, 0], [0, 1 / w]]), False, d)


def unit_circle_reflection() -> ExtendedMoebius:
    return ExtendedMoebius(np.array([[0, 1], [1, 0]]), True, 2)


_CENTRAL_DISC_RADIUS = 0.5


def _model(kind: str, n: int, d: Optional[int], lam: float, orders, loxodromic: int) -> BasicGroupSpec:
    params = {"d": d, "lam": lam, "orders": tuple(orders), "loxodromic": loxodromic}
    if kind in ("T0", "T1"):
        a = dilation(lam, reversing=(kind == "T1"))
        return BasicGroupSpec(kind, n, (("A", a),), params,
                              free_disc=_annulus_disc(lam, math.pi / 2),
                              pairing=_loxodromic_pairing(lam))
    if kind == "T2":
        return BasicGroupSpec(kind, n, (("B", elliptic(d)),), params,
                              free_disc=_sector_disc(math.pi / d))
    if kind == "T3":
        return BasicGroupSpec(kind, n, (("B", pseudo_elliptic(d)),), params,
                              free_disc=_sector_disc(math.pi / (2 * d)))
    if kind == "T4":
        return BasicGroupSpec(kind, n, (("A", dilation(lam)), ("B", elliptic(d))), params,
                              free_disc=_annulus_disc(lam, math.pi / d),
                              pairing=_loxodromic_pairing(lam))
    if kind == "T5":
        return BasicGroupSpec(kind, n, (("A", dilation(lam)), ("B", pseudo_elliptic(d))), params,
                              free_disc=_annulus_disc(lam, math.pi / (2 * d)),
                              pairing=_loxodromic_pairing(lam))
    if kind == "T6":
        b = ExtendedMoebius(np.array([[1j, 0], [0, -1j]]), False, 2)
        return BasicGroupSpec(kind, n, (("A", dilation(lam, reversing=True)), ("B", b)), params,
                              free_disc=_annulus_disc(lam, math.pi / 2),
                              pairing=_loxodromic_pairing(lam))
    if kind == "T7":
        return BasicGroupSpec(kind, n, (("s", unit_circle_reflection()),), params,
                              free_disc=GeneralizedCircle.from_center_radius(0, _CENTRAL_DISC_RADIUS))
    if kind == "T8":
        sub = fuchsian_group(orders, loxodromic, lam)
        return BasicGroupSpec(kind, n, (("s", unit_circle_reflection()),), params,
                              free_disc=GeneralizedCircle.from_center_radius(0, _CENTRAL_DISC_RADIUS),
                              sub=sub)
    raise ValueError(f"unknown kind {kind!r}")


def make_basic(kind: str, n: int, d: Optional[int] = None, lam: float = DEFAULT_LAMBDA,
               orders=(), loxodromic: int = 0, placement: Optional[GeneralizedCircle] = None,
               check: bool = True) -> BasicGroupSpec:
    """Synthesize a basic group of type n.

    ``d`` is the elliptic order for T2/T4 and half the pseudo-elliptic order
    for T3/T5. ``orders`` and ``loxodromic`` describe the Fuchsian part F of
    a T8 factor. Without ``placement`` the model coordinates are kept, where
    loxodromic axes and elliptic fixed points sit at 0 and infinity and the
    reflection circle is the unit circle.
    """
    kind = kind.upper()
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    if lam <= 1:
        raise ValueError("the loxodromic multiplier lam must exceed 1")
    if kind == "T6":
        d = 2
    _check_order_constraints(kind, n, d, orders)
    spec = _model(kind, n, d, lam, orders, loxodromic)
    if placement is not None:
        spec = spec.placed(placement)
        spec.params["host"] = placement
    if check:
        check_generator_classes(kind, spec.generators)
        check_relations(spec)
    return spec


# Fuchsian part of T8


def _orthogonal_disc(angle: float, rho: float) -> GeneralizedCircle:
    """Disc orthogonal to the unit circle, centered on the ray at ``angle``."""
    return GeneralizedCircle.from_center_radius(cmath.rect(math.sqrt(1 + rho ** 2), angle), rho)


def _unit_circle_arc(disc: GeneralizedCircle) -> tuple:
    """Counterclockwise (start, middle, end) of the unit-circle arc inside ``disc``."""
    c, r = disc.center, disc.radius
    half = math.acos(1 / abs(c))
    base = cmath.phase(c)
    a1, a2 = base - half, base + half
    if disc.side == -1:
        a1, a2 = a2, a1 + 2 * math.pi
    mid = 0.5 * (a1 + a2)
    return tuple(cmath.exp(1j * x) for x in (a1, mid, a2))


def disc_automorphism(src: GeneralizedCircle, dst: GeneralizedCircle) -> ExtendedMoebius:
    """A map preserving the unit disc and carrying one orthogonal disc onto another."""
    return from_three_points(_unit_circle_arc(src), _unit_circle_arc(dst))


def _circle_inversion(disc: GeneralizedCircle) -> ExtendedMoebius:
    c, r = disc.center, disc.radius
    # z -> c + r^2 / conj(z - c)
    return ExtendedMoebius(np.array([[c, r * r - abs(c) ** 2], [1, -c.conjugate()]]), True, 2)


def fuchsian_group(orders, loxodromic: int, lam: float = DEFAULT_LAMBDA):
    """F for a T8 factor: a free product of elliptic cyclic groups and
    hyperbolic HNN generators, all preserving the unit circle and commuting
    with the reflection in it."""
    from .group import GroupAssembly, free_product, hnn_extend

    orders = tuple(sorted(orders))
    slots = len(orders) + 2 * loxodromic
    if slots == 0:
        return GroupAssembly(())
    rho = min(0.5, 0.6 * math.tan(math.pi / slots)) if slots > 2 else 0.5
    angles = [2 * math.pi * (j + 0.5) / slots for j in range(slots)]
    factors = []
    for k, r in enumerate(orders):
        model = BasicGroupSpec("F-elliptic", None, (("B", elliptic(r)),), {"d": r},
                               free_disc=_orthogonal_disc(0.0, _orthogonal_radius(math.pi / r)))
        host = _orthogonal_disc(angles[loxodromic + k], rho)
        phi = disc_automorphism(model.free_disc.flipped(), host)
        factors.append(model.conjugated(phi))
    group = free_product(factors) if factors else GroupAssembly(())
    for j in range(loxodromic):
        d1 = _orthogonal_disc(angles[j], rho)
        d2 = _orthogonal_disc(angles[slots - 1 - j], rho)
        # the mirror through the real axis exchanges d1 and d2
        t = compose(ExtendedMoebius(np.eye(2), True), _circle_inversion(d1))
        group = hnn_extend(group, d1, d2, t, name=f"t{j + 1}")
    return group


def _orthogonal_radius(angle: float) -> float:
    """Radius of a disc orthogonal to the unit circle, centered on the positive
    axis, whose half-angle seen from 0 is below ``angle``."""
    s = FILL * math.sin(min(angle, math.pi / 2))
    return s / math.sqrt(1 - s * s)
