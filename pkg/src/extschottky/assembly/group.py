"""Combining basic groups: free products and HNN extensions."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..circles import GeneralizedCircle
from ..errors import EmptyFactorList, HostOverlap, PairingGeometryFailure, WrongTransformClass
from ..moebius import ExtendedMoebius, Tag, apply_to_circle, classify, evaluate
from .basic import BasicGroupSpec, Pairing

# minimal normalized gap between closed host discs of distinct factors
DELTA_SEP = 1e-6


@dataclass(frozen=True)
class GroupAssembly:
    factors: tuple
    n: int | None = None
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def generators(self) -> list:
        """Flattened ``(label, transform)`` pairs, labelled ``<factor>.<name>``."""
        return [(f"{k}.{name}", t) for k, f in enumerate(self.factors) for name, t in f.generators]

    @property
    def hosts(self) -> list:
        return [h for f in self.factors for h in f.hosts]

    def conjugated(self, phi: ExtendedMoebius) -> "GroupAssembly":
        return GroupAssembly(tuple(f.conjugated(phi) for f in self.factors), self.n, dict(self.meta))

    def circles(self) -> list:
        return [c for f in self.factors for c in f.circles()]

    def describe(self) -> str:
        return " * ".join(f.describe() for f in self.factors) or "trivial"


def _check_hosts(factors) -> None:
    for i, fi in enumerate(factors):
        for j in range(i + 1, len(factors)):
            for hi in fi.hosts:
                for hj in factors[j].hosts:
                    sep = hi.separation(hj)
                    if not sep > DELTA_SEP:
                        raise HostOverlap(i, j, sep)


def free_product(factors, n: int | None = None) -> GroupAssembly:
    """Free product of basic groups (or of assemblies, which are flattened).

    The host regions must be pairwise disjoint closed discs with a normalized
    gap above ``DELTA_SEP``; otherwise :class:`HostOverlap` names the pair.
    """
    flat = []
    for f in factors:
        if isinstance(f, GroupAssembly):
            flat.extend(f.factors)
            n = n if n is not None else f.n
        else:
            flat.append(f)
            n = n if n is not None else f.n
    if not flat:
        raise EmptyFactorList("a free product needs at least one factor")
    _check_hosts(flat)
    return GroupAssembly(tuple(flat), n)


def hnn_extend(base: GroupAssembly, d1: GeneralizedCircle, d2: GeneralizedCircle,
               t: ExtendedMoebius, name: str = "t") -> GroupAssembly:
    """Adjoin ``t`` pairing ``d1`` with ``d2``: ``t(ext d1) = int d2``.

    ``t`` must be loxodromic or a glide-reflection. The pairing discs must be
    disjoint from each other and from every host of ``base``.
    """
    cls = classify(t)
    if cls.tag not in (Tag.LOXODROMIC, Tag.GLIDE_REFLECTION):
        raise WrongTransformClass(f"HNN generator must be Loxodromic or GlideReflection, got {cls}")
    if not d1.disjoint(d2, DELTA_SEP):
        raise PairingGeometryFailure("the two pairing discs meet")
    for k, f in enumerate(base.factors):
        for h in f.hosts:
            for d in (d1, d2):
                if not d.disjoint(h, DELTA_SEP):
                    raise PairingGeometryFailure(f"pairing disc meets the host of factor {k}")
    image = apply_to_circle(t, d1)
    if not image.same_circle(d2, 1e-8):
        raise PairingGeometryFailure("t does not carry the first pairing circle onto the second")
    if not image.same_disc(d2.flipped(), 1e-8):
        probe = d1.interior_point()
        raise PairingGeometryFailure(
            f"t maps the first pairing disc into the second (t({probe}) = {evaluate(t, probe)})"
        )
    factor = BasicGroupSpec("HNN", base.n, ((name, t),), {"name": name},
                            pairing=Pairing(d1, d2, name))
    return GroupAssembly(base.factors + (factor,), base.n, dict(base.meta))
