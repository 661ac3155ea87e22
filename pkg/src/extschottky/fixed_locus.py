"""Fixed-point loci of the powers of an order-2n symmetry of a handlebody,
read off factor by factor from a signature, and the quotient orbifolds in
the odd-n regime without reflections."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction

from .errors import (
    InvalidOrder,
    NonIntegral,
    NotAdmissible,
    ParityConstraintViolated,
    RegimeMismatch,
)
from .signatures import Signature, in_odd_regime, is_admissible

SHAPES = ("arc", "loop", "isolated point", "disc", "bordered surface")
LOCATIONS = ("interior", "meets boundary", "boundary")


@dataclass(frozen=True)
class LocusComponent:
    shape: str
    count: int
    fixed_by: int  # the components lie in Fix(tau^fixed_by)
    location: str  # "interior" or "meets boundary"
    source: str
    note: str = ""

    def row(self) -> str:
        return f"{self.source}\t{self.shape}\t{self.count}\ttau^{self.fixed_by}\t{self.location}\t{self.note}"


@dataclass(frozen=True)
class OrbifoldSignature:
    genus: int
    sign: str  # "+" orientable, "-" non-orientable
    orders: tuple

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(sorted(o for o in self.orders if o >= 2)))

    def __str__(self):
        cones = ",".join(str(o) for o in self.orders) or "-"
        sign = "-" if self.sign == "-" else "+"
        return f"({self.genus}; {sign}; {cones})"


def _odd_quotient(n: int, d: int, what: str) -> None:
    if (n // d) % 2 == 0:
        raise ParityConstraintViolated(f"{what}: n/d = {n // d} must be odd")


def locus_report(s: Signature) -> list:
    """One rule application per factor, in canonical factor order."""
    ok, reason = is_admissible(s)
    if not ok:
        raise NotAdmissible(reason)
    n = s.n
    out = []
    for kind, p in s.factors():
        if kind in ("T0", "T1"):
            continue
        if kind == "T2":
            out.append(LocusComponent("arc", 2 * n // p, 2 * n // p, "meets boundary", f"T2({p})"))
        elif kind == "T3":
            d = p // 2
            src = f"T3({p})"
            if d == 1:
                if n % 2 == 0:
                    raise ParityConstraintViolated("an imaginary reflection requires n odd")
                out.append(LocusComponent("isolated point", n, n, "interior", src))
            else:
                _odd_quotient(n, d, src)
                out.append(LocusComponent("arc", n // d, 2 * n // d, "meets boundary", src))
                out.append(LocusComponent("isolated point", n // d, n // d, "interior", src))
        elif kind == "T4":
            out.append(LocusComponent("loop", 2 * n // p, 2 * n // p, "interior", f"T4({p})"))
        elif kind == "T5":
            d = p // 2
            src = f"T5({p})"
            if d == 1:
                if n % 2 == 0:
                    raise ParityConstraintViolated("an imaginary reflection requires n odd")
                out.append(LocusComponent("isolated point", 2 * n, n, "interior", src))
            else:
                _odd_quotient(n, d, src)
                out.append(LocusComponent("loop", 2 * n // d, 2 * n // d, "interior", src,
                                          "lifted from a conical arc; recorded as loops"))
                out.append(LocusComponent("isolated point", 2 * n // d, n // d, "interior", src,
                                          "two conical endpoints, n/d lifts each"))
        elif kind == "T6":
            out.append(LocusComponent("loop", n, n, "interior", "T6"))
        elif kind == "T7":
            out.append(LocusComponent("disc", n, n, "meets boundary", "T7"))
        else:
            src = f"T8(F orders={list(p.orders)}, loxodromic={p.loxodromic})"
            out.append(LocusComponent("bordered surface", n, n, "meets boundary", src))
    return out


def conformal_locus_report(a: int, elliptic_orders, abelian_orders, n: int) -> tuple:
    """Locus for a conformal order-n automorphism built from ``a`` loxodromic
    cyclic groups, elliptic cyclic groups and Z_l + Z groups.

    Returns ``(components, quotient genus)``.
    """
    out = []
    for k in list(elliptic_orders) + list(abelian_orders):
        if k < 2 or n % k:
            raise InvalidOrder(f"order {k} must be >= 2 and divide n={n}")
    for k in elliptic_orders:
        out.append(LocusComponent("arc", n // k, n // k, "meets boundary", f"elliptic({k})"))
    for k in abelian_orders:
        out.append(LocusComponent("loop", n // k, n // k, "interior", f"abelian({k})"))
    return out, len(elliptic_orders) + len(abelian_orders)


def _require_regime(s: Signature) -> None:
    if not in_odd_regime(s):
        raise RegimeMismatch("quotient orbifolds are described for n odd without T6, T7, T8")


def quotient_orbifold_signatures(s: Signature) -> tuple:
    """``(O, O+)``: the non-orientable quotient by the whole group and the
    orientable quotient by its orientation-preserving half."""
    _require_regime(s)
    genus = 2 * (s.a0 + s.a1) + len(s.t3) + 2 * len(s.t4) + 2 * len(s.t5)
    halves = [k // 2 for k in s.t3]
    full = OrbifoldSignature(genus, "-", [l for l in s.t2 for _ in range(2)] + halves)
    plus = OrbifoldSignature(genus - 1, "+",
                             [l for l in s.t2 for _ in range(4)] + [r for r in halves for _ in range(2)])
    return full, plus


def genus_from_orbifold(s: Signature) -> int:
    """Genus of the n-fold branched cover of O+ (Riemann-Hurwitz)."""
    _, plus = quotient_orbifold_signatures(s)
    # 2g - 2 = n (2 genus(O+) - 2 + sum(1 - 1/m)); order-1 cones contribute nothing
    area = Fraction(2 * plus.genus - 2) + sum((1 - Fraction(1, m) for m in plus.orders), Fraction(0))
    g = s.n * area / 2 + 1
    if g.denominator != 1:
        raise NonIntegral(f"genus evaluates to {g}")
    return int(g)


def report_json(s: Signature) -> dict:
    data = {"signature": s.to_json(), "components": [asdict(c) for c in locus_report(s)]}
    if in_odd_regime(s):
        full, plus = quotient_orbifold_signatures(s)
        data["orbifold"] = str(full)
        data["orbifold_plus"] = str(plus)
        data["genus"] = genus_from_orbifold(s)
    return data
