"""Signatures of general groups of type n: admissibility, epimorphisms onto
Z_2n, and the rank of the resulting Schottky subgroup.

A signature lists the basic factors of a general group of type n. Orders of
T3 and T5 pseudo-elliptics are stored as the full order 2d.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import (
    InvalidSignature,
    NonIntegralRank,
    NotAdmissible,
    RegimeMismatch,
    SearchSpaceExceeded,
)

SEARCH_CAP = 10 ** 6


class SignatureFormatError(ValueError):
    """A signature document that does not follow the schema."""


@dataclass(frozen=True)
class T8Data:
    """The Fuchsian part F of a T8 factor: elliptic orders and the number of
    hyperbolic generators. F contains a loxodromic exactly when the factor
    contains a glide-reflection."""

    orders: tuple = ()
    loxodromic: int = 0

    @property
    def has_glide(self) -> bool:
        return self.loxodromic > 0

    def euler_characteristic(self) -> Fraction:
        count = len(self.orders) + self.loxodromic
        return sum((Fraction(1, r) for r in self.orders), Fraction(0)) - (count - 1)


@dataclass(frozen=True)
class Signature:
    n: int
    a0: int = 0
    a1: int = 0
    t2: tuple = ()  # elliptic orders l
    t3: tuple = ()  # pseudo-elliptic orders 2r
    t4: tuple = ()  # elliptic orders d
    t5: tuple = ()  # pseudo-elliptic orders 2d
    a6: int = 0
    a7: int = 0
    t8: tuple = ()  # T8Data

    def __post_init__(self):
        for name in ("t2", "t3", "t4", "t5"):
            object.__setattr__(self, name, tuple(sorted(int(x) for x in getattr(self, name))))
        t8 = tuple(x if isinstance(x, T8Data) else T8Data(**x) for x in self.t8)
        t8 = tuple(T8Data(tuple(sorted(x.orders)), x.loxodromic) for x in t8)
        object.__setattr__(self, "t8", tuple(sorted(t8, key=lambda x: (x.orders, x.loxodromic))))
        validate(self)

    @property
    def counts(self) -> tuple:
        return (self.a0, self.a1, len(self.t2), len(self.t3), len(self.t4), len(self.t5),
                self.a6, self.a7, len(self.t8))

    @property
    def factor_count(self) -> int:
        return sum(self.counts)

    def six_tuple(self) -> tuple:
        """(a1, ..., a6) for n = 2, with T0 factors absorbed into T1."""
        if self.n != 2:
            raise RegimeMismatch("the six-tuple is defined for n = 2 only")
        c = self.counts
        return (c[0] + c[1], c[2], c[3], c[4], c[5], c[6])

    @classmethod
    def from_six_tuple(cls, t) -> "Signature":
        a1, a2, a3, a4, a5, a6 = t
        return cls(2, 0, a1, (2,) * a2, (4,) * a3, (2,) * a4, (4,) * a5, a6)

    def factors(self) -> list:
        """``(kind, parameter)`` per factor in canonical order."""
        out = [("T0", None)] * self.a0 + [("T1", None)] * self.a1
        out += [("T2", d) for d in self.t2] + [("T3", d) for d in self.t3]
        out += [("T4", d) for d in self.t4] + [("T5", d) for d in self.t5]
        out += [("T6", None)] * self.a6 + [("T7", None)] * self.a7
        out += [("T8", x) for x in self.t8]
        return out

    def to_json(self) -> dict:
        c = self.counts
        return {
            "n": self.n,
            "counts": {f"t{k}": c[k] for k in range(9)},
            "orders": {"t2": list(self.t2), "t3": list(self.t3), "t4": list(self.t4),
                       "t5": list(self.t5)},
            "t8": [{"orders": list(x.orders), "has_glide": x.has_glide, "loxodromic": x.loxodromic}
                   for x in self.t8],
        }

    @classmethod
    def from_json(cls, data) -> "Signature":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            n = int(data["n"])
            counts = {k: int(v) for k, v in data.get("counts", {}).items()}
            orders = data.get("orders", {})
            lists = {k: tuple(int(x) for x in orders.get(k, ())) for k in ("t2", "t3", "t4", "t5")}
            t8 = []
            for item in data.get("t8", []):
                glide = bool(item.get("has_glide", False))
                lox = int(item.get("loxodromic", 1 if glide else 0))
                if glide != (lox > 0):
                    raise SignatureFormatError("T8 has_glide must agree with its loxodromic count")
                t8.append(T8Data(tuple(int(r) for r in item.get("orders", ())), lox))
        except SignatureFormatError:
            raise
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise SignatureFormatError(f"malformed signature: {exc}") from None
        for key, values in lists.items():
            if key in counts and counts[key] != len(values):
                raise SignatureFormatError(f"counts.{key}={counts[key]} but {len(values)} orders given")
        if "t8" in counts and counts["t8"] != len(t8):
            raise SignatureFormatError(f"counts.t8={counts['t8']} but {len(t8)} T8 entries given")
        return cls(n, counts.get("t0", 0), counts.get("t1", 0), lists["t2"], lists["t3"],
                   lists["t4"], lists["t5"], counts.get("t6", 0), counts.get("t7", 0), tuple(t8))

    def __str__(self):
        parts = [f"n={self.n}"]
        for kind, p in self.factors():
            if p is None:
                parts.append(kind)
            elif isinstance(p, T8Data):
                parts.append(f"T8(F orders={list(p.orders)}, loxodromic={p.loxodromic})")
            else:
                parts.append(f"{kind}({p})")
        return " ".join(parts)


def validate(s: Signature) -> None:
    """Raise :class:`InvalidSignature` unless the structural constraints hold."""
    n = s.n
    if n < 1:
        raise InvalidSignature("n must be positive")
    for name in ("a0", "a1", "a6", "a7"):
        if getattr(s, name) < 0:
            raise InvalidSignature(f"{name} must be nonnegative")
    for d in s.t2 + s.t4:
        if d < 2 or n % d:
            raise InvalidSignature(f"elliptic order {d} must be >= 2 and divide n={n}")
    for k in s.t3 + s.t5:
        if k < 2 or k % 2 or (2 * n) % k or n % k == 0:
            raise InvalidSignature(f"pseudo-elliptic order {k} must divide 2n={2 * n} but not n")
    if s.a6 and n % 2:
        raise InvalidSignature("T6 factors require n even")
    if (s.a7 or s.t8) and n % 2 == 0:
        raise InvalidSignature("T7/T8 factors require n odd")
    for x in s.t8:
        if x.loxodromic < 0:
            raise InvalidSignature("T8 loxodromic count must be nonnegative")
        for r in x.orders:
            if r < 2 or n % r:
                raise InvalidSignature(f"T8 elliptic order {r} must be >= 2 and divide n={n}")
    if s.factor_count == 0:
        raise InvalidSignature("a signature needs at least one factor")


# admissibility


def torsion_orders(s: Signature) -> list:
    """Orders r of the elliptic and pseudo-elliptic elements (and of the
    reflections) used by the factors; the gcd condition runs over 2n/r."""
    out = list(s.t2) + list(s.t3) + list(s.t4) + list(s.t5) + [2] * s.a7
    for x in s.t8:
        out += [2] + list(x.orders)
    return out


def is_admissible(s: Signature, literal: bool = False) -> tuple:
    """``(ok, reason)``.

    The gcd condition is waived when some factor carries a generator whose
    residue is unconstrained up to parity: T0, T1, T6, a T8 with a glide-
    reflection, and also T4, whose loxodromic may take any even residue.
    ``literal=True`` drops the T4 waiver.
    """
    c = s.counts
    if not (c[1] or c[3] or c[5] or c[6] or c[7] or c[8]):
        return False, "condition (a): no factor of type T1, T3, T5, T6, T7 or T8"
    free = c[0] or c[1] or c[6] or any(x.has_glide for x in s.t8)
    if not literal:
        free = free or c[4]
    if s.n >= 2 and not free:
        values = [2 * s.n // r for r in torsion_orders(s)]
        g = 0
        for v in values:
            g = math.gcd(g, v)
        if g != 1:
            return False, f"condition (b): gcd of 2n/r over {sorted(set(values))} is {g}"
    return True, "admissible"


# epimorphisms


def _exact_order_residues(n2: int, k: int, parity: Optional[int]) -> list:
    out = []
    for x in range(n2):
        if n2 // math.gcd(n2, x) == k and (parity is None or x % 2 == parity):
            out.append(x)
    return out


def generator_slots(s: Signature) -> list:
    """``(factor index, kind, generator name, allowed residues)`` per abstract generator."""
    n, n2 = s.n, 2 * s.n
    even = list(range(0, n2, 2))
    odd = list(range(1, n2, 2))
    slots = []
    for k, (kind, p) in enumerate(s.factors()):
        if kind == "T0":
            slots.append((k, kind, "A", even))
        elif kind == "T1":
            slots.append((k, kind, "A", odd))
        elif kind == "T2":
            slots.append((k, kind, "B", _exact_order_residues(n2, p, 0)))
        elif kind == "T3":
            slots.append((k, kind, "B", _exact_order_residues(n2, p, 1)))
        elif kind == "T4":
            slots.append((k, kind, "A", even))
            slots.append((k, kind, "B", _exact_order_residues(n2, p, 0)))
        elif kind == "T5":
            # B^-1 A B A = 1 forces 2 Phi(A) = 0
            slots.append((k, kind, "A", [x for x in (0, n) if x % 2 == 0]))
            slots.append((k, kind, "B", _exact_order_residues(n2, p, 1)))
        elif kind == "T6":
            slots.append((k, kind, "A", odd))
            slots.append((k, kind, "B", [n]))
        elif kind == "T7":
            slots.append((k, kind, "s", [n]))
        else:
            slots.append((k, kind, "s", [n]))
            for j, r in enumerate(p.orders):
                slots.append((k, kind, f"e{j + 1}", _exact_order_residues(n2, r, 0)))
            for j in range(p.loxodromic):
                slots.append((k, kind, f"t{j + 1}", even))
    return slots


@dataclass(frozen=True)
class Epimorphism:
    n: int
    assignment: tuple  # ((factor index, kind, generator, residue), ...)

    def residues(self) -> list:
        return [r for *_, r in self.assignment]

    def as_dict(self) -> dict:
        out = {}
        for k, kind, name, r in self.assignment:
            out.setdefault(f"{k}:{kind}", {})[name] = r
        return out

    def __str__(self):
        return " ".join(f"{k}:{kind}.{name}={r}" for k, kind, name, r in self.assignment)


def find_epimorphism(s: Signature, cap: int = SEARCH_CAP) -> Optional[Epimorphism]:
    """Lexicographically first residue assignment (residues ascending, factors
    in canonical order) that respects orientation, exact orders and the
    intra-factor relations, and whose residues generate Z_2n."""
    n2 = 2 * s.n
    slots = generator_slots(s)
    dead = set()
    nodes = 0
    chosen = []

    def rec(i: int, g: int) -> bool:
        nonlocal nodes
        if i == len(slots):
            return g == 1
        if (i, g) in dead:
            return False
        for x in slots[i][3]:
            nodes += 1
            if nodes > cap:
                raise SearchSpaceExceeded(f"epimorphism search exceeded {cap} nodes")
            chosen.append(x)
            if rec(i + 1, math.gcd(g, x)):
                return True
            chosen.pop()
        dead.add((i, g))
        return False

    if not rec(0, n2):
        return None
    return Epimorphism(s.n, tuple((k, kind, name, x) for (k, kind, name, _), x in zip(slots, chosen)))


def check_epimorphism(s: Signature, phi: Epimorphism) -> list:
    """Post-hoc audit; returns a list of violations (empty when valid)."""
    n2 = 2 * s.n
    problems = []
    slots = generator_slots(s)
    if len(slots) != len(phi.assignment):
        return ["generator count mismatch"]
    g = n2
    for (k, kind, name, allowed), (_, _, _, x) in zip(slots, phi.assignment):
        g = math.gcd(g, x)
        reversing = (kind in ("T1", "T3", "T7", "T8") and name in ("A", "B", "s")) or (
            kind in ("T5",) and name == "B") or (kind == "T6" and name == "A")
        if reversing and x % 2 == 0:
            problems.append(f"{k}:{kind}.{name} reverses orientation but has even residue {x}")
        if not reversing and x % 2 == 1:
            problems.append(f"{k}:{kind}.{name} preserves orientation but has odd residue {x}")
        if x not in allowed:
            problems.append(f"{k}:{kind}.{name} residue {x} violates its order or relation")
    if g != 1:
        problems.append(f"residues generate a subgroup of index {g}")
    return problems


# rank


def euler_characteristic(s: Signature) -> Fraction:
    """Sum of the factor Euler characteristics minus (factor count - 1)."""
    chi = Fraction(0)
    for kind, p in s.factors():
        if kind in ("T2", "T3"):
            chi += Fraction(1, p)
        elif kind == "T7":
            chi += Fraction(1, 2)
        elif kind == "T8":
            chi += p.euler_characteristic() / 2
    return chi - (s.factor_count - 1)


def rank(s: Signature) -> int:
    """Rank g of the Schottky subgroup: ``g = 1 - 2n chi``."""
    ok, reason = is_admissible(s)
    if not ok:
        raise NotAdmissible(reason)
    g = 1 - 2 * s.n * euler_characteristic(s)
    if g.denominator != 1:
        raise NonIntegralRank(f"rank evaluates to {g}")
    return int(g)


def in_odd_regime(s: Signature) -> bool:
    return s.n % 2 == 1 and s.a6 == 0 and s.a7 == 0 and not s.t8


def closed_form_rank(s: Signature) -> int:
    """The applicable closed form: the n = 2 tuple formula or the odd-n genus formula."""
    if s.n == 2:
        a1, a2, a3, a4, a5, a6 = s.six_tuple()
        return 4 * a1 + 2 * a2 + 3 * a3 + 4 * a4 + 4 * a5 + 4 * a6 - 3
    if in_odd_regime(s):
        inner = Fraction(2 * (s.a0 + s.a1) + len(s.t3) + 2 * len(s.t4) + 2 * len(s.t5) - 2)
        inner += sum((2 * (1 - Fraction(1, l)) for l in s.t2), Fraction(0))
        inner += sum((1 - Fraction(2, k) for k in s.t3), Fraction(0))  # r = k/2
        g = s.n * inner + 1
        if g.denominator != 1:
            raise NonIntegralRank(f"closed form evaluates to {g}")
        return int(g)
    raise RegimeMismatch("closed forms cover n = 2, or n odd without T6, T7, T8")


def rank_matches_closed_forms(s: Signature) -> bool:
    expected = closed_form_rank(s)
    return rank(s) == expected


# enumeration helpers for sweeps


def factor_options(n: int, max_f_orders: int = 2, max_loxodromic: int = 1) -> list:
    """Every structurally valid single factor for type n, as ``(kind, param)``."""
    divisors = [d for d in range(2, n + 1) if n % d == 0]
    pseudo = [k for k in range(2, 2 * n + 1, 2) if (2 * n) % k == 0 and n % k]
    out = [("T0", None), ("T1", None)]
    out += [("T2", d) for d in divisors] + [("T3", k) for k in pseudo]
    out += [("T4", d) for d in divisors] + [("T5", k) for k in pseudo]
    if n % 2 == 0:
        out.append(("T6", None))
    else:
        out.append(("T7", None))
        from itertools import combinations_with_replacement

        for size in range(max_f_orders + 1):
            for orders in combinations_with_replacement(divisors, size):
                for lox in range(max_loxodromic + 1):
                    out.append(("T8", T8Data(orders, lox)))
    return out


def from_factors(n: int, factors) -> Signature:
    kw = {"a0": 0, "a1": 0, "a6": 0, "a7": 0, "t2": [], "t3": [], "t4": [], "t5": [], "t8": []}
    for kind, p in factors:
        key = {"T0": "a0", "T1": "a1", "T6": "a6", "T7": "a7"}.get(kind)
        if key:
            kw[key] += 1
        else:
            kw[kind.lower()].append(p)
    return Signature(n, kw["a0"], kw["a1"], tuple(kw["t2"]), tuple(kw["t3"]), tuple(kw["t4"]),
                     tuple(kw["t5"]), kw["a6"], kw["a7"], tuple(kw["t8"]))


def enumerate_signatures(n: int, max_factors: int, **options):
    """All structurally valid signatures of type n with 1..max_factors factors."""
    from itertools import combinations_with_replacement

    opts = factor_options(n, **options)
    for m in range(1, max_factors + 1):
        for combo in combinations_with_replacement(range(len(opts)), m):
            yield from_factors(n, [opts[i] for i in combo])


def random_odd_signature(rng, n: int, max_count: int = 3) -> Signature:
    """A random signature in the odd-n closed-form regime (a6 = a7 = a8 = 0)."""
    divisors = [d for d in range(2, n + 1) if n % d == 0]
    pseudo = [k for k in range(2, 2 * n + 1, 2) if (2 * n) % k == 0 and n % k]
    while True:
        a0, a1 = rng.randint(0, max_count), rng.randint(0, max_count)
        t2 = [rng.choice(divisors) for _ in range(rng.randint(0, max_count))] if divisors else []
        t3 = [rng.choice(pseudo) for _ in range(rng.randint(0, max_count))]
        t4 = [rng.choice(divisors) for _ in range(rng.randint(0, max_count))] if divisors else []
        t5 = [rng.choice(pseudo) for _ in range(rng.randint(0, max_count))]
        if a0 + a1 + len(t2) + len(t3) + len(t4) + len(t5) == 0:
            continue
        s = Signature(n, a0, a1, tuple(t2), tuple(t3), tuple(t4), tuple(t5))
        if is_admissible(s)[0]:
            return s


def n2_signatures_up_to(gmax: int) -> list:
    """Every admissible n = 2 six-tuple whose rank is at most gmax."""
    out = []
    # 4a1 + 2a2 + 3a3 + 4a4 + 4a5 + 4a6 - 3 <= gmax
    budget = gmax + 3
    for a1 in range(budget // 4 + 1):
        for a2 in range((budget - 4 * a1) // 2 + 1):
            r2 = budget - 4 * a1 - 2 * a2
            for a3 in range(r2 // 3 + 1):
                r3 = r2 - 3 * a3
                for a4 in range(r3 // 4 + 1):
                    for a5 in range((r3 - 4 * a4) // 4 + 1):
                        for a6 in range((r3 - 4 * a4 - 4 * a5) // 4 + 1):
                            t = (a1, a2, a3, a4, a5, a6)
                            if sum(t) == 0:
                                continue
                            s = Signature.from_six_tuple(t)
                            if is_admissible(s)[0]:
                                out.append(s)
    return out


# geometric realization


HOST_SPACING = 3.0


def host_disc(j: int):
    from .circles import GeneralizedCircle

    return GeneralizedCircle.from_center_radius(HOST_SPACING * j, 1.0)


def realize(s: Signature, lam: float = 2.0):
    """Place one basic group per factor in the unit discs centered at
    ``3j`` on the real axis and combine them by free product."""
    from .assembly import free_product, make_basic

    ok, reason = is_admissible(s)
    if not ok:
        raise NotAdmissible(reason)
    rank(s)
    specs = []
    for j, (kind, p) in enumerate(s.factors()):
        kw = {}
        if kind in ("T2", "T4"):
            kw["d"] = p
        elif kind in ("T3", "T5"):
            kw["d"] = p // 2
        elif kind == "T8":
            kw["orders"], kw["loxodromic"] = p.orders, p.loxodromic
        specs.append(make_basic(kind, s.n, lam=lam, placement=host_disc(j), **kw))
    return free_product(specs, n=s.n)


def signature_of(group) -> Signature:
    """Read the signature back from an assembly's factor metadata."""
    factors = []
    for f in group.factors:
        kind, p = f.kind, f.params
        if kind in ("T2", "T4"):
            factors.append((kind, p["d"]))
        elif kind in ("T3", "T5"):
            factors.append((kind, 2 * p["d"]))
        elif kind == "T8":
            factors.append((kind, T8Data(tuple(p["orders"]), p["loxodromic"])))
        elif kind == "HNN":
            factors.append(("T0", None) if not f.pairing_generator.reversing else ("T1", None))
        else:
            factors.append((kind, None))
    return from_factors(group.n, factors)
