"""Counting n = 2 signatures of a given rank.

X_g is the set of six-tuples (a1..a6) with a1+a3+a5+a6 > 0 and
g + 3 = 4a1 + 2a2 + 3a3 + 4a4 + 4a5 + 4a6. Grouping a1, a5, a6 into
alpha (and beta = a2, gamma = a3, delta = a4) reduces the count to the sets
N_g(alpha) of (beta, gamma, delta), weighted by the number of ways to split
alpha into three parts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import OutOfRange

COEFFICIENTS = (4, 2, 3, 4, 4, 4)


def _check_genus(g: int) -> None:
    if not isinstance(g, int) or g < 1:
        raise OutOfRange(f"genus must be a positive integer, got {g!r}")


def iter_Xg(g: int) -> Iterator[tuple]:
    """Tuples of X_g in lexicographic order, generated by bounded search."""
    _check_genus(g)
    total = g + 3
    for a1 in range(total // 4 + 1):
        r1 = total - 4 * a1
        for a2 in range(r1 // 2 + 1):
            r2 = r1 - 2 * a2
            for a3 in range(r2 // 3 + 1):
                r3 = r2 - 3 * a3
                for a4 in range(r3 // 4 + 1):
                    r4 = r3 - 4 * a4
                    if r4 % 4:
                        continue
                    # a5 + a6 = r4 / 4, so a6 is determined by a5
                    q = r4 // 4
                    if a1 + a3 + q == 0:
                        continue
                    yield from ((a1, a2, a3, a4, a5, q - a5) for a5 in range(q + 1))


def enumerate_Xg(g: int) -> list:
    return list(iter_Xg(g))


def count_Xg_series(g: int) -> int:
    """#X_g by coin-change counting of the defining equation, minus the
    solutions that violate a1+a3+a5+a6 > 0."""
    _check_genus(g)
    total = g + 3
    ways = [1] + [0] * total
    for c in COEFFICIENTS:
        for v in range(c, total + 1):
            ways[v] += ways[v - c]
    # excluded: only a2, a4 nonzero, i.e. 2a2 + 4a4 = g + 3
    excluded = total // 4 + 1 if total % 2 == 0 else 0
    return ways[total] - excluded


def _max_alpha(g: int) -> int:
    return (g + 3) // 4


def count_Ng_alpha(g: int, alpha: int) -> int:
    """#N_g(alpha) by the four-case closed form."""
    _check_genus(g)
    if not isinstance(alpha, int) or alpha < 0 or alpha > _max_alpha(g):
        raise OutOfRange(f"alpha must lie in 0..{_max_alpha(g)}, got {alpha!r}")
    q = (g + 3 - 4 * alpha) // 3
    if g % 2 == 0:
        # gamma = 2l - 1 is odd
        top = (q + 1) // 2 if q % 2 else q // 2
        return sum(1 + (g + 6 - 4 * alpha - 6 * l) // 4 for l in range(1, top + 1))
    # gamma = 2l is even; gamma >= 1 is needed only when alpha = 0
    start = 1 if alpha == 0 else 0
    top = (q - 1) // 2 if q % 2 else q // 2
    return sum(1 + (g + 3 - 4 * alpha - 6 * l) // 4 for l in range(start, top + 1))


def count_Ng_alpha_bruteforce(g: int, alpha: int) -> int:
    """#N_g(alpha) by looping over (beta, gamma, delta) directly."""
    _check_genus(g)
    if alpha < 0 or alpha > _max_alpha(g):
        raise OutOfRange(f"alpha must lie in 0..{_max_alpha(g)}, got {alpha!r}")
    rest = g + 3 - 4 * alpha
    count = 0
    for gamma in range(rest // 3 + 1):
        if alpha + gamma == 0:
            continue
        for delta in range((rest - 3 * gamma) // 4 + 1):
            beta2 = rest - 3 * gamma - 4 * delta
            if beta2 % 2 == 0:
                count += 1
    return count


def fiber_size(alpha: int) -> int:
    """#Y(alpha): ways to write alpha = x + y + z."""
    return (1 + alpha) * (2 + alpha) // 2


def Y(alpha: int) -> list:
    return [(x, y, alpha - x - y) for x in range(alpha + 1) for y in range(alpha - x + 1)]


def count_Xg(g: int) -> int:
    """#X_g as the weighted sum of the closed-form #N_g(alpha)."""
    _check_genus(g)
    total = sum((2 + a) * (1 + a) * count_Ng_alpha(g, a) for a in range(_max_alpha(g) + 1))
    return total // 2


def to_reduced(t: tuple) -> tuple:
    """(a1..a6) -> (alpha, beta, gamma, delta)."""
    a1, a2, a3, a4, a5, a6 = t
    return (a1 + a5 + a6, a2, a3, a4)


@dataclass(frozen=True)
class CensusRow:
    g: int
    count_closedform: int
    count_bruteforce: int

    @property
    def match(self) -> bool:
        return self.count_closedform == self.count_bruteforce

    def tsv(self) -> str:
        return f"{self.g}\t{self.count_closedform}\t{self.count_bruteforce}\t{'match' if self.match else 'MISMATCH'}"


TSV_HEADER = "g\tcount_closedform\tcount_bruteforce\tmatch"


def census(gmax: int, enumerate_up_to: int = 40) -> list:
    """Rows for g = 1..gmax. The oracle column lists X_g outright up to
    ``enumerate_up_to`` and uses the coin-change count beyond it."""
    if gmax < 1:
        raise OutOfRange("gmax must be at least 1")
    rows = []
    for g in range(1, gmax + 1):
        brute = len(enumerate_Xg(g)) if g <= enumerate_up_to else count_Xg_series(g)
        rows.append(CensusRow(g, count_Xg(g), brute))
    return rows


def closed_form_mismatches(gmax: int) -> list:
    """``(g, alpha, closed form, brute force)`` for every disagreement."""
    out = []
    for g in range(1, gmax + 1):
        for a in range(_max_alpha(g) + 1):
            cf, bf = count_Ng_alpha(g, a), count_Ng_alpha_bruteforce(g, a)
            if cf != bf:
                out.append((g, a, cf, bf))
    return out
