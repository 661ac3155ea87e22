"""Reduced words in a free product of factors, and limit-set sampling.

A reduced word is a sequence of nontrivial factor elements in which
consecutive letters come from different factors. Its length is the sum of
the letter lengths: ``|k|`` for a power of an infinite-order generator and 1
for a nontrivial element of a finite part.

The walkers multiply raw ``(a, b, c, d, reversing)`` tuples; numpy matrices
are only built for the words handed back to the caller.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from ..circles import INF
from ..errors import DepthExplosion
from ..moebius import ExtendedMoebius, disc_image_coeffs

MAX_WORDS = 10 ** 7
# a disc whose radius is below this many ulps of its center cannot be compared reliably
RESOLUTION_ULPS = 64.0

_IDENTITY = (1 + 0j, 0j, 0j, 1 + 0j, False)


@dataclass(frozen=True)
class Word:
    letters: tuple  # ((factor index, element label), ...)
    length: int

    @property
    def label(self) -> str:
        return " ".join(f"{k}:{lab}" for k, lab in self.letters)

    def __str__(self):
        return self.label


def _coeffs(t: ExtendedMoebius) -> tuple:
    return (t.a, t.b, t.c, t.d, t.reversing)


def _mul(s: tuple, t: tuple) -> tuple:
    a, b, c, d, rs = s
    e, f, g, h, rt = t
    if rs:
        e, f, g, h = e.conjugate(), f.conjugate(), g.conjugate(), h.conjugate()
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h, rs != rt)


def _to_moebius(m: tuple) -> ExtendedMoebius:
    a, b, c, d, rev = m
    return ExtendedMoebius(np.array([[a, b], [c, d]]), rev, None, True)


def identity_distance(m: tuple) -> float:
    """``min ||M -/+ I||`` for a raw tuple; infinite for reversing maps."""
    a, b, c, d, rev = m
    if rev:
        return math.inf
    rest = abs(b) ** 2 + abs(c) ** 2
    minus = abs(a - 1) ** 2 + abs(d - 1) ** 2
    plus = abs(a + 1) ** 2 + abs(d + 1) ** 2
    return math.sqrt(rest + min(minus, plus))


def factor_elements(group, max_length: int) -> list:
    """Per-factor element lists, ordered by length (stable within a length)."""
    return [sorted(f.elements(max_length), key=lambda e: e.length) for f in group.factors]


def count_reduced_words(group, max_length: int, elements=None) -> int:
    """Number of nontrivial reduced words of length <= max_length."""
    if max_length <= 0 or not group.factors:
        return 0
    if elements is None:
        elements = factor_elements(group, max_length)
    counts = []
    for elems in elements:
        c = [0] * (max_length + 1)
        for e in elems:
            c[e.length] += 1
        counts.append(c)
    m = len(counts)
    # ending[f][l]: words of total length l whose last letter lies in factor f
    ending = [[0] * (max_length + 1) for _ in range(m)]
    for length in range(1, max_length + 1):
        for f in range(m):
            total = counts[f][length]
            for step in range(1, length):
                if counts[f][step]:
                    prior = sum(ending[g][length - step] for g in range(m) if g != f)
                    total += counts[f][step] * prior
            ending[f][length] = total
    return sum(sum(row) for row in ending)


def _prepare(group, max_length: int, cap: int) -> list:
    elements = factor_elements(group, max_length)
    total = count_reduced_words(group, max_length, elements)
    if total > cap:
        raise DepthExplosion(f"{total} reduced words up to length {max_length} exceed cap {cap}")
    return elements


def walk_words(group, max_length: int, cap: int = MAX_WORDS) -> Iterator:
    """Depth-first walk yielding ``(letters, raw transform, length)``."""
    if max_length <= 0 or not group.factors:
        return
    elements = _prepare(group, max_length, cap)
    raw = [[(e, _coeffs(e.transform)) for e in elems] for elems in elements]

    def rec(letters, prefix, length, last):
        for f, elems in enumerate(raw):
            if f == last:
                continue
            for e, m in elems:
                total = length + e.length
                if total > max_length:
                    break
                t = _mul(prefix, m)
                new_letters = letters + ((f, e.label),)
                yield new_letters, t, total
                yield from rec(new_letters, t, total, f)

    yield from rec((), _IDENTITY, 0, None)


def enumerate_reduced_words(group, max_length: int, cap: int = MAX_WORDS) -> Iterator:
    """Yield ``(Word, transform)`` for every nontrivial reduced word, in
    depth-first lexicographic order (factor index, then element length,
    then the factor's normal-form order).

    Raises :class:`DepthExplosion` when the word count would exceed ``cap``.
    """
    for letters, t, length in walk_words(group, max_length, cap):
        yield Word(letters, length), _to_moebius(t)


def _diameter(disc) -> float:
    return math.inf if disc is None else 2 * disc[1]


def _resolved(disc) -> bool:
    if disc is None:
        return True
    return disc[1] > RESOLUTION_ULPS * sys.float_info.epsilon * max(1.0, abs(disc[0]))


def _inside(inner, outer) -> bool:
    if outer is None:
        return True
    if inner is None:
        return False
    return abs(inner[0] - outer[0]) + inner[1] < outer[1]


@dataclass
class NestingReport:
    words: int = 0
    containment_failures: int = 0
    diameter_failures: int = 0
    unresolved: int = 0
    points: list = field(default_factory=list)
    labels: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.containment_failures == 0 and self.diameter_failures == 0


def nested_discs(group, depth: int, cap: int = MAX_WORDS) -> NestingReport:
    """Walk every word of length exactly ``depth`` and check that its chain of
    discs ``x1...x_{j-1}(Delta(x_j))`` is nested with shrinking diameters.

    The centers of the deepest discs are collected as limit-set samples;
    a deepest disc that contains infinity contributes ``INF``.
    Chains that shrink below floating-point resolution are counted as
    ``unresolved`` instead of being judged.
    """
    report = NestingReport()
    if depth <= 0 or not group.factors:
        return report
    elements = _prepare(group, depth, cap)
    raw = [[(e, _coeffs(e.transform), f.image_disc(e)) for e in elems]
           for f, elems in zip(group.factors, elements)]

    def rec(prefix, outer, length, last, letters, flags):
        for f, elems in enumerate(raw):
            if f == last:
                continue
            for e, m, base in elems:
                total = length + e.length
                if total > depth:
                    break
                disc = disc_image_coeffs(prefix, *base) if base is not None else None
                contain, diam, blurred = flags
                if outer is not None:
                    if _resolved(disc) and _resolved(outer):
                        contain |= not _inside(disc, outer)
                        diam |= not _diameter(disc) < _diameter(outer)
                    else:
                        blurred = True
                word = letters + ((f, e.label),)
                if total == depth:
                    report.words += 1
                    report.containment_failures += contain
                    report.diameter_failures += diam
                    report.unresolved += blurred
                    report.points.append(INF if disc is None else disc[0])
                    report.labels.append(Word(word, total).label)
                else:
                    rec(_mul(prefix, m), disc, total, f, word, (contain, diam, blurred))

    rec(_IDENTITY, None, 0, None, (), (False, False, False))
    return report


def sample_limit_set(group, depth: int, check_depth: int = 4) -> list:
    """Approximate limit points as ``(word label, point)`` pairs: centers of
    the deepest nested discs over all words of length exactly ``depth``.

    Raises :class:`PingPongFailure` if the assembly fails ping-pong.
    """
    from ..errors import PingPongFailure
    from .verify import verify_ping_pong

    report = verify_ping_pong(group, min(depth, check_depth))
    if not report.passed:
        raise PingPongFailure(report.first_failure())
    nest = nested_discs(group, depth)
    return list(zip(nest.labels, nest.points))
