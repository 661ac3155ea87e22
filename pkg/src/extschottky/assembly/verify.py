"""Numerical ping-pong verification of an assembly."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..moebius import apply_to_circle, compose, evaluate
from .basic import RELATION_TOL, relation_residuals
from .group import DELTA_SEP
from .words import Word, identity_distance, walk_words

EPS_IDENTITY = 1e-6
BOUNDARY_TOL = 1e-8
BOUNDARY_SAMPLES = 24


@dataclass(frozen=True)
class Finding:
    check: str
    ok: bool
    detail: str = ""


@dataclass
class VerificationReport:
    findings: list = field(default_factory=list)
    words_checked: int = 0
    min_identity_distance: float = math.inf

    @property
    def passed(self) -> bool:
        return all(f.ok for f in self.findings)

    def first_failure(self) -> str:
        for f in self.findings:
            if not f.ok:
                return f"{f.check}: {f.detail}"
        return ""

    def add(self, check: str, ok: bool, detail: str = "") -> None:
        self.findings.append(Finding(check, bool(ok), detail))

    def lines(self) -> list:
        out = [f"{'pass' if f.ok else 'FAIL'}\t{f.check}\t{f.detail}" for f in self.findings]
        out.append(f"words\t{self.words_checked}\tmin ||W-I|| = {self.min_identity_distance:.6g}")
        return out


def _pairing_checks(report: VerificationReport, where: str, factor) -> None:
    p = factor.pairing
    a = factor.pairing_generator
    src, dst = p.source, p.target
    report.add(f"{where} pairing discs disjoint", src.disjoint(dst, DELTA_SEP),
               f"separation {src.separation(dst):.3g}")
    worst = max(abs(dst.signed_distance(evaluate(a, z))) / max(1.0, dst.radius)
                for z in src.sample(BOUNDARY_SAMPLES))
    report.add(f"{where} {p.generator} maps boundary onto boundary", worst <= BOUNDARY_TOL,
               f"max deviation {worst:.3g}")
    image = apply_to_circle(a, src)
    report.add(f"{where} {p.generator} maps exterior of source onto interior of target",
               image.same_disc(dst.flipped(), 1e-8))


def factor_checks(report: VerificationReport, where: str, factor) -> None:
    """Internal ping-pong conditions of a single factor."""
    if factor.pairing is not None:
        _pairing_checks(report, where, factor)
    for rel, value in relation_residuals(factor).items():
        report.add(f"{where} relation {rel}", value <= RELATION_TOL, f"residual {value:.3g}")
    e = factor.free_disc
    if e is None:
        return
    if factor.pairing is not None:
        p = factor.pairing
        report.add(f"{where} free disc avoids pairing discs",
                   e.disjoint(p.source, DELTA_SEP) and e.disjoint(p.target, DELTA_SEP))
    for g in factor.finite_elements():
        ge = apply_to_circle(g.transform, e)
        report.add(f"{where} {g.label}(E) misses E", ge.disjoint(e, DELTA_SEP),
                   f"separation {ge.separation(e):.3g}")
        if factor.pairing is not None:
            p = factor.pairing
            img = {apply_to_circle(g.transform, d) for d in (p.source, p.target)}
            ok = all(any(c.same_disc(d, 1e-8) for d in (p.source, p.target)) for c in img)
            report.add(f"{where} {g.label} preserves the pairing discs", ok)
    if factor.kind in ("T7", "T8"):
        s = factor.generator("s")
        se = apply_to_circle(s, e)
        report.add(f"{where} s(E) misses E", se.disjoint(e, DELTA_SEP))
    if factor.kind == "T8":
        s = factor.generator("s")
        sub = factor.sub
        _assembly_checks(report, f"{where} F", sub)
        for k, h in enumerate(sub.hosts):
            report.add(f"{where} F host {k} is s-invariant", apply_to_circle(s, h).same_disc(h, 1e-8))
            report.add(f"{where} F host {k} misses E", h.disjoint(e, DELTA_SEP))


def _assembly_checks(report: VerificationReport, where: str, group) -> None:
    for k, f in enumerate(group.factors):
        factor_checks(report, f"{where}[{k}:{f.kind}]".strip(), f)
    factors = group.factors
    for i in range(len(factors)):
        for j in range(i + 1, len(factors)):
            sep = min(a.separation(b) for a in factors[i].hosts for b in factors[j].hosts)
            report.add(f"{where}hosts {i},{j} disjoint".strip(), sep > DELTA_SEP,
                       f"separation {sep:.3g}")


def verify_ping_pong(group, max_depth: int = 8, eps_id: float = EPS_IDENTITY) -> VerificationReport:
    """Check host disjointness, every pairing and finite-part condition, and
    that all reduced words up to ``max_depth`` are away from the identity.
    """
    report = VerificationReport()
    _assembly_checks(report, "", group)
    bad = None
    for letters, t, length in walk_words(group, max_depth):
        report.words_checked += 1
        dist = identity_distance(t)
        report.min_identity_distance = min(report.min_identity_distance, dist)
        if dist <= eps_id and bad is None:
            bad = (Word(letters, length), dist)
    if bad is not None:
        report.add("reduced words nontrivial", False, f"{bad[0]} has ||W-I|| = {bad[1]:.3g}")
    else:
        report.add("reduced words nontrivial", True,
                   f"{report.words_checked} words, min {report.min_identity_distance:.6g}")
    return report
