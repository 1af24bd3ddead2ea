"""Measure for fields whose absolute Galois group is free pro-p.

Counting happens inside a Sylow p-subgroup ``S`` of ``G``: a tuple of ``S^e`` is
regular when ``<s> (S cap G0) = S`` and hits a target when the subgroup it
generates is ``S``-conjugate to the chosen embedding ``H'`` of the target in ``S``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass

from .config import get_limits
from .counting import Joiner, gaschutz_count, tuple_spectrum
from .exceptions import (
    BadTower,
    EnumerationTooLarge,
    NoRegularTuples,
    QuotientNotPGroup,
    TargetNotPGroup,
    ValidationError,
)
from .groups import FiniteGroup, Subgroup, is_p_power, is_prime, sylow_subgroups
from .exceptions import NotPrime
from .measure import CoverScenario, MeasureReport, TargetMeasure, TowerScenario, _check_e


@dataclass
class SylowContext:
    scenario: CoverScenario
    p: int
    sylow: Subgroup
    group: FiniteGroup  # the Sylow subgroup realised on its own
    geometric: Subgroup  # S cap G0, inside ``group``
    embedded: dict  # target name -> embedded conjugate, inside ``group``


def _check_prop(s: CoverScenario, p: int):
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if not is_p_power(s.Q.order, p):
        raise QuotientNotPGroup(f"quotient of order {s.Q.order} is not a {p}-group")
    for name, H in s.targets.items():
        if not is_p_power(H.order, p):
            raise TargetNotPGroup(f"target {name!r} has order {H.order}, not a power of {p}")


def p_targets(s: CoverScenario, p: int) -> CoverScenario:
    """The scenario with only its p-group targets kept."""
    return s.with_targets([(n, H) for n, H in s.targets.items() if is_p_power(H.order, p)])


def embeddings(s: CoverScenario, target: str, S: Subgroup) -> list:
    """G-conjugates of the target contained in ``S``, in canonical lattice order."""
    L = s.G.lattice
    cid = s.target_class(target)
    return [L.nodes[i] for i in L.classes[cid] if L.nodes[i] <= S]


def sylow_context(s: CoverScenario, p: int, choices: dict | None = None) -> SylowContext:
    """Fix the Sylow subgroup and target embeddings.

    ``choices`` may carry ``"sylow"`` (a Sylow subgroup of ``s.G``) and
    ``"embedded"`` (target name -> conjugate inside that Sylow); anything
    missing defaults to the first candidate in canonical order.
    """
    _check_prop(s, p)
    choices = choices or {}
    S = choices.get("sylow") or sylow_subgroups(s.G, p)[0]
    if S.parent is not s.G or not is_p_power(S.order, p) or s.G.order // S.order % p == 0:
        raise ValidationError("chosen subgroup is not a Sylow subgroup of G")
    SG = S.as_group(name=f"Syl{p}")
    lift = lambda H: SG.subgroup_from_perms(H.perms())
    chosen = choices.get("embedded", {})
    embedded = {}
    for name in s.targets:
        H = chosen.get(name)
        if H is None:
            H = embeddings(s, name, S)[0]
        elif not (H <= S) or s.G.lattice.class_index(H) != s.target_class(name):
            raise ValidationError(f"embedding for {name!r} is not a conjugate of the target inside the Sylow subgroup")
        embedded[name] = lift(H)
    geometric = lift(S.intersection(s.G0))
    return SylowContext(s, p, S, SG, geometric, embedded)


def prop_measure_at(s: CoverScenario, p: int, e: int, choices: dict | None = None) -> MeasureReport:
    _check_e(e)
    ctx = sylow_context(s, p, choices)
    SG = ctx.group
    spec = tuple_spectrum(SG, e)
    L = SG.lattice
    regular = [
        cid for cid in range(len(L.classes)) if L.representative(cid).product_order(ctx.geometric) == SG.order
    ]
    denom = sum(spec.counts[c] for c in regular)
    if denom == 0:
        raise NoRegularTuples(f"Sylow {p}-subgroup has no regular {e}-tuples")
    values = {n: TargetMeasure(spec.count_for(H), denom) for n, H in ctx.embedded.items()}
    return MeasureReport(s.name, e, values, denom, f"pro-{p}")


def all_choices(s: CoverScenario, p: int):
    """Every (Sylow, embedding) choice, as dicts suitable for ``prop_measure_at``."""
    _check_prop(s, p)
    for S in sylow_subgroups(s.G, p):
        per_target = [embeddings(s, n, S) for n in s.targets]
        for combo in itertools.product(*per_target):
            yield {"sylow": S, "embedded": dict(zip(s.targets, combo))}


@dataclass
class PropRefinementReport:
    e: int
    regular_lower: int
    lift_counts: dict
    all_equal: bool
    common: int | None
    gaschutz_factor: int
    kernel_order: int
    predicted: int

    @property
    def matches_prediction(self) -> bool:
        return self.all_equal and self.common == self.predicted


def verify_prop_refinement(t: TowerScenario, p: int, e: int, max_enumeration: int | None = None) -> PropRefinementReport:
    """Regular lifts, inside the upper Sylow, of every regular tuple of the lower Sylow.

    The lower Sylow is taken as the image of the upper one, so the two choices
    are compatible by construction.
    """
    _check_e(e)
    U, Lw, r = t.upper, t.lower, t.restriction
    for lvl in (U, Lw):
        if not is_p_power(lvl.Q.order, p):
            raise QuotientNotPGroup(f"quotient of order {lvl.Q.order} is not a {p}-group")
    SM = sylow_subgroups(U.G, p)[0]
    SL = r.image_of(SM)
    if not is_p_power(SL.order, p) or Lw.G.order // SL.order % p == 0:
        raise BadTower("image of the upper Sylow subgroup is not a Sylow subgroup below")
    cap = get_limits().max_enumeration if max_enumeration is None else max_enumeration
    if SM.order ** e > cap:
        raise EnumerationTooLarge(f"{SM.order}^{e} lifts exceeds the enumeration cap {cap}")
    JQl, JQm = Joiner.of(Lw.Q), Joiner.of(U.Q)
    pl, pm = Lw.projection.images, U.projection.images
    fib = {y: [x for x in r.fibre(y) if x in SM.members] for y in SL.members}
    histogram: Counter = Counter()
    regular_lower = 0
    for sigma in itertools.product(sorted(SL.members), repeat=e):
        if not JQl.generates(pl[g] for g in sigma):
            continue
        regular_lower += 1
        count = 0
        for tau in itertools.product(*(fib[g] for g in sigma)):
            count += JQm.generates(pm[g] for g in tau)
        histogram[count] += 1
    if regular_lower == 0:
        raise NoRegularTuples(f"lower quotient is not {e}-generated")
    gq = gaschutz_count(t.quotient_map, e).lift_count
    k = len(r.kernel.members & U.G0.members & SM.members)
    all_equal = len(histogram) == 1
    return PropRefinementReport(
        e=e,
        regular_lower=regular_lower,
        lift_counts=dict(histogram),
        all_equal=all_equal,
        common=next(iter(histogram)) if all_equal else None,
        gaschutz_factor=gq,
        kernel_order=k,
        predicted=gq * k**e,
    )
