"""Exact measures on cover scenarios.

A scenario is the group image of a Galois cover: ``G`` (the whole cover group),
a normal subgroup ``G0`` (the geometric part) with quotient ``Q = G/G0``, an
optional complement of ``G0`` and a list of target subgroup classes. A tuple
``s`` in ``G^e`` is *regular* when ``<s> G0 = G``; the measure of a target is
the proportion of regular tuples generating a conjugate of it.
"""

from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping

from .config import get_limits
from .counting import Joiner, count_generating_lifts, gaschutz_count, hall_phi, tuple_spectrum
from .exceptions import (
    BadComplement,
    BadTower,
    DuplicateTarget,
    EnumerationTooLarge,
    NoRegularTuples,
    NotNormal,
    NotRegularTarget,
    NotSplit,
    ScenarioFormatError,
    Sigma0NotGenerating,
    UnknownTarget,
    ValidationError,
)
from .groups import (
    Epimorphism,
    FiniteGroup,
    Subgroup,
    check_permutation,
    construct_named,
    group_from_generators,
    invert,
    is_normal,
    normalizer,
    quotient_map,
)


class CoverScenario:
    """Group data of a cover plus named target classes; validated on construction."""

    def __init__(
        self,
        G: FiniteGroup,
        G0: Subgroup,
        targets,
        complement: Subgroup | None = None,
        name: str = "scenario",
    ):
        self.G = G
        self.G0 = G0
        self.complement = complement
        self.name = name
        items = list(targets.items()) if isinstance(targets, Mapping) else list(targets)
        self.targets: dict[str, Subgroup] = {}
        for tname, H in items:
            if tname in self.targets:
                raise DuplicateTarget(f"target name {tname!r} used twice")
            self.targets[tname] = H
        self._validate()

    def _validate(self):
        G, G0 = self.G, self.G0
        for H in [G0, self.complement, *self.targets.values()]:
            if H is not None and H.parent is not G:
                raise ValidationError("every subgroup must belong to the scenario group")
        if not is_normal(G, G0):
            raise NotNormal("G0 is not normal in G")
        C = self.complement
        if C is not None:
            if len(C.members & G0.members) != 1:
                raise BadComplement("complement meets G0 non-trivially")
            if C.order * G0.order != G.order:
                raise BadComplement("complement times G0 is not G")
        if not self.targets:
            raise ValidationError("a scenario needs at least one target")
        seen = {}
        L = G.lattice
        for tname, H in self.targets.items():
            if not self.is_regular(H):
                raise NotRegularTarget(f"target {tname!r}: H*G0 has order {H.product_order(G0)}, G has order {G.order}")
            cid = L.class_index(H)
            if cid in seen:
                raise DuplicateTarget(f"targets {seen[cid]!r} and {tname!r} are conjugate")
            seen[cid] = tname

    def __repr__(self):
        return f"<CoverScenario {self.name} |G|={self.G.order} |G0|={self.G0.order} targets={list(self.targets)}>"

    @property
    def is_split(self) -> bool:
        return self.complement is not None

    @cached_property
    def projection(self) -> Epimorphism:
        """``G -> Q = G/G0``."""
        return quotient_map(self.G, self.G0)

    @property
    def Q(self) -> FiniteGroup:
        return self.projection.target

    def is_regular(self, H: Subgroup) -> bool:
        return H.product_order(self.G0) == self.G.order

    def target(self, name: str) -> Subgroup:
        try:
            return self.targets[name]
        except KeyError:
            raise UnknownTarget(f"no target {name!r} in scenario {self.name!r}; have {list(self.targets)}") from None

    def target_class(self, name: str) -> int:
        return self.G.lattice.class_index(self.target(name))

    def regular_classes(self, e: int | None = None) -> list:
        """Class ids of regular subgroups (optionally only the e-generated ones)."""
        L = self.G.lattice
        out = []
        for cid in range(len(L.classes)):
            rep = L.representative(cid)
            if self.is_regular(rep) and (e is None or hall_phi(rep, e) > 0):
                out.append(cid)
        return out

    def with_targets(self, targets, name: str | None = None) -> "CoverScenario":
        return CoverScenario(self.G, self.G0, targets, self.complement, name or self.name)

    def with_all_regular_targets(self, e: int | None = None) -> "CoverScenario":
        """Same cover, every regular (e-generated) class as a target; declared names kept."""
        L = self.G.lattice
        named = {L.class_index(H): n for n, H in self.targets.items()}
        targets = [(named.get(cid, f"class-{cid}"), L.representative(cid)) for cid in self.regular_classes(e)]
        return self.with_targets(targets)

    def relabeled(self, pi) -> "CoverScenario":
        """The same scenario with permutation points renamed by ``pi``."""
        pi = check_permutation(pi, self.G.degree)
        pinv = invert(pi)

        def move(p):
            return tuple(pi[p[pinv[x]]] for x in range(len(p)))

        G2 = group_from_generators(self.G.degree, [move(g) for g in self.G.generators], name=self.G.name)

        def sub(H):
            if H is None:
                return None
            return G2.subgroup_from_perms(move(p) for p in H.generator_perms())

        return CoverScenario(
            G2, sub(self.G0), [(n, sub(H)) for n, H in self.targets.items()], sub(self.complement), self.name
        )

    def conjugated_targets(self, g: int) -> "CoverScenario":
        return self.with_targets([(n, H.conjugate(g)) for n, H in self.targets.items()])


def validate_scenario(raw: Mapping, name: str | None = None) -> CoverScenario:
    """Build and check a scenario from plain data.

    ``raw`` holds ``group`` (a construction descriptor or a FiniteGroup), ``g0``
    (generator permutations), optional ``complement`` and a ``targets`` list
    of ``{"name", "generators"}`` objects.
    """
    try:
        G = construct_named(raw["group"])
        G0 = G.subgroup_from_perms(raw["g0"])
        comp = raw.get("complement")
        C = G.subgroup_from_perms(comp) if comp is not None else None
        targets = [(t["name"], G.subgroup_from_perms(t["generators"])) for t in raw["targets"]]
    except (KeyError, TypeError) as exc:
        raise ScenarioFormatError(f"malformed scenario data: {exc!r}") from exc
    return CoverScenario(G, G0, targets, C, name or raw.get("name", "scenario"))


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class TargetMeasure:
    numerator: int
    denominator: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)


@dataclass
class MeasureReport:
    scenario: str
    e: int
    values: dict
    regular_total: int
    scheme: str = "count"

    def value(self, target: str) -> Fraction:
        try:
            return self.values[target].value
        except KeyError:
            raise UnknownTarget(f"no target {target!r} in report for {self.scenario!r}") from None

    def as_fractions(self) -> dict:
        return {k: v.value for k, v in self.values.items()}

    def total(self) -> Fraction:
        return sum((v.value for v in self.values.values()), Fraction(0))


def measure_at(s: CoverScenario, e: int) -> MeasureReport:
    """Proportion of regular e-tuples of ``G`` whose generated subgroup is conjugate to each target."""
    _check_e(e)
    spec = tuple_spectrum(s.G, e)
    regular = s.regular_classes()
    denom = sum(spec.counts[c] for c in regular)
    if denom == 0:
        raise NoRegularTuples(f"Q (order {s.Q.order}) is not {e}-generated")
    values = {n: TargetMeasure(spec.count_for(H), denom) for n, H in s.targets.items()}
    return MeasureReport(s.name, e, values, denom, "count")


def _check_e(e):
    if not isinstance(e, int) or e < 1:
        raise ValidationError(f"e must be a positive integer, got {e!r}")


def default_sigma0(s: CoverScenario, e: int) -> tuple:
    """Lexicographically first e-tuple of complement elements whose image generates ``Q``."""
    if not s.is_split:
        raise NotSplit(f"scenario {s.name!r} has no complement")
    JQ = Joiner.of(s.Q)
    pi = s.projection.images
    comp = sorted(s.complement.members)
    for tup in itertools.product(comp, repeat=e):
        if JQ.generates(pi[g] for g in tup):
            return tup
    raise NoRegularTuples(f"Q (order {s.Q.order}) is not {e}-generated")


def admissible_sigma0(s: CoverScenario, e: int, limit: int | None = None) -> list:
    """e-tuples of ``G`` whose image generates ``Q``, in lexicographic order."""
    JQ = Joiner.of(s.Q)
    pi = s.projection.images
    out = []
    for tup in itertools.product(range(s.G.order), repeat=e):
        if JQ.generates(pi[g] for g in tup):
            out.append(tup)
            if limit is not None and len(out) >= limit:
                break
    return out


def measure_split_at(s: CoverScenario, e: int, sigma0=None) -> MeasureReport:
    """Second counting scheme: classify ``sigma0 * tau`` for every ``tau`` in ``G0^e``.

    The denominator is exactly ``|G0|^e``. Tuples are aggregated by the
    subgroup generated by their prefix, so the cost is
    ``e * (#subgroups) * |G0|`` joins rather than ``|G0|^e``.
    """
    _check_e(e)
    if not s.is_split:
        raise NotSplit(f"scenario {s.name!r} has no complement")
    if sigma0 is None:
        sigma0 = default_sigma0(s, e)
    sigma0 = tuple(int(x) for x in sigma0)
    pi = s.projection.images
    if len(sigma0) != e or not Joiner.of(s.Q).generates(pi[g] for g in sigma0):
        raise Sigma0NotGenerating(f"sigma0 {sigma0} does not project onto generators of Q")
    G = s.G
    J = Joiner.of(G)
    fibre = sorted(s.G0.members)
    states = {0: 1}
    for s0 in sigma0:
        row = G._mul[s0]
        nxt: dict[int, int] = defaultdict(int)
        for node, c in states.items():
            for t in fibre:
                nxt[J.join(node, row[t])] += c
        states = nxt
    L = G.lattice
    by_class: Counter = Counter()
    for node, c in states.items():
        by_class[L.class_of[node]] += c
    denom = s.G0.order ** e
    values = {n: TargetMeasure(by_class.get(L.class_index(H), 0), denom) for n, H in s.targets.items()}
    return MeasureReport(s.name, e, values, denom, "split")


# ---------------------------------------------------------------------------
# closed forms


@dataclass(frozen=True)
class SignedPowerSum:
    """``sum_i c_i (n_i / n)^e`` for ``e >= e1``, with exceptional values below ``e1``."""

    n: int
    terms: tuple = ()
    prefix: tuple = ()
    e1: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError("base n must be positive")
        ns = [ni for _, ni in self.terms]
        if len(set(ns)) != len(ns):
            raise ValidationError("terms must have distinct n_i")
        for c, ni in self.terms:
            if not 1 <= ni <= self.n:
                raise ValidationError(f"n_i = {ni} outside 1..{self.n}")
            if c == 0:
                raise ValidationError("zero coefficients must be dropped")

    @classmethod
    def reduced(cls, n: int, terms: Iterable, prefix=(), e1: int = 1) -> "SignedPowerSum":
        acc: Counter = Counter()
        for c, ni in terms:
            acc[ni] += c
        kept = tuple(sorted(((c, ni) for ni, c in acc.items() if c), key=lambda t: -t[1]))
        return cls(n, kept, tuple(prefix), e1)

    def __call__(self, e: int) -> Fraction:
        return self.evaluate(e)

    def evaluate(self, e: int) -> Fraction:
        for pe, val in self.prefix:
            if pe == e:
                return Fraction(val)
        return sum((c * Fraction(ni, self.n) ** e for c, ni in self.terms), Fraction(0))

    def signed_terms(self) -> list:
        """Expand integer coefficients into ``(+-1, n_i)`` pairs."""
        out = []
        for c, ni in self.terms:
            out.extend([(1 if c > 0 else -1, ni)] * abs(c))
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for c, ni in self.terms:
            parts.append(f"{c:+d}*({ni}/{self.n})^e")
        return " ".join(parts)


def closed_form(s: CoverScenario, target: str) -> SignedPowerSum:
    """Signed power sum in ``e`` for a target of a split scenario.

    The count of tuples over a fixed generating ``sigma0`` that generate a
    given regular ``D`` inverts, over the upper set of regular subgroups, the
    count ``|D cap G0|^e`` of tuples lying inside ``D``.
    """
    if not s.is_split:
        raise NotSplit(f"closed forms need a split scenario; {s.name!r} has no complement")
    H = s.target(target)
    L = s.G.lattice
    j = L.index(H)
    conj = L.class_size(L.class_of[j])
    terms = []
    for i, mu in L.mobius_to(j).items():
        D = L.nodes[i]
        if mu and s.is_regular(D):
            terms.append((conj * mu, len(D.members & s.G0.members)))
    return SignedPowerSum.reduced(s.G0.order, terms)


# ---------------------------------------------------------------------------
# towers


class TowerScenario:
    """Two levels of a cover with a restriction map ``upper.G -> lower.G``."""

    def __init__(self, upper: CoverScenario, lower: CoverScenario, restriction: Epimorphism, name: str = "tower"):
        self.upper = upper
        self.lower = lower
        self.restriction = restriction
        self.name = name
        self._validate()

    def _validate(self):
        r = self.restriction
        U, Lw = self.upper, self.lower
        if r.source is not U.G or r.target is not Lw.G:
            raise BadTower("restriction must map the upper group onto the lower group")
        if any(r(x) not in Lw.G0.members for x in U.G0.members):
            raise BadTower("restriction does not map upper G0 into lower G0")
        pre = r.preimage(Lw.G0)
        joined = U.G.closure(r.kernel.generators, base=U.G0)
        if joined != pre.members:
            raise BadTower("upper G0 and the restriction kernel do not generate the preimage of lower G0")

    def __repr__(self):
        return f"<TowerScenario {self.name}: {self.upper!r} -> {self.lower!r}>"

    @cached_property
    def quotient_map(self) -> Epimorphism:
        """Induced epimorphism ``Q_upper -> Q_lower``."""
        pm, pl, r = self.upper.projection, self.lower.projection, self.restriction
        images = [None] * pm.target.order
        for x in range(self.upper.G.order):
            y = pl(r(x))
            q = pm(x)
            if images[q] is None:
                images[q] = y
            elif images[q] != y:
                raise BadTower("restriction does not induce a map on quotients")
        return Epimorphism(pm.target, pl.target, images)

    @cached_property
    def geometric_kernel(self) -> Subgroup:
        """``ker(restriction) cap upper.G0``."""
        return self.restriction.kernel.intersection(self.upper.G0)


@dataclass
class RefinementReport:
    e: int
    regular_lower: int
    lift_counts: dict
    all_equal: bool
    common: int | None
    gaschutz_factor: int
    kernel_order: int
    predicted: int
    target_agreement: dict = field(default_factory=dict)

    @property
    def matches_prediction(self) -> bool:
        return self.all_equal and self.common == self.predicted

    @property
    def measures_agree(self) -> bool:
        return all(row["agree"] for row in self.target_agreement.values())


def verify_refinement(t: TowerScenario, e: int, max_enumeration: int | None = None) -> RefinementReport:
    """Count regular lifts of every regular lower tuple and compare with the predicted constant."""
    _check_e(e)
    U, Lw, r = t.upper, t.lower, t.restriction
    cap = get_limits().max_enumeration if max_enumeration is None else max_enumeration
    if U.G.order ** e > cap:
        raise EnumerationTooLarge(f"{U.G.order}^{e} lifts exceeds the enumeration cap {cap}")
    JQl, JQm = Joiner.of(Lw.Q), Joiner.of(U.Q)
    pl, pm = Lw.projection.images, U.projection.images
    fib = r._fibres
    histogram: Counter = Counter()
    regular_lower = 0
    for sigma in itertools.product(range(Lw.G.order), repeat=e):
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
    k = t.geometric_kernel.order
    all_equal = len(histogram) == 1
    report = RefinementReport(
        e=e,
        regular_lower=regular_lower,
        lift_counts=dict(histogram),
        all_equal=all_equal,
        common=next(iter(histogram)) if all_equal else None,
        gaschutz_factor=gq,
        kernel_order=k,
        predicted=gq * k**e,
    )
    report.target_agreement = _pulled_back_measures(t, e)
    return report


def _pulled_back_measures(t: TowerScenario, e: int) -> dict:
    U, Lw, r = t.upper, t.lower, t.restriction
    lower = measure_at(Lw, e)
    spec = tuple_spectrum(U.G, e)
    LU, LL = U.G.lattice, Lw.G.lattice
    denom = 0
    numer: Counter = Counter()
    for cid in U.regular_classes():
        c = spec.counts[cid]
        denom += c
        if c:
            numer[LL.class_index(r.image_of(LU.representative(cid)))] += c
    out = {}
    for name, H in Lw.targets.items():
        up = Fraction(numer.get(LL.class_index(H), 0), denom)
        low = lower.value(name)
        out[name] = {"lower": low, "upper": up, "agree": up == low}
    return out


# ---------------------------------------------------------------------------
# definable bijections


@dataclass
class BijectionReport:
    target: str
    e: int
    normalizer_order: int
    normalizer_index: int  # [N:H]
    conjugate_count: int  # [G:N]
    factor: Fraction  # [N:H]^(e-1)
    induced: CoverScenario
    original_value: Fraction
    induced_value: Fraction

    @property
    def measured_ratio(self) -> Fraction | None:
        if self.original_value == 0:
            return None
        return self.induced_value / self.original_value

    @property
    def holds(self) -> bool:
        """Whether the induced measure is ``factor`` times the original."""
        return self.induced_value == self.factor * self.original_value

    @property
    def conjugate_factor(self) -> Fraction:
        return Fraction(self.conjugate_count) ** (self.e - 1)

    @property
    def conjugate_holds(self) -> bool:
        return self.induced_value == self.conjugate_factor * self.original_value


def induced_scenario(s: CoverScenario, target: str) -> CoverScenario:
    """Scenario over the normaliser ``N`` of the target: group ``N``, geometric part ``N cap G0``."""
    H = s.target(target)
    N = normalizer(s.G, H)
    GW = N.as_group(name=f"N({target})")
    G0W = GW.subgroup_from_perms(s.G.elements[i] for i in sorted(N.members & s.G0.members))
    HW = GW.subgroup_from_perms(H.generator_perms() or [])
    comp = None
    for node in GW.lattice.nodes:
        if node.order * G0W.order == GW.order and len(node.members & G0W.members) == 1:
            comp = node
            break
    return CoverScenario(GW, G0W, [(target, HW)], comp, f"{s.name}/W({target})")


def bijection_factor(s: CoverScenario, target: str, e: int) -> BijectionReport:
    """Factor ``[N:H]^(e-1)`` and the measured comparison with the scenario over ``N``."""
    _check_e(e)
    H = s.target(target)
    N = normalizer(s.G, H)
    W = induced_scenario(s, target)
    nh = N.order // H.order
    return BijectionReport(
        target=target,
        e=e,
        normalizer_order=N.order,
        normalizer_index=nh,
        conjugate_count=s.G.order // N.order,
        factor=Fraction(nh) ** (e - 1),
        induced=W,
        original_value=measure_at(s, e).value(target),
        induced_value=measure_at(W, e).value(target),
    )
