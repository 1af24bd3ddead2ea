"""Counting e-tuples by the subgroup they generate.

Two independent routes are provided. :func:`tuple_spectrum` uses Moebius
inversion on the subgroup lattice (Hall's Eulerian function); it never looks
at individual tuples. :func:`brute_force_spectrum` walks every tuple and is
kept as the oracle the first route is checked against.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .config import get_limits
from .exceptions import EnumerationTooLarge, NotEGenerated, NotGenerating, ValidationError
from .groups import Epimorphism, FiniteGroup, Subgroup


def _as_subgroup(H) -> Subgroup:
    return H.whole() if isinstance(H, FiniteGroup) else H


def hall_phi(H, e: int) -> int:
    """Number of e-tuples of elements of ``H`` that generate ``H``.

    ``sum_{K <= H} mu(K, H) |K|^e`` over the lattice of the parent group.
    """
    if e < 0:
        raise ValidationError(f"e must be non-negative, got {e}")
    H = _as_subgroup(H)
    L = H.parent.lattice
    j = L.index(H)
    return sum(mu * L.nodes[i].order ** e for i, mu in L.mobius_to(j).items() if mu)


class Joiner:
    """Memoised ``node v <g>`` on the lattice of ``G``; nodes are lattice indices."""

    def __init__(self, G: FiniteGroup):
        self.group = G
        self.lattice = G.lattice
        self.top = self.lattice.index(G.whole())
        self._memo: list[dict[int, int]] = [dict() for _ in self.lattice.nodes]

    @classmethod
    def of(cls, G: FiniteGroup) -> "Joiner":
        """The shared joiner of ``G``; memo entries never change once written, so sharing is safe."""
        J = G.__dict__.get("_joiner")
        if J is None:
            J = G.__dict__["_joiner"] = cls(G)
        return J

    def join(self, node: int, g: int) -> int:
        memo = self._memo[node]
        out = memo.get(g)
        if out is None:
            H = self.lattice.nodes[node]
            if g in H.members:
                out = node
            else:
                out = self.lattice.index(self.group.closure((g,), base=H))
            memo[g] = out
        return out

    def generated(self, elems) -> int:
        node = 0
        for g in elems:
            node = self.join(node, g)
        return node

    def generates(self, elems) -> bool:
        return self.generated(elems) == self.top


@dataclass
class TupleSpectrum:
    """Counts of e-tuples of ``group`` keyed by the conjugacy class of the subgroup they generate.

    Class ids index ``group.lattice.classes``.
    """

    group: FiniteGroup
    e: int
    counts: dict = field(default_factory=dict)

    def total(self) -> int:
        return sum(self.counts.values())

    def count_for(self, H: Subgroup) -> int:
        return self.counts.get(self.group.lattice.class_index(H), 0)

    def nonzero(self) -> dict:
        return {cid: c for cid, c in self.counts.items() if c}

    def __eq__(self, other):
        if not isinstance(other, TupleSpectrum):
            return NotImplemented
        return self.group is other.group and self.e == other.e and self.nonzero() == other.nonzero()


def tuple_spectrum(G: FiniteGroup, e: int) -> TupleSpectrum:
    """``counts[D] = [G : N_G(D)] * hall_phi(D, e)`` for every conjugacy class ``[D]``."""
    L = G.lattice
    counts = {}
    for cid, members in enumerate(L.classes):
        counts[cid] = len(members) * hall_phi(L.nodes[members[0]], e)
    return TupleSpectrum(G, e, counts)


def _check_enumeration(size: int, cap: int | None):
    cap = get_limits().max_enumeration if cap is None else cap
    if size > cap:
        raise EnumerationTooLarge(f"{size} tuples exceeds the enumeration cap {cap}")


def brute_force_spectrum(G: FiniteGroup, e: int, max_enumeration: int | None = None) -> TupleSpectrum:
    """Classify every tuple of ``G^e`` directly (testing oracle)."""
    if e < 1:
        raise ValidationError(f"e must be positive, got {e}")
    _check_enumeration(G.order ** e, max_enumeration)
    J = Joiner.of(G)
    per_node = [0] * len(J.lattice.nodes)
    n = G.order

    def walk(depth, node):
        if depth == e - 1:
            for g in range(n):
                per_node[J.join(node, g)] += 1
            return
        for g in range(n):
            walk(depth + 1, J.join(node, g))

    walk(0, 0)
    counts = {cid: 0 for cid in range(len(J.lattice.classes))}
    for node, c in enumerate(per_node):
        counts[J.lattice.class_of[node]] += c
    return TupleSpectrum(G, e, counts)


# ---------------------------------------------------------------------------
# Gaschuetz


@dataclass
class GaschutzReport:
    epimorphism: Epimorphism
    e: int
    lift_count: int
    source_gen_count: int
    target_gen_count: int
    target_tuple: tuple

    @property
    def multiplicative(self) -> bool:
        return self.source_gen_count == self.lift_count * self.target_gen_count


def first_generating_tuple(G: FiniteGroup, e: int, joiner: Joiner | None = None) -> tuple | None:
    """Lexicographically first e-tuple of element indices generating ``G``."""
    J = joiner or Joiner.of(G)
    if hall_phi(G, e) == 0:
        return None
    for tup in itertools.product(range(G.order), repeat=e):
        if J.generates(tup):
            return tup
    return None  # pragma: no cover


def count_generating_lifts(f: Epimorphism, target_tuple, joiner: Joiner | None = None) -> int:
    """``|{g in source^e : f(g) = target_tuple, <g> = source}|`` by walking the fibres."""
    J = joiner or Joiner.of(f.source)
    fibres = [f.fibre(h) for h in target_tuple]
    e = len(fibres)
    count = 0

    def walk(depth, node):
        nonlocal count
        if depth == e:
            count += node == J.top
            return
        for g in fibres[depth]:
            walk(depth + 1, J.join(node, g))

    walk(0, 0)
    return count


def gaschutz_count(f: Epimorphism, e: int, target_tuple=None) -> GaschutzReport:
    """Generating lifts of a generating tuple of ``f.target``, plus both Hall counts."""
    phi_src = hall_phi(f.source, e)
    if phi_src == 0:
        raise NotEGenerated(f"source of order {f.source.order} is not {e}-generated")
    phi_tgt = hall_phi(f.target, e)
    Jt = Joiner.of(f.target)
    if target_tuple is None:
        target_tuple = first_generating_tuple(f.target, e, Jt)
    else:
        target_tuple = tuple(int(h) for h in target_tuple)
        if len(target_tuple) != e or not Jt.generates(target_tuple):
            raise NotGenerating(f"tuple {target_tuple} does not generate the target")
    lifts = count_generating_lifts(f, target_tuple)
    return GaschutzReport(f, e, lifts, phi_src, phi_tgt, tuple(target_tuple))


def all_lift_counts(f: Epimorphism, e: int, max_enumeration: int | None = None) -> dict:
    """Lift count for every generating target tuple, from one pass over ``source^e``."""
    _check_enumeration(f.source.order ** e, max_enumeration)
    Js, Jt = Joiner.of(f.source), Joiner.of(f.target)
    counts = {tup: 0 for tup in itertools.product(range(f.target.order), repeat=e) if Jt.generates(tup)}
    n = f.source.order
    img = f.images

    def walk(depth, node, prefix):
        if depth == e:
            if node == Js.top:
                counts[tuple(img[g] for g in prefix)] += 1
            return
        for g in range(n):
            walk(depth + 1, Js.join(node, g), prefix + (g,))

    walk(0, 0, ())
    return counts
