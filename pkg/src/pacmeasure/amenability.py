"""Invariant finitely additive measures on finite groups, and the two ways of building new ones.

Subsets are frozensets of element indices of the measured group.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .exceptions import NotTransversal, ValidationError
from .groups import Epimorphism, FiniteGroup


@dataclass(frozen=True)
class MeasuredGroup:
    group: FiniteGroup
    measure: Callable[[frozenset], Fraction]

    def __call__(self, X: Iterable[int]) -> Fraction:
        return self.measure(frozenset(X))


def uniform_measure(G: FiniteGroup) -> MeasuredGroup:
    return MeasuredGroup(G, lambda X: Fraction(len(X), G.order))


def finite_index_extend(G: FiniteGroup, H: MeasuredGroup, reps: list | None = None) -> MeasuredGroup:
    """Extend an invariant measure from a finite-index subgroup.

    ``H.group`` must consist of elements of ``G`` (same points). With left
    coset representatives ``g_1 = 1, ..., g_n``::

        mu_G(X) = (1/n) sum_i mu_H(g_i^-1 (X cap g_i H))
    """
    try:
        emb = [G.index(p) for p in H.group.elements]
    except ValidationError as exc:
        raise ValidationError("measured group is not a subgroup of G") from exc
    to_h = {g: i for i, g in enumerate(emb)}
    in_h = frozenset(emb)
    n = G.order // H.group.order
    if reps is None:
        from .groups import left_transversal

        reps = left_transversal(G, G.subgroup(emb))
    reps = list(reps)
    if not reps or reps[0] != 0:
        raise NotTransversal("first coset representative must be the identity")
    cosets = [frozenset(G.mul(g, h) for h in in_h) for g in reps]
    if len(reps) != n or len(frozenset().union(*cosets)) != G.order:
        raise NotTransversal("representatives do not list every left coset exactly once")
    inv = [G.inv(g) for g in reps]

    def mu(X: frozenset) -> Fraction:
        total = Fraction(0)
        for g, gi, coset in zip(reps, inv, cosets):
            part = X & coset
            if part:
                total += H.measure(frozenset(to_h[G.mul(gi, x)] for x in part))
        return total / n

    return MeasuredGroup(G, mu)


def finite_kernel_pull(pi: Epimorphism, H: MeasuredGroup) -> MeasuredGroup:
    """Pull an invariant measure back along an epimorphism with finite kernel.

    ``(X)_i`` collects the points of ``X`` whose fibre meets ``X`` in exactly
    ``i`` points, and ``mu_G(X) = (1/n) sum_i i * mu_H(pi((X)_i))`` with ``n`` the
    kernel order.
    """
    if H.group is not pi.target:
        raise ValidationError("measure must live on the epimorphism target")
    n = pi.kernel.order
    img = pi.images

    def mu(X: frozenset) -> Fraction:
        per_fibre: dict[int, int] = {}
        for x in X:
            per_fibre[img[x]] = per_fibre.get(img[x], 0) + 1
        layers: dict[int, set] = {}
        for y, i in per_fibre.items():
            layers.setdefault(i, set()).add(y)
        return sum((i * H.measure(frozenset(ys)) for i, ys in layers.items()), Fraction(0)) / n

    return MeasuredGroup(pi.source, mu)


@dataclass
class MeasureCheck:
    subsets: int
    total_mass: bool
    empty: bool
    additive: bool
    invariant: bool

    @property
    def ok(self) -> bool:
        return self.total_mass and self.empty and self.additive and self.invariant


def check_measure(M: MeasuredGroup, exhaustive_up_to: int = 12, samples: int = 2000, seed: int = 0) -> MeasureCheck:
    """Mass 1, empty 0, finite additivity and left invariance.

    Up to ``exhaustive_up_to`` elements every subset is evaluated and every
    disjoint pair checked; above that random subsets and pairs are drawn.
    """
    G = M.group
    n = G.order
    whole = frozenset(range(n))
    if n <= exhaustive_up_to:
        values = {}
        for mask in range(1 << n):
            values[mask] = M(i for i in range(n) if mask >> i & 1)
        additive = True
        full = (1 << n) - 1
        for a in range(1 << n):
            rest = full & ~a
            b = rest
            while True:
                if values[a | b] != values[a] + values[b]:
                    additive = False
                    break
                if b == 0:
                    break
                b = (b - 1) & rest
            if not additive:
                break
        invariant = all(
            values[sum(1 << G.mul(g, i) for i in range(n) if mask >> i & 1)] == values[mask]
            for g in G.generator_indices
            for mask in range(1 << n)
        )
        count = 1 << n
    else:
        rng = random.Random(seed)
        additive = invariant = True
        for _ in range(samples):
            labels = [rng.randrange(3) for _ in range(n)]
            X = frozenset(i for i in range(n) if labels[i] == 1)
            Y = frozenset(i for i in range(n) if labels[i] == 2)
            if M(X | Y) != M(X) + M(Y):
                additive = False
            g = rng.randrange(n)
            if M(G.mul(g, x) for x in X) != M(X):
                invariant = False
        count = samples
    return MeasureCheck(count, M(whole) == 1, M(frozenset()) == 0, additive, invariant)
