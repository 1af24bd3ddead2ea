"""Finite permutation groups with a fully materialised element table.

Elements are stored as image tuples on ``{0, ..., degree-1}`` and sorted
lexicographically, so element ``0`` is always the identity and every index is
reproducible across runs. Products compose right-to-left::

    (p * q)(x) = p(q(x))

Subgroups are frozensets of element indices of their parent group. The full
subgroup lattice (containment, Moebius values, conjugacy classes of subgroups,
normalisers) is built on demand and cached on the group.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .config import get_limits
from .exceptions import (
    GroupTooLarge,
    InvalidAction,
    InvalidPermutation,
    LatticeTooLarge,
    NotHomomorphism,
    NotNormal,
    NotPrime,
    ValidationError,
)

Perm = tuple


# ---------------------------------------------------------------------------
# permutations


def check_permutation(images: Sequence[int], degree: int | None = None) -> tuple:
    """Return ``images`` as a tuple, raising InvalidPermutation unless it is a bijection."""
    try:
        p = tuple(int(x) for x in images)
    except (TypeError, ValueError) as exc:
        raise InvalidPermutation(f"not a sequence of integers: {images!r}") from exc
    if degree is not None and len(p) != degree:
        raise InvalidPermutation(f"expected {degree} images, got {len(p)}: {list(p)}")
    if sorted(p) != list(range(len(p))):
        raise InvalidPermutation(f"not a bijection of 0..{len(p) - 1}: {list(p)}")
    return p


def compose(p: Perm, q: Perm) -> Perm:
    return tuple(p[x] for x in q)


def invert(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def identity(degree: int) -> Perm:
    return tuple(range(degree))


_CYCLE = re.compile(r"\(([^()]*)\)")


def perm_from_cycles(degree: int, cycles: str) -> Perm:
    """Parse cycle notation such as ``"(0 1 2)(3 4)"`` into an image tuple."""
    images = list(range(degree))
    seen: set[int] = set()
    for body in _CYCLE.findall(cycles):
        pts = [int(tok) for tok in body.replace(",", " ").split()]
        for a, b in zip(pts, pts[1:] + pts[:1]):
            if not 0 <= a < degree or a in seen:
                raise InvalidPermutation(f"bad cycle {body!r} for degree {degree}")
            seen.add(a)
            images[a] = b
    return check_permutation(images, degree)


def cycle_string(p: Perm) -> str:
    seen = set()
    out = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = p[j]
        out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out) or "()"


def _row_keys(rows: np.ndarray) -> np.ndarray:
    # fixed-width big-endian bytes sort exactly like the integer rows
    rows = np.ascontiguousarray(rows.astype(">u2"))
    return rows.view(f"S{2 * rows.shape[1]}").ravel()


# ---------------------------------------------------------------------------
# groups


class FiniteGroup:
    """A permutation group given by generators, with every element enumerated.

    Use :func:`group_from_generators` or :func:`construct_named` rather than
    calling the constructor directly.
    """

    def __init__(self, degree: int, generators: Iterable[Perm], elements: Iterable[Perm], name: str | None = None):
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = tuple(sorted(elements))
        self.order = len(self.elements)
        self.name = name
        self._index = {p: i for i, p in enumerate(self.elements)}
        if self.degree == 0:
            self.table = np.zeros((1, 1), dtype=np.int32)
            self.inverse = np.zeros(1, dtype=np.int32)
        else:
            P = np.array(self.elements, dtype=np.int64)
            keys = _row_keys(P)
            n = self.order
            table = np.empty((n, n), dtype=np.int32)
            for j in range(n):
                table[:, j] = np.searchsorted(keys, _row_keys(P[:, P[j]]))
            self.table = table
            self.inverse = np.searchsorted(keys, _row_keys(np.argsort(P, axis=1))).astype(np.int32)
        self._mul = self.table.tolist()
        self.generator_indices = tuple(self._index[g] for g in self.generators)

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<FiniteGroup{label} degree={self.degree} order={self.order}>"

    def __len__(self):
        return self.order

    def index(self, perm: Sequence[int]) -> int:
        try:
            return self._index[tuple(perm)]
        except KeyError:
            raise ValidationError(f"{cycle_string(tuple(perm))} is not an element of {self!r}") from None

    def __contains__(self, perm) -> bool:
        return tuple(perm) in self._index

    def mul(self, i: int, j: int) -> int:
        return self._mul[i][j]

    def inv(self, i: int) -> int:
        return int(self.inverse[i])

    def element_order(self, i: int) -> int:
        k, x = 1, i
        while x != 0:
            x = self._mul[x][i]
            k += 1
        return k

    def order_census(self) -> tuple:
        """Group order plus the multiset of element orders (cheap isomorphism invariant)."""
        counts = Counter(self.element_order(i) for i in range(self.order))
        return (self.order, tuple(sorted(counts.items())))

    @cached_property
    def conjugation_table(self) -> np.ndarray:
        """``C[g, x]`` is the index of ``g x g^-1``."""
        T = self.table
        return T[T, self.inverse[:, None]]

    def closure(self, gens: Iterable[int], base: "Subgroup | None" = None) -> frozenset:
        """Members of the subgroup generated by ``base`` and ``gens`` (right-coset Dimino)."""
        base_members = base.members if base is not None else frozenset((0,))
        base_arr = np.fromiter(sorted(base_members), dtype=np.int64)
        all_gens = list(base.generators if base is not None else ()) + [g for g in gens]
        elements = set(base_members)
        reps = [0]
        mul = self._mul
        T = self.table
        i = 0
        while i < len(reps):
            r = reps[i]
            i += 1
            row = mul[r]
            for g in all_gens:
                y = row[g]
                if y not in elements:
                    elements.update(T[base_arr, y].tolist())
                    reps.append(y)
        return frozenset(elements)

    def subgroup(self, gens: Iterable[int] = ()) -> "Subgroup":
        gens = tuple(int(g) for g in gens)
        for g in gens:
            if not 0 <= g < self.order:
                raise ValidationError(f"element index {g} out of range for order {self.order}")
        return Subgroup(self, self.closure(gens), gens)

    def subgroup_from_perms(self, perms: Iterable[Sequence[int]]) -> "Subgroup":
        return self.subgroup(self.index(check_permutation(p, self.degree)) for p in perms)

    def whole(self) -> "Subgroup":
        return Subgroup(self, frozenset(range(self.order)), self.generator_indices)

    def trivial(self) -> "Subgroup":
        return Subgroup(self, frozenset((0,)), ())

    @cached_property
    def lattice(self) -> "SubgroupLattice":
        return SubgroupLattice(self)


class Subgroup:
    """A subgroup of ``parent``: its member indices plus the generators that produced it."""

    __slots__ = ("parent", "members", "generators", "mask", "__weakref__")

    def __init__(self, parent: FiniteGroup, members: frozenset, generators: Iterable[int] = ()):
        self.parent = parent
        self.members = frozenset(members)
        self.generators = tuple(generators)
        self.mask = sum(1 << i for i in self.members)
        if 0 not in self.members or parent.order % len(self.members):
            raise ValidationError("member set is not a subgroup (identity or Lagrange check failed)")

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, i) -> bool:
        return i in self.members

    def __eq__(self, other):
        return isinstance(other, Subgroup) and other.parent is self.parent and other.members == self.members

    def __hash__(self):
        return hash(self.members)

    def __le__(self, other: "Subgroup") -> bool:
        return self.mask & ~other.mask == 0

    def __repr__(self):
        gens = ", ".join(cycle_string(self.parent.elements[g]) for g in self.generators)
        return f"<Subgroup order={self.order} of {self.parent.order} gens=[{gens}]>"

    def sorted_members(self) -> tuple:
        return tuple(sorted(self.members))

    def array(self) -> np.ndarray:
        return np.fromiter(sorted(self.members), dtype=np.int64)

    def intersection(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.parent, self.members & other.members)

    def join(self, other: "Subgroup") -> "Subgroup":
        return self.parent.subgroup(self.generators + other.generators)

    def product_order(self, other: "Subgroup") -> int:
        """``|HK| = |H||K| / |H cap K|`` (the set product, a subgroup when one side is normal)."""
        return self.order * other.order // len(self.members & other.members)

    def conjugate(self, g: int) -> "Subgroup":
        cm = self.parent.conjugation_table[g]
        return Subgroup(self.parent, frozenset(cm[self.array()].tolist()), tuple(int(cm[x]) for x in self.generators))

    def perms(self) -> list:
        return [self.parent.elements[i] for i in sorted(self.members)]

    def generator_perms(self) -> list:
        return [self.parent.elements[i] for i in self.generators]

    def as_group(self, name: str | None = None) -> FiniteGroup:
        """Realise the subgroup as a stand-alone FiniteGroup on the same points."""
        gens = self.generator_perms() if self.generators else [p for p in self.perms() if p != identity(self.parent.degree)]
        return FiniteGroup(self.parent.degree, gens, self.perms(), name=name)


# ---------------------------------------------------------------------------
# construction


def group_from_generators(degree: int, gens: Iterable[Sequence[int]], name: str | None = None) -> FiniteGroup:
    """Close ``gens`` under composition.

    Raises InvalidPermutation for a non-bijection and GroupTooLarge once the
    closure passes the configured order cap.
    """
    if int(degree) < 0:
        raise InvalidPermutation(f"degree must be non-negative, got {degree}")
    degree = int(degree)
    gens = [check_permutation(g, degree) for g in gens]
    cap = get_limits().max_group_order
    ident = identity(degree)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(x[i] for i in g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        if len(seen) > cap:
            raise GroupTooLarge(f"closure exceeds order cap {cap}")
        frontier = nxt
    return FiniteGroup(degree, gens, seen, name=name)


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValidationError(f"cyclic group needs n >= 1, got {n}")
    gens = [tuple(list(range(1, n)) + [0])] if n > 1 else []
    return group_from_generators(n, gens, name=f"C{n}")


def symmetric(n: int) -> FiniteGroup:
    if n < 1:
        raise ValidationError(f"symmetric group needs n >= 1, got {n}")
    if math.factorial(n) > get_limits().max_group_order:
        raise GroupTooLarge(f"S{n} has order {math.factorial(n)}, above the cap {get_limits().max_group_order}")
    gens = []
    if n > 1:
        gens = [perm_from_cycles(n, "(0 1)"), tuple(list(range(1, n)) + [0])]
    return group_from_generators(n, gens, name=f"S{n}")


def alternating(n: int) -> FiniteGroup:
    gens = [perm_from_cycles(n, f"(0 1 {k})") for k in range(2, n)]
    return group_from_generators(n, gens, name=f"A{n}")


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order ``2n`` (symmetries of an n-gon)."""
    if n < 1:
        raise ValidationError(f"dihedral group needs n >= 1, got {n}")
    if n == 1:
        return group_from_generators(2, [(1, 0)], name="D1")
    if n == 2:
        return direct_product(cyclic(2), cyclic(2))
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return group_from_generators(n, [rot, ref], name=f"D{n}")


def direct_product(A: FiniteGroup, B: FiniteGroup) -> FiniteGroup:
    if A.order * B.order > get_limits().max_group_order:
        raise GroupTooLarge(f"direct product would have order {A.order * B.order}")
    d = A.degree + B.degree
    gens = [tuple(g) + tuple(range(A.degree, d)) for g in A.generators]
    gens += [tuple(range(A.degree)) + tuple(A.degree + x for x in g) for g in B.generators]
    name = f"{A.name}x{B.name}" if A.name and B.name else None
    return group_from_generators(d, gens, name=name)


def automorphism_from_images(N: FiniteGroup, images: Sequence) -> np.ndarray:
    """Extend generator images to an automorphism of ``N``, as an index array."""
    try:
        f = Epimorphism.from_generator_images(N, N, images)
    except (NotHomomorphism, ValidationError) as exc:
        raise InvalidAction(f"generator images do not define an automorphism: {exc}") from exc
    return np.array(f.images, dtype=np.int64)


def semidirect(N: FiniteGroup, A: FiniteGroup, action: Sequence) -> FiniteGroup:
    """Realise ``N x| A`` in its regular representation on pairs ``(n, a)``.

    ``action`` gives, for each generator of ``A`` in order, either an integer
    ``k`` (every generator of ``N`` goes to its k-th power) or the list of
    images of the generators of ``N``. The assignment must extend to a
    homomorphism ``A -> Aut(N)``; InvalidAction otherwise.
    """
    if len(action) != len(A.generators):
        raise InvalidAction(f"need one automorphism per acting generator ({len(A.generators)}), got {len(action)}")
    order = N.order * A.order
    if order > get_limits().max_group_order:
        raise GroupTooLarge(f"semidirect product would have order {order}")

    gen_auts = []
    for spec in action:
        if isinstance(spec, (int, np.integer)):
            imgs = [_power(N, g, int(spec)) for g in N.generator_indices]
        else:
            imgs = list(spec)
        gen_auts.append(automorphism_from_images(N, imgs))

    # phi: A -> Aut(N) by breadth-first extension along generators
    ident = np.arange(N.order)
    phi = {0: ident}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for k, g in enumerate(A.generator_indices):
                y = A.mul(x, g)
                img = phi[x][gen_auts[k]]
                if y in phi:
                    if not np.array_equal(phi[y], img):
                        raise InvalidAction("automorphism assignment does not extend to a homomorphism A -> Aut(N)")
                else:
                    phi[y] = img
                    nxt.append(y)
        frontier = nxt
    for x in phi:
        for k, g in enumerate(A.generator_indices):
            if not np.array_equal(phi[A.mul(x, g)], phi[x][gen_auts[k]]):
                raise InvalidAction("automorphism assignment does not extend to a homomorphism A -> Aut(N)")

    nA = A.order

    def left_mult(n1: int, a1: int) -> tuple:
        images = [0] * order
        for n2 in range(N.order):
            twisted = N.mul(n1, int(phi[a1][n2]))
            for a2 in range(nA):
                images[n2 * nA + a2] = twisted * nA + A.mul(a1, a2)
        return tuple(images)

    gens = [left_mult(g, 0) for g in N.generator_indices] + [left_mult(0, a) for a in A.generator_indices]
    name = f"{N.name}:{A.name}" if N.name and A.name else None
    return group_from_generators(order, gens, name=name)


def _power(G: FiniteGroup, i: int, k: int) -> int:
    if k < 0:
        i, k = G.inv(i), -k
    out = 0
    for _ in range(k):
        out = G.mul(out, i)
    return out


def wreath(base: FiniteGroup, top: FiniteGroup) -> FiniteGroup:
    """Imprimitive wreath product ``base wr top`` on ``base.degree * top.degree`` points."""
    m, k = base.degree, top.degree
    order = base.order**k * top.order
    if order > get_limits().max_group_order:
        raise GroupTooLarge(f"wreath product would have order {order}")
    d = m * k
    gens = []
    for b in base.generators:
        gens.append(tuple(b[x] if x < m else x for x in range(d)))
    for t in top.generators:
        gens.append(tuple(t[x // m] * m + x % m for x in range(d)))
    name = f"{base.name}wr{top.name}" if base.name and top.name else None
    return group_from_generators(d, gens, name=name)


def construct_named(spec) -> FiniteGroup:
    """Build a group from a JSON-style descriptor.

    Recognised forms::

        {"cyclic": n}   {"symmetric": n}   {"alternating": n}   {"dihedral": n}
        {"direct-product": [A, B]}
        {"semidirect": {"kernel": A, "acting": B, "action": [...]}}
        {"wreath": [base, top]}
        {"degree": d, "generators": [[...], ...]}
    """
    if isinstance(spec, FiniteGroup):
        return spec
    if not isinstance(spec, dict):
        raise ValidationError(f"group descriptor must be an object, got {spec!r}")
    if "generators" in spec:
        return group_from_generators(spec.get("degree", _infer_degree(spec["generators"])), spec["generators"])
    if len(spec) != 1:
        raise ValidationError(f"ambiguous group descriptor {spec!r}")
    (kind, arg), = spec.items()
    if kind == "cyclic":
        return cyclic(int(arg))
    if kind == "symmetric":
        return symmetric(int(arg))
    if kind == "alternating":
        return alternating(int(arg))
    if kind == "dihedral":
        return dihedral(int(arg))
    if kind == "direct-product":
        A, B = (construct_named(a) for a in arg)
        return direct_product(A, B)
    if kind == "wreath":
        B, T = (construct_named(a) for a in arg)
        return wreath(B, T)
    if kind == "semidirect":
        N = construct_named(arg["kernel"])
        A = construct_named(arg["acting"])
        return semidirect(N, A, arg["action"])
    raise ValidationError(f"unknown group construction {kind!r}")


def _infer_degree(gens) -> int:
    if not gens:
        raise ValidationError("a generator descriptor with no generators needs an explicit degree")
    return len(gens[0])


# ---------------------------------------------------------------------------
# subgroup-level operations


def subgroup_generated(G: FiniteGroup, elems: Iterable[int]) -> Subgroup:
    return G.subgroup(elems)


def is_normal(G: FiniteGroup, H: Subgroup) -> bool:
    if H.parent is not G:
        raise ValidationError("subgroup belongs to a different group")
    inH = np.zeros(G.order, dtype=bool)
    inH[H.array()] = True
    C = G.conjugation_table
    arr = H.array()
    return all(inH[C[g, arr]].all() for g in G.generator_indices)


def normalizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    if H.parent is not G:
        raise ValidationError("subgroup belongs to a different group")
    inH = np.zeros(G.order, dtype=bool)
    inH[H.array()] = True
    keep = inH[G.conjugation_table[:, H.array()]].all(axis=1)
    members = frozenset(np.nonzero(keep)[0].tolist())
    return Subgroup(G, members, sorted(members))


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def is_p_power(n: int, p: int) -> bool:
    return p_part(n, p) == n


def sylow_subgroup(G: FiniteGroup, p: int) -> Subgroup:
    """First subgroup of full p-power order in canonical lattice order."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    target = p_part(G.order, p)
    for node in G.lattice.nodes:
        if node.order == target:
            return node
    raise AssertionError("Sylow's theorem failed")  # pragma: no cover


def sylow_subgroups(G: FiniteGroup, p: int) -> list:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    target = p_part(G.order, p)
    return [node for node in G.lattice.nodes if node.order == target]


def left_transversal(G: FiniteGroup, H: Subgroup) -> list:
    """Coset representatives ``g_i`` of ``g_i H``, identity first, each the least index in its coset."""
    seen = np.zeros(G.order, dtype=bool)
    reps = []
    arr = H.array()
    for g in range(G.order):
        if not seen[g]:
            reps.append(g)
            seen[G.table[g, arr]] = True
    return reps


# ---------------------------------------------------------------------------
# homomorphisms


class Epimorphism:
    """A surjective homomorphism given by the image of every source element."""

    def __init__(self, source: FiniteGroup, target: FiniteGroup, images: Sequence[int], check: bool = True):
        self.source = source
        self.target = target
        self.images = tuple(int(x) for x in images)
        if check:
            self._check()

    def _check(self):
        S, T = self.source, self.target
        if len(self.images) != S.order:
            raise NotHomomorphism("image map must cover every source element")
        if self.images[0] != 0:
            raise NotHomomorphism("identity must map to identity")
        for x in range(S.order):
            for g in S.generator_indices:
                if self.images[S.mul(x, g)] != T.mul(self.images[x], self.images[g]):
                    raise NotHomomorphism("image map does not respect composition")
        if len(set(self.images)) != T.order:
            raise NotHomomorphism("map is not surjective")

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __repr__(self):
        return f"<Epimorphism {self.source!r} -> {self.target!r}>"

    @classmethod
    def from_generator_images(cls, source: FiniteGroup, target: FiniteGroup, gen_images: Sequence) -> "Epimorphism":
        """Extend images of ``source.generators`` (permutations or indices) to the whole group."""
        if len(gen_images) != len(source.generators):
            raise NotHomomorphism(f"need {len(source.generators)} generator images, got {len(gen_images)}")
        imgs = [img if isinstance(img, (int, np.integer)) else target.index(img) for img in gen_images]
        images = {0: 0}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for k, g in enumerate(source.generator_indices):
                    y = source.mul(x, g)
                    if y not in images:
                        images[y] = target.mul(images[x], imgs[k])
                        nxt.append(y)
            frontier = nxt
        return cls(source, target, [images[i] for i in range(source.order)])

    @classmethod
    def identity(cls, G: FiniteGroup) -> "Epimorphism":
        return cls(G, G, range(G.order), check=False)

    @cached_property
    def kernel(self) -> Subgroup:
        members = frozenset(i for i, y in enumerate(self.images) if y == 0)
        return Subgroup(self.source, members, sorted(members))

    def image_of(self, H: Subgroup) -> Subgroup:
        members = frozenset(self.images[i] for i in H.members)
        return Subgroup(self.target, members, sorted({self.images[g] for g in H.generators}))

    def preimage(self, K: Subgroup) -> Subgroup:
        members = frozenset(i for i, y in enumerate(self.images) if y in K.members)
        return Subgroup(self.source, members, sorted(members))

    def fibre(self, y: int) -> list:
        return self._fibres[y]

    @cached_property
    def _fibres(self) -> list:
        out = [[] for _ in range(self.target.order)]
        for i, y in enumerate(self.images):
            out[y].append(i)
        return out

    def then(self, other: "Epimorphism") -> "Epimorphism":
        """Composite ``other o self``."""
        return Epimorphism(self.source, other.target, [other.images[y] for y in self.images], check=False)


def quotient_map(G: FiniteGroup, N: Subgroup) -> Epimorphism:
    """Natural projection onto ``G/N`` acting on the left cosets of ``N``."""
    if not is_normal(G, N):
        raise NotNormal("quotient requires a normal subgroup")
    assign = np.full(G.order, -1, dtype=np.int64)
    reps = []
    arr = N.array()
    for g in range(G.order):
        if assign[g] < 0:
            assign[G.table[g, arr]] = len(reps)
            reps.append(g)
    actions = assign[G.table[:, reps]]
    m = len(reps)
    Q = group_from_generators(m, [tuple(actions[g].tolist()) for g in G.generator_indices])
    images = [Q.index(tuple(row)) for row in actions.tolist()]
    return Epimorphism(G, Q, images, check=False)


# ---------------------------------------------------------------------------
# lattice


class SubgroupLattice:
    """Every subgroup of a group, in canonical order, with its order-theoretic data.

    Nodes are sorted lexicographically on their sorted member indices, so the
    trivial subgroup is node 0. Enumeration closes the cyclic subgroups under
    joins with cyclic subgroups, which reaches every subgroup.
    """

    def __init__(self, G: FiniteGroup):
        self.group = G
        cap = get_limits().max_subgroups
        found: dict[frozenset, tuple] = {frozenset((0,)): ()}
        cyclics = []
        for x in range(G.order):
            members = G.closure((x,))
            if members not in found:
                found[members] = (x,)
                cyclics.append(Subgroup(G, members, (x,)))
        layer = list(cyclics)
        while layer:
            nxt = []
            for S in layer:
                for C in cyclics:
                    if C.mask & ~S.mask == 0:
                        continue
                    members = G.closure(C.generators, base=S)
                    if members not in found:
                        J = Subgroup(G, members, S.generators + C.generators)
                        found[members] = J.generators
                        nxt.append(J)
                        if len(found) > cap:
                            raise LatticeTooLarge(f"more than {cap} subgroups")
            layer = nxt
        order = sorted(found, key=lambda m: tuple(sorted(m)))
        self.nodes = [Subgroup(G, m, found[m]) for m in order]
        self._lookup = {node.members: i for i, node in enumerate(self.nodes)}
        n = len(self.nodes)
        masks = [node.mask for node in self.nodes]
        self.below = [[i for i in range(n) if masks[i] & ~masks[j] == 0] for j in range(n)]
        self.above = [set() for _ in range(n)]
        for j, lst in enumerate(self.below):
            for i in lst:
                self.above[i].add(j)
        self._mobius_cache: dict[int, dict[int, int]] = {}
        self._classify()

    def __len__(self):
        return len(self.nodes)

    def index(self, H: Subgroup | frozenset) -> int:
        members = H.members if isinstance(H, Subgroup) else frozenset(H)
        return self._lookup[members]

    def contains(self, i: int, j: int) -> bool:
        """Whether node ``i`` is contained in node ``j``."""
        return j in self.above[i]

    def containment_matrix(self) -> np.ndarray:
        n = len(self.nodes)
        M = np.zeros((n, n), dtype=bool)
        for j, lst in enumerate(self.below):
            M[lst, j] = True
        return M

    def mobius_to(self, j: int) -> dict:
        """``{i: mu(node_i, node_j)}`` for every node ``i`` below ``j``."""
        if j in self._mobius_cache:
            return self._mobius_cache[j]
        below = sorted(self.below[j], key=lambda i: -self.nodes[i].order)
        below_set = set(below)
        mu = {}
        for i in below:
            if i == j:
                mu[i] = 1
            else:
                mu[i] = -sum(mu[d] for d in self.above[i] & below_set if d != i)
        self._mobius_cache[j] = mu
        return mu

    def mobius(self, i: int, j: int) -> int:
        return self.mobius_to(j).get(i, 0)

    def _classify(self):
        G = self.group
        C = G.conjugation_table
        n = len(self.nodes)
        self.class_of = [-1] * n
        self.classes: list[list[int]] = []
        arrays = [node.array() for node in self.nodes]
        for i in range(n):
            if self.class_of[i] >= 0:
                continue
            cid = len(self.classes)
            orbit = [i]
            self.class_of[i] = cid
            k = 0
            while k < len(orbit):
                a = arrays[orbit[k]]
                k += 1
                for g in G.generator_indices:
                    j = self._lookup[frozenset(C[g, a].tolist())]
                    if self.class_of[j] < 0:
                        self.class_of[j] = cid
                        orbit.append(j)
            self.classes.append(sorted(orbit))

    def representative(self, cid: int) -> Subgroup:
        return self.nodes[self.classes[cid][0]]

    def class_index(self, H: Subgroup) -> int:
        return self.class_of[self.index(H)]

    @cached_property
    def _normalizers(self) -> dict:
        return {}

    def normalizer_of(self, i: int) -> int:
        if i not in self._normalizers:
            self._normalizers[i] = self.index(normalizer(self.group, self.nodes[i]))
        return self._normalizers[i]

    def class_size(self, cid: int) -> int:
        return len(self.classes[cid])
