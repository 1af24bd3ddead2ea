"""Worked examples, stored as scenario documents.

Generator order of the named constructions matters for tower restrictions:
``cyclic(n)`` has the single generator ``x -> x+1``; ``direct-product`` lists
the left factor's generators then the right factor's (shifted past the left
factor's points); ``symmetric(n)`` is generated by ``(0 1)`` and the n-cycle.
"""

from __future__ import annotations

import copy

from .config import get_limits
from .exceptions import GroupTooLarge
from .groups import perm_from_cycles
from .scenario_io import FORMAT_VERSION, Loaded, build


def _p(degree, cycles):
    return list(perm_from_cycles(degree, cycles))


def _scenario(name, group, g0, complement, targets, metadata=""):
    return {
        "format-version": FORMAT_VERSION,
        "kind": "scenario",
        "name": name,
        "group": group,
        "g0": g0,
        "complement": complement,
        "targets": [{"name": n, "generators": gens} for n, gens in targets],
        "metadata": metadata,
    }


def _tower(name, upper, lower, restriction, metadata=""):
    strip = lambda d: {k: v for k, v in d.items() if k not in ("format-version", "kind", "metadata")}
    return {
        "format-version": FORMAT_VERSION,
        "kind": "tower",
        "name": name,
        "upper": strip(upper),
        "lower": strip(lower),
        "restriction": restriction,
        "metadata": metadata,
    }


def _entries() -> dict:
    out = {}

    out["squares"] = _scenario(
        "squares",
        {"cyclic": 2},
        [[1, 0]],
        [],
        [("trivial", []), ("full", [[1, 0]])],
        "Squares in the multiplicative group: L = k(sqrt a); the trivial target is 'a is a square'.",
    )

    out["fifth-root"] = _scenario(
        "fifth-root",
        {"degree": 5, "generators": [_p(5, "(0 1 2 3 4)"), _p(5, "(1 2 4 3)")]},
        [_p(5, "(0 1 2 3 4)")],
        [_p(5, "(1 2 4 3)")],
        [("image", [_p(5, "(1 2 4 3)")]), ("full", [_p(5, "(0 1 2 3 4)"), _p(5, "(1 2 4 3)")])],
        "Image of x -> x^5 without 5th roots of unity: L = k(a, zeta, a^(1/5)), G = C5 x| C4 on the five roots.",
    )

    out["s5-transposition"] = _scenario(
        "s5-transposition",
        {"symmetric": 5},
        [_p(5, "(0 1)"), _p(5, "(0 1 2 3 4)")],
        [],
        [("transposition", [_p(5, "(0 1)")]), ("full", [_p(5, "(0 1)"), _p(5, "(0 1 2 3 4)")])],
        "Regular S5 cover; the target generated by a transposition has normaliser of order 12.",
    )

    wreath_gens = [_p(10, "(0 1 2 3 4)"), _p(10, "(0 5)(1 6)(2 7)(3 8)(4 9)")]
    out["wreath-5-2"] = _scenario(
        "wreath-5-2",
        {"wreath": [{"cyclic": 5}, {"cyclic": 2}]},
        wreath_gens,
        [],
        [("one-root", [_p(10, "(5 6 7 8 9)")]), ("full", wreath_gens)],
        "L = k(a, (u+av)^(1/5), (u-av)^(1/5)) over k(a^2); the one-root target fixes a and a root of u+av.",
    )

    out["s3-sign"] = _scenario(
        "s3-sign",
        {"symmetric": 3},
        [_p(3, "(0 1 2)")],
        [_p(3, "(0 1)")],
        [("transposition", [_p(3, "(0 1)")]), ("full", [_p(3, "(0 1)"), _p(3, "(0 1 2)")])],
        "S3 over A3 with quotient C2.",
    )

    out["s4-over-a4"] = _scenario(
        "s4-over-a4",
        {"symmetric": 4},
        [_p(4, "(0 1 2)"), _p(4, "(1 2 3)")],
        [_p(4, "(0 1)")],
        [
            ("transposition", [_p(4, "(0 1)")]),
            ("c4", [_p(4, "(0 1 2 3)")]),
            ("klein-odd", [_p(4, "(0 1)"), _p(4, "(2 3)")]),
            ("d8", [_p(4, "(0 1 2 3)"), _p(4, "(0 2)")]),
        ],
        "S4 over A4; quotient C2, Sylow 2-subgroups are dihedral of order 8.",
    )

    out["c4-over-c2"] = _scenario(
        "c4-over-c2",
        {"cyclic": 4},
        [_p(4, "(0 2)(1 3)")],
        None,
        [("full", [_p(4, "(0 1 2 3)")])],
        "Non-split: C4 over its subgroup of order 2.",
    )

    b, a = _p(6, "(2 3 4 5)"), _p(6, "(0 1)")
    ab = _p(6, "(0 1)(2 3 4 5)")
    out["c2xc4"] = _scenario(
        "c2xc4",
        {"direct-product": [{"cyclic": 2}, {"cyclic": 4}]},
        [a, _p(6, "(2 4)(3 5)")],
        None,
        [("b", [b]), ("ab", [ab]), ("full", [a, b])],
        "C2 x C4 over C2 x C2 (non-split, quotient C2).",
    )

    # towers
    sq = out["squares"]
    out["squares-identity-tower"] = _tower("squares-identity-tower", sq, sq, [[1, 0]], "Identity tower.")

    c4_full = _scenario("c4", {"cyclic": 4}, [[1, 2, 3, 0]], [], [("trivial", []), ("c2", [[2, 3, 0, 1]]), ("full", [[1, 2, 3, 0]])])
    c2_full = _scenario("c2", {"cyclic": 2}, [[1, 0]], [], [("trivial", []), ("full", [[1, 0]])])
    out["c4-over-c2-plain-tower"] = _tower(
        "c4-over-c2-plain-tower", c4_full, c2_full, [[1, 0]], "C4 -> C2 with both levels geometric (trivial quotients)."
    )

    c8 = _scenario("c8", {"cyclic": 8}, [_p(8, "(0 1 2 3 4 5 6 7)")], [], [("full", [_p(8, "(0 1 2 3 4 5 6 7)")])])
    c4 = _scenario("c4", {"cyclic": 4}, [_p(4, "(0 1 2 3)")], [], [("full", [_p(4, "(0 1 2 3)")])])
    out["c8-over-c4-tower"] = _tower("c8-over-c4-tower", c8, c4, [_p(4, "(0 1 2 3)")], "C8 -> C4, trivial quotients.")

    # C4 x S3 over C2 x C2: quotients C4 -> C2, geometric kernel A3
    c = _p(7, "(0 1 2 3)")
    t, r = _p(7, "(4 5)"), _p(7, "(4 5 6)")
    upper = _scenario(
        "c4xs3",
        {"direct-product": [{"cyclic": 4}, {"symmetric": 3}]},
        [t, r],
        [c],
        [("c4", [c]), ("twisted", [_p(7, "(0 1 2 3)(4 5)")]), ("full", [c, t, r])],
    )
    x, y = _p(4, "(0 1)"), _p(4, "(2 3)")
    lower = _scenario(
        "c2xc2",
        {"direct-product": [{"cyclic": 2}, {"cyclic": 2}]},
        [y],
        [x],
        [("left", [x]), ("diagonal", [_p(4, "(0 1)(2 3)")]), ("full", [x, y])],
    )
    # upper generators: C4 generator, (4 5), (4 5 6)
    out["c4-over-c2-tower"] = _tower(
        "c4-over-c2-tower",
        upper,
        lower,
        [x, y, list(range(4))],
        "C4 x S3 over C2 x C2: the quotient map is C4 -> C2 and the geometric kernel is A3.",
    )

    ub, ua = _p(6, "(0 1 2 3)"), _p(6, "(4 5)")
    upper_p = _scenario(
        "c4xc2",
        {"direct-product": [{"cyclic": 4}, {"cyclic": 2}]},
        [_p(6, "(0 2)(1 3)"), ua],
        None,
        [("b", [ub]), ("ab", [_p(6, "(0 1 2 3)(4 5)")]), ("full", [ub, ua])],
    )
    lower_p = _scenario(
        "c2xc2",
        {"direct-product": [{"cyclic": 2}, {"cyclic": 2}]},
        [y],
        [x],
        [("x", [x]), ("xy", [_p(4, "(0 1)(2 3)")]), ("full", [x, y])],
    )
    out["c4xc2-over-c2xc2-tower"] = _tower(
        "c4xc2-over-c2xc2-tower", upper_p, lower_p, [x, y], "2-group tower with quotients C2 -> C2."
    )
    return out


_ENTRIES = _entries()

SCENARIOS = tuple(k for k, v in _ENTRIES.items() if v["kind"] == "scenario")
TOWERS = tuple(k for k, v in _ENTRIES.items() if v["kind"] == "tower")
SPLIT_SCENARIOS = tuple(k for k in SCENARIOS if _ENTRIES[k]["complement"] is not None)
# scenarios whose quotient is a 2-group, for the pro-p measure
PROP_SCENARIOS = ("squares", "c4-over-c2", "c2xc4", "s3-sign", "s4-over-a4")
PROP_TOWERS = ("squares-identity-tower", "c8-over-c4-tower", "c4xc2-over-c2xc2-tower")

_CACHE: dict[str, Loaded] = {}


def ids() -> tuple:
    return tuple(_ENTRIES)


def document(name: str) -> dict:
    try:
        return copy.deepcopy(_ENTRIES[name])
    except KeyError:
        raise KeyError(f"unknown catalog id {name!r}; known: {', '.join(_ENTRIES)}") from None


def _groups(value):
    if hasattr(value, "upper"):
        return (value.upper.G, value.lower.G)
    return (value.G,)


def load(name: str) -> Loaded:
    """Build (once) and return a catalog entry; the active order cap applies to cached entries too."""
    if name not in _CACHE:
        _CACHE[name] = build(document(name))
    loaded = _CACHE[name]
    cap = get_limits().max_group_order
    for G in _groups(loaded.value):
        if G.order > cap:
            raise GroupTooLarge(f"{G.name or 'group'} has order {G.order}, above the cap {cap}")
    return loaded


def get(name: str):
    """The scenario or tower for a catalog id."""
    return load(name).value
