"""Behaviour of closed forms as the rank ``e`` varies: series sums and the e -> infinity limit."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exceptions import GenericMissing, NotZeroOne, ValidationError
from .measure import CoverScenario, SignedPowerSum, closed_form


@dataclass(frozen=True)
class OmegaSumReport:
    form: SignedPowerSum
    start: int
    value: Fraction | None
    infinite: bool

    def __str__(self):
        return "inf" if self.infinite else str(self.value)


def omega_sum(form: SignedPowerSum, start: int = 1) -> OmegaSumReport:
    """``sum_{e >= start} form(e)``, exactly.

    Each term with ``n_i < n`` is a geometric tail ``c r^s / (1 - r)``. A term
    with ``n_i = n`` and positive coefficient makes the sum diverge.
    """
    if start < 1:
        raise ValidationError(f"start must be >= 1, got {start}")
    top = sum(c for c, ni in form.terms if ni == form.n)
    if top < 0:
        raise ValidationError("form has a negative constant part; it cannot be a measure")
    # exceptional values below e1 replace the power sum term by term
    head = Fraction(0)
    for e in range(start, form.e1):
        head += form.evaluate(e)
    s = max(start, form.e1)
    if top > 0:
        return OmegaSumReport(form, start, None, True)
    tail = Fraction(0)
    for c, ni in form.terms:
        r = Fraction(ni, form.n)
        tail += c * r**s / (1 - r)
    return OmegaSumReport(form, start, head + tail, False)


@dataclass(frozen=True)
class UltralimitReport:
    form: SignedPowerSum
    value: int


def ultralimit(form: SignedPowerSum) -> UltralimitReport:
    """``lim_{e -> oo} form(e)``: only terms with ``n_i = n`` survive."""
    value = sum(c for c, ni in form.terms if ni == form.n)
    if value not in (0, 1):
        raise NotZeroOne(f"limit {value} is not 0 or 1; the form is not a measure")
    return UltralimitReport(form, value)


def generic_target(s: CoverScenario) -> str:
    """Name of the unique target with limit measure 1, checked to be the class of ``G``."""
    L = s.G.lattice
    gcls = L.class_index(s.G.whole())
    names = [n for n, H in s.targets.items() if L.class_index(H) == gcls]
    if not names:
        raise GenericMissing(f"the class of G is not among the targets of {s.name!r}")
    ones = [n for n in s.targets if ultralimit(closed_form(s, n)).value == 1]
    if ones != names:
        raise NotZeroOne(f"targets with limit 1 are {ones}, expected exactly {names}")
    return names[0]
