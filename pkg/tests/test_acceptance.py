"""Acceptance criteria, one test per criterion.

Under pytest a summary section lists PASS/FAIL per criterion. Run the file
directly (``python3 tests/test_acceptance.py``) to get the same lines without
pytest.
"""

from __future__ import annotations

import io
import json
import random
import sys
import tempfile
import time
from contextlib import contextmanager
from fractions import Fraction as F
from pathlib import Path

import pytest

from pacmeasure import catalog
from pacmeasure.amenability import check_measure, finite_index_extend, finite_kernel_pull, uniform_measure
from pacmeasure.asymptotics import omega_sum, ultralimit
from pacmeasure.cli import run
from pacmeasure.counting import Joiner, all_lift_counts, brute_force_spectrum, gaschutz_count, hall_phi, tuple_spectrum
from pacmeasure.exceptions import QuotientNotPGroup
from pacmeasure.groups import cyclic, dihedral, perm_from_cycles as P, quotient_map, symmetric
from pacmeasure.measure import (
    admissible_sigma0,
    bijection_factor,
    closed_form,
    default_sigma0,
    measure_at,
    measure_split_at,
    verify_refinement,
)
from pacmeasure.montecarlo import sample_measure
from pacmeasure.prop import all_choices, p_targets, prop_measure_at


@contextmanager
def budget(seconds: float):
    t0 = time.perf_counter()
    yield
    elapsed = time.perf_counter() - t0
    assert elapsed < seconds, f"took {elapsed:.2f}s, budget {seconds}s"


def sigma0_choices(s, e, want=3, seed=0):
    """``want`` distinct admissible sigma0 tuples (all of them if there are fewer)."""
    if s.G.order**e <= 10_000:
        pool = admissible_sigma0(s, e)
        rng = random.Random(seed)
        return pool if len(pool) <= want else [pool[0]] + rng.sample(pool[1:], want - 1)
    picks = [default_sigma0(s, e)]
    rng = random.Random(seed)
    JQ = Joiner.of(s.Q)
    pi = s.projection.images
    while len(picks) < want:
        tup = tuple(rng.randrange(s.G.order) for _ in range(e))
        if tup not in picks and JQ.generates(pi[g] for g in tup):
            picks.append(tup)
    return picks


def test_criterion_01_squares():
    with budget(1):
        s = catalog.get("squares")
        for e in range(1, 9):
            assert measure_at(s, e).value("trivial") == F(1, 2**e)


def test_criterion_02_fifth_root():
    with budget(5):
        s = catalog.get("fifth-root")
        assert measure_at(s, 1).value("image") == 1
        for e in range(2, 6):
            assert measure_at(s, e).value("image") == F(5) ** (1 - e)


def test_criterion_03_counting_schemes_agree():
    with budget(30):
        for name in catalog.SPLIT_SCENARIOS:
            s = catalog.get(name)
            for e in range(1, 7):
                expected = measure_at(s, e).as_fractions()
                choices = sigma0_choices(s, e)
                assert len(set(choices)) == min(3, len(admissible_sigma0(s, e, limit=3)))
                for sigma0 in choices:
                    assert measure_split_at(s, e, sigma0).as_fractions() == expected, (name, e, sigma0)


def test_criterion_04_refinement():
    with budget(30):
        for name in catalog.TOWERS:
            for e in (1, 2, 3):
                rep = verify_refinement(catalog.get(name), e)
                assert rep.all_equal and rep.matches_prediction, (name, e, rep.lift_counts, rep.predicted)
                assert rep.measures_agree, (name, e)


def test_criterion_05_bijection_factor():
    with budget(10):
        for name in catalog.SCENARIOS:
            s = catalog.get(name)
            for t in s.targets:
                rep = bijection_factor(s, t, 1)
                assert rep.factor == 1 and rep.holds, (name, t)
        rep = bijection_factor(catalog.get("s5-transposition"), "transposition", 2)
        assert rep.factor == 6
        assert rep.induced_value == 6 * rep.original_value, (
            f"induced/original = {rep.measured_ratio}, not {rep.factor}; "
            f"it equals [G:N]^(e-1) = {rep.conjugate_factor}"
        )


def _catalog_groups():
    seen = {}
    for name in catalog.ids():
        value = catalog.get(name)
        groups = (value.upper.G, value.lower.G) if hasattr(value, "upper") else (value.G,)
        for G in groups:
            seen.setdefault((G.degree, G.elements), G)
    return list(seen.values())


def test_criterion_06_oracle_equivalence():
    with budget(60):
        checked = 0
        for G in _catalog_groups():
            if G.order > 48:
                continue
            e = 1
            while G.order**e <= 10**6:
                assert tuple_spectrum(G, e) == brute_force_spectrum(G, e), (G.name, e)
                checked += 1
                e += 1
                if G.order == 1:
                    break
        assert checked > 0


def _epimorphisms():
    out = []
    for name in catalog.SCENARIOS:
        s = catalog.get(name)
        if s.Q.order > 1:
            out.append((name, s.projection))
    for name in catalog.TOWERS:
        out.append((name, catalog.get(name).restriction))
    return out


def test_criterion_07_gaschutz():
    with budget(10):
        exercised = set()
        for name, f in _epimorphisms():
            for e in (1, 2, 3):
                if hall_phi(f.source, e) == 0 or f.source.order**e > 10**5:
                    continue
                rep = gaschutz_count(f, e)
                assert rep.multiplicative, (name, e)
                assert set(all_lift_counts(f, e).values()) == {rep.lift_count}, (name, e)
                exercised.add(name)
        assert len(exercised) >= 5, exercised


def test_criterion_08_closed_forms():
    with budget(10):
        for name in catalog.SPLIT_SCENARIOS:
            s = catalog.get(name)
            forms = {t: closed_form(s, t) for t in s.targets}
            for form in forms.values():
                assert all(1 <= ni <= form.n for _, ni in form.terms)
            for e in range(1, 9):
                rep = measure_split_at(s, e)
                for t, form in forms.items():
                    assert form(e) == rep.value(t), (name, t, e)


def test_criterion_09_asymptotics():
    with budget(1):
        for name in catalog.SPLIT_SCENARIOS:
            s = catalog.get(name)
            L = s.G.lattice
            top = L.class_index(s.G.whole())
            for t, H in s.targets.items():
                lim = ultralimit(closed_form(s, t)).value
                assert lim in (0, 1)
                if L.class_index(H) == top:
                    assert lim == 1
        sq = catalog.get("squares")
        assert omega_sum(closed_form(sq, "full"), 1).infinite
        assert omega_sum(closed_form(sq, "trivial"), 1).value == 1
        # starting the sum at e = 2 gives 1/2
        assert omega_sum(closed_form(sq, "trivial"), 2).value == F(1, 2)


def test_criterion_10_total_mass():
    with budget(10):
        for name in catalog.SCENARIOS:
            s = catalog.get(name)
            for e in range(1, 5):
                assert measure_at(s.with_all_regular_targets(e), e).total() == 1, (name, e)


def test_criterion_11_pro_p():
    with budget(10):
        for name in ("squares", "c4-over-c2", "c2xc4"):
            s = catalog.get(name)
            for e in (1, 2, 3):
                assert prop_measure_at(s, 2, e).as_fractions() == measure_at(s, e).as_fractions()
        for name in catalog.PROP_SCENARIOS:
            s = p_targets(catalog.get(name), 2)
            for e in (1, 2, 3):
                if hall_phi(s.Q, e) == 0:
                    continue
                values = {tuple(prop_measure_at(s, 2, e, c).as_fractions().items()) for c in all_choices(s, 2)}
                assert len(values) == 1, (name, e, values)
        with pytest.raises(QuotientNotPGroup):
            prop_measure_at(catalog.get("fifth-root"), 5, 2)


def test_criterion_12_amenability():
    with budget(30):
        S3 = symmetric(3)
        A3 = S3.subgroup_from_perms([P(3, "(0 1 2)")])
        C4 = cyclic(4)
        C2_in_C4 = C4.subgroup([C4.index((2, 3, 0, 1))])
        D4, D6 = dihedral(4), dihedral(6)
        extensions = [
            finite_index_extend(S3, uniform_measure(A3.as_group())),
            finite_index_extend(C4, uniform_measure(C2_in_C4.as_group())),
            finite_index_extend(D4, uniform_measure(D4.subgroup([D4.generator_indices[0]]).as_group())),
            finite_index_extend(D6, uniform_measure(D6.subgroup([D6.generator_indices[1]]).as_group())),
        ]
        pulls = []
        for G, N in [(C4, C2_in_C4), (S3, A3), (D6, D6.subgroup([D6.generator_indices[0]]))]:
            pi = quotient_map(G, N)
            pulls.append(finite_kernel_pull(pi, uniform_measure(pi.target)))
        s = catalog.get("c2xc4")
        pi = s.projection
        pulls.append(finite_kernel_pull(pi, uniform_measure(pi.target)))
        for M in extensions + pulls:
            check = check_measure(M, exhaustive_up_to=12)
            assert check.ok and check.subsets == 2**M.group.order
        transpositions = [S3.index(P(3, c)) for c in ("(0 1)", "(0 2)", "(1 2)")]
        assert extensions[0](transpositions) == F(1, 2)
        assert extensions[1](C2_in_C4.members) == F(1, 2)
        assert pulls[0]([C4.generator_indices[0]]) == F(1, 4)
        assert pulls[0](C2_in_C4.members) == F(1, 2)


def test_criterion_13_monte_carlo():
    with budget(10):
        rep = sample_measure(catalog.get("squares"), "trivial", 2, 100_000, 20261018)
        assert rep.exact == F(1, 4) and rep.within(4)
        rep = sample_measure(catalog.get("fifth-root"), "image", 2, 100_000, 20261018)
        assert rep.exact == F(1, 5) and rep.within(4)


def _cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_criterion_14_cli():
    with budget(5):
        commands = [
            ("validate", "catalog:fifth-root"),
            ("measure", "catalog:squares", "--e", "3"),
            ("closed-form", "catalog:fifth-root", "--target", "image", "--format", "table"),
            ("omega-sum", "catalog:squares"),
            ("ultralimit", "catalog:squares", "--target", "full"),
            ("spectrum", "catalog:s3-sign", "--e", "2"),
            ("gaschutz", "catalog:c4-over-c2-tower", "--e", "2"),
            ("verify-refinement", "catalog:c4-over-c2-tower", "--e", "2"),
            ("prop-measure", "catalog:s4-over-a4", "--prime", "2", "--e", "2"),
            ("bijection-factor", "catalog:squares", "--e", "2"),
            ("montecarlo", "catalog:fifth-root", "--e", "2", "--samples", "5000", "--seed", "9"),
        ]
        for argv in commands:
            first = _cli(*argv)
            assert first[0] == 0, (argv, first[2])
            assert _cli(*argv) == first, argv
        with tempfile.TemporaryDirectory() as tmp:
            for name in catalog.ids():
                code, text, _ = _cli("catalog", name)
                path = Path(tmp) / f"{name}.json"
                path.write_text(text)
                v1, v2 = _cli("validate", str(path)), _cli("validate", f"catalog:{name}")
                assert json.loads(v1[1])["input-digest"] == json.loads(v2[1])["input-digest"]
                assert json.loads(v1[1])["results"] == json.loads(v2[1])["results"]
            bad = catalog.document("s3-sign")
            bad["g0"], bad["complement"] = [[1, 0, 2]], None
            (Path(tmp) / "non-normal.json").write_text(json.dumps(bad))
            code, out, err = _cli("validate", str(Path(tmp) / "non-normal.json"))
            assert code == 2 and out == "" and "NotNormal" in err
            bad = catalog.document("s3-sign")
            bad["targets"] = [{"name": "a3", "generators": [[1, 2, 0]]}]
            (Path(tmp) / "non-regular.json").write_text(json.dumps(bad))
            code, out, err = _cli("validate", str(Path(tmp) / "non-regular.json"))
            assert code == 2 and out == "" and "NotRegularTarget" in err


def main() -> int:
    tests = [(name, fn) for name, fn in sorted(globals().items()) if name.startswith("test_criterion_")]
    failures = 0
    for name, fn in tests:
        t0 = time.perf_counter()
        try:
            fn()
            status, detail = "PASS", ""
        except Exception as exc:  # report and carry on
            failures += 1
            status, detail = "FAIL", f"  {type(exc).__name__}: {exc}"
        print(f"{status}  {name}  ({time.perf_counter() - t0:.2f}s){detail}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
