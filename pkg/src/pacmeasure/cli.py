"""Command line driver.

    pacmeasure measure catalog:squares --e 3 --format json
    pacmeasure closed-form catalog:fifth-root --target image --format table
    pacmeasure catalog squares > squares.json && pacmeasure validate squares.json

Reports are deterministic: the same input and flags give byte-identical output.
Exit codes: 0 success, 2 validation error, 3 resource cap, 64 usage error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__, catalog
from .asymptotics import omega_sum, ultralimit
from .config import use_limits
from .counting import all_lift_counts, gaschutz_count, tuple_spectrum
from .exceptions import EnumerationTooLarge, PACMeasureError, ResourceCapError, ValidationError
from .groups import cycle_string
from .measure import (
    CoverScenario,
    TowerScenario,
    bijection_factor,
    closed_form,
    measure_at,
    verify_refinement,
)
from .montecarlo import sample_measure
from .prop import prop_measure_at, verify_prop_refinement
from .scenario_io import Loaded, dumps, load

EXIT_OK, EXIT_VALIDATION, EXIT_CAP, EXIT_USAGE = 0, 2, 3, 64
INFINITY = "inf"

COMMANDS = (
    "validate",
    "measure",
    "closed-form",
    "omega-sum",
    "ultralimit",
    "spectrum",
    "gaschutz",
    "verify-refinement",
    "prop-measure",
    "bijection-factor",
    "montecarlo",
    "catalog",
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def power_sum(form) -> dict:
    return {
        "n": form.n,
        "e1": form.e1,
        "terms": [{"coefficient": c, "n_i": ni} for c, ni in form.terms],
        "prefix": [{"e": e, "value": rational(v)} for e, v in form.prefix],
    }


# ---------------------------------------------------------------------------
# commands


def _scenario(loaded: Loaded) -> CoverScenario:
    if not isinstance(loaded.value, CoverScenario):
        raise UsageError("this command expects a scenario, not a tower")
    return loaded.value


def _tower(loaded: Loaded) -> TowerScenario:
    if not isinstance(loaded.value, TowerScenario):
        raise UsageError("this command expects a tower document")
    return loaded.value


def _names(s: CoverScenario, target):
    if target is None:
        return list(s.targets)
    s.target(target)
    return [target]


def _summary(s: CoverScenario) -> dict:
    L = s.G.lattice
    return {
        "name": s.name,
        "group-order": s.G.order,
        "g0-order": s.G0.order,
        "quotient-order": s.Q.order,
        "split": s.is_split,
        "subgroups": len(L),
        "targets": [
            {"name": n, "order": H.order, "class-size": L.class_size(L.class_index(H))} for n, H in s.targets.items()
        ],
    }


def cmd_validate(loaded, args):
    if isinstance(loaded.value, TowerScenario):
        t = loaded.value
        return {
            "kind": "tower",
            "upper": _summary(t.upper),
            "lower": _summary(t.lower),
            "geometric-kernel-order": t.geometric_kernel.order,
        }
    return {"kind": "scenario", **_summary(loaded.value)}


def _measure_rows(report, names):
    return [
        {
            "name": n,
            "numerator": report.values[n].numerator,
            "denominator": report.values[n].denominator,
            "value": rational(report.value(n)),
        }
        for n in names
    ]


def cmd_measure(loaded, args):
    s = _scenario(loaded)
    report = measure_at(s, args.e)
    return {"e": args.e, "regular-total": report.regular_total, "targets": _measure_rows(report, _names(s, args.target))}


def cmd_closed_form(loaded, args):
    s = _scenario(loaded)
    rows = []
    for n in _names(s, args.target):
        form = closed_form(s, n)
        rows.append({"name": n, "form": str(form), **power_sum(form)})
    return {"targets": rows}


def cmd_omega_sum(loaded, args):
    s = _scenario(loaded)
    rows = []
    for n in _names(s, args.target):
        rep = omega_sum(closed_form(s, n), args.start)
        rows.append({"name": n, "start": args.start, "value": INFINITY if rep.infinite else rational(rep.value)})
    return {"targets": rows}


def cmd_ultralimit(loaded, args):
    s = _scenario(loaded)
    return {"targets": [{"name": n, "limit": ultralimit(closed_form(s, n)).value} for n in _names(s, args.target)]}


def cmd_spectrum(loaded, args):
    s = _scenario(loaded)
    spec = tuple_spectrum(s.G, args.e)
    L = s.G.lattice
    rows = []
    for cid, c in spec.counts.items():
        rep = L.representative(cid)
        rows.append(
            {
                "class": cid,
                "order": rep.order,
                "class-size": L.class_size(cid),
                "regular": s.is_regular(rep),
                "generators": " ".join(cycle_string(p) for p in rep.generator_perms()) or "()",
                "count": c,
            }
        )
    return {"e": args.e, "total": spec.total(), "classes": rows}


def cmd_gaschutz(loaded, args):
    if isinstance(loaded.value, TowerScenario):
        f, label = loaded.value.restriction, "restriction"
    else:
        f, label = loaded.value.projection, "quotient"
    rep = gaschutz_count(f, args.e)
    out = {
        "e": args.e,
        "epimorphism": label,
        "source-order": f.source.order,
        "target-order": f.target.order,
        "target-tuple": list(rep.target_tuple),
        "lift-count": rep.lift_count,
        "phi-source": rep.source_gen_count,
        "phi-target": rep.target_gen_count,
        "multiplicative": rep.multiplicative,
    }
    try:
        counts = all_lift_counts(f, args.e, args.max_enumeration)
        out["distinct-lift-counts"] = sorted(set(counts.values()))
    except EnumerationTooLarge:
        out["distinct-lift-counts"] = None
    return out


def cmd_verify_refinement(loaded, args):
    t = _tower(loaded)
    rep = verify_refinement(t, args.e, args.max_enumeration)
    return {
        "e": args.e,
        "regular-lower": rep.regular_lower,
        "lift-count-histogram": [{"lifts": k, "tuples": v} for k, v in sorted(rep.lift_counts.items())],
        "all-equal": rep.all_equal,
        "common": rep.common,
        "gaschutz-factor": rep.gaschutz_factor,
        "kernel-order": rep.kernel_order,
        "predicted": rep.predicted,
        "matches-prediction": rep.matches_prediction,
        "targets": [
            {"name": n, "lower": rational(r["lower"]), "upper": rational(r["upper"]), "agree": r["agree"]}
            for n, r in rep.target_agreement.items()
        ],
    }


def cmd_prop_measure(loaded, args):
    if args.prime is None:
        raise UsageError("prop-measure needs --prime")
    if isinstance(loaded.value, TowerScenario):
        rep = verify_prop_refinement(loaded.value, args.prime, args.e, args.max_enumeration)
        return {
            "e": args.e,
            "prime": args.prime,
            "regular-lower": rep.regular_lower,
            "lift-count-histogram": [{"lifts": k, "tuples": v} for k, v in sorted(rep.lift_counts.items())],
            "predicted": rep.predicted,
            "matches-prediction": rep.matches_prediction,
        }
    s = _scenario(loaded)
    report = prop_measure_at(s, args.prime, args.e)
    return {
        "e": args.e,
        "prime": args.prime,
        "regular-total": report.regular_total,
        "targets": _measure_rows(report, _names(s, args.target)),
    }


def cmd_bijection_factor(loaded, args):
    s = _scenario(loaded)
    rows = []
    for n in _names(s, args.target):
        rep = bijection_factor(s, n, args.e)
        ratio = rep.measured_ratio
        rows.append(
            {
                "name": n,
                "normalizer-order": rep.normalizer_order,
                "normalizer-index": rep.normalizer_index,
                "conjugates": rep.conjugate_count,
                "factor": rational(rep.factor),
                "original": rational(rep.original_value),
                "induced": rational(rep.induced_value),
                "measured-ratio": None if ratio is None else rational(ratio),
                "holds": rep.holds,
                "conjugate-factor": rational(rep.conjugate_factor),
                "conjugate-holds": rep.conjugate_holds,
            }
        )
    return {"e": args.e, "targets": rows}


def cmd_montecarlo(loaded, args):
    s = _scenario(loaded)
    rows = []
    for n in _names(s, args.target):
        rep = sample_measure(s, n, args.e, args.samples, args.seed)
        rows.append(
            {
                "name": n,
                "accepted": rep.accepted,
                "hits": rep.hits,
                "estimate": None if rep.estimate is None else rational(rep.estimate),
                "exact": rational(rep.exact),
                "abs-error": None if rep.abs_error is None else rational(rep.abs_error),
                "sigma": None if rep.sigma is None else f"{rep.sigma:.6g}",
                "within-4-sigma": rep.within(4.0),
            }
        )
    return {"e": args.e, "samples": args.samples, "seed": args.seed, "generator": rep.generator, "targets": rows}


HANDLERS = {
    "validate": cmd_validate,
    "measure": cmd_measure,
    "closed-form": cmd_closed_form,
    "omega-sum": cmd_omega_sum,
    "ultralimit": cmd_ultralimit,
    "spectrum": cmd_spectrum,
    "gaschutz": cmd_gaschutz,
    "verify-refinement": cmd_verify_refinement,
    "prop-measure": cmd_prop_measure,
    "bijection-factor": cmd_bijection_factor,
    "montecarlo": cmd_montecarlo,
}


# ---------------------------------------------------------------------------
# output


def _cell(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list):
        return ("; " if any(isinstance(x, dict) for x in v) else " ").join(_cell(x) for x in v)
    if isinstance(v, dict):
        return ", ".join(f"{k}={_cell(x)}" for k, x in v.items())
    return str(v)


def render_table(doc: dict) -> str:
    lines = [f"# {doc['command']} {doc['input']}  ({doc['input-digest']})"]
    results = doc["results"]
    tables = []
    for key, val in results.items():
        if isinstance(val, list) and val and all(isinstance(r, dict) for r in val):
            tables.append((key, val))
        elif isinstance(val, dict) and key in ("upper", "lower"):
            tables.append((key, [{k: v for k, v in val.items() if k != "targets"}]))
        else:
            lines.append(f"{key}: {_cell(val)}")
    for key, rows in tables:
        cols = list(dict.fromkeys(k for r in rows for k in r))
        cells = [[_cell(r.get(c)) for c in cols] for r in rows]
        widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
        lines.append("")
        lines.append(f"[{key}]")
        lines.append("  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip())
        lines.append("  ".join("-" * w for w in widths))
        for row in cells:
            lines.append("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _load_input(ref: str) -> Loaded:
    if ref.startswith("catalog:"):
        name = ref.split(":", 1)[1]
        try:
            return catalog.load(name)
        except KeyError as exc:
            raise ValidationError(str(exc.args[0])) from None
    path = Path(ref)
    if not path.is_file():
        raise ValidationError(f"no such scenario file: {ref}")
    return load(path)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--e", type=int, default=1)
    common.add_argument("--start", type=int, default=1)
    common.add_argument("--prime", type=int)
    common.add_argument("--target")
    common.add_argument("--samples", type=int, default=100_000)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--max-group-order", type=int)
    common.add_argument("--max-enumeration", type=int)

    parser = _Parser(prog="pacmeasure", description="Exact measures on finite Galois cover scenarios.")
    parser.add_argument("--version", action="version", version=f"pacmeasure {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "catalog":
            p.add_argument("id", nargs="?")
        else:
            p.add_argument("input", help="scenario file path or catalog:<id>")
    return parser


def _check_args(args):
    for flag in ("e", "start", "samples"):
        if getattr(args, flag) < 1:
            raise UsageError(f"--{flag} must be >= 1")
    for flag in ("max_group_order", "max_enumeration"):
        v = getattr(args, flag)
        if v is not None and v < 1:
            raise UsageError(f"--{flag.replace('_', '-')} must be >= 1")
    if not 0 <= args.seed < 2**64:
        raise UsageError("--seed must fit in 64 unsigned bits")


def _catalog(args, out):
    if args.id is None:
        doc = {
            "tool": "pacmeasure",
            "version": __version__,
            "command": "catalog",
            "entries": [{"id": i, "kind": catalog.document(i)["kind"]} for i in catalog.ids()],
        }
        out.write(dumps(doc))
        return
    name = args.id.split(":", 1)[1] if args.id.startswith("catalog:") else args.id
    try:
        out.write(dumps(catalog.load(name).document))
    except KeyError as exc:
        raise ValidationError(str(exc.args[0])) from None


def run(argv=None, stdout=None, stderr=None) -> int:
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        _check_args(args)
        with use_limits(max_group_order=args.max_group_order, max_enumeration=args.max_enumeration):
            if args.command == "catalog":
                _catalog(args, out)
                return EXIT_OK
            loaded = _load_input(args.input)
            results = HANDLERS[args.command](loaded, args)
        doc = {
            "tool": "pacmeasure",
            "version": __version__,
            "command": args.command,
            "input": args.input,
            "input-digest": loaded.digest,
            "parameters": {
                k: getattr(args, k)
                for k in ("e", "start", "prime", "target", "samples", "seed", "max_group_order", "max_enumeration")
            },
            "results": results,
        }
        out.write(dumps(doc) if args.format == "json" else render_table(doc))
        return EXIT_OK
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except ValidationError as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_VALIDATION
    except ResourceCapError as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_CAP
    except PACMeasureError as exc:  # pragma: no cover
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_VALIDATION


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":  # pragma: no cover
    main()
