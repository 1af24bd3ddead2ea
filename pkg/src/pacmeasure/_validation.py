"""Input checks shared by the estimators and the command line."""

from __future__ import annotations

from numbers import Integral

from .exceptions import ValidationError
from .measure import CoverScenario, TowerScenario


def check_positive_int(value, name: str, minimum: int = 1) -> int:
    if isinstance(value, bool) or not isinstance(value, Integral) or value < minimum:
        raise ValidationError(f"{name} must be an integer >= {minimum}, got {value!r}")
    return int(value)


def check_scenario(X) -> CoverScenario:
    """Accept a scenario, a loaded document, a raw scenario mapping or ``"catalog:<id>"``."""
    from . import catalog
    from .scenario_io import Loaded, build

    if isinstance(X, str):
        name = X.split(":", 1)[1] if X.startswith("catalog:") else X
        X = catalog.get(name)
    elif isinstance(X, dict):
        X = build(X).value
    elif isinstance(X, Loaded):
        X = X.value
    if isinstance(X, TowerScenario):
        raise ValidationError("expected a cover scenario, got a tower")
    if not isinstance(X, CoverScenario):
        raise ValidationError(f"cannot interpret {type(X).__name__} as a cover scenario")
    return X


def check_target_names(s: CoverScenario, targets) -> list:
    if targets is None:
        return list(s.targets)
    if isinstance(targets, str):
        targets = [targets]
    names = []
    L = s.G.lattice
    by_class = {L.class_index(H): n for n, H in s.targets.items()}
    for t in targets:
        if isinstance(t, str):
            s.target(t)
            names.append(t)
        else:
            cid = L.class_index(t)
            if cid not in by_class:
                raise ValidationError("subgroup is not conjugate to any declared target")
            names.append(by_class[cid])
    return names
