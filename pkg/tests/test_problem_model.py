from __future__ import annotations

import json

import numpy as np
import pytest
import sympy as sp

from conftest import X, Y, from_grammar
from vlwave.expression import serialize
from vlwave.problem_model import (
    BUILTIN_IDS,
    ProblemValidationError,
    builtin_problem,
    load_problem,
    log_form_coefficients,
    problem_from_dict,
    problem_to_dict,
)

BASE = {"mu": 1.0, "f": "x*Y", "g": "x^2", "conditions": {"type": "ivp", "v0": 0.0, "v1": 0.0}, "L": 1.0}


@pytest.mark.parametrize("pid", BUILTIN_IDS)
def test_exact_solutions_satisfy_their_equations(pid):
    p = builtin_problem(pid)
    exact = from_grammar(serialize(p.exact))
    f = from_grammar(serialize(p.f)).subs(Y, exact)
    g = from_grammar(serialize(p.g))
    residual = sp.diff(exact, X, 2) + p.mu * sp.diff(exact, X) / X + f - g
    for xv in (np.arange(1, 21) / 21):
        assert abs(float(residual.subs(X, xv * p.L))) <= 1e-9


@pytest.mark.parametrize("pid", BUILTIN_IDS)
def test_exact_solutions_satisfy_conditions(pid):
    p = builtin_problem(pid)
    exact = from_grammar(serialize(p.exact))
    c = p.conditions
    assert float(exact.subs(X, 0)) == pytest.approx(c.v0, abs=1e-12)
    second = sp.diff(exact, X).subs(X, 0) if c.kind == "ivp" else exact.subs(X, p.L)
    assert float(second) == pytest.approx(c.v1, abs=1e-12)


@pytest.mark.parametrize("pid,ab", [(4, (18.0, 4.0)), (5, (-6.0, -4.0))])
def test_log_form_coefficients(pid, ab):
    a, b = log_form_coefficients(builtin_problem(pid))
    assert (a, b) == pytest.approx(ab, abs=1e-10)


@pytest.mark.parametrize("pid", BUILTIN_IDS)
def test_dict_round_trip(pid, tmp_path):
    p = builtin_problem(pid)
    path = tmp_path / "p.json"
    path.write_text(json.dumps(problem_to_dict(p)))
    assert load_problem(path) == p


@pytest.mark.parametrize("change,field", [
    ({"L": 0.0}, "L"),
    ({"L": "two"}, "L"),
    ({"g": "Y + 1"}, "g"),
    ({"f": "x +"}, "f"),
    ({"conditions": {"type": "ivp", "v0": 0.0}}, "conditions.v1"),
    ({"conditions": {"type": "robin", "v0": 0.0, "v1": 0.0}}, "conditions.type"),
    ({"transform": "log", "f": "Y*ln(Y)", "conditions": {"type": "ivp", "v0": 1.0, "v1": 0.0}}, "g"),
    ({"transform": "log", "g": "0", "f": "Y^2", "conditions": {"type": "ivp", "v0": 1.0, "v1": 0.0}}, "f"),
    ({"transform": "log", "g": "0", "f": "Y*ln(Y)"}, "conditions"),
    ({"transform": "square"}, "transform"),
    ({"transform": ["log"]}, "transform"),
])
def test_validation_names_the_field(change, field):
    with pytest.raises(ProblemValidationError) as info:
        problem_from_dict({**BASE, **change})
    assert info.value.field == field


def test_log_substitution_alias():
    data = {**BASE, "f": "18*Y + 4*Y*ln(Y)", "g": "0", "transform": "log_substitution",
            "conditions": {"type": "ivp", "v0": 1.0, "v1": 0.0}}
    assert problem_from_dict(data).transform == "log"
    with pytest.raises(ProblemValidationError) as info:
        problem_from_dict({**data, "f": "Y*ln(Y)", "g": "1"})
    assert info.value.field == "g"


def test_file_mirroring_builtin_is_equal(tmp_path):
    path = tmp_path / "one.json"
    path.write_text(json.dumps({
        "mu": 1, "f": "0", "g": "(8/(8 - x^2))^2", "conditions": {"type": "ivp", "v0": 0, "v1": 0},
        "L": 1, "exact": "2*ln(8/(8 - x^2))",
    }))
    assert load_problem(path) == builtin_problem(1)


def test_missing_field():
    data = dict(BASE)
    del data["mu"]
    with pytest.raises(ProblemValidationError) as info:
        problem_from_dict(data)
    assert info.value.field == "mu"


def test_invalid_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(ProblemValidationError):
        load_problem(path)


def test_unknown_builtin():
    with pytest.raises(ValueError):
        builtin_problem(6)
