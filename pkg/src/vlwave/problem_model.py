"""Singular problems ``Y'' + (mu/x) Y' + f(x, Y) = g(x)`` on [0, L] and the built-in examples."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .expression import ExpressionSyntaxError, Node, parse_expression, serialize, variables

__all__ = [
    "ProblemValidationError",
    "Conditions",
    "SingularProblem",
    "builtin_problem",
    "load_problem",
    "problem_from_dict",
    "problem_to_dict",
    "log_form_coefficients",
    "BUILTIN_IDS",
]

BUILTIN_IDS = (1, 2, 3, 4, 5)


class ProblemValidationError(ValueError):
    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


@dataclass(frozen=True)
class Conditions:
    """``ivp``: Y(0) = v0, Y'(0) = v1.  ``bvp``: Y(0) = v0, Y(L) = v1."""

    kind: str
    v0: float
    v1: float

    def __post_init__(self):
        if self.kind not in ("ivp", "bvp"):
            raise ProblemValidationError("conditions.type", f"expected 'ivp' or 'bvp', got {self.kind!r}")
        object.__setattr__(self, "v0", float(self.v0))
        object.__setattr__(self, "v1", float(self.v1))


@dataclass(frozen=True)
class SingularProblem:
    mu: float
    f: Node
    g: Node
    conditions: Conditions
    L: float
    exact: Node | None = None
    transform: str = "none"  # "none" | "log"
    init: Node | None = field(default=None, compare=False)
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "mu", float(self.mu))
        object.__setattr__(self, "L", float(self.L))
        if not (self.L > 0 and math.isfinite(self.L)):
            raise ProblemValidationError("L", f"domain length must be positive, got {self.L}")
        if not math.isfinite(self.mu):
            raise ProblemValidationError("mu", "must be finite")
        if self.transform not in ("none", "log"):
            raise ProblemValidationError("transform", f"expected 'none' or 'log', got {self.transform!r}")
        extra = variables(self.f) - {"x", "Y"}
        if extra:
            raise ProblemValidationError("f", f"unknown variables {sorted(extra)}")
        for name in ("g", "exact", "init"):
            node = getattr(self, name)
            if node is not None and "Y" in variables(node):
                raise ProblemValidationError(name, "may only depend on x")
        if self.transform == "log":
            if not _is_zero(self.g, self.L):
                raise ProblemValidationError("g", "log substitution requires g = 0")
            v0 = self.conditions.v0
            if v0 <= 0 or (self.conditions.kind == "bvp" and self.conditions.v1 <= 0):
                raise ProblemValidationError("conditions", "log substitution requires positive values of Y")
            log_form_coefficients(self)

    @property
    def has_exact(self) -> bool:
        return self.exact is not None


def _is_zero(node: Node, L: float) -> bool:
    if variables(node):
        xs = np.linspace(0.0, L, 7)[1:-1]
        try:
            return bool(np.all(node(xs) == 0.0))
        except ArithmeticError:
            return False
    return node(0.0) == 0.0


def log_form_coefficients(problem: SingularProblem) -> tuple[float, float]:
    """Recover ``(a, b)`` with ``f(x, Y) = a Y + b Y ln Y`` by sampling.

    Raises :class:`ProblemValidationError` if ``f`` is not of that form.
    """
    L = problem.L
    xs = np.repeat(np.linspace(0.1, 0.9, 3) * L, 4)
    ys = np.tile([0.3, 0.8, 1.7, 3.1], 3)
    try:
        ratio = problem.f(xs, ys) / ys
    except ArithmeticError as exc:
        raise ProblemValidationError("f", f"cannot sample f for the log form: {exc}") from None
    A = np.column_stack([np.ones_like(ys), np.log(ys)])
    (a, b), *_ = np.linalg.lstsq(A, ratio, rcond=None)
    misfit = np.max(np.abs(A @ np.array([a, b]) - ratio))
    if not misfit <= 1e-10 * max(1.0, np.max(np.abs(ratio))):
        raise ProblemValidationError("f", "log substitution requires f = a*Y + b*Y*ln(Y)")
    return float(a), float(b)


def _p(text: str) -> Node:
    return parse_expression(text)


def builtin_problem(pid: int) -> SingularProblem:
    """The five worked examples, numbered 1..5."""
    if pid == 1:
        return SingularProblem(
            mu=1.0, f=_p("0"), g=_p("(8/(8 - x^2))^2"), conditions=Conditions("ivp", 0.0, 0.0),
            L=1.0, exact=_p("2*ln(8/(8 - x^2))"), name="example-1",
        )
    if pid == 2:
        # Y = 0 also solves the discrete system, so Newton needs a nonzero start.
        return SingularProblem(
            mu=0.0, f=_p("pi^3*Y^2/sin(pi*x)"), g=_p("0"), conditions=Conditions("bvp", 0.0, 0.0),
            L=1.0, exact=_p("sin(pi*x)/pi"), init=_p("x*(1 - x)"), name="example-2",
        )
    if pid == 3:
        return SingularProblem(
            mu=8.0, f=_p("x*Y"), g=_p("x^5 - x^4 + 44*x^2 - 30*x"), conditions=Conditions("ivp", 0.0, 0.0),
            L=2.0, exact=_p("x^4 - x^3"), name="example-3",
        )
    if pid == 4:
        return SingularProblem(
            mu=8.0, f=_p("18*Y + 4*Y*ln(Y)"), g=_p("0"), conditions=Conditions("ivp", 1.0, 0.0),
            L=1.0, exact=_p("exp(-x^2)"), transform="log", name="example-4",
        )
    if pid == 5:
        return SingularProblem(
            mu=2.0, f=_p("-6*Y - 4*Y*ln(Y)"), g=_p("0"), conditions=Conditions("ivp", 1.0, 0.0),
            L=1.0, exact=_p("exp(x^2)"), transform="log", name="example-5",
        )
    raise ValueError(f"no built-in problem {pid!r}; choose one of {BUILTIN_IDS}")


_REQUIRED = ("mu", "f", "g", "conditions", "L")
_TRANSFORM_ALIASES = {"none": "none", "log": "log", "log_substitution": "log"}


def _expr_field(data: dict, key: str) -> Node:
    text = data[key]
    if not isinstance(text, str):
        raise ProblemValidationError(key, "expected an expression string")
    try:
        return parse_expression(text)
    except ExpressionSyntaxError as exc:
        raise ProblemValidationError(key, str(exc)) from None


def _number_field(data: dict, key: str) -> float:
    val = data[key]
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        raise ProblemValidationError(key, f"expected a number, got {val!r}")
    return float(val)


def _transform_field(value) -> str:
    if not isinstance(value, str):
        raise ProblemValidationError("transform", f"expected a string, got {value!r}")
    return _TRANSFORM_ALIASES.get(value, value)


def problem_from_dict(data: dict) -> SingularProblem:
    if not isinstance(data, dict):
        raise ProblemValidationError("<root>", "expected a JSON object")
    for key in _REQUIRED:
        if key not in data:
            raise ProblemValidationError(key, "missing required field")
    cond = data["conditions"]
    if not isinstance(cond, dict):
        raise ProblemValidationError("conditions", "expected an object")
    for key in ("type", "v0", "v1"):
        if key not in cond:
            raise ProblemValidationError(f"conditions.{key}", "missing required field")
    conditions = Conditions(
        cond["type"], _number_field(cond, "v0"), _number_field(cond, "v1")
    )
    return SingularProblem(
        mu=_number_field(data, "mu"),
        f=_expr_field(data, "f"),
        g=_expr_field(data, "g"),
        conditions=conditions,
        L=_number_field(data, "L"),
        exact=_expr_field(data, "exact") if data.get("exact") is not None else None,
        transform=_transform_field(data.get("transform", "none")),
        init=_expr_field(data, "init") if data.get("init") is not None else None,
        name=str(data.get("name", "")),
    )


def load_problem(path) -> SingularProblem:
    """Read and validate a JSON problem file."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ProblemValidationError("<file>", f"invalid JSON: {exc}") from None
    return problem_from_dict(data)


def problem_to_dict(problem: SingularProblem) -> dict:
    out = {
        "mu": problem.mu,
        "f": serialize(problem.f),
        "g": serialize(problem.g),
        "conditions": {"type": problem.conditions.kind, "v0": problem.conditions.v0, "v1": problem.conditions.v1},
        "L": problem.L,
        "transform": problem.transform,
    }
    if problem.exact is not None:
        out["exact"] = serialize(problem.exact)
    if problem.init is not None:
        out["init"] = serialize(problem.init)
    if problem.name:
        out["name"] = problem.name
    return out
