from __future__ import annotations

import numpy as np
import pytest
import sympy as sp

from vlwave.problem_model import SingularProblem, problem_from_dict

X, Y = sp.symbols("x Y")


def to_grammar(expr) -> str:
    """Render a sympy expression in the package's expression grammar."""
    return str(expr).replace("**", "^").replace("log", "ln")


def from_grammar(text: str):
    return sp.sympify(text.replace("^", "**").replace("ln", "log"), locals={"x": X, "Y": Y, "pi": sp.pi})


def manufactured_problem(poly, mu: float, f_text: str, kind: str, L: float) -> SingularProblem:
    """Problem whose exact solution is the sympy polynomial ``poly`` in x."""
    f_sym = from_grammar(f_text).subs(Y, poly)
    lhs = sp.diff(poly, X, 2) + f_sym
    if mu:
        lhs += sp.Float(mu) * sp.diff(poly, X) / X
    g = sp.simplify(sp.expand(lhs))
    if kind == "ivp":
        v0, v1 = poly.subs(X, 0), sp.diff(poly, X).subs(X, 0)
    else:
        v0, v1 = poly.subs(X, 0), poly.subs(X, L)
    return problem_from_dict({
        "mu": float(mu), "f": f_text, "g": to_grammar(g),
        "conditions": {"type": kind, "v0": float(v0), "v1": float(v1)},
        "L": float(L), "exact": to_grammar(poly),
    })


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
