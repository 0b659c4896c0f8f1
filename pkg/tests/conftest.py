"""Shared helpers: sympy serves as an independent oracle for the exact engines."""

import sympy

from osculant.ratpoly import MPoly


def sym_vars(n):
    return sympy.symbols(f"X0:{n}")


def to_sympy(f: MPoly):
    xs = sym_vars(f.nvars)
    expr = sympy.Integer(0)
    for mono, c in f.items():
        term = sympy.Rational(c.numerator, c.denominator) if not isinstance(c, int) else sympy.Integer(c)
        for x, e in zip(xs, mono):
            term *= x ** e
        expr += term
    return sympy.expand(expr)


def from_sympy(expr, nvars: int) -> MPoly:
    xs = sym_vars(nvars)
    poly = sympy.Poly(sympy.expand(expr), *xs)
    terms = {}
    for mono, c in poly.terms():
        c = sympy.Rational(c)
        from fractions import Fraction
        terms[mono] = Fraction(int(c.p), int(c.q))
    return MPoly(nvars, terms)


def sym_matrix(rows):
    from fractions import Fraction
    return sympy.Matrix([[sympy.Rational(Fraction(x).numerator, Fraction(x).denominator) for x in r] for r in rows])


# acceptance summary: one line per criterion, printed at the end of the run

ACCEPTANCE_LINES = {}


def record_criterion(number: int, passed: bool, detail: str) -> None:
    line = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'} - {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
