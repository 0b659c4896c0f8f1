"""Exact sparse multivariate polynomials over the rationals.

Coefficients are exact rationals.  Integral coefficients are stored as plain
``int`` and the rest as :class:`fractions.Fraction`; both behave identically
under arithmetic, the split only keeps fraction-free elimination fast.

Monomials are exponent tuples ``(e0, e1, ...)``.  The term order is
graded-lexicographic with ``X0 > X1 > ...``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

Rational = Fraction
Monomial = Tuple[int, ...]
Scalar = Union[int, Fraction]


def to_rational(value) -> Scalar:
    """Coerce to an exact rational; integral values come back as ``int``."""
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, str):
        return to_rational(Fraction(value))
    raise TypeError(f"not an exact rational: {value!r}")


def grlex_key(mono: Monomial) -> tuple:
    """Sort key: larger key means larger monomial in graded-lex order."""
    return (sum(mono), mono)


def monomials_of_degree(nvars: int, d: int) -> list[Monomial]:
    """All monomials of total degree ``d``, graded-lex descending."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    if nvars == 0:
        return [()] if d == 0 else []
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    assert len(out) == comb(d + nvars - 1, nvars - 1)
    return out


def monomials_up_to_degree(nvars: int, k: int) -> list[Monomial]:
    """Monomials of degree 0..k; by degree ascending, lex descending within a degree."""
    out: list[Monomial] = []
    for d in range(k + 1):
        out.extend(monomials_of_degree(nvars, d))
    return out


class MPoly:
    """Immutable sparse polynomial in ``nvars`` variables over Q."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Monomial, object] | None = None):
        if nvars < 0:
            raise ValueError("nvars must be non-negative")
        self.nvars = nvars
        clean: Dict[Monomial, Scalar] = {}
        if terms:
            for mono, c in terms.items():
                mono = tuple(mono)
                if len(mono) != nvars or any(e < 0 for e in mono):
                    raise ValueError(f"bad monomial {mono} for {nvars} variables")
                c = to_rational(c)
                if c:
                    clean[mono] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: Dict[Monomial, Scalar]) -> "MPoly":
        # trusted constructor: terms already normalized, no zeros
        p = object.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    # construction helpers

    @classmethod
    def zero(cls, nvars: int) -> "MPoly":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, value) -> "MPoly":
        c = to_rational(value)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, nvars: int, index: int) -> "MPoly":
        if not 0 <= index < nvars:
            raise IndexError(f"variable {index} out of range for {nvars} variables")
        e = [0] * nvars
        e[index] = 1
        return cls._raw(nvars, {tuple(e): 1})

    @classmethod
    def gens(cls, nvars: int) -> list["MPoly"]:
        return [cls.var(nvars, i) for i in range(nvars)]

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=1) -> "MPoly":
        return cls(len(exps), {tuple(exps): coeff})

    @classmethod
    def linear(cls, coeffs: Sequence) -> "MPoly":
        """The linear form sum coeffs[i]*Xi."""
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
        return cls(n, terms)

    @classmethod
    def from_coefficients(cls, nvars: int, basis: Sequence[Monomial], coeffs: Sequence) -> "MPoly":
        if len(basis) != len(coeffs):
            raise ValueError("basis and coefficient lengths differ")
        return cls(nvars, dict(zip(basis, coeffs)))

    # accessors

    @property
    def terms(self) -> Dict[Monomial, Scalar]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def coefficient(self, mono: Sequence[int]) -> Scalar:
        return self._terms.get(tuple(mono), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and (0,) * self.nvars in self._terms)

    def constant_value(self) -> Scalar:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get((0,) * self.nvars, 0)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    def is_homogeneous(self, d: int | None = None) -> bool:
        degs = {sum(m) for m in self._terms}
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return d is None or degs.pop() == d

    def sorted_terms(self) -> list[tuple[Monomial, Scalar]]:
        """Terms in graded-lex descending order."""
        return sorted(self._terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    def leading_term(self) -> tuple[Monomial, Scalar]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self._terms, key=grlex_key)
        return m, self._terms[m]

    def coefficient_vector(self, basis: Sequence[Monomial]) -> list[Scalar]:
        """Coordinates in a monomial basis; raises if f has terms outside it."""
        index = set(basis)
        extra = [m for m in self._terms if m not in index]
        if extra:
            raise ValueError(f"terms outside the basis: {extra[:3]}")
        return [self._terms.get(tuple(m), 0) for m in basis]

    # arithmetic

    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other.nvars != self.nvars:
                raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        return MPoly.constant(self.nvars, other)

    def __add__(self, other) -> "MPoly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if not other._terms:
            return self
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return MPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly._raw(self.nvars, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "MPoly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "MPoly":
        return (-self) + other

    def __mul__(self, other) -> "MPoly":
        if not isinstance(other, MPoly):
            try:
                c = to_rational(other)
            except TypeError:
                return NotImplemented
            if not c:
                return MPoly.zero(self.nvars)
            return MPoly._raw(self.nvars, {m: _norm(v * c) for m, v in self._terms.items()})
        other = self._coerce(other)
        out: Dict[Monomial, Scalar] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return MPoly._raw(self.nvars, {m: _norm(c) for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "MPoly":
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MPoly.constant(self.nvars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, c) -> "MPoly":
        return self * to_rational(c)

    def __truediv__(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            return self.divexact(other)
        c = to_rational(other)
        if not c:
            raise ZeroDivisionError("division by zero")
        return self * (Fraction(1) / c)

    def divexact(self, other: "MPoly") -> "MPoly":
        """Exact quotient self / other; raises ArithmeticError if not exact."""
        other = self._coerce(other)
        if not other._terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if len(other._terms) == 1:
            (lm, lc), = other._terms.items()
            out = {}
            for m, c in self._terms.items():
                q = tuple(a - b for a, b in zip(m, lm))
                if min(q, default=0) < 0:
                    raise ArithmeticError("inexact polynomial division")
                out[q] = _div(c, lc)
            return MPoly._raw(self.nvars, out)
        lm, lc = other.leading_term()
        rest = [(m, c) for m, c in other._terms.items() if m != lm]
        rem = dict(self._terms)
        quot: Dict[Monomial, Scalar] = {}
        while rem:
            m = max(rem, key=grlex_key)
            q = tuple(a - b for a, b in zip(m, lm))
            if min(q, default=0) < 0:
                raise ArithmeticError("inexact polynomial division")
            qc = _div(rem.pop(m), lc)
            quot[q] = qc
            for m2, c2 in rest:
                t = tuple(a + b for a, b in zip(q, m2))
                v = rem.get(t, 0) - qc * c2
                if v:
                    rem[t] = _norm(v)
                else:
                    rem.pop(t, None)
        return MPoly._raw(self.nvars, quot)

    def __eq__(self, other) -> bool:
        if isinstance(other, MPoly):
            return self.nvars == other.nvars and self._terms == other._terms
        try:
            c = to_rational(other)
        except TypeError:
            return NotImplemented
        return self.is_constant() and self.constant_value() == c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # calculus and evaluation

    def partial(self, index: int) -> "MPoly":
        """Formal partial derivative with respect to X_index."""
        if not 0 <= index < self.nvars:
            raise IndexError(f"variable {index} out of range")
        out = {}
        for m, c in self._terms.items():
            e = m[index]
            if e:
                m2 = m[:index] + (e - 1,) + m[index + 1:]
                out[m2] = c * e
        return MPoly._raw(self.nvars, out)

    def derivative(self, multi_index: Sequence[int]) -> "MPoly":
        """Mixed partial derivative d^beta f."""
        if len(multi_index) != self.nvars:
            raise ValueError("multi-index length mismatch")
        out = {}
        for m, c in self._terms.items():
            if any(e < b for e, b in zip(m, multi_index)):
                continue
            factor = 1
            for e, b in zip(m, multi_index):
                for j in range(b):
                    factor *= e - j
            out[tuple(e - b for e, b in zip(m, multi_index))] = c * factor
        return MPoly._raw(self.nvars, out)

    def evaluate(self, point: Sequence) -> Scalar:
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} entries, expected {self.nvars}")
        vals = [to_rational(v) for v in point]
        total: Scalar = 0
        for m, c in self._terms.items():
            t = c
            for v, e in zip(vals, m):
                if e:
                    t = t * v ** e
            total += t
        return _norm(total)

    def __call__(self, *point) -> Scalar:
        return self.evaluate(point)

    def substitute(self, images: Sequence["MPoly"]) -> "MPoly":
        """Composition f(images[0], images[1], ...)."""
        if len(images) != self.nvars:
            raise ValueError(f"{len(images)} images for {self.nvars} variables")
        if not images:
            return self
        n = images[0].nvars
        if any(g.nvars != n for g in images):
            raise ValueError("images must share a variable count")
        powers: list[dict[int, MPoly]] = [{0: MPoly.constant(n, 1), 1: g} for g in images]

        def power(i: int, e: int) -> MPoly:
            cache = powers[i]
            if e not in cache:
                cache[e] = power(i, e - 1) * images[i]
            return cache[e]

        acc: Dict[Monomial, Scalar] = {}
        for m, c in self._terms.items():
            t = MPoly.constant(n, c)
            for i, e in enumerate(m):
                if e:
                    t = t * power(i, e)
            for mm, cc in t._terms.items():
                acc[mm] = acc.get(mm, 0) + cc
        return MPoly._raw(n, {m: _norm(c) for m, c in acc.items() if c})

    def embed(self, nvars: int, offset: int = 0) -> "MPoly":
        """Same polynomial viewed in a larger ring, variables shifted by ``offset``."""
        if offset + self.nvars > nvars:
            raise ValueError("target ring too small")
        pre, post = (0,) * offset, (0,) * (nvars - offset - self.nvars)
        return MPoly._raw(nvars, {pre + m + post: c for m, c in self._terms.items()})

    def split(self, first: int) -> Dict[Monomial, "MPoly"]:
        """Collect by the first ``first`` variables.

        Returns a map from exponents in X0..X(first-1) to the coefficient
        polynomial in the remaining variables.
        """
        if not 0 <= first <= self.nvars:
            raise ValueError("bad split position")
        rest = self.nvars - first
        groups: Dict[Monomial, Dict[Monomial, Scalar]] = {}
        for m, c in self._terms.items():
            groups.setdefault(m[:first], {})[m[first:]] = c
        return {k: MPoly._raw(rest, v) for k, v in groups.items()}

    def primitive_integer(self) -> "MPoly":
        """Scale to coprime integer coefficients with positive leading coefficient."""
        if not self._terms:
            return self
        from math import gcd, lcm

        den = 1
        for c in self._terms.values():
            if isinstance(c, Fraction):
                den = lcm(den, c.denominator)
        ints = {m: int(c * den) for m, c in self._terms.items()}
        g = 0
        for v in ints.values():
            g = gcd(g, v)
        _, lc = self.leading_term()
        sign = 1 if lc > 0 else -1
        return MPoly._raw(self.nvars, {m: sign * v // g for m, v in ints.items()})

    # rendering

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"MPoly({self.nvars}, {render(self)!r})"


def _norm(c) -> Scalar:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _div(a: Scalar, b: Scalar) -> Scalar:
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if not r:
            return q
    return _norm(Fraction(a) / b)


def render(f: MPoly, names: Sequence[str] | None = None) -> str:
    """Canonical text form: graded-lex descending, coefficients ``p`` or ``p/q``."""
    if names is None:
        names = [f"X{i}" for i in range(f.nvars)]
    if f.is_zero():
        return "0"
    parts = []
    for k, (m, c) in enumerate(f.sorted_terms()):
        neg = c < 0
        a = -c if neg else c
        factors = [names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(m) if e]
        coeff = str(a)
        if not factors:
            body = coeff
        elif a == 1:
            body = "*".join(factors)
        else:
            body = coeff + "*" + "*".join(factors)
        if k == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


# free-function surface


def add(a: MPoly, b: MPoly) -> MPoly:
    return a + b


def mul(a: MPoly, b: MPoly) -> MPoly:
    return a * b


def partial_derivative(f: MPoly, var_index: int) -> MPoly:
    return f.partial(var_index)


def evaluate(f: MPoly, point: Sequence) -> Scalar:
    return f.evaluate(point)


def substitute(f: MPoly, images: Sequence[MPoly]) -> MPoly:
    return f.substitute(images)


def check_linear_form(l: MPoly) -> MPoly:
    """Validate a LinearForm: nonzero and homogeneous of degree 1."""
    if l.is_zero():
        raise ValueError("linear form is zero")
    if not l.is_homogeneous(1):
        raise ValueError("not a linear form")
    return l


def linear_coefficients(l: MPoly) -> list[Scalar]:
    check_linear_form(l)
    n = l.nvars
    return [l.coefficient(tuple(1 if j == i else 0 for j in range(n))) for i in range(n)]


def line_parametrization(coeffs: Sequence) -> list[list[Scalar]]:
    """Reduced-echelon kernel basis of the 1x3 row ``coeffs`` (two vectors).

    The first nonzero entry of the row is the pivot; each free column j gives
    the vector e_j - (c_j / c_pivot) e_pivot.
    """
    coeffs = [to_rational(c) for c in coeffs]
    piv = next((i for i, c in enumerate(coeffs) if c), None)
    if piv is None:
        raise ValueError("linear form is zero")
    basis = []
    for j in range(len(coeffs)):
        if j == piv:
            continue
        v = [0] * len(coeffs)
        v[j] = 1
        v[piv] = _norm(-Fraction(coeffs[j]) / coeffs[piv])
        basis.append(v)
    return basis


def restrict_mod_line(f: MPoly, l: MPoly) -> MPoly:
    """Pull f back along the parametrization (s, t) -> s*k1 + t*k2 of {l = 0}."""
    if f.nvars != 3 or l.nvars != 3:
        raise ValueError("restrict_mod_line works on ternary forms")
    if not f.is_homogeneous():
        raise ValueError("f must be homogeneous")
    k1, k2 = line_parametrization(linear_coefficients(l))
    s, t = MPoly.gens(2)
    images = [s * a + t * b for a, b in zip(k1, k2)]
    return f.substitute(images)


def random_linear_form(rng, nvars: int, bound: int = 9) -> MPoly:
    """Nonzero linear form with integer coefficients in [-bound, bound]."""
    while True:
        coeffs = [rng.randint(-bound, bound) for _ in range(nvars)]
        if any(coeffs):
            return MPoly.linear(coeffs)


def product(polys: Iterable[MPoly], nvars: int) -> MPoly:
    out = MPoly.constant(nvars, 1)
    for p in polys:
        out = out * p
    return out
