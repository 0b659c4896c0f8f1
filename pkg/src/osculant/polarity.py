"""Polarity engines: powers of binary forms on rational normal curves, the
Kronecker-power pairing on tensor space, and the line-divisibility test for
nets of plane cubics.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from typing import Optional, Sequence

from .linalg import ExactMatrix, determinant, in_span, kron, normalize_primitive, rank_exact
from .ratpoly import (MPoly, Scalar, _norm, check_linear_form, linear_coefficients, monomials_of_degree,
                      product, restrict_mod_line)
from .varieties import ProjPoint, hyperplane_section_param, restrict_to_hyperplane, section_first_factor, segre

SYMPLECTIC = ((0, -1), (1, 0))

PARITY_MESSAGE = ("even N: the pairing <x, m^(xN) x> is symmetric, so the candidate lies on the hyperplane "
                  "only for x on a quadric; there is no common point for a general hyperplane section")


# rational normal curves

def _binary_basis(d: int):
    return monomials_of_degree(2, d)


def _proportional(a: MPoly, b: MPoly) -> bool:
    (a0, a1), (b0, b1) = linear_coefficients(a), linear_coefficients(b)
    return a0 * b1 - a1 * b0 == 0


def rnc_polarity_check(d: int, forms: Sequence[MPoly]) -> Optional[list[Scalar]]:
    """Coefficients c with prod(forms) = sum c_i forms[i]^d, or None.

    For odd d and pairwise non-proportional forms the product always lies in
    the span of the d-th powers; for even d it generically does not.
    """
    if len(forms) != d:
        raise ValueError(f"need exactly {d} binary forms")
    for l in forms:
        if l.nvars != 2:
            raise ValueError("forms must be binary")
        check_linear_form(l)
    for i in range(d):
        for j in range(i + 1, d):
            if _proportional(forms[i], forms[j]):
                raise ValueError(f"forms {i} and {j} are proportional")
    basis = _binary_basis(d)
    powers = [(l ** d).coefficient_vector(basis) for l in forms]
    target = product(forms, 2).coefficient_vector(basis)
    return in_span(powers, target)


# the m tensor

@dataclass(frozen=True)
class MTensor:
    n: int
    matrix: ExactMatrix

    @property
    def size(self) -> int:
        return 2 ** self.n

    def apply(self, x: Sequence) -> list:
        return self.matrix.apply(list(x))


def build_m_tensor(n: int) -> MTensor:
    """Kronecker power of [[0, -1], [1, 0]] (n factors)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    m = ExactMatrix(SYMPLECTIC)
    M = m
    for _ in range(n - 1):
        M = kron(M, m)
    return MTensor(n, M)


def segre_pairing(n: int, x: Sequence):
    """The bilinear value <x, m^(xn) x>; x may hold MPoly entries."""
    if len(x) != 2 ** n:
        raise ValueError(f"vector must have length {2 ** n}")
    mx = build_m_tensor(n).apply(x)
    acc = 0
    for a, b in zip(x, mx):
        if isinstance(a, MPoly) or isinstance(b, MPoly):
            acc = a * b + acc
        elif a and b:
            acc += a * b
    return acc if isinstance(acc, MPoly) else _norm(acc)


def segre_point(factor_points: Sequence[Sequence]) -> list:
    """Segre image of factor points (binary-counter order)."""
    out = []
    for idx in iproduct((0, 1), repeat=len(factor_points)):
        v = 1
        for p, i in zip(factor_points, idx):
            v = p[i] * v
        out.append(v if isinstance(v, MPoly) else _norm(v))
    return out


def segre_osc_form(n: int, factor_points: Sequence[Sequence]) -> list:
    """Coefficient tensor of prod_i (x_{i,1} X_{i,0} - x_{i,0} X_{i,1}).

    The product is expanded as a polynomial in the 2n variables X_{i,j};
    factor coordinates may themselves be polynomials.
    """
    if len(factor_points) != n:
        raise ValueError(f"need {n} factor points")
    polys = [e for p in factor_points for e in p if isinstance(e, MPoly)]
    R = polys[0].nvars if polys else 0
    total = 2 * n + R

    def lift(e) -> MPoly:
        if isinstance(e, MPoly):
            return e.embed(total, 2 * n)
        return MPoly.constant(total, e)

    X = MPoly.gens(total)[:2 * n]
    f = MPoly.constant(total, 1)
    for i, p in enumerate(factor_points):
        if len(p) != 2:
            raise ValueError("factor points live in P^1")
        if all(e.is_zero() if isinstance(e, MPoly) else not e for e in p):
            raise ValueError(f"factor point {i} is zero")
        f = f * (lift(p[1]) * X[2 * i] - lift(p[0]) * X[2 * i + 1])
    coeffs = f.split(2 * n)
    out = []
    for idx in iproduct((0, 1), repeat=n):
        e = [0] * (2 * n)
        for k, i in enumerate(idx):
            e[2 * k + i] = 1
        c = coeffs.get(tuple(e), MPoly.zero(R))
        out.append(c if polys else c.constant_value())
    return out


@dataclass(frozen=True)
class SectionCertificate:
    """Evidence that c = m^(xN) a is common to the osculating hyperplanes of Seg ∩ {a = 0}."""

    N: int
    hyperplane: tuple
    candidate: tuple
    candidate_in_section: tuple
    on_hyperplane: bool
    pairing_identity: bool
    osc_form_is_m_image: bool
    chart_parameters: int

    @property
    def verified(self) -> bool:
        return self.on_hyperplane and self.pairing_identity and self.osc_form_is_m_image

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "hyperplane": list(self.hyperplane),
            "candidate": list(self.candidate),
            "candidate_in_section": list(self.candidate_in_section),
            "on_hyperplane": self.on_hyperplane,
            "pairing_identity": self.pairing_identity,
            "osc_form_is_m_image": self.osc_form_is_m_image,
            "chart_parameters": self.chart_parameters,
            "verified": self.verified,
        }


def _proportional_vectors(u: Sequence, v: Sequence) -> bool:
    # u, v polynomial vectors: all 2x2 minors vanish identically
    piv = next((i for i, x in enumerate(u) if not x.is_zero()), None)
    if piv is None:
        return all(x.is_zero() for x in v)
    return all((u[piv] * v[j] - u[j] * v[piv]).is_zero() for j in range(len(u)))


def segre_section_common_point(N: int, a: Sequence) -> tuple[ProjPoint, SectionCertificate]:
    """Candidate common point of the (N-1)-osculating hyperplanes of a Segre section.

    Checks, as exact identities, that c = m^(xN) a lies on the hyperplane and
    pairs to zero with the osculating form at every point of the chart
    parametrization of the section.
    """
    if N < 3 or N % 2 == 0:
        raise ValueError(f"N must be odd and >= 3 ({PARITY_MESSAGE})" if N % 2 == 0 else "N must be >= 3")
    a = [Fraction(x) for x in a]
    section = hyperplane_section_param(segre(N), a)
    c = ProjPoint(build_m_tensor(N).apply(a))
    on_h = sum(x * y for x, y in zip(a, c)) == 0
    first, _ = section_first_factor(N, a)
    R = 2 * (N - 1)
    t = MPoly.gens(R)
    factors = [first] + [(t[2 * i], t[2 * i + 1]) for i in range(N - 1)]
    form = segre_osc_form(N, factors)
    pairing = sum((f * x for f, x in zip(form, c) if x), MPoly.zero(R))
    x_t = segre_point(factors)
    mx = build_m_tensor(N).apply(x_t)
    matches = _proportional_vectors(form, mx)
    cert = SectionCertificate(N, tuple(normalize_primitive(a)), tuple(c),
                              tuple(normalize_primitive(restrict_to_hyperplane(section.hyperplane_basis, list(c)))),
                              on_h, pairing.is_zero(), matches, R)
    return c, cert


def admissible_hyperplane(N: int, rng: random.Random, bound: int = 9, attempts: int = 10) -> list[int]:
    """Random integer hyperplane tensor whose section chart is defined."""
    for _ in range(attempts):
        a = [rng.randint(-bound, bound) for _ in range(2 ** N)]
        try:
            first, _ = section_first_factor(N, a)
        except ValueError:
            continue
        if not first[0].is_zero() and not first[1].is_zero():
            return a
    raise RuntimeError("no admissible hyperplane found")


# nets of cubics and the line-divisibility test

@dataclass(frozen=True)
class CubicSystem:
    generators: tuple

    def __post_init__(self):
        if len(self.generators) != 4:
            raise ValueError("a cubic system has four generators")
        for f in self.generators:
            if f.nvars != 3 or not f.is_homogeneous(3) or f.is_zero():
                raise ValueError("generators must be nonzero ternary cubics")
        basis = monomials_of_degree(3, 3)
        vecs = [f.coefficient_vector(basis) for f in self.generators]
        if rank_exact(ExactMatrix(vecs, len(basis))) != 4:
            raise ValueError("generators are linearly dependent")

    def __iter__(self):
        return iter(self.generators)


def random_cubic_system(rng: random.Random, bound: int = 9, attempts: int = 10) -> CubicSystem:
    """Four ternary cubics with random integer coefficients in [-bound, bound]."""
    basis = monomials_of_degree(3, 3)
    for _ in range(attempts):
        gens = tuple(MPoly.from_coefficients(3, basis, [rng.randint(-bound, bound) for _ in basis])
                     for _ in range(4))
        try:
            return CubicSystem(gens)
        except ValueError:
            continue
    raise RuntimeError("could not draw an independent cubic system")


def togliatti_system(l0: MPoly, l1: MPoly, l2: MPoly) -> CubicSystem:
    """The system (l0^3, l1^3, l2^3, l0*l1*l2)."""
    forms = [check_linear_form(l) for l in (l0, l1, l2)]
    if any(l.nvars != 3 for l in forms):
        raise ValueError("forms must be ternary")
    if rank_exact(ExactMatrix([linear_coefficients(l) for l in forms])) != 3:
        raise ValueError("linear forms are dependent")
    return CubicSystem((l0 ** 3, l1 ** 3, l2 ** 3, l0 * l1 * l2))


def line_chart_images(chart: int) -> list[MPoly]:
    """Parametrize the line with coefficient 1 at ``chart`` and symbols u, v elsewhere.

    Ring variables are (s, t, u, v); the point s*k1 + t*k2 runs over the line
    where k1, k2 are the kernel vectors e_j - coeff_j e_chart.
    """
    s, t, u, v = MPoly.gens(4)
    free = [j for j in range(3) if j != chart]
    sym = dict(zip(free, (u, v)))
    images = [MPoly.zero(4)] * 3
    images[free[0]] = s
    images[free[1]] = t
    images[chart] = -(sym[free[0]] * s) - sym[free[1]] * t
    return images


def restricted_matrix(forms: Sequence[MPoly], chart: int) -> ExactMatrix:
    """Columns = coefficient vectors of forms restricted to the symbolic line (entries in u, v)."""
    d = forms[0].degree()
    images = line_chart_images(chart)
    basis = _binary_basis(d)
    cols = []
    for f in forms:
        parts = f.substitute(images).split(2)
        cols.append([parts.get(m, MPoly.zero(2)) for m in basis])
    return ExactMatrix([list(r) for r in zip(*cols)], len(forms))


def line_dependence_determinants(forms: Sequence[MPoly]) -> list[MPoly]:
    """Determinant of the restricted-coefficient matrix on each of the 3 line charts."""
    d = forms[0].degree()
    if len(forms) != d + 1:
        raise ValueError("need d + 1 forms of degree d for a square restriction matrix")
    return [determinant(restricted_matrix(forms, chart)) for chart in range(3)]


@dataclass(frozen=True)
class LineTest:
    verdict: str  # "holds-everywhere" | "fails"
    witness: Optional[tuple]
    determinants: tuple

    @property
    def holds(self) -> bool:
        return self.verdict == "holds-everywhere"


def _find_nonroot(D: MPoly, bound: int = 6) -> tuple[int, int]:
    for r in range(bound + 1):
        for u in range(-r, r + 1):
            for v in range(-r, r + 1):
                if max(abs(u), abs(v)) == r and D.evaluate((u, v)):
                    return u, v
    raise RuntimeError("no small non-root found")


def laplace_line_test(S: CubicSystem) -> LineTest:
    """Does every line l divide some member of the system?

    Holds iff the 4x4 determinant of the generators restricted to a symbolic
    line vanishes identically on all three charts of the space of lines.
    Otherwise a rational witness line is returned on which no member of the
    system is divisible by l.
    """
    dets = line_dependence_determinants(list(S.generators))
    if all(D.is_zero() for D in dets):
        return LineTest("holds-everywhere", None, tuple(dets))
    chart = next(i for i, D in enumerate(dets) if not D.is_zero())
    u, v = _find_nonroot(dets[chart])
    coeffs = [0, 0, 0]
    coeffs[chart] = 1
    free = [j for j in range(3) if j != chart]
    coeffs[free[0]], coeffs[free[1]] = u, v
    l = MPoly.linear(coeffs)
    basis = _binary_basis(3)
    vecs = [restrict_mod_line(f, l).coefficient_vector(basis) for f in S.generators]
    assert rank_exact(ExactMatrix(vecs, 4)) == 4
    return LineTest("fails", tuple(coeffs), tuple(dets))


def has_base_point(forms: Sequence[MPoly]) -> bool:
    """Common zero over the algebraic closure, decided by a Macaulay matrix.

    Four ternary cubics without common zero contain a complete intersection
    of three cubics, whose ideal contains every form of degree 7.  With a
    common zero no form nonvanishing there is reached.  So the forms are
    base-point-free iff multiplication (S_4)^4 -> S_7 is onto.
    """
    if any(f.nvars != 3 or not f.is_homogeneous(3) for f in forms):
        raise ValueError("ternary cubics required")
    target = monomials_of_degree(3, 7)
    index = {m: i for i, m in enumerate(target)}
    cols = []
    for f in forms:
        for m in monomials_of_degree(3, 4):
            vec = [0] * len(target)
            for mm, c in f.items():
                vec[index[tuple(a + b for a, b in zip(m, mm))]] = c
            cols.append(vec)
    return rank_exact(ExactMatrix(cols, len(target))) < len(target)


def coordinate_base_point(forms: Sequence[MPoly]) -> Optional[tuple]:
    """A common zero among points with 0/1 coordinates, if any."""
    for pt in iproduct((0, 1), repeat=3):
        if any(pt) and all(f.evaluate(pt) == 0 for f in forms):
            return pt
    return None


def rnc_bridge_determinants(forms: Sequence[MPoly]) -> list[MPoly]:
    """Line-restriction determinants of {l_i^d} together with prod(l_i), d = len(forms)."""
    d = len(forms)
    return line_dependence_determinants([l ** d for l in forms] + [product(forms, forms[0].nvars)])
