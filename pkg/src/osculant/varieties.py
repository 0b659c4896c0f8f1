"""Parametrized projective varieties: Veronese, Segre, rational normal curves,
linear projections and hyperplane sections of Segre products of lines.

Points of the Veronese are coordinate evaluations: ``veronese(m, d)`` sends
``p`` to ``(p^alpha)_alpha``.  The form ``l^d`` of a linear form ``l = sum p_i X_i``
has coefficient vector ``multinomial(alpha) * p^alpha``; :func:`power_point`
returns that vector and :func:`veronese_point` the evaluation one.  They differ
by the diagonal map :func:`apolar_weights`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct
from math import factorial, prod
from typing import Optional, Sequence

from .linalg import ExactMatrix, KernelBasis, kernel_basis, normalize_primitive, rank_exact
from .ratpoly import MPoly, Scalar, _norm, check_linear_form, linear_coefficients, monomials_of_degree


class ProjPoint:
    """A point of projective space, stored as a primitive integer vector."""

    __slots__ = ("coords",)

    def __init__(self, coords: Sequence):
        self.coords = normalize_primitive(coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __eq__(self, other) -> bool:
        if isinstance(other, ProjPoint):
            return self.coords == other.coords
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coords)

    def __repr__(self) -> str:
        return f"ProjPoint({list(self.coords)})"

    def as_list(self) -> list[int]:
        return list(self.coords)


@dataclass(frozen=True)
class ParamVariety:
    """A rational parametrization by homogeneous forms of one common degree.

    ``factors`` lists the source variable blocks: one block of m+1 variables
    for ``projective(m)``, n blocks of 2 for a product of n projective lines.
    """

    name: str
    coordinates: tuple
    source: str  # "projective" | "multiprojective"
    factors: tuple
    # section bookkeeping: ambient points are sum y_j * basis[j]
    hyperplane_basis: Optional[KernelBasis] = field(default=None, compare=False)
    pre_section_coordinates: Optional[tuple] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not self.coordinates:
            raise ValueError("a variety needs at least one coordinate")
        nv = self.coordinates[0].nvars
        if any(c.nvars != nv for c in self.coordinates):
            raise ValueError("coordinates must share a ring")
        degs = {c.degree() for c in self.coordinates if not c.is_zero()}
        if len(degs) != 1 or not all(c.is_homogeneous() for c in self.coordinates):
            raise ValueError("coordinates must be homogeneous of one common degree")
        if sorted(i for b in self.factors for i in b) != list(range(nv)):
            raise ValueError("factor blocks must partition the source variables")

    @property
    def nvars(self) -> int:
        return self.coordinates[0].nvars

    @property
    def degree(self) -> int:
        return next(c.degree() for c in self.coordinates if not c.is_zero())

    @property
    def ambient_dim(self) -> int:
        return len(self.coordinates) - 1

    @property
    def parameter_count(self) -> int:
        """Dimension of the source (affine parameter count)."""
        return sum(len(b) - 1 for b in self.factors)

    @property
    def source_shape(self) -> str:
        if self.source == "projective":
            return f"projective({self.nvars - 1})"
        return "multiprojective(" + ",".join("1" for _ in self.factors) + ")"

    def factor_degrees(self) -> tuple[int, ...]:
        """Degree of the coordinates in each source block (common to all)."""
        out = []
        for block in self.factors:
            degs = set()
            for c in self.coordinates:
                for m, _ in c.items():
                    degs.add(sum(m[i] for i in block))
            if len(degs) != 1:
                raise ValueError("coordinates are not multihomogeneous")
            out.append(degs.pop())
        return tuple(out)

    def evaluate(self, point: Sequence) -> list[Scalar]:
        return [c.evaluate(point) for c in self.coordinates]

    def image(self, point: Sequence) -> ProjPoint:
        return ProjPoint(self.evaluate(point))

    def lift(self, point: Sequence) -> list[Scalar]:
        """Map a point in section coordinates back to the Segre ambient space."""
        if self.hyperplane_basis is None:
            return list(point)
        n = self.hyperplane_basis.dim_ambient
        out = [0] * n
        for y, v in zip(point, self.hyperplane_basis.vectors):
            for i, x in enumerate(v):
                out[i] += Fraction(y) * x
        return [_norm(x) for x in out]


def veronese(m: int, d: int) -> ParamVariety:
    if m < 1 or d < 1:
        raise ValueError("veronese needs m >= 1 and d >= 1")
    coords = tuple(MPoly.monomial(e) for e in monomials_of_degree(m + 1, d))
    return ParamVariety(f"veronese({m},{d})", coords, "projective", (tuple(range(m + 1)),))


def rnc(d: int) -> ParamVariety:
    V = veronese(1, d)
    return ParamVariety(f"rnc({d})", V.coordinates, "projective", V.factors)


def segre(n: int) -> ParamVariety:
    """Seg(1,n): coordinates X_{1,i1}...X_{n,in} in binary-counter order, i1 most significant."""
    if n < 1:
        raise ValueError("segre needs n >= 1")
    nv = 2 * n
    coords = []
    for idx in iproduct((0, 1), repeat=n):
        e = [0] * nv
        for k, i in enumerate(idx):
            e[2 * k + i] = 1
        coords.append(MPoly.monomial(e))
    blocks = tuple((2 * k, 2 * k + 1) for k in range(n))
    return ParamVariety(f"segre({n})", tuple(coords), "multiprojective", blocks)


TOGLIATTI_MONOMIALS = ((1, 1, 1), (2, 1, 0), (2, 0, 1), (0, 2, 1), (0, 1, 2), (1, 2, 0), (1, 0, 2))


def togliatti() -> ParamVariety:
    """The seven cubics x0x1x2, x0^2x1, x0^2x2, x1^2x2, x1x2^2, x0x1^2, x0x2^2."""
    coords = tuple(MPoly.monomial(e) for e in TOGLIATTI_MONOMIALS)
    return ParamVariety("togliatti", coords, "projective", ((0, 1, 2),))


def multinomial(exps: Sequence[int]) -> int:
    return factorial(sum(exps)) // prod(factorial(e) for e in exps)


def apolar_weights(m: int, d: int) -> list[int]:
    """Multinomial coefficients of the degree-d monomials (graded-lex order)."""
    return [multinomial(e) for e in monomials_of_degree(m + 1, d)]


def power_point(l: MPoly, d: int) -> ProjPoint:
    """Normalized coefficient vector of l^d in the graded-lex monomial basis."""
    check_linear_form(l)
    return ProjPoint((l ** d).coefficient_vector(monomials_of_degree(l.nvars, d)))


def veronese_point(l: MPoly, d: int) -> ProjPoint:
    """The point of veronese(m, d) over the coefficient vector of l."""
    p = linear_coefficients(l)
    return ProjPoint([prod(Fraction(x) ** e for x, e in zip(p, mono)) for mono in monomials_of_degree(l.nvars, d)])


def form_to_veronese_coordinates(f: MPoly) -> list[Scalar]:
    """Coefficient vector of a form divided by the multinomial weights.

    This is the linear identification of forms of degree d with the ambient
    space of veronese(m, d) sending l^d to the Veronese point over l.
    """
    basis = monomials_of_degree(f.nvars, f.degree())
    return [_norm(Fraction(c) / multinomial(m)) for c, m in zip(f.coefficient_vector(basis), basis)]


def projection_functionals(center: Sequence[Sequence], ambient: int) -> KernelBasis:
    """Reduced-echelon basis of the functionals vanishing on the center."""
    if not center:
        return KernelBasis(tuple(tuple(1 if i == j else 0 for j in range(ambient)) for i in range(ambient)), ambient)
    return kernel_basis(ExactMatrix([list(p) for p in center], ambient))


def apply_functionals(functionals: KernelBasis, vector: Sequence) -> list[Scalar]:
    return [_norm(sum(Fraction(a) * b for a, b in zip(f, vector))) for f in functionals]


def linear_projection(V: ParamVariety, center: Sequence, name: str | None = None) -> ParamVariety:
    """Project V from the linear span of the center points."""
    N = len(V.coordinates)
    pts = [list(p) for p in center]
    if any(len(p) != N for p in pts):
        raise ValueError("center points must live in the ambient space of V")
    if pts and rank_exact(ExactMatrix(pts, N)) != len(pts):
        raise ValueError("center points are linearly dependent")
    if len(pts) >= N:
        raise ValueError("center too large for the ambient space")
    funcs = projection_functionals(pts, N)
    coords = []
    for f in funcs:
        acc = MPoly.zero(V.nvars)
        for a, c in zip(f, V.coordinates):
            if a:
                acc = acc + c * a
        coords.append(acc)
    if all(c.is_zero() for c in coords):
        raise ValueError("projection kills every coordinate")
    label = name or f"proj[{V.name};{len(pts)}]"
    return ParamVariety(label, tuple(coords), V.source, V.factors)


def is_segre(S: ParamVariety) -> bool:
    return S.source == "multiprojective" and S.hyperplane_basis is None and all(
        len(b) == 2 for b in S.factors) and len(S.coordinates) == 2 ** len(S.factors)


def section_first_factor(n: int, a: Sequence) -> tuple[tuple[MPoly, MPoly], tuple]:
    """Solve sum a_I x_I = 0 for the first factor of Seg(1,n).

    Returns ((-B, A), rest) where ``rest`` are the Seg(1,n-1) coordinates of
    the remaining factors and A, B the coefficients of X_{1,0}, X_{1,1}.
    """
    if len(a) != 2 ** n:
        raise ValueError(f"hyperplane vector must have length {2 ** n}")
    a = [Fraction(x) for x in a]
    if not any(a):
        raise ValueError("hyperplane vector is zero")
    nv = 2 * (n - 1)
    half = 2 ** (n - 1)
    rest = segre(n - 1).coordinates
    A = sum((r * c for r, c in zip(rest, a[:half]) if c), MPoly.zero(nv))
    B = sum((r * c for r, c in zip(rest, a[half:]) if c), MPoly.zero(nv))
    if A.is_zero() and B.is_zero():
        raise ValueError("hyperplane does not involve the first factor")
    return (-B, A), rest


def hyperplane_section_param(S: ParamVariety, a: Sequence, name: str | None = None) -> ParamVariety:
    """Chart parametrization of Seg(1,n) cut by the hyperplane sum a_I x_I = 0.

    Writing the equation as A*X_{1,0} + B*X_{1,1} with A, B multilinear in the
    other factors, the first factor is solved as (-B, A).  The result lives in
    the hyperplane, with coordinates read at the pivots of its echelon basis.
    """
    if not is_segre(S):
        raise ValueError("hyperplane sections are defined on segre(n)")
    n = len(S.factors)
    if n < 2:
        raise ValueError("hyperplane sections need n >= 2")
    if len(a) != 2 ** n:
        raise ValueError(f"hyperplane vector must have length {2 ** n}")
    first, rest = section_first_factor(n, a)
    pre = tuple(first[i] * r for i in (0, 1) for r in rest)
    basis = kernel_basis(ExactMatrix([a], 2 ** n))
    coords = tuple(pre[p] for p in basis.pivots)
    blocks = tuple((2 * k, 2 * k + 1) for k in range(n - 1))
    return ParamVariety(name or f"section[segre({n})]", coords, "multiprojective", blocks,
                        hyperplane_basis=basis, pre_section_coordinates=pre)


def restrict_to_hyperplane(basis: KernelBasis, vector: Sequence) -> list[Scalar]:
    """Coordinates of an ambient point lying on the hyperplane, in section coordinates."""
    return [vector[p] for p in basis.pivots]


def random_independent_forms(rng: random.Random, count: int, d: int, nvars: int = 3,
                             bound: int = 9, attempts: int = 10) -> list[MPoly]:
    """``count`` random integer linear forms whose d-th powers are independent."""
    from .ratpoly import random_linear_form

    for _ in range(attempts):
        forms = [random_linear_form(rng, nvars, bound) for _ in range(count)]
        pts = [list(power_point(l, d)) for l in forms]
        if rank_exact(ExactMatrix(pts, len(pts[0]))) == count:
            return forms
    raise RuntimeError("could not draw forms in general position")
