"""Splitting type on lines of the syzygy bundle of a system of four plane cubics.

For cubics f0..f3 without common zero, E is the kernel of O^4 -> O(3),
(v_i) -> sum v_i f_i.  Restricted to a line l it splits as O(a1)+O(a2)+O(a3)
with a_i <= 0 and a1+a2+a3 = -3.  The degrees are read off from
h(k) = dim ker((S_k)^4 -> S_{k+3}), the space of degree-k syzygies of the
restricted binary cubics, since h(k) = sum_i max(0, a_i + k + 1).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .linalg import ExactMatrix, rank_exact
from .polarity import CubicSystem
from .ratpoly import MPoly, check_linear_form, monomials_of_degree, restrict_mod_line

LINE_BOUND = 99
MAX_LINE_ATTEMPTS = 20


class DegenerateRestriction(ValueError):
    """The system restricted to the line does not define a rank-3 kernel of degree -3."""


@dataclass(frozen=True)
class SplittingType:
    degrees: tuple  # sorted descending
    h: tuple  # (h(0), h(1), h(2))
    line: tuple

    def __post_init__(self):
        if len(self.degrees) != 3 or list(self.degrees) != sorted(self.degrees, reverse=True):
            raise ValueError("degrees must be three integers sorted descending")
        if sum(self.degrees) != -3:
            raise ValueError("splitting degrees must sum to -3")

    def to_dict(self) -> dict:
        return {"degrees": list(self.degrees), "h": list(self.h), "line": list(self.line)}


def syzygy_dimension(restricted: Sequence[MPoly], k: int) -> int:
    """dim of {(v_i) in (S_k)^4 : sum v_i g_i = 0} for binary forms g_i of degree 3."""
    source = monomials_of_degree(2, k)
    target = monomials_of_degree(2, k + 3)
    index = {m: i for i, m in enumerate(target)}
    cols = []
    for g in restricted:
        for m in source:
            vec = [0] * len(target)
            for mm, c in g.items():
                vec[index[(m[0] + mm[0], m[1] + mm[1])]] = c
            cols.append(vec)
    rank = rank_exact(ExactMatrix(cols, len(target)))
    return len(cols) - rank


def degrees_from_h(h: Sequence[int]) -> tuple:
    """Invert h(k) = sum max(0, a_i + k + 1) for a_i in [-3, 0], k = 0, 1, 2."""
    h0, h1, h2 = h
    c0 = h0
    c1 = h1 - 2 * c0
    c2 = h2 - 3 * c0 - 2 * c1
    c3 = 3 - c0 - c1 - c2
    counts = (c0, c1, c2, c3)
    if any(c < 0 for c in counts):
        raise DegenerateRestriction(f"h-sequence {tuple(h)} is not that of a rank-3 bundle with degrees in [-3, 0]")
    degrees = tuple(-j for j, c in enumerate(counts) for _ in range(c))
    if sum(degrees) != -3:
        raise DegenerateRestriction(f"degrees {degrees} sum to {sum(degrees)}, not -3: "
                                    "the line meets the base locus")
    return degrees


def splitting_type(S: CubicSystem, l: MPoly) -> SplittingType:
    """Splitting type of the syzygy bundle of S on the line {l = 0}."""
    check_linear_form(l)
    if l.nvars != 3:
        raise ValueError("line must be a ternary linear form")
    restricted = [restrict_mod_line(f, l) for f in S.generators]
    if all(g.is_zero() for g in restricted):
        raise DegenerateRestriction("every generator vanishes on the line")
    h = tuple(syzygy_dimension(restricted, k) for k in range(3))
    coeffs = tuple(l.coefficient(tuple(1 if j == i else 0 for j in range(3))) for i in range(3))
    return SplittingType(degrees_from_h(h), h, coeffs)


def random_line(rng: random.Random, bound: int = LINE_BOUND) -> MPoly:
    """Primitive integer linear form with coefficients in [-bound, bound]."""
    while True:
        c = [rng.randint(-bound, bound) for _ in range(3)]
        g = gcd(gcd(c[0], c[1]), c[2])
        if g:
            return MPoly.linear([x // g for x in c])


@dataclass(frozen=True)
class GenericSplitting:
    splitting: SplittingType
    observations: tuple
    agree: bool
    confirmed: bool
    degenerate_lines: int

    @property
    def degrees(self) -> tuple:
        return self.splitting.degrees

    def to_dict(self) -> dict:
        return {
            "degrees": list(self.degrees),
            "observations": [list(o.degrees) for o in self.observations],
            "lines": [list(o.line) for o in self.observations],
            "agree": self.agree,
            "confirmed": self.confirmed,
            "degenerate_lines": self.degenerate_lines,
        }


def generic_splitting(S: CubicSystem, seeds: int = 3, seed: int = 0) -> GenericSplitting:
    """Splitting type on ``seeds`` random lines; the most balanced one is the generic type.

    A single observation is reported as unconfirmed; disagreement between
    lines (a jumping line was hit) is flagged.
    """
    if seeds < 1:
        raise ValueError("seeds must be >= 1")
    rng = random.Random(seed)
    obs, degenerate = [], 0
    while len(obs) < seeds:
        try:
            obs.append(splitting_type(S, random_line(rng)))
        except DegenerateRestriction:
            degenerate += 1
            if degenerate > MAX_LINE_ATTEMPTS:
                raise
    best = min(obs, key=lambda o: o.degrees)
    agree = len({o.degrees for o in obs}) == 1
    return GenericSplitting(best, tuple(obs), agree, seeds > 1, degenerate)
