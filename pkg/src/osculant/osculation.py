"""Higher osculating spaces, Laplace defects and common points of osculating hyperplanes.

The k-th osculating space at a source point is the span of the image point
and all partial derivatives of order <= k of the homogeneous
parametrization.  Differentiating in the homogeneous variables is enough: the
Euler relation puts every lower-order column in the span of the order-k
columns whenever the coordinate degree is at least k, so symbolic
certification only needs the top-order layer.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .linalg import (DEFAULT_TRIALS, SAMPLE_BOUND, ExactMatrix, GenericRank, KernelBasis, echelon_basis,
                     generic_rank, kernel_basis, left_kernel, rank_exact, rref)
from .ratpoly import MPoly, monomials_of_degree, monomials_up_to_degree, to_rational
from .varieties import ParamVariety, ProjPoint

log = logging.getLogger(__name__)

MAX_RESAMPLES = 10


class DegenerateSampling(RuntimeError):
    """Every sampled parameter point was osculating-singular."""


class UnderdeterminedCommonSpace(ValueError):
    """The osculating hyperplanes share more than a point."""

    def __init__(self, basis: KernelBasis):
        super().__init__(f"common space has dimension {len(basis) - 1} (projective); "
                         "underdetermined - increase samples or inspect the basis")
        self.basis = basis


@dataclass(frozen=True)
class PartialsMatrix:
    """Rows are ambient coordinates, columns are derivatives d^beta."""

    matrix: ExactMatrix
    multi_indices: tuple

    @property
    def rank(self) -> int:
        return rank_exact(self.matrix)


@dataclass(frozen=True)
class OscCertificate:
    variety: str
    k: int
    generic_dim: int
    expected_dim: int
    candidate: Optional[tuple]
    mode: str  # "sampled" | "certified"
    verdict: str  # "common-point-verified" | "no-common-point" | "laplace-degenerate"

    @property
    def defect(self) -> int:
        return self.expected_dim - self.generic_dim

    def to_dict(self) -> dict:
        return {
            "variety": self.variety,
            "k": self.k,
            "generic_dim": self.generic_dim,
            "expected_dim": self.expected_dim,
            "defect": self.defect,
            "candidate": list(self.candidate) if self.candidate is not None else None,
            "mode": self.mode,
            "verdict": self.verdict,
        }


@lru_cache(maxsize=64)
def _derivatives(V: ParamVariety, k: int) -> dict:
    # d^beta of every coordinate, for all |beta| <= k, built up one variable at a time
    out = {(0,) * V.nvars: V.coordinates}
    for beta in monomials_up_to_degree(V.nvars, k)[1:]:
        i = next(j for j, e in enumerate(beta) if e)
        parent = beta[:i] + (beta[i] - 1,) + beta[i + 1:]
        out[beta] = tuple(c.partial(i) for c in out[parent])
    return out


def _check_point(V: ParamVariety, point: Sequence) -> list:
    if len(point) != V.nvars:
        raise ValueError(f"parameter point needs {V.nvars} entries")
    pt = [to_rational(x) for x in point]
    for block in V.factors:
        if not any(pt[i] for i in block):
            raise ValueError("parameter point vanishes on a source factor")
    return pt


def partials_matrix(V: ParamVariety, k: int, point: Sequence | None = None,
                    top_order_only: bool = False) -> PartialsMatrix:
    """Matrix of all partials of order 0..k (graded-lex multi-indices).

    With ``point=None`` the entries stay polynomials in the source variables.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    derivs = _derivatives(V, k)
    if top_order_only:
        betas = monomials_of_degree(V.nvars, k)
    else:
        betas = monomials_up_to_degree(V.nvars, k)
    cols = [derivs[b] for b in betas]
    if point is not None:
        pt = _check_point(V, point)
        cols = [[f.evaluate(pt) for f in col] for col in cols]
    rows = [list(r) for r in zip(*cols)]
    return PartialsMatrix(ExactMatrix(rows, len(cols)), tuple(betas))


@lru_cache(maxsize=64)
def _spanning_columns(V: ParamVariety, k: int) -> tuple:
    # distinct nonzero symbolic columns spanning T^k: top order suffices when
    # the coordinate degree is >= k (Euler holds pointwise as well)
    derivs = _derivatives(V, k)
    betas = monomials_of_degree(V.nvars, k) if V.degree >= k else monomials_up_to_degree(V.nvars, k)
    seen, keep = set(), []
    for b in betas:
        col = derivs[b]
        if all(x.is_zero() for x in col) or col in seen:
            continue
        seen.add(col)
        keep.append(col)
    return tuple(keep)


def _certification_matrix(V: ParamVariety, k: int) -> ExactMatrix:
    """Symbolic partials spanning the generic osculating space, deduplicated."""
    cols = _spanning_columns(V, k)
    return ExactMatrix([list(r) for r in zip(*cols)], len(cols))


def _point_columns_transposed(V: ParamVariety, k: int, point: Sequence) -> ExactMatrix:
    # rows are the spanning derivative vectors evaluated at ``point``
    pt = _check_point(V, point)
    return ExactMatrix([[f.evaluate(pt) for f in col] for col in _spanning_columns(V, k)], len(V.coordinates))


def osc_dim(V: ParamVariety, k: int, point: Sequence | None = None, trials: int = DEFAULT_TRIALS,
            seed: int = 0, certify: bool = False) -> int:
    """Projective dimension of the k-th osculating space (generic when point is None)."""
    if point is not None:
        return partials_matrix(V, k, point).rank - 1
    return generic_osc_rank(V, k, trials, seed, certify).rank - 1


def generic_osc_rank(V: ParamVariety, k: int, trials: int = DEFAULT_TRIALS, seed: int = 0,
                     certify: bool = False) -> GenericRank:
    if certify:
        return generic_rank(_certification_matrix(V, k), trials, True, seed)
    return generic_rank(partials_matrix(V, k).matrix, trials, False, seed)


def affine_partial_count(V: ParamVariety, k: int) -> int:
    """Number of affine-chart partials of order <= k that can be nonzero.

    A block of p_b affine parameters in which the coordinates have degree e_b
    admits derivatives of order <= e_b there.
    """
    if V.source == "projective":
        blocks = [(V.nvars - 1, V.degree)]
    else:
        blocks = [(len(b) - 1, e) for b, e in zip(V.factors, V.factor_degrees())]
    # per-block generating polynomial: counts of multi-indices by order, capped
    counts = [1]
    for p, e in blocks:
        block = [len(monomials_of_degree(p, j)) if p else int(j == 0) for j in range(min(e, k) + 1)]
        new = [0] * min(len(counts) + len(block) - 1, k + 1)
        for i, a in enumerate(counts):
            for j, b in enumerate(block):
                if i + j <= k:
                    new[i + j] += a * b
        counts = new
    return sum(counts)


def expected_osc_dim(V: ParamVariety, k: int) -> int:
    return min(V.ambient_dim, affine_partial_count(V, k) - 1)


def laplace_defect(V: ParamVariety, k: int, trials: int = DEFAULT_TRIALS, seed: int = 0,
                   certify: bool = False) -> int:
    """Expected minus generic osculating dimension; positive means a Laplace equation."""
    return expected_osc_dim(V, k) - osc_dim(V, k, None, trials, seed, certify)


def osculating_hyperplane(V: ParamVariety, k: int, point: Sequence) -> ProjPoint:
    """The functional cutting out T^k at ``point`` (must be a hyperplane)."""
    ann = left_kernel(partials_matrix(V, k, point).matrix)
    if len(ann) != 1:
        raise ValueError(f"osculating space at {list(point)} has codimension {len(ann)}, not 1")
    return ProjPoint(ann[0])


def _random_source_point(V: ParamVariety, rng: random.Random) -> tuple:
    while True:
        pt = tuple(rng.randint(-SAMPLE_BOUND, SAMPLE_BOUND) for _ in range(V.nvars))
        if all(any(pt[i] for i in b) for b in V.factors):
            return pt


@dataclass(frozen=True)
class CommonSpace:
    """Intersection of the sampled osculating spaces' annihilators."""

    basis: KernelBasis
    generic_rank: int
    good_samples: int
    singular_samples: int

    @property
    def dim(self) -> int:
        """Projective dimension; -1 when empty."""
        return len(self.basis) - 1


def common_osculating_space(V: ParamVariety, k: int, samples: int = 3, seed: int = 0,
                            stall: int = 2) -> CommonSpace:
    """Linear space contained in every k-osculating space at general points.

    Samples random source points, stacks the full annihilator of T^k at each
    and keeps the common kernel.  Sampling continues past ``samples`` while
    new points still cut the kernel down; it stops once ``stall`` consecutive
    points fail to shrink it.  Points of lower than generic rank are discarded.
    """
    if samples < 2:
        raise ValueError("samples must be >= 2")
    N = len(V.coordinates)
    rng = random.Random(seed)
    best = -1
    funcs: list = []
    kernel = echelon_basis([[1 if i == j else 0 for j in range(N)] for i in range(N)], N)
    good = singular = misses = streak = 0
    cap = N + samples + 2 * stall + MAX_RESAMPLES
    while good < cap:
        pt = _random_source_point(V, rng)
        span = _point_columns_transposed(V, k, pt)
        rows, pivots = rref(span)
        r = len(pivots)
        if r < best:
            singular += 1
            misses += 1
            if misses > MAX_RESAMPLES:
                raise DegenerateSampling(f"{misses} consecutive osculating-singular samples")
            continue
        misses = 0
        if r > best:
            if best >= 0:
                log.debug("rank rose from %d to %d; discarding earlier samples", best, r)
                singular += good
            best, good, funcs, streak = r, 0, [], 0
            kernel = echelon_basis([[1 if i == j else 0 for j in range(N)] for i in range(N)], N)
        good += 1
        funcs.extend(kernel_basis(ExactMatrix(rows, N)).vectors)
        new = kernel_basis(ExactMatrix(funcs, N)) if funcs else kernel
        streak = streak + 1 if len(new) == len(kernel) else 0
        kernel = new
        if len(kernel) == 0 or (good >= samples and streak >= stall):
            break
    return CommonSpace(kernel, best, good, singular)


def find_common_point(V: ParamVariety, k: int, samples: int = 3, seed: int = 0) -> Optional[ProjPoint]:
    """The unique point on all k-osculating hyperplanes, or None if there is none.

    Raises UnderdeterminedCommonSpace when the common space is larger than a point.
    """
    space = common_osculating_space(V, k, samples, seed)
    if len(space.basis) == 0:
        return None
    if len(space.basis) > 1:
        raise UnderdeterminedCommonSpace(space.basis)
    return ProjPoint(space.basis[0])


def certify_common_point(V: ParamVariety, k: int, c: Sequence, certify: bool = True,
                         trials: int = DEFAULT_TRIALS, seed: int = 0) -> OscCertificate:
    """Decide whether ``c`` lies in T^k at the generic point.

    Compares the generic rank of the symbolic partials with and without the
    column ``c``.  With ``certify`` both ranks are settled by fraction-free
    elimination over the function field; otherwise they are sampled.
    """
    c = list(c)
    if len(c) != len(V.coordinates):
        raise ValueError("candidate has the wrong number of coordinates")
    D = _certification_matrix(V, k)
    base = generic_rank(D, trials, certify, seed)
    aug = generic_rank(D.with_column(c), trials, certify, seed)
    expected = expected_osc_dim(V, k)
    generic_dim = base.rank - 1
    mode = "certified" if base.certified and aug.certified else "sampled"
    if aug.rank == base.rank:
        verdict = "common-point-verified"
    elif expected > generic_dim:
        verdict = "laplace-degenerate"
    else:
        verdict = "no-common-point"
    cand = tuple(ProjPoint(c)) if any(c) else None
    return OscCertificate(V.name, k, generic_dim, expected, cand, mode, verdict)
