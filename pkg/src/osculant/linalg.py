"""Exact linear algebra over Q and over polynomial rings Q[t1..tr].

Scalar rank and determinant use fraction-free (Bareiss) elimination on
integer-cleared rows.  Kernels come out in reduced echelon normal form so
that they are canonical.  Polynomial matrices get the same Bareiss
elimination with exact polynomial division, which computes the rank over the
fraction field Q(t1..tr), i.e. the generic rank.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

from .ratpoly import MPoly, Scalar, _div, _norm, to_rational

DEFAULT_TRIALS = 3
SAMPLE_BOUND = 999


def _is_poly(x) -> bool:
    return isinstance(x, MPoly)


class ExactMatrix:
    """Dense matrix with exact rational or polynomial entries (immutable)."""

    __slots__ = ("data", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = []
        for row in rows:
            data.append(tuple(x if _is_poly(x) else to_rational(x) for x in row))
        if ncols is None:
            ncols = len(data[0]) if data else 0
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged matrix")
        nv = {x.nvars for r in data for x in r if _is_poly(x)}
        if len(nv) > 1:
            raise ValueError("polynomial entries live in different rings")
        object.__setattr__(self, "data", tuple(data))
        object.__setattr__(self, "ncols", ncols)

    @property
    def rows(self) -> int:
        return len(self.data)

    @property
    def cols(self) -> int:
        return self.ncols

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def entries(self) -> tuple:
        return tuple(x for r in self.data for x in r)

    @property
    def nvars(self) -> int:
        for r in self.data:
            for x in r:
                if _is_poly(x):
                    return x.nvars
        return 0

    @property
    def scalar_flag(self) -> bool:
        return all(not _is_poly(x) or x.is_constant() for r in self.data for x in r)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i: int) -> tuple:
        return self.data[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.data)

    def to_lists(self) -> list[list]:
        return [list(r) for r in self.data]

    def scalar_rows(self) -> list[list[Scalar]]:
        if not self.scalar_flag:
            raise ValueError("matrix has non-constant polynomial entries")
        return [[x.constant_value() if _is_poly(x) else x for x in r] for r in self.data]

    def poly_rows(self, nvars: int | None = None) -> list[list[MPoly]]:
        n = self.nvars if nvars is None else nvars
        return [[x if _is_poly(x) else MPoly.constant(n, x) for x in r] for r in self.data]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix([list(c) for c in zip(*self.data)] if self.rows else [], self.rows)

    def hstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if other.rows != self.rows:
            raise ValueError("row count mismatch")
        return ExactMatrix([a + b for a, b in zip(self.data, other.data)], self.cols + other.cols)

    def with_column(self, col: Sequence) -> "ExactMatrix":
        if len(col) != self.rows:
            raise ValueError("column length mismatch")
        return ExactMatrix([r + (c,) for r, c in zip(self.data, col)], self.cols + 1)

    def select(self, rows: Sequence[int] | None = None, cols: Sequence[int] | None = None) -> "ExactMatrix":
        rows = range(self.rows) if rows is None else rows
        cols = range(self.cols) if cols is None else cols
        return ExactMatrix([[self.data[i][j] for j in cols] for i in rows], len(cols))

    def substitute(self, point: Sequence) -> "ExactMatrix":
        """Evaluate every polynomial entry at ``point``."""
        return ExactMatrix([[x.evaluate(point) if _is_poly(x) else x for x in r] for r in self.data], self.cols)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = []
        for r in self.data:
            row = []
            for j in range(other.cols):
                acc = 0
                for k, a in enumerate(r):
                    b = other.data[k][j]
                    if (_is_poly(a) or a) and (_is_poly(b) or b):
                        acc = a * b + acc if _is_poly(a) or _is_poly(b) else acc + a * b
                row.append(acc if _is_poly(acc) else _norm(acc))
            out.append(row)
        return ExactMatrix(out, other.cols)

    def apply(self, vector: Sequence) -> list:
        """Matrix-vector product."""
        if len(vector) != self.cols:
            raise ValueError("vector length mismatch")
        out = []
        for r in self.data:
            acc = 0
            for a, b in zip(r, vector):
                if (_is_poly(a) or a) and (_is_poly(b) or b):
                    acc = a * b + acc if _is_poly(a) or _is_poly(b) else acc + a * b
            out.append(acc if _is_poly(acc) else _norm(acc))
        return out

    def scale(self, c) -> "ExactMatrix":
        c = to_rational(c)
        return ExactMatrix([[x * c if _is_poly(x) else _norm(x * c) for x in r] for r in self.data], self.cols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix) or other.shape != self.shape:
            return False
        return all(a == b for r1, r2 in zip(self.data, other.data) for a, b in zip(r1, r2))

    def __hash__(self) -> int:
        return hash((self.shape, self.data))

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.data)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls([[0] * cols for _ in range(rows)], cols)


def as_matrix(M) -> ExactMatrix:
    return M if isinstance(M, ExactMatrix) else ExactMatrix(M)


def _require_scalar(M: ExactMatrix) -> list[list[Scalar]]:
    if not M.scalar_flag:
        raise ValueError("scalar matrix required (found polynomial entries)")
    return M.scalar_rows()


def _integer_rows(rows: list[list[Scalar]]) -> list[list[int]]:
    # row scaling preserves rank and kernel
    out = []
    for r in rows:
        den = 1
        for x in r:
            if isinstance(x, Fraction):
                den = lcm(den, x.denominator)
        out.append([int(x * den) for x in r])
    return out


def _bareiss_rank_int(rows: list[list[int]], ncols: int) -> int:
    m = len(rows)
    rank, prev = 0, 1
    for c in range(ncols):
        if rank == m:
            break
        piv = next((r for r in range(rank, m) if rows[r][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][c]
        prow = rows[rank]
        for r in range(rank + 1, m):
            row = rows[r]
            a = row[c]
            for j in range(c + 1, ncols):
                row[j] = (p * row[j] - a * prow[j]) // prev
            row[c] = 0
        prev = p
        rank += 1
    return rank


def rank_exact(M) -> int:
    """Rank over Q by fraction-free elimination."""
    M = as_matrix(M)
    rows = _integer_rows(_require_scalar(M))
    return _bareiss_rank_int(rows, M.cols)


def _primitive_row(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    return [x // g for x in row] if g > 1 else row


def rref(M) -> tuple[list[list[Scalar]], list[int]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns.

    Elimination runs on integer rows kept primitive (row content divided
    out); pivots are normalized to 1 only at the end.
    """
    M = as_matrix(M)
    rows = [_primitive_row(r) for r in _integer_rows(_require_scalar(M)) if any(r)]
    pivots = []
    r = 0
    for c in range(M.cols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        p = prow[c]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                a = rows[i][c]
                g = gcd(p, a)
                pg, ag = p // g, a // g
                rows[i] = _primitive_row([pg * x - ag * y for x, y in zip(rows[i], prow)])
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    out = []
    for row, c in zip(rows[:r], pivots):
        p = row[c]
        out.append([_div(x, p) if x else 0 for x in row])
    return out, pivots


@dataclass(frozen=True)
class KernelBasis:
    """Kernel vectors in reduced echelon normal form."""

    vectors: tuple
    dim_ambient: int

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def __getitem__(self, i):
        return self.vectors[i]

    @property
    def pivots(self) -> list[int]:
        return [next(j for j, x in enumerate(v) if x) for v in self.vectors]


def echelon_basis(vectors: Sequence[Sequence], length: int) -> KernelBasis:
    """Canonical (reduced echelon) basis of the span of ``vectors``."""
    if not vectors:
        return KernelBasis((), length)
    rows, _ = rref(ExactMatrix(vectors, length))
    return KernelBasis(tuple(tuple(r) for r in rows), length)


def kernel_basis(M) -> KernelBasis:
    """Basis of {v : M v = 0} in reduced echelon normal form."""
    M = as_matrix(M)
    rows, pivots = rref(M)
    free = [j for j in range(M.cols) if j not in set(pivots)]
    raw = []
    for j in free:
        v = [0] * M.cols
        v[j] = 1
        for row, p in zip(rows, pivots):
            v[p] = _norm(-Fraction(row[j]))
        raw.append(v)
    return echelon_basis(raw, M.cols)


def left_kernel(M) -> KernelBasis:
    """Functionals annihilating the column span of M."""
    return kernel_basis(as_matrix(M).transpose())


def _bareiss_det_int(rows: list[list[int]]) -> int:
    n = len(rows)
    sign, prev = 1, 1
    for c in range(n):
        piv = next((r for r in range(c, n) if rows[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            sign = -sign
        p = rows[c][c]
        for r in range(c + 1, n):
            a = rows[r][c]
            for j in range(c + 1, n):
                rows[r][j] = (p * rows[r][j] - a * rows[c][j]) // prev
        prev = p
    return sign * rows[n - 1][n - 1] if n else 1


def _poly_bareiss(rows: list[list[MPoly]], ncols: int, square: bool = False):
    """Fraction-free elimination over Q[t].

    Returns (rank, last pivot, sign, pivot positions).  Divisions by the
    previous pivot are exact because every entry stays a minor of the input.
    """
    m = len(rows)
    if not m:
        return 0, None, 1, []
    nv = rows[0][0].nvars if ncols else 0
    rank, sign = 0, 1
    prev = MPoly.constant(nv, 1)
    last = prev
    pivots = []
    for c in range(ncols):
        if rank == m:
            break
        cands = [r for r in range(rank, m) if rows[r][c]]
        if not cands:
            if square:
                return rank, MPoly.zero(nv), sign, pivots
            continue
        piv = min(cands, key=lambda r: len(rows[r][c]))
        if piv != rank:
            rows[rank], rows[piv] = rows[piv], rows[rank]
            sign = -sign
        prow = rows[rank]
        p = prow[c]
        for r in range(rank + 1, m):
            row = rows[r]
            a = row[c]
            for j in range(c + 1, ncols):
                if a.is_zero():
                    val = p * row[j]
                else:
                    val = p * row[j] - a * prow[j]
                row[j] = val if prev.is_constant() and prev.constant_value() == 1 else val.divexact(prev)
            row[c] = MPoly.zero(nv)
        prev = last = p
        pivots.append(c)
        rank += 1
    return rank, last, sign, pivots


def _clear_poly_denominators(rows: list[list[MPoly]]) -> list[list[MPoly]]:
    out = []
    for r in rows:
        den = 1
        for x in r:
            for _, c in x.items():
                if isinstance(c, Fraction):
                    den = lcm(den, c.denominator)
        out.append([x * den if den != 1 else x for x in r])
    return out


def symbolic_rank(M) -> int:
    """Rank over the fraction field of the entries' polynomial ring."""
    M = as_matrix(M)
    if M.rows == 0 or M.cols == 0:
        return 0
    rows = _clear_poly_denominators(M.poly_rows())
    rank, _, _, _ = _poly_bareiss(rows, M.cols)
    return rank


def determinant(M):
    """Exact determinant; an MPoly when the matrix has polynomial entries."""
    M = as_matrix(M)
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    if M.scalar_flag:
        rows = M.scalar_rows()
        den = 1
        ints = []
        for r in rows:
            d = 1
            for x in r:
                if isinstance(x, Fraction):
                    d = lcm(d, x.denominator)
            den *= d
            ints.append([int(x * d) for x in r])
        return _norm(Fraction(_bareiss_det_int(ints), den))
    nv = M.nvars
    if M.rows == 0:
        return MPoly.constant(nv, 1)
    raw = M.poly_rows()
    dens = []
    rows = []
    for r in raw:
        d = 1
        for x in r:
            for _, c in x.items():
                if isinstance(c, Fraction):
                    d = lcm(d, c.denominator)
        dens.append(d)
        rows.append([x * d if d != 1 else x for x in r])
    rank, last, sign, _ = _poly_bareiss(rows, M.cols, square=True)
    if rank < M.rows:
        return MPoly.zero(nv)
    total_den = 1
    for d in dens:
        total_den *= d
    return last * Fraction(sign, total_den)


def in_span(vectors: Sequence[Sequence], target: Sequence) -> Optional[list[Scalar]]:
    """Coefficients c with sum c_i vectors[i] = target, or None."""
    length = len(target)
    if any(len(v) != length for v in vectors):
        raise ValueError("vector length mismatch")
    if not vectors:
        return [] if not any(target) else None
    # columns = vectors, last column = target
    aug = [[v[i] for v in vectors] + [target[i]] for i in range(length)]
    rows, pivots = rref(ExactMatrix(aug, len(vectors) + 1))
    if len(vectors) in pivots:
        return None
    coeffs = [0] * len(vectors)
    for row, p in zip(rows, pivots):
        coeffs[p] = row[-1]
    return coeffs


def kron(A, B) -> ExactMatrix:
    """Kronecker product."""
    A, B = as_matrix(A), as_matrix(B)
    out = []
    for ra in A.data:
        for rb in B.data:
            out.append([a * b if (_is_poly(a) or _is_poly(b)) else _norm(a * b) for a in ra for b in rb])
    return ExactMatrix(out, A.cols * B.cols)


def normalize_primitive(vec: Sequence) -> tuple[int, ...]:
    """Primitive integer representative: cleared denominators, gcd 1, first nonzero positive."""
    vals = [Fraction(to_rational(x)) for x in vec]
    if not any(vals):
        raise ValueError("zero vector has no projective normalization")
    den = 1
    for v in vals:
        den = lcm(den, v.denominator)
    ints = [int(v * den) for v in vals]
    g = 0
    for v in ints:
        g = gcd(g, v)
    first = next(v for v in ints if v)
    s = 1 if first > 0 else -1
    return tuple(s * v // g for v in ints)


@dataclass(frozen=True)
class GenericRank:
    """Result of a generic-rank computation on a polynomial matrix."""

    rank: int
    level: str  # "sampled-only" | "certified"
    sampled_rank: int
    witness_point: tuple | None = None
    witness_rows: tuple | None = None
    witness_cols: tuple | None = None

    @property
    def certified(self) -> bool:
        return self.level == "certified"


def random_point(rng: random.Random, nvars: int, bound: int = SAMPLE_BOUND) -> tuple[int, ...]:
    return tuple(rng.randint(-bound, bound) for _ in range(nvars))


def generic_rank(M, trials: int = DEFAULT_TRIALS, certify: bool = False, seed: int = 0) -> GenericRank:
    """Rank of a polynomial matrix at a general point of parameter space.

    Samples ``trials`` random integer points and keeps the largest rank.  With
    ``certify`` the claim is settled symbolically: the witness sample carries
    a nonzero r x r minor, and fraction-free elimination over Q(t) shows that
    no (r+1) x (r+1) minor survives.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    M = as_matrix(M)
    if M.rows == 0 or M.cols == 0:
        return GenericRank(0, "certified", 0, (), (), ())
    nv = M.nvars
    rng = random.Random(seed)
    best, best_pt = -1, None
    for _ in range(trials):
        pt = random_point(rng, nv)
        r = rank_exact(M.substitute(pt))
        if r > best:
            best, best_pt = r, pt
    if not certify:
        return GenericRank(best, "sampled-only", best, best_pt)
    S = M.substitute(best_pt)
    _, pcols = rref(S)
    _, prows = rref(S.transpose())
    minor = S.select(prows, pcols)
    assert determinant(minor) != 0
    sym = symbolic_rank(M)
    return GenericRank(sym, "certified", best, best_pt, tuple(prows), tuple(pcols))
