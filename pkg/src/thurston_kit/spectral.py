"""Exact spectral questions for small nonnegative rational matrices.

The spectral radius is bracketed by Collatz-Wielandt ratios of rational
vectors.  Floating point only suggests a Perron vector; every bound and
every decision against 1 is backed by exact arithmetic:

* ``lambda < 1`` holds iff ``(I - A) x = 1`` has a positive solution ``x``
  (then ``A x < x``; conversely the Neumann series gives ``x >= 1``);
* ``lambda >= 1`` is certified by a nonzero ``v >= 0`` with ``A v >= v``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import List, Optional, Sequence, Tuple

import numpy as np

GE1 = "lambda>=1"
LT1 = "lambda<1"
UNDECIDED = "undecided"

DEFAULT_TOL = Fraction(1, 10**9)

Matrix = Sequence[Sequence[Fraction]]


@dataclass(frozen=True)
class EigenvalueBounds:
    lower: Fraction
    upper: Fraction
    decision: str
    certificate: Optional[Tuple[Fraction, ...]] = None

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower


def as_fraction_rows(M) -> List[List[Fraction]]:
    rows = getattr(M, "entries", M)
    out = [[Fraction(x) for x in row] for row in rows]
    if any(len(r) != len(out) for r in out):
        raise ValueError("matrix is not square")
    if any(x < 0 for r in out for x in r):
        raise ValueError("matrix has a negative entry")
    return out


# -- support digraph ---------------------------------------------------------------

def support_rows(A: Matrix) -> List[int]:
    """Row ``i`` as a bitmask of the columns ``j`` with ``A[i][j] > 0``."""
    return [sum(1 << j for j, x in enumerate(row) if x) for row in A]


def strongly_connected_masks(rows: np.ndarray, m: int) -> np.ndarray:
    """Vectorised test on a batch of support patterns.

    ``rows`` has shape ``(N, m)``; entry ``[t, i]`` is the bitmask of
    successors of vertex ``i`` in pattern ``t``.  Returns a boolean array
    that is true when every vertex reaches every vertex (itself included)
    by a path of positive length.  Warshall's closure over bit rows.
    """
    dtype = next(t for t, b in ((np.uint8, 8), (np.uint16, 16), (np.uint32, 32), (np.uint64, 64))
                 if m <= b)
    rows = np.asarray(rows).reshape(-1, m)
    reach = [rows[:, i].astype(dtype) for i in range(m)]
    one = dtype(1)
    for k in range(m):
        rk = reach[k]
        for i in range(m):
            hit = (reach[i] >> dtype(k)) & one
            reach[i] |= rk * hit
    full = dtype((1 << m) - 1) if m < 64 else np.iinfo(np.uint64).max
    out = np.ones(len(rows), dtype=bool)
    for r in reach:
        out &= r == full
    return out


def is_irreducible(M) -> bool:
    """Every ``(i, j)`` has ``(A^k)_ij > 0`` for some ``k > 0``.

    Taken literally this makes the 1x1 zero matrix reducible.
    """
    A = as_fraction_rows(M)
    if not A:
        return False
    m = len(A)
    if m > 64:
        return all(r == (1 << m) - 1 for r in _reach(support_rows(A)))
    return bool(strongly_connected_masks(np.array([support_rows(A)], dtype=np.uint64), m)[0])


def _reach(rows: List[int]) -> List[int]:
    m = len(rows)
    reach = list(rows)
    changed = True
    while changed:
        changed = False
        for i in range(m):
            r = reach[i]
            acc = r
            j = 0
            while r >> j:
                if (r >> j) & 1:
                    acc |= reach[j]
                j += 1
            if acc != reach[i]:
                reach[i] = acc
                changed = True
    return reach


def cyclic_components(A: Matrix) -> List[List[int]]:
    """Strongly connected blocks that carry at least one cycle."""
    reach = _reach(support_rows(A))
    seen = 0
    out = []
    for i in range(len(A)):
        if (seen >> i) & 1 or not (reach[i] >> i) & 1:
            continue
        block = [j for j in range(len(A)) if (reach[i] >> j) & 1 and (reach[j] >> i) & 1]
        for j in block:
            seen |= 1 << j
        out.append(block)
    return out


# -- exact linear algebra ------------------------------------------------------------

def _to_integer(A: Matrix) -> Tuple[List[List[int]], int]:
    L = lcm(*[x.denominator for r in A for x in r]) if A else 1
    return [[int(x * L) for x in r] for r in A], L


def _det(M: List[List[int]]) -> int:
    """Bareiss fraction-free determinant."""
    a = [list(r) for r in M]
    m = len(a)
    sign, prev = 1, 1
    for k in range(m - 1):
        if a[k][k] == 0:
            for r in range(k + 1, m):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, m):
            for j in range(k + 1, m):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[m - 1][m - 1] if m else 1


def below_one_certificate(A: Matrix) -> Optional[Tuple[Fraction, ...]]:
    """Positive ``x`` with ``(I - A) x = 1`` if one exists (so ``lambda < 1``)."""
    B, L = _to_integer(A)
    m = len(B)
    K = [[(L if i == j else 0) - B[i][j] for j in range(m)] for i in range(m)]
    det = _det(K)
    if det == 0:
        return None
    xs = []
    for c in range(m):
        Kc = [row[:c] + [L] + row[c + 1:] for row in K]
        num = _det(Kc)
        # (L I - B) x = L * 1, which is (I - A) x = 1
        if num == 0 or (num > 0) != (det > 0):
            return None
        xs.append(Fraction(num, det))
    return tuple(xs)


def _nullspace(A: List[List[Fraction]]) -> List[List[Fraction]]:
    m, ncols = len(A), len(A[0]) if A else 0
    a = [list(r) for r in A]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, m) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row, pc in enumerate(pivots):
            v[pc] = -a[row][fc]
        basis.append(v)
    return basis


def _solve(A: List[List[Fraction]], b: List[Fraction]) -> Optional[List[Fraction]]:
    m = len(A)
    a = [list(r) + [y] for r, y in zip(A, b)]
    for c in range(m):
        p = next((i for i in range(c, m) if a[i][c]), None)
        if p is None:
            return None
        a[c], a[p] = a[p], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(m):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [a[i][m] for i in range(m)]


# -- Collatz-Wielandt bounds ----------------------------------------------------------

def collatz_wielandt(A: Matrix, v: Sequence[Fraction]) -> Tuple[Fraction, Fraction]:
    """``min`` and ``max`` of ``(A v)_i / v_i`` over the support of ``v >= 0``.

    The minimum is a lower bound for the spectral radius whenever ``v`` is
    nonzero; the maximum is an upper bound when ``v`` is positive.
    """
    ratios = []
    for i, vi in enumerate(v):
        if vi:
            ratios.append(sum(a * x for a, x in zip(A[i], v)) / vi)
    return min(ratios), max(ratios)


def _int_cw(B: List[List[int]], L: int, v: List[int]) -> Tuple[Fraction, Fraction]:
    # same as collatz_wielandt on B / L with an integer vector, cheaper
    lo_n = lo_d = hi_n = hi_d = None
    for row, vi in zip(B, v):
        num = sum(b * x for b, x in zip(row, v))
        if lo_n is None or num * lo_d < lo_n * vi:
            lo_n, lo_d = num, vi
        if hi_n is None or num * hi_d > hi_n * vi:
            hi_n, hi_d = num, vi
    return Fraction(lo_n, lo_d * L), Fraction(hi_n, hi_d * L)


def _float_perron(A: List[List[Fraction]]) -> Tuple[float, np.ndarray]:
    F = np.array([[float(x) for x in r] for r in A])
    vals, vecs = np.linalg.eig(F)
    k = int(np.argmax(vals.real))
    v = np.abs(vecs[:, k].real)
    return float(vals[k].real), v


def _rounded(v, bits: int) -> List[int]:
    top = max(v)
    if not top > 0:
        return [1] * len(v)
    scale = 2 ** bits
    return [max(1, int(round(x / top * scale))) for x in v]


def _block_bounds(A: List[List[Fraction]], tol: Fraction):
    """Bounds and best lower-bound vector for an irreducible block."""
    m = len(A)
    if m == 1:
        a = A[0][0]
        return a, a, [Fraction(1)]
    B, L = _to_integer(A)
    rho, fv = _float_perron(A)
    v = _rounded(fv, 50)
    lo, hi = _int_cw(B, L, v)
    vec = [Fraction(x) for x in v]
    # inverse iteration in exact arithmetic when floats were not enough
    mu = Fraction(rho)
    for _ in range(4):
        if hi - lo <= tol:
            break
        shifted = [[A[i][j] - (mu if i == j else 0) for j in range(m)] for i in range(m)]
        y = _solve(shifted, vec)
        if y is None:
            null = _nullspace(shifted)
            if len(null) == 1 and (all(x > 0 for x in null[0]) or all(x < 0 for x in null[0])):
                y = null[0]
            else:
                break
        top = max(abs(x) for x in y)
        scaled = [abs(x) / top for x in y]
        v = [max(1, round(x * 2 ** 120)) for x in scaled]
        lo2, hi2 = _int_cw(B, L, v)
        if hi2 - lo2 < hi - lo:
            lo, hi, vec = lo2, hi2, [Fraction(x) for x in v]
        mu = (lo + hi) / 2
    return lo, hi, vec


def _exact_unit_vector(A: List[List[Fraction]]) -> Optional[List[Fraction]]:
    """Positive ``v`` with ``A v = v`` for an irreducible block, if ``lambda = 1``."""
    m = len(A)
    shifted = [[A[i][j] - (1 if i == j else 0) for j in range(m)] for i in range(m)]
    null = _nullspace(shifted)
    if len(null) != 1:
        return None
    v = null[0]
    if all(x < 0 for x in v):
        v = [-x for x in v]
    return v if all(x > 0 for x in v) else None


def _exact_bounds(A: List[List[Fraction]], tol: Fraction) -> EigenvalueBounds:
    """Slow path: blockwise bounds with exact refinement, one matrix at a time."""
    m = len(A)
    if m == 0:
        raise ValueError("empty matrix has no leading eigenvalue")
    blocks = cyclic_components(A)
    lower = upper = Fraction(0)
    best = None  # (lower bound, block, vector)
    info = []
    for blk in blocks:
        sub = [[A[i][j] for j in blk] for i in blk]
        lo, hi, vec = _block_bounds(sub, tol)
        info.append((blk, sub, lo, hi))
        lower, upper = max(lower, lo), max(upper, hi)
        if best is None or lo > best[0]:
            best = (lo, blk, vec)

    x = below_one_certificate(A)
    if x is not None:
        upper = min(upper, max(1 - 1 / xi for xi in x))
        return EigenvalueBounds(lower, upper, LT1, x)

    # lambda >= 1; find an exact witness vector
    if best is None or best[0] < 1:
        best = None
        for blk, sub, lo, hi in info:
            if lo <= 1 <= hi:
                v = _exact_unit_vector(sub)
                if v is not None:
                    best = (Fraction(1), blk, v)
                    break
        if best is None:
            return EigenvalueBounds(lower, upper, UNDECIDED)
        lower = max(lower, Fraction(1))
        upper = max(upper, lower)
    _, blk, vec = best
    cert = [Fraction(0)] * m
    for i, x in zip(blk, vec):
        cert[i] = Fraction(x)
    return EigenvalueBounds(lower, upper, GE1, tuple(cert))



# -- batched fast path ----------------------------------------------------------------

_CODES = (LT1, GE1, UNDECIDED)


class BoundsBatch:
    """Certified bounds for many matrices, materialised lazily.

    Bounds are kept as integer numerator/denominator arrays; ``self[t]``
    builds the ``EigenvalueBounds`` for matrix ``t``.
    """

    def __init__(self, N: int, m: int):
        self.m = m
        self.code = np.zeros(N, dtype=np.int8)
        self.lo = [np.zeros(N, dtype=object), np.ones(N, dtype=object)]
        self.hi = [np.zeros(N, dtype=object), np.ones(N, dtype=object)]
        self.cert_num = np.zeros((N, m), dtype=object)
        self.cert_den = np.ones(N, dtype=object)
        self.override = {}

    def __len__(self):
        return len(self.code)

    @property
    def decisions(self) -> np.ndarray:
        out = np.array(_CODES, dtype=object)[self.code]
        for t, b in self.override.items():
            out[t] = b.decision
        return out

    def width_within(self, tol: Fraction) -> np.ndarray:
        """Boolean array: ``upper - lower <= tol``."""
        tol = Fraction(tol)
        (ln, ld), (un, ud) = self.lo, self.hi
        ok = (un * ld - ln * ud) * tol.denominator <= tol.numerator * ud * ld
        ok = np.asarray(ok, dtype=bool)
        for t, b in self.override.items():
            ok[t] = b.width <= tol
        return ok

    def __getitem__(self, t: int) -> EigenvalueBounds:
        if t in self.override:
            return self.override[t]
        den = self.cert_den[t]
        cert = tuple(Fraction(x, den) for x in self.cert_num[t])
        return EigenvalueBounds(Fraction(self.lo[0][t], self.lo[1][t]),
                                Fraction(self.hi[0][t], self.hi[1][t]),
                                _CODES[self.code[t]], cert)


def _det_many(K: np.ndarray) -> np.ndarray:
    """Bareiss determinants of a stack ``(N, m, m)`` of exact integer matrices."""
    a = K.copy()
    N, m, _ = a.shape
    sign = np.ones(N, dtype=object)
    prev = np.ones(N, dtype=object)
    zero = np.zeros(N, dtype=bool)
    rows = np.arange(N)
    for k in range(m - 1):
        nz = a[:, k:, k] != 0
        has = nz.any(axis=1)
        zero |= ~has
        r = k + nz.argmax(axis=1)
        swap = np.nonzero(has & (r != k))[0]
        if swap.size:
            tmp = a[swap, k].copy()
            a[swap, k] = a[swap, r[swap]]
            a[swap, r[swap]] = tmp
            sign[swap] = -sign[swap]
        piv = np.where(zero, 1, a[rows, k, k])
        a[:, k + 1:, k + 1:] = ((a[:, k + 1:, k + 1:] * piv[:, None, None]
                                 - a[:, k + 1:, k:k + 1] * a[:, k:k + 1, k + 1:])
                                // prev[:, None, None])
        prev = piv
    det = sign * a[:, m - 1, m - 1]
    det[zero] = 0
    return det


def _rational_less(an, ad, bn, bd):
    # a/b with positive denominators
    return np.asarray(an * bd < bn * ad, dtype=bool)


def leading_eigenvalue_bounds_scaled(B, L: int, tol: Fraction = DEFAULT_TOL) -> BoundsBatch:
    """Bounds for the stack of matrices ``B / L`` (``B`` integer, shape ``(N, m, m)``)."""
    B = np.asarray(B)
    if B.ndim != 3 or B.shape[1] != B.shape[2]:
        raise ValueError("expected a stack of square matrices")
    if (B < 0).any() or L <= 0:
        raise ValueError("matrices must be nonnegative with positive denominator")
    N, m, _ = B.shape
    Bo = B.astype(object)
    out = BoundsBatch(N, m)
    if N == 0:
        return out
    ln, ld = out.lo
    un, ud = out.hi
    ld *= L
    ud *= L
    best_vec = out.cert_num

    # blockwise Collatz-Wielandt bounds, grouped by support pattern
    weights = (1 << np.arange(m * m, dtype=np.int64)).reshape(m, m)
    patterns = ((B > 0) * weights).sum(axis=(1, 2))
    for pat in np.unique(patterns):
        idx = np.nonzero(patterns == pat)[0]
        support = [[int(pat) >> (i * m + j) & 1 for j in range(m)] for i in range(m)]
        for blk in cyclic_components(support):
            k = len(blk)
            sub = Bo[np.ix_(idx, blk, blk)]
            if k == 1:
                num = sub[:, 0, 0]
                v = np.ones((len(idx), 1), dtype=object)
                bl_n, bl_d, bu_n, bu_d = num, np.full(len(idx), L, dtype=object), num, None
                bu_d = bl_d
            else:
                vals, vecs = np.linalg.eig(B[np.ix_(idx, blk, blk)].astype(float))
                pick = np.argmax(vals.real, axis=1)
                fv = np.abs(vecs[np.arange(len(idx)), :, pick].real)
                top = fv.max(axis=1, keepdims=True)
                top[top == 0] = 1
                v = np.maximum(np.rint(fv / top * 2.0 ** 50), 1).astype(np.int64).astype(object)
                Bv = (sub * v[:, None, :]).sum(axis=2)
                bl_n, bl_d = Bv[:, 0], v[:, 0]
                bu_n, bu_d = Bv[:, 0], v[:, 0]
                for i in range(1, k):
                    lt = _rational_less(Bv[:, i], v[:, i], bl_n, bl_d)
                    bl_n, bl_d = np.where(lt, Bv[:, i], bl_n), np.where(lt, v[:, i], bl_d)
                    gt = _rational_less(bu_n, bu_d, Bv[:, i], v[:, i])
                    bu_n, bu_d = np.where(gt, Bv[:, i], bu_n), np.where(gt, v[:, i], bu_d)
                bl_d = bl_d * L
                bu_d = bu_d * L
            up = _rational_less(ln[idx], ld[idx], bl_n, bl_d)
            rows = idx[up]
            ln[rows], ld[rows] = bl_n[up], bl_d[up]
            best_vec[rows] = 0
            best_vec[np.ix_(rows, blk)] = v[up]
            up = _rational_less(un[idx], ud[idx], bu_n, bu_d)
            un[idx[up]], ud[idx[up]] = bu_n[up], bu_d[up]

    # exact test at 1: (L I - B) x = L 1 has a positive solution iff lambda < 1
    K = np.eye(m, dtype=np.int64).astype(object) * L - Bo
    det = _det_many(K)
    positive = det != 0
    nums = np.empty((N, m), dtype=object)
    for c in range(m):
        Kc = K.copy()
        Kc[:, :, c] = L
        nums[:, c] = _det_many(Kc)
        positive &= np.asarray((nums[:, c] != 0) & ((nums[:, c] > 0) == (det > 0)), dtype=bool)
    below = np.nonzero(positive)[0]
    if below.size:
        s = np.where(det[below] > 0, 1, -1).astype(object)
        xn, xd = nums[below] * s[:, None], det[below] * s
        # upper bound max_i (1 - 1/x_i) = (xn_i - xd) / xn_i
        cn, cd = xn[:, 0] - xd, xn[:, 0]
        for i in range(1, m):
            gt = _rational_less(cn, cd, xn[:, i] - xd, xn[:, i])
            cn, cd = np.where(gt, xn[:, i] - xd, cn), np.where(gt, xn[:, i], cd)
        lt = _rational_less(cn, cd, un[below], ud[below])
        un[below[lt]], ud[below[lt]] = cn[lt], cd[lt]
        out.code[below] = 0
        out.cert_num[below] = xn
        out.cert_den[below] = xd
    rest = np.nonzero(~positive)[0]
    ge = rest[np.asarray(ln[rest] >= ld[rest], dtype=bool)]
    out.code[ge] = 1

    # slow path for straddling rows and wide brackets
    hard = set(np.nonzero(~positive)[0].tolist()) - set(ge.tolist())
    hard |= set(np.nonzero(~out.width_within(tol))[0].tolist())
    for t in sorted(hard):
        A = [[Fraction(int(x), L) for x in row] for row in B[t]]
        out.override[t] = _exact_bounds(A, Fraction(tol))
    return out


def leading_eigenvalue_bounds_many(mats, tol: Fraction = DEFAULT_TOL) -> List[EigenvalueBounds]:
    """Certified bounds for a list of square nonnegative rational matrices."""
    rows = [as_fraction_rows(M) for M in mats]
    out: List[Optional[EigenvalueBounds]] = [None] * len(rows)
    groups = {}
    for t, A in enumerate(rows):
        if not A:
            raise ValueError("empty matrix has no leading eigenvalue")
        L = lcm(*[x.denominator for r in A for x in r])
        groups.setdefault((len(A), L), []).append(t)
    for (m, L), ts in groups.items():
        B = np.array([[[int(x * L) for x in r] for r in rows[t]] for t in ts], dtype=object)
        if B.size and max(B.flat) >= 2 ** 62:
            for t in ts:
                out[t] = _exact_bounds(rows[t], Fraction(tol))
            continue
        batch = leading_eigenvalue_bounds_scaled(B.astype(np.int64), L, tol)
        for pos, t in enumerate(ts):
            out[t] = batch[pos]
    return out


def leading_eigenvalue_bounds(M, tol: Fraction = DEFAULT_TOL) -> EigenvalueBounds:
    """Exact bracket of the spectral radius of ``M`` and a certified decision against 1.

    ``lower <= lambda <= upper`` by Collatz-Wielandt.  The decision is
    ``lambda>=1`` only with ``lower >= 1`` and ``lambda<1`` only with
    ``upper < 1``; ``certificate`` is the exact vector behind it.
    """
    return leading_eigenvalue_bounds_many([M], tol)[0]


def check_certificate(M, bounds: EigenvalueBounds) -> bool:
    """Recheck the exact inequality behind a decision."""
    A = as_fraction_rows(M)
    v = bounds.certificate
    if bounds.decision == UNDECIDED or v is None:
        return bounds.decision == UNDECIDED
    Av = [sum(a * x for a, x in zip(row, v)) for row in A]
    if bounds.decision == LT1:
        return all(x > 0 for x in v) and all(y < x for x, y in zip(v, Av))
    return any(v) and all(x >= 0 for x in v) and all(y >= x for x, y in zip(v, Av))
