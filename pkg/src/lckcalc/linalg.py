"""Dense exact linear algebra over GaussianRational.

Matrices are lists of rows of GaussianRational.  The spaces involved are
tiny (at most a few hundred dimensions), so plain Gaussian elimination
with exact arithmetic is both fast enough and bit-reproducible.
"""

from __future__ import annotations

from typing import Iterable, List, Optional, Sequence, Tuple

from .scalars import GaussianRational, ONE, ZERO

Matrix = List[List[GaussianRational]]
Vector = List[GaussianRational]


def zeros(rows: int, cols: int) -> Matrix:
    return [[ZERO for _ in range(cols)] for _ in range(rows)]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = ONE
    return m


def copy_matrix(m: Matrix) -> Matrix:
    return [row[:] for row in m]


def shape(m: Matrix) -> Tuple[int, int]:
    return len(m), len(m[0]) if m else 0


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]

def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c: GaussianRational, a: Matrix) -> Matrix:
    return [[c * x for x in row] for row in a]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    ra, ca = shape(a)
    rb, cb = shape(b)
    if ca != rb:
        raise ValueError(f"matrix shapes {ra}x{ca} and {rb}x{cb} do not compose")
    bt = list(zip(*b))
    out = zeros(ra, cb)
    for i in range(ra):
        arow = a[i]
        orow = out[i]
        for j in range(cb):
            acc = ZERO
            bcol = bt[j]
            for k in range(ca):
                x = arow[k]
                if x:
                    acc = acc + x * bcol[k]
            orow[j] = acc
    return out


def mat_vec(a: Matrix, v: Vector) -> Vector:
    return [sum((x * y for x, y in zip(row, v) if x), ZERO) for row in a]


def transpose(a: Matrix) -> Matrix:
    return [list(row) for row in zip(*a)]


def conj_transpose(a: Matrix) -> Matrix:
    return [[x.conjugate() for x in row] for row in zip(*a)]


def conj_matrix(a: Matrix) -> Matrix:
    return [[x.conjugate() for x in row] for row in a]


def mat_eq(a: Matrix, b: Matrix) -> bool:
    return shape(a) == shape(b) and all(
        x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb)
    )


def is_zero_matrix(a: Matrix) -> bool:
    return all(x.is_zero() for row in a for x in row)


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


def anticommutator(a: Matrix, b: Matrix) -> Matrix:
    return mat_add(mat_mul(a, b), mat_mul(b, a))


def from_columns(cols: Sequence[Vector]) -> Matrix:
    if not cols:
        return []
    return [list(row) for row in zip(*cols)]


def columns(m: Matrix) -> List[Vector]:
    return [list(col) for col in zip(*m)] if m else []


def rref(m: Matrix) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form; returns (rref_matrix, pivot_columns)."""
    a = copy_matrix(m)
    rows, cols = shape(a)
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        pivot_row = None
        for i in range(r, rows):
            if a[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        inv = a[r][c].inverse()
        a[r] = [inv * x for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m: Matrix) -> int:
    if not m or not m[0]:
        return 0
    return len(rref(m)[1])


def nullspace(m: Matrix) -> List[Vector]:
    """Canonical kernel basis (rows of the RREF of the raw basis)."""
    rows, cols = shape(m)
    if cols == 0:
        return []
    if rows == 0:
        return columns(identity(cols))
    red, pivots = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis: List[Vector] = []
    for fc in free:
        v = [ZERO] * cols
        v[fc] = ONE
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    if not basis:
        return []
    canon, _ = rref(basis)
    return [row for row in canon if any(row)]


def solve(a: Matrix, b: Vector) -> Optional[Vector]:
    """One exact solution of a x = b, or None if inconsistent."""
    rows, cols = shape(a)
    aug = [a[i][:] + [b[i]] for i in range(rows)]
    red, pivots = rref(aug)
    if cols in pivots:
        return None
    x = [ZERO] * cols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][cols]
    return x


def solve_matrix(a: Matrix, b: Matrix) -> Optional[Matrix]:
    """Solve a X = b columnwise; None if any column is inconsistent."""
    xs = []
    for col in columns(b):
        x = solve(a, col)
        if x is None:
            return None
        xs.append(x)
    return from_columns(xs)


def inverse(a: Matrix) -> Matrix:
    n, m = shape(a)
    if n != m:
        raise ValueError("only square matrices invert")
    aug = [a[i][:] + identity(n)[i] for i in range(n)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


def span_rank(vectors: Iterable[Vector]) -> int:
    rows = [list(v) for v in vectors]
    if not rows:
        return 0
    return rank(rows)


def in_span(basis: Sequence[Vector], v: Vector) -> bool:
    """Whether v lies in the span of the given vectors."""
    if all(x.is_zero() for x in v):
        return True
    if not basis:
        return False
    base_rows = [list(b) for b in basis]
    return rank(base_rows) == rank(base_rows + [list(v)])


def span_leq(a: Sequence[Vector], b: Sequence[Vector]) -> bool:
    """Whether span(a) is contained in span(b)."""
    return all(in_span(b, v) for v in a)


def spans_equal(a: Sequence[Vector], b: Sequence[Vector]) -> bool:
    return span_leq(a, b) and span_leq(b, a)


def intersect_spans(a: Sequence[Vector], b: Sequence[Vector]) -> List[Vector]:
    """Basis of span(a) ∩ span(b)."""
    if not a or not b:
        return []
    dim = len(a[0])
    stacked = from_columns([list(v) for v in a] + [list(v) for v in b])
    inter = []
    for coeffs in nullspace(stacked):
        v = [ZERO] * dim
        for i, c in enumerate(coeffs[: len(a)]):
            if c:
                v = [x + c * y for x, y in zip(v, a[i])]
        if any(v):
            inter.append(v)
    if not inter:
        return []
    canon, _ = rref(inter)
    return [row for row in canon if any(row)]


def canonical_basis(vectors: Sequence[Vector]) -> List[Vector]:
    """Reduced echelon basis of the span, for deterministic output."""
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return []
    canon, _ = rref(rows)
    return [row for row in canon if any(row)]
