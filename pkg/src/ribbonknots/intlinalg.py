"""Exact integer linear algebra.

Determinants, Smith normal form with transform tracking, cokernel
invariants of relation matrices, and factorization of unimodular
matrices into elementary row operations.

Convention used across the repo: rows are relators, columns are
generators.  Row indices in elementary operations are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union


@dataclass(frozen=True)
class IntMatrix:
    entries: tuple[tuple[int, ...], ...]
    # A 0 x c matrix cannot carry its width in `entries`, so keep it aside.
    empty_cols: int = 0

    def __post_init__(self) -> None:
        if self.entries:
            width = len(self.entries[0])
            if any(len(row) != width for row in self.entries):
                raise ValueError("ragged matrix")

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else self.empty_cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.entries[ij[0]][ij[1]]

    def transpose(self) -> "IntMatrix":
        if not self.entries:
            return IntMatrix(tuple(() for _ in range(self.empty_cols)))
        return IntMatrix(tuple(zip(*self.entries)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matrix product")
        return IntMatrix(
            tuple(
                tuple(
                    sum(self.entries[i][k] * other.entries[k][j] for k in range(self.cols))
                    for j in range(other.cols)
                )
                for i in range(self.rows)
            ),
            empty_cols=other.cols if self.rows == 0 else 0,
        )


def int_matrix(rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
    grid = tuple(tuple(int(x) for x in row) for row in rows)
    if not grid:
        if cols is None:
            raise ValueError("empty matrix needs an explicit column count")
        return IntMatrix((), empty_cols=cols)
    return IntMatrix(grid)


def identity_matrix(n: int) -> IntMatrix:
    return IntMatrix(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))


@dataclass(frozen=True)
class AddMultiple:
    """Row op ``row i += c * row j`` (i != j, c != 0)."""

    i: int
    j: int
    c: int

    def __post_init__(self) -> None:
        if self.i == self.j:
            raise ValueError("AddMultiple needs distinct rows")
        if self.c == 0:
            raise ValueError("AddMultiple needs a nonzero multiplier")

    def inverse(self) -> "AddMultiple":
        return AddMultiple(self.i, self.j, -self.c)


@dataclass(frozen=True)
class Swap:
    i: int
    j: int

    def inverse(self) -> "Swap":
        return self


@dataclass(frozen=True)
class Negate:
    i: int

    def inverse(self) -> "Negate":
        return self


ElementaryOp = Union[AddMultiple, Swap, Negate]


@dataclass(frozen=True)
class AbelianGroupInvariants:
    """Invariant factors of a finitely generated abelian group."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError("torsion coefficients must form a divisor chain")
        if any(d < 2 for d in self.torsion):
            raise ValueError("torsion coefficients must be >= 2")

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def det_int(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    grid = [list(row) for row in m.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if grid[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if grid[i][k] != 0), None)
            if pivot is None:
                return 0
            grid[k], grid[pivot] = grid[pivot], grid[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                grid[i][j] = (grid[k][k] * grid[i][j] - grid[i][k] * grid[k][j]) // prev
            grid[i][k] = 0
        prev = grid[k][k]
    return sign * grid[n - 1][n - 1]


def _apply_row_op(grid: list[list[int]], op: ElementaryOp) -> None:
    if isinstance(op, AddMultiple):
        grid[op.i] = [a + op.c * b for a, b in zip(grid[op.i], grid[op.j])]
    elif isinstance(op, Swap):
        grid[op.i], grid[op.j] = grid[op.j], grid[op.i]
    else:
        grid[op.i] = [-a for a in grid[op.i]]


def replay_elementary(ops: Sequence[ElementaryOp], n: int) -> IntMatrix:
    """Product of the elementary matrices, applied in order as left
    multiplications of the identity."""
    grid = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for op in ops:
        indices = (op.i, op.j) if not isinstance(op, Negate) else (op.i,)
        if any(not 0 <= k < n for k in indices):
            raise ValueError(f"row index out of range in {op}")
        _apply_row_op(grid, op)
    return int_matrix(grid)


def factor_glnz(m: IntMatrix) -> tuple[ElementaryOp, ...]:
    """Factor a unimodular matrix into elementary operations.

    Replaying the result (see :func:`replay_elementary`) reproduces the
    input exactly.  Deterministic: Gauss-Jordan with Euclidean gcd
    cascades down each column, pivots processed in order.
    """
    n = m.rows
    if m.rows != m.cols:
        raise ValueError("only square matrices factor into GL(n, Z)")
    if abs(det_int(m)) != 1:
        raise ValueError("matrix is not unimodular")
    grid = [list(row) for row in m.entries]
    applied: list[ElementaryOp] = []

    def do(op: ElementaryOp) -> None:
        _apply_row_op(grid, op)
        applied.append(op)

    for k in range(n):
        # Euclidean cascade: leave a single nonzero entry in column k at
        # or below the diagonal.
        while True:
            live = [i for i in range(k, n) if grid[i][k] != 0]
            if len(live) == 1:
                break
            live.sort(key=lambda i: (abs(grid[i][k]), i))
            small, other = live[0], live[1]
            q = grid[other][k] // grid[small][k]
            if q == 0:
                q = 1 if grid[other][k] * grid[small][k] > 0 else -1
            do(AddMultiple(other, small, -q))
        pivot_row = next(i for i in range(k, n) if grid[i][k] != 0)
        if pivot_row != k:
            do(Swap(k, pivot_row))
        if grid[k][k] < 0:
            do(Negate(k))
        # The pivot is the column gcd, which is 1 for unimodular input.
        assert grid[k][k] == 1, "pivot gcd is not 1; input not unimodular"
        for i in range(n):
            if i != k and grid[i][k] != 0:
                do(AddMultiple(i, k, -grid[i][k]))
    # grid is now the identity: m = applied[0]^-1 ... applied[-1]^-1.
    return tuple(op.inverse() for op in reversed(applied))


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return unimodular (U, S, V) with ``U @ m @ V = S`` diagonal,
    nonnegative, and with each diagonal entry dividing the next.

    Pivoting rule: smallest nonzero absolute value, ties broken by
    (row, column) index, so outputs are deterministic.
    """
    rows, cols = m.rows, m.cols
    grid = [list(row) for row in m.entries]
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def row_add(i: int, j: int, c: int) -> None:
        grid[i] = [a + c * b for a, b in zip(grid[i], grid[j])]
        u[i] = [a + c * b for a, b in zip(u[i], u[j])]

    def row_swap(i: int, j: int) -> None:
        grid[i], grid[j] = grid[j], grid[i]
        u[i], u[j] = u[j], u[i]

    def col_add(i: int, j: int, c: int) -> None:
        # column i += c * column j
        for row in grid:
            row[i] += c * row[j]
        for row in v:
            row[i] += c * row[j]

    def col_swap(i: int, j: int) -> None:
        for row in grid:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def row_negate(i: int) -> None:
        grid[i] = [-a for a in grid[i]]
        u[i] = [-a for a in u[i]]

    k = 0
    while k < min(rows, cols):
        # Locate the smallest nonzero entry in the remaining block.
        best = None
        for i in range(k, rows):
            for j in range(k, cols):
                if grid[i][j] != 0 and (best is None or abs(grid[i][j]) < abs(grid[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i0, j0 = best
        if i0 != k:
            row_swap(k, i0)
        if j0 != k:
            col_swap(k, j0)
        # Clear row and column k; restart if a remainder becomes the new
        # smallest entry.
        dirty = False
        for i in range(k + 1, rows):
            if grid[i][k] != 0:
                q = grid[i][k] // grid[k][k]
                row_add(i, k, -q)
                if grid[i][k] != 0:
                    dirty = True
        for j in range(k + 1, cols):
            if grid[k][j] != 0:
                q = grid[k][j] // grid[k][k]
                col_add(j, k, -q)
                if grid[k][j] != 0:
                    dirty = True
        if dirty:
            continue
        # Enforce divisibility of the remaining block by the pivot.
        pivot = grid[k][k]
        offender = None
        for i in range(k + 1, rows):
            for j in range(k + 1, cols):
                if grid[i][j] % pivot != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_add(k, offender, 1)
            continue
        if pivot < 0:
            row_negate(k)
        k += 1
    return int_matrix(u, cols=rows), int_matrix(grid, cols=cols), int_matrix(v, cols=cols)


def diagonal_of(s: IntMatrix) -> tuple[int, ...]:
    return tuple(s.entries[i][i] for i in range(min(s.rows, s.cols)))


def cokernel_invariants(m: IntMatrix) -> AbelianGroupInvariants:
    """Invariants of ``Z^cols / row-span(m)`` (rows are relations)."""
    _, s, _ = smith_normal_form(m)
    diag = diagonal_of(s)
    nonzero = [d for d in diag if d != 0]
    return AbelianGroupInvariants(
        free_rank=m.cols - len(nonzero),
        torsion=tuple(d for d in nonzero if d >= 2),
    )


def parse_matrix(text: str) -> IntMatrix:
    """Parse the matrix file format: ``rows cols`` header then rows of
    whitespace-separated integers; ``#`` starts a comment line."""
    lines = [ln for ln in (raw.split("#", 1)[0].strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise ValueError("empty matrix file")
    try:
        rows, cols = (int(tok) for tok in lines[0].split())
    except ValueError:
        raise ValueError(f"bad matrix header {lines[0]!r}")
    if len(lines) - 1 != rows:
        raise ValueError(f"expected {rows} matrix rows, found {len(lines) - 1}")
    grid = []
    for ln in lines[1:]:
        try:
            row = [int(tok) for tok in ln.split()]
        except ValueError:
            raise ValueError(f"non-integer matrix entry in {ln!r}")
        if len(row) != cols:
            raise ValueError(f"expected {cols} entries in row {ln!r}")
        grid.append(row)
    return int_matrix(grid, cols=cols)


def format_matrix(m: IntMatrix) -> str:
    lines = [f"{m.rows} {m.cols}"]
    lines.extend(" ".join(str(x) for x in row) for row in m.entries)
    return "\n".join(lines) + "\n"
