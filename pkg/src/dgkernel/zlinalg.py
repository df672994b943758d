"""Exact integer linear algebra.

Smith normal form, integer solving, kernels, cokernels, and finitely
presented abelian groups.  Every morphism in the rest of the package is
ultimately a dense matrix of arbitrary-precision Python integers, and
every homological computation reduces to the routines here.

Matrices are immutable; 0xN and Nx0 matrices are valid and behave as
zero maps.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence


class ShapeMismatch(ValueError):
    """Operands have incompatible dimensions."""


class IntMatrix:
    """Immutable dense integer matrix, row-major."""

    __slots__ = ("rows", "cols", "_e")

    def __init__(self, rows: int, cols: int, entries: Iterable[int]):
        if rows < 0 or cols < 0:
            raise ShapeMismatch(f"negative dimensions {rows}x{cols}")
        e = tuple(int(x) for x in entries)
        if len(e) != rows * cols:
            raise ShapeMismatch(
                f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(e)}"
            )
        self.rows = rows
        self.cols = cols
        self._e = e

    # -- construction -------------------------------------------------

    @classmethod
    def from_rows(cls, rows_list: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        rows = len(rows_list)
        if rows == 0:
            return cls(0, 0 if cols is None else cols, ())
        width = len(rows_list[0])
        if cols is not None and cols != width:
            raise ShapeMismatch("explicit cols disagrees with row width")
        flat = []
        for r in rows_list:
            if len(r) != width:
                raise ShapeMismatch("ragged rows")
            flat.extend(r)
        return cls(rows, width, flat)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def diagonal(cls, entries: Sequence[int], rows: Optional[int] = None, cols: Optional[int] = None) -> "IntMatrix":
        k = len(entries)
        rows = k if rows is None else rows
        cols = k if cols is None else cols
        m = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(entries):
            m[i][i] = int(d)
        return cls.from_rows(m, cols)

    @classmethod
    def column(cls, entries: Sequence[int]) -> "IntMatrix":
        return cls(len(entries), 1, entries)

    # -- access -------------------------------------------------------

    def __getitem__(self, ij) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"({i},{j}) out of range for {self.rows}x{self.cols}")
        return self._e[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self._e[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return self._e[j :: self.cols] if self.cols else ()

    def entries(self) -> tuple:
        return self._e

    def to_lists(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self._e)

    def is_square(self) -> bool:
        return self.rows == self.cols

    # -- algebra ------------------------------------------------------

    def _check_same_shape(self, other: "IntMatrix"):
        if self.shape != other.shape:
            raise ShapeMismatch(f"shape {self.shape} vs {other.shape}")

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same_shape(other)
        return IntMatrix(self.rows, self.cols, (a + b for a, b in zip(self._e, other._e)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same_shape(other)
        return IntMatrix(self.rows, self.cols, (a - b for a, b in zip(self._e, other._e)))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, (-a for a in self._e))

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, (c * a for a in self._e))

    def __rmul__(self, c: int) -> "IntMatrix":
        if not isinstance(c, int):
            return NotImplemented
        return self.scale(c)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ShapeMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        n, k, m = self.rows, self.cols, other.cols
        out = [0] * (n * m)
        se, oe = self._e, other._e
        for i in range(n):
            base = i * k
            for t in range(k):
                a = se[base + t]
                if a:
                    ob = t * m
                    rb = i * m
                    for j in range(m):
                        out[rb + j] += a * oe[ob + j]
        return IntMatrix(n, m, out)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         (self._e[i * self.cols + j]
                          for j in range(self.cols) for i in range(self.rows)))

    def apply(self, vec: Sequence[int]) -> tuple:
        """Matrix times column vector, returned as a tuple."""
        if len(vec) != self.cols:
            raise ShapeMismatch(f"vector length {len(vec)} vs {self.cols} columns")
        return tuple(
            sum(self._e[i * self.cols + j] * vec[j] for j in range(self.cols))
            for i in range(self.rows)
        )

    def select_rows(self, idx: Sequence[int]) -> "IntMatrix":
        flat = []
        for i in idx:
            flat.extend(self.row(i))
        return IntMatrix(len(idx), self.cols, flat)

    def select_cols(self, idx: Sequence[int]) -> "IntMatrix":
        flat = []
        for i in range(self.rows):
            r = self.row(i)
            flat.extend(r[j] for j in idx)
        return IntMatrix(self.rows, len(idx), flat)

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ShapeMismatch("hstack needs equal row counts")
        flat = []
        for i in range(self.rows):
            flat.extend(self.row(i))
            flat.extend(other.row(i))
        return IntMatrix(self.rows, self.cols + other.cols, flat)

    def vstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.cols:
            raise ShapeMismatch("vstack needs equal column counts")
        return IntMatrix(self.rows + other.rows, self.cols, self._e + other._e)

    # -- dunder housekeeping -------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._e == other._e

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._e))

    def __repr__(self) -> str:
        if self.rows * self.cols == 0:
            return f"IntMatrix({self.rows}, {self.cols}, ())"
        return "IntMatrix.from_rows(%r)" % (self.to_lists(),)


def block_matrix(blocks: Sequence[Sequence[IntMatrix]]) -> IntMatrix:
    """Assemble a matrix from a 2D grid of blocks with consistent sizes."""
    if not blocks:
        return IntMatrix.zeros(0, 0)
    row_heights = [r[0].rows for r in blocks]
    col_widths = [b.cols for b in blocks[0]]
    for r in blocks:
        if len(r) != len(col_widths):
            raise ShapeMismatch("ragged block grid")
        for b, w in zip(r, col_widths):
            if b.cols != w:
                raise ShapeMismatch("inconsistent block widths")
        if any(b.rows != r[0].rows for b in r):
            raise ShapeMismatch("inconsistent block heights")
    flat = []
    for r in blocks:
        for i in range(r[0].rows):
            for b in r:
                flat.extend(b.row(i))
    return IntMatrix(sum(row_heights), sum(col_widths), flat)


def block_diagonal(blocks: Sequence[IntMatrix]) -> IntMatrix:
    grid = []
    for i, b in enumerate(blocks):
        grid.append([
            b if i == j else IntMatrix.zeros(b.rows, blocks[j].cols)
            for j in range(len(blocks))
        ])
    return block_matrix(grid) if grid else IntMatrix.zeros(0, 0)


def determinant(m: IntMatrix) -> int:
    """Exact determinant via fraction-free (Bareiss) elimination."""
    if not m.is_square():
        raise ShapeMismatch("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.to_lists()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


class SmithDecomposition:
    """U @ M @ V == D with U, V unimodular and D in Smith normal form.

    D is canonical for M; U and V are not, and must never be compared
    across implementations.
    """

    __slots__ = ("U", "D", "V", "source")

    def __init__(self, U: IntMatrix, D: IntMatrix, V: IntMatrix, source: IntMatrix):
        self.U = U
        self.D = D
        self.V = V
        self.source = source

    @property
    def diagonal(self) -> tuple:
        return tuple(self.D[i, i] for i in range(min(self.D.rows, self.D.cols)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    @property
    def invariant_factors(self) -> tuple:
        """Nonzero diagonal entries, in divisibility order."""
        return tuple(d for d in self.diagonal if d != 0)

    def __repr__(self) -> str:
        return f"SmithDecomposition(diagonal={list(self.diagonal)})"


def _find_pivot(a, k, m, n):
    # Nonzero entry of least absolute value in the trailing submatrix,
    # ties broken by lowest (row, col).
    best = None
    for i in range(k, m):
        ai = a[i]
        for j in range(k, n):
            v = ai[j]
            if v:
                av = abs(v)
                if best is None or av < best[0]:
                    best = (av, i, j)
                    if av == 1:
                        return best
    return best


def smith_normal_form(m: IntMatrix) -> SmithDecomposition:
    """Smith normal form over the integers.

    Pivot rule: nonzero entry of least absolute value, ties broken by
    lowest (row, col); this makes the reduction deterministic.
    """
    rows, cols = m.rows, m.cols
    a = m.to_lists()
    u = IntMatrix.identity(rows).to_lists()
    v = IntMatrix.identity(cols).to_lists()

    def add_row(dst, src, c):
        # row_dst += c * row_src  (applied to A and U alike)
        ad, as_ = a[dst], a[src]
        for j in range(cols):
            ad[j] += c * as_[j]
        ud, us = u[dst], u[src]
        for j in range(rows):
            ud[j] += c * us[j]

    def add_col(dst, src, c):
        for i in range(rows):
            a[i][dst] += c * a[i][src]
        for i in range(cols):
            v[i][dst] += c * v[i][src]

    def swap_rows(i1, i2):
        if i1 != i2:
            a[i1], a[i2] = a[i2], a[i1]
            u[i1], u[i2] = u[i2], u[i1]

    def swap_cols(j1, j2):
        if j1 != j2:
            for r in a:
                r[j1], r[j2] = r[j2], r[j1]
            for r in v:
                r[j1], r[j2] = r[j2], r[j1]

    for k in range(min(rows, cols)):
        while True:
            piv = _find_pivot(a, k, rows, cols)
            if piv is None:
                break
            _, pi, pj = piv
            swap_rows(k, pi)
            swap_cols(k, pj)
            pivot = a[k][k]
            clean = True
            for i in range(k + 1, rows):
                if a[i][k]:
                    add_row(i, k, -(a[i][k] // pivot))
                    if a[i][k]:
                        clean = False
            for j in range(k + 1, cols):
                if a[k][j]:
                    add_col(j, k, -(a[k][j] // pivot))
                    if a[k][j]:
                        clean = False
            if not clean:
                continue  # leftover remainders give a strictly smaller pivot
            # Pivot must divide the whole trailing submatrix so the
            # divisibility chain holds; drag an offending row up if not.
            bad_row = None
            for i in range(k + 1, rows):
                ai = a[i]
                if any(ai[j] % pivot for j in range(k + 1, cols)):
                    bad_row = i
                    break
            if bad_row is None:
                break
            add_row(k, bad_row, 1)
        if _find_pivot(a, k, rows, cols) is None:
            break

    # Normalize signs on the diagonal.
    for k in range(min(rows, cols)):
        if a[k][k] < 0:
            for j in range(cols):
                a[k][j] = -a[k][j]
            for j in range(rows):
                u[k][j] = -u[k][j]

    return SmithDecomposition(
        IntMatrix.from_rows(u, rows),
        IntMatrix.from_rows(a, cols),
        IntMatrix.from_rows(v, cols),
        m,
    )


def rank(m: IntMatrix) -> int:
    return smith_normal_form(m).rank


def inverse_unimodular(m: IntMatrix) -> IntMatrix:
    """Integer inverse of a unimodular matrix (via U @ M @ V = I)."""
    if not m.is_square():
        raise ShapeMismatch("inverse of a non-square matrix")
    s = smith_normal_form(m)
    if s.D != IntMatrix.identity(m.rows):
        raise ValueError("matrix is not unimodular")
    return s.V @ s.U


def solve(m: IntMatrix, b: Sequence[int]) -> Optional[tuple]:
    """One integer solution x of m @ x = b, or None if there is none."""
    if len(b) != m.rows:
        raise ShapeMismatch(f"rhs length {len(b)} vs {m.rows} rows")
    return solve_with(smith_normal_form(m), b)


def solve_with(s: SmithDecomposition, b: Sequence[int]) -> Optional[tuple]:
    """Like :func:`solve` but reusing a precomputed decomposition."""
    c = s.U.apply(b)
    d = s.diagonal
    r = s.rank
    z = [0] * s.V.rows
    for i, ci in enumerate(c):
        if i < r:
            if ci % d[i]:
                return None
            z[i] = ci // d[i]
        elif ci:
            return None
    return s.V.apply(z)


def solve_matrix(m: IntMatrix, b: IntMatrix) -> Optional[IntMatrix]:
    """Integer X with m @ X = b, or None; solved column by column."""
    if b.rows != m.rows:
        raise ShapeMismatch("rhs row count mismatch")
    s = smith_normal_form(m)
    cols = []
    for j in range(b.cols):
        x = solve_with(s, b.col(j))
        if x is None:
            return None
        cols.append(x)
    return IntMatrix(m.cols, b.cols,
                     (cols[j][i] for i in range(m.cols) for j in range(b.cols)))


def solve_left(m: IntMatrix, b: IntMatrix) -> Optional[IntMatrix]:
    """Integer X with X @ m = b, or None."""
    xt = solve_matrix(m.transpose(), b.transpose())
    return None if xt is None else xt.transpose()


def kernel_basis(m: IntMatrix) -> IntMatrix:
    """Columns form a basis of the integer kernel of m."""
    s = smith_normal_form(m)
    r = s.rank
    return s.V.select_cols(range(r, m.cols))


class FPAbGroup:
    """Finitely presented abelian group in canonical invariant-factor form.

    Presented by an integer matrix whose columns are relations on the
    generators; the canonical form Z^free_rank + Z/t_1 + ... (t_i | t_{i+1},
    all > 1) is derived by Smith normal form.  Equality is canonical-form
    equality, i.e. isomorphism.
    """

    __slots__ = ("free_rank", "torsion", "presentation", "_snf")

    def __init__(self, presentation: IntMatrix):
        self.presentation = presentation
        s = smith_normal_form(presentation)
        self._snf = s
        self.free_rank = presentation.rows - s.rank
        self.torsion = tuple(d for d in s.invariant_factors if d > 1)

    @classmethod
    def canonical(cls, free_rank: int, torsion: Sequence[int] = ()) -> "FPAbGroup":
        torsion = tuple(int(t) for t in torsion)
        for t, t2 in zip(torsion, torsion[1:]):
            if t <= 1 or t2 % t:
                raise ValueError(f"not an invariant-factor chain: {torsion}")
        if torsion and torsion[-1] <= 1:
            raise ValueError(f"invariant factors must exceed 1: {torsion}")
        gens = free_rank + len(torsion)
        pres = IntMatrix.diagonal(torsion, rows=gens, cols=len(torsion))
        return cls(pres)

    @classmethod
    def free(cls, n: int) -> "FPAbGroup":
        return cls.canonical(n)

    @classmethod
    def zero(cls) -> "FPAbGroup":
        return cls.canonical(0)

    @property
    def generator_count(self) -> int:
        return self.presentation.rows

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def is_free(self) -> bool:
        return not self.torsion

    def element_equal(self, x: Sequence[int], y: Sequence[int]) -> bool:
        """Whether x and y present the same element (x - y a relation)."""
        if len(x) != self.generator_count or len(y) != self.generator_count:
            raise ShapeMismatch("element length differs from generator count")
        diff = [a - b for a, b in zip(x, y)]
        return solve_with(self._snf, diff) is not None

    def __eq__(self, other) -> bool:
        if not isinstance(other, FPAbGroup):
            return NotImplemented
        return self.free_rank == other.free_rank and self.torsion == other.torsion

    def __hash__(self) -> int:
        return hash((self.free_rank, self.torsion))

    def __repr__(self) -> str:
        return f"FPAbGroup({self.describe()})"

    def describe(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"


def element_equal(group: FPAbGroup, x: Sequence[int], y: Sequence[int]) -> bool:
    return group.element_equal(x, y)


class CokernelData:
    """Cokernel of an integer matrix, with the quotient projection.

    `group` is the canonical form of target/im(m); `projection` maps
    ambient coordinates onto the canonical generators (torsion
    generators first, then free ones); `section` picks representatives,
    with projection @ section the identity on generators.
    """

    __slots__ = ("group", "projection", "section")

    def __init__(self, group: FPAbGroup, projection: IntMatrix, section: IntMatrix):
        self.group = group
        self.projection = projection
        self.section = section

    def __repr__(self) -> str:
        return f"CokernelData({self.group.describe()})"


def cokernel(m: IntMatrix) -> CokernelData:
    s = smith_normal_form(m)
    d = s.diagonal
    torsion_rows = [i for i, di in enumerate(d) if di > 1]
    free_rows = list(range(s.rank, m.rows))
    group = FPAbGroup.canonical(len(free_rows), [d[i] for i in torsion_rows])
    projection = s.U.select_rows(torsion_rows + free_rows)
    section = inverse_unimodular(s.U).select_cols(torsion_rows + free_rows)
    return CokernelData(group, projection, section)


def image_saturation_basis(m: IntMatrix) -> IntMatrix:
    """Columns form a basis of im(m) viewed inside Z^rows (not saturated)."""
    s = smith_normal_form(m)
    uinv = inverse_unimodular(s.U)
    cols = []
    for i in range(s.rank):
        cols.append(tuple(uinv[r, i] * s.D[i, i] for r in range(m.rows)))
    return IntMatrix(m.rows, len(cols),
                     (cols[j][i] for i in range(m.rows) for j in range(len(cols))))
