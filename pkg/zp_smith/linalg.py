"""
ZP-Smith Exact Linear Algebra

Sparse integer matrices, the Smith normal form with unimodular transforms,
and exact linear solving over Z and Z/n.

Features:
- Sparse arbitrary-precision integer matrices
- Smith normal form D = V·S·U with tracked transforms
- Solving and image membership over Z and Z/n via the normal form
- Storage estimation against a configurable memory cap
"""

import logging
from math import gcd

from zp_smith.conf import smith_settings

logger = logging.getLogger("zp_smith")

# Rough CPython cost of one stored entry (two dict slots plus an int object)
ENTRY_BYTES = 112

# Pivots eliminated between two storage estimates
MEMORY_CHECK_INTERVAL = 32


class MemoryCapExceeded(MemoryError):
    """Estimated matrix storage went above the configured cap."""

    def __init__(self, estimate, cap):
        self.estimate = estimate
        self.cap = cap
        super().__init__(f"estimated matrix storage {estimate} bytes exceeds cap {cap} bytes")


class IntMatrix:
    """
    Sparse integer matrix.

    Entries are held row-major in a dict of dicts; zero entries are never
    stored. Instances are treated as immutable once built.

    Example:
        >>> D = IntMatrix.from_rows([[2, 4], [6, 8]])
        >>> D.get(1, 0)
        6
        >>> D.apply([1, 1])
        [6, 14]
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows, cols, entries=None):
        if rows < 0 or cols < 0:
            raise ValueError(f"Matrix shape must be non-negative, got {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        self._data = {}
        for (r, c), value in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise ValueError(f"Entry ({r}, {c}) outside a {rows}x{cols} matrix")
            value = int(value)
            if value:
                self._data.setdefault(r, {})[c] = value

    @classmethod
    def _wrap(cls, rows, cols, data):
        matrix = cls.__new__(cls)
        matrix.rows = rows
        matrix.cols = cols
        matrix._data = {r: row for r, row in data.items() if row}
        return matrix

    @classmethod
    def from_rows(cls, dense_rows, cols=None):
        """Build from a list of dense rows; `cols` is needed only for zero rows."""
        if cols is None:
            cols = len(dense_rows[0]) if dense_rows else 0
        data = {}
        for r, row in enumerate(dense_rows):
            if len(row) != cols:
                raise ValueError(f"Row {r} has {len(row)} entries, expected {cols}")
            entries = {c: int(v) for c, v in enumerate(row) if v}
            if entries:
                data[r] = entries
        return cls._wrap(len(dense_rows), cols, data)

    @classmethod
    def from_row_dicts(cls, rows, cols, row_dicts):
        """Build from {row: {col: value}} without copying entry dicts twice."""
        data = {}
        for r, row in row_dicts.items():
            entries = {c: v for c, v in row.items() if v}
            if entries:
                data[r] = entries
        return cls._wrap(rows, cols, data)

    @classmethod
    def identity(cls, n):
        return cls._wrap(n, n, {i: {i: 1} for i in range(n)})

    @classmethod
    def zeros(cls, rows, cols):
        return cls._wrap(rows, cols, {})

    @property
    def entries(self):
        return {(r, c): v for r, row in self._data.items() for c, v in row.items()}

    @property
    def nnz(self):
        return sum(len(row) for row in self._data.values())

    @property
    def shape(self):
        return (self.rows, self.cols)

    def get(self, r, c):
        row = self._data.get(r)
        return row.get(c, 0) if row else 0

    def row(self, r):
        """Copy of row `r` as {col: value}."""
        return dict(self._data.get(r, {}))

    def row_items(self):
        """Iterate (row index, {col: value}) over nonzero rows in index order."""
        for r in sorted(self._data):
            yield r, self._data[r]

    def to_dense(self):
        dense = [[0] * self.cols for _ in range(self.rows)]
        for r, row in self._data.items():
            for c, v in row.items():
                dense[r][c] = v
        return dense

    def transpose(self):
        data = {}
        for r, row in self._data.items():
            for c, v in row.items():
                data.setdefault(c, {})[r] = v
        return IntMatrix._wrap(self.cols, self.rows, data)

    def apply(self, vector):
        """Matrix times dense column vector."""
        if len(vector) != self.cols:
            raise ValueError(f"Vector of length {len(vector)} does not fit {self.cols} columns")
        result = [0] * self.rows
        for r, row in self._data.items():
            total = 0
            for c, v in row.items():
                x = vector[c]
                if x:
                    total += v * x
            result[r] = total
        return result

    def apply_left(self, vector):
        """Dense row vector times matrix."""
        if len(vector) != self.rows:
            raise ValueError(f"Vector of length {len(vector)} does not fit {self.rows} rows")
        result = [0] * self.cols
        for r, row in self._data.items():
            x = vector[r]
            if x:
                for c, v in row.items():
                    result[c] += x * v
        return result

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"Cannot multiply {self.shape} by {other.shape}")
        data = {}
        for r, row in self._data.items():
            out = {}
            for k, a in row.items():
                other_row = other._data.get(k)
                if not other_row:
                    continue
                for c, b in other_row.items():
                    out[c] = out.get(c, 0) + a * b
            out = {c: v for c, v in out.items() if v}
            if out:
                data[r] = out
        return IntMatrix._wrap(self.rows, other.cols, data)

    def __neg__(self):
        data = {r: {c: -v for c, v in row.items()} for r, row in self._data.items()}
        return IntMatrix._wrap(self.rows, self.cols, data)

    def scaled(self, factor):
        if not factor:
            return IntMatrix.zeros(self.rows, self.cols)
        return IntMatrix._wrap(
            self.rows,
            self.cols,
            {r: {c: factor * v for c, v in row.items()} for r, row in self._data.items()},
        )

    def is_zero(self, modulus=None):
        if modulus is None:
            return not self._data
        return all(v % modulus == 0 for row in self._data.values() for v in row.values())

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self.entries.items())))

    def __repr__(self):
        return f"IntMatrix({self.rows}x{self.cols}, nnz={self.nnz})"


class SnfDecomposition:
    """
    Smith normal form of D with its transforms.

    `left` and `right` are the unimodular P, Q with P·D·Q = S; `V` and `U` are
    their inverses, so D = V·S·U. The inverses are only present when requested.
    """

    def __init__(self, S, left, right, V=None, U=None):
        self.S = S
        self.left = left
        self.right = right
        self.V = V
        self.U = U
        self.diagonal = tuple(S.get(i, i) for i in range(min(S.rows, S.cols)))

    @property
    def rank(self):
        return sum(1 for s in self.diagonal if s)

    @property
    def invariant_factors(self):
        return tuple(s for s in self.diagonal if s)

    def __repr__(self):
        return f"SnfDecomposition(shape={self.S.shape}, invariant_factors={self.invariant_factors})"


class _Workspace:
    """Sparse matrix indexed by rows and by columns, used during elimination."""

    __slots__ = ("rows", "cols", "nnz")

    def __init__(self):
        self.rows = {}
        self.cols = {}
        self.nnz = 0

    @classmethod
    def from_matrix(cls, matrix):
        work = cls()
        for r, row in matrix.row_items():
            for c, v in row.items():
                work.put(r, c, v)
        return work

    @classmethod
    def identity(cls, n):
        work = cls()
        for i in range(n):
            work.put(i, i, 1)
        return work

    def get(self, r, c):
        row = self.rows.get(r)
        return row.get(c, 0) if row else 0

    def put(self, r, c, value):
        row = self.rows.get(r)
        if value:
            if row is None:
                row = self.rows[r] = {}
            if c not in row:
                self.nnz += 1
            row[c] = value
            col = self.cols.get(c)
            if col is None:
                col = self.cols[c] = {}
            col[r] = value
        elif row is not None and c in row:
            del row[c]
            if not row:
                del self.rows[r]
            col = self.cols[c]
            del col[r]
            if not col:
                del self.cols[c]
            self.nnz -= 1

    def _add_row(self, target, source, factor):
        for c, v in list(self.rows.get(source, {}).items()):
            self.put(target, c, self.get(target, c) + factor * v)

    def _add_col(self, target, source, factor):
        for r, v in list(self.cols.get(source, {}).items()):
            self.put(r, target, self.get(r, target) + factor * v)

    def combine_rows(self, i, j, a, b, c, d):
        """Replace rows i, j by a·r_i + b·r_j and c·r_i + d·r_j."""
        if (a, c, d) == (1, 0, 1):
            if b:
                self._add_row(i, j, b)
            return
        if (a, b, d) == (1, 0, 1):
            if c:
                self._add_row(j, i, c)
            return
        row_i = dict(self.rows.get(i, {}))
        row_j = dict(self.rows.get(j, {}))
        for k in set(row_i) | set(row_j):
            x = row_i.get(k, 0)
            y = row_j.get(k, 0)
            self.put(i, k, a * x + b * y)
            self.put(j, k, c * x + d * y)

    def combine_cols(self, i, j, a, b, c, d):
        """Replace columns i, j by a·c_i + b·c_j and c·c_i + d·c_j."""
        if (a, c, d) == (1, 0, 1):
            if b:
                self._add_col(i, j, b)
            return
        if (a, b, d) == (1, 0, 1):
            if c:
                self._add_col(j, i, c)
            return
        col_i = dict(self.cols.get(i, {}))
        col_j = dict(self.cols.get(j, {}))
        for k in set(col_i) | set(col_j):
            x = col_i.get(k, 0)
            y = col_j.get(k, 0)
            self.put(k, i, a * x + b * y)
            self.put(k, j, c * x + d * y)

    def negate_row(self, i):
        for c, v in list(self.rows.get(i, {}).items()):
            self.put(i, c, -v)

    def negate_col(self, i):
        for r, v in list(self.cols.get(i, {}).items()):
            self.put(r, i, -v)

    def to_matrix(self, rows, cols):
        return IntMatrix.from_row_dicts(rows, cols, self.rows)


def _extended_gcd(a, b):
    """Return (g, x, y) with x·a + y·b = g = gcd(a, b) ≥ 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        return -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def _nearest_quotient(a, v):
    q, rem = divmod(a, v)
    if 2 * abs(rem) > abs(v):
        q += 1
    return q


class _Reduction:
    """One Smith normal form run with transform bookkeeping."""

    def __init__(self, matrix, inverses, memory_cap):
        self.m = matrix.rows
        self.n = matrix.cols
        self.memory_cap = memory_cap
        self.work = _Workspace.from_matrix(matrix)
        self.left = _Workspace.identity(self.m)
        self.right = _Workspace.identity(self.n)
        self.left_inv = _Workspace.identity(self.m) if inverses else None
        self.right_inv = _Workspace.identity(self.n) if inverses else None

    def estimate_bytes(self):
        total = self.work.nnz + self.left.nnz + self.right.nnz
        if self.left_inv is not None:
            total += self.left_inv.nnz + self.right_inv.nnz
        return total * ENTRY_BYTES

    def check_memory(self):
        if self.memory_cap is None:
            return
        estimate = self.estimate_bytes()
        logger.debug("snf_memory_estimate", extra={"bytes": estimate, "cap": self.memory_cap})
        if estimate > self.memory_cap:
            raise MemoryCapExceeded(estimate, self.memory_cap)

    def row_op(self, i, j, a, b, c, d):
        self.work.combine_rows(i, j, a, b, c, d)
        self.left.combine_rows(i, j, a, b, c, d)
        if self.left_inv is not None:
            e = a * d - b * c
            self.left_inv.combine_cols(i, j, e * d, -e * c, -e * b, e * a)

    def col_op(self, i, j, a, b, c, d):
        self.work.combine_cols(i, j, a, b, c, d)
        self.right.combine_cols(i, j, a, b, c, d)
        if self.right_inv is not None:
            e = a * d - b * c
            self.right_inv.combine_rows(i, j, e * d, -e * c, -e * b, e * a)

    def swap_rows(self, i, j):
        if i != j:
            self.row_op(i, j, 0, 1, 1, 0)

    def swap_cols(self, i, j):
        if i != j:
            self.col_op(i, j, 0, 1, 1, 0)

    def negate_row(self, i):
        self.work.negate_row(i)
        self.left.negate_row(i)
        if self.left_inv is not None:
            self.left_inv.negate_col(i)

    def choose_pivot(self, t):
        """Minimal |entry|, then minimal fill-in, then lowest (row, col)."""
        work = self.work
        best = None
        for r, row in work.rows.items():
            if r < t:
                continue
            row_fill = len(row) - 1
            for c, v in row.items():
                key = (abs(v), row_fill * (len(work.cols[c]) - 1), r, c)
                if best is None or key < best:
                    best = key
                    if key[0] == 1 and key[1] == 0:
                        return r, c
        return (best[2], best[3]) if best else None

    def eliminate(self, t):
        work = self.work
        while True:
            v = work.get(t, t)
            for r, a in sorted(work.cols.get(t, {}).items()):
                if r != t:
                    q = _nearest_quotient(a, v)
                    if q:
                        self.row_op(r, t, 1, -q, 0, 1)
            for c, a in sorted(work.rows.get(t, {}).items()):
                if c != t:
                    q = _nearest_quotient(a, v)
                    if q:
                        self.col_op(c, t, 1, -q, 0, 1)
            rest = [(abs(a), r, t) for r, a in work.cols.get(t, {}).items() if r != t]
            rest += [(abs(a), t, c) for c, a in work.rows.get(t, {}).items() if c != t]
            if not rest:
                return
            _, r, c = min(rest)
            if c == t:
                self.swap_rows(t, r)
            else:
                self.swap_cols(t, c)

    def run(self):
        self.check_memory()
        t = 0
        while t < min(self.m, self.n):
            pivot = self.choose_pivot(t)
            if pivot is None:
                break
            r, c = pivot
            self.swap_rows(t, r)
            self.swap_cols(t, c)
            self.eliminate(t)
            t += 1
            if t % MEMORY_CHECK_INTERVAL == 0:
                self.check_memory()
        rank = t
        self.fix_divisibility(rank)
        for i in range(rank):
            if self.work.get(i, i) < 0:
                self.negate_row(i)
        logger.debug("snf_done", extra={"shape": (self.m, self.n), "rank": rank})

    def fix_divisibility(self, rank):
        work = self.work
        for i in range(rank):
            for j in range(i + 1, rank):
                a = work.get(i, i)
                b = work.get(j, j)
                if b % a == 0:
                    continue
                g, x, y = _extended_gcd(a, b)
                # [[a, 0], [0, b]] -> [[g, 0], [0, ab/g]]
                self.row_op(i, j, 1, 1, 0, 1)
                self.col_op(i, j, x, y, -(b // g), a // g)
                self.row_op(j, i, 1, -(y * b // g), 0, 1)

    def result(self):
        S = self.work.to_matrix(self.m, self.n)
        left = self.left.to_matrix(self.m, self.m)
        right = self.right.to_matrix(self.n, self.n)
        V = U = None
        if self.left_inv is not None:
            V = self.left_inv.to_matrix(self.m, self.m)
            U = self.right_inv.to_matrix(self.n, self.n)
        return SnfDecomposition(S, left, right, V=V, U=U)


def snf(D, inverses=True, memory_cap=None):
    """
    Compute the Smith normal form of an integer matrix.

    Args:
        D: IntMatrix to reduce
        inverses: Also track V, U with D = V·S·U (P, Q are always tracked)
        memory_cap: Byte cap on estimated storage; defaults to MEMORY_CAP setting

    Returns:
        SnfDecomposition

    Raises:
        MemoryCapExceeded: If the estimated storage passes the cap

    Examples:
        >>> snf(IntMatrix.from_rows([[2, 4], [6, 8]])).diagonal
        (2, 4)
    """
    if memory_cap is None:
        memory_cap = smith_settings.MEMORY_CAP
    reduction = _Reduction(D, inverses, memory_cap)
    reduction.run()
    return reduction.result()


def solve(A, b, modulus=None, decomposition=None):
    """
    Solve A·x = b over Z, or A·x ≡ b (mod modulus).

    Args:
        A: IntMatrix
        b: Dense integer vector of length A.rows
        modulus: Positive integer, or None for exact integer solving
        decomposition: Optional precomputed snf(A)

    Returns:
        Dense solution vector, or None when no solution exists

    Examples:
        >>> solve(IntMatrix.from_rows([[2]]), [4])
        [2]
        >>> solve(IntMatrix.from_rows([[2]]), [1]) is None
        True
        >>> solve(IntMatrix.from_rows([[2]]), [1], modulus=3)
        [2]
    """
    if len(b) != A.rows:
        raise ValueError(f"Right-hand side of length {len(b)} does not fit {A.rows} rows")
    if modulus is not None and modulus < 1:
        raise ValueError(f"Modulus must be positive, got {modulus}")
    dec = decomposition or snf(A, inverses=False)
    pb = dec.left.apply(list(b))
    y = [0] * A.cols
    for i, value in enumerate(pb):
        s = dec.diagonal[i] if i < len(dec.diagonal) else 0
        if modulus is None:
            if s == 0:
                if value:
                    return None
                continue
            q, rem = divmod(value, s)
            if rem:
                return None
            y[i] = q
        else:
            g = gcd(s, modulus)
            if value % g:
                return None
            reduced = modulus // g
            if reduced > 1:
                y[i] = (value // g) * pow(s // g, -1, reduced) % reduced
    x = dec.right.apply(y)
    if modulus is not None:
        x = [v % modulus for v in x]
    check = A.apply(x)
    if modulus is None:
        ok = check == list(b)
    else:
        ok = all((u - v) % modulus == 0 for u, v in zip(check, b))
    if not ok:
        raise ArithmeticError("Back-substitution failed for a Smith normal form solution")
    return x


def image_membership(A, v, modulus=None, decomposition=None):
    """
    Decide whether v lies in the image of A (optionally modulo `modulus`).

    Returns:
        A witness x with A·x = v (or ≡ v), or None when v is not in the image
    """
    return solve(A, v, modulus=modulus, decomposition=decomposition)
