"""Sparse matrices with arbitrary-precision integer entries."""

from __future__ import annotations

from ..errors import NonSquare


class SparseIntMatrix:
    """Immutable ``rows x cols`` integer matrix stored as a dict of rows.

    Zero entries are never stored.  Equality compares dimensions and entries.
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows, cols, entries=None):
        if rows < 0 or cols < 0:
            raise ValueError("negative dimension")
        data = {}
        if entries:
            items = entries.items() if isinstance(entries, dict) else entries
            for (r, c), v in items:
                if not (0 <= r < rows and 0 <= c < cols):
                    raise IndexError(f"entry ({r}, {c}) outside {rows}x{cols}")
                if v:
                    row = data.setdefault(r, {})
                    row[c] = row.get(c, 0) + v
                    if row[c] == 0:
                        del row[c]
                        if not row:
                            del data[r]
        self.rows = rows
        self.cols = cols
        self._data = data

    # -- constructors --------------------------------------------------------

    @classmethod
    def zeros(cls, rows, cols=None):
        return cls(rows, rows if cols is None else cols)

    @classmethod
    def identity(cls, n, scale=1):
        return cls(n, n, {(i, i): scale for i in range(n)})

    @classmethod
    def from_dense(cls, rows):
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v})

    @classmethod
    def _from_data(cls, rows, cols, data):
        m = cls.__new__(cls)
        m.rows, m.cols, m._data = rows, cols, data
        return m

    # -- queries -------------------------------------------------------------

    @property
    def shape(self):
        return (self.rows, self.cols)

    def is_square(self):
        return self.rows == self.cols

    def __getitem__(self, rc):
        r, c = rc
        return self._data.get(r, {}).get(c, 0)

    def row(self, r):
        """Mapping ``col -> value`` of nonzero entries of row ``r`` (read-only use)."""
        return self._data.get(r, {})

    def items(self):
        for r in sorted(self._data):
            row = self._data[r]
            for c in sorted(row):
                yield (r, c), row[c]

    def nnz(self):
        return sum(len(row) for row in self._data.values())

    def to_dense(self):
        out = [[0] * self.cols for _ in range(self.rows)]
        for r, row in self._data.items():
            for c, v in row.items():
                out[r][c] = v
        return out

    def trace(self):
        if not self.is_square():
            raise NonSquare(f"trace of a {self.rows}x{self.cols} matrix")
        return sum(row.get(r, 0) for r, row in self._data.items())

    def row_sums(self):
        return [sum(self._data.get(r, {}).values()) for r in range(self.rows)]

    def col_sums(self):
        out = [0] * self.cols
        for row in self._data.values():
            for c, v in row.items():
                out[c] += v
        return out

    def is_zero(self):
        return not self._data

    def __eq__(self, other):
        if not isinstance(other, SparseIntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.shape, tuple(self.items())))

    def __repr__(self):
        return f"SparseIntMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"

    # -- arithmetic ----------------------------------------------------------

    def _check_same_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other):
        self._check_same_shape(other)
        data = {r: dict(row) for r, row in self._data.items()}
        for r, row in other._data.items():
            target = data.setdefault(r, {})
            for c, v in row.items():
                s = target.get(c, 0) + v
                if s:
                    target[c] = s
                else:
                    target.pop(c, None)
            if not target:
                del data[r]
        return SparseIntMatrix._from_data(self.rows, self.cols, data)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        if k == 0:
            return SparseIntMatrix(self.rows, self.cols)
        data = {r: {c: k * v for c, v in row.items()} for r, row in self._data.items()}
        return SparseIntMatrix._from_data(self.rows, self.cols, data)

    def __mul__(self, k):
        if isinstance(k, int):
            return self.scale(k)
        return NotImplemented

    __rmul__ = __mul__

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        data = {}
        odata = other._data
        for r, row in self._data.items():
            acc = {}
            for k, v in row.items():
                orow = odata.get(k)
                if orow:
                    for c, w in orow.items():
                        acc[c] = acc.get(c, 0) + v * w
            acc = {c: v for c, v in acc.items() if v}
            if acc:
                data[r] = acc
        return SparseIntMatrix._from_data(self.rows, other.cols, data)

    def __pow__(self, n):
        if not self.is_square():
            raise NonSquare("power of a non-square matrix")
        result = SparseIntMatrix.identity(self.rows)
        base = self
        while n:
            if n & 1:
                result = result @ base
            n >>= 1
            if n:
                base = base @ base
        return result

    def transpose(self):
        data = {}
        for r, row in self._data.items():
            for c, v in row.items():
                data.setdefault(c, {})[r] = v
        return SparseIntMatrix._from_data(self.cols, self.rows, data)

    @property
    def T(self):
        return self.transpose()

    def apply(self, vector):
        """Matrix-vector product for a dense list ``vector``."""
        out = [0] * self.rows
        for r, row in self._data.items():
            out[r] = sum(v * vector[c] for c, v in row.items())
        return out

    # -- serialisation -------------------------------------------------------

    def to_json(self):
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[r, c, str(v)] for (r, c), v in self.items()],
        }

    @classmethod
    def from_json(cls, obj):
        return cls(obj["rows"], obj["cols"], {(r, c): int(v) for r, c, v in obj["entries"]})
