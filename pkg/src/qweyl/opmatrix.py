"""Sparse exact matrices of linear operators between finite graded bases."""

from .linalg import axpy
from .qcoeff import ONE, ZERO, as_qrat


class OperatorMatrix:
    """Columns indexed by source basis labels, each a sparse {target label: QRat}.

    ``source`` and ``target`` are tuples of labels fixing the windows; labels
    of columns outside ``source`` are rejected, rows outside ``target`` too.
    """

    __slots__ = ("source", "target", "cols", "_src_set", "_tgt_set")

    def __init__(self, source, target, cols=None):
        self.source = tuple(source)
        self.target = tuple(target)
        self._src_set = frozenset(self.source)
        self._tgt_set = frozenset(self.target)
        self.cols = {}
        for s, col in (cols or {}).items():
            if s not in self._src_set:
                raise KeyError("column %r outside the source window" % (s,))
            clean = {}
            for r, v in col.items():
                if r not in self._tgt_set:
                    raise KeyError("row %r outside the target window" % (r,))
                v = as_qrat(v)
                if not v.is_zero():
                    clean[r] = v
            if clean:
                self.cols[s] = clean

    @classmethod
    def from_function(cls, source, target, fn):
        """fn(label) -> {label: QRat}; the image of each basis vector."""
        return cls(source, target, {s: fn(s) for s in source})

    @classmethod
    def identity(cls, basis):
        return cls(basis, basis, {b: {b: ONE} for b in basis})

    @classmethod
    def diagonal(cls, basis, fn):
        return cls(basis, basis, {b: {b: fn(b)} for b in basis})

    def column(self, s):
        return self.cols.get(s, {})

    def entry(self, r, s):
        return self.cols.get(s, {}).get(r, ZERO)

    def apply(self, vec):
        out = {}
        for s, c in vec.items():
            col = self.cols.get(s)
            if col:
                axpy(out, c, col)
        return out

    def __matmul__(self, other):
        """self after other."""
        if set(other.target) != self._src_set:
            raise ValueError("window mismatch in composition")
        return OperatorMatrix(other.source, self.target,
                              {s: self.apply(col) for s, col in other.cols.items()})

    def __add__(self, other):
        self._same_shape(other)
        cols = {s: dict(c) for s, c in self.cols.items()}
        for s, col in other.cols.items():
            axpy(cols.setdefault(s, {}), ONE, col)
        return OperatorMatrix(self.source, self.target, cols)

    def __neg__(self):
        return self.scale(-ONE)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = as_qrat(c)
        return OperatorMatrix(self.source, self.target,
                              {s: {r: c * v for r, v in col.items()}
                               for s, col in self.cols.items()})

    def transpose_plain(self):
        cols = {}
        for s, col in self.cols.items():
            for r, v in col.items():
                cols.setdefault(r, {})[s] = v
        return OperatorMatrix(self.target, self.source, cols)

    def map_entries(self, fn):
        return OperatorMatrix(self.source, self.target,
                              {s: {r: fn(v) for r, v in col.items()}
                               for s, col in self.cols.items()})

    def restrict(self, source=None, target=None):
        source = self.source if source is None else tuple(source)
        target = self.target if target is None else tuple(target)
        tset = set(target)
        return OperatorMatrix(source, target,
                              {s: {r: v for r, v in self.column(s).items() if r in tset}
                               for s in source})

    def nnz(self):
        return sum(len(c) for c in self.cols.values())

    def is_zero(self):
        return not self.cols

    def _same_shape(self, other):
        if self._src_set != other._src_set or self._tgt_set != other._tgt_set:
            raise ValueError("window mismatch")

    def __eq__(self, other):
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        return (self._src_set == other._src_set and self._tgt_set == other._tgt_set
                and self.cols == other.cols)

    def differences(self, other):
        """(row, col, mine, theirs) for every differing entry, in window order."""
        self._same_shape(other)
        out = []
        for s in self.source:
            a, b = self.column(s), other.column(s)
            for r in self.target:
                x, y = a.get(r, ZERO), b.get(r, ZERO)
                if x != y:
                    out.append((r, s, x, y))
        return out

    def __repr__(self):
        return "OperatorMatrix(%d -> %d, nnz=%d)" % (
            len(self.source), len(self.target), self.nnz())
