"""Sparse exact row reduction over QRat.

Rows are dicts {column: QRat}.  Columns only need to be mutually comparable;
the largest column present in a row is its leading column.  Reduction always
eliminates the largest pivot column first, so the normal form of a vector
modulo the row span is unique for a fixed pivot set.
"""

from .qcoeff import ONE, ZERO


def axpy(acc, a, row, skip=None):
    """acc += a * row, dropping zeros in place."""
    for k, v in row.items():
        if k == skip:
            continue
        s = acc.get(k)
        s = a * v if s is None else s + a * v
        if s.is_zero():
            acc.pop(k, None)
        else:
            acc[k] = s


class SparseEchelon:
    """Incrementally built echelon basis of a row space.

    With ``track=True`` every stored row remembers how it was formed from the
    inserted rows, so ``express`` can return explicit linear combinations.
    """

    def __init__(self, track=False):
        self.pivots = {}
        self.track = track
        self.count = 0

    def __len__(self):
        return len(self.pivots)

    def _reduce(self, vec, combo=None):
        work = dict(vec)
        out = {}
        while work:
            c = max(work)
            v = work.pop(c)
            piv = self.pivots.get(c)
            if piv is None:
                out[c] = v
                continue
            row, rcombo = piv
            axpy(work, -v, row, skip=c)
            if combo is not None:
                axpy(combo, -v, rcombo)
        return out

    def reduce(self, vec):
        """Normal form of vec modulo the row span."""
        return self._reduce(vec)

    def insert(self, vec, tag=None):
        """Add a row; returns True if it enlarged the span."""
        idx = self.count if tag is None else tag
        self.count += 1
        combo = {idx: ONE} if self.track else None
        r = self._reduce(vec, combo)
        if not r:
            return False
        c = max(r)
        inv = r[c].inverse()
        row = {k: v * inv for k, v in r.items()}
        if self.track:
            combo = {k: v * inv for k, v in combo.items()}
        self.pivots[c] = (row, combo)
        return True

    def express(self, vec):
        """(residual, combination) with vec = sum combination[tag]*row[tag] + residual."""
        if not self.track:
            raise ValueError("express requires track=True")
        combo = {}
        residual = self._reduce(vec, combo)
        return residual, {k: -v for k, v in combo.items() if not v.is_zero()}


def solve_combination(candidates, target):
    """Find x with sum x_k * candidates[k] == target, or None.

    candidates: list of sparse vectors; returns a dict {k: QRat}.
    """
    ech = SparseEchelon(track=True)
    for k, v in enumerate(candidates):
        ech.insert(v, tag=k)
    residual, combo = ech.express(target)
    if residual:
        return None
    return combo


def rank(rows):
    ech = SparseEchelon()
    for r in rows:
        ech.insert(r)
    return len(ech)


def vec_sub(a, b):
    out = dict(a)
    axpy(out, -ONE, b)
    return out


def is_zero_vec(v):
    return all(c == ZERO for c in v.values())
