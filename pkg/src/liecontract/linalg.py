"""Exact sparse linear algebra over the rationals.

Rows are cleared of denominators up front and elimination proceeds on
integer rows only: a row is reduced against a pivot row by cross
multiplication with the two leading entries (divided by their gcd), and
the primitive part is taken after every step.  No Fraction appears inside
the elimination loop, which keeps coefficient growth bounded on the large
sparse systems produced by the invariant solver.
"""

from fractions import Fraction
from functools import reduce
from math import gcd, lcm


class RationalMatrix:
    """Sparse ``rows x cols`` matrix with exact rational entries.

    ``entries`` maps ``(row, col)`` to a nonzero Fraction; absent means zero.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries=None):
        if rows < 0 or cols < 0:
            raise ValueError("negative dimension")
        self.rows = rows
        self.cols = cols
        clean = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry ({r}, {c}) outside {rows}x{cols}")
            v = Fraction(v)
            if v:
                clean[(r, c)] = v
        self.entries = clean

    @classmethod
    def from_rows(cls, rows, cols=None):
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        entries = {}
        for i, r in enumerate(rows):
            if len(r) != cols:
                raise ValueError("ragged rows")
            for j, v in enumerate(r):
                if v:
                    entries[(i, j)] = v
        return cls(len(rows), cols, entries)

    @classmethod
    def from_sparse_rows(cls, rows, cols):
        """Build from a list of ``{col: value}`` dicts."""
        entries = {}
        for i, r in enumerate(rows):
            for j, v in r.items():
                entries[(i, j)] = v
        return cls(len(rows), cols, entries)

    @classmethod
    def identity(cls, n):
        return cls(n, n, {(i, i): 1 for i in range(n)})

    def row_dicts(self):
        out = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def to_dense(self):
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def __getitem__(self, rc):
        r, c = rc
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise IndexError(rc)
        return self.entries.get((r, c), Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __repr__(self):
        return f"RationalMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"

    def apply(self, vector):
        """Matrix-vector product with an exact vector of length ``cols``."""
        out = [Fraction(0)] * self.rows
        for (r, c), v in self.entries.items():
            out[r] += v * vector[c]
        return out


# --------------------------------------------------------------------------
# integer row kernels

def _integer_row(row):
    """Clear denominators of a ``{col: Fraction}`` row; returns a primitive int row."""
    row = {c: Fraction(v) for c, v in row.items() if v}
    if not row:
        return {}
    den = reduce(lcm, (v.denominator for v in row.values()))
    irow = {c: int(v * den) for c, v in row.items()}
    return _primitive(irow)


def _primitive(row):
    g = reduce(gcd, row.values(), 0)
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


def _combine(row, piv, col):
    """Eliminate ``col`` from ``row`` using ``piv``; both are integer rows."""
    a = piv[col]
    b = row[col]
    g = gcd(a, b)
    a //= g
    b //= g
    out = {c: a * v for c, v in row.items()}
    for c, v in piv.items():
        w = out.get(c, 0) - b * v
        if w:
            out[c] = w
        else:
            out.pop(c, None)
    return _primitive(out)


def echelon(rows, reduced=False):
    """Fraction-free echelon form of an iterable of ``{col: value}`` rows.

    Returns ``{pivot_col: int_row}`` where each stored row starts at its own
    pivot column, with a positive pivot entry.  With ``reduced=True`` every
    pivot column is also cleared in every other row (integer Gauss-Jordan).
    """
    pivots = {}
    for row in rows:
        r = _integer_row(row)
        while r:
            lead = min(r)
            piv = pivots.get(lead)
            if piv is None:
                if r[lead] < 0:
                    r = {c: -v for c, v in r.items()}
                pivots[lead] = r
                break
            r = _combine(r, piv, lead)
            # skip ahead over further pivot columns in one pass
            while r:
                lead = min(r)
                piv = pivots.get(lead)
                if piv is None:
                    break
                r = _combine(r, piv, lead)
    if reduced:
        _back_substitute(pivots)
    return pivots


def _back_substitute(pivots):
    order = sorted(pivots)
    for k in reversed(order):
        piv = pivots[k]
        for j in order:
            if j >= k:
                break
            row = pivots[j]
            if k in row:
                row = _combine(row, piv, k)
                if row[j] < 0:
                    row = {c: -v for c, v in row.items()}
                pivots[j] = row


def generic_rank(m):
    """Rank over the rationals of a :class:`RationalMatrix`."""
    return len(echelon(m.row_dicts()))


def _normalize_vector(v):
    """Scale a rational vector to integers with content 1 and positive leading entry."""
    nz = [x for x in v if x]
    if not nz:
        return tuple(0 for _ in v)
    den = reduce(lcm, (Fraction(x).denominator for x in nz))
    ints = [int(Fraction(x) * den) for x in v]
    g = reduce(gcd, (abs(x) for x in ints if x))
    lead = next(x for x in ints if x)
    if lead < 0:
        g = -g
    return tuple(x // g for x in ints)


def rref_basis(vectors, ncols):
    """Canonical basis of the row span of ``vectors``.

    Reduced echelon form with each row scaled to integer entries, content 1,
    and positive leading entry; rows ordered by leading column.
    """
    rows = [{j: x for j, x in enumerate(v) if x} for v in vectors]
    piv = echelon(rows, reduced=True)
    out = []
    for k in sorted(piv):
        dense = [0] * ncols
        for c, v in piv[k].items():
            dense[c] = v
        out.append(_normalize_vector(dense))
    return out


def nullspace(m):
    """Basis of the right nullspace of ``m`` in canonical normalized form.

    Each basis tuple has integer entries with content 1 and a positive
    leading entry, and the tuples together form the reduced row echelon form
    of the nullspace.  A full column rank matrix yields ``[]``.
    """
    ncols = m.cols
    piv = echelon(m.row_dicts(), reduced=True)
    free = [c for c in range(ncols) if c not in piv]
    if not free:
        return []
    # one kernel vector per free column: x_f = 1, x_p = -row_p[f] / row_p[p]
    basis = []
    by_free = {f: [] for f in free}
    for p, row in piv.items():
        for c, v in row.items():
            if c != p:
                by_free[c].append((p, Fraction(-v, row[p])))
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for p, x in by_free[f]:
            v[p] = x
        basis.append(v)
    return rref_basis(basis, ncols)


def invert(matrix):
    """Inverse of a small square dense rational matrix (list of lists).

    Raises ``ZeroDivisionError`` when singular.
    """
    n = len(matrix)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]
