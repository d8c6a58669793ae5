"""Lie algebras given by exact structure constants.

Brackets use the real (mathematician's) convention ``[X_a, X_b] = sum_c f^c_ab X_c``.
Tables written physicist-style as ``[A, B] = i f C`` are transcribed by
reading off the coefficient of ``i``.  Only ``a < b`` (in generator order)
is stored; antisymmetry is supplied by the accessors.
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import (
    DuplicateBracketPair,
    DuplicateGenerator,
    ForeignGenerator,
    NotBijective,
    NotClosed,
    ParseError,
    SingularBasisChange,
    UnknownGenerator,
    UnknownGeneratorInBracket,
)
from .linalg import RationalMatrix, generic_rank, invert
from .poly import format_scalar


class AlgebraElement:
    """Immutable rational combination of generators, ``{name: coefficient}``."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients=None):
        self.coefficients = {g: Fraction(c) for g, c in (coefficients or {}).items() if c}

    @classmethod
    def basis(cls, name):
        return cls({name: 1})

    def __bool__(self):
        return bool(self.coefficients)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self):
        return hash(frozenset(self.coefficients.items()))

    def __add__(self, other):
        out = dict(self.coefficients)
        for g, c in other.coefficients.items():
            out[g] = out.get(g, 0) + c
        return AlgebraElement(out)

    def __neg__(self):
        return AlgebraElement({g: -c for g, c in self.coefficients.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        scalar = Fraction(scalar)
        return AlgebraElement({g: scalar * c for g, c in self.coefficients.items()})

    __rmul__ = __mul__

    def __repr__(self):
        return f"AlgebraElement({self.coefficients!r})"

    def format(self, order):
        """Render as ``c1*g1 + c2*g2`` with explicit coefficients, in ``order``."""
        terms = [(g, self.coefficients[g]) for g in order if g in self.coefficients]
        if not terms:
            return "0"
        out = []
        for n, (g, c) in enumerate(terms):
            body = f"{format_scalar(abs(c))}*{g}"
            if n == 0:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append((" - " if c < 0 else " + ") + body)
        return "".join(out)


class LieAlgebra:
    """Named generators plus sparse structure constants.

    ``constants`` maps index triples ``(a, b, c)`` with ``a < b`` to nonzero
    Fractions.  Instances are treated as immutable.
    """

    __slots__ = ("name", "generators", "constants", "_index")

    def __init__(self, name, generators, constants):
        self.name = name
        self.generators = tuple(generators)
        seen = set()
        for g in self.generators:
            if g in seen:
                raise DuplicateGenerator(g)
            seen.add(g)
        self._index = {g: i for i, g in enumerate(self.generators)}
        clean = {}
        n = len(self.generators)
        for (a, b, c), v in constants.items():
            if not (0 <= a < b < n and 0 <= c < n):
                raise ValueError(f"bad constant index {(a, b, c)}")
            v = Fraction(v)
            if v:
                clean[(a, b, c)] = v
        self.constants = clean

    @property
    def dim(self):
        return len(self.generators)

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise UnknownGenerator(f"{name!r} is not a generator of {self.name}") from None

    def __contains__(self, name):
        return name in self._index

    def __repr__(self):
        return f"LieAlgebra({self.name!r}, dim={self.dim})"

    def structure_constant(self, a, b, c):
        """``f^c_ab`` by generator name, with antisymmetry applied."""
        i, j, k = self.index(a), self.index(b), self.index(c)
        if i == j:
            return Fraction(0)
        if i < j:
            return self.constants.get((i, j, k), Fraction(0))
        return -self.constants.get((j, i, k), Fraction(0))

    def bracket_table(self):
        """``{(i, j): {k: f}}`` over index pairs with ``i < j``."""
        table = {}
        for (i, j, k), v in self.constants.items():
            table.setdefault((i, j), {})[k] = v
        return table

    def adjoint_rows(self):
        """``rows[a][b] = {c: f^c_ab}`` for all ordered pairs, antisymmetry included."""
        rows = [[{} for _ in range(self.dim)] for _ in range(self.dim)]
        for (i, j, k), v in self.constants.items():
            rows[i][j][k] = v
            rows[j][i][k] = -v
        return rows

    def bracket_basis(self, a, b):
        i, j = self.index(a), self.index(b)
        out = {}
        if i < j:
            for (x, y, k), v in self.constants.items():
                if x == i and y == j:
                    out[self.generators[k]] = v
        elif j < i:
            for (x, y, k), v in self.constants.items():
                if x == j and y == i:
                    out[self.generators[k]] = -v
        return AlgebraElement(out)

    def element(self, coefficients):
        for g in coefficients:
            if g not in self._index:
                raise ForeignGenerator(f"{g!r} is not a generator of {self.name}")
        return AlgebraElement(coefficients)

    def with_name(self, name):
        return LieAlgebra(name, self.generators, self.constants)

    def to_dict(self):
        brackets = []
        for (i, j), terms in sorted(self.bracket_table().items()):
            brackets.append({
                "left": self.generators[i],
                "right": self.generators[j],
                "terms": [{"coeff": _coeff_text(v), "gen": self.generators[k]}
                          for k, v in sorted(terms.items())],
            })
        return {"name": self.name, "generators": list(self.generators), "brackets": brackets}


def _coeff_text(v):
    return f"{v.numerator}/{v.denominator}"


# --------------------------------------------------------------------------
# construction

def make_algebra(name, generators, bracket_list):
    """Build a :class:`LieAlgebra` from bracket data.

    ``bracket_list`` is an iterable of ``(left, right, terms)`` where
    ``terms`` is a mapping ``{generator: coefficient}`` or an iterable of
    ``(coefficient, generator)`` pairs.  Unlisted pairs commute.  Listing a
    pair twice, in either order, raises :class:`DuplicateBracketPair`.
    Jacobi is *not* enforced here; see :func:`jacobi_check`.
    """
    generators = tuple(generators)
    seen = set()
    for g in generators:
        if g in seen:
            raise DuplicateGenerator(g)
        seen.add(g)
    index = {g: i for i, g in enumerate(generators)}

    constants = {}
    pairs = set()
    for left, right, terms in bracket_list:
        for g in (left, right):
            if g not in index:
                raise UnknownGeneratorInBracket(f"[{left}, {right}]: unknown generator {g!r}")
        i, j = index[left], index[right]
        if i == j:
            raise ValueError(f"self-bracket [{left}, {right}] must vanish and cannot be listed")
        key = (min(i, j), max(i, j))
        if key in pairs:
            raise DuplicateBracketPair(f"[{left}, {right}] listed more than once")
        pairs.add(key)
        sign = 1 if i < j else -1
        items = terms.items() if hasattr(terms, "items") else ((g, c) for c, g in terms)
        for g, c in items:
            if g not in index:
                raise UnknownGeneratorInBracket(f"[{left}, {right}]: unknown generator {g!r}")
            c = Fraction(c)
            if c:
                k = (key[0], key[1], index[g])
                constants[k] = constants.get(k, 0) + sign * c
    return LieAlgebra(name, generators, constants)


def abelian(name, generators):
    return make_algebra(name, generators, [])


# --------------------------------------------------------------------------
# bracket and validation

def bracket(L, u, v):
    """Bilinear bracket of two :class:`AlgebraElement` values of ``L``."""
    for g in list(u.coefficients) + list(v.coefficients):
        if g not in L:
            raise ForeignGenerator(f"{g!r} is not a generator of {L.name}")
    table = L.bracket_table()
    out = {}
    for a, x in u.coefficients.items():
        i = L.index(a)
        for b, y in v.coefficients.items():
            j = L.index(b)
            if i == j:
                continue
            sign = 1 if i < j else -1
            for k, f in table.get((min(i, j), max(i, j)), {}).items():
                g = L.generators[k]
                out[g] = out.get(g, 0) + sign * x * y * f
    return AlgebraElement(out)


def jacobi_check(L):
    """Generator triples ``(a, b, c)`` at which the Jacobi identity fails."""
    rows = L.adjoint_rows()

    def br(vec, b):
        # [sum_i vec_i X_i, X_b]
        out = {}
        for i, x in vec.items():
            for k, f in rows[i][b].items():
                out[k] = out.get(k, 0) + x * f
        return out

    bad = []
    for a, b, c in combinations(range(L.dim), 3):
        total = {}
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            for k, v in br(rows[x][y], z).items():
                total[k] = total.get(k, 0) + v
        if any(total.values()):
            bad.append((L.generators[a], L.generators[b], L.generators[c]))
    return bad


# --------------------------------------------------------------------------
# structural surgery

def trivial_central_extension(L, central_name, position=None, name=None):
    """Direct sum of ``L`` with a one-dimensional center spanned by ``central_name``.

    ``position`` places the new generator in the generator order (default: last).
    """
    if central_name in L:
        raise DuplicateGenerator(central_name)
    gens = list(L.generators)
    pos = len(gens) if position is None else position
    gens.insert(pos, central_name)
    new_index = {g: i for i, g in enumerate(gens)}
    remap = [new_index[g] for g in L.generators]
    constants = {}
    for (i, j, k), v in L.constants.items():
        a, b = remap[i], remap[j]
        if a < b:
            constants[(a, b, remap[k])] = v
        else:
            constants[(b, a, remap[k])] = -v
    return LieAlgebra(name or f"{L.name}+{central_name}", gens, constants)


@dataclass(frozen=True)
class BasisChange:
    """New generator ``i`` is ``sum_j matrix[i][j] * old_j`` (old in generator order)."""

    matrix: tuple
    names: tuple

    def __init__(self, matrix, names):
        rows = tuple(tuple(Fraction(x) for x in row) for row in matrix)
        object.__setattr__(self, "matrix", rows)
        object.__setattr__(self, "names", tuple(names))
        n = len(rows)
        if any(len(r) != n for r in rows) or len(self.names) != n:
            raise ValueError("basis change must be square and name every new generator")

    @classmethod
    def from_definitions(cls, L, definitions):
        """Replace selected generators by combinations of the old ones.

        ``definitions`` maps an old generator name to ``(new_name, {old: coeff})``;
        every other generator is kept as is.
        """
        rows, names = [], []
        for g in L.generators:
            row = [Fraction(0)] * L.dim
            if g in definitions:
                new_name, combo = definitions[g]
                for h, c in combo.items():
                    row[L.index(h)] = Fraction(c)
                names.append(new_name)
            else:
                row[L.index(g)] = Fraction(1)
                names.append(g)
            rows.append(row)
        return cls(rows, names)

    def is_invertible(self):
        return generic_rank(RationalMatrix.from_rows(self.matrix, len(self.matrix))) == len(self.matrix)


def change_basis(L, bc, name=None):
    """Re-express ``L`` over the basis described by ``bc``."""
    n = L.dim
    if len(bc.matrix) != n:
        raise ValueError(f"basis change of size {len(bc.matrix)} for algebra of dimension {n}")
    if not bc.is_invertible():
        raise SingularBasisChange("basis change matrix is singular")
    if len(set(bc.names)) != n:
        raise DuplicateGenerator("repeated name in basis change")
    inv = invert(bc.matrix)
    table = L.bracket_table()
    M = bc.matrix
    constants = {}
    for p, q in combinations(range(n), 2):
        # [Y_p, Y_q] in the old basis
        old = {}
        for a in range(n):
            if not M[p][a]:
                continue
            for b in range(n):
                if not M[q][b] or a == b:
                    continue
                sign = 1 if a < b else -1
                for c, f in table.get((min(a, b), max(a, b)), {}).items():
                    old[c] = old.get(c, 0) + sign * M[p][a] * M[q][b] * f
        for r in range(n):
            v = sum((x * inv[c][r] for c, x in old.items()), Fraction(0))
            if v:
                constants[(p, q, r)] = v
    return LieAlgebra(name or L.name, bc.names, constants)


def subalgebra(L, subset, name=None):
    """Restrict ``L`` to a bracket-closed generator subset (kept in ``L``'s order)."""
    wanted = set(subset)
    for g in wanted:
        L.index(g)
    gens = [g for g in L.generators if g in wanted]
    table = L.bracket_table()
    for a, b in combinations(gens, 2):
        i, j = L.index(a), L.index(b)
        terms = table.get((i, j), {})
        leaving = [L.generators[k] for k in sorted(terms) if L.generators[k] not in wanted]
        if leaving:
            raise NotClosed((a, b), leaving)
    new_index = {g: i for i, g in enumerate(gens)}
    constants = {}
    for (i, j, k), v in L.constants.items():
        a, b, c = L.generators[i], L.generators[j], L.generators[k]
        if a in wanted and b in wanted:
            constants[(new_index[a], new_index[b], new_index[c])] = v
    return LieAlgebra(name or f"{L.name}|{','.join(gens)}", gens, constants)


def same_structure(L1, L2, relabel=None):
    """True iff every structure constant agrees under ``relabel`` (L1 name -> L2 name).

    Missing names in ``relabel`` map to themselves.  The completed map must
    be a bijection between the generator sets.
    """
    relabel = dict(relabel or {})
    full = {g: relabel.get(g, g) for g in L1.generators}
    extra = set(relabel) - set(L1.generators)
    if extra:
        raise NotBijective(f"relabel mentions non-generators {sorted(extra)}")
    if len(set(full.values())) != len(full) or set(full.values()) != set(L2.generators):
        raise NotBijective("relabel is not a bijection between the generator sets")
    return not structure_differences(L1, L2, full)


def structure_differences(L1, L2, full):
    """List of ``(a, b, c, f1, f2)`` where constants disagree under the bijection ``full``."""
    diffs = []
    seen = set()
    for (i, j, k), v in L1.constants.items():
        a, b, c = L1.generators[i], L1.generators[j], L1.generators[k]
        w = L2.structure_constant(full[a], full[b], full[c])
        seen.add((full[a], full[b], full[c]))
        seen.add((full[b], full[a], full[c]))
        if v != w:
            diffs.append((a, b, c, v, w))
    inverse = {v: k for k, v in full.items()}
    for (i, j, k), w in L2.constants.items():
        a, b, c = L2.generators[i], L2.generators[j], L2.generators[k]
        if (a, b, c) in seen:
            continue
        v = L1.structure_constant(inverse[a], inverse[b], inverse[c])
        if v != w:
            diffs.append((inverse[a], inverse[b], inverse[c], v, w))
    return diffs


# --------------------------------------------------------------------------
# algebra file format

_ALGEBRA_FIELDS = {"name", "generators", "brackets"}
_BRACKET_FIELDS = {"left", "right", "terms"}
_TERM_FIELDS = {"coeff", "gen"}


def algebra_from_dict(data):
    if not isinstance(data, dict):
        raise ParseError("algebra file must hold an object")
    unknown = set(data) - _ALGEBRA_FIELDS
    if unknown:
        raise ParseError(f"unknown fields {sorted(unknown)}")
    missing = _ALGEBRA_FIELDS - set(data)
    if missing:
        raise ParseError(f"missing fields {sorted(missing)}")
    name, gens = data["name"], data["generators"]
    if not isinstance(name, str) or not isinstance(gens, list) or not all(isinstance(g, str) for g in gens):
        raise ParseError("'name' must be a string and 'generators' a list of strings")
    brackets = []
    for n, br in enumerate(data["brackets"]):
        if not isinstance(br, dict):
            raise ParseError(f"bracket #{n} is not an object")
        unknown = set(br) - _BRACKET_FIELDS
        if unknown or set(br) != _BRACKET_FIELDS:
            raise ParseError(f"bracket #{n}: expected fields {sorted(_BRACKET_FIELDS)}, got {sorted(br)}")
        terms = []
        for t in br["terms"]:
            if not isinstance(t, dict) or set(t) != _TERM_FIELDS:
                raise ParseError(f"bracket #{n}: each term needs exactly {sorted(_TERM_FIELDS)}")
            try:
                c = Fraction(t["coeff"])
            except (ValueError, ZeroDivisionError, TypeError):
                raise ParseError(f"bracket #{n}: bad coefficient {t['coeff']!r}") from None
            terms.append((c, t["gen"]))
        brackets.append((br["left"], br["right"], terms))
    return make_algebra(name, gens, brackets)


def dumps_algebra(L):
    return json.dumps(L.to_dict(), indent=2) + "\n"


def loads_algebra(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None
    return algebra_from_dict(data)


def save_algebra(L, path):
    with open(path, "w") as fh:
        fh.write(dumps_algebra(L))


def load_algebra(path):
    with open(path) as fh:
        return loads_algebra(fh.read())
