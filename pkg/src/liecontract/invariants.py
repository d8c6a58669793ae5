"""Polynomial Casimir invariants via the coadjoint realization.

Each generator ``X_a`` acts on functions of the dual coordinates ``x_b``
(named like the generators) as the first-order operator::

    X^_a = sum_{b,c} f^c_ab x_c d/dx_b

A polynomial is a Casimir symbol iff every such operator annihilates it.
Homogeneous invariants of degree ``d`` are found as the nullspace of the
linear system obtained by applying all operators to a generic combination of
degree-``d`` monomials.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .contraction import contraction_limit, rescale
from .errors import ForeignVariable, NotInvariant, RankUnstable
from .linalg import RationalMatrix, generic_rank, nullspace, rref_basis
from .poly import EpsilonSeries, MultiPoly, eps_limit, monomials_of_degree, poly_substitute

DEFAULT_DEGREE_CAP = 4


@dataclass(frozen=True)
class DiffOperator:
    """``sum coefficient * d/d(variable)`` with linear polynomial coefficients."""

    vars: tuple
    terms: tuple  # ((MultiPoly, variable), ...) in variable order

    def apply(self, p):
        if p.vars != self.vars:
            raise ForeignVariable(f"operator over {self.vars} applied to polynomial over {p.vars}")
        out = MultiPoly.zero(self.vars)
        for coeff, v in self.terms:
            d = p.partial(v)
            if d:
                out = out + coeff * d
        return out

    __call__ = apply

    def is_zero(self):
        return not self.terms

    def as_dict(self):
        """``{variable: coefficient polynomial}``."""
        return {v: c for c, v in self.terms}

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for coeff, v in self.terms:
            c = str(coeff)
            if len(coeff.terms) > 1:
                c = f"({c})"
            parts.append(f"{c}*d/d{v}")
        return " + ".join(parts).replace("+ -", "- ")


def coadjoint_operator(L, a):
    """The operator realizing generator ``a`` on the dual coordinates of ``L``."""
    i = L.index(a)
    rows = L.adjoint_rows()[i]
    vars_ = L.generators
    terms = []
    for b in range(L.dim):
        if rows[b]:
            coeff = {}
            for c, f in rows[b].items():
                e = [0] * L.dim
                e[c] = 1
                coeff[tuple(e)] = f
            terms.append((MultiPoly(vars_, coeff), vars_[b]))
    return DiffOperator(vars_, tuple(terms))


def coadjoint_operators(L):
    return {g: coadjoint_operator(L, g) for g in L.generators}


def _check_universe(L, p):
    if p.vars != L.generators:
        if set(p.variables_used()) <= set(L.generators):
            return p.over(L.generators)
        raise ForeignVariable(f"polynomial uses variables outside {L.name}: "
                              f"{sorted(set(p.variables_used()) - set(L.generators))}")
    return p


def is_invariant(L, p):
    """True iff every coadjoint operator of ``L`` annihilates ``p``."""
    p = _check_universe(L, p)
    return all(not op.apply(p) for op in coadjoint_operators(L).values())


def _linear_system(L, degree):
    """Rows ``(operator, target monomial) -> {column: coefficient}`` for degree ``degree``."""
    n = L.dim
    monos = monomials_of_degree(n, degree)
    adj = L.adjoint_rows()
    rows = {}
    for col, mono in enumerate(monos):
        for a in range(n):
            for b in range(n):
                k = mono[b]
                if not k or not adj[a][b]:
                    continue
                for c, f in adj[a][b].items():
                    t = list(mono)
                    t[b] -= 1
                    t[c] += 1
                    key = (a, tuple(t))
                    row = rows.setdefault(key, {})
                    row[col] = row.get(col, 0) + k * f
    sparse = [r for _, r in sorted(rows.items(), key=lambda kv: (kv[0][0], tuple(-x for x in kv[0][1])))]
    sparse = [{c: v for c, v in r.items() if v} for r in sparse]
    return monos, RationalMatrix.from_sparse_rows([r for r in sparse if r], len(monos))


@dataclass(frozen=True)
class InvariantBasis:
    algebra: str
    degree: int
    polynomials: tuple
    new: bool = False

    def __len__(self):
        return len(self.polynomials)

    def __iter__(self):
        return iter(self.polynomials)

    def strings(self):
        return [str(p) for p in self.polynomials]

    def to_dict(self):
        return {"algebra": self.algebra, "degree": self.degree,
                "kind": "new" if self.new else "full", "polynomials": self.strings()}


def _polys_from_vectors(vars_, monos, vectors):
    return tuple(MultiPoly(vars_, {m: x for m, x in zip(monos, v) if x}) for v in vectors)


def invariant_space(L, degree):
    """Canonical basis of homogeneous degree-``degree`` invariants of ``L``."""
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    monos, system = _linear_system(L, degree)
    vectors = nullspace(system)
    return InvariantBasis(L.name, degree, _polys_from_vectors(L.generators, monos, vectors))


def _products(lower, degree):
    """All products of lower-degree basis elements whose degrees add up to ``degree``."""
    pool = [(b.degree, p) for b in lower if b.degree >= 1 for p in b.polynomials]
    pool.sort(key=lambda t: t[0])
    out = []

    def rec(start, remaining, acc):
        if remaining == 0:
            out.append(acc)
            return
        for i in range(start, len(pool)):
            d, p = pool[i]
            if d <= remaining:
                rec(i, remaining - d, p if acc is None else acc * p)

    rec(0, degree, None)
    return out


def new_invariants(L, degree, lower=None, full=None):
    """Degree-``degree`` invariants modulo products of lower-degree ones.

    ``lower`` must hold the invariant bases of every degree below ``degree``
    (computed when omitted).  The returned representatives are the canonical
    basis of the full space reduced modulo the product span.
    """
    if lower is None:
        lower = [invariant_space(L, d) for d in range(1, degree)]
    covered = {b.degree for b in lower}
    if not set(range(1, degree)) <= covered:
        raise ValueError(f"lower bases must cover degrees 1..{degree - 1}")
    if full is None:
        full = invariant_space(L, degree)
    monos = monomials_of_degree(L.dim, degree)
    prods = [p.over(L.generators).coefficients(monos) for p in _products(lower, degree)]
    product_basis = rref_basis(prods, len(monos)) if prods else []
    if not product_basis:
        return InvariantBasis(L.name, degree, full.polynomials, new=True)
    pivots = [next(i for i, x in enumerate(v) if x) for v in product_basis]
    reduced = []
    for p in full.polynomials:
        v = [Fraction(x) for x in p.coefficients(monos)]
        for piv, row in zip(pivots, product_basis):
            if v[piv]:
                f = v[piv] / row[piv]
                v = [x - f * y for x, y in zip(v, row)]
        if any(v):
            reduced.append(v)
    vectors = rref_basis(reduced, len(monos)) if reduced else []
    return InvariantBasis(L.name, degree, _polys_from_vectors(L.generators, monos, vectors), new=True)


def invariant_ledger(L, max_degree=DEFAULT_DEGREE_CAP):
    """``{degree: (full basis, new basis)}`` for degrees 1..max_degree."""
    full, out = [], {}
    for d in range(1, max_degree + 1):
        fb = invariant_space(L, d)
        nb = new_invariants(L, d, full, fb)
        full.append(fb)
        out[d] = (fb, nb)
    return out


# --------------------------------------------------------------------------
# generic rank

SAMPLE_BOUND = 10 ** 6


def commutator_matrix(L, point):
    """``[sum_c f^c_ab x_c]_{ab}`` evaluated at ``point`` (``{generator: value}``)."""
    x = [Fraction(point[g]) for g in L.generators]
    entries = {}
    for (a, b, c), f in L.constants.items():
        v = f * x[c]
        entries[(a, b)] = entries.get((a, b), 0) + v
        entries[(b, a)] = entries.get((b, a), 0) - v
    return RationalMatrix(L.dim, L.dim, entries)


def invariant_count(L, seed=0, retries=8):
    """Number of functionally independent invariants, ``dim - generic rank``.

    Two independent integer points in ``[-10^6, 10^6]`` are drawn from a
    generator seeded with ``seed``; their ranks must agree, otherwise new
    pairs are drawn up to ``retries`` times.
    """
    rng = random.Random(seed)

    def sample():
        point = {g: rng.randint(-SAMPLE_BOUND, SAMPLE_BOUND) for g in L.generators}
        return generic_rank(commutator_matrix(L, point))

    for _ in range(retries):
        r1, r2 = sample(), sample()
        if r1 == r2:
            return L.dim - r1
    raise RankUnstable(f"rank samples for {L.name} kept disagreeing after {retries} retries")


# --------------------------------------------------------------------------
# invariants through a contraction

@dataclass(frozen=True)
class ContractedInvariant:
    shift: int
    limit: MultiPoly
    expansion: EpsilonSeries
    contracted: object = field(repr=False, default=None)

    def __iter__(self):
        return iter((self.shift, self.limit, self.expansion))

    def leading_series(self):
        """``eps**shift * expansion``: a power series whose constant term is the limit."""
        return self.expansion.shift(self.shift)


def dual_scaling_map(L, s):
    """``x_a -> eps^{-n_a} x_a``: dual coordinates scale inversely to the generators."""
    vars_ = L.generators
    return {g: EpsilonSeries.monomial(-s[g], MultiPoly.var(vars_, g)) for g in vars_}


def contract_invariant(L, s, p):
    """Push the invariant ``p`` of ``L`` through the contraction defined by ``s``."""
    p = _check_universe(L, p)
    if not is_invariant(L, p):
        raise NotInvariant(f"{p} is not an invariant of {L.name}")
    target = contraction_limit(rescale(L, s))
    expansion = poly_substitute(p, dual_scaling_map(L, s))
    shift, limit = eps_limit(expansion)
    if not is_invariant(target, limit):
        raise RuntimeError(f"limit {limit} is not invariant on the contracted algebra")
    return ContractedInvariant(shift, limit, expansion, target)


REST_FRAME = ("p1", "p2", "p3")


def evaluate_at_rest(p, momenta=REST_FRAME):
    """Set the momentum coordinates to zero."""
    for v in momenta:
        if v not in p.vars:
            raise ForeignVariable(f"{v!r} is not a coordinate of this polynomial")
    return p.evaluate({v: 0 for v in momenta})


def resolve_signs(L, printed):
    """Sign vectors making a printed invariant exactly invariant on ``L``.

    The leading term keeps its printed sign; every other term may flip.
    Returns all solutions (normally zero or one).
    """
    from itertools import product

    base = printed.signs()
    solutions = []
    for rest in product((1, -1), repeat=len(base) - 1):
        signs = (base[0],) + rest
        if is_invariant(L, printed.with_signs(signs)):
            solutions.append(signs)
    return solutions
