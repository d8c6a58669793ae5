"""Exact multivariate polynomials and Laurent series in a formal parameter eps.

Polynomials live over an explicit, ordered tuple of variable names (their
*universe*).  A monomial is stored as a tuple of exponents aligned with the
universe, and monomials are ordered graded-lexicographically with the first
variable of the universe most significant.  Coefficients are
:class:`fractions.Fraction` values, kept in lowest terms by the stdlib.

The canonical text form lists terms in descending monomial order, e.g.::

    >>> x = MultiPoly.parse("m*h - 1/2*p1^2", ("m", "h", "p1"))
    >>> str(x)
    'm*h - 1/2*p1^2'
"""

import re
from fractions import Fraction
from functools import reduce
from itertools import combinations_with_replacement

from .errors import EmptySeries, ForeignVariable, ParseError, UnmappedVariable


def _frac(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, str)):
        return Fraction(c)
    raise TypeError(f"not an exact scalar: {c!r}")


def monomial_key(exps):
    """Sort key for graded lexicographic order (larger key = larger monomial)."""
    return (sum(exps), exps)


def monomials_of_degree(nvars, degree):
    """All exponent tuples of total ``degree`` in ``nvars`` variables, descending."""
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return out


def format_scalar(c):
    c = _frac(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


class MultiPoly:
    """Immutable polynomial with rational coefficients.

    ``terms`` maps exponent tuples to nonzero Fractions.  Arithmetic between
    polynomials requires identical universes; use :meth:`over` to re-embed.
    """

    __slots__ = ("vars", "terms", "_index")

    def __init__(self, variables, terms=None):
        self.vars = tuple(variables)
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"repeated variable in universe {self.vars}")
        n = len(self.vars)
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != n or any(k < 0 for k in e):
                raise ValueError(f"bad exponent tuple {e} for universe {self.vars}")
            c = _frac(c)
            if c:
                clean[e] = c
        self.terms = clean
        self._index = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, variables):
        return cls(variables)

    @classmethod
    def const(cls, variables, c):
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, variables, name, power=1):
        variables = tuple(variables)
        try:
            i = variables.index(name)
        except ValueError:
            raise ForeignVariable(f"{name!r} not in {variables}") from None
        e = [0] * len(variables)
        e[i] = power
        return cls(variables, {tuple(e): 1})

    @classmethod
    def parse(cls, text, variables):
        return parse_poly(text, variables)

    # -- basic protocol ---------------------------------------------------

    def index(self, name):
        if self._index is None:
            self._index = {v: i for i, v in enumerate(self.vars)}
        try:
            return self._index[name]
        except KeyError:
            raise ForeignVariable(f"{name!r} not in {self.vars}") from None

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.const(self.vars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __repr__(self):
        return f"MultiPoly({str(self)!r}, vars={self.vars})"

    def __str__(self):
        return format_poly(self)

    def sorted_terms(self):
        """``(exponents, coefficient)`` pairs in descending monomial order."""
        return sorted(self.terms.items(), key=lambda t: monomial_key(t[0]), reverse=True)

    def leading(self):
        if not self.terms:
            return None
        return max(self.terms.items(), key=lambda t: monomial_key(t[0]))

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self, degree=None):
        degs = {sum(e) for e in self.terms}
        if degree is not None:
            return degs <= {degree}
        return len(degs) <= 1

    def variables_used(self):
        used = set()
        for e in self.terms:
            used.update(i for i, k in enumerate(e) if k)
        return tuple(self.vars[i] for i in sorted(used))

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.vars != self.vars:
                raise ValueError(f"universe mismatch: {self.vars} vs {other.vars}")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(self.vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        result = MultiPoly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c):
        c = _frac(c)
        return MultiPoly(self.vars, {e: c * v for e, v in self.terms.items()})

    def content(self):
        """Positive rational ``g`` such that ``self / g`` is primitive with integer coefficients."""
        from math import gcd, lcm

        if not self.terms:
            return Fraction(0)
        num = reduce(gcd, (c.numerator for c in self.terms.values()))
        den = reduce(lcm, (c.denominator for c in self.terms.values()))
        return Fraction(abs(num), den)

    def primitive(self):
        """Integer coefficients with content 1 and a positive leading coefficient."""
        if not self.terms:
            return self
        g = self.content()
        if self.leading()[1] < 0:
            g = -g
        return self.scale(1 / g)

    # -- calculus and substitution ---------------------------------------

    def partial(self, name):
        i = self.index(name)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                d = list(e)
                d[i] = k - 1
                out[tuple(d)] = c * k
        return MultiPoly(self.vars, out)

    def evaluate(self, assignment):
        """Substitute exact scalars for some variables; returns a polynomial over the same universe."""
        idx = {self.index(v): _frac(x) for v, x in assignment.items()}
        out = {}
        for e, c in self.terms.items():
            d = list(e)
            for i, x in idx.items():
                if d[i]:
                    c = c * x ** d[i]
                    d[i] = 0
            if c:
                d = tuple(d)
                out[d] = out.get(d, 0) + c
        return MultiPoly(self.vars, out)

    def over(self, variables):
        """Re-embed into another universe containing every variable in use."""
        variables = tuple(variables)
        pos = {v: i for i, v in enumerate(variables)}
        out = {}
        for e, c in self.terms.items():
            d = [0] * len(variables)
            for i, k in enumerate(e):
                if k:
                    if self.vars[i] not in pos:
                        raise ForeignVariable(f"{self.vars[i]!r} not in {variables}")
                    d[pos[self.vars[i]]] = k
            out[tuple(d)] = c
        return MultiPoly(variables, out)

    def rename(self, mapping, variables=None):
        """Rename variables (``old -> new``); unmapped names are kept."""
        new_vars = tuple(mapping.get(v, v) for v in self.vars)
        renamed = MultiPoly(new_vars, self.terms)
        return renamed if variables is None else renamed.over(variables)

    def substitute(self, mapping):
        return poly_substitute(self, mapping)

    def coefficients(self, monomials):
        """Coefficient vector of this polynomial against a list of exponent tuples."""
        return [self.terms.get(m, Fraction(0)) for m in monomials]


# --------------------------------------------------------------------------
# canonical text form

def _format_monomial(vars_, e):
    parts = []
    for v, k in zip(vars_, e):
        if k == 1:
            parts.append(v)
        elif k > 1:
            parts.append(f"{v}^{k}")
    return "*".join(parts)


def format_poly(p):
    if not p.terms:
        return "0"
    out = []
    for n, (e, c) in enumerate(p.sorted_terms()):
        mono = _format_monomial(p.vars, e)
        a = abs(c)
        if not mono:
            body = format_scalar(a)
        elif a == 1:
            body = mono
        else:
            body = f"{format_scalar(a)}*{mono}"
        if n == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9']*)|(\^)|(\*)|([+-])|(\S))")


def parse_poly(text, variables):
    """Parse the canonical text form (also accepts any sum of products of
    numbers and powers of variables) into a polynomial over ``variables``."""
    variables = tuple(variables)
    pos = {v: i for i, v in enumerate(variables)}
    tokens = []
    for m in _TOKEN.finditer(text):
        num, name, caret, star, sign, bad = m.groups()
        if bad is not None:
            raise ParseError(f"unexpected character {bad!r} in {text!r}")
        if num is not None:
            tokens.append(("num", Fraction(num)))
        elif name is not None:
            tokens.append(("var", name))
        elif caret:
            tokens.append(("^", None))
        elif star:
            tokens.append(("*", None))
        elif sign:
            tokens.append((sign, None))
    if not tokens:
        raise ParseError(f"empty polynomial text {text!r}")

    result = MultiPoly.zero(variables)
    i = 0
    n = len(tokens)
    while i < n:
        sign = 1
        while i < n and tokens[i][0] in "+-":
            if tokens[i][0] == "-":
                sign = -sign
            i += 1
        coeff = Fraction(sign)
        exps = [0] * len(variables)
        expect_factor = True
        while i < n and expect_factor:
            kind, val = tokens[i]
            if kind == "num":
                coeff *= val
                i += 1
            elif kind == "var":
                if val not in pos:
                    raise ForeignVariable(f"{val!r} not in {variables}")
                power = 1
                i += 1
                if i < n and tokens[i][0] == "^":
                    if i + 1 >= n or tokens[i + 1][0] != "num" or tokens[i + 1][1].denominator != 1:
                        raise ParseError(f"bad exponent in {text!r}")
                    power = int(tokens[i + 1][1])
                    i += 2
                exps[pos[val]] += power
            else:
                raise ParseError(f"unexpected {kind!r} in {text!r}")
            if i < n and tokens[i][0] == "*":
                i += 1
            else:
                expect_factor = False
        if expect_factor:
            raise ParseError(f"dangling '*' in {text!r}")
        result = result + MultiPoly(variables, {tuple(exps): coeff})
        if i < n and tokens[i][0] not in "+-":
            raise ParseError(f"expected '+' or '-' in {text!r}")
    return result


# --------------------------------------------------------------------------
# Laurent series in eps

class EpsilonSeries:
    """Finite Laurent series ``sum_k eps^k * coefficients[k]`` with polynomial coefficients."""

    __slots__ = ("vars", "coefficients")

    def __init__(self, variables, coefficients=None):
        self.vars = tuple(variables)
        clean = {}
        for k, p in (coefficients or {}).items():
            if p.vars != self.vars:
                raise ValueError(f"universe mismatch: {p.vars} vs {self.vars}")
            if p:
                clean[int(k)] = p
        self.coefficients = clean

    @classmethod
    def monomial(cls, k, poly):
        return cls(poly.vars, {k: poly})

    def __bool__(self):
        return bool(self.coefficients)

    def __eq__(self, other):
        if not isinstance(other, EpsilonSeries):
            return NotImplemented
        return self.vars == other.vars and self.coefficients == other.coefficients

    def __hash__(self):
        return hash((self.vars, frozenset(self.coefficients.items())))

    def __repr__(self):
        inner = ", ".join(f"{k}: {p}" for k, p in sorted(self.coefficients.items()))
        return f"EpsilonSeries({{{inner}}})"

    @property
    def min_exponent(self):
        if not self.coefficients:
            raise EmptySeries("empty series has no minimal exponent")
        return min(self.coefficients)

    @property
    def max_exponent(self):
        if not self.coefficients:
            raise EmptySeries("empty series has no maximal exponent")
        return max(self.coefficients)

    def coefficient(self, k):
        return self.coefficients.get(k, MultiPoly.zero(self.vars))

    def shift(self, k):
        """Multiply by ``eps**k``."""
        return EpsilonSeries(self.vars, {e + k: p for e, p in self.coefficients.items()})

    def __add__(self, other):
        if other.vars != self.vars:
            raise ValueError(f"universe mismatch: {self.vars} vs {other.vars}")
        out = dict(self.coefficients)
        for k, p in other.coefficients.items():
            out[k] = out[k] + p if k in out else p
        return EpsilonSeries(self.vars, out)

    def __neg__(self):
        return EpsilonSeries(self.vars, {k: -p for k, p in self.coefficients.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return EpsilonSeries(self.vars, {k: p.scale(other) for k, p in self.coefficients.items()})
        if other.vars != self.vars:
            raise ValueError(f"universe mismatch: {self.vars} vs {other.vars}")
        out = {}
        for k1, p1 in self.coefficients.items():
            for k2, p2 in other.coefficients.items():
                prod = p1 * p2
                out[k1 + k2] = out[k1 + k2] + prod if k1 + k2 in out else prod
        return EpsilonSeries(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        result = EpsilonSeries.monomial(0, MultiPoly.const(self.vars, 1))
        for _ in range(n):
            result = result * self
        return result

    def limit(self):
        return eps_limit(self)

    def to_dict(self):
        return {k: str(p) for k, p in sorted(self.coefficients.items())}


# --------------------------------------------------------------------------
# functional surface

def poly_add(a, b):
    return a + b


def poly_mul(a, b):
    return a * b


def poly_partial(p, v):
    return p.partial(v)


def poly_substitute(p, mapping):
    """Homomorphic substitution of each variable by an :class:`EpsilonSeries`.

    All images must share one target universe.  Raises
    :class:`UnmappedVariable` if a variable occurring in ``p`` has no image.
    """
    used = p.variables_used()
    missing = [v for v in used if v not in mapping]
    if missing:
        raise UnmappedVariable(f"no image for {', '.join(missing)}")
    images = [mapping[v] for v in used]
    if images:
        target = images[0].vars
    elif mapping:
        target = next(iter(mapping.values())).vars
    else:
        target = p.vars
    for s in images:
        if s.vars != target:
            raise ValueError("substitution images over different universes")

    powers = {}

    def power(i, k):
        key = (i, k)
        if key not in powers:
            powers[key] = mapping[p.vars[i]] ** k
        return powers[key]

    one = EpsilonSeries.monomial(0, MultiPoly.const(target, 1))
    result = EpsilonSeries(target)
    for e, c in p.terms.items():
        term = one * c
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        result = result + term
    return result


def eps_limit(s):
    """Return ``(shift, limit)`` with ``eps**shift * s -> limit`` as eps -> 0."""
    if not s.coefficients:
        raise EmptySeries("cannot take the limit of an empty series")
    k = s.min_exponent
    return -k, s.coefficients[k]


def eps_coefficient(s, k):
    return s.coefficient(k)
