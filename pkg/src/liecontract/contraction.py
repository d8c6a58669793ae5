"""Graded Inonu-Wigner contractions.

A :class:`GradedScaling` assigns an integer ``n_a`` to each generator, meaning
``X'_a = eps^{n_a} X_a``.  The rescaled constants are
``f'^c_ab = eps^{n_a + n_b - n_c} f^c_ab``; the limit eps -> 0 exists when no
exponent is negative and keeps exactly the constants of exponent zero.
"""

import re
from dataclasses import dataclass

from .algebra import LieAlgebra, jacobi_check, same_structure
from .errors import IllDefinedContraction, IncompleteScaling, ParseError


@dataclass(frozen=True)
class GradedScaling:
    exponents: dict

    def __post_init__(self):
        object.__setattr__(self, "exponents", {g: int(n) for g, n in self.exponents.items()})

    def __getitem__(self, name):
        return self.exponents[name]

    def __add__(self, other):
        if set(self.exponents) != set(other.exponents):
            raise IncompleteScaling("scalings cover different generators")
        return GradedScaling({g: n + other.exponents[g] for g, n in self.exponents.items()})

    def shifted(self, k):
        return GradedScaling({g: n + k for g, n in self.exponents.items()})

    @classmethod
    def identity(cls, L):
        return cls({g: 0 for g in L.generators})

    def check_covers(self, L):
        gens = set(L.generators)
        missing = sorted(gens - set(self.exponents), key=L.generators.index)
        extra = sorted(set(self.exponents) - gens)
        if missing or extra:
            parts = []
            if missing:
                parts.append(f"missing {', '.join(missing)}")
            if extra:
                parts.append(f"unknown {', '.join(extra)}")
            raise IncompleteScaling(f"scaling for {L.name}: " + "; ".join(parts))

    def to_dict(self, L=None):
        order = L.generators if L is not None else sorted(self.exponents)
        return {g: self.exponents[g] for g in order}


@dataclass(frozen=True)
class ScaledAlgebra:
    """``scaled_constants[(a, b, c)] = (eps exponent, f)`` over index triples with ``a < b``."""

    base: LieAlgebra
    scaling: GradedScaling
    scaled_constants: dict

    def exponent(self, a, b, c):
        L = self.base
        i, j, k = L.index(a), L.index(b), L.index(c)
        key = (min(i, j), max(i, j), k)
        return self.scaled_constants[key][0]

    def terms(self):
        """``(a, b, c, exponent, f)`` by generator name, in storage order."""
        g = self.base.generators
        return [(g[i], g[j], g[k], e, f) for (i, j, k), (e, f) in sorted(self.scaled_constants.items())]


def rescale(L, s):
    """Tag every structure constant of ``L`` with its eps exponent under ``s``.

    ``L`` may itself be a :class:`ScaledAlgebra`; the scalings then compose
    additively.
    """
    if isinstance(L, ScaledAlgebra):
        return rescale(L.base, L.scaling + s)
    s.check_covers(L)
    n = [s[g] for g in L.generators]
    scaled = {(a, b, c): (n[a] + n[b] - n[c], f) for (a, b, c), f in L.constants.items()}
    return ScaledAlgebra(L, s, scaled)


def contraction_limit(sa, name=None):
    """The eps -> 0 limit of a :class:`ScaledAlgebra`.

    Raises :class:`IllDefinedContraction` listing every diverging constant.
    """
    bad = [(a, b, c, e) for a, b, c, e, _ in sa.terms() if e < 0]
    if bad:
        raise IllDefinedContraction(bad)
    kept = {key: f for key, (e, f) in sa.scaled_constants.items() if e == 0}
    out = LieAlgebra(name or f"{sa.base.name}~", sa.base.generators, kept)
    broken = jacobi_check(out)
    if broken:
        # unreachable for a valid base: the exponent-zero part of a graded Lie bracket is a Lie bracket
        raise RuntimeError(f"contraction of {sa.base.name} violates Jacobi at {broken[:3]}")
    return out


def contract(L, s, name=None):
    return contraction_limit(rescale(L, s), name=name)


def contract_and_compare(L, s, reference, relabel=None):
    """Contract ``L`` under ``s`` and compare constants with ``reference`` under ``relabel``."""
    return same_structure(contract(L, s), reference, relabel)


# --------------------------------------------------------------------------
# text forms for scalings and relabelings

def expand_group(name, generators):
    """Generators named by a catalog group label.

    ``J`` -> j1, j2, j3; ``KP`` -> kp1..kp3; ``K`` -> every kp*/kg* family;
    ``Hbar`` -> hbar; an exact generator name maps to itself.
    """
    low = name.lower()
    if low in generators:
        return [low]
    if name in generators:
        return [name]
    pattern = re.compile(re.escape(low) + r"[a-z]?\d")
    return [g for g in generators if pattern.fullmatch(g)]


def _pairs(text):
    out = []
    for item in filter(None, (t.strip() for t in text.split(","))):
        if "=" not in item:
            raise ParseError(f"expected NAME=VALUE, got {item!r}")
        k, v = (x.strip() for x in item.split("=", 1))
        out.append((k, v))
    return out


def parse_scale(text, L, groups=True):
    """Parse ``J=0,P=1,K=1,Hbar=0,M=2`` (or ``all=0``) into a :class:`GradedScaling`.

    With ``groups=False`` every key must be an exact generator name.
    Later keys override earlier ones, so ``all=0,H=1`` is allowed.
    """
    exps = {}
    for key, val in _pairs(text):
        try:
            n = int(val)
        except ValueError:
            raise ParseError(f"exponent for {key!r} is not an integer: {val!r}") from None
        if key == "all":
            targets = list(L.generators)
        elif groups:
            targets = expand_group(key, L.generators)
        else:
            targets = [key] if key in L else []
        if not targets:
            raise ParseError(f"{key!r} names no generator of {L.name}")
        for g in targets:
            exps[g] = n
    s = GradedScaling(exps)
    s.check_covers(L)
    return s


def parse_relabel(text, source, target, groups=True):
    """Parse ``KP=KG,Hbar=H`` into a generator map from ``source`` to ``target``.

    Group labels pair family members by position (kp1 -> kg1, ...).
    """
    mapping = {}
    for key, val in _pairs(text):
        if groups:
            left = expand_group(key, source.generators)
            right = expand_group(val, target.generators)
        else:
            left = [key] if key in source else []
            right = [val] if val in target else []
        if not left or len(left) != len(right):
            raise ParseError(f"cannot pair {key!r} with {val!r}")
        mapping.update(zip(left, right))
    return mapping


def scaling_from_dict(data, L):
    if not isinstance(data, dict) or set(data) != {"algebra", "exponents"}:
        raise ParseError("scaling file needs exactly the fields 'algebra' and 'exponents'")
    if data["algebra"] != L.name:
        raise ParseError(f"scaling is for {data['algebra']!r}, not {L.name!r}")
    exps = data["exponents"]
    if not isinstance(exps, dict) or not all(isinstance(v, int) for v in exps.values()):
        raise ParseError("'exponents' must map generator names to integers")
    s = GradedScaling(exps)
    s.check_covers(L)
    return s


def scaling_to_dict(s, L):
    return {"algebra": L.name, "exponents": s.to_dict(L)}
