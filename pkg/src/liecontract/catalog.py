"""Builtin algebras of the kinematical groups and their reference Casimirs.

Generator names: ``j1..j3`` rotations, ``p1..p3`` momenta, ``kp1..kp3``
Lorentz boosts, ``kg1..kg3`` Galilean boosts, ``h`` energy, ``hbar`` the
shifted energy ``h - m``, ``m`` the central mass charge.  Catalog algebras
order their generators ``m, h|hbar, j, p, k``, which also fixes the monomial
order of every polynomial written over their dual coordinates.
"""

from dataclasses import dataclass, field
from functools import lru_cache

from .algebra import BasisChange, change_basis, make_algebra, trivial_central_extension
from .errors import UnknownCatalogName
from .poly import MultiPoly

IDX = (1, 2, 3)


def levi_civita(i, j, k):
    return (i - j) * (j - k) * (k - i) // 2


def _rot(prefix):
    return [f"{prefix}{i}" for i in IDX]


J, P, KP, KG = _rot("j"), _rot("p"), _rot("kp"), _rot("kg")


def _isotropy(vectors):
    """[J_i, J_j] = eps_ijk J_k and [J_i, V_j] = eps_ijk V_k for each vector family."""
    out = []
    for i in IDX:
        for j in IDX:
            if i < j:
                out.append((f"j{i}", f"j{j}", {f"j{k}": levi_civita(i, j, k) for k in IDX if levi_civita(i, j, k)}))
    for fam in vectors:
        for i in IDX:
            for j in IDX:
                terms = {f"{fam}{k}": levi_civita(i, j, k) for k in IDX if levi_civita(i, j, k)}
                if terms:
                    out.append((f"j{i}", f"{fam}{j}", terms))
    return out


def _so3():
    return make_algebra("so3", J, _isotropy([]))


def _iso3_h():
    return make_algebra("iso3_h", ["h"] + J + P, _isotropy(["p"]))


def _galilei(extended):
    br = _isotropy(["p", "kg"])
    br += [("h", f"kg{i}", {f"p{i}": -1}) for i in IDX]
    gens = ["h"] + J + P + KG
    if extended:
        br += [(f"p{i}", f"kg{i}", {"m": -1}) for i in IDX]
        gens = ["m"] + gens
    return make_algebra("extended_galilei" if extended else "galilei", gens, br)


def _poincare():
    br = _isotropy(["p", "kp"])
    br += [("h", f"kp{i}", {f"p{i}": -1}) for i in IDX]
    br += [(f"p{i}", f"kp{i}", {"h": -1}) for i in IDX]
    for i in IDX:
        for j in IDX:
            if i < j:
                br.append((f"kp{i}", f"kp{j}", {f"j{k}": -levi_civita(i, j, k) for k in IDX if levi_civita(i, j, k)}))
    return make_algebra("poincare", ["h"] + J + P + KP, br)


# Rotation block of the tensor basis.  With the vector rule
# [M_mn, P_r] = eta_mr P_n - eta_nr P_m and signature (+,-,-,-), rotations
# acting on P with the orientation of the kinematical table are M_32, M_13, M_21.
LORENTZ_ROTATIONS = ((3, 2), (1, 3), (2, 1))
LORENTZ_BOOSTS = ((0, 1), (0, 2), (0, 3))
METRIC = (1, -1, -1, -1)


def _eta(m, n):
    return METRIC[m] if m == n else 0


def lorentz_tensor_algebra(name="poincare_lorentz4", pairs=LORENTZ_BOOSTS + LORENTZ_ROTATIONS):
    """Poincare algebra over ``P_mu`` and antisymmetric ``M_mn`` (indices 0..3).

    ``pairs`` chooses the oriented index pair naming each tensor generator.
    The tensor bracket is the one induced by letting ``M`` act on every index,
    which is the only form consistent with the vector rule and antisymmetry.
    """
    names = {}
    for m, n in pairs:
        names[(m, n)] = (f"m{m}{n}", 1)
        names[(n, m)] = (f"m{m}{n}", -1)

    def tensor(m, n, coeff, acc):
        if m == n or not coeff:
            return
        g, s = names[(m, n)]
        acc[g] = acc.get(g, 0) + s * coeff

    gens = [f"p{mu}" for mu in range(4)] + [f"m{m}{n}" for m, n in pairs]
    brackets = []
    for m, n in pairs:
        for r in range(4):
            terms = {}
            if _eta(m, r):
                terms[f"p{n}"] = terms.get(f"p{n}", 0) + _eta(m, r)
            if _eta(n, r):
                terms[f"p{m}"] = terms.get(f"p{m}", 0) - _eta(n, r)
            terms = {g: c for g, c in terms.items() if c}
            if terms:
                brackets.append((f"m{m}{n}", f"p{r}", terms))
    tensor_pairs = list(pairs)
    for a in range(len(tensor_pairs)):
        for b in range(a + 1, len(tensor_pairs)):
            (m, n), (r, s) = tensor_pairs[a], tensor_pairs[b]
            acc = {}
            tensor(n, s, _eta(m, r), acc)
            tensor(m, s, -_eta(n, r), acc)
            tensor(n, r, -_eta(m, s), acc)
            tensor(m, r, _eta(n, s), acc)
            acc = {g: c for g, c in acc.items() if c}
            if acc:
                brackets.append((f"m{m}{n}", f"m{r}{s}", acc))
    return make_algebra(name, gens, brackets)


# kinematical name -> tensor name, realising J_k ~ M_ij (i, j, k cyclic, orientation above)
LORENTZ_RELABEL = {
    "poincare_lorentz4->poincare": {
        "p0": "h", "p1": "p1", "p2": "p2", "p3": "p3",
        "m01": "kp1", "m02": "kp2", "m03": "kp3",
        "m32": "j1", "m13": "j2", "m21": "j3",
    }
}


def _extended_poincare():
    return trivial_central_extension(_poincare(), "m", position=0, name="extended_poincare")


def _extended_poincare_hbar():
    L = _extended_poincare()
    bc = BasisChange.from_definitions(L, {"h": ("hbar", {"h": 1, "m": -1})})
    return change_basis(L, bc, name="extended_poincare_hbar")


_BUILDERS = {
    "so3": _so3,
    "iso3_h": _iso3_h,
    "galilei": lambda: _galilei(False),
    "extended_galilei": lambda: _galilei(True),
    "poincare": _poincare,
    "poincare_lorentz4": lorentz_tensor_algebra,
    "extended_poincare": _extended_poincare,
    "extended_poincare_hbar": _extended_poincare_hbar,
}


# --------------------------------------------------------------------------
# reference invariants

def _dot(a, b):
    return " + ".join(f"{x}*{y}" for x, y in zip(a, b))


@dataclass(frozen=True)
class PrintedInvariant:
    """A Casimir exactly as printed, kept as signed terms so signs can be audited.

    ``terms`` is a tuple of ``(name, coefficient, polynomial)``; the printed
    expression is ``sum coefficient * polynomial``.
    """

    label: str
    anchor: str
    terms: tuple

    @property
    def polynomial(self):
        vars_ = self.terms[0][2].vars
        return sum((t.scale(c) for _, c, t in self.terms), MultiPoly.zero(vars_))

    def signs(self):
        return tuple(1 if c > 0 else -1 for _, c, _ in self.terms)

    def with_signs(self, signs):
        return sum((t.scale(abs(c) * s) for (_, c, t), s in zip(self.terms, signs)),
                   MultiPoly.zero(self.terms[0][2].vars))


def quartic_terms(vars_, energy, boosts, signs):
    """Signed terms of ``E^2 (j.j), (p.p)(k.k), (j.p)^2, (p.k)^2, E eps_ijk j_k p_i k_j``.

    ``signs`` gives the printed coefficient of each term (0 drops it).
    """
    v = lambda s: MultiPoly.parse(s, vars_)
    E = v(energy)
    K = [f"{boosts}{i}" for i in IDX]
    eps = MultiPoly.zero(vars_)
    for i in IDX:
        for j in IDX:
            for k in IDX:
                e = levi_civita(i, j, k)
                if e:
                    eps = eps + v(f"j{k}*p{i}*{boosts}{j}").scale(e)
    pieces = [
        ("E^2 (j.j)", E * E * v(_dot(J, J))),
        ("(p.p)(k.k)", v(_dot(P, P)) * v(_dot(K, K))),
        ("(j.p)^2", v(_dot(J, P)) ** 2),
        ("(p.k)^2", v(_dot(P, K)) ** 2),
        ("E eps_ijk j_k p_i k_j", E * eps),
    ]
    return tuple((name, s, poly) for (name, poly), s in zip(pieces, signs) if s)


# printed sign patterns of the quartic Casimirs, term order as in quartic_terms
KINEMATICAL_PRINTING = (1, -1, 1, -1, -2)
SHIFTED_ENERGY_PRINTING = (1, -1, -1, 1, -2)
GALILEI_PRINTING = (1, -1, 0, 1, -2)

_ANCHOR_P = "Poincare Casimirs over the kinematical basis"
_ANCHOR_PE = "trivially extended Poincare Casimirs over the shifted-energy basis"
_ANCHOR_G = "Casimirs of the mass-extended Galilei algebra"


def _printed(name, L):
    vars_ = L.generators
    if name in ("poincare", "extended_poincare"):
        return [
            PrintedInvariant("C4P", _ANCHOR_P, quartic_terms(vars_, "h", "kp", KINEMATICAL_PRINTING)),
            PrintedInvariant("C4P", _ANCHOR_PE, quartic_terms(vars_, "h", "kp", SHIFTED_ENERGY_PRINTING)),
        ]
    if name == "extended_poincare_hbar":
        return [
            PrintedInvariant("C4PE", _ANCHOR_PE, quartic_terms(vars_, "hbar + m", "kp", SHIFTED_ENERGY_PRINTING)),
            PrintedInvariant("C4PE", _ANCHOR_P, quartic_terms(vars_, "hbar + m", "kp", KINEMATICAL_PRINTING)),
        ]
    if name == "extended_galilei":
        return [PrintedInvariant("C4G", _ANCHOR_G, quartic_terms(vars_, "m", "kg", GALILEI_PRINTING))]
    return []


@dataclass(frozen=True)
class ReferenceInvariant:
    label: str
    polynomial: MultiPoly
    anchor: str
    # sign vector chosen by the invariance oracle when the printed form was not invariant
    resolved_signs: tuple = None


@dataclass(frozen=True)
class CatalogEntry:
    algebra: object
    reference_invariants: tuple = field(default_factory=tuple)
    expected_invariant_count: int = 0
    printed_invariants: tuple = field(default_factory=tuple)

    @property
    def name(self):
        return self.algebra.name

    def reference(self, label):
        for r in self.reference_invariants:
            if r.label == label:
                return r.polynomial
        raise KeyError(label)


def _plain_references(name, L):
    v = lambda s: MultiPoly.parse(s, L.generators)
    pp = _dot(P, P)
    c2p = "h^2 - p1^2 - p2^2 - p3^2"
    table = {
        "so3": [("C2", _dot(J, J), "rotation scalar")],
        "iso3_h": [("H", "h", "shared seven-dimensional subalgebra"),
                   ("P2", pp, "shared seven-dimensional subalgebra"),
                   ("JP", _dot(J, P), "shared seven-dimensional subalgebra")],
        "galilei": [("P2", pp, "Galilei algebra without central charge")],
        "extended_galilei": [("C1G", "m", _ANCHOR_G),
                             ("C2G", "m*h - 1/2*p1^2 - 1/2*p2^2 - 1/2*p3^2", _ANCHOR_G)],
        "poincare": [("C2P", c2p, _ANCHOR_P)],
        "poincare_lorentz4": [("C2P", "p0^2 - p1^2 - p2^2 - p3^2", "tensor-basis Poincare algebra")],
        "extended_poincare": [("C1PE", "m", "trivially extended Poincare algebra"), ("C2P", c2p, _ANCHOR_P)],
        "extended_poincare_hbar": [("C1PE", "m", _ANCHOR_PE),
                                   ("C2PE", "-p1^2 - p2^2 - p3^2 + hbar^2 + m^2 + 2*hbar*m", _ANCHOR_PE)],
    }
    return [ReferenceInvariant(label, v(text), anchor) for label, text, anchor in table[name]]


def _resolved_references(L, printed):
    """One reference per printed label, with signs fixed by the invariance oracle."""
    from .invariants import resolve_signs

    out = []
    seen = set()
    for pi in printed:
        if pi.label in seen:
            continue
        seen.add(pi.label)
        solutions = resolve_signs(L, pi)
        if len(solutions) != 1:
            # ambiguous or impossible: leave it to the verification report
            continue
        signs = solutions[0]
        out.append(ReferenceInvariant(pi.label, pi.with_signs(signs), pi.anchor, resolved_signs=signs))
    return out


_EXPECTED_COUNTS = {
    "so3": 1,
    "iso3_h": 3,
    "galilei": 2,
    "extended_galilei": 3,
    "poincare": 2,
    "poincare_lorentz4": 2,
    "extended_poincare": 3,
    "extended_poincare_hbar": 3,
}


@lru_cache(maxsize=None)
def load_builtin(name):
    """Return the :class:`CatalogEntry` registered under ``name``."""
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise UnknownCatalogName(f"no builtin algebra named {name!r}") from None
    L = builder()
    printed = tuple(_printed(name, L))
    refs = _plain_references(name, L) + _resolved_references(L, printed)
    return CatalogEntry(L, tuple(refs), _EXPECTED_COUNTS[name], printed)


def builtin_algebra(name):
    return load_builtin(name).algebra


def builtin_names():
    return list(_BUILDERS)


def list_builtins():
    """``(name, dimension)`` for every builtin, in registration order."""
    return [(name, load_builtin(name).algebra.dim) for name in _BUILDERS]


def is_builtin(name):
    return name in _BUILDERS


# --------------------------------------------------------------------------
# the coadjoint operators of the extended Poincare algebra as printed
# (shifted-energy basis); each entry is (coefficient, differentiation variable)

PRINTED_COADJOINT = {
    "j1": [("j3", "j2"), ("-j2", "j3"), ("p3", "p2"), ("-p2", "p3"), ("kp3", "kp2"), ("-p2", "kp3")],
    "j2": [("-j3", "j1"), ("j1", "j3"), ("-p3", "p1"), ("p1", "p3"), ("-kp3", "kp1"), ("-kp1", "kp3")],
    "j3": [("j2", "j1"), ("-j1", "j2"), ("p2", "p1"), ("-p1", "p2"), ("kp2", "kp1"), ("-kp1", "kp2")],
    "p1": [("p3", "j2"), ("-p2", "j3"), ("-hbar - m", "kp1")],
    "p2": [("-p3", "j1"), ("p1", "j3"), ("-hbar - m", "kp2")],
    "p3": [("p2", "j1"), ("-p1", "j2"), ("-hbar - m", "kp3")],
    "kp1": [("kp3", "j2"), ("-kp2", "j3"), ("hbar + m", "p1"), ("-j3", "kp2"), ("j2", "kp3"), ("p1", "hbar")],
    "kp2": [("-kp3", "j1"), ("kp1", "j3"), ("hbar + m", "p2"), ("j3", "kp1"), ("-j1", "kp3"), ("p2", "hbar")],
    "kp3": [("kp2", "j1"), ("-kp1", "j2"), ("hbar + m", "p3"), ("-j2", "kp1"), ("j1", "kp2"), ("p3", "hbar")],
    "hbar": [("p1", "kp1"), ("p2", "kp2"), ("p3", "kp3")],
    "m": [],
}


def printed_coadjoint(L=None):
    """``{generator: {variable: coefficient polynomial}}`` for the printed system."""
    L = L or builtin_algebra("extended_poincare_hbar")
    out = {}
    for g, terms in PRINTED_COADJOINT.items():
        ops = {}
        for coeff, var in terms:
            p = MultiPoly.parse(coeff, L.generators)
            ops[var] = ops[var] + p if var in ops else p
        out[g] = ops
    return out


def printed_tensor_bracket(m, n, r, s):
    """``[M_mn, M_rs]`` by the literal printed index rule, as ``{(a, b): coeff}`` on ``M_ab``.

    Used only to audit that rule; the builtin tensor algebra uses the
    index-action form instead.
    """
    out = {}
    for coeff, pair in ((_eta(m, r), (n, s)), (-_eta(m, s), (n, r)),
                        (-_eta(n, s), (m, r)), (_eta(n, r), (m, s))):
        a, b = pair
        if coeff and a != b:
            key, sign = ((a, b), 1) if a < b else ((b, a), -1)
            out[key] = out.get(key, 0) + sign * coeff
    return {k: v for k, v in out.items() if v}


def printed_tensor_rule_asymmetries():
    """Index quadruples where the printed rule violates ``[A, B] = -[B, A]``."""
    pairs = [(a, b) for a in range(4) for b in range(a + 1, 4)]
    bad = []
    for i, (m, n) in enumerate(pairs):
        for r, s in pairs[i + 1:]:
            fwd = printed_tensor_bracket(m, n, r, s)
            back = printed_tensor_bracket(r, s, m, n)
            keys = set(fwd) | set(back)
            if any(fwd.get(k, 0) != -back.get(k, 0) for k in keys):
                bad.append((m, n, r, s))
    return bad
