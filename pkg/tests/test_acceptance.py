"""Acceptance criteria, one marker per criterion.

The terminal summary prints one PASS/FAIL line per criterion (see conftest).
"""

import time

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liecontract import (
    AlgebraElement,
    BasisChange,
    EpsilonSeries,
    GradedScaling,
    IllDefinedContraction,
    MultiPoly,
    RationalMatrix,
    bracket,
    builtin_algebra,
    builtin_names,
    change_basis,
    coadjoint_operators,
    contract,
    contract_invariant,
    evaluate_at_rest,
    invariant_count,
    invariant_ledger,
    is_invariant,
    jacobi_check,
    load_builtin,
    nullspace,
    poly_substitute,
    rescale,
    same_structure,
    structure_differences,
    subalgebra,
)
from liecontract import catalog
from liecontract.algebra import LieAlgebra
from liecontract.catalog import LORENTZ_RELABEL, printed_coadjoint
from liecontract.invariants import resolve_signs
from liecontract.verify import PRINTED_OPERATOR_TYPOS, GALILEI_RELABEL, INFO, nonrelativistic_scaling, run_verification

criterion = pytest.mark.criterion


def P(text, L):
    return MultiPoly.parse(text, L.generators)


@pytest.fixture(scope="module")
def report():
    return run_verification()


# 1 ------------------------------------------------------------------------

@criterion(1)
def test_catalog_soundness():
    start = time.perf_counter()
    results = {name: jacobi_check(build()) for name, build in catalog._BUILDERS.items()}
    elapsed = time.perf_counter() - start
    assert len(results) == 8
    assert all(v == [] for v in results.values())
    assert elapsed < 1.0


# 2 ------------------------------------------------------------------------

@criterion(2)
def test_basis_transcription():
    L4, P10 = builtin_algebra("poincare_lorentz4"), builtin_algebra("poincare")
    relabel = LORENTZ_RELABEL["poincare_lorentz4->poincare"]
    assert {relabel[f"m0{i}"] for i in (1, 2, 3)} == {"kp1", "kp2", "kp3"}
    assert structure_differences(L4, P10, relabel) == []
    assert same_structure(L4, P10, relabel)


# 3 ------------------------------------------------------------------------

@criterion(3)
def test_shared_subalgebra():
    shared = ["h", "j1", "j2", "j3", "p1", "p2", "p3"]
    sp = subalgebra(builtin_algebra("poincare"), shared)
    sg = subalgebra(builtin_algebra("galilei"), shared)
    assert sp.dim == sg.dim == 7
    assert sp.generators == sg.generators
    assert sp.constants == sg.constants


# 4 ------------------------------------------------------------------------

@criterion(4)
def test_contraction_chain():
    EP = builtin_algebra("extended_poincare")
    EH = change_basis(EP, BasisChange.from_definitions(EP, {"h": ("hbar", {"h": 1, "m": -1})}))
    C = contract(EH, nonrelativistic_scaling(EH))
    G = builtin_algebra("extended_galilei")
    assert same_structure(C, G, GALILEI_RELABEL)
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            expected = AlgebraElement({"m": -1}) if i == j else AlgebraElement()
            assert bracket(C, AlgebraElement.basis(f"p{i}"), AlgebraElement.basis(f"kp{j}")) == expected


@criterion(4)
def test_miscaled_poincare_is_ill_defined():
    L = builtin_algebra("poincare")
    with pytest.raises(IllDefinedContraction) as info:
        contract(L, GradedScaling({g: int(g == "h") for g in L.generators}))
    assert {o[:2] for o in info.value.offending} == {("p1", "kp1"), ("p2", "kp2"), ("p3", "kp3")}


@criterion(4)
def test_corrupted_catalog_fails_the_contraction_check():
    G = builtin_algebra("extended_galilei")
    key = (G.index("p1"), G.index("kg1"), G.index("m"))
    consts = {k: v for k, v in G.constants.items() if k != key}
    broken = LieAlgebra(G.name, G.generators, consts)
    rep = run_verification(overrides={"extended_galilei": broken})
    assert rep.get("contraction.extended-galilei").status == "fail"
    assert not rep.ok


# 5 ------------------------------------------------------------------------

@criterion(5)
def test_invariant_space_dimensions():
    dims = {}
    for name, cap in (("poincare", 4), ("extended_galilei", 4)):
        led = invariant_ledger(builtin_algebra(name), cap)
        dims[name] = {d: (len(f), len(n)) for d, (f, n) in led.items()}
    assert dims["poincare"][2][0] == 1
    assert dims["poincare"][4] == (2, 1)
    assert dims["extended_galilei"][1][0] == 1
    assert dims["extended_galilei"][2] == (2, 1)
    assert dims["extended_galilei"][4][1] == 1


@criterion(5)
def test_extended_poincare_degree_four_solve_time():
    L = builtin_algebra("extended_poincare_hbar")
    start = time.perf_counter()
    led = invariant_ledger(L, 4)
    elapsed = time.perf_counter() - start
    assert len(led[1][0]) == 1
    assert len(led[2][1]) == 1
    assert len(led[4][1]) == 1
    assert elapsed < 120


# 6 ------------------------------------------------------------------------

@criterion(6)
def test_reference_polynomials_are_invariant():
    Pn, G = builtin_algebra("poincare"), builtin_algebra("extended_galilei")
    assert is_invariant(Pn, P("h^2 - p1^2 - p2^2 - p3^2", Pn))
    assert is_invariant(G, P("m", G))
    assert is_invariant(G, P("m*h - 1/2*p1^2 - 1/2*p2^2 - 1/2*p3^2", G))
    assert is_invariant(G, load_builtin("extended_galilei").reference("C4G"))


@criterion(6)
@pytest.mark.parametrize("name", ["poincare", "extended_poincare_hbar"])
def test_quartic_sign_resolution_is_unique(name, report):
    entry = load_builtin(name)
    label = entry.printed_invariants[0].label
    solutions = {tuple(resolve_signs(entry.algebra, pi)) for pi in entry.printed_invariants}
    assert len(solutions) == 1
    (sols,) = solutions
    assert sols == ((1, 1, -1, -1, 1),)
    record = report.get(f"membership.{name}.{label}.sign-resolution")
    assert record.status == "pass"
    assert any("invariant sign pattern" in d for d in record.detail)


# 7 ------------------------------------------------------------------------

@criterion(7)
def test_casimir_limits():
    L = builtin_algebra("extended_poincare_hbar")
    s = nonrelativistic_scaling(L)
    entry = load_builtin("extended_poincare_hbar")
    c1 = contract_invariant(L, s, entry.reference("C1PE"))
    assert (c1.shift, c1.limit) == (2, P("m", L))
    c2 = contract_invariant(L, s, entry.reference("C2PE"))
    assert (c2.shift, c2.limit) == (4, P("m^2", L))
    assert c2.leading_series().coefficient(2) == P("m*hbar - 1/2*p1^2 - 1/2*p2^2 - 1/2*p3^2", L).scale(2)
    c4 = contract_invariant(L, s, entry.reference("C4PE"))
    G = builtin_algebra("extended_galilei")
    assert c4.shift == 4
    assert c4.limit.rename(GALILEI_RELABEL, G.generators) == load_builtin("extended_galilei").reference("C4G")


# 8 ------------------------------------------------------------------------

@criterion(8)
def test_rest_frame_evaluations():
    pn = load_builtin("poincare")
    g = load_builtin("extended_galilei")
    Pn, G = pn.algebra, g.algebra
    assert evaluate_at_rest(pn.reference("C2P")) == P("h^2", Pn)
    assert evaluate_at_rest(pn.reference("C4P")) == P("h^2*j1^2 + h^2*j2^2 + h^2*j3^2", Pn)
    assert evaluate_at_rest(g.reference("C1G")) == P("m", G)
    at_rest = evaluate_at_rest(g.reference("C2G"))
    assert at_rest == P("m*h", G)
    # at rest the energy equals the mass: h -> m gives m^2
    assert at_rest.substitute({v: EpsilonSeries.monomial(0, P("m" if v == "h" else v, G)) for v in G.generators}) \
        .coefficient(0) == P("m^2", G)
    assert evaluate_at_rest(g.reference("C4G")) == P("m^2*j1^2 + m^2*j2^2 + m^2*j3^2", G)


# 9 ------------------------------------------------------------------------

@criterion(9)
@pytest.mark.parametrize("name,count", [("poincare", 2), ("extended_poincare", 3),
                                        ("extended_galilei", 3), ("so3", 1)])
def test_invariant_counts(name, count):
    L = builtin_algebra(name)
    assert [invariant_count(L, seed=s) for s in (0, 1)] == [count, count]


# 10 -----------------------------------------------------------------------

@criterion(10)
def test_printed_operator_audit(report):
    L = builtin_algebra("extended_poincare_hbar")
    flagged = {r.id for r in report.records if r.id.startswith("printed-operators.") and r.status == INFO
               and r.id.count(".") == 2}
    assert flagged == {f"printed-operators.{g}.d{v}" for g, v in PRINTED_OPERATOR_TYPOS}
    assert report.get("printed-operators.agreement").status == "pass"

    derived = coadjoint_operators(L)
    printed = printed_coadjoint(L)
    invariants = [r.polynomial for r in load_builtin("extended_poincare_hbar").reference_invariants]
    assert all(not derived[g].apply(p) for g in L.generators for p in invariants)

    def apply_printed(g, p):
        return sum((c * p.partial(v) for v, c in printed[g].items()), MultiPoly.zero(L.generators))

    assert any(apply_printed(g, p) for g in L.generators for p in invariants)


# 11 -----------------------------------------------------------------------

NAMES = builtin_names()
FRACS = st.fractions(min_value=-9, max_value=9, max_denominator=5)


@st.composite
def algebra_and_elements(draw, count=3):
    L = builtin_algebra(draw(st.sampled_from(NAMES)))
    elems = []
    for _ in range(count):
        coeffs = draw(st.dictionaries(st.sampled_from(L.generators), FRACS, max_size=4))
        elems.append(AlgebraElement(coeffs))
    return L, elems


@criterion(11)
@settings(max_examples=200, deadline=None)
@given(algebra_and_elements(), FRACS)
def test_bracket_bilinear_antisymmetric(data, c):
    L, (u, v, w) = data
    assert bracket(L, u, v) == bracket(L, v, u) * -1
    assert bracket(L, u * c + w, v) == bracket(L, u, v) * c + bracket(L, w, v)
    assert bracket(L, u, v * c + w) == bracket(L, u, v) * c + bracket(L, u, w)
    assert not bracket(L, u, u)


VARS = ("m", "h", "j1", "p1", "kp1")


def small_polys(max_exp=3, max_terms=5):
    expo = st.tuples(*[st.integers(0, max_exp)] * len(VARS))
    return st.dictionaries(expo, FRACS, max_size=max_terms).map(lambda d: MultiPoly(VARS, d))


@criterion(11)
@settings(max_examples=200, deadline=None)
@given(small_polys(), small_polys(), st.sampled_from(VARS))
def test_leibniz_rule(p, q, v):
    assert (p * q).partial(v) == p.partial(v) * q + p * q.partial(v)


@criterion(11)
@settings(max_examples=200, deadline=None)
@given(small_polys(2, 4), small_polys(2, 4), st.lists(st.integers(-3, 3), min_size=len(VARS), max_size=len(VARS)))
def test_substitution_homomorphism(p, q, shifts):
    images = {v: EpsilonSeries.monomial(k, MultiPoly.var(VARS, v)) + EpsilonSeries.monomial(0, MultiPoly.const(VARS, 1))
              for v, k in zip(VARS, shifts)}
    assert poly_substitute(p * q, images) == poly_substitute(p, images) * poly_substitute(q, images)
    assert poly_substitute(p + q, images) == poly_substitute(p, images) + poly_substitute(q, images)


@criterion(11)
@settings(max_examples=200, deadline=None)
@given(st.integers(1, 7).flatmap(lambda c: st.lists(
    st.lists(FRACS, min_size=c, max_size=c), min_size=1, max_size=7)))
def test_nullspace_annihilated(rows):
    m = RationalMatrix.from_rows(rows)
    for v in nullspace(m):
        assert all(x == 0 for x in m.apply(v))


@criterion(11)
@settings(max_examples=200, deadline=None)
@given(st.sampled_from(NAMES), st.data())
def test_contraction_preserves_jacobi(name, data):
    L = builtin_algebra(name)
    s = GradedScaling({g: data.draw(st.integers(0, 3), label=g) for g in L.generators})
    sa = rescale(L, s)
    try:
        C = contract(L, s)
    except IllDefinedContraction as exc:
        assert exc.offending
        assert all(sa.exponent(a, b, c) < 0 for a, b, c, _ in exc.offending)
        return
    assert jacobi_check(C) == []
    assert all(e >= 0 for *_, e, _ in sa.terms())
