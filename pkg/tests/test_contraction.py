import json

import pytest

from liecontract import (
    GradedScaling,
    IllDefinedContraction,
    IncompleteScaling,
    ParseError,
    builtin_algebra,
    contract,
    contract_and_compare,
    contraction_limit,
    parse_relabel,
    parse_scale,
    rescale,
    same_structure,
    trivial_central_extension,
)
from liecontract.contraction import scaling_from_dict, scaling_to_dict
from liecontract.verify import GALILEI_RELABEL, nonrelativistic_scaling


def test_nonrelativistic_scaling_exponents(ext_hbar):
    sa = rescale(ext_hbar, nonrelativistic_scaling(ext_hbar))
    assert sa.exponent("kp1", "kp2", "j3") == 2
    assert sa.exponent("p1", "kp1", "hbar") == 2
    assert sa.exponent("p1", "kp1", "m") == 0
    assert sa.exponent("hbar", "kp1", "p1") == 0


def test_identity_scaling(poincare):
    s = GradedScaling.identity(poincare)
    sa = rescale(poincare, s)
    assert all(exp == 0 for _, _, _, exp, _ in sa.terms())
    assert contract(poincare, s).constants == poincare.constants


def test_energy_shifted_contraction_gives_extended_galilei(ext_hbar, ext_galilei):
    C = contract(ext_hbar, nonrelativistic_scaling(ext_hbar))
    assert contract_and_compare(ext_hbar, nonrelativistic_scaling(ext_hbar), ext_galilei, GALILEI_RELABEL)
    assert same_structure(C, ext_galilei, GALILEI_RELABEL)
    assert not C.bracket_basis("kp1", "kp2")


def test_mass_exponent_one_decouples_central_charge(ext_hbar):
    s = GradedScaling({**nonrelativistic_scaling(ext_hbar).exponents, "m": 1})
    target = trivial_central_extension(builtin_algebra("galilei"), "m", position=0)
    assert same_structure(contract(ext_hbar, s), target, GALILEI_RELABEL)


def test_poincare_vs_galilei_differs_at_identity(poincare):
    G = builtin_algebra("galilei")
    s = GradedScaling.identity(poincare)
    assert not contract_and_compare(poincare, s, G, {f"kp{i}": f"kg{i}" for i in (1, 2, 3)})


def test_ill_defined_lists_every_offender(poincare):
    s = parse_scale("H=1,P=0,K=0,J=0", poincare)
    sa = rescale(poincare, s)
    assert sa.exponent("p1", "kp1", "h") == -1
    with pytest.raises(IllDefinedContraction) as info:
        contraction_limit(sa)
    assert sorted(o[:3] for o in info.value.offending) == [
        ("p1", "kp1", "h"), ("p2", "kp2", "h"), ("p3", "kp3", "h")]
    assert "[p3, kp3] -> h ~ eps^-1" in str(info.value)


def test_rescale_composes(ext_hbar):
    s = nonrelativistic_scaling(ext_hbar)
    twice = rescale(rescale(ext_hbar, s), s)
    assert twice.scaling == s + s
    assert twice.exponent("kp1", "kp2", "j3") == 4


def test_scaling_must_cover(poincare):
    with pytest.raises(IncompleteScaling):
        rescale(poincare, GradedScaling({"h": 0}))
    with pytest.raises(IncompleteScaling):
        parse_scale("J=0,P=1", poincare)


def test_parse_scale_groups(ext_hbar):
    s = parse_scale("J=0,P=1,K=1,Hbar=0,M=2", ext_hbar)
    assert s == nonrelativistic_scaling(ext_hbar)
    assert parse_scale("all=0,M=2", ext_hbar)["m"] == 2
    with pytest.raises(ParseError):
        parse_scale("J=zero", ext_hbar)
    with pytest.raises(ParseError):
        parse_scale("Q=1", ext_hbar)
    # without group expansion only exact generator names are accepted
    with pytest.raises(ParseError):
        parse_scale("J=0", ext_hbar, groups=False)


def test_parse_relabel(ext_hbar, ext_galilei):
    assert parse_relabel("KP=KG,Hbar=H", ext_hbar, ext_galilei) == GALILEI_RELABEL
    with pytest.raises(ParseError):
        parse_relabel("J=KG,K=P", builtin_algebra("so3"), ext_galilei)


def test_scaling_file_format(ext_hbar):
    s = nonrelativistic_scaling(ext_hbar)
    data = json.loads(json.dumps(scaling_to_dict(s, ext_hbar)))
    assert scaling_from_dict(data, ext_hbar) == s
    with pytest.raises(ParseError):
        scaling_from_dict({"algebra": "poincare", "exponents": data["exponents"]}, ext_hbar)
