import pytest
from hypothesis import given, strategies as st

from packetcorr import jsonio
from packetcorr.arith import HalfInteger, Permutation
from packetcorr.coherent import FormalCombination
from packetcorr.correspondence import ComponentCharacter, CompleteParameter, iota_L, psi_real_to_padic
from packetcorr.packets import all_labels, all_pure_forms, packet_regular_real
from packetcorr.parameters import (
    GOOD, InfinitesimalCharacter, RealArthurParameter, ValidationError, associated_L_param_real,
    inf_char_of_real_A, minimal_delta,
)


def round_trip(obj, enc, dec):
    return dec(jsonio.loads(jsonio.dumps(enc(obj))))


@st.composite
def good_psi(draw):
    blocks = draw(st.lists(st.tuples(st.integers(-8, 8), st.integers(1, 4)), min_size=1, max_size=3))
    n = sum(m for _, m in blocks)
    return RealArthurParameter.of([(k if (k + m - n) % 2 == 0 else k + 1, m) for k, m in blocks], GOOD)


@given(good_psi())
def test_parameter_round_trips(psi):
    assert round_trip(psi, jsonio.psi_to_json, jsonio.psi_from_json) == psi
    L = inf_char_of_real_A(psi)
    assert round_trip(L, jsonio.lambda_to_json, jsonio.lambda_from_json) == L
    phi = associated_L_param_real(psi)
    assert round_trip(phi, jsonio.lparam_to_json, jsonio.lparam_from_json) == phi
    delta = minimal_delta(L, 1)
    q = psi_real_to_padic(psi, delta)
    assert round_trip(q, jsonio.psi_padic_to_json, jsonio.psi_padic_from_json) == q
    m = iota_L(phi, delta)
    assert round_trip(m, jsonio.multisegment_to_json, jsonio.multisegment_from_json) == m


@given(st.lists(st.integers(1, 3), min_size=1, max_size=3))
def test_label_round_trips(ms):
    ms = tuple(ms)
    for lab in all_labels(ms):
        assert round_trip(lab, jsonio.label_to_json, jsonio.label_from_json) == lab
    for pq in all_pure_forms(ms):
        assert round_trip(pq, jsonio.pq_to_json, jsonio.pq_from_json) == pq


def test_complete_parameter_round_trips():
    psi = RealArthurParameter.of([(6, 2), (2, 2)])
    for member in packet_regular_real(psi):
        xi = member.complete
        assert round_trip(xi, jsonio.complete_to_json, jsonio.complete_from_json) == xi
    m = iota_L(associated_L_param_real(psi), 1)
    xi = CompleteParameter(m, ComponentCharacter.of({s: -1 for s in m.segments}))
    assert round_trip(xi, jsonio.complete_to_json, jsonio.complete_from_json) == xi


@given(st.permutations(range(1, 6)))
def test_permutation_round_trip(images):
    p = Permutation(tuple(images))
    assert round_trip(p, jsonio.permutation_to_json, jsonio.permutation_from_json) == p


@given(st.dictionaries(st.lists(st.integers(-6, 6), min_size=3, max_size=3).map(tuple),
                       st.integers(-3, 3)))
def test_combination_round_trip(terms):
    x = FormalCombination(terms)
    assert round_trip(x, jsonio.combination_to_json, jsonio.combination_from_json) == x


def test_wire_format():
    psi = RealArthurParameter.of([(2, 2)])
    assert jsonio.psi_to_json(psi) == {"n": 2, "blocks": [{"k": 2, "m": 2}], "parity": "good"}
    L = InfinitesimalCharacter.of([HalfInteger(3), HalfInteger(1)])
    assert jsonio.lambda_to_json(L) == {"entries_x2": [3, 1]}
    x = FormalCombination.symbol([0, 0], 2)
    assert jsonio.combination_to_json(x) == {"Theta_x2(0,0)": 2}


@pytest.mark.parametrize("text,dec", [
    ('{"blocks": [{"k": 2}]}', jsonio.psi_from_json),
    ('{"n": 3, "blocks": [{"k": 2, "m": 2}]}', jsonio.psi_from_json),
    ('{"entries_x2": [1, 3]}', jsonio.lambda_from_json),
    ('{"entries_x2": [3, 1.5]}', jsonio.lambda_from_json),
    ('{"entries_x2": [true]}', jsonio.lambda_from_json),
    ('[1, 1, 2]', jsonio.permutation_from_json),
    ('{"Theta(0,0)": 1}', jsonio.combination_from_json),
    ('{"blocks": [{"a": 3, "b": 2}], "dual": "orth"}', jsonio.psi_padic_from_json),
    ('[{"lo_x2": 1, "hi_x2": -1}]', jsonio.multisegment_from_json),
])
def test_malformed_input_is_rejected(text, dec):
    with pytest.raises(ValidationError):
        dec(jsonio.loads(text))


def test_bad_json_text():
    with pytest.raises(ValidationError):
        jsonio.loads("{not json")
