from math import prod

import pytest
from hypothesis import given, strategies as st

from packetcorr.arith import HalfInteger
from packetcorr.correspondence import psi_real_to_padic
from packetcorr.packets import (
    PacketLabel, PureFormLabel, all_labels, all_pure_forms, block_fibers, complete_param_regular_real,
    complete_param_via_standard_module, descends, epsilon_eta_form, epsilon_of_label, epsilon_q_form,
    leta_to_pq, make_label, minus_identity_expected, packet_ddr_padic, packet_regular_real,
    packet_singular_labels, pq_to_leta, regularize, standard_module_data,
    verify_regular_correspondence,
)
from packetcorr.parameters import (
    GOOD, ORTH, SYMP, Character, Multisegment, PAdicArthurParameter, RealArthurParameter,
    RealLParameter, Segment, ValidationError,
)
from oracles import minimal_shifts, packet_size


def h(x):
    return HalfInteger.of(x)


def psi(*blocks, parity=None):
    return RealArthurParameter.of(blocks, parity)


def pq(p, q):
    return PureFormLabel(tuple(p), tuple(q))


def label(l, eta):
    return PacketLabel(tuple(l), tuple(eta))


P22 = psi((2, 2))


def test_pq_to_leta_examples():
    assert pq_to_leta(pq([2], [0]), P22) == label([0], [-1])
    assert pq_to_leta(pq([1], [1]), P22) == label([1], [1])
    assert pq_to_leta(pq([0], [2]), P22) == label([0], [1])


def test_leta_to_pq_examples():
    assert leta_to_pq(label([0], [-1]), P22) == pq([2], [0])
    assert leta_to_pq(label([1], [1]), P22) == pq([1], [1])
    assert leta_to_pq(label([1], [-1]), P22) == pq([1], [1])
    assert leta_to_pq(label([0], [1]), P22) == pq([0], [2])


def test_label_canonical_form():
    assert make_label([1], [-1], (2,)) == label([1], [1])
    with pytest.raises(ValidationError):
        make_label([2], [1], (2,))
    with pytest.raises(ValidationError):
        make_label([0], [0], (2,))


def test_epsilon_examples():
    assert epsilon_of_label(label([0], [1]), P22) == (-1,)
    assert epsilon_of_label(label([0], [-1]), P22) == (-1,)
    assert epsilon_of_label(label([1], [1]), P22) == (1,)
    assert epsilon_q_form(pq([1], [1]), P22.ms) == (1,)


def _chars(*ts):
    return RealLParameter(tuple(Character(h(t), h(s)) for t, s in ts))


def test_complete_param_regular_real_examples():
    xi = complete_param_regular_real(P22, label([1], [1]))
    assert xi.lparam == _chars((1, 0.5), (1, -0.5)) and xi.character.is_trivial()
    xi = complete_param_regular_real(P22, label([0], [1]))
    assert xi.lparam == _chars((0.5, 0), (1.5, 0))
    assert xi.character.as_dict() == {Character(h(0.5), h(0)): 1, Character(h(1.5), h(0)): -1}
    xi = complete_param_regular_real(psi((0, 1)), label([0], [1]))
    assert xi.lparam == _chars((0, 0)) and xi.character.values() == (1,)
    with pytest.raises(ValidationError):
        complete_param_regular_real(psi((2, 2), (2, 2)), label([0, 0], [1, 1]))


def test_standard_module_data_examples():
    d = standard_module_data(P22, pq([1], [1]))
    assert (d.nu, d.chi, d.mu, d.eps_minus) == ((1,), (2,), (), ())
    d = standard_module_data(P22, pq([2], [0]))
    assert d.nu == () and d.chi == () and d.mu == (h(1.5), h(0.5))
    # eta = -1 sits at the B + l end, i.e. at mu = 1/2, and the signs alternate
    assert dict(zip(d.mu, d.eps_minus)) == {h(0.5): -1, h(1.5): 1}
    d = standard_module_data(psi((0, 1)), pq([1], [0]))
    assert (d.nu, d.chi, d.mu) == ((), (), (h(0),))


@pytest.mark.parametrize("p", [pq([1], [1]), pq([2], [0]), pq([0], [2])])
def test_standard_module_route_matches_on_examples(p):
    assert complete_param_via_standard_module(P22, p) == complete_param_regular_real(P22, pq_to_leta(p, P22))


def test_packet_regular_real_examples():
    members = packet_regular_real(P22)
    assert [(str(m.label), m.epsilon) for m in members] == [
        ("l=(0),eta=(-)", (-1,)), ("l=(0),eta=(+)", (-1,)), ("l=(1),eta=(+)", (1,))]
    assert all(m.minus_identity_ok for m in members)
    # U(1,0) and U(0,1): one member per pure form
    assert len(packet_regular_real(psi((0, 1)))) == 2
    gg, _ = regularize(psi((4, 2), (2, 2)))
    assert len(packet_regular_real(gg)) == 9


def _ms(*pairs):
    return Multisegment(tuple(Segment(h(a), h(b)) for a, b in pairs))


def test_packet_ddr_padic_examples():
    q = PAdicArthurParameter(((3, 2),), SYMP)
    members = {m.label: m for m in packet_ddr_padic(q)}
    assert len(members) == 3  # H = SO(7): no product filter
    l1 = members[label([1], [1])]
    assert l1.complete.lparam == _ms((-0.5, 1.5), (-1.5, 0.5)) and l1.complete.character.is_trivial()
    # a+b odd forces a symplectic dual; two members
    assert len(packet_ddr_padic(PAdicArthurParameter(((4, 1),), SYMP))) == 2
    # dual SO(3,C), H = Sp(2): only product-one labels survive
    kept = packet_ddr_padic(PAdicArthurParameter(((3, 1),), ORTH))
    assert [m.epsilon for m in kept] == [(1,)]
    with pytest.raises(ValidationError):
        packet_ddr_padic(PAdicArthurParameter(((5, 2), (3, 2)), SYMP))


def test_bad_parity_packets_are_singletons():
    p = psi((0, 1), (2, 1))
    q = psi_real_to_padic(p, 2)
    (member,) = packet_ddr_padic(q)
    assert member.label is None
    rep = verify_regular_correspondence(p, 2)
    assert rep.ok and len(rep.matches) == 1


def test_verify_regular_correspondence_examples():
    rep = verify_regular_correspondence(P22, 1)
    assert rep.ok and str(rep.H) == "SO(7)"
    assert label([1], [1]) in {m.padic_label for m in rep.matches}
    rep = verify_regular_correspondence(psi((0, 1)), 2)
    assert rep.ok and len(rep.matches) == 2


def test_verify_symplectic_case_uses_flips():
    # n = 3, delta odd: H = Sp(N-1)
    rep = verify_regular_correspondence(psi((2, 3)), 3)
    assert rep.H.symplectic and rep.ok
    assert any(m.flipped for m in rep.matches)


def test_regularize_examples():
    gg, t = regularize(psi((4, 2), (2, 2)))
    assert t == (1, 0) and gg == psi((6, 2), (2, 2))
    p = psi((6, 2), (2, 2))
    assert regularize(p) == (p, (0, 0))
    # [3/2,5/2] and [1/2,3/2] still share 3/2 after one shift, so two are needed
    gg, t = regularize(psi((2, 2), (2, 2)))
    assert t == (2, 0) and gg == psi((6, 2), (2, 2))


def test_descends_examples():
    fibers = block_fibers(psi((2, 2), (2, 2)).blocks)
    assert descends((-1, -1), fibers)
    assert not descends((-1, 1), fibers)
    assert descends((-1, 1), block_fibers(psi((4, 2), (2, 2)).blocks))
    assert not descends((-1, 1), [(0,), (1,)], product_one=True)


def test_packet_singular_labels_examples():
    rows = {(s.label.l): s for s in packet_singular_labels(psi((2, 2), (2, 2)), 1)}
    assert not rows[(0, 0)].real_vanishes and not rows[(1, 1)].real_vanishes
    assert rows[(0, 1)].real_vanishes and rows[(1, 0)].real_vanishes
    assert all(s.agree for s in rows.values())
    assert not any(s.real_vanishes for s in packet_singular_labels(psi((4, 2), (2, 2)), 1))
    assert not any(s.real_vanishes for s in packet_singular_labels(P22, 1))


# ---- properties ----

ms_strategy = st.lists(st.integers(1, 4), min_size=1, max_size=4)


@given(ms_strategy, st.data())
def test_epsilon_formulas_and_minus_identity(ms, data):
    ms = tuple(ms)
    p = data.draw(st.sampled_from(all_pure_forms(ms)))
    lab = pq_to_leta(p, ms)
    assert epsilon_q_form(p, ms) == epsilon_eta_form(lab, ms)
    assert prod(epsilon_q_form(p, ms)) == minus_identity_expected(p)
    assert leta_to_pq(lab, ms) == p


@given(ms_strategy)
def test_labels_and_pure_forms_are_in_bijection(ms):
    ms = tuple(ms)
    assert len(all_pure_forms(ms)) == packet_size(ms)
    assert sorted({pq_to_leta(p, ms) for p in all_pure_forms(ms)}) == all_labels(ms)


@st.composite
def good_psi(draw, regular=None):
    blocks = draw(st.lists(st.tuples(st.integers(-8, 8), st.integers(1, 4)), min_size=1, max_size=3))
    n = sum(m for _, m in blocks)
    return RealArthurParameter.of([(k if (k + m - n) % 2 == 0 else k + 1, m) for k, m in blocks], GOOD)


@given(good_psi())
def test_regularize_is_minimal(p):
    gg, t = regularize(p)
    want = minimal_shifts([(b.B.twice, b.A.twice) for b in p.blocks])
    assert t == want
    assert [b.m for b in gg.blocks] == list(p.ms)


@given(good_psi())
def test_packet_cardinality(p):
    gg, _ = regularize(p)
    assert len(packet_regular_real(gg)) == packet_size(gg.ms)
