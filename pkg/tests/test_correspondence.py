from collections import Counter

import pytest
from hypothesis import given, strategies as st

from packetcorr.arith import HalfInteger
from packetcorr.correspondence import (
    ComponentCharacter, CompleteParameter, admissible_psi_characters, associated_L_param_padic,
    component_structure, component_structure_padic, iota_L, lambda_to_lambdap,
    psi_component_structure, psi_real_to_padic, restriction_class, tilde_iota, transfer_character,
)
from packetcorr.orbits import L_param_of_involution, all_block_involutions, BlockStructure, kind_for
from packetcorr.parameters import (
    GOOD, ORTH, SYMP, Character, InfinitesimalCharacter, Multisegment, PAdicArthurParameter,
    RealArthurParameter, RealLParameter, Segment, ValidationError, associated_L_param_real,
    inf_char_of_real_A, minimal_delta, target_group,
)
from oracles import lambdap_by_segments


def h(x):
    return HalfInteger.of(x)


def lam(*xs):
    return InfinitesimalCharacter.of(h(x) for x in xs)


def phi(*ts):
    return RealLParameter(tuple(Character(h(t), h(s)) for t, s in ts))


def seg(lo, hi):
    return Segment(h(lo), h(hi))


def ms(*pairs):
    return Multisegment(tuple(seg(a, b) for a, b in pairs))


def test_lambda_to_lambdap_examples():
    p = lambda_to_lambdap(lam(1.5, 0.5), 1)
    assert (p[1.5], p[-1.5], p[0.5], p[-0.5], p.N) == (1, 1, 2, 2, 6)
    with pytest.raises(ValidationError):
        lambda_to_lambdap(lam(0), 1)  # on the boundary lambda_n = (1 - delta)/2
    p = lambda_to_lambdap(lam(0), 3)
    assert (p[-1], p[0], p[1], p.N) == (1, 1, 1, 3)
    p = lambda_to_lambdap(lam(1, 0), 2)
    assert (p[1.5], p[0.5], p[-0.5], p.N) == (1, 2, 2, 6)
    with pytest.raises(ValidationError):
        lambda_to_lambdap(lam(1.5, 0.5), 0)


def test_psi_real_to_padic_examples():
    q = psi_real_to_padic(RealArthurParameter.of([(2, 2)]), 1)
    assert [(b.a, b.b) for b in q.blocks] == [(3, 2)] and q.dual_type == SYMP
    q = psi_real_to_padic(RealArthurParameter.of([(4, 2), (2, 2)]), 1)
    assert [(b.a, b.b) for b in q.blocks] == [(5, 2), (3, 2)]
    with pytest.raises(ValidationError):
        psi_real_to_padic(RealArthurParameter.of([(2, 2)]), 0)


def test_iota_L_examples():
    assert iota_L(phi((1, 0.5), (1, -0.5)), 1) == ms((-0.5, 1.5), (-1.5, 0.5))
    assert iota_L(phi((0, 0)), 1) == ms((0, 0))
    assert iota_L(phi((0.5, 0), (1.5, 0)), 1) == ms((-0.5, 0.5), (-1.5, 1.5))


def test_component_structure_examples():
    st1 = component_structure(phi((0.5, 0), (1.5, 0)))
    assert st1.rank == 2 and all(c.mult == 1 for c in st1.i_plus)
    st2 = component_structure(phi((1, 0.5), (1, -0.5)))
    assert st2.rank == 0 and [c.key for c in st2.j_reps] == [Character(h(1), h(0.5))]
    st3 = component_structure(phi((0.5, 0), (0.5, 0)))
    assert st3.rank == 1 and st3.i_plus[0].mult == 2
    with pytest.raises(ValidationError):
        component_structure(ms((0, 0)))


def test_component_structure_bad_parity_has_no_i_plus():
    st_ = component_structure(phi((0, 0), (1, 0)))
    assert st_.rank == 0 and {c.kind for c in st_.components} == {"I-"}


def test_padic_component_types():
    st_ = component_structure_padic(ms((-1, 1), (-0.5, 0.5), (0, 0)), ORTH)
    kinds = {str(c.key): c.kind for c in st_.components}
    assert kinds == {"[-1,1]": "I+", "[-1/2,1/2]": "I-", "[0,0]": "I+"}


def test_transfer_character_examples():
    p = phi((0.5, 0), (1.5, 0))
    triv = ComponentCharacter.of({Character(h(0.5), h(0)): 1, Character(h(1.5), h(0)): 1})
    assert transfer_character(triv, p, 1).character.is_trivial()
    eps = ComponentCharacter.of({Character(h(0.5), h(0)): 1, Character(h(1.5), h(0)): -1})
    out = transfer_character(eps, p, 1).character.as_dict()
    assert out == {seg(-0.5, 0.5): 1, seg(-1.5, 1.5): -1}
    with pytest.raises(ValidationError):
        transfer_character(ComponentCharacter.of({Character(h(0.5), h(0)): 1}), p, 1)


def test_transfer_reports_restriction_class_when_H_symplectic():
    # lambda = (2,1,0)+1 keeps delta=1 valid; n odd and delta odd give Sp(N-1)
    p = phi((3, 0), (2, 0), (1, 0))
    assert target_group(p.inf_char(), 1).symplectic
    eps = ComponentCharacter.of({Character(h(t), h(0)): -1 for t in (3, 2, 1)})
    tr = transfer_character(eps, p, 1)
    assert tr.restriction is not None
    struct = component_structure_padic(iota_L(p, 1), ORTH)
    assert restriction_class(tr.character, struct) == tr.restriction
    # the representative is the class member with value +1 at -I
    assert tr.restriction.as_dict() == {seg(-3, 3): 1, seg(-2, 2): 1, seg(-1, 1): 1}


def test_tilde_iota_examples():
    xi = CompleteParameter(phi((1, 0.5), (1, -0.5)))
    out = tilde_iota(xi, 1)
    assert out.lparam == ms((-0.5, 1.5), (-1.5, 0.5)) and out.character.is_trivial()
    xi = CompleteParameter(phi((0, 0)), ComponentCharacter.of({Character(h(0), h(0)): 1}))
    with pytest.raises(ValidationError):
        tilde_iota(xi, 1)
    out = tilde_iota(xi, 3)
    assert out.lparam == ms((-1, 1)) and out.character.as_dict() == {seg(-1, 1): 1}
    p = phi((0.5, 0), (1.5, 0))
    eps = ComponentCharacter.of({Character(h(0.5), h(0)): 1, Character(h(1.5), h(0)): -1})
    out = tilde_iota(CompleteParameter(p, eps), 1)
    assert out.character.as_dict() == {seg(-0.5, 0.5): 1, seg(-1.5, 1.5): -1}


def test_psi_component_structure_examples():
    st_ = psi_component_structure(RealArthurParameter.of([(2, 2), (2, 2)]))
    assert st_.rank == 1 and st_.components[0][1] == 2
    assert psi_component_structure(RealArthurParameter.of([(6, 2), (2, 2)])).rank == 2
    # dual Sp(6,C): H = SO(7), no product constraint
    sym = psi_component_structure(PAdicArthurParameter(((3, 2),), SYMP))
    assert not sym.product_constraint and len(admissible_psi_characters(sym)) == 2
    # dual SO(3,C): H = Sp(2), product constraint
    orth = psi_component_structure(PAdicArthurParameter(((3, 1),), ORTH))
    assert orth.product_constraint and admissible_psi_characters(orth) == [(1,)]


# ---- randomized invariants ----

@st.composite
def good_psi_and_delta(draw):
    blocks = draw(st.lists(st.tuples(st.integers(-8, 8), st.integers(1, 4)), min_size=1, max_size=3))
    n = sum(m for _, m in blocks)
    blocks = [(k if (k + m - n) % 2 == 0 else k + 1, m) for k, m in blocks]
    psi = RealArthurParameter.of(blocks, GOOD)
    L = inf_char_of_real_A(psi)
    return psi, minimal_delta(L, draw(st.integers(0, 1))) + 2 * draw(st.integers(0, 1))


@given(good_psi_and_delta())
def test_dimension_and_content_conservation(pd):
    psi, delta = pd
    L = inf_char_of_real_A(psi)
    m = iota_L(associated_L_param_real(psi), delta)
    N = target_group(L, delta).N
    assert sum(s.dim for s in m.segments) == N
    assert psi_real_to_padic(psi, delta).N == N
    assert m.content() == lambda_to_lambdap(L, delta).as_counter()


@given(good_psi_and_delta())
def test_lambdap_matches_segment_oracle(pd):
    psi, delta = pd
    L = inf_char_of_real_A(psi)
    want = lambdap_by_segments(tuple(x.twice for x in L), delta)
    got = Counter({x.twice: c for x, c in lambda_to_lambdap(L, delta).mult})
    assert got == want


@given(good_psi_and_delta())
def test_iota_respects_duality(pd):
    psi, delta = pd
    p = associated_L_param_real(psi)
    m = iota_L(p, delta)
    assert m.negate() == m
    for c in p.characters:
        a, b = iota_L(RealLParameter((c, c.dual())), delta).segments
        assert {a, b} == {a.negate(), b.negate()}


@given(good_psi_and_delta())
def test_functoriality_with_A_parameters(pd):
    psi, delta = pd
    assert iota_L(associated_L_param_real(psi), delta) == associated_L_param_padic(psi_real_to_padic(psi, delta))


def _lambdas(n, top):
    def rec(acc):
        if len(acc) == n:
            yield acc
            return
        for v in range(acc[-1] if acc else top, -1, -1):
            yield from rec(acc + [v])
    yield from rec([])


@pytest.mark.parametrize("n", range(1, 7))
def test_iota_injective_on_L_parameters(n):
    # doubled entries, in the parity class compatible with n
    shift = 1 if n % 2 == 0 else 0
    for entries in _lambdas(n, 3):
        L = InfinitesimalCharacter(tuple(HalfInteger(2 * e + shift) for e in entries))
        delta = minimal_delta(L, 1)
        params = {L_param_of_involution(x, L) for x in all_block_involutions(BlockStructure.of(L), kind_for(L))}
        images = {iota_L(p, delta) for p in params}
        assert len(images) == len(params)
