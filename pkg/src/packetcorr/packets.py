"""Packets on both sides: labels, characters, complete parameters and their comparison.

Real packets are indexed by splittings (p_i, q_i) of the block sizes, or
equivalently by classes of (l, eta).  p-adic packets of parameters with
disjoint block intervals use the same (l, eta) coordinates.
"""

from __future__ import annotations

from functools import lru_cache
from dataclasses import dataclass, field
from itertools import product
from math import prod

from .arith import HalfInteger
from .correspondence import (
    ComponentCharacter, CompleteParameter, associated_L_param_padic,
    component_structure_padic, h_is_symplectic, iota_L, psi_real_to_padic,
    restriction_class, tilde_iota,
)
from .parameters import (
    BAD, Character, Multisegment, PAdicArthurParameter, RealArthurParameter,
    RealLParameter, Segment, TargetGroup, ValidationError, associated_L_param_real,
    inf_char_of_real_A, is_ddr, is_regular, target_group,
)


def _sgn(x: int) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True, order=True)
class PacketLabel:
    l: tuple[int, ...]
    eta: tuple[int, ...]

    def __str__(self):
        return "l=(" + ",".join(map(str, self.l)) + "),eta=(" + ",".join(
            "+" if e > 0 else "-" for e in self.eta) + ")"


@dataclass(frozen=True, order=True)
class PureFormLabel:
    p: tuple[int, ...]
    q: tuple[int, ...]

    @property
    def aggregate(self) -> tuple[int, int]:
        return sum(self.p), sum(self.q)


def make_label(l, eta, ms) -> PacketLabel:
    """Validate and canonicalize: eta_i = +1 wherever 2 l_i = m_i."""
    l, eta = tuple(l), tuple(eta)
    if not (len(l) == len(eta) == len(ms)):
        raise ValidationError("label length does not match the number of blocks")
    for li, e, m in zip(l, eta, ms):
        if not 0 <= li <= m // 2:
            raise ValidationError(f"l_i={li} outside [0, {m // 2}]")
        if e not in (1, -1):
            raise ValidationError("eta entries must be +1 or -1")
    return PacketLabel(l, tuple(1 if 2 * li == m else e for li, e, m in zip(l, eta, ms)))


def flip_label(label: PacketLabel, ms) -> PacketLabel:
    return make_label(label.l, tuple(-e for e in label.eta), ms)


def all_labels(ms) -> list[PacketLabel]:
    out = set()
    for l in product(*(range(m // 2 + 1) for m in ms)):
        for eta in product((1, -1), repeat=len(ms)):
            out.add(make_label(l, eta, ms))
    return sorted(out)


def _tail(ms, i) -> int:
    return sum(ms[i + 1:])


def pq_to_leta(pq: PureFormLabel, psi: RealArthurParameter | tuple) -> PacketLabel:
    ms = psi.ms if hasattr(psi, "ms") else tuple(psi)
    if any(p + q != m for p, q, m in zip(pq.p, pq.q, ms)) or len(pq.p) != len(ms):
        raise ValidationError("p_i + q_i must equal m_i")
    l = tuple(min(p, q) for p, q in zip(pq.p, pq.q))
    eta = tuple((-1) ** (1 + _tail(ms, i)) * _sgn(p - q) or 1
                for i, (p, q) in enumerate(zip(pq.p, pq.q)))
    return make_label(l, eta, ms)


def leta_to_pq(label: PacketLabel, psi: RealArthurParameter | tuple) -> PureFormLabel:
    ms = psi.ms if hasattr(psi, "ms") else tuple(psi)
    label = make_label(label.l, label.eta, ms)
    ps, qs = [], []
    for i, (li, e, m) in enumerate(zip(label.l, label.eta, ms)):
        if 2 * li == m:
            p = q = li
        elif e * (-1) ** (1 + _tail(ms, i)) > 0:
            p, q = m - li, li
        else:
            p, q = li, m - li
        ps.append(p)
        qs.append(q)
    return PureFormLabel(tuple(ps), tuple(qs))


def all_pure_forms(ms) -> list[PureFormLabel]:
    return [PureFormLabel(p, tuple(m - x for m, x in zip(ms, p)))
            for p in product(*(range(m + 1) for m in ms))]


def epsilon_eta_form(label: PacketLabel, ms) -> tuple[int, ...]:
    return tuple(e ** m * (-1) ** ((m - 2 * li) * (m - 1 - 2 * li) // 2)
                 for li, e, m in zip(label.l, label.eta, ms))


def epsilon_q_form(pq: PureFormLabel, ms) -> tuple[int, ...]:
    return tuple((-1) ** (m * (1 + _tail(ms, i)) + m * (m - 1) // 2 + q)
                 for i, (q, m) in enumerate(zip(pq.q, ms)))


def epsilon_of_label(label: PacketLabel, psi) -> tuple[int, ...]:
    """Sign per block (before grouping equal blocks)."""
    return epsilon_eta_form(label, psi.ms)


def minus_identity_expected(pq: PureFormLabel) -> int:
    """Value at -I_n predicted from the signature (p, q) of U(p,q)."""
    p, q = pq.aggregate
    if (p + q) % 2 == 0:
        return (-1) ** ((p - q) // 2)
    return (-1) ** ((p - q + 1) // 2)


def _require_regular(psi: RealArthurParameter):
    if psi.parity == BAD:
        raise ValidationError("regular-case packets need good parity")
    if not is_regular(inf_char_of_real_A(psi)):
        raise ValidationError("infinitesimal character is not regular")


def complete_param_regular_real(psi: RealArthurParameter, label: PacketLabel) -> CompleteParameter:
    _require_regular(psi)
    label = make_label(label.l, label.eta, psi.ms)
    chars, signs = [], {}
    for b, li, e in zip(psi.blocks, label.l, label.eta):
        for j in range(li):
            s = HalfInteger(b.m - 1 - 2 * j)
            chars += [Character(HalfInteger(b.k), s), Character(HalfInteger(b.k), -s)]
        for j in range((b.A.twice - b.B.twice) // 2 - 2 * li + 1):
            c = Character(b.B + li + j, HalfInteger(0))
            chars.append(c)
            signs[c] = e * (-1) ** j
    return CompleteParameter(RealLParameter(tuple(chars)), ComponentCharacter.of(signs))


@dataclass(frozen=True)
class StandardModuleData:
    nu: tuple[int, ...]
    chi: tuple[int, ...]
    mu: tuple[HalfInteger, ...]
    eps_minus: tuple[int, ...]
    # positions of the tempered part: sorted D and, per block, D_d
    D: tuple[int, ...] = ()
    D_blocks: tuple[tuple[int, ...], ...] = ()


def _index_sets(pq: PureFormLabel, n: int):
    """P_d, Q_d as ranges of {1..n}: P_1 < ... < P_r < Q_r < ... < Q_1."""
    Ps, Qs = [], []
    ps = qs = 0
    for p, q in zip(pq.p, pq.q):
        Ps.append(tuple(range(ps + 1, ps + p + 1)))
        Qs.append(tuple(range(n - qs - q + 1, n - qs + 1)))
        ps += p
        qs += q
    return Ps, Qs


def standard_module_data(psi: RealArthurParameter, pq: PureFormLabel) -> StandardModuleData:
    _require_regular(psi)
    n, p_total = psi.n, sum(pq.p)
    Ps, Qs = _index_sets(pq, n)
    label = pq_to_leta(pq, psi)
    nu, chi, mu, D_blocks = [], [], [], []
    for b, li, Pd, Qd in zip(psi.blocks, label.l, Ps, Qs):
        nu += [b.m - 1 - 2 * j for j in range(li)]
        chi += [b.k] * li
        both = sorted(Pd + Qd)
        D_blocks.append(tuple(both[li:len(both) - li]))
        top = b.k + b.m - 2 * li + 1  # twice of (k+m-2l+1)/2
        mu += [HalfInteger(top - 2 * j) for j in range(1, b.m - 2 * li + 1)]
    D = tuple(sorted(x for Dd in D_blocks for x in Dd))
    # sigma sends the d-th consecutive run of D onto D_d, order-preservingly;
    # positions in D are counted from 0
    eps, pos = [], 0
    for Dd in D_blocks:
        for target in Dd:
            exp = len(D) - pos if target <= p_total else len(D) + 1 - pos
            eps.append((-1) ** exp)
            pos += 1
    return StandardModuleData(tuple(nu), tuple(chi), tuple(mu), tuple(eps), D, tuple(D_blocks))


def complete_param_via_standard_module(psi: RealArthurParameter, pq: PureFormLabel) -> CompleteParameter:
    """Assemble the complete parameter from the standard-module data."""
    smd = standard_module_data(psi, pq)
    chars, signs = [], {}
    for x, k in zip(smd.nu, smd.chi):
        chars += [Character(HalfInteger(k), HalfInteger(x)), Character(HalfInteger(k), HalfInteger(-x))]
    for t, e in zip(smd.mu, smd.eps_minus):
        c = Character(t, HalfInteger(0))
        chars.append(c)
        signs[c] = e
    return CompleteParameter(RealLParameter(tuple(chars)), ComponentCharacter.of(signs))


@dataclass(frozen=True)
class RealPacketMember:
    label: PacketLabel
    pq: PureFormLabel
    complete: CompleteParameter
    epsilon: tuple[int, ...]
    minus_identity_ok: bool


def packet_regular_real(psi: RealArthurParameter) -> list[RealPacketMember]:
    _require_regular(psi)
    out = []
    for pq in all_pure_forms(psi.ms):
        label = pq_to_leta(pq, psi)
        eps = epsilon_eta_form(label, psi.ms)
        out.append(RealPacketMember(label, pq, complete_param_regular_real(psi, label), eps,
                                    prod(eps) == minus_identity_expected(pq)))
    return sorted(out, key=lambda m: (m.label, m.pq))


@dataclass(frozen=True)
class PAdicPacketMember:
    label: PacketLabel | None
    complete: CompleteParameter
    epsilon: tuple[int, ...]


def padic_complete_param(psi: PAdicArthurParameter, label: PacketLabel) -> CompleteParameter:
    segs, signs = [], {}
    for b, li, e in zip(psi.blocks, label.l, label.eta):
        for j in range(li):
            x = b.b - 1 - 2 * j
            for c in (x, -x):
                segs.append(Segment(HalfInteger(c - (b.a - 1)), HalfInteger(c + (b.a - 1))))
        for j in range(b.b - 2 * li):
            c = b.B + li + j
            s = Segment(-c, c)
            segs.append(s)
            signs[s] = e * (-1) ** j
    return CompleteParameter(Multisegment(tuple(segs)), ComponentCharacter.of(signs))


def packet_ddr_padic(psi: PAdicArthurParameter) -> list[PAdicPacketMember]:
    if psi.parity == BAD:
        return [PAdicPacketMember(None, CompleteParameter(associated_L_param_padic(psi)), ())]
    if not is_ddr(psi):
        raise ValidationError("block intervals are not pairwise disjoint")
    symp = h_is_symplectic(psi)
    out = []
    for label in all_labels(psi.ms):
        eps = epsilon_eta_form(label, psi.ms)
        if symp and prod(eps) != 1:
            continue
        out.append(PAdicPacketMember(label, padic_complete_param(psi, label), eps))
    return out


def psi_restriction_class(eps: tuple[int, ...], psi: PAdicArthurParameter) -> tuple[int, ...]:
    """Representative of eps modulo the determinant character with product +1."""
    if prod(eps) == 1:
        return eps
    return tuple(e * (-1) ** (b.a * b.b) for e, b in zip(eps, psi.blocks))


@dataclass(frozen=True)
class Match:
    real_label: PacketLabel | None
    padic_label: PacketLabel | None
    pq: PureFormLabel | None
    flipped: bool


@dataclass
class CorrespondenceReport:
    psi: RealArthurParameter
    delta: int
    H: TargetGroup
    psi_padic: PAdicArthurParameter
    matches: list[Match] = field(default_factory=list)
    mismatches: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def verify_regular_correspondence(psi: RealArthurParameter, delta: int) -> CorrespondenceReport:
    H = target_group(inf_char_of_real_A(psi), delta)
    psiQ = psi_real_to_padic(psi, delta)
    rep = CorrespondenceReport(psi, delta, H, psiQ)
    if psi.parity == BAD:
        real = iota_L(associated_L_param_real(psi), delta)
        (member,) = packet_ddr_padic(psiQ)
        if real == member.complete.lparam:
            rep.matches.append(Match(None, None, None, False))
        else:
            rep.mismatches.append(f"bad parity: {real} != {member.complete.lparam}")
        return rep
    padic = {m.label: m for m in packet_ddr_padic(psiQ)}
    seen = set()
    for member in packet_regular_real(psi):
        image = tilde_iota(member.complete, delta)
        m = image.lparam
        if H.symplectic:
            cands = [(member.label, False), (flip_label(member.label, psi.ms), True)]
        else:
            cands = [(member.label, False)]
        hit = next(((lab, fl) for lab, fl in cands if lab in padic), None)
        if hit is None:
            rep.mismatches.append(f"{member.label}: no p-adic member with this label")
            continue
        lab, fl = hit
        target = padic[lab].complete
        if target.lparam != m:
            rep.mismatches.append(f"{member.label}: multisegment {m} != {target.lparam}")
            continue
        if H.symplectic:
            struct = component_structure_padic(m, H.dual_type)
            same = restriction_class(image.character, struct) == restriction_class(target.character, struct)
        else:
            same = image.character == target.character
        if not same:
            rep.mismatches.append(f"{member.label}: character mismatch")
            continue
        seen.add(lab)
        rep.matches.append(Match(member.label, lab, member.pq, fl))
    missing = set(padic) - seen
    if missing:
        rep.mismatches.append(f"p-adic labels never reached: {sorted(map(str, missing))}")
    return rep


# ---- singular parameters ----

def regularize(psi: RealArthurParameter) -> tuple[RealArthurParameter, tuple[int, ...]]:
    """Smallest shifts t making the intervals [B_i+t_i, A_i+t_i] disjoint and decreasing."""
    bl = psi.blocks
    t = [0] * len(bl)
    for i in range(len(bl) - 2, -1, -1):
        gap = (bl[i + 1].A.twice + 2 * t[i + 1] - bl[i].B.twice) // 2 + 1
        t[i] = max(0, gap)
    shifted = RealArthurParameter.of([(b.k + 2 * ti, b.m) for b, ti in zip(bl, t)], psi.parity)
    return shifted, tuple(t)


def block_fibers(blocks) -> list[tuple[int, ...]]:
    """Group block indices by equal blocks."""
    groups: dict = {}
    for i, b in enumerate(blocks):
        groups.setdefault(b, []).append(i)
    return [tuple(v) for v in groups.values()]


def descends(eps, fibers, product_one: bool = False) -> bool:
    """eps on the regularized blocks factors through the original component group."""
    if any(len({eps[i] for i in f}) > 1 for f in fibers):
        return False
    return not product_one or prod(eps) == 1


@dataclass(frozen=True)
class SingularLabel:
    label: PacketLabel
    eps_real: tuple[int, ...]
    real_vanishes: bool
    padic_label: PacketLabel
    eps_padic: tuple[int, ...]
    padic_vanishes: bool

    @property
    def agree(self) -> bool:
        return self.real_vanishes == self.padic_vanishes


def packet_singular_labels(psi: RealArthurParameter, delta: int) -> list[SingularLabel]:
    return list(singular_rows(psi, delta))


def singular_rows(psi: RealArthurParameter, delta: int) -> tuple[SingularLabel, ...]:
    """As packet_singular_labels, but returns the shared (immutable) row tuple."""
    if psi.parity == BAD:
        raise ValidationError("singular label bookkeeping needs good parity")
    psi_gg, _ = regularize(psi)
    psiQ = psi_real_to_padic(psi, delta)
    # the p-adic regularization shifts a_i by the same 2 t_i, leaving the b_i alone
    msQ = tuple(b.b for b in psiQ.blocks)
    return _singular_rows(psi_gg.ms, tuple(block_fibers(psi.blocks)), msQ,
                               tuple(block_fibers(psiQ.blocks)), h_is_symplectic(psiQ))


@lru_cache(maxsize=None)
def _singular_rows(ms_gg, real_fibers, msQ, padic_fibers, symp) -> tuple[SingularLabel, ...]:
    # depends on psi only through these data, so families share the work
    out = []
    for label in all_labels(ms_gg):
        eps_r = epsilon_eta_form(label, ms_gg)
        lab_p = label
        eps_p = epsilon_eta_form(label, msQ)
        if symp and prod(eps_p) != 1:
            lab_p = flip_label(label, msQ)
            eps_p = epsilon_eta_form(lab_p, msQ)
        out.append(SingularLabel(label, eps_r, not descends(eps_r, real_fibers),
                                 lab_p, eps_p, not descends(eps_p, padic_fibers)))
    return tuple(out)
