"""Maps from the real unitary side to the p-adic classical side.

Covers infinitesimal characters, Arthur parameters, Langlands parameters
(characters to segments), component groups and the transfer of characters.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from math import prod

from .arith import HalfInteger
from .parameters import (
    BAD, GOOD, ORTH,
    Character, InfinitesimalCharacter, Multisegment, PAdicArthurParameter,
    PAdicBlock, PAdicInfChar, RealArthurParameter, RealLParameter, Segment,
    ValidationError, classify_parity, inf_char_of_real_A, target_group, validate_delta,
)


def lambda_tilde(lam: InfinitesimalCharacter, delta: int) -> tuple[HalfInteger, ...]:
    return tuple(HalfInteger(x.twice + delta - 1) for x in lam)


def lambda_to_lambdap(lam: InfinitesimalCharacter, delta: int) -> PAdicInfChar:
    if not validate_delta(lam, delta):
        raise ValidationError(f"delta={delta} invalid for lambda")
    lt = lambda_tilde(lam, delta)
    if not lt:
        return PAdicInfChar(())
    top = max(lt)
    mult = []
    x = -top
    while x <= top:
        mult.append((x, sum(1 for v in lt if v >= abs(x))))
        x = x + 1
    return PAdicInfChar(tuple(mult))


def psi_real_to_padic(psi: RealArthurParameter, delta: int) -> PAdicArthurParameter:
    bad = [b for b in psi.blocks if b.k + delta <= b.m]
    if bad:
        raise ValidationError(f"delta={delta} too small: need k+delta > m for {bad}")
    H = target_group(inf_char_of_real_A(psi), delta)
    return PAdicArthurParameter(
        tuple(PAdicBlock(b.k + delta, b.m) for b in psi.blocks), H.dual_type, psi.parity)


def iota_character(c: Character, delta: int) -> Segment:
    if c.t.twice + delta < 1:
        raise ValidationError(f"2t+delta < 1 at (t,s)=({c.t},{c.s})")
    shift = c.t.twice + delta - 1  # twice of t + (delta-1)/2
    return Segment(HalfInteger(c.s.twice - shift), HalfInteger(c.s.twice + shift))


def iota_L(phi: RealLParameter, delta: int) -> Multisegment:
    return Multisegment(tuple(iota_character(c, delta) for c in phi.characters))


def associated_L_param_padic(psi: PAdicArthurParameter) -> Multisegment:
    """Restrict each S_b along |w| and keep S_a: segments of length a centred at (b-1)/2 - j."""
    segs = []
    for b in psi.blocks:
        for j in range(b.b):
            c = b.b - 1 - 2 * j
            segs.append(Segment(HalfInteger(c - (b.a - 1)), HalfInteger(c + (b.a - 1))))
    return Multisegment(tuple(segs))


@dataclass(frozen=True)
class Component:
    key: object  # a Character (real) or a Segment (p-adic)
    mult: int
    kind: str  # "I+", "I-" or "J"
    dim: int  # dimension of the segment attached to the component


@dataclass(frozen=True)
class ComponentGroupStructure:
    components: tuple[Component, ...]

    @property
    def i_plus(self) -> tuple[Component, ...]:
        return tuple(c for c in self.components if c.kind == "I+")

    @property
    def j_reps(self) -> tuple[Component, ...]:
        return tuple(c for c in self.components if c.kind == "J")

    @property
    def rank(self) -> int:
        """A is (Z/2)^rank."""
        return len(self.i_plus)

    def i_plus_keys(self) -> tuple:
        return tuple(c.key for c in self.i_plus)


def _real_parity(phi: RealLParameter) -> str:
    return classify_parity(phi.inf_char())


def component_structure_real(phi: RealLParameter, delta: int | None = None) -> ComponentGroupStructure:
    parity = _real_parity(phi) if phi.n else GOOD
    comps = []
    for c, k in sorted(Counter(phi.characters).items()):
        dim = c.t.twice + delta if delta is not None else 0
        if c.s.twice == 0:
            comps.append(Component(c, k, "I+" if parity == GOOD else "I-", dim))
        elif c.s.twice > 0:
            comps.append(Component(c, k, "J", dim))
    return ComponentGroupStructure(tuple(comps))


def component_structure_padic(m: Multisegment, dual_type: str) -> ComponentGroupStructure:
    """Self-dual segments of the form's type give I+; wrong-type ones give I-."""
    comps = []
    for s, k in sorted(Counter(m.segments).items()):
        if s.lo == -s.hi:
            orth_type = s.dim % 2 == 1
            matches = orth_type == (dual_type == ORTH)
            comps.append(Component(s, k, "I+" if matches else "I-", s.dim))
        elif s.lo.twice + s.hi.twice > 0:
            comps.append(Component(s, k, "J", s.dim))
    return ComponentGroupStructure(tuple(comps))


def component_structure(phi, dual_type: str | None = None, delta: int | None = None):
    if isinstance(phi, RealLParameter):
        return component_structure_real(phi, delta)
    if dual_type is None:
        raise ValidationError("a multisegment needs the dual group's form type")
    return component_structure_padic(phi, dual_type)


@dataclass(frozen=True)
class ComponentCharacter:
    """Signs on the I+ components, keyed by component."""

    signs: tuple[tuple[object, int], ...] = ()

    def __post_init__(self):
        items = tuple(sorted(dict(self.signs).items()))
        if any(v not in (1, -1) for _, v in items):
            raise ValidationError("character values must be +1 or -1")
        object.__setattr__(self, "signs", items)

    @classmethod
    def of(cls, mapping) -> "ComponentCharacter":
        return cls(tuple(dict(mapping).items()))

    def as_dict(self) -> dict:
        return dict(self.signs)

    def keys(self) -> tuple:
        return tuple(k for k, _ in self.signs)

    def values(self) -> tuple[int, ...]:
        return tuple(v for _, v in self.signs)

    def is_trivial(self) -> bool:
        return all(v == 1 for _, v in self.signs)

    def negate(self) -> "ComponentCharacter":
        return ComponentCharacter(tuple((k, -v) for k, v in self.signs))


@dataclass(frozen=True)
class CompleteParameter:
    lparam: object  # RealLParameter or Multisegment
    character: ComponentCharacter = field(default_factory=ComponentCharacter)


def minus_identity_value(eps: ComponentCharacter, structure: ComponentGroupStructure) -> int:
    """Value of the character at -I: product of eps_i^{l_i}."""
    mult = {c.key: c.mult for c in structure.i_plus}
    v = 1
    for k, s in eps.signs:
        if s == -1 and mult[k] % 2:
            v = -v
    return v


def restriction_class(eps: ComponentCharacter, structure: ComponentGroupStructure) -> ComponentCharacter:
    """Canonical representative of eps modulo the determinant character.

    Used when the dual group is SO(N) with N odd: characters of the full
    orthogonal centralizer that differ by the determinant restrict to the same
    character of the special orthogonal one.  The representative is the one
    with value +1 at -I.
    """
    if minus_identity_value(eps, structure) == 1:
        return eps
    dims = {c.key: c.dim for c in structure.i_plus}
    return ComponentCharacter(tuple((k, s * (-1) ** dims[k]) for k, s in eps.signs))


@dataclass(frozen=True)
class TransferredCharacter:
    character: ComponentCharacter
    restriction: ComponentCharacter | None  # only when H is symplectic


def transfer_character(eps: ComponentCharacter, phi: RealLParameter, delta: int) -> TransferredCharacter:
    real = component_structure_real(phi, delta)
    if set(eps.keys()) != set(real.i_plus_keys()):
        raise ValidationError("character is not defined on the I+ components of phi")
    lam = phi.inf_char()
    H = target_group(lam, delta)
    out = ComponentCharacter(tuple((iota_character(k, delta), v) for k, v in eps.signs))
    if H.symplectic:
        m = iota_L(phi, delta)
        return TransferredCharacter(out, restriction_class(out, component_structure_padic(m, H.dual_type)))
    return TransferredCharacter(out, None)


def tilde_iota(xi: CompleteParameter, delta: int) -> CompleteParameter:
    phi = xi.lparam
    tr = transfer_character(xi.character, phi, delta)
    return CompleteParameter(iota_L(phi, delta), tr.character)


@dataclass(frozen=True)
class PsiComponentStructure:
    components: tuple[tuple[object, int], ...]  # (block, multiplicity), in block order
    product_constraint: bool  # admissible characters must have product 1

    @property
    def rank(self) -> int:
        return len(self.components)


def h_is_symplectic(psi: PAdicArthurParameter) -> bool:
    """H = Sp(N-1) exactly when the dual group is SO(N) with N odd."""
    return psi.dual_type == ORTH and psi.N % 2 == 1


def psi_component_structure(psi: RealArthurParameter | PAdicArthurParameter) -> PsiComponentStructure:
    if psi.parity == BAD:
        return PsiComponentStructure((), False)
    seen: dict = {}
    for b in psi.blocks:
        seen[b] = seen.get(b, 0) + 1
    constraint = isinstance(psi, PAdicArthurParameter) and h_is_symplectic(psi)
    return PsiComponentStructure(tuple(seen.items()), constraint)


def admissible_psi_characters(structure: PsiComponentStructure) -> list[tuple[int, ...]]:
    """All sign vectors on the distinct blocks allowed by the structure."""
    return [signs for signs in product((1, -1), repeat=structure.rank)
            if not structure.product_constraint or prod(signs) == 1]
