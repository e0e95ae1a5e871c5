"""Infinitesimal characters, Arthur parameters and Langlands parameters on both sides."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .arith import HalfInteger, half


class ValidationError(ValueError):
    """Input violates a parameter invariant."""


GOOD, BAD = "good", "bad"
ORTH, SYMP = "orth", "symp"


@dataclass(frozen=True)
class InfinitesimalCharacter:
    entries: tuple[HalfInteger, ...]

    def __post_init__(self):
        ents = tuple(half(x) for x in self.entries)
        object.__setattr__(self, "entries", ents)
        if any(ents[i] < ents[i + 1] for i in range(len(ents) - 1)):
            raise ValidationError(f"not dominant: {[str(x) for x in ents]}")
        kinds = {x.twice % 2 for x in ents}
        if len(kinds) > 1:
            raise ValidationError("not integral: mixes integers and half-integers")
        if len(ents) % 2 == 1 and kinds == {1}:
            raise ValidationError("odd rank with half-integer entries")

    @classmethod
    def of(cls, xs: Iterable) -> "InfinitesimalCharacter":
        return cls(tuple(sorted((half(x) for x in xs), reverse=True)))

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def integer_entries(self) -> bool:
        return all(x.is_integer() for x in self.entries)

    @property
    def parity(self) -> str:
        return classify_parity(self)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]


def classify_parity(lam: InfinitesimalCharacter) -> str:
    if lam.n % 2 == 1:
        if not lam.integer_entries:
            raise ValidationError("odd rank with half-integer entries")
        return GOOD
    return BAD if lam.integer_entries else GOOD


def is_regular(lam: InfinitesimalCharacter) -> bool:
    return all(lam[i] > lam[i + 1] for i in range(lam.n - 1))


@dataclass(frozen=True, order=True)
class RealBlock:
    """Jordan block (z/zbar)^{k/2} x S_m."""

    k: int
    m: int

    @property
    def A(self) -> HalfInteger:
        return HalfInteger(self.m - 1 + self.k)

    @property
    def B(self) -> HalfInteger:
        return HalfInteger(-(self.m - 1) + self.k)

    def exponents(self) -> list[HalfInteger]:
        """B, B+1, ..., A."""
        return [HalfInteger(self.k - self.m + 1 + 2 * j) for j in range(self.m)]


def _real_key(b: "RealBlock"):
    # decreasing A, then decreasing B, in doubled units
    return (1 - b.m - b.k, b.m - 1 - b.k)


def _padic_key(b: "PAdicBlock"):
    return (2 - b.a - b.b, b.b - b.a)


@dataclass(frozen=True)
class RealArthurParameter:
    blocks: tuple[RealBlock, ...]
    parity: str

    def __post_init__(self):
        bl = tuple(b if isinstance(b, RealBlock) else RealBlock(*b) for b in self.blocks)
        bl = tuple(sorted(bl, key=_real_key))
        object.__setattr__(self, "blocks", bl)
        if not bl:
            raise ValidationError("empty Arthur parameter")
        if any(b.m < 1 for b in bl):
            raise ValidationError("block sizes m must be positive")
        n = self.n
        if self.parity == GOOD:
            bad = [b for b in bl if (b.k + b.m - n) % 2]
            if bad:
                raise ValidationError(f"good parity needs k+m = n mod 2; fails for {bad}")
        elif self.parity == BAD:
            if n % 2 or any((b.k + b.m) % 2 == 0 for b in bl):
                raise ValidationError("bad parity needs n even and every k+m odd")
        else:
            raise ValidationError(f"unknown parity tag {self.parity!r}")

    @classmethod
    def of(cls, blocks: Iterable, parity: str | None = None) -> "RealArthurParameter":
        bl = tuple(b if isinstance(b, RealBlock) else RealBlock(*b) for b in blocks)
        if parity is None:
            n = sum(b.m for b in bl)
            parity = BAD if n % 2 == 0 and all((b.k + b.m) % 2 for b in bl) else GOOD
        return cls(bl, parity)

    @property
    def n(self) -> int:
        return sum(b.m for b in self.blocks)

    @property
    def r(self) -> int:
        return len(self.blocks)

    @property
    def ms(self) -> tuple[int, ...]:
        return tuple(b.m for b in self.blocks)


@dataclass(frozen=True, order=True)
class PAdicBlock:
    """Jordan block 1 x S_a x S_b."""

    a: int
    b: int

    @property
    def A(self) -> HalfInteger:
        return HalfInteger(self.a + self.b - 2)

    @property
    def B(self) -> HalfInteger:
        return HalfInteger(self.a - self.b)


@dataclass(frozen=True)
class PAdicArthurParameter:
    """Arthur parameter of a p-adic classical group.

    In bad parity the blocks have the opposite a+b parity from the dual group's
    form; ``parity`` records which case applies.
    """

    blocks: tuple[PAdicBlock, ...]
    dual_type: str
    parity: str = GOOD

    def __post_init__(self):
        bl = tuple(b if isinstance(b, PAdicBlock) else PAdicBlock(*b) for b in self.blocks)
        bl = tuple(sorted(bl, key=_padic_key))
        object.__setattr__(self, "blocks", bl)
        if self.dual_type not in (ORTH, SYMP):
            raise ValidationError(f"unknown dual type {self.dual_type!r}")
        if any(b.a < 1 or b.b < 1 for b in bl):
            raise ValidationError("a and b must be positive")
        want_even = (self.dual_type == ORTH) == (self.parity == GOOD)
        off = [b for b in bl if ((b.a + b.b) % 2 == 0) != want_even]
        if off:
            raise ValidationError(f"a+b parity inconsistent with dual type for {off}")

    @property
    def N(self) -> int:
        return sum(b.a * b.b for b in self.blocks)

    @property
    def ms(self) -> tuple[int, ...]:
        return tuple(b.b for b in self.blocks)


@dataclass(frozen=True, order=True)
class Character:
    """(z/zbar)^t (z zbar)^s."""

    t: HalfInteger
    s: HalfInteger

    def dual(self) -> "Character":
        return Character(self.t, -self.s)


@dataclass(frozen=True)
class RealLParameter:
    characters: tuple[Character, ...]

    def __post_init__(self):
        chars = tuple(c if isinstance(c, Character) else Character(half(c[0]), half(c[1]))
                      for c in self.characters)
        # same order as sorted(chars), computed on doubled integers
        object.__setattr__(self, "characters", tuple(sorted(chars, key=lambda c: (c.t.twice, c.s.twice))))
        cnt = Counter(chars)
        for c, k in cnt.items():
            if cnt[c.dual()] != k:
                raise ValidationError(f"not conjugate self-dual at (t,s)=({c.t},{c.s})")

    def inf_char(self) -> InfinitesimalCharacter:
        return InfinitesimalCharacter.of(c.t + c.s for c in self.characters)

    @property
    def n(self) -> int:
        return len(self.characters)


@dataclass(frozen=True, order=True)
class Segment:
    lo: HalfInteger
    hi: HalfInteger

    def __post_init__(self):
        lo, hi = half(self.lo), half(self.hi)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if not (hi - lo).is_integer() or hi < lo:
            raise ValidationError(f"bad segment [{lo},{hi}]")

    @property
    def dim(self) -> int:
        return (self.hi.twice - self.lo.twice) // 2 + 1

    def points(self) -> list[HalfInteger]:
        return [HalfInteger(self.lo.twice + 2 * j) for j in range(self.dim)]

    def negate(self) -> "Segment":
        return Segment(-self.hi, -self.lo)

    def __str__(self):
        return f"[{self.lo},{self.hi}]"


@dataclass(frozen=True)
class Multisegment:
    segments: tuple[Segment, ...]

    def __post_init__(self):
        segs = tuple(s if isinstance(s, Segment) else Segment(*s) for s in self.segments)
        object.__setattr__(self, "segments", tuple(sorted(segs)))

    def content(self) -> Counter:
        c = Counter()
        for s in self.segments:
            c.update(s.points())
        return c

    def negate(self) -> "Multisegment":
        return Multisegment(tuple(s.negate() for s in self.segments))

    @property
    def N(self) -> int:
        return sum(s.dim for s in self.segments)

    def __str__(self):
        return "{" + ",".join(map(str, self.segments)) + "}"


@dataclass(frozen=True)
class PAdicInfChar:
    """Multiplicity of each Frobenius exponent x."""

    mult: tuple[tuple[HalfInteger, int], ...]

    def __post_init__(self):
        m = tuple(sorted((half(x), int(c)) for x, c in self.mult if c))
        object.__setattr__(self, "mult", m)
        d = dict(m)
        if any(d.get(-x, 0) != c for x, c in d.items()):
            raise ValidationError("exponent multiplicities are not symmetric")
        if len({x.twice % 2 for x in d}) > 1:
            raise ValidationError("mixed integral and half-integral support")

    def as_counter(self) -> Counter:
        return Counter(dict(self.mult))

    @property
    def N(self) -> int:
        return sum(c for _, c in self.mult)

    @property
    def integral_support(self) -> bool:
        return all(x.is_integer() for x, _ in self.mult)

    def __getitem__(self, x) -> int:
        return dict(self.mult).get(half(x), 0)


@dataclass(frozen=True)
class TargetGroup:
    family: str  # "Sp", "SO" or "O"
    size: int
    dual_type: str  # "orth" or "symp"
    N: int
    row: str
    parity: str

    @property
    def symplectic(self) -> bool:
        return self.family == "Sp"

    def __str__(self):
        return f"{self.family}({self.size})"

    @property
    def dual_name(self) -> str:
        fam = {"Sp": "SO", "SO": "Sp", "O": "O"}[self.family]
        return f"{fam}({self.N},C)"


@lru_cache(maxsize=1 << 16)
def inf_char_of_real_A(psi: RealArthurParameter) -> InfinitesimalCharacter:
    return InfinitesimalCharacter.of(x for b in psi.blocks for x in b.exponents())


def validate_delta(lam: InfinitesimalCharacter, delta: int) -> bool:
    # lambda_n > (1 - delta)/2, doubled
    return lam.n == 0 or lam[-1].twice > 1 - delta


def minimal_delta(lam: InfinitesimalCharacter, parity: int) -> int:
    """Smallest valid delta congruent to ``parity`` mod 2."""
    d = 1 - lam[-1].twice + 1
    if d % 2 != parity % 2:
        d += 1
    return d


def target_group(lam: InfinitesimalCharacter, delta: int) -> TargetGroup:
    if not validate_delta(lam, delta):
        raise ValidationError(f"delta={delta} invalid: need lambda_n > (1-delta)/2")
    N = sum(x.twice + delta for x in lam)
    n_odd = lam.n % 2 == 1
    ints = lam.integer_entries
    d_odd = delta % 2 == 1
    if n_odd:
        row = "a" if d_odd else "b"
    elif ints:
        row = "e" if d_odd else "d"
    else:
        row = "c" if d_odd else "f"
    family, size, dual = {
        "a": ("Sp", N - 1, ORTH),
        "b": ("SO", N + 1, SYMP),
        "c": ("SO", N + 1, SYMP),
        "d": ("O", N, ORTH),
        "e": ("SO", N + 1, SYMP),
        "f": ("O", N, ORTH),
    }[row]
    return TargetGroup(family, size, dual, N, row, BAD if row in "de" else GOOD)


def associated_L_param_real(psi: RealArthurParameter) -> RealLParameter:
    chars = []
    for b in psi.blocks:
        for j in range(b.m):
            chars.append(Character(HalfInteger(b.k), HalfInteger(b.m - 1 - 2 * j)))
    return RealLParameter(tuple(chars))


def _disjoint(intervals) -> bool:
    iv = sorted(intervals)
    return all(iv[i][1] < iv[i + 1][0] for i in range(len(iv) - 1))


def is_ddr(psi: RealArthurParameter | PAdicArthurParameter) -> bool:
    return _disjoint([(b.B, b.A) for b in psi.blocks])


def real_psi_is_regular(psi: RealArthurParameter) -> bool:
    return is_regular(inf_char_of_real_A(psi))
