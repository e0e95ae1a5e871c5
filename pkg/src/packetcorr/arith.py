"""Exact arithmetic: half-integers, permutations, rational matrices and rank."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from functools import lru_cache, total_ordering
from typing import Iterable, Sequence


@total_ordering
@dataclass(frozen=True)
class HalfInteger:
    """An element of (1/2)Z stored as twice its value."""

    twice: int

    @classmethod
    def of(cls, x) -> "HalfInteger":
        if isinstance(x, HalfInteger):
            return x
        if isinstance(x, int) and not isinstance(x, bool):
            return cls(2 * x)
        f = Fraction(x)
        t = 2 * f
        if t.denominator != 1:
            raise ValueError(f"{x} is not a half-integer")
        return cls(int(t))

    @property
    def value(self) -> Fraction:
        return Fraction(self.twice, 2)

    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def _coerce(self, other):
        if isinstance(other, HalfInteger):
            return other
        if isinstance(other, int):
            return HalfInteger(2 * other)
        if isinstance(other, Fraction):
            return HalfInteger.of(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return HalfInteger(self.twice + o.twice)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return HalfInteger(self.twice - o.twice)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return HalfInteger(o.twice - self.twice)

    def __neg__(self):
        return HalfInteger(-self.twice)

    def __abs__(self):
        return HalfInteger(abs(self.twice))

    def __lt__(self, other):
        if isinstance(other, HalfInteger):
            return self.twice < other.twice
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.twice < o.twice

    def __eq__(self, other):
        if isinstance(other, HalfInteger):
            return self.twice == other.twice
        if isinstance(other, (int, Fraction)):
            return Fraction(self.twice, 2) == other
        return NotImplemented

    def __hash__(self):
        # agrees with the hash of the equal int or Fraction
        return _value_hash(self.twice)

    def __str__(self):
        return str(self.twice // 2) if self.twice % 2 == 0 else f"{self.twice}/2"

    def __repr__(self):
        return f"HalfInteger({self})"


@lru_cache(maxsize=4096)
def _value_hash(twice: int) -> int:
    return hash(Fraction(twice, 2))


def half(x) -> HalfInteger:
    return HalfInteger.of(x)


def halves(xs: Iterable) -> tuple[HalfInteger, ...]:
    return tuple(HalfInteger.of(x) for x in xs)


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..n}; images[i-1] is the image of i."""

    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(int(i) for i in self.images)
        object.__setattr__(self, "images", imgs)
        if sorted(imgs) != list(range(1, len(imgs) + 1)):
            raise ValueError(f"not a permutation of 1..{len(imgs)}: {imgs}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        imgs = list(range(1, n + 1))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                imgs[a - 1] = b
        return cls(tuple(imgs))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(tuple(inv))

    def fixed_points(self) -> list[int]:
        return [i for i in range(1, self.n + 1) if self(i) == i]

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for i in range(1, self.n + 1):
            if i in seen:
                continue
            cyc = [i]
            seen.add(i)
            j = self(i)
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self(j)
            out.append(tuple(cyc))
        return out

    def matrix(self) -> "RationalMatrix":
        """Permutation matrix with entry 1 at (i, p(i))."""
        rows = [[Fraction(0)] * self.n for _ in range(self.n)]
        for i in range(1, self.n + 1):
            rows[i - 1][self(i) - 1] = Fraction(1)
        return RationalMatrix.of(rows)

    def __str__(self):
        cyc = [c for c in self.cycles() if len(c) > 1]
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "e"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """(p o q)(i) = p(q(i))."""
    if p.n != q.n:
        raise ValueError(f"size mismatch: {p.n} vs {q.n}")
    return Permutation(tuple(p(q(i)) for i in range(1, p.n + 1)))


def is_involution(p: Permutation) -> bool:
    return all(p(p(i)) == i for i in range(1, p.n + 1))


@dataclass(frozen=True)
class RationalMatrix:
    entries: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def of(cls, rows) -> "RationalMatrix":
        return cls(tuple(tuple(Fraction(x) for x in r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls.of([[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), (len(self.entries[0]) if self.entries else 0)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def transpose(self) -> "RationalMatrix":
        r, c = self.shape
        return RationalMatrix(tuple(tuple(self.entries[i][j] for i in range(r)) for j in range(c)))

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        r, k = self.shape
        k2, c = other.shape
        if k != k2:
            raise ValueError("shape mismatch")
        return RationalMatrix(tuple(
            tuple(sum((self.entries[i][t] * other.entries[t][j] for t in range(k)), Fraction(0))
                  for j in range(c))
            for i in range(r)))

    def __neg__(self):
        return RationalMatrix(tuple(tuple(-x for x in row) for row in self.entries))

    def submatrix(self, rows: int, cols: int) -> "RationalMatrix":
        """Top-left rows x cols block."""
        return RationalMatrix(tuple(tuple(self.entries[i][:cols]) for i in range(rows)))


def exact_rank(M: RationalMatrix | Sequence[Sequence]) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination."""
    rows = M.entries if isinstance(M, RationalMatrix) else M
    if not rows or not rows[0]:
        return 0
    # clear denominators row by row so the elimination stays in Z
    a = []
    for r in rows:
        fr = [Fraction(x) for x in r]
        den = lcm(*(x.denominator for x in fr))
        a.append([int(x * den) for x in fr])
    nr, nc = len(a), len(a[0])
    rank = 0
    prev = 1
    for col in range(nc):
        piv = next((i for i in range(rank, nr) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(rank + 1, nr):
            for j in range(col + 1, nc):
                a[i][j] = (a[rank][col] * a[i][j] - a[i][col] * a[rank][j]) // prev
            a[i][col] = 0
        prev = a[rank][col]
        rank += 1
        if rank == nr:
            break
    return rank


def signed_skew_lift(s: Permutation) -> RationalMatrix:
    """Skew-symmetric signed permutation matrix lifting a fixed-point-free involution.

    Entry (i, s(i)) is +1 above the diagonal and -1 below it.
    """
    if not is_involution(s):
        raise ValueError(f"{s} is not an involution")
    if s.fixed_points():
        raise ValueError(f"{s} has fixed points {s.fixed_points()}")
    rows = [[0] * s.n for _ in range(s.n)]
    for i in range(1, s.n + 1):
        rows[i - 1][s(i) - 1] = 1 if i < s(i) else -1
    return RationalMatrix.of(rows)
