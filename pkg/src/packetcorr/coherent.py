"""Symbolic translation calculus on coherent-family symbols Theta(nu).

Weights are handled internally as tuples of doubled integers.  The Weyl group
S_n acts by (w nu)_i = nu_{w^{-1}(i)}, i.e. by permuting coordinates.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from math import factorial, prod
from typing import Iterable

from .arith import HalfInteger, half
from .parameters import RealArthurParameter, ValidationError, inf_char_of_real_A

Weight = tuple[int, ...]  # doubled coordinates


def to_weight(nu: Iterable) -> Weight:
    return tuple(half(x).twice for x in nu)


def from_weight(w: Weight) -> tuple[HalfInteger, ...]:
    return tuple(HalfInteger(x) for x in w)


@dataclass(frozen=True)
class WeightSymbol:
    nu: tuple[HalfInteger, ...]

    def __str__(self):
        return "Theta(" + ",".join(map(str, self.nu)) + ")"


class FormalCombination:
    """Finitely supported Z-combination of symbols Theta(nu)."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Weight, int] | None = None):
        """``terms`` maps doubled weights to coefficients."""
        self.terms: dict[Weight, int] = {tuple(k): v for k, v in (terms or {}).items() if v}

    @classmethod
    def symbol(cls, nu, coeff: int = 1) -> "FormalCombination":
        return cls({to_weight(nu): coeff})

    def __add__(self, other: "FormalCombination") -> "FormalCombination":
        out = dict(self.terms)
        for k, v in other.terms.items():
            c = out.get(k, 0) + v
            if c:
                out[k] = c
            else:
                out.pop(k, None)
        return FormalCombination._raw(out)

    def scale(self, c: int) -> "FormalCombination":
        return FormalCombination._raw({k: c * v for k, v in self.terms.items()} if c else {})

    @classmethod
    def _raw(cls, terms: dict) -> "FormalCombination":
        fc = cls.__new__(cls)
        fc.terms = terms
        return fc

    def __eq__(self, other):
        return isinstance(other, FormalCombination) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def items(self) -> list[tuple[WeightSymbol, int]]:
        return [(WeightSymbol(from_weight(k)), v) for k, v in sorted(self.terms.items(), reverse=True)]

    def mass(self) -> int:
        return sum(self.terms.values())

    def is_nonnegative(self) -> bool:
        return all(v > 0 for v in self.terms.values())

    def relabel(self, w: tuple[int, ...]) -> "FormalCombination":
        """Apply the permutation w (1-based images) to every symbol."""
        return FormalCombination._raw({act(w, k): v for k, v in self.terms.items()})

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{v}*{s}" if v != 1 else str(s) for s, v in self.items())


def act(w: tuple[int, ...], nu: Weight) -> Weight:
    """(w nu)_{w(i)} = nu_i."""
    out = [0] * len(nu)
    for i, wi in enumerate(w):
        out[wi - 1] = nu[i]
    return tuple(out)


def stabilizer(lam: Iterable) -> tuple[tuple[int, ...], ...]:
    """Young subgroup fixing lam, as the partition of positions into equal-entry classes."""
    lam = to_weight(lam)
    classes: dict[int, list[int]] = {}
    for i, x in enumerate(lam, start=1):
        classes.setdefault(x, []).append(i)
    return tuple(sorted(tuple(v) for v in classes.values()))


def _young_order(keys) -> int:
    return prod(factorial(c) for c in Counter(keys).values())


def stabilizer_order(lam: Iterable) -> int:
    return _young_order(to_weight(lam))


def intersection_order(a: Iterable, b: Iterable) -> int:
    """|W_a cap W_b|: permutations preserving both a and b."""
    return _young_order(zip(to_weight(a), to_weight(b)))


def _check_minuscule(lam: Weight, mu: Weight):
    if len(lam) != len(mu):
        raise ValidationError("weights of different rank")
    diff = {m - l for l, m in zip(lam, mu)}
    if any(d % 2 for d in diff):
        raise ValidationError("mu - lambda is not integral")
    if diff and max(diff) - min(diff) > 2:
        raise ValidationError("mu - lambda must take at most two consecutive values")


@lru_cache(maxsize=None)
def stabilizer_orbit(lam: Weight, mu: Weight) -> tuple[Weight, ...]:
    """Distinct points of W_lam . mu: one per coset of W_lam / (W_lam cap W_mu)."""
    groups = stabilizer(lam)
    pts = [list(mu)]
    for g in groups:
        vals = [mu[i - 1] for i in g]
        arrangements = _multiset_permutations(tuple(vals))
        nxt = []
        for p in pts:
            for arr in arrangements:
                q = list(p)
                for i, v in zip(g, arr):
                    q[i - 1] = v
                nxt.append(q)
        pts = nxt
    return tuple(sorted(tuple(p) for p in pts))


@lru_cache(maxsize=None)
def _multiset_permutations(vals: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(set(permutations(vals))))


def _carrier(lam: Weight, nu: Weight) -> tuple[int, ...]:
    """Some w with w lam = nu, as 1-based images."""
    slots: dict[int, list[int]] = {}
    for i, x in enumerate(nu, start=1):
        slots.setdefault(x, []).append(i)
    try:
        return tuple(slots[x].pop(0) for x in lam)
    except (KeyError, IndexError):
        raise ValidationError(f"symbol {from_weight(nu)} is not in the W-orbit of lambda") from None


def _translate(lam: Weight, mu: Weight, x: FormalCombination) -> FormalCombination:
    _check_minuscule(lam, mu)
    ys = stabilizer_orbit(lam, mu)
    out: dict[Weight, int] = {}
    for nu, c in x.terms.items():
        w = _carrier(lam, nu)
        for y in ys:
            k = act(w, y)
            out[k] = out.get(k, 0) + c
    return FormalCombination._raw({k: v for k, v in out.items() if v})


def translate(lam, mu, x: FormalCombination) -> FormalCombination:
    """psi^mu_lam on symbols: Theta(w lam) -> sum over W_lam . mu of Theta(w y).

    mu - lam must take at most two consecutive integer values (a translation
    onto or off a wall); this covers every use below.
    """
    return _translate(to_weight(lam), to_weight(mu), x)


def _shift(lam: Weight, js: Iterable[int], step: int = -1) -> Weight:
    out = list(lam)
    for j in js:
        out[j - 1] += 2 * step
    return tuple(out)


def T(j: int, lam, x: FormalCombination) -> FormalCombination:
    """Translation to lam - e_j."""
    lamw = to_weight(lam)
    return _translate(lamw, _shift(lamw, [j]), x)


def _apply_word(lam: Weight, word, x: FormalCombination) -> tuple[FormalCombination, Weight]:
    for j in reversed(list(word)):
        mu = _shift(lam, [j])
        x, lam = _translate(lam, mu, x), mu
    return x, lam


def apply_word(lam, word: list[int], x: FormalCombination) -> tuple[FormalCombination, tuple[HalfInteger, ...]]:
    """Apply T_{word[0]} o ... o T_{word[-1]}: the last letter acts first."""
    y, end = _apply_word(to_weight(lam), word, x)
    return y, from_weight(end)


def orbit_points(lam: Weight) -> list[Weight]:
    """Distinct w lam for w in W (doubled coordinates)."""
    return sorted(set(permutations(lam)))


@dataclass
class Report:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _fmt(w: Weight) -> str:
    return "(" + ",".join(map(str, from_weight(w))) + ")"


def factorization_orders(lam: Weight, J: Iterable[int]) -> list[tuple[int, ...]]:
    """Orderings j_1..j_r of J with lam_{j_1} >= ... >= lam_{j_r}."""
    J = sorted(J)
    return [o for o in permutations(J)
            if all(lam[o[i] - 1] >= lam[o[i + 1] - 1] for i in range(len(o) - 1))]


def verify_factorization(lam, J: Iterable[int]) -> Report:
    """m psi^mu_lam = T_{j_1} o ... o T_{j_r} for every admissible ordering of J."""
    lam = to_weight(lam)
    J = sorted(set(J))
    rep = Report(f"factorization lambda={_fmt(lam)} J={J}")
    mu = _shift(lam, J)
    m = prod(factorial(c) for c in Counter(lam[j - 1] for j in J).values())
    orders = factorization_orders(lam, J)
    for nu in orbit_points(lam):
        x = FormalCombination._raw({nu: 1})
        lhs = _translate(lam, mu, x).scale(m)
        for order in orders:
            rhs, end = _apply_word(lam, order, x)
            rep.checked += 1
            if end != mu or rhs != lhs:
                rep.failures.append(f"Theta{_fmt(nu)} order {order}: {lhs!r} != {rhs!r}")
    return rep


def verify_commutation(lam, j1: int, j2: int) -> Report:
    lam = to_weight(lam)
    if abs(lam[j1 - 1] - lam[j2 - 1]) == 2:
        raise ValidationError(f"|lambda_{j1} - lambda_{j2}| = 1: the commutation rule does not apply")
    rep = Report(f"commutation lambda={_fmt(lam)} j=({j1},{j2})")
    for nu in orbit_points(lam):
        x = FormalCombination._raw({nu: 1})
        a, _ = _apply_word(lam, [j1, j2], x)
        b, _ = _apply_word(lam, [j2, j1], x)
        rep.checked += 1
        if a != b:
            rep.failures.append(f"Theta{_fmt(nu)}: {a!r} != {b!r}")
    return rep


def _trans_srs_rhs(lam_f: Weight, lam_1: Weight, lam_2: Weight, nu: Weight) -> FormalCombination:
    num = intersection_order(from_weight(lam_1), from_weight(lam_2))
    den = stabilizer_order(from_weight(lam_f))
    if num % den:
        raise ValidationError("W_F is not contained in W_1 cap W_2")
    w = _carrier(lam_1, nu)
    out: dict[Weight, int] = {}
    for y in stabilizer_orbit(lam_1, lam_2):
        k = act(w, y)
        out[k] = out.get(k, 0) + num // den
    return FormalCombination._raw(out)


def trans_srs_rhs(lam_f, lam_1, lam_2, nu) -> FormalCombination:
    """|W_1 cap W_2 / W_F| * sum over W_1/(W_1 cap W_2) of Theta(s lam_2), moved to nu = w lam_1."""
    return _trans_srs_rhs(to_weight(lam_f), to_weight(lam_1), to_weight(lam_2), to_weight(nu))


def verify_trans_srs(lam_f, lam_1, lam_2) -> Report:
    """psi^{lam_2}_{lam_f} o psi^{lam_f}_{lam_1} on every Theta(w lam_1)."""
    lam_f, lam_1, lam_2 = to_weight(lam_f), to_weight(lam_1), to_weight(lam_2)
    rep = Report(f"trans-srs F={_fmt(lam_f)} F'={_fmt(lam_1)} F''={_fmt(lam_2)}")
    for nu in orbit_points(lam_1):
        x = FormalCombination._raw({nu: 1})
        lhs = _translate(lam_f, lam_2, _translate(lam_1, lam_f, x))
        rhs = _trans_srs_rhs(lam_f, lam_1, lam_2, nu)
        rep.checked += 1
        if lhs != rhs:
            rep.failures.append(f"Theta{_fmt(nu)}: {lhs!r} != {rhs!r}")
    return rep


def verify_two_step(lam, j: int) -> Report:
    """psi^{lam-e_j}_lam = psi^{lam-e_j}_{lam'} o psi^{lam'}_lam with lam' = lam + e_1 + ... + e_{j-1}."""
    lam = to_weight(lam)
    n = len(lam)
    if any(lam[i] < lam[i + 1] for i in range(n - 1)):
        raise ValidationError("lambda must be dominant")
    if not (j == n or lam[j - 1] > lam[j]):
        raise ValidationError(f"need lambda_{j} > lambda_{j + 1} or j = n")
    lam_p = _shift(lam, range(1, j), step=+1)
    lam_m = _shift(lam, [j])
    rep = Report(f"two-step lambda={_fmt(lam)} j={j}")
    num = intersection_order(from_weight(lam), from_weight(lam_m))
    den = stabilizer_order(from_weight(lam_p))
    if num != den:
        rep.failures.append(f"normalizing factor {num}/{den} is not 1")
    for nu in orbit_points(lam):
        x = FormalCombination._raw({nu: 1})
        direct = _translate(lam, lam_m, x)
        composite = _translate(lam_p, lam_m, _translate(lam, lam_p, x))
        srs = _trans_srs_rhs(lam_p, lam, lam_m, nu)
        rep.checked += 1
        if not (direct == composite == srs):
            rep.failures.append(f"Theta{_fmt(nu)}: {direct!r} / {composite!r} / {srs!r}")
    return rep


@dataclass(frozen=True)
class Schedule:
    start: tuple[HalfInteger, ...]  # lambda of the regularized parameter
    end: tuple[HalfInteger, ...]  # lambda of the original parameter
    factors: tuple[tuple[tuple[int, int], int], ...]  # ((a, b), t_i), outermost first

    def word(self) -> list[int]:
        """Flattened letters, outermost first."""
        out = []
        for (a, b), t in self.factors:
            out += list(range(a, b + 1)) * t
        return out


def translation_schedule(psi: RealArthurParameter, t: tuple[int, ...]) -> Schedule:
    """Word prod_i (T_{a_i} o ... o T_{b_i})^{t_i} carrying lambda of psi>> to lambda of psi."""
    if len(t) != psi.r:
        raise ValidationError("one shift per block is required")
    start = []
    factors = []
    pos = 0
    for b, ti in zip(psi.blocks, t):
        start += sorted((x + ti for x in b.exponents()), reverse=True)
        if ti:
            factors.append(((pos + 1, pos + b.m), ti))
        pos += b.m
    return Schedule(tuple(start), tuple(inf_char_of_real_A(psi)), tuple(factors))


def verify_schedule(sched: Schedule, t: tuple[int, ...] | None = None,
                    ms: tuple[int, ...] | None = None) -> Report:
    """Compare the letter-by-letter word with whole-block translations, and with
    T^{t1-t2}_{[1,m1]} o ... o T^{tr}_{[1,n]} when t is non-increasing."""
    lam0 = to_weight(sched.start)
    rep = Report("translation schedule")
    x0 = FormalCombination._raw({lam0: 1})
    by_letters, end = _apply_word(lam0, sched.word(), x0)
    rep.checked += 1
    if sorted(end, reverse=True) != list(to_weight(sched.end)):
        rep.failures.append(f"word ends at {_fmt(end)}, expected {_fmt(to_weight(sched.end))}")
    x, lam = x0, lam0
    for (a, b), ti in reversed(sched.factors):
        for _ in range(ti):
            mu = _shift(lam, range(a, b + 1))
            x, lam = _translate(lam, mu, x), mu
    rep.checked += 1
    if x != by_letters:
        rep.failures.append(f"block translations {x!r} != letters {by_letters!r}")
    if t is not None and ms is not None:
        if all(t[i] >= t[i + 1] for i in range(len(t) - 1)):
            y, lam = x0, lam0
            tt = list(t) + [0]
            steps, cum = [], 0
            for i, m in enumerate(ms):
                cum += m
                steps.append((cum, tt[i] - tt[i + 1]))
            for c, reps in reversed(steps):
                for _ in range(reps):
                    mu = _shift(lam, range(1, c + 1))
                    y, lam = _translate(lam, mu, y), mu
            rep.checked += 1
            if y != by_letters:
                rep.failures.append(f"nested composite {y!r} != letters {by_letters!r}")
        else:
            rep.notes.append("shifts are not non-increasing; nested composite not defined")
    return rep
