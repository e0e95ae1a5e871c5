"""Involutions with block constraints, their conjugacy classes, and multisegment dictionaries.

Orbits of the Levi Weyl group W^M = prod Sym(J_u) acting by conjugation on
involutions are classified by the incidence matrix A_{u,v}.  The good kind
allows fixed points but no transposition inside a block; the skew kind is
fixed-point-free.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import permutations, product
from math import factorial, prod

from .arith import HalfInteger, Permutation, compose, exact_rank, is_involution, signed_skew_lift
from .correspondence import iota_L
from .parameters import (
    GOOD, InfinitesimalCharacter, Multisegment, PAdicInfChar, RealLParameter,
    Character, Segment, ValidationError, classify_parity,
)

SKEW = "skew"
BRUTE_FORCE_LIMIT = 40320  # 8!


@dataclass(frozen=True)
class BlockStructure:
    sizes: tuple[int, ...]

    @classmethod
    def of(cls, lam) -> "BlockStructure":
        ents = list(lam)
        sizes = []
        for i, x in enumerate(ents):
            if i and x == ents[i - 1]:
                sizes[-1] += 1
            else:
                sizes.append(1)
        return cls(tuple(sizes))

    @property
    def n(self) -> int:
        return sum(self.sizes)

    @property
    def r(self) -> int:
        return len(self.sizes)

    @property
    def cumulative(self) -> tuple[int, ...]:
        out, c = [], 0
        for s in self.sizes:
            c += s
            out.append(c)
        return tuple(out)

    def block(self, u: int) -> range:
        """Indices of J_u (u 0-based), 1-based positions."""
        start = sum(self.sizes[:u])
        return range(start + 1, start + self.sizes[u] + 1)

    def block_of(self) -> list[int]:
        """block_of()[i-1] is the block index of position i."""
        return [u for u, s in enumerate(self.sizes) for _ in range(s)]


@dataclass(frozen=True)
class BlockInvolution:
    s: Permutation
    blocks: BlockStructure
    kind: str

    def __post_init__(self):
        if self.s.n != self.blocks.n:
            raise ValidationError("involution size does not match the block structure")
        if not is_involution(self.s):
            raise ValidationError(f"{self.s} is not an involution")
        bo = self.blocks.block_of()
        if self.kind == GOOD:
            if any(bo[i - 1] == bo[self.s(i) - 1] and self.s(i) != i for i in range(1, self.s.n + 1)):
                raise ValidationError(f"{self.s} swaps two indices with equal lambda")
        elif self.kind == SKEW:
            if self.s.fixed_points():
                raise ValidationError(f"{self.s} has fixed points")
        else:
            raise ValidationError(f"unknown kind {self.kind!r}")


def kind_for(lam: InfinitesimalCharacter) -> str:
    return GOOD if classify_parity(lam) == GOOD else SKEW


def incidence(x: BlockInvolution) -> tuple[tuple[int, ...], ...]:
    bo = x.blocks.block_of()
    r = x.blocks.r
    A = [[0] * r for _ in range(r)]
    for i in range(1, x.s.n + 1):
        A[bo[i - 1]][bo[x.s(i) - 1]] += 1
    return tuple(tuple(row) for row in A)


def _check_comparable(x: BlockInvolution, y: BlockInvolution):
    if x.blocks != y.blocks or x.kind != y.kind:
        raise ValidationError("involutions have different block structures or kinds")


def same_orbit(x: BlockInvolution, y: BlockInvolution) -> bool:
    _check_comparable(x, y)
    return incidence(x) == incidence(y)


def levi_weyl_group(blocks: BlockStructure):
    """Iterate over prod Sym(J_u) as permutations of {1..n}."""
    if prod(factorial(s) for s in blocks.sizes) > BRUTE_FORCE_LIMIT:
        raise ValidationError("Levi Weyl group too large for brute force")
    per_block = [list(permutations(blocks.block(u))) for u in range(blocks.r)]
    for choice in product(*per_block):
        yield Permutation(tuple(i for part in choice for i in part))


def conjugacy_orbit(x: BlockInvolution) -> frozenset[Permutation]:
    return frozenset(compose(compose(w, x.s), w.inverse()) for w in levi_weyl_group(x.blocks))


def brute_force_same_orbit(x: BlockInvolution, y: BlockInvolution) -> bool:
    _check_comparable(x, y)
    return y.s in conjugacy_orbit(x)


def all_block_involutions(blocks: BlockStructure, kind: str) -> list[BlockInvolution]:
    """Every involution of the given kind, by direct enumeration."""
    n = blocks.n
    bo = blocks.block_of()
    out = []

    def rec(imgs: list[int]):
        free = [i for i in range(1, n + 1) if imgs[i - 1] == 0]
        if not free:
            out.append(BlockInvolution(Permutation(tuple(imgs)), blocks, kind))
            return
        i = free[0]
        if kind == GOOD:
            imgs[i - 1] = i
            rec(imgs)
            imgs[i - 1] = 0
        for j in free[1:]:
            if kind == GOOD and bo[i - 1] == bo[j - 1]:
                continue
            imgs[i - 1], imgs[j - 1] = j, i
            rec(imgs)
            imgs[i - 1] = imgs[j - 1] = 0

    rec([0] * n)
    return out


def admissible_incidence_matrices(blocks: BlockStructure, kind: str):
    """Symmetric nonnegative matrices with row sums |J_u|; even diagonal for the skew kind."""
    r = blocks.r
    cells = [(u, v) for u in range(r) for v in range(u, r)]
    A = [[0] * r for _ in range(r)]
    rem = list(blocks.sizes)
    out = []

    def rec(k: int):
        if k == len(cells):
            out.append(tuple(tuple(row) for row in A))
            return
        u, v = cells[k]
        cap = rem[u] if u == v else min(rem[u], rem[v])
        # the last cell of a row must absorb what is left of the row sum
        choices = [rem[u]] if v == r - 1 and rem[u] <= cap else range(cap + 1) if v < r - 1 else []
        for c in choices:
            if u == v and kind == SKEW and c % 2:
                continue
            rem[u] -= c
            if u != v:
                rem[v] -= c
            A[u][v] = A[v][u] = c
            rec(k + 1)
            A[u][v] = A[v][u] = 0
            rem[u] += c
            if u != v:
                rem[v] += c

    rec(0)
    return sorted(out)


def canonical_filling(A, blocks: BlockStructure, kind: str) -> BlockInvolution:
    n, r = blocks.n, blocks.r
    unused = [list(blocks.block(u)) for u in range(r)]
    imgs = [0] * n
    for u in range(r):
        for v in range(u, r):
            if u == v:
                if kind == SKEW:
                    for _ in range(A[u][u] // 2):
                        i, j = unused[u].pop(0), unused[u].pop(0)
                        imgs[i - 1], imgs[j - 1] = j, i
                continue
            for _ in range(A[u][v]):
                i, j = unused[u].pop(0), unused[v].pop(0)
                imgs[i - 1], imgs[j - 1] = j, i
    for u in range(r):
        for i in unused[u]:
            imgs[i - 1] = i
    return BlockInvolution(Permutation(tuple(imgs)), blocks, kind)


def enumerate_orbits(lam: InfinitesimalCharacter, kind: str | None = None) -> list[BlockInvolution]:
    """One canonical involution per orbit, sorted by incidence matrix.

    ``kind`` defaults to the one dictated by the parity of lambda.
    """
    kind = kind or kind_for(lam)
    blocks = BlockStructure.of(lam)
    if kind == SKEW and lam.n % 2:
        return []
    return [canonical_filling(A, blocks, kind) for A in admissible_incidence_matrices(blocks, kind)]


def involution_of_L_param(phi: RealLParameter, lam: InfinitesimalCharacter) -> BlockInvolution:
    """Involution s with s(lambda) = -mu, mu the zbar-exponents of phi."""
    if phi.inf_char() != lam:
        raise ValidationError("L-parameter does not have this infinitesimal character")
    kind = kind_for(lam)
    blocks = BlockStructure.of(lam)
    free: dict[int, list[int]] = {}
    for i, x in enumerate(lam, start=1):
        free.setdefault(x.twice, []).append(i)
    imgs = [0] * lam.n
    cnt = Counter(phi.characters)
    for c in sorted(cnt):
        if c.s.twice <= 0:
            continue
        hi, lo = (c.t + c.s).twice, (c.t - c.s).twice
        for _ in range(cnt[c]):
            i, j = free[hi].pop(0), free[lo].pop(0)
            imgs[i - 1], imgs[j - 1] = j, i
    for c in sorted(cnt):
        if c.s.twice != 0:
            continue
        k = cnt[c]
        idx = [free[c.t.twice].pop(0) for _ in range(k)]
        if kind == GOOD:
            for i in idx:
                imgs[i - 1] = i
        else:
            if k % 2:
                raise ValidationError("no fixed-point-free involution for this parameter")
            for a, b in zip(idx[::2], idx[1::2]):
                imgs[a - 1], imgs[b - 1] = b, a
    return BlockInvolution(Permutation(tuple(imgs)), blocks, kind)


def L_param_of_involution(x: BlockInvolution, lam: InfinitesimalCharacter) -> RealLParameter:
    chars = []
    for i in range(1, lam.n + 1):
        a, b = lam[i - 1], lam[x.s(i) - 1]
        chars.append(Character(HalfInteger((a.twice + b.twice) // 2),
                               HalfInteger((a.twice - b.twice) // 2)))
    return RealLParameter(tuple(chars))


def iota_orbit(x: BlockInvolution, lam: InfinitesimalCharacter, delta: int) -> Multisegment:
    """One segment per index: the pair {i, s(i)} gives [-l~_j, l~_i] and [-l~_i, l~_j]."""
    lt = [x_.twice + delta - 1 for x_ in lam]  # twice of lambda~
    segs = []
    for i in range(1, lam.n + 1):
        j = x.s(i)
        segs.append(Segment(HalfInteger(-lt[j - 1]), HalfInteger(lt[i - 1])))
    return Multisegment(tuple(segs))


@dataclass(frozen=True)
class ContentCheck:
    match: bool
    deficits: tuple[tuple[HalfInteger, int], ...]  # exponent -> expected minus actual


def multisegment_orbit(m: Multisegment, lambdap: PAdicInfChar) -> ContentCheck:
    want = lambdap.as_counter()
    have = m.content()
    keys = sorted(set(want) | set(have))
    d = tuple((x, want[x] - have[x]) for x in keys if want[x] != have[x])
    return ContentCheck(not d, d)


def is_full_rank(m: Multisegment, lambdap: PAdicInfChar) -> bool:
    if not multisegment_orbit(m, lambdap).match:
        raise ValidationError("multisegment content differs from the infinitesimal character")
    W = lambdap.as_counter()
    for x in sorted(W):
        y = x + 1
        if y not in W:
            continue
        through = sum(1 for s in m.segments if s.lo <= x and y <= s.hi)
        if through != min(W[x], W[y]):
            return False
    return True


def _sub_multisets(c: Counter, size: int):
    items = sorted(c.items())

    def rec(k: int, left: int, acc: list):
        if left == 0:
            yield Counter(dict(acc))
            return
        if k == len(items):
            return
        key, avail = items[k]
        for take in range(min(avail, left), -1, -1):
            yield from rec(k + 1, left - take, acc + ([(key, take)] if take else []))

    yield from rec(0, size, [])


def full_rank_multisegments(lambdap: PAdicInfChar) -> list[Multisegment]:
    """All multisegments with this content whose adjacent-degree ranks are maximal.

    Sweeps the support upward: at each edge exactly min(W_x, W_{x+1}) open
    segments continue, the rest close, and the shortfall opens new ones.
    """
    W = lambdap.as_counter()
    if not W:
        return [Multisegment(())]
    pts = sorted(W)
    out = []

    def rec(k: int, open_: Counter, closed: list):
        x = pts[k]
        if k == len(pts) - 1 or pts[k + 1] != x + 1:
            done = closed + [Segment(lo, x) for lo in open_.elements()]
            if k == len(pts) - 1:
                out.append(Multisegment(tuple(done)))
            else:
                y = pts[k + 1]
                rec(k + 1, Counter({y: W[y]}), done)
            return
        y = pts[k + 1]
        c = min(W[x], W[y])
        for keep in _sub_multisets(open_, c):
            ended = open_ - keep
            nxt = keep + Counter({y: W[y] - c})
            rec(k + 1, nxt, closed + [Segment(lo, x) for lo in ended.elements()])

    rec(0, Counter({pts[0]: W[pts[0]]}), [])
    return sorted(set(out), key=lambda m: m.segments)


def is_self_dual_admissible(m: Multisegment, dual_type: str) -> bool:
    """Closed under negation, and wrong-type symmetric segments come in pairs."""
    cnt = Counter(m.segments)
    if any(cnt[s.negate()] != k for s, k in cnt.items()):
        return False
    for s, k in cnt.items():
        if s.lo == -s.hi:
            orth_type = s.dim % 2 == 1
            if orth_type != (dual_type == "orth") and k % 2:
                return False
    return True


def d_counts(x: BlockInvolution) -> tuple[tuple[int, ...], ...]:
    cum = x.blocks.cumulative
    return tuple(tuple(sum(1 for i in range(1, ma + 1) if x.s(i) > mb) for mb in cum) for ma in cum)


def lift_matrix(x: BlockInvolution):
    return signed_skew_lift(x.s) if x.kind == SKEW else x.s.matrix()


def d_counts_by_rank(x: BlockInvolution) -> tuple[tuple[int, ...], ...]:
    """dim(F_a cap F_b^perp) for the form given by the lift of s."""
    X = lift_matrix(x)
    cum = x.blocks.cumulative
    return tuple(tuple(ma - exact_rank(X.submatrix(ma, mb)) for mb in cum) for ma in cum)


def orbit_count_of(lam: InfinitesimalCharacter) -> int:
    return len(enumerate_orbits(lam))


def iota_on_L(x: BlockInvolution, lam: InfinitesimalCharacter, delta: int) -> Multisegment:
    """Same map routed through the L-parameter of s."""
    return iota_L(L_param_of_involution(x, lam), delta)

