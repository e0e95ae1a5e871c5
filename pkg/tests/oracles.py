"""Independent reference computations used to cross-check the library.

Nothing here calls into the code it checks, apart from plain value types.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import combinations, permutations, product


def det_laplace(rows: list[list[Fraction]]) -> Fraction:
    n = len(rows)
    if n == 0:
        return Fraction(1)
    total = Fraction(0)
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        total += (-1) ** j * rows[0][j] * det_laplace(minor)
    return total


def rank_by_minors(rows: list[list]) -> int:
    """Largest k with a nonzero k x k minor."""
    if not rows or not rows[0]:
        return 0
    nr, nc = len(rows), len(rows[0])
    for k in range(min(nr, nc), 0, -1):
        for ri in combinations(range(nr), k):
            for ci in combinations(range(nc), k):
                if det_laplace([[Fraction(rows[i][j]) for j in ci] for i in ri]) != 0:
                    return k
    return 0


def zuckerman_translate(lam2: tuple[int, ...], mu2: tuple[int, ...], terms: dict) -> dict:
    """Translation by the weight formula, all weights doubled.

    Theta(nu) goes to the sum of Theta(nu + eta) over the distinct weights eta
    of the W-orbit of mu - lam with nu + eta conjugate to mu.  For mu - lam
    with two consecutive values the finite-dimensional module is a twist of an
    exterior power, so every weight has multiplicity one.
    """
    diff = tuple(m - l for l, m in zip(lam2, mu2))
    etas = set(permutations(diff))
    target = sorted(mu2)
    out: Counter = Counter()
    for nu, c in terms.items():
        for eta in etas:
            y = tuple(a + b for a, b in zip(nu, eta))
            if sorted(y) == target:
                out[y] += c
    return {k: v for k, v in out.items() if v}


def lambdap_by_segments(lam2: tuple[int, ...], delta: int) -> Counter:
    """Each lambda~_i contributes the full string -lambda~_i, ..., lambda~_i (doubled)."""
    c: Counter = Counter()
    for x in lam2:
        t = x + delta - 1
        for y in range(-t, t + 1, 2):
            c[y] += 1
    return c


def involution_count(n: int) -> int:
    a, b = 1, 1  # a(0), a(1)
    if n == 0:
        return 1
    for k in range(2, n + 1):
        a, b = b, b + (k - 1) * a
    return b


def brute_involutions(n: int) -> int:
    return sum(1 for p in permutations(range(n)) if all(p[p[i]] == i for i in range(n)))


def packet_size(ms) -> int:
    out = 1
    for m in ms:
        out *= m + 1
    return out


def levi_classes(images_list: list[tuple[int, ...]], sizes: tuple[int, ...]) -> int:
    """Number of classes of the given involutions under conjugation by prod S_{sizes}."""
    starts = [sum(sizes[:u]) for u in range(len(sizes))]
    perms = [list(range(n0, n0 + k)) for n0, k in zip(starts, sizes)]
    group = []
    for parts in product(*(permutations(p) for p in perms)):
        w = [0] * sum(sizes)
        for src, img in zip(perms, parts):
            for a, b in zip(src, img):
                w[a] = b
        group.append(w)
    seen, classes = set(), 0
    for s in images_list:
        s0 = tuple(x - 1 for x in s)
        if s0 in seen:
            continue
        classes += 1
        for w in group:
            winv = [0] * len(w)
            for i, x in enumerate(w):
                winv[x] = i
            seen.add(tuple(w[s0[winv[i]]] for i in range(len(w))))
    return classes


def minimal_shifts(intervals2: list[tuple[int, int]], box: int | None = None):
    """Lexicographically smallest t with [B_i+t_i, A_i+t_i] strictly above the next one.

    intervals2 holds doubled (B, A) pairs in block order.  The default box is
    large enough to stack every interval above the highest starting point.
    """
    best = None
    r = len(intervals2)
    if box is None:
        top = max(a for _, a in intervals2) - min(b for b, _ in intervals2)
        box = 2 + (top + sum(a - b + 2 for b, a in intervals2)) // 2
    for t in product(range(box), repeat=r):
        ok = all(intervals2[i][0] + 2 * t[i] > intervals2[i + 1][1] + 2 * t[i + 1] for i in range(r - 1))
        if ok and (best is None or t < best):
            best = t
    return best
