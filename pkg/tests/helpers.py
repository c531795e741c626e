"""Independent oracles used by the test suite.

Everything here recomputes answers through a different algorithm than
the implementation under test: brute force, exhaustive enumeration, or
a second classical recursion.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from weylpat.roots import RationalSpan, dot
from weylpat.weyl import (
    WeylElement,
    enumerate_elements,
    identity,
    multiply,
    simple_reflection,
)

Q = Fraction


# ---------------------------------------------------------------------------
# permutations
# ---------------------------------------------------------------------------

def classical_contains(pattern: tuple[int, ...], word: tuple[int, ...]) -> bool:
    """Classical pattern containment: some subsequence of word is
    order-isomorphic to pattern."""
    k = len(pattern)
    for idxs in itertools.combinations(range(len(word)), k):
        sub = [word[i] for i in idxs]
        if all(
            (sub[i] < sub[j]) == (pattern[i] < pattern[j])
            for i in range(k) for j in range(i + 1, k)
        ):
            return True
    return False


def flip_perm(p: tuple[int, ...]) -> tuple[int, ...]:
    """Conjugation by the longest element: reverse and complement."""
    n = len(p)
    return tuple(n + 1 - p[n - 1 - i] for i in range(n))


def perm_of(w: WeylElement) -> tuple[int, ...]:
    from weylpat.weyl import one_line

    ol = one_line(w)
    assert ol is not None
    return tuple(int(c) for c in ol) if "," not in ol else tuple(
        int(c) for c in ol.split(",")
    )


# ---------------------------------------------------------------------------
# small polynomial arithmetic on coefficient tuples
# ---------------------------------------------------------------------------

def padd(a, b):
    n = max(len(a), len(b))
    return tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))


def pscale(c, a):
    return tuple(c * x for x in a)


def pmul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return tuple(out)


def pshift(a, k):
    return tuple([0] * k + list(a))


def ptrim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def preverse(a, n):
    """q^n * a(1/q) for a of degree <= n."""
    out = [0] * (n + 1)
    for i, x in enumerate(a):
        out[n - i] = x
    return ptrim(out)


# ---------------------------------------------------------------------------
# R-polynomials: classical companion recursion to the KL polynomials
# ---------------------------------------------------------------------------

class RTable:
    """R polynomials by the left-descent recursion.

    R(u,u) = 1, R(u,v) = 0 unless u <= v, and for a left descent s of v:
    R(u,v) = R(su,sv) when su < u, else (q-1) R(u,sv) + q R(su,sv).
    """

    def __init__(self, rs):
        self.rs = rs
        self.memo: dict[tuple[int, int], tuple[int, ...]] = {}

    def r(self, u: WeylElement, v: WeylElement) -> tuple[int, ...]:
        key = (u.inversions, v.inversions)
        got = self.memo.get(key)
        if got is not None:
            return got
        if u.inversions == v.inversions:
            val: tuple[int, ...] = (1,)
        elif u.length >= v.length:
            val = ()
        else:
            i = v.min_left_descent()
            s = simple_reflection(self.rs, i)
            sv = multiply(s, v)
            su = multiply(s, u)
            if su.length < u.length:
                val = self.r(su, sv)
            else:
                val = padd(pmul((-1, 1), self.r(u, sv)), pshift(self.r(su, sv), 1))
        val = ptrim(val)
        self.memo[key] = val
        return val


def kl_defining_identity_holds(rs, kl_coeffs) -> bool:
    """Check q^(l(v)-l(u)) P(u,v)(1/q) = sum_z R(u,z) P(z,v) on all pairs.

    ``kl_coeffs(u, v)`` must return the coefficient tuple of P(u,v).
    Together with the degree bound and constant term 1 this identity
    pins the whole KL table, so it is a complete independent check.
    """
    from weylpat.weyl import bruhat_leq

    rt = RTable(rs)
    elements = enumerate_elements(rs)
    for v in elements:
        for u in elements:
            if not bruhat_leq(u, v):
                continue
            lhs = preverse(kl_coeffs(u, v), v.length - u.length)
            rhs: tuple[int, ...] = ()
            for z in elements:
                if bruhat_leq(u, z) and bruhat_leq(z, v):
                    rhs = padd(rhs, pmul(rt.r(u, z), kl_coeffs(z, v)))
            if ptrim(lhs) != ptrim(rhs):
                return False
    return True


# ---------------------------------------------------------------------------
# word and inversion-set oracles
# ---------------------------------------------------------------------------

def cayley_distances(rs) -> dict[int, int]:
    """BFS word lengths over the Cayley graph: inversions mask -> distance."""
    start = identity(rs)
    dist = {start.inversions: 0}
    frontier = [start]
    gens = [simple_reflection(rs, i) for i in range(1, rs.rank + 1)]
    while frontier:
        new = []
        for w in frontier:
            for s in gens:
                nxt = multiply(s, w)
                if nxt.inversions not in dist:
                    dist[nxt.inversions] = dist[w.inversions] + 1
                    new.append(nxt)
        frontier = new
    return dist


def all_reduced_words(w: WeylElement) -> list[tuple[int, ...]]:
    """Every reduced word of w, via recursion on left descents."""
    if w.length == 0:
        return [()]
    rs = w.group
    out = []
    for i in range(1, rs.rank + 1):
        if w.has_left_descent(i):
            rest = multiply(simple_reflection(rs, i), w)
            out.extend((i,) + tail for tail in all_reduced_words(rest))
    return out


def is_biconvex(rs, mask: int) -> bool:
    """Naive biconvexity: the set and its complement inside the positive
    roots are each closed under root addition."""
    pos = rs.positive
    members = [pos[p] for p in range(rs.num_positive) if mask >> p & 1]
    others = [pos[p] for p in range(rs.num_positive) if not mask >> p & 1]

    def closed(subset):
        inside = set(subset)
        for a in subset:
            for b in subset:
                vec = tuple(x + y for x, y in zip(rs.roots[a], rs.roots[b]))
                idx = rs._root_index.get(vec)
                if idx is not None and rs.is_positive(idx) and idx not in inside:
                    return False
        return True

    return closed(members) and closed(others)


# ---------------------------------------------------------------------------
# brute-force embedding enumeration
# ---------------------------------------------------------------------------

def naive_embeddings(source, target) -> set[tuple[int, ...]]:
    """All valid simple-image tuples, found without any of the pruning the
    implementation uses: try every injective assignment of source simple
    roots to arbitrary target roots and check the definition directly."""
    r = source.rank
    result: set[tuple[int, ...]] = set()
    all_roots = range(len(target.roots))

    def cartan(rs, a, b):
        ra, rb = rs.roots[a], rs.roots[b]
        return 2 * dot(ra, rb) / dot(ra, ra)

    src_simple = source.simple
    for images in itertools.permutations(all_roots, r):
        if any(
            cartan(target, images[i], images[j]) != cartan(source, src_simple[i], src_simple[j])
            for i in range(r)
            for j in range(r)
        ):
            continue
        # extend linearly over all source roots
        image_set = set()
        ok = True
        for ridx in range(len(source.roots)):
            coeffs = source.simple_coords[ridx]
            vec = tuple(
                sum((Q(c) * target.roots[images[k]][d] for k, c in enumerate(coeffs)), Q(0))
                for d in range(target.ambient_dim)
            )
            tidx = target._root_index.get(vec)
            if tidx is None:
                ok = False
                break
            if source.is_positive(ridx) and not target.is_positive(tidx):
                ok = False
                break
            image_set.add(tidx)
        if not ok or len(image_set) != len(source.roots):
            continue
        # intersection condition: span of the images meets the target roots
        # in exactly the image set
        try:
            span = RationalSpan([target.roots[i] for i in images])
        except ValueError:  # dependent images cannot give an embedding
            continue
        members = {i for i in all_roots if span.contains(target.roots[i])}
        if members == image_set:
            result.add(tuple(images))
    return result
