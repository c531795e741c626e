"""Weyl group elements, length, inversion sets, Bruhat order and intervals.

An element is stored as its action on the root list (a permutation of
root indices) together with the inversion set as a bit vector over the
positive root positions.  The inversion set determines the element, so
equality and hashing go through it; the number of set bits is the
length.

Conventions fixed here and relied on everywhere else:

* products compose left to right as functions, (w1*w2)(v) = w1(w2(v));
* simple indices in the public API are 1-based in Bourbaki numbering
  (components of reducible types numbered consecutively);
* ``from_word([1, 2, 1])`` means s1 s2 s1;
* Bruhat order uses left multiplication, u <= v decided by the lifting
  recursion (equivalent to the subword property), with the closure of
  length-decreasing reflection moves kept as an independent oracle in
  :func:`bruhat_leq_by_reflection_closure`;
* all deterministic tie breaking is by the lexicographically least
  reduced word.

In type An an element can also be written in one-line permutation
notation: "3412" is the w with w(1)=3, w(2)=4, w(3)=1, w(4)=2, acting on
coordinates by w(e_i) = e_(w(i)).
"""

from __future__ import annotations

from fractions import Fraction as Q
from typing import Iterable, Sequence

from .errors import (
    CapExceededError,
    GroupMismatchError,
    NotAnInversionSetError,
    NotComparableError,
)
from .roots import RootSystem

__all__ = [
    "WeylElement",
    "BruhatInterval",
    "identity",
    "simple_reflection",
    "reflection",
    "multiply",
    "inverse",
    "apply",
    "from_word",
    "to_reduced_word",
    "from_inversion_set",
    "inversion_roots",
    "enumerate_elements",
    "bruhat_leq",
    "bruhat_leq_by_reflection_closure",
    "covers",
    "interval",
    "interval_isomorphic",
    "parse_element",
    "format_word",
    "one_line",
    "element_label",
    "WeylGroup",
    "DEFAULT_ENUMERATION_CAP",
]

DEFAULT_ENUMERATION_CAP = 10_000


class WeylElement:
    """A Weyl group element of a fixed root system."""

    __slots__ = ("group", "root_image", "inversions", "length")

    def __init__(self, group: RootSystem, root_image: tuple[int, ...]):
        self.group = group
        self.root_image = root_image
        inv = 0
        heights = group.heights
        pos_position = group.positive_position
        half = len(group.roots) // 2
        # negative roots occupy the first half of the sorted root list
        for neg_idx in range(half):
            img = root_image[neg_idx]
            if heights[img] > 0:
                inv |= 1 << pos_position(img)
        self.inversions = inv
        self.length = inv.bit_count()

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, WeylElement)
            and self.group == other.group
            and self.inversions == other.inversions
        )

    def __hash__(self) -> int:
        return hash((self.group.cartan_type, self.inversions))

    def __repr__(self) -> str:
        return f"<WeylElement {self.group.cartan_type} {format_word(self)!r}>"

    def has_left_descent(self, i: int) -> bool:
        """True when s_i * w is shorter than w (i is 1-based)."""
        simple_root = self.group.simple[i - 1]
        return bool(self.inversions >> self.group.positive_position(simple_root) & 1)

    def min_left_descent(self) -> int | None:
        """Smallest 1-based left descent, or None for the identity."""
        for i in range(1, self.group.rank + 1):
            if self.has_left_descent(i):
                return i
        return None


def _check_same_group(a: WeylElement, b: WeylElement) -> None:
    if a.group is not b.group and a.group != b.group:
        raise GroupMismatchError(
            f"elements of {a.group.cartan_type} and {b.group.cartan_type} do not combine"
        )


def identity(rs: RootSystem) -> WeylElement:
    return WeylElement(rs, tuple(range(len(rs.roots))))


def simple_reflection(rs: RootSystem, i: int) -> WeylElement:
    """The reflection in the i-th simple root (1-based Bourbaki index)."""
    if not 1 <= i <= rs.rank:
        raise ValueError(f"simple index {i} out of range 1..{rs.rank}")
    return WeylElement(rs, rs.reflection_table[rs.simple[i - 1]])


def reflection(rs: RootSystem, alpha: int) -> WeylElement:
    """The reflection in the root with index alpha; s_alpha = s_(-alpha)."""
    if not 0 <= alpha < len(rs.roots):
        raise ValueError(f"root index {alpha} out of range for {rs.cartan_type}")
    return WeylElement(rs, rs.reflection_table[alpha])


def multiply(w1: WeylElement, w2: WeylElement) -> WeylElement:
    _check_same_group(w1, w2)
    im1 = w1.root_image
    return WeylElement(w1.group, tuple(im1[b] for b in w2.root_image))


def inverse(w: WeylElement) -> WeylElement:
    n = len(w.root_image)
    inv = [0] * n
    for a, b in enumerate(w.root_image):
        inv[b] = a
    return WeylElement(w.group, tuple(inv))


def apply(w: WeylElement, alpha: int) -> int:
    """Index of w(alpha) for a root index alpha."""
    return w.root_image[alpha]


def from_word(rs: RootSystem, word: Iterable[int]) -> WeylElement:
    """Evaluate a word in 1-based simple indices, left to right."""
    image = list(range(len(rs.roots)))
    table = rs.reflection_table
    simple = rs.simple
    for i in word:
        if not 1 <= i <= rs.rank:
            raise ValueError(f"simple index {i} out of range 1..{rs.rank}")
        row = table[simple[i - 1]]
        image = [image[b] for b in row]
    return WeylElement(rs, tuple(image))


def to_reduced_word(w: WeylElement) -> tuple[int, ...]:
    """The lexicographically least reduced word, as 1-based simple indices.

    Greedy: the possible first letters of reduced words of w are exactly
    its left descents, so repeatedly peeling the smallest one is lex-least.
    """
    rs = w.group
    word: list[int] = []
    current = w
    while True:
        i = current.min_left_descent()
        if i is None:
            return tuple(word)
        word.append(i)
        current = multiply(simple_reflection(rs, i), current)


def inversion_roots(w: WeylElement) -> tuple[int, ...]:
    """Root indices of the inversion set I(w), ascending."""
    rs = w.group
    return tuple(
        rs.positive[p] for p in range(rs.num_positive) if w.inversions >> p & 1
    )


def from_inversion_set(rs: RootSystem, S: int | Iterable[int]) -> WeylElement:
    """The unique element whose inversion set is S, if S is one.

    S is either a bit mask over positive root positions (as stored in
    ``WeylElement.inversions``) or an iterable of positive root indices.
    Raises NotAnInversionSetError when S is not biconvex.
    """
    if isinstance(S, int):
        mask = S
        if mask >> rs.num_positive:
            raise ValueError("bit mask has bits beyond the positive roots")
    else:
        mask = 0
        for idx in S:
            if not rs.is_positive(idx):
                raise ValueError(f"root index {idx} is not positive in {rs.cartan_type}")
            mask |= 1 << rs.positive_position(idx)

    want = mask
    word: list[int] = []
    table = rs.reflection_table
    while mask:
        for i in range(rs.rank):
            simple_root = rs.simple[i]
            bit = rs.positive_position(simple_root)
            if mask >> bit & 1:
                break
        else:
            raise NotAnInversionSetError("not an inversion set")
        word.append(i + 1)
        row = table[simple_root]
        new_mask = 0
        rest = mask & ~(1 << bit)
        while rest:
            low = rest & -rest
            p = low.bit_length() - 1
            img = row[rs.positive[p]]
            new_mask |= 1 << rs.positive_position(img)
            rest ^= low
        mask = new_mask
    w = from_word(rs, word)
    if w.inversions != want:
        raise NotAnInversionSetError("not an inversion set")
    return w


# ---------------------------------------------------------------------------
# enumeration and cached group data
# ---------------------------------------------------------------------------

class WeylGroup:
    """Fully enumerated Weyl group with index-level operation tables.

    Elements are indexed 0..|W|-1, sorted by (length, reduced word).
    Provides left multiplication tables and Bruhat down-sets as bit masks,
    which the polynomial and pattern layers key everything on.
    """

    _CACHE: dict[str, "WeylGroup"] = {}

    def __init__(self, rs: RootSystem, cap: int):
        self.rs = rs
        images: dict[int, tuple[int, ...]] = {}
        ident = tuple(range(len(rs.roots)))
        start = WeylElement(rs, ident)
        images[start.inversions] = ident
        frontier = [start]
        srows = [rs.reflection_table[s] for s in rs.simple]
        while frontier:
            new: list[WeylElement] = []
            for w in frontier:
                im = w.root_image
                for row in srows:
                    cand = tuple(im[b] for b in row)
                    el = WeylElement(rs, cand)
                    if el.inversions not in images:
                        images[el.inversions] = cand
                        if len(images) > cap:
                            raise CapExceededError(
                                f"cap exceeded: |W({rs.cartan_type})| > {cap}"
                            )
                        new.append(el)
            frontier = new

        elements = [WeylElement(rs, im) for im in images.values()]
        elements.sort(key=lambda w: (w.length, to_reduced_word(w)))
        self.elements: list[WeylElement] = elements
        self.size = len(elements)
        self.index: dict[int, int] = {w.inversions: k for k, w in enumerate(elements)}
        self.lengths: list[int] = [w.length for w in elements]
        self.words: list[tuple[int, ...]] = [to_reduced_word(w) for w in elements]
        self.lmult: list[list[int]] = []
        for i in range(rs.rank):
            row = srows[i]
            self.lmult.append(
                [self.index[WeylElement(rs, tuple(row[b] for b in w.root_image)).inversions]
                 for w in elements]
            )
        self._downsets: list[int] | None = None

    @classmethod
    def for_system(cls, rs: RootSystem, cap: int = DEFAULT_ENUMERATION_CAP) -> "WeylGroup":
        wg = cls._CACHE.get(rs.cartan_type)
        if wg is None:
            wg = cls(rs, cap)
            cls._CACHE[rs.cartan_type] = wg
        elif wg.size > cap:
            # keep the cap contract independent of cache warmth
            raise CapExceededError(f"cap exceeded: |W({rs.cartan_type})| > {cap}")
        return wg

    def idx(self, w: WeylElement) -> int:
        try:
            return self.index[w.inversions]
        except KeyError:
            raise GroupMismatchError(
                f"element does not belong to W({self.rs.cartan_type})"
            ) from None

    def min_left_descent_idx(self, k: int) -> int | None:
        w = self.elements[k]
        d = w.min_left_descent()
        return None if d is None else d - 1

    @property
    def downsets(self) -> list[int]:
        """downsets[v] is the bit mask of {z : z <= v} over element indices.

        Built with the lifting recurrence D(v) = D(sv) | s.D(sv) for any
        left descent s of v, independent of both the lifting decision
        procedure and the reflection-closure oracle.
        """
        if self._downsets is None:
            down = [0] * self.size
            down[0] = 1
            for v in range(1, self.size):
                s = self.min_left_descent_idx(v)
                sv = self.lmult[s][v]
                m = down[sv]
                out = m
                row = self.lmult[s]
                while m:
                    low = m & -m
                    out |= 1 << row[low.bit_length() - 1]
                    m ^= low
                down[v] = out
            self._downsets = down
        return self._downsets

    def leq_idx(self, a: int, b: int) -> bool:
        return bool(self.downsets[b] >> a & 1)

    def interval_indices(self, a: int, b: int) -> list[int]:
        down_b = self.downsets[b]
        return [z for z in range(self.size)
                if down_b >> z & 1 and self.downsets[z] >> a & 1]


def enumerate_elements(rs: RootSystem, cap: int = DEFAULT_ENUMERATION_CAP) -> list[WeylElement]:
    """All group elements, ordered by (length, lexicographic reduced word)."""
    return list(WeylGroup.for_system(rs, cap).elements)


# ---------------------------------------------------------------------------
# Bruhat order
# ---------------------------------------------------------------------------

def bruhat_leq(u: WeylElement, v: WeylElement) -> bool:
    """Decide u <= v in Bruhat order via the lifting recursion.

    Equivalent to the subword property: u <= v iff some reduced word of v
    contains a reduced word of u as a subword.  For a left descent s of v,
    u <= v iff (su <= sv when su < u, else u <= sv).
    """
    _check_same_group(u, v)
    rs = u.group
    while True:
        if u.length > v.length:
            return False
        if u.length == 0:
            return True
        if u.length == v.length:
            return u.inversions == v.inversions
        i = v.min_left_descent()
        s = simple_reflection(rs, i)
        if u.has_left_descent(i):
            u = multiply(s, u)
        v = multiply(s, v)


def bruhat_leq_by_reflection_closure(u: WeylElement, v: WeylElement,
                                     cap: int = DEFAULT_ENUMERATION_CAP) -> bool:
    """Bruhat order from its definition as a closure of reflection moves.

    Takes the reflexive transitive closure of x' < x whenever x' = s_alpha x
    for some root alpha with l(x') < l(x).  Enumerates the whole group, so
    this is an oracle for testing, not a fast path.
    """
    _check_same_group(u, v)
    wg = WeylGroup.for_system(u.group, cap)
    return bool(_reflection_closure_downsets(wg)[wg.idx(v)] >> wg.idx(u) & 1)


_CLOSURE_CACHE: dict[str, list[int]] = {}


def _reflection_closure_downsets(wg: WeylGroup) -> list[int]:
    cached = _CLOSURE_CACHE.get(wg.rs.cartan_type)
    if cached is not None:
        return cached
    rs = wg.rs
    down = [0] * wg.size
    refls = [reflection(rs, rs.positive[p]) for p in range(rs.num_positive)]
    for v_idx in range(wg.size):
        v = wg.elements[v_idx]
        mask = 1 << v_idx
        for t in refls:
            u = multiply(t, v)
            if u.length < v.length:
                mask |= down[wg.idx(u)]
        down[v_idx] = mask
    _CLOSURE_CACHE[wg.rs.cartan_type] = down
    return down


def covers(v: WeylElement) -> list[WeylElement]:
    """All u covered by v: u = s_alpha v with l(u) = l(v) - 1."""
    rs = v.group
    seen: dict[int, WeylElement] = {}
    for p in range(rs.num_positive):
        u = multiply(reflection(rs, rs.positive[p]), v)
        if u.length == v.length - 1:
            seen.setdefault(u.inversions, u)
    return sorted(seen.values(), key=to_reduced_word)


# ---------------------------------------------------------------------------
# intervals
# ---------------------------------------------------------------------------

class BruhatInterval:
    """The graded poset of all z with u <= z <= v."""

    __slots__ = ("bottom", "top", "elements", "cover_pairs", "_levels")

    def __init__(self, bottom: WeylElement, top: WeylElement,
                 elements: Sequence[WeylElement], cover_pairs: Sequence[tuple[int, int]]):
        self.bottom = bottom
        self.top = top
        self.elements = tuple(elements)
        self.cover_pairs = tuple(cover_pairs)
        self._levels: tuple[tuple[int, ...], ...] | None = None

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def rank_span(self) -> int:
        return self.top.length - self.bottom.length

    def rank_of(self, z: WeylElement) -> int:
        return z.length - self.bottom.length

    @property
    def levels(self) -> tuple[tuple[int, ...], ...]:
        """Element positions grouped by rank, bottom first."""
        if self._levels is None:
            buckets: list[list[int]] = [[] for _ in range(self.rank_span + 1)]
            for k, z in enumerate(self.elements):
                buckets[self.rank_of(z)].append(k)
            self._levels = tuple(tuple(b) for b in buckets)
        return self._levels

    def __repr__(self) -> str:
        return (f"<BruhatInterval {self.bottom.group.cartan_type} "
                f"[{format_word(self.bottom)} .. {format_word(self.top)}] "
                f"{self.size} elements>")


def interval(u: WeylElement, v: WeylElement,
             cap: int = DEFAULT_ENUMERATION_CAP) -> BruhatInterval:
    """The Bruhat interval [u, v]; raises NotComparableError when u is not <= v."""
    _check_same_group(u, v)
    if not bruhat_leq(u, v):
        raise NotComparableError(
            f"not comparable: {format_word(u)} !<= {format_word(v)}"
        )
    wg = WeylGroup.for_system(u.group, cap)
    idxs = wg.interval_indices(wg.idx(u), wg.idx(v))
    elements = [wg.elements[z] for z in idxs]
    pos = {z: k for k, z in enumerate(idxs)}
    pairs: list[tuple[int, int]] = []
    for k, z in enumerate(idxs):
        for z2 in idxs:
            if wg.lengths[z2] == wg.lengths[z] + 1 and wg.leq_idx(z, z2):
                pairs.append((k, pos[z2]))
    return BruhatInterval(elements[0], elements[-1], elements, pairs)


# ---------------------------------------------------------------------------
# graded poset isomorphism
# ---------------------------------------------------------------------------

def _interval_graph(iv: BruhatInterval) -> tuple[list[list[int]], list[list[int]], list[int]]:
    n = iv.size
    up: list[list[int]] = [[] for _ in range(n)]
    down: list[list[int]] = [[] for _ in range(n)]
    for a, b in iv.cover_pairs:
        up[a].append(b)
        down[b].append(a)
    ranks = [iv.rank_of(z) for z in iv.elements]
    return up, down, ranks


def _refine_colors(up: list[list[int]], down: list[list[int]], ranks: list[int]) -> list[int]:
    n = len(ranks)
    colors = [(ranks[k], len(up[k]), len(down[k])) for k in range(n)]
    for _ in range(n):
        sig = [
            (colors[k], tuple(sorted(colors[j] for j in up[k])),
             tuple(sorted(colors[j] for j in down[k])))
            for k in range(n)
        ]
        palette = {s: c for c, s in enumerate(sorted(set(sig)))}
        new = [palette[s] for s in sig]
        if new == colors:
            break
        colors = new
    return colors


def interval_isomorphic(i1: BruhatInterval, i2: BruhatInterval) -> bool:
    """Decide whether two Bruhat intervals are isomorphic as posets.

    Both posets are graded with unique minimum and maximum, so any
    isomorphism preserves rank; the search assigns elements level by
    level after an iterated degree refinement prunes the candidates.
    """
    if i1.size != i2.size or i1.rank_span != i2.rank_span:
        return False
    lv1, lv2 = i1.levels, i2.levels
    if [len(l) for l in lv1] != [len(l) for l in lv2]:
        return False
    up1, down1, r1 = _interval_graph(i1)
    up2, down2, r2 = _interval_graph(i2)
    c1 = _refine_colors(up1, down1, r1)
    c2 = _refine_colors(up2, down2, r2)
    if sorted(c1) != sorted(c2):
        return False

    mapping = [-1] * i1.size

    def match_level(level: int) -> bool:
        if level > i1.rank_span:
            return True
        nodes = sorted(lv1[level], key=lambda k: (-len(down1[k]), c1[k]))
        pool = list(lv2[level])

        def place(pos: int, used: set[int]) -> bool:
            if pos == len(nodes):
                return match_level(level + 1)
            a = nodes[pos]
            want = frozenset(mapping[d] for d in down1[a])
            for b in pool:
                if b in used or c2[b] != c1[a]:
                    continue
                if frozenset(down2[b]) != want:
                    continue
                mapping[a] = b
                used.add(b)
                if place(pos + 1, used):
                    return True
                used.discard(b)
                mapping[a] = -1
            return False

        return place(0, set())

    return match_level(0)


# ---------------------------------------------------------------------------
# element notation
# ---------------------------------------------------------------------------

def _is_single_type_a(rs: RootSystem) -> bool:
    return rs.cartan_type.startswith("A") and "x" not in rs.cartan_type


def one_line(w: WeylElement) -> str | None:
    """One-line permutation notation, for irreducible type A only.

    An element of W(An) permutes n+1 letters; A1 prints as "12" or "21"
    even though its realization lives in one coordinate.
    """
    rs = w.group
    if not _is_single_type_a(rs):
        return None
    if rs.rank == 1:
        return "12" if w.length == 0 else "21"
    n = rs.ambient_dim
    perm = [0] * n
    prev = None
    for k in range(n - 1):
        src = rs.index_of(tuple(
            Q(1) if j == k else Q(-1) if j == k + 1 else Q(0) for j in range(n)
        ))
        vec = rs.roots[w.root_image[src]]
        a = vec.index(Q(1)) + 1
        b = vec.index(Q(-1)) + 1
        perm[k] = a
        perm[k + 1] = b
        if prev is not None and prev != a:
            raise AssertionError("inconsistent permutation recovery")
        prev = b
    if n <= 9:
        return "".join(str(x) for x in perm)
    return ",".join(str(x) for x in perm)


def _element_from_one_line(rs: RootSystem, digits: Sequence[int]) -> WeylElement:
    n = rs.rank + 1
    if sorted(digits) != list(range(1, n + 1)):
        raise ValueError(f"{digits} is not a permutation of 1..{n}")
    if rs.rank == 1:
        return identity(rs) if list(digits) == [1, 2] else simple_reflection(rs, 1)
    perm = {i + 1: digits[i] for i in range(n)}
    image = []
    for r in rs.roots:
        vec = [Q(0)] * n
        for j in range(n):
            vec[perm[j + 1] - 1] = r[j]
        image.append(rs.index_of(tuple(vec)))
    return WeylElement(rs, tuple(image))


def parse_element(rs: RootSystem, text: str) -> WeylElement:
    """Parse an element from word notation, or one-line notation in type A.

    Word notation is space-separated 1-based simple indices ("1 2 1");
    "e" and the empty string give the identity.  A bare digit string of
    length n+1 in type An is read as one-line notation ("3412").

    >>> from weylpat.roots import build_root_system
    >>> a3 = build_root_system("A3")
    >>> format_word(parse_element(a3, "3412"))
    '2 1 3 2'
    >>> one_line(parse_element(a3, "2 1 3 2"))
    '3412'
    """
    s = text.strip()
    if s in ("", "e", "id"):
        return identity(rs)
    if " " not in s and s.isdigit() and _is_single_type_a(rs) and len(s) == rs.rank + 1:
        return _element_from_one_line(rs, [int(c) for c in s])
    if "," in s and _is_single_type_a(rs):
        parts = [p for p in s.split(",") if p]
        if len(parts) == rs.rank + 1:
            return _element_from_one_line(rs, [int(p) for p in parts])
    try:
        word = [int(p) for p in s.split()]
    except ValueError:
        raise ValueError(f"cannot parse element notation {text!r}") from None
    return from_word(rs, word)


def format_word(w: WeylElement) -> str:
    """Reduced word rendering; the identity prints as "e"."""
    word = to_reduced_word(w)
    return "e" if not word else " ".join(str(i) for i in word)


def element_label(w: WeylElement) -> str:
    """Human-facing label: reduced word, plus one-line form in type A."""
    ol = one_line(w)
    word = format_word(w)
    return f"{word} ({ol})" if ol is not None else word
