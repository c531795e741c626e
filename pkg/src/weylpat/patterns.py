"""Subsystem embeddings, flattening, and (interval) pattern avoidance.

A subsystem embedding of a root system P' into P is a linear embedding
of the span of P' such that P' maps onto exactly the set of roots of P
lying in the embedded span.  Embeddings here are normalized to map
positive roots to positive roots; the induced positive system on the
image then has a unique simple system, so an embedding is determined by
a closed subsystem of P together with a Cartan-matrix-compatible
bijection onto its simple roots, and enumeration is finite and
canonical.  Compatibility is tested through Cartan integers only, which
are scale invariant, so for example an A1 pattern lives on both long and
short roots of B2.

The flattening map sends w in W(P) to the element of W(P') whose
inversion set is the pullback of I(w) through the embedding.  Pattern
embedding, pattern avoidance, interval pattern embedding (flattenings
match at both ends, bottom and top share a right coset of the embedded
subgroup, and the two Bruhat intervals are poset isomorphic) and
interval pattern avoidance are all built on it.
"""

from __future__ import annotations

import itertools
from collections import deque
from fractions import Fraction
from typing import Sequence

from .errors import (
    CapExceededError,
    GroupMismatchError,
    InternalInvariantError,
    NotAnInversionSetError,
    NotComparableError,
)
from .roots import RationalSpan, RootSystem, build_root_system, dot
from .weyl import (
    DEFAULT_ENUMERATION_CAP,
    BruhatInterval,
    WeylElement,
    WeylGroup,
    bruhat_leq,
    enumerate_elements,
    format_word,
    from_inversion_set,
    identity,
    interval,
    interval_isomorphic,
    inverse,
    multiply,
    parse_element,
    reflection,
    to_reduced_word,
)

__all__ = [
    "SubsystemEmbedding",
    "enumerate_embeddings",
    "embed_element",
    "flatten",
    "pattern_embeds",
    "pattern_avoids",
    "interval_embeds",
    "interval_pattern_avoids",
    "interval_poset_reachable",
    "parse_interval_spec",
    "format_interval_spec",
]

DEFAULT_EMBEDDING_CAP = 200_000


class SubsystemEmbedding:
    """An embedding of a source root system into a target root system.

    ``simple_images[k]`` is the target root index of the image of the
    k-th simple root of the source (0-based position in Bourbaki order);
    ``full_map[r]`` extends this linearly to every source root index.
    """

    __slots__ = ("source", "target", "simple_images", "full_map",
                 "_pos_pairs", "_subgroup", "_embed_cache")

    def __init__(self, source: RootSystem, target: RootSystem,
                 simple_images: tuple[int, ...], full_map: tuple[int, ...]):
        self.source = source
        self.target = target
        self.simple_images = simple_images
        self.full_map = full_map
        # (source positive position, target positive position) pairs
        self._pos_pairs = tuple(
            (source.positive_position(r), target.positive_position(full_map[r]))
            for r in source.positive
        )
        self._subgroup: frozenset[int] | None = None
        self._embed_cache: dict[int, WeylElement] = {}

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SubsystemEmbedding)
            and self.source == other.source
            and self.target == other.target
            and self.simple_images == other.simple_images
        )

    def __hash__(self) -> int:
        return hash((self.source.cartan_type, self.target.cartan_type, self.simple_images))

    def __repr__(self) -> str:
        images = ", ".join(str(tuple(self.target.roots[i])) for i in self.simple_images)
        return (f"<SubsystemEmbedding {self.source.cartan_type} -> "
                f"{self.target.cartan_type}: [{images}]>")

    def image_root(self, r: int) -> int:
        """Target root index of the image of source root index r."""
        return self.full_map[r]

    def subgroup_inversions(self, cap: int = DEFAULT_ENUMERATION_CAP) -> frozenset[int]:
        """Inversion masks of the embedded subgroup inside the target group."""
        if self._subgroup is None:
            self._subgroup = frozenset(
                embed_element(self, w).inversions
                for w in enumerate_elements(self.source, cap)
            )
        return self._subgroup


def _cartan_int(rs: RootSystem, a: int, b: int) -> Fraction:
    ra, rb = rs.roots[a], rs.roots[b]
    return 2 * dot(ra, rb) / dot(ra, ra)


def _closed_subsystem(rs: RootSystem, seeds: Sequence[int]) -> frozenset[int]:
    """Closure of a set of root indices under reflections in its own members."""
    closed = set(seeds)
    table = rs.reflection_table
    changed = True
    while changed:
        changed = False
        snapshot = list(closed)
        for a in snapshot:
            row = table[a]
            for b in snapshot:
                img = row[b]
                if img not in closed:
                    closed.add(img)
                    changed = True
    return frozenset(closed)


_EMBEDDINGS_CACHE: dict[tuple[str, str], tuple[SubsystemEmbedding, ...]] = {}


def enumerate_embeddings(source: RootSystem, target: RootSystem,
                         cap: int = DEFAULT_EMBEDDING_CAP) -> tuple[SubsystemEmbedding, ...]:
    """All subsystem embeddings of source into target, in canonical order.

    Candidate simple systems are the subsets S of the positive roots of
    the target that are pairwise non-positively paired (such sets are
    automatically linearly independent); S is kept when the target roots
    inside the rational span of S are exactly the subsystem S generates.
    Each surviving S contributes one embedding per Cartan-compatible
    bijection from the simple roots of the source.  The result is sorted
    by (sorted image tuple, image tuple) and cached per system pair.
    """
    key = (source.cartan_type, target.cartan_type)
    cached = _EMBEDDINGS_CACHE.get(key)
    if cached is not None:
        return cached
    r = source.rank
    found: list[SubsystemEmbedding] = []
    if r <= target.rank:
        pos = list(target.positive)
        pair_ok = {
            (a, b): dot(target.roots[a], target.roots[b]) <= 0
            for a in pos for b in pos if a < b
        }

        subsets: list[tuple[int, ...]] = []

        def grow(start: int, chosen: list[int]) -> None:
            if len(chosen) == r:
                subsets.append(tuple(chosen))
                if len(subsets) > cap:
                    raise CapExceededError("cap exceeded while enumerating embeddings")
                return
            for k in range(start, len(pos)):
                cand = pos[k]
                if all(pair_ok[(min(c, cand), max(c, cand))] for c in chosen):
                    chosen.append(cand)
                    grow(k + 1, chosen)
                    chosen.pop()

        grow(0, [])

        src_cartan = [
            [_cartan_int(source, source.simple[i], source.simple[j]) for j in range(r)]
            for i in range(r)
        ]
        for S in subsets:
            span = RationalSpan([target.roots[i] for i in S])
            members = frozenset(
                i for i, root in enumerate(target.roots) if span.contains(root)
            )
            if members != _closed_subsystem(target, S):
                continue
            tgt_cartan = {
                (a, b): _cartan_int(target, a, b) for a in S for b in S
            }
            for images in itertools.permutations(S):
                if all(
                    tgt_cartan[(images[i], images[j])] == src_cartan[i][j]
                    for i in range(r) for j in range(r)
                ):
                    found.append(_build_embedding(source, target, images))
    found.sort(key=lambda e: (tuple(sorted(e.simple_images)), e.simple_images))
    result = tuple(found)
    _EMBEDDINGS_CACHE[key] = result
    return result


def _build_embedding(source: RootSystem, target: RootSystem,
                     images: tuple[int, ...]) -> SubsystemEmbedding:
    full: list[int] = []
    for r_idx in range(len(source.roots)):
        coeffs = source.simple_coords[r_idx]
        vec = [Fraction(0)] * target.ambient_dim
        for c, img in zip(coeffs, images):
            if c:
                root = target.roots[img]
                vec = [x + c * y for x, y in zip(vec, root)]
        try:
            t_idx = target.index_of(tuple(vec))
        except ValueError:
            raise InternalInvariantError(
                f"image of source root {r_idx} is not a root of {target.cartan_type}"
            ) from None
        if source.is_positive(r_idx) and not target.is_positive(t_idx):
            raise InternalInvariantError(
                "embedding maps a positive root to a negative root"
            )
        full.append(t_idx)
    return SubsystemEmbedding(source, target, images, tuple(full))


def embed_element(emb: SubsystemEmbedding, w: WeylElement) -> WeylElement:
    """Image of a source group element in the target group.

    Evaluates a reduced word of w through the reflections in the image
    simple roots; well defined because the Cartan data agree.
    """
    if w.group != emb.source:
        raise GroupMismatchError("element does not belong to the embedding source")
    got = emb._embed_cache.get(w.inversions)
    if got is not None:
        return got
    tgt = emb.target
    out = identity(tgt)
    for i in to_reduced_word(w):
        out = multiply(out, reflection(tgt, emb.simple_images[i - 1]))
    emb._embed_cache[w.inversions] = out
    return out


def flatten(emb: SubsystemEmbedding, w: WeylElement) -> WeylElement:
    """Flattening: the source element whose inversion set pulls back I(w)."""
    if w.group != emb.target:
        raise GroupMismatchError("element does not belong to the embedding target")
    bits = 0
    inv = w.inversions
    for sp, tp in emb._pos_pairs:
        if inv >> tp & 1:
            bits |= 1 << sp
    try:
        return from_inversion_set(emb.source, bits)
    except NotAnInversionSetError:
        raise InternalInvariantError(
            "pulled-back inversion set is not biconvex; embedding is invalid"
        ) from None


def pattern_embeds(emb: SubsystemEmbedding, v: WeylElement, w: WeylElement) -> bool:
    """True when this embedding flattens w to v."""
    if v.group != emb.source:
        raise GroupMismatchError("pattern element does not belong to the embedding source")
    return flatten(emb, w) == v


def pattern_avoids(v: WeylElement, w: WeylElement,
                   cap: int = DEFAULT_EMBEDDING_CAP) -> bool:
    """True when no embedding of v's system into w's system flattens w to v."""
    for emb in enumerate_embeddings(v.group, w.group, cap):
        if flatten(emb, w) == v:
            return False
    return True


def interval_embeds(emb: SubsystemEmbedding, u: WeylElement, v: WeylElement,
                    x: WeylElement, w: WeylElement) -> bool:
    """Interval pattern embedding of [u, v] into [x, w] along emb.

    All three conditions are required: the flattenings of w and x are v
    and u, x and w lie in the same right coset of the embedded subgroup,
    and [u, v] and [x, w] are isomorphic as posets.
    """
    if not bruhat_leq(u, v):
        raise NotComparableError(f"not comparable: {format_word(u)} !<= {format_word(v)}")
    if not bruhat_leq(x, w):
        raise NotComparableError(f"not comparable: {format_word(x)} !<= {format_word(w)}")
    if flatten(emb, w) != v or flatten(emb, x) != u:
        return False
    if multiply(x, inverse(w)).inversions not in emb.subgroup_inversions():
        return False
    return interval_isomorphic(interval(u, v), interval(x, w))


def interval_pattern_avoids(w: WeylElement, u: WeylElement, v: WeylElement,
                            cap: int = DEFAULT_EMBEDDING_CAP) -> bool:
    """True when no embedding realizes [u, v] as an interval pattern in w.

    For each embedding the only possible bottom is x = i(u v^-1) w, so
    that interval is the one tested.
    """
    if not bruhat_leq(u, v):
        raise NotComparableError(f"not comparable: {format_word(u)} !<= {format_word(v)}")
    g = multiply(u, inverse(v))
    for emb in enumerate_embeddings(u.group, w.group, cap):
        x = multiply(embed_element(emb, g), w)
        if not bruhat_leq(x, w):
            continue
        if interval_embeds(emb, u, v, x, w):
            return False
    return True


# ---------------------------------------------------------------------------
# the interval poset
# ---------------------------------------------------------------------------

def interval_poset_reachable(generators: Sequence[BruhatInterval],
                             x: WeylElement, w: WeylElement,
                             groups: Sequence[RootSystem] | None = None,
                             cap: int = 100_000) -> bool:
    """Whether [x, w] sits above some generator in the interval poset.

    The poset on intervals (across all configured groups) is the
    reflexive transitive closure of two generating moves upward:

    * [u, v] -> [x', w'] when some embedding realizes [u, v] as an
      interval pattern in [x', w'];
    * [u, v] -> [u', v] when u' <= u (shrinking the bottom keeps the
      property locus, since cell closures only add smaller elements).

    The search is a breadth-first walk upward from the generators,
    restricted to the supplied window of groups (default: the groups of
    the generators plus the group of the goal).
    """
    if not bruhat_leq(x, w):
        raise NotComparableError(f"not comparable: {format_word(x)} !<= {format_word(w)}")
    window: list[RootSystem] = []
    seen_types = set()
    for sys in [g.bottom.group for g in generators] + ([w.group] if groups is None else list(groups)):
        if sys.cartan_type not in seen_types:
            seen_types.add(sys.cartan_type)
            window.append(sys)
    if groups is not None and w.group.cartan_type not in seen_types:
        window.append(w.group)

    goal = (w.group.cartan_type, x.inversions, w.inversions)
    queue: deque[tuple[str, int, int]] = deque()
    visited: set[tuple[str, int, int]] = set()

    def push(sys: RootSystem, bot: WeylElement, top: WeylElement) -> bool:
        state = (sys.cartan_type, bot.inversions, top.inversions)
        if state in visited:
            return False
        visited.add(state)
        if len(visited) > cap:
            raise CapExceededError("cap exceeded in interval poset search")
        queue.append(state)
        return state == goal

    systems = {sys.cartan_type: sys for sys in window}
    for gen in generators:
        if push(gen.bottom.group, gen.bottom, gen.top):
            return True

    while queue:
        sys_type, bot_inv, top_inv = queue.popleft()
        sys = systems.get(sys_type)
        if sys is None:
            continue
        wg = WeylGroup.for_system(sys)
        bot = wg.elements[wg.index[bot_inv]]
        top = wg.elements[wg.index[top_inv]]
        # move 2: lower the bottom
        bot_idx = wg.idx(bot)
        m = wg.downsets[bot_idx] & ~(1 << bot_idx)
        while m:
            low = m & -m
            u2 = wg.elements[low.bit_length() - 1]
            m ^= low
            if push(sys, u2, top):
                return True
        # move 1: interval pattern embeddings into every window group
        g = multiply(bot, inverse(top))
        for tgt in window:
            if sys.rank > tgt.rank:
                continue
            for emb in enumerate_embeddings(sys, tgt):
                ig = embed_element(emb, g)
                for w2 in enumerate_elements(tgt):
                    if flatten(emb, w2) != top:
                        continue
                    x2 = multiply(ig, w2)
                    if not bruhat_leq(x2, w2):
                        continue
                    if flatten(emb, x2) != bot:
                        continue
                    if not interval_isomorphic(interval(bot, top), interval(x2, w2)):
                        continue
                    if push(tgt, x2, w2):
                        return True
    return False


# ---------------------------------------------------------------------------
# interval notation
# ---------------------------------------------------------------------------

def parse_interval_spec(text: str) -> tuple[RootSystem, WeylElement, WeylElement]:
    """Parse "TYPE:U..V" into (system, bottom, top).

    U and V use element notation: reduced words like "1 2 1", or one-line
    permutations in irreducible type A, e.g. "A3:1234..3412".
    """
    head, sep, body = text.partition(":")
    if not sep or ".." not in body:
        raise ValueError(f"cannot parse interval notation {text!r}")
    rs = build_root_system(head.strip())
    u_text, _, v_text = body.partition("..")
    return rs, parse_element(rs, u_text), parse_element(rs, v_text)


def format_interval_spec(u: WeylElement, v: WeylElement) -> str:
    return f"{u.group.cartan_type}:{format_word(u)}..{format_word(v)}"
