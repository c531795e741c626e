"""Exhaustive verification sweeps over configurable windows of Weyl groups.

Each suite walks every relevant configuration inside a finite window
(embeddings of a source system into a target system, or a list of
groups) and reports a :class:`VerificationReport` whose failure list is
empty exactly when the property held everywhere.  Windows default to
the shipped ``default_window.json``.

The properties checked:

* ``flattening``        every pullback of an inversion set through every
                        embedding reconstructs to a group element;
* ``x-determination``   when the two flattening conditions hold for a
                        coset pair, the bottom is forced to i(u v^-1) w;
* ``length-sufficiency`` given the flattening and coset conditions, the
                        intervals are isomorphic iff the length gaps agree;
* ``kl-transfer``       interval pattern embeddings preserve
                        Kazhdan-Lusztig polynomials;
* ``upper-ideal``       interval sets cut out by KL properties are closed
                        under the two upward moves of the interval poset;
* ``type-a-smoothness`` rational smoothness by KL sweep coincides with
                        avoidance of the one-line patterns 3412 and 4231.
"""

from __future__ import annotations

import json
import re
import time
from importlib import resources
from typing import Callable, Sequence

from ..errors import InternalInvariantError
from ..kl import KLPolynomial, is_rationally_smooth, kl_polynomial
from ..patterns import (
    embed_element,
    enumerate_embeddings,
    flatten,
    format_interval_spec,
    pattern_avoids,
)
from ..roots import RootSystem, build_root_system
from ..weyl import (
    DEFAULT_ENUMERATION_CAP,
    WeylElement,
    WeylGroup,
    bruhat_leq,
    element_label,
    enumerate_elements,
    format_word,
    interval,
    interval_isomorphic,
    inverse,
    multiply,
    parse_element,
)
from .report import VerificationReport

__all__ = [
    "load_window",
    "default_window",
    "matrix_pairs",
    "verify_flattening",
    "verify_x_determination",
    "verify_length_sufficiency",
    "verify_kl_transfer",
    "verify_upper_ideal",
    "verify_type_a_smoothness",
    "run_suite",
    "SUITES",
]


def default_window() -> dict:
    text = resources.files("weylpat.harness").joinpath("default_window.json").read_text()
    return json.loads(text)


def load_window(path: str | None = None) -> dict:
    if path is None:
        return default_window()
    with open(path, "r", encoding="utf-8") as fh:
        window = json.load(fh)
    base = default_window()
    base.update(window)
    return base


def matrix_pairs(window: dict, slow: bool = False) -> list[tuple[str, str]]:
    """(source, target) type pairs of the window, rank compatible only."""
    targets = list(window["targets"]) + (list(window.get("slow_targets", [])) if slow else [])
    pairs = []
    for s in window["sources"]:
        for t in targets:
            if build_root_system(s).rank <= build_root_system(t).rank:
                pairs.append((s, t))
    return pairs


# ---------------------------------------------------------------------------
# shared scans
# ---------------------------------------------------------------------------

_ISO_CACHE: dict[tuple, bool] = {}
_COND12_CACHE: dict[tuple[str, str], list] = {}


def _intervals_isomorphic_cached(u: WeylElement, v: WeylElement,
                                 x: WeylElement, w: WeylElement) -> bool:
    key = (u.group.cartan_type, u.inversions, v.inversions,
           x.group.cartan_type, x.inversions, w.inversions)
    got = _ISO_CACHE.get(key)
    if got is None:
        got = interval_isomorphic(interval(u, v), interval(x, w))
        _ISO_CACHE[key] = got
    return got


def _cond12_instances(source: RootSystem, target: RootSystem,
                      cap: int = DEFAULT_ENUMERATION_CAP):
    """All (emb, u, v, x, w, iso) with u <= v, x <= w, matching flattenings
    at both ends and x in the same right coset of the embedded subgroup.

    Walking each coset of the embedded subgroup covers every possible x
    for a given w, so the scan is exhaustive over the window.
    """
    key = (source.cartan_type, target.cartan_type)
    cached = _COND12_CACHE.get(key)
    if cached is not None:
        return cached
    out = []
    source_elements = enumerate_elements(source, cap)
    target_elements = enumerate_elements(target, cap)
    for emb in enumerate_embeddings(source, target):
        subgroup = [embed_element(emb, g) for g in source_elements]
        for w in target_elements:
            v = flatten(emb, w)
            for g in subgroup:
                x = multiply(g, w)
                u = flatten(emb, x)
                if not bruhat_leq(u, v):
                    continue
                if not bruhat_leq(x, w):
                    continue
                iso = _intervals_isomorphic_cached(u, v, x, w)
                out.append((emb, u, v, x, w, iso))
    _COND12_CACHE[key] = out
    return out


def _pair_label(u: WeylElement, v: WeylElement, x: WeylElement, w: WeylElement) -> str:
    return (f"[{format_interval_spec(u, v)}] -> [{format_interval_spec(x, w)}]")


def _timed(fn: Callable[[VerificationReport], None], report: VerificationReport) -> VerificationReport:
    start = time.perf_counter()
    fn(report)
    report.failures.sort()
    report.wall_time = time.perf_counter() - start
    return report


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

def verify_flattening(source_type: str, target_type: str,
                      cap: int = DEFAULT_ENUMERATION_CAP) -> VerificationReport:
    """Every pullback through every embedding is a valid inversion set."""
    source = build_root_system(source_type)
    target = build_root_system(target_type)
    report = VerificationReport(
        "flattening", {"source": source.cartan_type, "target": target.cartan_type})

    def run(rep: VerificationReport) -> None:
        for emb in enumerate_embeddings(source, target):
            for w in enumerate_elements(target, cap):
                try:
                    flatten(emb, w)
                except InternalInvariantError as exc:
                    rep.failures.append(
                        f"{emb!r} on {element_label(w)}: {exc}")
                rep.cases += 1

    return _timed(run, report)


def verify_x_determination(source_type: str, target_type: str,
                           cap: int = DEFAULT_ENUMERATION_CAP) -> VerificationReport:
    """With matching flattenings and a shared coset, the bottom is forced."""
    source = build_root_system(source_type)
    target = build_root_system(target_type)
    report = VerificationReport(
        "x-determination", {"source": source.cartan_type, "target": target.cartan_type})

    def run(rep: VerificationReport) -> None:
        for emb, u, v, x, w, _iso in _cond12_instances(source, target, cap):
            expected = multiply(embed_element(emb, multiply(u, inverse(v))), w)
            rep.cases += 1
            if x != expected:
                rep.failures.append(
                    f"{_pair_label(u, v, x, w)}: bottom differs from forced value "
                    f"{element_label(expected)}")

    return _timed(run, report)


def verify_length_sufficiency(source_type: str, target_type: str,
                              cap: int = DEFAULT_ENUMERATION_CAP) -> VerificationReport:
    """Given the first two conditions, poset isomorphism iff equal length gaps."""
    source = build_root_system(source_type)
    target = build_root_system(target_type)
    report = VerificationReport(
        "length-sufficiency", {"source": source.cartan_type, "target": target.cartan_type})

    def run(rep: VerificationReport) -> None:
        for emb, u, v, x, w, iso in _cond12_instances(source, target, cap):
            rep.cases += 1
            lengths_equal = (v.length - u.length) == (w.length - x.length)
            if iso != lengths_equal:
                kind = ("isomorphic with unequal gaps" if iso
                        else "equal gaps without isomorphism")
                rep.failures.append(f"{_pair_label(u, v, x, w)}: {kind}")

    return _timed(run, report)


def verify_kl_transfer(source_type: str, target_type: str,
                       cap: int = DEFAULT_ENUMERATION_CAP) -> VerificationReport:
    """Interval pattern embeddings preserve Kazhdan-Lusztig polynomials."""
    source = build_root_system(source_type)
    target = build_root_system(target_type)
    report = VerificationReport(
        "kl-transfer", {"source": source.cartan_type, "target": target.cartan_type})

    def run(rep: VerificationReport) -> None:
        for emb, u, v, x, w, iso in _cond12_instances(source, target, cap):
            if not iso:
                continue
            rep.cases += 1
            p1 = kl_polynomial(u, v, cap)
            p2 = kl_polynomial(x, w, cap)
            if p1 != p2:
                rep.failures.append(
                    f"{_pair_label(u, v, x, w)}: {p1} != {p2}")

    return _timed(run, report)


# -- upper ideal -------------------------------------------------------------

_PROP_RE = re.compile(r"kl-coeff\((\d+),(\d+)\)")


def _parse_property(name: str) -> Callable[[KLPolynomial], bool]:
    if name == "kl-nontrivial":
        return lambda p: p.coefficients != (1,)
    m = _PROP_RE.fullmatch(name.replace(" ", ""))
    if m:
        k, c = int(m.group(1)), int(m.group(2))
        return lambda p: p.coefficient(k) > c
    raise ValueError(
        f"unknown property {name!r}; use kl-nontrivial or kl-coeff(k,c)")


def verify_upper_ideal(property_name: str, types: Sequence[str],
                       pairs: Sequence[tuple[str, str]] | None = None,
                       cap: int = DEFAULT_ENUMERATION_CAP) -> VerificationReport:
    """The interval set cut out by a KL property is upward closed.

    Upward moves in the interval poset lower the bottom within a group
    (the closure of a cell only adds smaller elements) and transport
    along interval pattern embeddings across groups.  Both closures are
    checked exhaustively inside the window.
    """
    prop = _parse_property(property_name)
    type_list = [build_root_system(t).cartan_type for t in types]
    if pairs is None:
        pair_list = [
            (s, t) for s in type_list for t in type_list
            if build_root_system(s).rank <= build_root_system(t).rank
        ]
    else:
        pair_list = [(build_root_system(s).cartan_type, build_root_system(t).cartan_type)
                     for s, t in pairs]
    report = VerificationReport(
        "upper-ideal",
        {"property": property_name, "types": ",".join(type_list),
         "pairs": ";".join(f"{s}->{t}" for s, t in pair_list)})

    def run(rep: VerificationReport) -> None:
        # move 2, inside each group: if the property holds on [u, v] it
        # must hold on [u', v] for every u' <= u
        for t in type_list:
            rs = build_root_system(t)
            wg = WeylGroup.for_system(rs, cap)
            for vi in range(wg.size):
                v = wg.elements[vi]
                holders = [
                    ui for ui in range(wg.size)
                    if wg.leq_idx(ui, vi) and prop(kl_polynomial(wg.elements[ui], v, cap))
                ]
                for ui in holders:
                    m = wg.downsets[ui] & ~(1 << ui)
                    while m:
                        low = m & -m
                        u2 = low.bit_length() - 1
                        m ^= low
                        rep.cases += 1
                        if not prop(kl_polynomial(wg.elements[u2], v, cap)):
                            rep.failures.append(
                                f"{t}: property holds on "
                                f"[{format_word(wg.elements[ui])}..{format_word(v)}] "
                                f"but not on [{format_word(wg.elements[u2])}..{format_word(v)}]")
        # move 1, across each window pair: property transports along
        # interval pattern embeddings
        for s, t in pair_list:
            src, tgt = build_root_system(s), build_root_system(t)
            for emb, u, v, x, w, iso in _cond12_instances(src, tgt, cap):
                if not iso:
                    continue
                rep.cases += 1
                if prop(kl_polynomial(u, v, cap)) and not prop(kl_polynomial(x, w, cap)):
                    rep.failures.append(
                        f"{_pair_label(u, v, x, w)}: property lost along embedding")

    return _timed(run, report)


def verify_type_a_smoothness(n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> VerificationReport:
    """KL rational smoothness equals 3412/4231 avoidance in S_n.

    The two sides are computed through independent pipelines: a full
    Kazhdan-Lusztig sweep on one side, flattening through every A3
    subsystem embedding on the other.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    rs = build_root_system(f"A{n - 1}")
    a3 = build_root_system("A3")
    p3412 = parse_element(a3, "3412")
    p4231 = parse_element(a3, "4231")
    report = VerificationReport("type-a-smoothness", {"n": n})

    def run(rep: VerificationReport) -> None:
        smooth_kl = 0
        smooth_pattern = 0
        for w in enumerate_elements(rs, cap):
            rep.cases += 1
            by_kl = is_rationally_smooth(w, cap)
            by_pattern = pattern_avoids(p3412, w) and pattern_avoids(p4231, w)
            smooth_kl += by_kl
            smooth_pattern += by_pattern
            if by_kl != by_pattern:
                rep.failures.append(
                    f"{element_label(w)}: kl says {'smooth' if by_kl else 'singular'}, "
                    f"patterns say {'smooth' if by_pattern else 'singular'}")
        rep.parameters["smooth_kl"] = smooth_kl
        rep.parameters["smooth_pattern"] = smooth_pattern

    return _timed(run, report)


# ---------------------------------------------------------------------------
# suite registry for the CLI
# ---------------------------------------------------------------------------

def run_suite(name: str, args: Sequence[str], window: dict,
              slow: bool = False, cap: int | None = None) -> list[VerificationReport]:
    """Run one named suite; without args, sweep the window's defaults."""
    cap = cap or int(window.get("enumeration_cap", DEFAULT_ENUMERATION_CAP))
    if name in ("flattening", "x-determination", "length-sufficiency", "kl-transfer"):
        fn = {
            "flattening": verify_flattening,
            "x-determination": verify_x_determination,
            "length-sufficiency": verify_length_sufficiency,
            "kl-transfer": verify_kl_transfer,
        }[name]
        if args:
            if len(args) != 2:
                raise ValueError(f"suite {name} expects SOURCE TARGET")
            return [fn(args[0], args[1], cap)]
        if name == "kl-transfer":
            return [fn(s, t, cap) for s, t in window["kl_transfer_pairs"]]
        return [fn(s, t, cap) for s, t in matrix_pairs(window, slow)]
    if name == "upper-ideal":
        window_types = sorted(
            {t for t in window["sources"]} | {t for t in window["targets"]},
            key=lambda t: (build_root_system(t).rank, t))
        rel1_pairs = matrix_pairs(window, slow)
        if args:
            props = [args[0]]
            types = list(args[1:]) or window_types
            pairs = None if args[1:] else rel1_pairs
        else:
            props = window["upper_ideal_properties"]
            types = window_types
            pairs = rel1_pairs
        return [verify_upper_ideal(p, types, pairs, cap) for p in props]
    if name == "type-a-smoothness":
        sizes = [int(a) for a in args] if args else window["smoothness_sizes"]
        return [verify_type_a_smoothness(n, cap) for n in sizes]
    raise ValueError(f"unknown suite {name!r}")


SUITES = (
    "flattening",
    "x-determination",
    "length-sufficiency",
    "kl-transfer",
    "upper-ideal",
    "type-a-smoothness",
)
