"""Command-line interface.

Exit codes: 0 for success or a true answer, 1 for a false answer (for
example "does not avoid", or a verification sweep with failures), 2 for
usage errors, 3 for internal invariant violations.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from ..errors import (
    CapExceededError,
    GroupMismatchError,
    InternalInvariantError,
    InvalidCartanType,
    NotAnInversionSetError,
    NotComparableError,
)
from ..kl import kl_polynomial
from ..patterns import (
    enumerate_embeddings,
    flatten,
    interval_pattern_avoids,
    parse_interval_spec,
    pattern_avoids,
)
from ..roots import build_root_system
from ..weyl import (
    DEFAULT_ENUMERATION_CAP,
    bruhat_leq,
    enumerate_elements,
    format_word,
    interval,
    one_line,
    parse_element,
)
from .verify import SUITES, load_window, run_suite

_USAGE_ERRORS = (InvalidCartanType, NotAnInversionSetError, GroupMismatchError, ValueError)


def _element_json(w) -> dict:
    out = {"word": format_word(w)}
    ol = one_line(w)
    if ol is not None:
        out["one_line"] = ol
    return out


def _element_text(w) -> str:
    ol = one_line(w)
    return f"{format_word(w)} ({ol})" if ol is not None else format_word(w)


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _root_str(vec) -> str:
    return "(" + ", ".join(str(x) for x in vec) + ")"


# ---------------------------------------------------------------------------
# command handlers; each returns the process exit code
# ---------------------------------------------------------------------------

def _cmd_roots(args) -> int:
    rs = build_root_system(args.type)
    simple_rank = {idx: k + 1 for k, idx in enumerate(rs.simple)}
    rows = []
    for i, r in enumerate(rs.roots):
        rows.append({
            "index": i,
            "coords": [str(x) for x in r],
            "height": rs.heights[i],
            "positive": rs.is_positive(i),
            "simple": simple_rank.get(i),
        })
    payload = {
        "command": "roots",
        "inputs": {"type": rs.cartan_type},
        "result": {
            "count": len(rs.roots),
            "positive": rs.num_positive,
            "rank": rs.rank,
            "ambient_dim": rs.ambient_dim,
            "roots": rows,
        },
        "cases": None,
        "failures": [],
    }
    lines = [f"{rs.cartan_type}: {len(rs.roots)} roots, {rs.num_positive} positive, "
             f"rank {rs.rank}, ambient dimension {rs.ambient_dim}"]
    for row in rows:
        tags = []
        if row["positive"]:
            tags.append("positive")
        if row["simple"]:
            tags.append(f"simple a{row['simple']}")
        tag = ("  " + " ".join(tags)) if tags else ""
        lines.append(f"  [{row['index']:>2}] {_root_str(rs.roots[row['index']])}"
                     f"  height {row['height']:>2}{tag}")
    _emit(args, payload, lines)
    return 0


def _cmd_enumerate(args) -> int:
    rs = build_root_system(args.type)
    elements = enumerate_elements(rs, args.cap)
    payload = {
        "command": "enumerate",
        "inputs": {"type": rs.cartan_type},
        "result": {"order": len(elements),
                   "elements": [_element_json(w) for w in elements]},
        "cases": None,
        "failures": [],
    }
    lines = [f"{rs.cartan_type}: {len(elements)} elements"]
    for w in elements:
        lines.append(f"  l={w.length:>2}  {_element_text(w)}")
    _emit(args, payload, lines)
    return 0


def _cmd_bruhat(args) -> int:
    rs = build_root_system(args.type)
    u = parse_element(rs, args.u)
    v = parse_element(rs, args.v)
    comparable = bruhat_leq(u, v)
    payload = {
        "command": "bruhat",
        "inputs": {"type": rs.cartan_type, "u": _element_json(u), "v": _element_json(v)},
        "result": {"comparable": comparable},
        "cases": None,
        "failures": [],
    }
    if not comparable:
        _emit(args, payload, [f"{_element_text(u)} is not below {_element_text(v)}"])
        return 1
    iv = interval(u, v, args.cap)
    payload["result"]["size"] = iv.size
    payload["result"]["rank"] = iv.rank_span
    payload["result"]["elements"] = [_element_json(z) for z in iv.elements]
    lines = [f"interval [{_element_text(u)}, {_element_text(v)}] in {rs.cartan_type}: "
             f"{iv.size} elements, rank {iv.rank_span}"]
    for level, members in enumerate(iv.levels):
        names = ", ".join(_element_text(iv.elements[k]) for k in members)
        lines.append(f"  rank {level}: {names}")
    _emit(args, payload, lines)
    return 0


def _cmd_kl(args) -> int:
    rs = build_root_system(args.type)
    u = parse_element(rs, args.u)
    v = parse_element(rs, args.v)
    try:
        poly = kl_polynomial(u, v, args.cap)
    except NotComparableError as exc:
        payload = {
            "command": "kl",
            "inputs": {"type": rs.cartan_type, "u": _element_json(u), "v": _element_json(v)},
            "result": None,
            "cases": None,
            "failures": [str(exc)],
        }
        _emit(args, payload, [str(exc)])
        return 1
    payload = {
        "command": "kl",
        "inputs": {"type": rs.cartan_type, "u": _element_json(u), "v": _element_json(v)},
        "result": {"text": str(poly), "coefficients": list(poly.coefficients)},
        "cases": None,
        "failures": [],
    }
    _emit(args, payload, [str(poly)])
    return 0


def _cmd_embeddings(args) -> int:
    source = build_root_system(args.source)
    target = build_root_system(args.target)
    embs = enumerate_embeddings(source, target)
    payload = {
        "command": "embeddings",
        "inputs": {"source": source.cartan_type, "target": target.cartan_type},
        "result": {
            "count": len(embs),
            "embeddings": [
                {"index": k,
                 "simple_images": [
                     {"root_index": i, "coords": [str(x) for x in target.roots[i]]}
                     for i in emb.simple_images
                 ]}
                for k, emb in enumerate(embs)
            ],
        },
        "cases": None,
        "failures": [],
    }
    lines = [f"{len(embs)} embeddings of {source.cartan_type} into {target.cartan_type}"]
    for k, emb in enumerate(embs):
        images = ", ".join(
            f"a{j + 1} -> {_root_str(target.roots[i])}"
            for j, i in enumerate(emb.simple_images))
        lines.append(f"  [{k}] {images}")
    _emit(args, payload, lines)
    return 0


def _cmd_flatten(args) -> int:
    source = build_root_system(args.source)
    target = build_root_system(args.target)
    embs = enumerate_embeddings(source, target)
    if not 0 <= args.embedding < len(embs):
        raise ValueError(
            f"embedding index {args.embedding} out of range; "
            f"{len(embs)} embeddings exist (see the embeddings command)")
    w = parse_element(target, args.w)
    result = flatten(embs[args.embedding], w)
    payload = {
        "command": "flatten",
        "inputs": {"source": source.cartan_type, "target": target.cartan_type,
                   "embedding": args.embedding, "w": _element_json(w)},
        "result": _element_json(result),
        "cases": None,
        "failures": [],
    }
    _emit(args, payload, [_element_text(result)])
    return 0


def _cmd_avoids(args) -> int:
    rs = build_root_system(args.type)
    w = parse_element(rs, args.w)
    src_type, _, v_text = args.pattern.partition(":")
    if not _:
        raise ValueError('pattern must look like "SRC:V", e.g. "A3:3412"')
    source = build_root_system(src_type)
    v = parse_element(source, v_text)
    avoided = pattern_avoids(v, w)
    payload = {
        "command": "avoids",
        "inputs": {"type": rs.cartan_type, "w": _element_json(w),
                   "pattern": {"type": source.cartan_type, "v": _element_json(v)}},
        "result": {"avoids": avoided},
        "cases": None,
        "failures": [],
    }
    _emit(args, payload, ["avoids" if avoided else "does not avoid"])
    return 0 if avoided else 1


def _cmd_interval_avoids(args) -> int:
    rs = build_root_system(args.type)
    w = parse_element(rs, args.w)
    source, u, v = parse_interval_spec(args.interval)
    avoided = interval_pattern_avoids(w, u, v)
    payload = {
        "command": "interval-avoids",
        "inputs": {"type": rs.cartan_type, "w": _element_json(w),
                   "interval": {"type": source.cartan_type,
                                "u": _element_json(u), "v": _element_json(v)}},
        "result": {"avoids": avoided},
        "cases": None,
        "failures": [],
    }
    _emit(args, payload, ["avoids" if avoided else "does not avoid"])
    return 0 if avoided else 1


def _cmd_verify(args) -> int:
    window = load_window(args.config)
    reports = run_suite(args.suite, args.params, window, slow=args.slow, cap=args.cap)
    all_passed = all(r.passed for r in reports)
    payload = {
        "command": "verify",
        "inputs": {"suite": args.suite, "params": list(args.params)},
        "result": "pass" if all_passed else "fail",
        "cases": sum(r.cases for r in reports),
        "failures": [f for r in reports for f in r.failures],
        "reports": [r.to_dict() for r in reports],
    }
    lines: list[str] = []
    for r in reports:
        lines.append(r.render_text())
        lines.append("")
    lines.append(f"verify {args.suite}: "
                 f"{'PASS' if all_passed else 'FAIL'} "
                 f"({sum(r.cases for r in reports)} cases, "
                 f"{sum(len(r.failures) for r in reports)} failures)")
    _emit(args, payload, lines)
    return 0 if all_passed else 1


# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text",
                        help="output format (default: text)")
    common.add_argument("--cap", type=int, default=DEFAULT_ENUMERATION_CAP,
                        help="group enumeration cap (default: %(default)s)")

    parser = argparse.ArgumentParser(
        prog="weylpat",
        description="Weyl group combinatorics: root systems, Bruhat order, "
                    "Kazhdan-Lusztig polynomials, pattern and interval pattern "
                    "avoidance.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("roots", parents=[common], help="list the roots of a system")
    p.add_argument("type")
    p.set_defaults(handler=_cmd_roots)

    p = sub.add_parser("enumerate", parents=[common], help="list all group elements")
    p.add_argument("type")
    p.set_defaults(handler=_cmd_enumerate)

    p = sub.add_parser("bruhat", parents=[common], help="compare two elements and print the interval")
    p.add_argument("type")
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p.set_defaults(handler=_cmd_bruhat)

    p = sub.add_parser("kl", parents=[common], help="Kazhdan-Lusztig polynomial of a pair")
    p.add_argument("type")
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p.set_defaults(handler=_cmd_kl)

    p = sub.add_parser("embeddings", parents=[common], help="list subsystem embeddings")
    p.add_argument("source")
    p.add_argument("target")
    p.set_defaults(handler=_cmd_embeddings)

    p = sub.add_parser("flatten", parents=[common], help="flatten an element through an embedding")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--embedding", type=int, default=0,
                   help="index into the embeddings listing (default: 0)")
    p.add_argument("--w", required=True)
    p.set_defaults(handler=_cmd_flatten)

    p = sub.add_parser("avoids", parents=[common], help="ordinary pattern avoidance")
    p.add_argument("type")
    p.add_argument("--w", required=True)
    p.add_argument("--pattern", required=True, help='pattern element, e.g. "A3:3412"')
    p.set_defaults(handler=_cmd_avoids)

    p = sub.add_parser("interval-avoids", parents=[common], help="interval pattern avoidance")
    p.add_argument("type")
    p.add_argument("--w", required=True)
    p.add_argument("--interval", required=True, help='interval, e.g. "A3:1234..3412"')
    p.set_defaults(handler=_cmd_interval_avoids)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("params", nargs="*",
                   help="suite parameters; defaults to the configured window")
    p.add_argument("--config", default=None, help="path to a window configuration file")
    p.add_argument("--slow", action="store_true",
                   help="include the slow window tier (D4, F4 targets)")
    p.set_defaults(handler=_cmd_verify)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse already printed a message; normalize all usage exits to 2
        return 0 if exc.code == 0 else 2
    try:
        return args.handler(args)
    except NotComparableError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InternalInvariantError as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return 3
    except Exception as exc:  # anything unexpected is an internal failure
        print(f"internal invariant violation: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
