"""Command-line front end.

    twistlog bracket --surface torus1 "x1" "x2"
    twistlog act --surface N2,1 "y2" "x2"
    twistlog cover-dump --surface N3,1
    twistlog log-twist --surface N2,1 "x1 x2"
    twistlog verify --surface N2,1 -N 4 --format json
    twistlog props --seed 7

Classes on a cover are written in ``y`` letters, base words in ``x``
letters.  ``TWISTLOG_N`` and ``TWISTLOG_K_MAX`` override the defaults for
the truncation order and the iteration cap.  Errors go to stderr as a
single line ``error: <kind>: <message>``.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass
from pathlib import Path

from . import checks
from .cover import CoverPresentation, build_cover, sigma_tilde
from .dehn import (
    DEFAULT_ORDER,
    TwistProblem,
    build_L,
    corrupt,
    default_k_max,
    insertion_count,
    load_preset,
    log_twist_series,
    verify_main_theorem,
)
from .magnus import NonTerminationError, magnus_embed
from .ribbon import NotSimpleError, RibbonSurface, goldman_bracket, kk_action, load_surface
from .words import LoopSum, WordSyntaxError, max_index, parse_word

ENV_ORDER = "TWISTLOG_N"
ENV_K_MAX = "TWISTLOG_K_MAX"

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_INPUT, EXIT_NONTERMINATION = 0, 1, 2, 3, 4

_COVER_NAME = re.compile(r"^N(\d+),1$")


class CliError(Exception):
    def __init__(self, kind: str, message: str, code: int = EXIT_INPUT):
        super().__init__(message)
        self.kind = kind
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError("usage", message, EXIT_USAGE)


@dataclass
class Target:
    """A parsed ``--surface`` selector."""

    surface: RibbonSurface
    cover: CoverPresentation | None
    label: str

    @property
    def class_letter(self) -> str:
        return "y" if self.cover else "x"


def resolve_surface(name: str) -> Target:
    m = _COVER_NAME.match(name.replace("_", ","))
    if m:
        g = int(m.group(1))
        if g < 1:
            raise CliError("surface", f"genus must be at least 1 in {name!r}")
        C = build_cover(g)
        return Target(C.surface, C, f"N{g},1")
    path = Path(name)
    try:
        if path.suffix == ".json" and path.exists():
            S = RibbonSurface.from_json(json.loads(path.read_text()))
        else:
            S = load_surface(name)
    except (FileNotFoundError, ModuleNotFoundError):
        raise CliError("surface", f"unknown surface {name!r}") from None
    except (ValueError, KeyError) as exc:
        raise CliError("surface", f"invalid surface description {name!r}: {exc}") from None
    return Target(S, None, S.name or name)


def _word(text: str, letter: str, rank: int, what: str):
    try:
        w = parse_word(text, letter)
    except WordSyntaxError as exc:
        raise CliError("parse", f"{what}: {exc}", EXIT_USAGE) from None
    if max_index(w) > rank:
        raise CliError("rank", f"{what} {text!r} uses a generator beyond rank {rank}")
    return w


def _env_int(name: str, value: int | None) -> int | None:
    if value is not None:
        return value
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise CliError("config", f"{name}={raw!r} is not an integer", EXIT_USAGE) from None


def truncation(args) -> tuple[int, int]:
    order = _env_int(ENV_ORDER, args.order)
    order = DEFAULT_ORDER if order is None else order
    if order < 1:
        raise CliError("config", f"truncation order must be at least 1, got {order}", EXIT_USAGE)
    k_max = _env_int(ENV_K_MAX, args.k_max)
    k_max = default_k_max(order) if k_max is None else k_max
    if k_max < 1:
        raise CliError("config", f"k_max must be at least 1, got {k_max}", EXIT_USAGE)
    return order, k_max


def _problem(args, target: Target) -> TwistProblem:
    if target.cover is None:
        raise CliError("surface", "twist verification needs a non-orientable surface N<g>,1")
    order, k_max = truncation(args)
    try:
        if args.r is None:
            return load_preset(target.label, order, k_max)
        r = _word(args.r, "y", target.cover.cover_rank, "r")
        return TwistProblem(target.cover, r, order, k_max)
    except KeyError:
        raise CliError("preset", f"no shipped curve for {target.label}; pass --r") from None
    except NotSimpleError as exc:
        raise CliError("not_simple", str(exc)) from None


def _emit(args, payload: dict, text: str):
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


# -- subcommands ---------------------------------------------------------------------


def cmd_bracket(args) -> int:
    target = resolve_surface(args.surface)
    S, letter = target.surface, target.class_letter
    a = LoopSum.from_word(_word(args.a, letter, S.rank, "first class"), rank=S.rank)
    b = LoopSum.from_word(_word(args.b, letter, S.rank, "second class"), rank=S.rank)
    out = goldman_bracket(S, a, b)
    _emit(args, {"surface": target.label, "bracket": out.to_json(letter)}, out.format(letter))
    return EXIT_OK


def cmd_act(args) -> int:
    target = resolve_surface(args.surface)
    S = target.surface
    y = LoopSum.from_word(_word(args.y, target.class_letter, S.rank, "class"), rank=S.rank)
    if target.cover is not None:
        x = _word(args.x, "x", target.cover.base_rank, "word")
        out = sigma_tilde(target.cover, y, x)
    else:
        x = _word(args.x, "x", S.rank, "word")
        out = kk_action(S, y, x)
    _emit(args, {"surface": target.label, "action": out.to_json("x")}, out.format("x"))
    return EXIT_OK


def cmd_cover_dump(args) -> int:
    target = resolve_surface(args.surface)
    if target.cover is None:
        raise CliError("surface", "cover-dump needs a non-orientable surface N<g>,1")
    data = target.cover.to_json()
    if args.format == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        lines = [f"N{data['genus']},1: boundary {data['boundary']}, deck element {data['deck_element']}"]
        lines += [f"  {k} = {v}" for k, v in data["basis"].items()]
        sectors = ", ".join(f"{k}={v}" for k, v in sorted(data["surface"]["sectors"].items()))
        lines.append(f"  cover cyclic order {data['surface']['cyclic_order']}, basepoint sectors {sectors}")
        lines += [f"  boundary cycle {c}" for c in data["boundary_cycles"]]
        print("\n".join(lines))
    return EXIT_OK


def cmd_log_twist(args) -> int:
    target = resolve_surface(args.surface)
    P = _problem(args, target)
    g, N = P.cover.base_rank, P.order
    words = args.words or [f"x{i}" for i in range(1, g + 1)]
    L = build_L(P)
    rows, ok = [], True
    for text in words:
        x = _word(text, "x", g, "word")
        try:
            log_side = log_twist_series(P, x)
        except NonTerminationError as exc:
            raise CliError("nontermination", f"{text}: {exc}; last nonzero degree {exc.last_degree}",
                           EXIT_NONTERMINATION) from None
        action = magnus_embed(sigma_tilde(P.cover, L, x), N, g)
        agree = log_side.agreement_degree(action)
        ok = ok and agree >= N
        rows.append({"word": text, "log_twist": log_side.to_json(), "action": action.to_json(),
                     "agree_through_degree": agree})
    text = "\n".join(
        f"{r['word']}: log of twist agrees with sigma(L) through degree {r['agree_through_degree']}"
        for r in rows)
    _emit(args, {"surface": target.label, "order": N, "rows": rows, "agree": ok}, text)
    return EXIT_OK if ok else EXIT_FALSE


def _parse_flip(text: str, g: int) -> tuple[int, int]:
    m = re.match(r"^(?:x)?(\d+):(\d+)$", text)
    if not m or not 1 <= int(m.group(1)) <= g:
        raise CliError("usage", f"--flip-insertion expects GEN:INDEX with 1 <= GEN <= {g}, got {text!r}",
                       EXIT_USAGE)
    return int(m.group(1)), int(m.group(2))


def cmd_verify(args) -> int:
    target = resolve_surface(args.surface)
    P = _problem(args, target)
    L = None
    if args.corrupt_L is not None:
        L = build_L(P)
        if not L:
            raise CliError("usage", "L vanishes for this curve; nothing to corrupt", EXIT_USAGE)
        if not 0 <= args.corrupt_L < len(L):
            raise CliError("usage", f"--corrupt-L index must lie in [0, {len(L)})", EXIT_USAGE)
        L = corrupt(L, args.corrupt_L)
    flip = None
    if args.flip_insertion is not None:
        flip = _parse_flip(args.flip_insertion, P.cover.base_rank)
        n = insertion_count(P, (flip[0],))
        if not 0 <= flip[1] < n:
            raise CliError("usage", f"x{flip[0]} has {n} insertions; index {flip[1]} out of range", EXIT_USAGE)
    report = verify_main_theorem(P, L=L, flip=flip)
    data = report.to_json(full=args.full)
    if not args.timings:
        data["timings"] = {}
    if args.format == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        head = "verified" if report.verified else "NOT verified"
        lines = [f"{report.surface} r = {report.r}, N = {report.order}: {head}"]
        if report.verified:
            lines[0] += f" with sign {report.verified_sign:+d}"
        else:
            lines.append(f"first disagreement in degree {report.first_disagreement_degree}")
        for c in report.per_generator:
            lines.append(f"  x{c.gen}: exp agrees through degree {c.agree_through_degree}, "
                         f"log agrees through degree {c.log_agree_through_degree}")
        lines += [f"  note: {n}" for n in report.notes]
        if args.timings:
            lines += [f"  {k}: {v:.3f}s" for k, v in report.timings.items()]
        print("\n".join(lines))
    return EXIT_OK if report.verified else EXIT_FALSE


_SUITES = {
    "identities": lambda seed, s, N: [r for g in (2, 3)
                                      for r in checks.identity_suite(build_cover(g), max(1, int(200 * s)), seed)],
    "goldman": lambda seed, s, N: [r for g in (2, 3)
                                   for r in checks.goldman_suite(build_cover(g).surface, max(1, int(100 * s)),
                                                                 max(1, int(50 * s)), seed,
                                                                 label=f" [cover N{g},1]")],
    "filtration": lambda seed, s, N: checks.filtration_suite(build_cover(2), N, max(1, int(100 * s)), seed),
    "magnus": lambda seed, s, N: checks.magnus_suite(max(1, int(500 * s)), seed),
    "cover": lambda seed, s, N: [r for g in (1, 2, 3) for r in checks.cover_suite(g, max(1, int(100 * s)), seed)],
}


def cmd_props(args) -> int:
    order, _ = truncation(args)
    if args.scale <= 0:
        raise CliError("usage", "--scale must be positive", EXIT_USAGE)
    names = list(_SUITES) if args.suite == "all" else [args.suite]
    results = [r for name in names for r in _SUITES[name](args.seed, args.scale, order)]
    ok = all(r.ok for r in results)
    _emit(args, {"seed": args.seed, "suites": [r.to_json() for r in results], "ok": ok},
          "\n".join(r.line() for r in results))
    return EXIT_OK if ok else EXIT_FALSE


# -- argument parsing ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="twistlog", description="Goldman Lie algebra actions and logarithms of Dehn twists "
                                             "on non-orientable surfaces.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, fmt="text"):
        sp.add_argument("--surface", required=True,
                        help="torus1, annulus, a surface JSON file, or N<g>,1 for the cover of N_{g,1}")
        sp.add_argument("--format", choices=("text", "json"), default=fmt)

    def trunc(sp):
        sp.add_argument("-N", "--order", type=int, default=None,
                        help=f"truncation order (default {DEFAULT_ORDER}, env {ENV_ORDER})")
        sp.add_argument("--k-max", type=int, default=None,
                        help=f"iteration cap for exp/log series (default (N+1)^2, env {ENV_K_MAX})")

    sp = sub.add_parser("bracket", help="Goldman bracket of two free loops")
    common(sp)
    sp.add_argument("a")
    sp.add_argument("b")
    sp.set_defaults(func=cmd_bracket)

    sp = sub.add_parser("act", help="action of a free loop on a based word")
    common(sp)
    sp.add_argument("y", help="free loop (y letters on a cover, x letters otherwise)")
    sp.add_argument("x", help="based word in x letters")
    sp.set_defaults(func=cmd_act)

    sp = sub.add_parser("cover-dump", help="orientation double cover data (JSON unless --format text)")
    common(sp, fmt="json")
    sp.set_defaults(func=cmd_cover_dump)

    sp = sub.add_parser("log-twist", help="logarithm of the twist against the action of L")
    common(sp)
    trunc(sp)
    sp.add_argument("--r", default=None, help="cover word r (default: the shipped curve)")
    sp.add_argument("words", nargs="*", help="base words (default: the generators)")
    sp.set_defaults(func=cmd_log_twist)

    sp = sub.add_parser("verify", help="check that the twist is the exponential of the action of L")
    common(sp)
    trunc(sp)
    sp.add_argument("--r", default=None, help="cover word r (default: the shipped curve)")
    sp.add_argument("--corrupt-L", type=int, default=None, metavar="K",
                    help="flip the sign of term K of L before comparing")
    sp.add_argument("--flip-insertion", default=None, metavar="GEN:K",
                    help="reverse insertion K of the twist on generator GEN")
    sp.add_argument("--full", action="store_true", help="include both series for every generator")
    sp.add_argument("--timings", action="store_true", help="report wall-clock timings (not deterministic)")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("props", help="run the randomized property suites")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    trunc(sp)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--scale", type=float, default=1.0, help="fraction of the default case counts")
    sp.add_argument("--suite", choices=("all", *_SUITES), default="all")
    sp.set_defaults(func=cmd_props)
    return p


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc.kind}: {exc}", file=sys.stderr)
        return exc.code
    except NotSimpleError as exc:
        print(f"error: not_simple: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NonTerminationError as exc:
        print(f"error: nontermination: {exc}; last nonzero degree {exc.last_degree}", file=sys.stderr)
        return EXIT_NONTERMINATION
    except ValueError as exc:
        print(f"error: input: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
