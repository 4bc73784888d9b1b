"""Command-line front end.

Exit codes: 0 success, 1 domain/parse errors, 2 usage errors.  Most
subcommands print human-readable text and switch to canonical JSON with
--json; `pofin eval` always prints canonical JSON (it is the canonical
form), `pofin canon` always prints the canonical expression text.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import jsonio
from .boxes import is_empty, member, normalize, refine
from .counterexamples import fspace_demo
from .errors import WorkbenchError
from .game import GameSession, new_game
from .maps import classify, compose
from .parsing import parse_map, parse_set, parse_subboxes
from .schemes import SchemeTree, build_injection, repair, validate, verify_star

DEFAULT_HORIZON = int(os.environ.get("CKOMEGA_HORIZON", "512"))


def _print(args, data, text: str) -> None:
    if getattr(args, "json", False):
        print(jsonio.dumps(data))
    else:
        print(text)


def _bool_text(value: bool) -> str:
    return "true" if value else "false"


# ----------------------------------------------------------------------
# pofin


def cmd_pofin_eval(args):
    s = parse_set(args.expr)
    print(jsonio.dumps(s.to_json()))


def cmd_pofin_canon(args):
    print(parse_set(args.expr).to_expr())


def cmd_pofin_rel(args):
    a = parse_set(args.left)
    if args.rel == "empty":
        result = a.is_almost_empty
    else:
        if args.right is None:
            raise WorkbenchError(f"relation {args.rel!r} needs two expressions")
        b = parse_set(args.right)
        result = {
            "subset": a.almost_subset,
            "eq": a.almost_equal,
            "disjoint": a.almost_disjoint,
        }[args.rel](b)
    _print(args, {"result": result}, _bool_text(result))


# ----------------------------------------------------------------------
# map


def cmd_map_apply(args):
    f = parse_map(args.map)
    value = f.apply(args.n)
    _print(args, {"value": value}, str(value))


def cmd_map_image(args):
    img = parse_map(args.map).image(parse_set(args.set))
    _print(args, img.to_json(), img.to_expr())


def cmd_map_compose(args):
    h = compose(parse_map(args.outer), parse_map(args.inner))
    _print(args, h.to_json(), h.to_expr())


def cmd_map_classify(args):
    flags = classify(parse_map(args.map))
    _print(
        args,
        flags.to_json(),
        f"injective: {_bool_text(flags.injective)}, "
        f"finite-to-one: {_bool_text(flags.finite_to_one)}",
    )


# ----------------------------------------------------------------------
# box


def cmd_box_normal(args):
    box = normalize(parse_subboxes(args.box))
    _print(args, box.to_json(), box.to_expr())


def cmd_box_empty(args):
    box = normalize(parse_subboxes(args.box))
    empty, witness = is_empty(box)
    if empty:
        _print(args, {"empty": True, "witness": None}, "empty")
    else:
        _print(
            args,
            {"empty": False, "witness": witness.to_json()},
            f"non-empty; witness: {witness.to_expr()}",
        )


def cmd_box_member(args):
    ok = member(parse_map(args.map), normalize(parse_subboxes(args.box)))
    _print(args, {"member": ok}, _bool_text(ok))


def cmd_box_refine(args):
    outer = normalize(parse_subboxes(args.box))
    extra = parse_subboxes(args.extra) if args.extra else []
    fine, cert = refine(outer, extra)
    _print(
        args,
        {"box": fine.to_json(), "cert": cert.to_json()},
        f"{fine.to_expr()}\ncert: {list(cert.assignment)}",
    )


# ----------------------------------------------------------------------
# scheme


def _load_tree(path: str) -> SchemeTree:
    with open(path, "r", encoding="utf-8") as fh:
        return SchemeTree.from_json(jsonio.loads(fh.read()))


def cmd_scheme_validate(args):
    report = validate(_load_tree(args.tree))
    _print(args, {"violations": report}, "valid" if not report else jsonio.pretty(report))
    return 0 if not report else 1


def cmd_scheme_repair(args):
    fixed = repair(_load_tree(args.tree))
    out = jsonio.dumps(fixed.to_json())
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out + "\n")
    print(out)


def cmd_scheme_build(args):
    phi = build_injection(_load_tree(args.tree))
    prefix = phi.prefix(args.upto)
    _print(args, {"prefix": prefix}, " ".join(map(str, prefix)))


def cmd_scheme_verify(args):
    tree = _load_tree(args.tree)
    phi = build_injection(tree)
    phi.apply(max(args.horizon - 1, 0))
    ok = verify_star(tree, phi, args.horizon)
    _print(args, {"holds": ok, "horizon": args.horizon}, _bool_text(ok))
    return 0 if ok else 1


# ----------------------------------------------------------------------
# game


def _load_session(path: str) -> GameSession:
    with open(path, "r", encoding="utf-8") as fh:
        state = jsonio.loads(fh.read())
    log = [
        {"extra": h["extra"], "point": h["point"]}
        for h in state["history"]
        if h["player"] == "E"
    ]
    session = GameSession.replay(state["mode"], log)
    if state["status"] == "abandoned":
        session.abandon()
    return session


def _save_session(path: str, session: GameSession) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(jsonio.dumps(session.to_json()) + "\n")


def cmd_game_new(args):
    session = new_game(args.mode)
    _save_session(args.state, session)
    print(jsonio.dumps(session.to_json()))


def cmd_game_move(args):
    session = _load_session(args.state)
    extra = parse_subboxes(args.extra) if args.extra else []
    point = parse_map(args.point) if args.point else None
    session.play_round(extra, point)
    _save_session(args.state, session)
    print(jsonio.dumps(session.to_json()))


def cmd_game_play(args):
    with open(args.script, "r", encoding="utf-8") as fh:
        entries = [jsonio.loads(line) for line in fh if line.strip()]
    session = GameSession.replay(args.mode, entries)
    if args.state:
        _save_session(args.state, session)
    print(jsonio.dumps(session.to_json()))


def cmd_game_witness(args):
    session = _load_session(args.state)
    prefix = session.witness_prefix(args.k)
    _print(args, {"prefix": prefix}, " ".join(map(str, prefix)))


# ----------------------------------------------------------------------
# fspace / serve


def cmd_fspace_demo(args):
    report = fspace_demo(
        modulus=args.modulus,
        bound=args.bound,
        levels=args.levels,
        union_bound=args.union_bound,
    )
    print(jsonio.dumps(report))


def cmd_serve(args):
    from .service import serve

    serve(port=args.port, host=args.host, log_dir=args.log_dir)


# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="ckomega", description=__doc__)
    groups = top.add_subparsers(dest="group", required=True)

    def sub(group, name, fn, **kwargs):
        p = group.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        p.add_argument("--json", action="store_true", help="print canonical JSON")
        return p

    pofin = groups.add_parser("pofin", help="set algebra").add_subparsers(
        dest="cmd", required=True
    )
    p = sub(pofin, "eval", cmd_pofin_eval, help="canonical JSON of a set expression")
    p.add_argument("expr")
    p = sub(pofin, "canon", cmd_pofin_canon, help="canonical expression text")
    p.add_argument("expr")
    p = sub(pofin, "rel", cmd_pofin_rel, help="almost-relations between sets")
    p.add_argument("rel", choices=["subset", "eq", "disjoint", "empty"])
    p.add_argument("left")
    p.add_argument("right", nargs="?")

    mp = groups.add_parser("map", help="piecewise-affine maps").add_subparsers(
        dest="cmd", required=True
    )
    p = sub(mp, "apply", cmd_map_apply)
    p.add_argument("map")
    p.add_argument("n", type=int)
    p = sub(mp, "image", cmd_map_image)
    p.add_argument("map")
    p.add_argument("set")
    p = sub(mp, "compose", cmd_map_compose)
    p.add_argument("outer")
    p.add_argument("inner")
    p = sub(mp, "classify", cmd_map_classify)
    p.add_argument("map")

    bx = groups.add_parser("box", help="compact-open boxes").add_subparsers(
        dest="cmd", required=True
    )
    p = sub(bx, "normal", cmd_box_normal)
    p.add_argument("box")
    p = sub(bx, "empty", cmd_box_empty)
    p.add_argument("box")
    p = sub(bx, "member", cmd_box_member)
    p.add_argument("map")
    p.add_argument("box")
    p = sub(bx, "refine", cmd_box_refine)
    p.add_argument("box")
    p.add_argument("--extra", default="")

    sc = groups.add_parser("scheme", help="scheme trees").add_subparsers(
        dest="cmd", required=True
    )
    p = sub(sc, "validate", cmd_scheme_validate)
    p.add_argument("tree")
    p = sub(sc, "repair", cmd_scheme_repair)
    p.add_argument("tree")
    p.add_argument("-o", "--out")
    p = sub(sc, "build", cmd_scheme_build)
    p.add_argument("tree")
    p.add_argument("--upto", type=int, default=16)
    p = sub(sc, "verify", cmd_scheme_verify)
    p.add_argument("tree")
    p.add_argument("--horizon", type=int, default=DEFAULT_HORIZON)

    gm = groups.add_parser("game", help="Choquet game sessions").add_subparsers(
        dest="cmd", required=True
    )
    p = sub(gm, "new", cmd_game_new)
    p.add_argument("--mode", choices=["plain", "strong"], default="plain")
    p.add_argument("--state", required=True)
    p = sub(gm, "move", cmd_game_move)
    p.add_argument("--state", required=True)
    p.add_argument("--extra", default="")
    p.add_argument("--point")
    p = sub(gm, "play", cmd_game_play)
    p.add_argument("--script", required=True)
    p.add_argument("--mode", choices=["plain", "strong"], default="plain")
    p.add_argument("--state")
    p = sub(gm, "witness", cmd_game_witness)
    p.add_argument("--state", required=True)
    p.add_argument("-k", type=int, required=True)

    fs = groups.add_parser("fspace", help="non-F-space demonstration").add_subparsers(
        dest="cmd", required=True
    )
    p = sub(fs, "demo", cmd_fspace_demo)
    p.add_argument("--modulus", type=int, default=64)
    p.add_argument("--bound", type=int, default=16)
    p.add_argument("--levels", type=int, default=8)
    p.add_argument("--union-bound", type=int, default=32, dest="union_bound")

    p = groups.add_parser("serve", help="run the HTTP session service")
    p.set_defaults(fn=cmd_serve)
    p.add_argument("--port", type=int, required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--log-dir", default=None)

    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        rc = args.fn(args)
    except WorkbenchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return rc if isinstance(rc, int) else 0


if __name__ == "__main__":
    sys.exit(main())
