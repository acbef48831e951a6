"""Command-line front end.

Exit codes: 0 success, 1 a verification or refutation failed, 2 bad usage or input.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .book import BookEmbedding, embed_2tree_forests, embed_star_forests
from .construct import ConstructionError, draw_forests, draw_planar_2tree, draw_thickness
from .drawing import Drawing
from .graph import (
    Graph,
    KTreeBuild,
    NotAKTree,
    StarGadget,
    complete_split,
    edge,
    ktree_certify,
    parse_edge_key,
    qk_graph,
    random_ktree,
    star_lb_graph,
)
from .oracle import (
    exact_arboricity,
    exact_book_thickness,
    exact_star_arboricity,
    exact_thickness,
    inequality_chain_check,
)
from .svg import export_svg
from .verify import (
    MODES,
    PreconditionError,
    check_book,
    check_drawing_layers,
    check_good,
    refute_outerthickness,
    refute_star_arboricity,
    refute_thickness,
    validate_witness,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        print(json.dumps({"error": "usage", "message": message}), file=sys.stderr)
        sys.exit(2)


def _load(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise UsageError(f"no such file: {path}")
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}")


def _write(data, path: str | None) -> None:
    text = data if isinstance(data, str) else json.dumps(data, indent=1, sort_keys=True) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _graph(data: dict) -> Graph:
    try:
        return Graph.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"not a graph file: {exc}")


def _build(data: dict, k: int | None) -> KTreeBuild:
    """The k-tree build recorded in the file, or one certified from the bare graph."""
    if "additions" in data and "base" in data:
        try:
            b = KTreeBuild.from_json(data)
            b.realize()
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"bad k-tree build: {exc}")
        return b
    if k is None:
        raise UsageError("the input has no k-tree build; pass --k to certify the graph")
    try:
        return ktree_certify(_graph(data), k)
    except NotAKTree as exc:
        raise UsageError(str(exc))


def _artifact(data: dict):
    try:
        if "positions" in data:
            return Drawing.from_json(data)
        if "order" in data:
            return BookEmbedding.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed artifact: {exc}")
    raise UsageError("input is neither a drawing nor a book embedding")


# ---------------------------------------------------------------- commands

def cmd_gen(a) -> int:
    if a.what == "ktree":
        if a.k is None or a.n is None:
            raise UsageError("gen ktree needs --k and --n")
        out = random_ktree(a.k, a.n, a.seed).to_json()
    elif a.what == "split":
        if a.k is None or a.s is None:
            raise UsageError("gen split needs --k and --s")
        out = complete_split(a.k, a.s).to_json()
    elif a.what == "qk":
        if a.k is None:
            raise UsageError("gen qk needs --k")
        out = qk_graph(a.k).to_json()
    else:
        if a.k is None:
            raise UsageError("gen star-lb needs --k")
        out = star_lb_graph(a.k).to_json()
    _write(out, a.output)
    return 0


def cmd_embed(a) -> int:
    b = _build(_load(a.input), a.k)
    try:
        emb = embed_star_forests(b) if a.what == "stars" else embed_2tree_forests(b)
    except ValueError as exc:
        raise UsageError(str(exc))
    _write(emb.to_json(), a.output)
    return 0


def cmd_draw(a) -> int:
    b = _build(_load(a.input), a.k)
    fn = {"planar2": draw_planar_2tree, "forests": draw_forests, "thickness": draw_thickness}[a.what]
    try:
        d = fn(b)
    except ConstructionError as exc:
        print(json.dumps({"error": "construction", "message": str(exc)}), file=sys.stderr)
        return 1
    except ValueError as exc:
        raise UsageError(str(exc))
    _write(d.to_json(), a.output)
    return 0


def cmd_verify(a) -> int:
    data = _load(a.input)
    art = _artifact(data)
    if a.what == "book" and not isinstance(art, BookEmbedding):
        raise UsageError("verify book needs a book embedding")
    if a.what in ("drawing", "good") and not isinstance(art, Drawing):
        raise UsageError(f"verify {a.what} needs a drawing")
    if a.what == "good":
        if a.graph is None:
            raise UsageError("verify good needs -g with the k-tree build")
        rep = check_good(art, _build(_load(a.graph), a.k))
    else:
        if a.graph is not None:
            g = _graph(_load(a.graph))
        else:
            edges = art.page_of if isinstance(art, BookEmbedding) else art.colour_of
            n = 1 + max((max(e) for e in edges), default=-1)
            n = max(n, len(art.order) if isinstance(art, BookEmbedding) else 1 + max(art.pos, default=-1))
            g = Graph(n, frozenset(edges))
        check = check_book if a.what == "book" else check_drawing_layers
        try:
            rep = check(art, g, a.mode)
        except ValueError as exc:
            raise UsageError(str(exc))
    _write(rep.to_json(), None)
    return 0 if rep.passed else 1


def cmd_oracle(a) -> int:
    g = _graph(_load(a.input))
    fn = {
        "bt": exact_book_thickness,
        "tt": exact_thickness,
        "arb": exact_arboricity,
        "sa": exact_star_arboricity,
    }.get(a.what)
    try:
        if fn is None:
            rep = inequality_chain_check(g)
            out = dict(rep.to_json(), parameters=rep.parameters)
            _write(out, a.output)
            return 0 if rep.passed else 1
        res = fn(g)
    except ValueError as exc:
        raise UsageError(str(exc))
    if a.json or a.output:
        _write(res.to_json(), a.output)
    else:
        print(res.value)
    return 0


def _random_colouring(g: Graph, colours: int, seed) -> dict:
    rng = random.Random(seed)
    return {e: rng.randrange(colours) for e in sorted(g.edges)}


def cmd_refute(a) -> int:
    if a.k is None:
        raise UsageError("refute needs --k")
    if a.what == "sa":
        gadget = star_lb_graph(a.k) if a.graph is None else StarGadget.from_json(_load(a.graph))
        g = gadget.graph
        ncol = a.k
    else:
        if a.s is None or a.ell is None:
            raise UsageError(f"refute {a.what} needs --s and --ell")
        g = complete_split(a.k, a.s).graph
        ncol = a.ell
    if a.colouring is not None:
        raw = _load(a.colouring).get("colours", {})
        colouring = {parse_edge_key(key): c for key, c in raw.items()}
    else:
        colouring = _random_colouring(g, ncol, a.seed)
    try:
        if a.what == "tt":
            w = refute_thickness(colouring, a.k, a.s, a.ell)
        elif a.what == "ot":
            w = refute_outerthickness(colouring, a.k, a.s, a.ell)
        else:
            w = refute_star_arboricity(colouring, gadget)
    except PreconditionError as exc:
        raise UsageError(str(exc))
    except RuntimeError as exc:
        print(json.dumps({"error": "refutation", "message": str(exc)}), file=sys.stderr)
        return 1
    ok = validate_witness(w, g, {edge(*e): c for e, c in colouring.items()})
    _write({"witness": w.to_json(), "valid": ok}, a.output)
    return 0 if ok else 1


def cmd_export_svg(a) -> int:
    art = _artifact(_load(a.input))
    _write(export_svg(art, a.scale), a.output)
    return 0


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="twthick", description="Book embeddings and drawings of k-trees.")
    p.add_argument("--seed", type=int, default=0, help="seed for every random choice")
    sub = p.add_subparsers(dest="command", required=True)

    def io(sp, need_input=True):
        if need_input:
            sp.add_argument("-i", "--input", required=True)
        sp.add_argument("-o", "--output")
        sp.add_argument("--seed", type=int, default=argparse.SUPPRESS)

    g = sub.add_parser("gen", help="generate a graph")
    g.add_argument("what", choices=["ktree", "split", "qk", "star-lb"])
    g.add_argument("--k", type=int)
    g.add_argument("--n", type=int)
    g.add_argument("--s", type=int)
    io(g, need_input=False)
    g.set_defaults(func=cmd_gen)

    e = sub.add_parser("embed", help="book embedding of a k-tree")
    e.add_argument("what", choices=["stars", "forests2"])
    e.add_argument("--k", type=int)
    io(e)
    e.set_defaults(func=cmd_embed)

    d = sub.add_parser("draw", help="geometric drawing of a k-tree")
    d.add_argument("what", choices=["planar2", "forests", "thickness"])
    d.add_argument("--k", type=int)
    io(d)
    d.set_defaults(func=cmd_draw)

    v = sub.add_parser("verify", help="check an embedding or drawing")
    v.add_argument("what", choices=["book", "drawing", "good"])
    v.add_argument("-g", "--graph", help="graph or build the artifact must cover")
    v.add_argument("--mode", choices=MODES, default="noncrossing")
    v.add_argument("--k", type=int)
    io(v)
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="exact parameter of a small graph")
    o.add_argument("what", choices=["bt", "tt", "arb", "sa", "chain"])
    o.add_argument("--json", action="store_true", help="print the full result with witness and search record")
    io(o)
    o.set_defaults(func=cmd_oracle)

    r = sub.add_parser("refute", help="find a monochromatic obstruction in a colouring")
    r.add_argument("what", choices=["tt", "ot", "sa"])
    r.add_argument("--k", type=int)
    r.add_argument("--s", type=int)
    r.add_argument("--ell", type=int)
    r.add_argument("-c", "--colouring", help="JSON with a 'colours' map; random if omitted")
    r.add_argument("-g", "--graph", help="star gadget file for 'sa'")
    io(r, need_input=False)
    r.set_defaults(func=cmd_refute)

    x = sub.add_parser("export-svg", help="render a drawing or book embedding")
    x.add_argument("--scale", type=int, default=400)
    io(x)
    x.set_defaults(func=cmd_export_svg)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return a.func(a)
    except UsageError as exc:
        print(json.dumps({"error": "usage", "message": str(exc)}), file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
