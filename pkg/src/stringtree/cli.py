"""Command-line front end.

    stringtree encode  -i tree.paren --traversal bfs     # -> YxyYXyXYxyYxXxxX
    stringtree decode  -i tree.st --out-format paren
    stringtree validate -i tree.st
    stringtree dist a.st b.st
    stringtree rewrite -i tree.st --rule 's/x*X/X/g'
    stringtree search  -i tree.st --needle YxX            # DFS strings
    stringtree pack -i tree.st -o tree.strt

Exit status: 0 on success, 1 for invalid input data, 2 for usage errors.
"""
from __future__ import annotations

import argparse
import functools
import os
import sys
from dataclasses import dataclass

from . import binary, codec, strops, tree
from .codec import Traversal, TreeString
from .errors import InvalidString, StringTreeError, TraversalMismatch

TREE_FORMATS = ("paren", "edges", "string", "packed")


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    command: str
    inputs: list[str]
    output: str = "-"
    in_format: str | None = None
    out_format: str | None = None
    traversal: Traversal | None = None
    n: int | None = None
    seed: int = 0
    rule: str | None = None
    global_: bool = False
    needle: str | None = None
    position: int | None = None
    scion: str | None = None
    max_n: int | None = None


# -- I/O helpers -------------------------------------------------------------------------

class _IO:
    def __init__(self, config, stdin, stdout):
        self.config = config
        self.stdin = stdin
        self.stdout = stdout

    def read_bytes(self, path) -> bytes:
        if path == "-":
            return getattr(self.stdin, "buffer", self.stdin).read()
        with open(path, "rb") as fh:
            return fh.read()

    def read_text(self, path) -> str:
        if path == "-":
            return self.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()

    def write_text(self, text: str):
        if not text.endswith("\n"):
            text += "\n"
        if self.config.output == "-":
            self.stdout.write(text)
            self.stdout.flush()
        else:
            with open(self.config.output, "w", encoding="utf-8") as fh:
                fh.write(text)

    def write_bytes(self, data: bytes):
        if self.config.output == "-":
            self.stdout.flush()
            getattr(self.stdout, "buffer", self.stdout).write(data)
            getattr(self.stdout, "buffer", self.stdout).flush()
        else:
            with open(self.config.output, "wb") as fh:
                fh.write(data)


def _split_tag(text: str) -> tuple[Traversal | None, str]:
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if len(lines) >= 2 and lines[0] in ("B", "D"):
        return (Traversal.BFS if lines[0] == "B" else Traversal.DFS), "".join(lines[1:])
    return None, "".join(lines)


def _load_string(io: _IO, path: str, fmt: str, default: Traversal = Traversal.BFS) -> TreeString:
    config = io.config
    if fmt == "packed":
        s = binary.loads(io.read_bytes(path))
        if config.traversal is not None and config.traversal is not s.traversal:
            s = TreeString(s.text, config.traversal)
        return s
    if fmt in ("paren", "edges"):
        return codec.encode(_parse_tree(io.read_text(path), fmt), config.traversal or default)
    tag, text = _split_tag(io.read_text(path))
    return TreeString(text, config.traversal or tag or default)


def _parse_tree(text: str, fmt: str) -> tree.RootedOrderedTree:
    if fmt == "paren":
        return tree.from_parentheses(text)
    return tree.parse_edge_list(text)


def _load_tree(io: _IO, path: str, fmt: str) -> tree.RootedOrderedTree:
    if fmt in ("paren", "edges"):
        return _parse_tree(io.read_text(path), fmt)
    return codec.decode(_load_string(io, path, fmt))


def _emit_tree(io: _IO, t: tree.RootedOrderedTree, fmt: str):
    traversal = io.config.traversal or Traversal.BFS
    if fmt == "paren":
        io.write_text(tree.to_parentheses(t))
    elif fmt == "edges":
        io.write_text(tree.to_edge_list(t))
    elif fmt == "string":
        io.write_text(codec.encode(t, traversal).text)
    elif fmt == "packed":
        io.write_bytes(binary.dumps(codec.encode(t, traversal)))
    else:
        raise UsageError(f"unknown output format {fmt!r}")


def _emit_string(io: _IO, s: TreeString, fmt: str):
    if fmt == "packed":
        io.write_bytes(binary.dumps(s))
    elif fmt == "string":
        io.write_text(s.text)
    else:
        _emit_tree(io, codec.decode(s), fmt)


# -- commands ---------------------------------------------------------------------------

def _input(config) -> str:
    return config.inputs[0] if config.inputs else "-"


def _require_dfs(config):
    if config.traversal is Traversal.BFS:
        raise UsageError(f"{config.command} works on DFS strings; drop --traversal bfs")


def cmd_encode(io, config):
    t = _load_tree(io, _input(config), config.in_format or "paren")
    _emit_tree(io, t, config.out_format or "string")


def cmd_decode(io, config):
    t = _load_tree(io, _input(config), config.in_format or "string")
    _emit_tree(io, t, config.out_format or "paren")


def cmd_validate(io, config):
    if config.in_format == "packed":
        binary.loads(io.read_bytes(_input(config)))
        io.write_text("valid")
        return
    tag, text = _split_tag(io.read_text(_input(config)))
    report = codec.validate(text, config.traversal or tag or Traversal.BFS)
    if not report.valid:
        raise InvalidString(report)
    io.write_text("valid")


def cmd_canon(io, config):
    s = _load_string(io, _input(config), config.in_format or "string")
    _emit_string(io, strops.canonicalize(s), config.out_format or "string")


def cmd_dist(io, config):
    if len(config.inputs) != 2:
        raise UsageError("dist needs exactly two input files")
    a, b = (_load_string(io, path, config.in_format or "string") for path in config.inputs)
    io.write_text(str(strops.edit_distance(a, b)))


def cmd_rewrite(io, config):
    if not config.rule:
        raise UsageError("rewrite needs --rule 's/PATTERN/REPLACEMENT/[g]'")
    try:
        rule, mode = strops.RewriteRule.parse(config.rule)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if config.global_:
        mode = strops.RewriteMode.GLOBAL
    s = _load_string(io, _input(config), config.in_format or "string")
    _emit_string(io, strops.rewrite(s, rule, mode), config.out_format or "string")


def cmd_search(io, config):
    _require_dfs(config)
    if not config.needle:
        raise UsageError("search needs --needle")
    hay = _load_string(io, _input(config), config.in_format or "string", Traversal.DFS)
    if hay.traversal is not Traversal.DFS:
        raise TraversalMismatch("search needs a DFS haystack")
    hits = strops.find_subtrees(hay, TreeString(config.needle, Traversal.DFS))
    io.write_text("\n".join(map(str, hits)))


def cmd_graft(io, config):
    _require_dfs(config)
    if config.position is None or not config.scion:
        raise UsageError("graft needs --position and --scion")
    host = _load_string(io, _input(config), config.in_format or "string", Traversal.DFS)
    if host.traversal is not Traversal.DFS:
        raise TraversalMismatch("graft needs a DFS host")
    out = strops.graft(host, config.position, TreeString(config.scion, Traversal.DFS))
    _emit_string(io, out, config.out_format or "string")


def cmd_pack(io, config):
    s = _load_string(io, _input(config), config.in_format or "string")
    io.write_bytes(binary.dumps(s))


def cmd_unpack(io, config):
    s = binary.loads(io.read_bytes(_input(config)))
    _emit_string(io, s, config.out_format or "string")


def cmd_gen(io, config):
    if config.n is None:
        raise UsageError("gen needs -n")
    _emit_tree(io, tree.random_ordered_tree(config.n, config.seed), config.out_format or "paren")


def cmd_enum(io, config):
    if config.n is None:
        raise UsageError("enum needs -n")
    strings = strops.enumerate_valid(config.n, config.traversal or Traversal.BFS, max_n=config.max_n or 20)
    io.write_text("\n".join(s.text for s in strings))


def cmd_count_canon(io, config):
    if config.n is None:
        raise UsageError("count-canon needs -n")
    io.write_text(str(strops.count_canonical(config.n, max_n=config.max_n or 16)))


def cmd_stats(io, config):
    t = _load_tree(io, _input(config), config.in_format or "string")
    io.write_text(f"nodes={t.node_count} depth={t.depth()} leaves={t.leaf_count()}")


COMMANDS = {
    "encode": cmd_encode,
    "decode": cmd_decode,
    "validate": cmd_validate,
    "canon": cmd_canon,
    "dist": cmd_dist,
    "rewrite": cmd_rewrite,
    "search": cmd_search,
    "graft": cmd_graft,
    "pack": cmd_pack,
    "unpack": cmd_unpack,
    "gen": cmd_gen,
    "enum": cmd_enum,
    "count-canon": cmd_count_canon,
    "stats": cmd_stats,
}


# -- argument parsing ---------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stringtree", description="Two-bit-per-node tree strings.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, help, inputs=True, out=True, extra=()):
        p = sub.add_parser(name, help=help)
        if inputs:
            p.add_argument("-i", "--in", dest="inputs", action="append", default=[], metavar="PATH",
                           help="input path, '-' for stdin (default)")
            p.add_argument("--in-format", choices=TREE_FORMATS)
        if out:
            p.add_argument("-o", "--out", dest="output", default="-", metavar="PATH")
            p.add_argument("--out-format", choices=TREE_FORMATS)
        p.add_argument("--traversal", choices=[t.value for t in Traversal])
        for flag in extra:
            flag(p)
        return p

    n_flag = lambda p: p.add_argument("-n", type=int, required=True)
    max_n = lambda p: p.add_argument("--max-n", type=int)

    add("encode", "tree text to letter string")
    add("decode", "letter string to tree text")
    add("validate", "check a letter string", out=False)
    add("canon", "canonical form of the unordered tree")
    dist = add("dist", "Levenshtein distance between two strings", inputs=False, out=False)
    dist.add_argument("inputs", nargs=2, metavar="FILE")
    dist.add_argument("--in-format", choices=TREE_FORMATS)
    add("rewrite", "regex substitution on the letters", extra=[
        lambda p: p.add_argument("--rule", required=True, help="s/PATTERN/REPLACEMENT/[g]"),
        lambda p: p.add_argument("--global", dest="global_", action="store_true"),
    ])
    add("search", "positions of a subtree (DFS)", extra=[
        lambda p: p.add_argument("--needle", required=True),
    ])
    add("graft", "replace a leaf with a tree (DFS)", extra=[
        lambda p: p.add_argument("--position", type=int, required=True),
        lambda p: p.add_argument("--scion", required=True),
    ])
    add("pack", "letter string to packed binary")
    add("unpack", "packed binary to letter string")
    add("gen", "uniform random ordered tree", inputs=False, extra=[
        n_flag, lambda p: p.add_argument("--seed", type=int, default=0),
    ])
    add("enum", "every valid string of length n", inputs=False, extra=[n_flag, max_n])
    add("count-canon", "number of unordered rooted trees with n nodes", inputs=False, out=False,
        extra=[n_flag, max_n])
    add("stats", "node count, depth and leaf count", out=False)
    return parser


def parse_config(argv=None) -> CliConfig:
    ns = build_parser().parse_args(argv)
    fields = vars(ns)
    traversal = fields.pop("traversal", None)
    return CliConfig(
        command=fields.pop("command"),
        inputs=fields.pop("inputs", None) or [],
        traversal=Traversal(traversal) if traversal else None,
        **fields,
    )


def _diagnostic(stderr, message: str):
    color = hasattr(stderr, "isatty") and stderr.isatty() and "NO_COLOR" not in os.environ
    prefix = "\033[31merror:\033[0m" if color else "error:"
    stderr.write(f"{prefix} {message}\n")


def run(config: CliConfig, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    if config.inputs and len(config.inputs) > 1 and config.command != "dist":
        _diagnostic(stderr, f"{config.command} takes a single input")
        return 2
    try:
        COMMANDS[config.command](_IO(config, stdin, stdout), config)
    except UsageError as exc:
        _diagnostic(stderr, str(exc))
        return 2
    except BrokenPipeError:
        raise
    except OSError as exc:
        _diagnostic(stderr, str(exc))
        return 2
    except InvalidString as exc:
        _diagnostic(stderr, str(exc.report))
        return 1
    except StringTreeError as exc:
        _diagnostic(stderr, str(exc))
        return 1
    return 0


def main(argv=None) -> int:
    config = parse_config(argv)
    try:
        code = run(config)
        sys.stdout.flush()
    except BrokenPipeError:
        # Reader went away (e.g. `| head`); stay quiet like other filters.
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 1
    return code


if __name__ == "__main__":
    sys.exit(main())
