"""Plain-text quiver files.

Grammar (one directive per line, ``#`` starts a comment, blank lines are
ignored)::

    quiver <name>
    node <id>
    arrow <id> <tail> <head>
    dim <node-id> <non-negative int>

The canonical serializer emits the directives in exactly that order; parse
errors carry line numbers.
"""

from __future__ import annotations

from .quiver import Quiver, build_quiver


class QuiverFileError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse(text: str, allow_cycles: bool = False) -> tuple[Quiver, tuple[int, ...]]:
    name = ""
    nodes: list[str] = []
    arrows: list[tuple[str, str, str]] = []
    dims: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        directive, args = parts[0], parts[1:]
        if directive == "quiver":
            if len(args) != 1:
                raise QuiverFileError(lineno, "quiver directive takes one name")
            name = args[0]
        elif directive == "node":
            if len(args) != 1:
                raise QuiverFileError(lineno, "node directive takes one identifier")
            if args[0] in nodes:
                raise QuiverFileError(lineno, f"duplicate node {args[0]!r}")
            nodes.append(args[0])
        elif directive == "arrow":
            if len(args) != 3:
                raise QuiverFileError(lineno, "arrow directive takes id, tail, head")
            if args[1] not in nodes or args[2] not in nodes:
                raise QuiverFileError(lineno, f"arrow {args[0]!r} references an undeclared node")
            arrows.append((args[0], args[1], args[2]))
        elif directive == "dim":
            if len(args) != 2:
                raise QuiverFileError(lineno, "dim directive takes node id and value")
            if args[0] not in nodes:
                raise QuiverFileError(lineno, f"dim for undeclared node {args[0]!r}")
            if args[0] in dims:
                raise QuiverFileError(lineno, f"duplicate dim for node {args[0]!r}")
            try:
                value = int(args[1])
            except ValueError:
                raise QuiverFileError(lineno, f"dimension {args[1]!r} is not an integer")
            if value < 0:
                raise QuiverFileError(lineno, "dimensions must be non-negative")
            dims[args[0]] = value
        else:
            raise QuiverFileError(lineno, f"unknown directive {directive!r}")
    if not nodes:
        raise QuiverFileError(0, "no nodes declared")
    missing = [x for x in nodes if x not in dims]
    if missing:
        raise QuiverFileError(0, f"missing dimension for node {missing[0]!r}")
    try:
        q = build_quiver(nodes, arrows, allow_cycles=allow_cycles, name=name)
    except ValueError as exc:
        raise QuiverFileError(0, str(exc))
    return q, tuple(dims[x] for x in nodes)


def parse_path(path: str, allow_cycles: bool = False):
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read(), allow_cycles=allow_cycles)


def serialize(q: Quiver, dims) -> str:
    lines = [f"quiver {q.name or 'unnamed'}"]
    lines += [f"node {x}" for x in q.nodes]
    lines += [f"arrow {a.name} {a.tail} {a.head}" for a in q.arrows]
    lines += [f"dim {x} {v}" for x, v in zip(q.nodes, dims)]
    return "\n".join(lines) + "\n"
