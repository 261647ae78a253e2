"""File formats: graph/labeling JSON and a small DOT dialect.

Graph JSON:     {"n": 4, "edges": [[1, 2], [2, 3]]}
Labeling JSON:  {"l": 4, "labels": {"1": 2, "2": 4}}
DOT export:     one node line per vertex, v3 [label="3:7"] when labeled
                (v3 [label="3"] otherwise), and edge lines u -- v carrying
                weight=<sum> once both endpoints are labeled.

The DOT parser only promises to read what the exporter writes; round trips
preserve vertex count, edge set, and any labels present.  A parsed
labeling's pool size is the largest label seen, since DOT has nowhere to
store the pool.
"""

from __future__ import annotations

import json
import re
import sys
from typing import TextIO

from .graph import Graph, InvalidGraphError, Labeling


def load_json(path: str) -> dict:
    """Read a JSON document from a file path, or stdin when path is '-'."""
    if path == "-":
        return json.load(sys.stdin)
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def load_graph(path: str) -> Graph:
    return Graph.from_json(load_json(path))


def load_labeling(path: str) -> Labeling:
    return Labeling.from_json(load_json(path))


def dump_json(data: dict, out: TextIO | str | None = None) -> None:
    """Write data as indented JSON to a path, a handle, or standard output."""
    if isinstance(out, str):
        with open(out, "w", encoding="utf-8") as fh:
            json.dump(data, fh, indent=2, sort_keys=False)
            fh.write("\n")
        return
    fh = out or sys.stdout
    json.dump(data, fh, indent=2, sort_keys=False)
    fh.write("\n")


# ============================================================
# DOT
# ============================================================


def graph_to_dot(g: Graph, phi: Labeling | None = None, name: str = "G") -> str:
    """Render the graph (and labeling, when given) as Graphviz DOT text."""
    lines = [f"graph {name} {{"]
    asg = phi.assignment if phi is not None else {}
    for v in g.vertices():
        a = asg.get(v)
        if a is None:
            lines.append(f'  v{v} [label="{v}"];')
        else:
            lines.append(f'  v{v} [label="{v}:{a}"];')
    for u, v in g.edges:
        au, av = asg.get(u), asg.get(v)
        if au is not None and av is not None:
            lines.append(f"  v{u} -- v{v} [weight={au + av}];")
        else:
            lines.append(f"  v{u} -- v{v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


_NODE_RE = re.compile(r'^v(\d+)\s*\[label="(\d+)(?::(\d+))?"\]$')
_EDGE_RE = re.compile(r"^v(\d+)\s*--\s*v(\d+)(?:\s*\[weight=(\d+)\])?$")


def parse_dot(text: str) -> tuple[Graph, Labeling | None]:
    """Parse the exporter's DOT dialect back into a graph and maybe a labeling."""
    labels: dict[int, int] = {}
    vertices: set[int] = set()
    edges: list[tuple[int, int]] = []
    for raw in text.splitlines():
        line = raw.strip().rstrip(";").strip()
        if not line or line.startswith("graph") or line == "}":
            continue
        m = _NODE_RE.match(line)
        if m:
            v = int(m.group(1))
            vertices.add(v)
            if m.group(3) is not None:
                labels[v] = int(m.group(3))
            continue
        m = _EDGE_RE.match(line)
        if m:
            u, v = int(m.group(1)), int(m.group(2))
            vertices.add(u)
            vertices.add(v)
            edges.append((u, v))
            continue
        raise InvalidGraphError(f"cannot parse DOT line: {raw!r}")
    if not vertices:
        raise InvalidGraphError("DOT text contains no vertices")
    g = Graph(max(vertices), edges)
    phi = Labeling(max(labels.values()), labels) if labels else None
    return g, phi
