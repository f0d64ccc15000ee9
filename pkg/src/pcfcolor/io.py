"""Text and JSON formats: edge lists, graph6, colorings, reports."""

from __future__ import annotations

import json
from pathlib import Path

import networkx as nx

from .errors import InvalidEdge
from .graph import Coloring, Graph, VerificationReport, build_graph


def parse_edge_list(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v``; ``#`` starts a comment."""
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if not rows:
        raise InvalidEdge("empty edge list: expected a header line 'n m'")
    try:
        n, m = (int(x) for x in rows[0])
        edges = [(int(u), int(v)) for u, v in rows[1:]]
    except ValueError as exc:
        raise InvalidEdge(f"malformed edge list: {exc}") from None
    if len(edges) != m:
        raise InvalidEdge(f"header announces {m} edges but {len(edges)} were given")
    return build_graph(edges, n)


def format_edge_list(g: Graph) -> str:
    edges = list(g.edges())
    lines = [f"{g.vertex_count} {len(edges)}"]
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    try:
        nxg = nx.from_graph6_bytes(s.encode("ascii"))
    except (nx.NetworkXError, ValueError) as exc:
        raise InvalidEdge(f"malformed graph6 string: {exc}") from None
    return from_networkx(nxg)


def to_graph6(g: Graph) -> str:
    return nx.to_graph6_bytes(to_networkx(g), header=False).decode("ascii").strip()


def to_networkx(g: Graph) -> nx.Graph:
    nxg = nx.Graph()
    nxg.add_nodes_from(range(g.vertex_count))
    nxg.add_edges_from(g.edges())
    return nxg


def from_networkx(nxg: nx.Graph) -> Graph:
    nodes = sorted(nxg.nodes())
    index = {v: i for i, v in enumerate(nodes)}
    return build_graph(((index[u], index[v]) for u, v in nxg.edges()), len(nodes))


def read_graph(path: str | Path, fmt: str = "edgelist") -> Graph:
    text = Path(path).read_text()
    if fmt == "edgelist":
        return parse_edge_list(text)
    if fmt == "graph6":
        return parse_graph6(text.splitlines()[0] if text.strip() else "")
    if fmt == "json":
        data = json.loads(text)
        return build_graph([tuple(e) for e in data["edges"]], data["n"])
    raise ValueError(f"unknown graph format {fmt!r}")


def coloring_to_json(c: Coloring) -> dict:
    return {"palette_size": c.palette_size, "colors": list(c.colors)}


def coloring_from_json(data: dict) -> Coloring:
    return Coloring(tuple(int(x) for x in data["colors"]), int(data["palette_size"]))


def report_to_json(report: VerificationReport) -> dict:
    return report.to_json()


def dump_json(data, path: str | Path | None = None) -> str:
    text = json.dumps(data, indent=2, sort_keys=False)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text
