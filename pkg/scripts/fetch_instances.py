#!/usr/bin/env python3
"""Fetch the small benchmark instances into data/ as plain edge lists.

Karate ships with the repository (and regenerates from networkx);
Dolphins, Football, and Jazz are downloaded from their usual public
homes, converted to edge lists, and checked against the expected vertex
and edge counts before anything is written.

Usage: python scripts/fetch_instances.py [name ...]   (default: all)
"""

from __future__ import annotations

import gzip
import io
import sys
import tarfile
import urllib.request
import zipfile
from pathlib import Path

import networkx as nx

DATA_DIR = Path(__file__).resolve().parent.parent / "data"

# name -> (expected |V|, expected |E|, [(url, member, format), ...])
SOURCES = {
    "karate": (34, 78, []),
    "dolphins": (
        62,
        159,
        [
            ("https://websites.umich.edu/~mejn/netdata/dolphins.zip", "dolphins.gml", "gml"),
            ("http://konect.cc/files/download.tsv.dolphins.tar.bz2",
             "dolphins/out.dolphins", "konect"),
        ],
    ),
    "football": (
        115,
        613,
        [
            ("https://websites.umich.edu/~mejn/netdata/football.zip", "football.gml", "gml"),
        ],
    ),
    "jazz": (
        198,
        2742,
        [
            ("https://deim.urv.cat/~alexandre.arenas/data/xarxes/jazz.zip", "jazz.net", "pajek"),
            ("http://konect.cc/files/download.tsv.arenas-jazz.tar.bz2",
             "arenas-jazz/out.arenas-jazz", "konect"),
        ],
    ),
}


def _download(url: str) -> bytes:
    print(f"  fetching {url}")
    with urllib.request.urlopen(url, timeout=60) as resp:
        return resp.read()


def _extract(blob: bytes, member: str) -> bytes:
    if blob[:2] == b"PK":
        with zipfile.ZipFile(io.BytesIO(blob)) as zf:
            return zf.read(member)
    if blob[:2] == b"\x1f\x8b" or blob[:3] == b"BZh":
        with tarfile.open(fileobj=io.BytesIO(blob)) as tf:
            fh = tf.extractfile(member)
            assert fh is not None, member
            return fh.read()
    return blob


def _to_graph(raw: bytes, fmt: str) -> nx.Graph:
    if fmt == "gml":
        return nx.Graph(nx.read_gml(io.BytesIO(raw), label="id"))
    if fmt == "pajek":
        g = nx.Graph(nx.read_pajek(io.BytesIO(raw)))
        return nx.relabel_nodes(g, {v: int(v) for v in g.nodes})
    if fmt == "konect":
        g = nx.Graph()
        for line in raw.decode("utf-8", errors="replace").splitlines():
            line = line.strip()
            if not line or line.startswith("%"):
                continue
            u, v, *_ = line.split()
            g.add_edge(int(u), int(v))
        return g
    raise ValueError(f"unknown format {fmt!r}")


def _write_edge_list(g: nx.Graph, name: str, path: Path) -> tuple[int, int]:
    g.remove_edges_from(nx.selfloop_edges(g))
    ids = {v: i for i, v in enumerate(sorted(g.nodes))}
    edges = sorted((min(ids[u], ids[v]), max(ids[u], ids[v])) for u, v in g.edges)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# {name} network, {g.number_of_nodes()} vertices, {len(edges)} edges\n")
        for u, v in edges:
            fh.write(f"{u} {v}\n")
    return g.number_of_nodes(), len(edges)


def fetch(name: str) -> bool:
    expected_v, expected_e, sources = SOURCES[name]
    out = DATA_DIR / f"{name}.txt"
    if name == "karate":
        n, m = _write_edge_list(nx.karate_club_graph(), name, out)
    else:
        for url, member, fmt in sources:
            try:
                g = _to_graph(_extract(_download(url), member), fmt)
                n, m = _write_edge_list(g, name, out)
                break
            except Exception as exc:  # try the next mirror
                print(f"  failed: {exc}")
        else:
            print(f"{name}: all sources failed")
            return False
    if (n, m) != (expected_v, expected_e):
        out.unlink(missing_ok=True)
        print(f"{name}: got |V|={n} |E|={m}, expected |V|={expected_v} |E|={expected_e}; discarded")
        return False
    print(f"{name}: wrote {out} (|V|={n}, |E|={m})")
    return True


def main(argv: list[str]) -> int:
    names = argv or list(SOURCES)
    unknown = [n for n in names if n not in SOURCES]
    if unknown:
        print(f"unknown instances: {', '.join(unknown)}; know {', '.join(SOURCES)}")
        return 2
    DATA_DIR.mkdir(exist_ok=True)
    ok = all([fetch(n) for n in names])
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
