"""Catalog of all small graphs, one representative per isomorphism class.

The catalog (every graph on up to 9 vertices) drives the exhaustive
cross-checks in the test suite.  It is generated once by vertex
augmentation -- every n-vertex graph arises from some (n-1)-vertex graph
by attaching a new vertex to a neighborhood subset -- with canonical-form
deduplication, and shipped as a gzipped graph6 file so tests do not pay
the generation cost.

Per-size class counts, used both as a generation self-check and as the
fixture integrity test:

    n      1  2  3   4   5    6     7      8       9
    count  1  2  4  11  34  156  1044  12346  274668
"""

from __future__ import annotations

import gzip
import sys
from importlib import resources
from typing import Iterator

from .errors import InputError
from .graphs import Graph, canonical_cert_masks

CATALOG_MAX_N = 9

CLASS_COUNTS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044, 8: 12346, 9: 274668}

_DATA_FILE = "graphs_le9.g6.gz"


# ---------------------------------------------------------------------------
# graph6 encoding (undirected, up to 62 vertices is all we need)
# ---------------------------------------------------------------------------


def graph6_encode(n: int, masks: list[int]) -> str:
    if not 0 <= n <= 62:
        raise InputError(f"graph6 encoder limited to 62 vertices, got {n}")
    out = [chr(n + 63)]
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(masks[i] >> j & 1)
    while len(bits) % 6:
        bits.append(0)
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = val << 1 | b
        out.append(chr(val + 63))
    return "".join(out)


def graph6_decode(s: str) -> tuple[int, list[int]]:
    if not s:
        raise InputError("empty graph6 string")
    n = ord(s[0]) - 63
    if not 0 <= n <= 62:
        raise InputError(f"unsupported graph6 header in {s!r}")
    need = (n * (n - 1) // 2 + 5) // 6
    if len(s) != 1 + need:
        raise InputError(f"graph6 string {s!r} has wrong length for n={n}")
    bits = []
    for ch in s[1:]:
        val = ord(ch) - 63
        if not 0 <= val < 64:
            raise InputError(f"bad graph6 character {ch!r}")
        for k in range(5, -1, -1):
            bits.append(val >> k & 1)
    masks = [0] * n
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if bits[pos]:
                masks[i] |= 1 << j
                masks[j] |= 1 << i
            pos += 1
    return n, masks


def graph_from_graph6(s: str) -> Graph:
    n, masks = graph6_decode(s)
    g = Graph(str(i) for i in range(n))
    for i in range(n):
        for j in range(i + 1, n):
            if masks[i] >> j & 1:
                g.add_edge(str(i), str(j))
    return g


# ---------------------------------------------------------------------------
# Generation by augmentation
# ---------------------------------------------------------------------------


def _canonical_g6(n: int, masks: list[int]) -> str:
    _, order, _ = canonical_cert_masks(n, masks)
    pos = [0] * n
    for p, v in enumerate(order):
        pos[v] = p
    relabeled = [0] * n
    for v in range(n):
        m = masks[v]
        out = 0
        while m:
            low = m & -m
            out |= 1 << pos[low.bit_length() - 1]
            m ^= low
        relabeled[pos[v]] = out
    return graph6_encode(n, relabeled)


def _mask_orbit_reps(k: int, gens: list[tuple[int, ...]]) -> Iterator[int]:
    """One representative per orbit of neighborhood masks under the
    parent graph's (discovered) automorphisms."""
    if not gens:
        yield from range(1 << k)
        return
    seen = bytearray(1 << k)
    for mask in range(1 << k):
        if seen[mask]:
            continue
        yield mask
        stack = [mask]
        seen[mask] = 1
        while stack:
            m = stack.pop()
            for theta in gens:
                img = 0
                mm = m
                while mm:
                    low = mm & -mm
                    img |= 1 << theta[low.bit_length() - 1]
                    mm ^= low
                if not seen[img]:
                    seen[img] = 1
                    stack.append(img)


def generate_catalog(max_n: int, progress: bool = False) -> dict[int, list[str]]:
    """All graphs with 1..max_n vertices as canonical graph6 strings."""
    catalog: dict[int, list[str]] = {1: [graph6_encode(1, [0])]}
    for n in range(2, max_n + 1):
        seen: set[str] = set()
        parents = catalog[n - 1]
        for idx, g6 in enumerate(parents):
            k, masks = graph6_decode(g6)
            _, _, gens = canonical_cert_masks(k, masks)
            for mask in _mask_orbit_reps(k, gens):
                child = list(masks) + [mask]
                m = mask
                while m:
                    low = m & -m
                    child[low.bit_length() - 1] |= 1 << k
                    m ^= low
                seen.add(_canonical_g6(n, child))
            if progress and (idx + 1) % 500 == 0:
                print(f"  n={n}: {idx + 1}/{len(parents)} parents, "
                      f"{len(seen)} classes", file=sys.stderr)
        catalog[n] = sorted(seen)
        if n in CLASS_COUNTS and len(catalog[n]) != CLASS_COUNTS[n]:
            raise AssertionError(
                f"catalog generation produced {len(catalog[n])} classes for "
                f"n={n}, expected {CLASS_COUNTS[n]}"
            )
        if progress:
            print(f"n={n}: {len(catalog[n])} classes", file=sys.stderr)
    return catalog


# ---------------------------------------------------------------------------
# Shipped data file
# ---------------------------------------------------------------------------


def _data_path():
    return resources.files("multiinterval").joinpath("data", _DATA_FILE)


def load_catalog() -> dict[int, list[str]]:
    """The shipped catalog as {n: [graph6, ...]} with sorted entries."""
    raw = _data_path().read_bytes()
    text = gzip.decompress(raw).decode("ascii")
    catalog: dict[int, list[str]] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        n = ord(line[0]) - 63
        catalog.setdefault(n, []).append(line)
    return catalog


def iter_catalog_graphs(n: int) -> Iterator[Graph]:
    """All graphs on exactly n vertices (vertex labels "0".."n-1")."""
    if not 1 <= n <= CATALOG_MAX_N:
        raise InputError(f"catalog covers 1..{CATALOG_MAX_N} vertices, got {n}")
    for g6 in load_catalog()[n]:
        yield graph_from_graph6(g6)


def write_catalog_file(path, max_n: int = CATALOG_MAX_N, progress: bool = True) -> None:
    catalog = generate_catalog(max_n, progress=progress)
    lines = []
    for n in sorted(catalog):
        lines.extend(catalog[n])
    payload = ("\n".join(lines) + "\n").encode("ascii")
    with open(path, "wb") as fh:
        fh.write(gzip.compress(payload, 9))


def main(argv=None) -> int:
    """Regenerate the shipped catalog file (maintenance entry point)."""
    import argparse

    ap = argparse.ArgumentParser(
        description="regenerate the small-graph catalog data file")
    ap.add_argument("--out", default=None,
                    help="output path (default: the packaged data file)")
    ap.add_argument("--max-n", type=int, default=CATALOG_MAX_N)
    args = ap.parse_args(argv)
    out = args.out
    if out is None:
        out = str(_data_path())
    write_catalog_file(out, args.max_n)
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
