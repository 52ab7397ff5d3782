#!/usr/bin/env python3
"""Writes the complement of the McLaughlin graph as a `graph` edge list.

The McLaughlin graph is built from the binary Golay code of length 23: the
points are 22 coordinates, the 77 blocks through a fixed coordinate
(hexads) and the 176 weight-7 words avoiding it (heptads). Its complement
is strongly regular with parameters (275, 162, 105, 81).

    python3 mcl_complement.py > mcl_complement.txt
"""

import itertools
import sys

GEN = [1, 1, 0, 0, 0, 1, 1, 1, 0, 1, 0, 1]  # generator polynomial, low degree first


def golay_words():
    rows = []
    for s in range(12):
        w = 0
        for i, c in enumerate(GEN):
            if c:
                w |= 1 << ((i + s) % 23)
        rows.append(w)
    code = {0}
    for r in rows:
        code |= {c ^ r for c in code}
    return code


def vertices():
    infinity = 22
    blocks = [frozenset(i for i in range(23) if c >> i & 1)
              for c in golay_words() if bin(c).count("1") == 7]
    hexads = sorted((sorted(b - {infinity}) for b in blocks if infinity in b))
    heptads = sorted(sorted(b) for b in blocks if infinity not in b)
    return ([("p", frozenset([p])) for p in range(22)]
            + [("x", frozenset(h)) for h in hexads]
            + [("b", frozenset(b)) for b in heptads])


def mclaughlin_adjacent(a, b):
    (ta, xa), (tb, xb) = sorted([a, b], key=lambda v: v[0])
    if ta == "b" and tb == "b":
        return len(xa & xb) == 1
    if ta == "b" and tb == "p":
        return xb <= xa
    if ta == "b" and tb == "x":
        return len(xa & xb) == 3
    if ta == "p" and tb == "p":
        return False
    if ta == "p" and tb == "x":
        return not xa <= xb
    return len(xa & xb) == 0  # hexad, hexad


def main():
    vs = vertices()
    edges = [(i, j) for i, j in itertools.combinations(range(len(vs)), 2)
             if not mclaughlin_adjacent(vs[i], vs[j])]
    out = sys.stdout
    out.write("# complement of the McLaughlin graph, srg(275,162,105,81)\n")
    out.write(f"graph {len(vs)} {len(edges)}\n")
    for i, j in edges:
        out.write(f"{i} {j}\n")


if __name__ == "__main__":
    main()
