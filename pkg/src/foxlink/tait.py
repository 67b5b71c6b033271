"""
Signed plane graphs and the medial construction that turns them into link
diagrams, one crossing per edge.

A graph arrives as a rotation system: the counterclockwise cyclic order of
edge ends around every vertex. That fixes the plane embedding up to
reflection, and the constructor rejects rotation data whose faces fail the
sphere count. To build the diagram, picture each edge horizontal with a
crossing at its midpoint; the crossing's four ports sit in the quadrants
NE, NW, SW, SE relative to the edge. Walking the corners of every vertex
joins each port to the port across the corner, and the edge sign decides
which diagonal strand goes on top: positive lifts SW-NE, negative lifts
NW-SE. (The opposite choice would build the mirror image; every question
asked here is mirror-blind, so the convention only matters for orientation
bookkeeping.) Connected graphs with all signs equal are exactly the ones
whose diagram alternates over/under along every strand, and is_alternating
checks that by walking the strands.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .diagram import BOUNDARY, Crossing, Diagram, DiagramError

__all__ = [
    "SignedPlaneGraph",
    "graph_to_diagram",
    "is_alternating",
    "parse_signed_graph",
    "random_signed_plane_graph",
]

_SIGNS = {"+": 1, "-": -1, "+1": 1, "-1": -1}


@dataclass(frozen=True)
class SignedPlaneGraph:
    """
    A multigraph with signed edges, embedded in the plane by listing the
    counterclockwise order of edge ends around each vertex. Vertices are
    1..nvertices; loops name their edge twice in the one rotation. Edges
    are (name, endpoint, endpoint, sign) with sign +1 or -1.
    """

    nvertices: int
    edges: tuple[tuple[str, int, int, int], ...]
    rotations: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        if self.nvertices < 0:
            raise DiagramError("negative vertex count")
        if len(self.rotations) != self.nvertices:
            raise DiagramError(
                f"{self.nvertices} vertices but {len(self.rotations)} rotation lines"
            )
        seen = set()
        for name, u, v, sign in self.edges:
            if name in seen:
                raise DiagramError(f"edge name {name!r} repeated")
            seen.add(name)
            for w in (u, v):
                if not 1 <= w <= self.nvertices:
                    raise DiagramError(f"edge {name!r} touches missing vertex {w}")
            if sign not in (1, -1):
                raise DiagramError(f"edge {name!r} has sign {sign!r}, want +1 or -1")
        for rot in self.rotations:
            for name in rot:
                if name not in seen:
                    raise DiagramError(f"rotation mentions unknown edge {name!r}")
        for name, u, v, _ in self.edges:
            if u == v:
                if self.rotations[u - 1].count(name) != 2:
                    raise DiagramError(f"loop {name!r} must appear twice at vertex {u}")
                extra = sum(rot.count(name) for i, rot in enumerate(self.rotations) if i != u - 1)
            else:
                for w in (u, v):
                    if self.rotations[w - 1].count(name) != 1:
                        raise DiagramError(f"edge {name!r} must appear once at vertex {w}")
                extra = sum(
                    rot.count(name)
                    for i, rot in enumerate(self.rotations)
                    if i not in (u - 1, v - 1)
                )
            if extra:
                raise DiagramError(f"edge {name!r} appears at a vertex it does not touch")
        if not self._plane():
            raise DiagramError("rotation system does not describe a plane embedding")

    @property
    def nedges(self) -> int:
        return len(self.edges)

    @property
    def monosigned(self) -> bool:
        return len({sign for *_, sign in self.edges}) <= 1

    @property
    def is_connected(self) -> bool:
        if self.nvertices <= 1:
            return True
        parent = list(range(self.nvertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for _, u, v, _ in self.edges:
            parent[find(u - 1)] = find(v - 1)
        return len({find(x) for x in range(self.nvertices)}) == 1

    def vertex_darts(self, v: int) -> list[tuple[int, int]]:
        """Edge ends around vertex v in rotation order, as (edge index, end)."""
        index = {name: i for i, (name, *_) in enumerate(self.edges)}
        used = set()
        out = []
        for name in self.rotations[v - 1]:
            ei = index[name]
            _, u, w, _ = self.edges[ei]
            if u != w:
                end = 0 if v == u else 1
            else:
                end = 1 if (ei, 0) in used else 0
            out.append((ei, end))
            used.add((ei, end))
        return out

    def faces(self) -> list[tuple[tuple[int, int], ...]]:
        """Orbits of the face-tracing successor; each dart lies on one face."""
        successor = {}
        for v in range(1, self.nvertices + 1):
            darts = self.vertex_darts(v)
            for i, d in enumerate(darts):
                successor[d] = darts[(i + 1) % len(darts)]
        out, seen = [], set()
        for start in successor:
            if start in seen:
                continue
            orbit, d = [], start
            while d not in seen:
                seen.add(d)
                orbit.append(d)
                d = successor[(d[0], 1 - d[1])]
            out.append(tuple(orbit))
        return out

    def _plane(self) -> bool:
        if not self.edges:
            return True
        parent = list(range(self.nvertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for _, u, v, _ in self.edges:
            parent[find(u - 1)] = find(v - 1)
        verts = {}
        for _, u, v, _ in self.edges:
            verts.setdefault(find(u - 1), set()).update((u, v))
        edge_count = {}
        for _, u, *_ in self.edges:
            piece = find(u - 1)
            edge_count[piece] = edge_count.get(piece, 0) + 1
        face_count = {}
        for face in self.faces():
            ei = face[0][0]
            piece = find(self.edges[ei][1] - 1)
            face_count[piece] = face_count.get(piece, 0) + 1
        return all(
            len(verts[piece]) - edge_count[piece] + face_count.get(piece, 0) == 2
            for piece in verts
        )


_GRAPH_V = re.compile(r"V\s+(\d+)\s*\Z")
_GRAPH_ROT = re.compile(r"(\d+)\s*:\s*(.*)\Z")
_GRAPH_E = re.compile(r"E\s+(\S+)\s*:\s*(\d+)\s+(\d+)(?:\s+(\S+))?\s*\Z")


def parse_signed_graph(text: str) -> SignedPlaneGraph:
    """
    Read the plain-text graph format: a `V n` header, one `v: e1 e2 ...`
    rotation line per vertex, and `E name: u v sign` edge lines (sign
    omitted means positive). Blank lines and # comments are skipped.
    """
    nvertices = None
    rotations: dict[int, tuple[str, ...]] = {}
    edges = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _GRAPH_V.match(line)
        if m:
            if nvertices is not None:
                raise DiagramError("second V header")
            nvertices = int(m.group(1))
            continue
        m = _GRAPH_E.match(line)
        if m:
            name, u, v, sign = m.group(1), int(m.group(2)), int(m.group(3)), m.group(4)
            if sign is not None and sign not in _SIGNS:
                raise DiagramError(f"unknown sign {sign!r} on edge {name!r}")
            edges.append((name, u, v, _SIGNS[sign] if sign else 1))
            continue
        m = _GRAPH_ROT.match(line)
        if m:
            v = int(m.group(1))
            if v in rotations:
                raise DiagramError(f"second rotation line for vertex {v}")
            rotations[v] = tuple(m.group(2).split())
            continue
        raise DiagramError(f"unreadable graph line {raw!r}")
    if nvertices is None:
        raise DiagramError("missing V header")
    bad = set(rotations) - set(range(1, nvertices + 1))
    if bad:
        raise DiagramError(f"rotation lines for missing vertices {sorted(bad)}")
    rot = tuple(rotations.get(v, ()) for v in range(1, nvertices + 1))
    return SignedPlaneGraph(nvertices, tuple(edges), rot)


# quadrant names for the four ports of the crossing sitting mid-edge, the
# edge drawn left to right from end 0 to end 1
_NE, _NW, _SW, _SE = range(4)


def graph_to_diagram(g: SignedPlaneGraph, name: str | None = None) -> Diagram:
    """
    The medial-style link diagram of a signed plane graph: one crossing per
    edge, strands joined across every vertex corner. Positive edges carry
    the SW-NE strand on top, negative edges the NW-SE strand. Crossing
    count equals edge count by construction. A vertex touching no edge is
    encircled by a crossing-free strand, so it contributes a free loop;
    the one-vertex graph maps to the unknot.
    """
    port: dict[tuple[int, int], int] = {}
    label = 0
    free_loops = 0
    for v in range(1, g.nvertices + 1):
        darts = g.vertex_darts(v)
        if not darts:
            free_loops += 1
            continue
        for i, d1 in enumerate(darts):
            d2 = darts[(i + 1) % len(darts)]
            label += 1
            # the corner region between CCW-consecutive ends touches the
            # left side of the first and the right side of the second
            port[(d1[0], _NW if d1[1] == 0 else _SE)] = label
            port[(d2[0], _SW if d2[1] == 0 else _NE)] = label
    crossings = []
    for ei, (_, _, _, sign) in enumerate(g.edges):
        q = {quad: port[(ei, quad)] for quad in (_NE, _NW, _SW, _SE)}
        if sign > 0:
            slots = (q[_SE], q[_NE], q[_NW], q[_SW])
        else:
            slots = (q[_SW], q[_SE], q[_NE], q[_NW])
        crossings.append(Crossing(slots))
    return Diagram(tuple(crossings), free_loops, (), name=name)


def is_alternating(d: Diagram) -> bool:
    """
    Whether over and under passes alternate along every strand of the
    diagram. Strands are walked straight through each crossing; closed
    strands must alternate cyclically, strands ending on the tangle
    boundary only along their length. Crossing-free pieces are vacuously
    alternating. Virtual crossings carry no over/under, so they are
    refused.
    """
    if not d.is_classical:
        raise DiagramError("alternation is undefined at virtual crossings")
    partner = {}
    for a, b in d.edge_darts().values():
        partner[a], partner[b] = b, a
    seen = set()

    def walk(entry, stop=None):
        # parities of the passes (odd slot = over), starting at an
        # entering dart; both the entry and exit darts get marked so the
        # reverse direction is never walked again
        parities = []
        dart = entry
        while dart[0] != BOUNDARY:
            if dart == stop and parities:
                break
            seen.add(dart)
            leave = (dart[0], (dart[1] + 2) % 4)
            seen.add(leave)
            parities.append(dart[1] % 2)
            dart = partner[leave]
        return parities

    runs = []
    for pos in range(len(d.boundary)):
        entry = partner[(BOUNDARY, pos)]
        if entry[0] != BOUNDARY and entry not in seen:
            runs.append((walk(entry), False))
    for ci in range(len(d.crossings)):
        for slot in range(4):
            if (ci, slot) not in seen:
                runs.append((walk((ci, slot), stop=(ci, slot)), True))
    for parities, closed in runs:
        if any(parities[i] == parities[i - 1] for i in range(1, len(parities))):
            return False
        if closed and parities and parities[0] == parities[-1]:
            return False
    return True


def random_signed_plane_graph(rng, n_edges: int, monosigned: bool = False):
    """
    Grow a random connected plane multigraph with n_edges signed edges.
    Each step either hangs a new leaf vertex somewhere or draws a new edge
    between two corners of one face (possibly the same corner, giving a
    loop), so planarity and connectivity hold by construction. Signs are
    drawn uniformly unless monosigned forces one shared sign.
    """
    if n_edges < 0:
        raise ValueError("cannot grow a negative number of edges")
    nvertices = 1
    rotations: list[list[str]] = [[]]
    edges: list[tuple[str, int, int]] = []

    def faces_of(rot_lists):
        g = SignedPlaneGraph(
            nvertices,
            tuple((name, u, v, 1) for name, u, v in edges),
            tuple(tuple(r) for r in rot_lists),
        )
        return g, g.faces()

    for step in range(n_edges):
        name = f"e{step + 1}"
        if not edges or rng.random() < 0.35:
            if rng.random() < 0.5:
                # curl a loop into a corner of some vertex
                v = rng.randrange(1, nvertices + 1)
                gap = rng.randrange(len(rotations[v - 1]) + 1)
                rotations[v - 1][gap:gap] = [name, name]
                edges.append((name, v, v))
            else:
                # hang a fresh leaf vertex
                v = rng.randrange(1, nvertices + 1)
                gap = rng.randrange(len(rotations[v - 1]) + 1)
                rotations[v - 1].insert(gap, name)
                nvertices += 1
                rotations.append([name])
                edges.append((name, v, nvertices))
        else:
            g, faces = faces_of(rotations)
            face = faces[rng.randrange(len(faces))]
            # each dart on the face marks one corner of it: the rotation
            # gap right after that dart's partner end
            positions = {}
            for v in range(1, nvertices + 1):
                for pos, dd in enumerate(g.vertex_darts(v)):
                    positions[dd] = (v, pos)
            spots = []
            for dart in (face[rng.randrange(len(face))] for _ in range(2)):
                v, pos = positions[(dart[0], 1 - dart[1])]
                spots.append((v, pos + 1))
            (v1, p1), (v2, p2) = spots
            if v1 == v2 and p2 >= p1:
                p2 += 1
            rotations[v1 - 1].insert(p1, name)
            rotations[v2 - 1].insert(p2, name)
            edges.append((name, v1, v2))
    if monosigned:
        shared = rng.choice((1, -1))
        signed = tuple((name, u, v, shared) for name, u, v in edges)
    else:
        signed = tuple((name, u, v, rng.choice((1, -1))) for name, u, v in edges)
    return SignedPlaneGraph(nvertices, signed, tuple(tuple(r) for r in rotations))
