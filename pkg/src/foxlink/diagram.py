"""
Planar diagrams of links and tangles as crossing lists with arc labels.

A crossing is a counterclockwise quadruple of arc-end slots. For a classical
crossing the strand occupying slots 0 and 2 passes under the strand occupying
slots 1 and 3 (slot 0 is the incoming under-strand end once the diagram is
oriented). Virtual crossings carry the same quadruple but no over/under
distinction. Closed curves that meet no crossing cannot be written as
quadruples, so a diagram carries an explicit count of such free loops.

Edges (the segments between crossing slots and boundary points) are labeled
1..arc_count; every label occurs exactly twice among crossing slots and
boundary positions. Tangles list their boundary endpoints in cyclic order
around the disk.

Planarity of the incidence structure is a caller contract and is not
verified; all constructions in this package emit planar data when fed planar
data.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

__all__ = [
    "Crossing",
    "Diagram",
    "Orientation",
    "DiagramError",
    "parse_pd",
    "render_pd",
    "parse_braid",
    "braid_closure",
    "oriented_braid_closure",
    "components",
    "component_edges",
    "default_orientation",
    "flip_components",
    "writhe",
    "crossing_sign",
    "linking_number",
    "faces",
    "euler_characteristic",
    "is_planar",
    "merge_edges",
    "crossing_variants",
    "smooth_crossing",
    "twist_family",
    "connected_sum",
    "add_boundary_crossing",
    "add_cup",
    "rotate_boundary",
    "canonical_form",
    "trivial_tangle",
    "apply_reidemeister",
    "find_reidemeister_sites",
    "graft_tangle",
    "insert_twists",
    "edges_share_face",
    "strong_canonical_form",
    "REIDEMEISTER_MOVES",
    "BOUNDARY",
]

# Crossing index used in darts that sit on the tangle boundary.
BOUNDARY = -1

Dart = tuple[int, int]


class DiagramError(ValueError):
    """Malformed diagram data or an operation applied out of contract."""


@dataclass(frozen=True)
class Crossing:
    """Arc labels at the four slots, counterclockwise; under strand at 0, 2."""

    slots: tuple[int, int, int, int]
    virtual: bool = False

    def rotated(self, by: int) -> "Crossing":
        s = self.slots
        by %= 4
        return Crossing(s[by:] + s[:by], self.virtual)


@dataclass(frozen=True)
class Diagram:
    crossings: tuple[Crossing, ...] = ()
    free_loops: int = 0
    boundary: tuple[int, ...] = ()
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.free_loops < 0:
            raise DiagramError("negative free loop count")
        if len(self.boundary) % 2:
            raise DiagramError("boundary must list an even number of endpoints")
        counts: dict[int, int] = {}
        for c in self.crossings:
            if len(c.slots) != 4:
                raise DiagramError(f"crossing {c} does not have four slots")
            for e in c.slots:
                if not isinstance(e, int) or e < 1:
                    raise DiagramError(f"bad arc label {e!r}")
                counts[e] = counts.get(e, 0) + 1
        for e in self.boundary:
            if not isinstance(e, int) or e < 1:
                raise DiagramError(f"bad arc label {e!r}")
            counts[e] = counts.get(e, 0) + 1
        bad = {e: n for e, n in counts.items() if n != 2}
        if bad:
            raise DiagramError(f"arc labels must occur exactly twice, got {bad}")

    # -- basic queries ----------------------------------------------------

    @property
    def arc_count(self) -> int:
        """Number of distinct arc labels."""
        return len(self.labels)

    @property
    def labels(self) -> list[int]:
        labels = {e for c in self.crossings for e in c.slots}
        labels.update(self.boundary)
        return sorted(labels)

    @property
    def is_tangle(self) -> bool:
        return bool(self.boundary)

    @property
    def is_classical(self) -> bool:
        return not any(c.virtual for c in self.crossings)

    def edge_darts(self) -> dict[int, list[Dart]]:
        """Map each arc label to its two darts (crossing index, slot).

        Boundary darts use the crossing index BOUNDARY and the boundary
        position as the slot. Darts are listed in scan order: crossings
        first, then boundary positions.
        """
        darts: dict[int, list[Dart]] = {}
        for ci, c in enumerate(self.crossings):
            for s, e in enumerate(c.slots):
                darts.setdefault(e, []).append((ci, s))
        for pos, e in enumerate(self.boundary):
            darts.setdefault(e, []).append((BOUNDARY, pos))
        return darts

    def edge_at(self, dart: Dart) -> int:
        ci, s = dart
        return self.boundary[s] if ci == BOUNDARY else self.crossings[ci].slots[s]

    def normalized(self) -> "Diagram":
        """Relabel arcs to 1..arc_count preserving label order."""
        mapping = {e: i + 1 for i, e in enumerate(self.labels)}
        return Diagram(
            tuple(
                Crossing(tuple(mapping[e] for e in c.slots), c.virtual)
                for c in self.crossings
            ),
            self.free_loops,
            tuple(mapping[e] for e in self.boundary),
            self.name,
        )

    def with_name(self, name: str | None) -> "Diagram":
        return Diagram(self.crossings, self.free_loops, self.boundary, name)

    def __str__(self) -> str:
        return render_pd(self)


# -- parsing and rendering ------------------------------------------------

_TOKEN = re.compile(r"(Xv?)\[([^\]]*)\]|B\[([^\]]*)\]|O(?=\s|$)|(\S+)")


def parse_pd(text: str, name: str | None = None) -> Diagram:
    """
    Parse whitespace-separated diagram tokens.

    Tokens: ``X[a,b,c,d]`` classical crossing (counterclockwise, under
    strand at the first and third entries), ``Xv[a,b,c,d]`` virtual
    crossing, ``O`` a closed loop with no crossings, ``B[e1,...,e2n]`` the
    boundary endpoints of a tangle in cyclic order (at most one B token).

    >>> parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").arc_count
    6
    """
    crossings: list[Crossing] = []
    loops = 0
    boundary: tuple[int, ...] | None = None
    seen_any = False
    for m in _TOKEN.finditer(text):
        seen_any = True
        if m.group(4) is not None:
            raise DiagramError(f"malformed token {m.group(4)!r}")
        if m.group(0) == "O":
            loops += 1
            continue
        body = m.group(2) if m.group(1) else m.group(3)
        try:
            entries = tuple(int(x) for x in body.split(","))
        except ValueError:
            raise DiagramError(f"malformed token {m.group(0)!r}") from None
        if m.group(1):
            if len(entries) != 4:
                raise DiagramError(f"crossing needs four arc labels: {m.group(0)!r}")
            crossings.append(Crossing(entries, virtual=m.group(1) == "Xv"))
        else:
            if boundary is not None:
                raise DiagramError("more than one B[...] token")
            boundary = entries
    if not seen_any:
        raise DiagramError("empty input")
    return Diagram(tuple(crossings), loops, boundary or (), name).normalized()


def render_pd(d: Diagram) -> str:
    parts = [
        ("Xv" if c.virtual else "X") + "[" + ",".join(map(str, c.slots)) + "]"
        for c in d.crossings
    ]
    parts += ["O"] * d.free_loops
    if d.boundary:
        parts.append("B[" + ",".join(map(str, d.boundary)) + "]")
    return " ".join(parts)


_BRAID_HEAD = re.compile(r"^\s*B\s+(\d+)\s*:\s*(.*)$", re.DOTALL)
_BRAID_TOKEN = re.compile(r"s(\d+)(\^-?\d+)?|\((?=\s)|\)(\^-?\d+)?|(\S+)")


def parse_braid(text: str) -> tuple[int, list[tuple[int, int]]]:
    """
    Parse ``B m: s1 s2^-1 ...`` into (strand count, letters).

    Each letter is (generator index, +1 or -1); ``s2^-3`` expands to three
    inverse letters, and a parenthesized group ``( ... )^k`` repeats its
    contents k times (inverting them for negative k).

    >>> parse_braid("B 2: s1^3")
    (2, [(1, 1), (1, 1), (1, 1)])
    """
    m = _BRAID_HEAD.match(text.strip())
    if not m:
        raise DiagramError(f"braid must look like 'B m: letters', got {text!r}")
    strands = int(m.group(1))
    if strands < 1:
        raise DiagramError("strand count must be at least 1")

    def expand(exp: int, unit: list[tuple[int, int]]) -> list[tuple[int, int]]:
        if exp >= 0:
            return unit * exp
        return [(i, -s) for i, s in reversed(unit)] * (-exp)

    # Tokenize on whitespace so '(' and ')^4' are standalone words.
    stack: list[list[tuple[int, int]]] = [[]]
    for word in m.group(2).split():
        if word == "(":
            stack.append([])
            continue
        if word.startswith(")"):
            if len(stack) == 1:
                raise DiagramError("unbalanced parentheses in braid word")
            exp = int(word[2:]) if word.startswith(")^") else 1
            group = stack.pop()
            stack[-1] += expand(exp, group)
            continue
        lm = re.fullmatch(r"s(\d+)(?:\^(-?\d+))?", word)
        if not lm:
            raise DiagramError(f"malformed braid letter {word!r}")
        i = int(lm.group(1))
        if not 1 <= i < strands:
            raise DiagramError(f"generator s{i} out of range for {strands} strands")
        stack[-1] += expand(int(lm.group(2) or 1), [(i, 1)])
    if len(stack) != 1:
        raise DiagramError("unbalanced parentheses in braid word")
    return strands, stack[0]


def braid_closure(text_or_word, name: str | None = None) -> Diagram:
    """
    Trace closure of a braid word: strands run downward and the bottom end
    of each lane reconnects to its top end. A positive letter s_i crosses
    the strand entering at lane i+1 over the strand entering at lane i.

    >>> components(braid_closure("B 2: s1^3"))
    1
    >>> components(braid_closure("B 2: s1^2"))
    2
    """
    return oriented_braid_closure(text_or_word, name)[0]


def oriented_braid_closure(
    text_or_word, name: str | None = None
) -> tuple[Diagram, "Orientation"]:
    """
    Braid closure together with its downward orientation (every strand
    directed along the braid flow). Useful when several diagrams must
    carry matching orientations, e.g. skein triples.
    """
    if isinstance(text_or_word, str):
        strands, letters = parse_braid(text_or_word)
    else:
        strands, letters = text_or_word
    nxt = strands + 1
    start = list(range(1, strands + 1))
    cur = list(start)
    crossings = []
    raw_heads: dict[int, Dart] = {}
    for ci, (i, sign) in enumerate(letters):
        a, b = cur[i - 1], cur[i]
        n1, n2 = nxt, nxt + 1
        nxt += 2
        if sign > 0:
            crossings.append(Crossing((a, n1, n2, b)))
            raw_heads[a] = (ci, 0)
            raw_heads[b] = (ci, 3)
        else:
            crossings.append(Crossing((b, a, n1, n2)))
            raw_heads[b] = (ci, 0)
            raw_heads[a] = (ci, 1)
        cur[i - 1], cur[i] = n1, n2
    uf = _UnionFind(range(1, nxt))
    loops = 0
    for j in range(strands):
        if uf.find(start[j]) == uf.find(cur[j]):
            loops += 1  # lane never met a crossing
        else:
            uf.union(start[j], cur[j])
    relabeled = tuple(
        Crossing(tuple(uf.find(e) for e in c.slots), c.virtual) for c in crossings
    )
    d = Diagram(relabeled, loops, (), name).normalized()
    reps = sorted({e for c in relabeled for e in c.slots})
    mapping = {rep: i + 1 for i, rep in enumerate(reps)}
    heads = {}
    for e, dart in raw_heads.items():
        rep = uf.find(e)
        if rep in mapping:
            heads[mapping[rep]] = dart
    return d, Orientation(tuple(sorted(heads.items())))


# -- components and orientation -------------------------------------------


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def classes(self) -> dict:
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return out


def component_edges(d: Diagram) -> list[list[int]]:
    """Edge labels grouped by strand component, ordered by smallest label.

    Strands pass straight through every crossing (slot s continues at
    slot s+2), virtual or not. Free loops are not included.
    """
    uf = _UnionFind(d.labels)
    for c in d.crossings:
        uf.union(c.slots[0], c.slots[2])
        uf.union(c.slots[1], c.slots[3])
    return sorted(sorted(g) for g in uf.classes().values())


def components(d: Diagram) -> int:
    """Number of closed components of a link diagram.

    >>> components(parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"))
    1
    """
    if d.is_tangle:
        raise DiagramError("component count is defined for links, not tangles")
    return len(component_edges(d)) + d.free_loops


@dataclass(frozen=True)
class Orientation:
    """A direction for every edge, stored as the dart each edge points at.

    heads[e] is the dart where edge e ends. Directions are consistent along
    strands: an edge ending at slot s of a crossing continues as the edge
    leaving at slot s+2.
    """

    heads: tuple[tuple[int, Dart], ...]

    def as_dict(self) -> dict[int, Dart]:
        return dict(self.heads)


def flip_components(d: Diagram, o: Orientation, comps: tuple[int, ...]) -> Orientation:
    """
    Reverse the direction of the listed components (indices into
    component_edges(d)); every edge of those components points at its
    other dart afterwards.
    """
    darts = d.edge_darts()
    reverse = {e for idx in comps for e in component_edges(d)[idx]}
    heads = {}
    for e, head in o.as_dict().items():
        if e in reverse:
            d0, d1 = darts[e]
            heads[e] = d0 if head == d1 else d1
        else:
            heads[e] = head
    return Orientation(tuple(sorted(heads.items())))


def default_orientation(d: Diagram, flips: tuple[int, ...] = ()) -> Orientation:
    """
    Orient every component by walking it from its smallest edge label.
    Component indices listed in `flips` (indices into component_edges(d))
    are walked in the opposite direction.
    """
    darts = d.edge_darts()
    heads: dict[int, Dart] = {}
    for idx, comp in enumerate(component_edges(d)):
        e0 = comp[0]
        h0 = darts[e0][1] if idx in flips else darts[e0][0]
        heads[e0] = h0

        # Walk forward from the head of e0.
        cur_head = h0
        while True:
            ci, s = cur_head
            if ci == BOUNDARY:
                break
            exit_dart = (ci, (s + 2) % 4)
            e2 = d.crossings[ci].slots[exit_dart[1]]
            if e2 in heads:
                break
            d0, d1 = darts[e2]
            heads[e2] = d1 if d0 == exit_dart else d0
            cur_head = heads[e2]

        # Walk backward from the tail of e0 (reaches the rest of an open
        # strand; a no-op for closed components).
        d0, d1 = darts[e0]
        cur_tail = d0 if h0 == d1 else d1
        while True:
            ci, s = cur_tail
            if ci == BOUNDARY:
                break
            entry_dart = (ci, (s + 2) % 4)
            e2 = d.crossings[ci].slots[entry_dart[1]]
            if e2 in heads:
                break
            heads[e2] = entry_dart
            d0, d1 = darts[e2]
            cur_tail = d1 if d0 == entry_dart else d0
    return Orientation(tuple(sorted(heads.items())))


def crossing_sign(d: Diagram, o: Orientation, ci: int) -> int:
    """
    Sign of classical crossing ci under orientation o: +1 when the over
    strand crosses the under strand left to right seen along the under
    direction.
    """
    c = d.crossings[ci]
    if c.virtual:
        raise DiagramError("virtual crossings have no sign")
    heads = o.as_dict()
    u = 0 if heads[c.slots[0]] == (ci, 0) else 2
    ov = 1 if heads[c.slots[1]] == (ci, 1) else 3
    return 1 if (ov - u) % 4 == 3 else -1


def writhe(d: Diagram, o: Orientation | None = None) -> int:
    """
    Sum of oriented crossing signs.

    >>> writhe(braid_closure("B 2: s1^3"))
    3
    """
    if not d.is_classical:
        raise DiagramError("writhe is undefined with virtual crossings present")
    if o is None:
        o = default_orientation(d)
    return sum(crossing_sign(d, o, ci) for ci in range(len(d.crossings)))


def linking_number(d: Diagram, comp_index: int, o: Orientation | None = None) -> int:
    """
    Linking number of component comp_index with the rest of the link: half
    the signed count of crossings between that component and the others.
    """
    if o is None:
        o = default_orientation(d)
    comps = component_edges(d)
    mine = set(comps[comp_index])
    total = 0
    for ci, c in enumerate(d.crossings):
        under_in_mine = c.slots[0] in mine
        over_in_mine = c.slots[1] in mine
        if under_in_mine != over_in_mine:
            total += crossing_sign(d, o, ci)
    if total % 2:
        raise DiagramError("odd inter-component crossing sum; non-planar input?")
    return total // 2


# -- faces ------------------------------------------------------------------


def _alpha(d: Diagram) -> dict[Dart, Dart]:
    pairs = d.edge_darts()
    out = {}
    for e, (a, b) in pairs.items():
        out[a] = b
        out[b] = a
    return out


def _sigma(d: Diagram, dart: Dart) -> Dart:
    ci, s = dart
    if ci == BOUNDARY:
        return (BOUNDARY, (s + 1) % len(d.boundary))
    return (ci, (s + 1) % 4)


def faces(d: Diagram) -> list[list[Dart]]:
    """
    Faces of the diagram as orbits of darts (next = rotate(opposite(dart))).
    The tangle boundary counts as one extra vertex whose slots are the
    boundary positions. Free loops have no darts and contribute no faces.

    Walking a face visits each dart once; the edge of a dart is the edge the
    face boundary walks right after that corner.
    """
    alpha = _alpha(d)
    out = []
    seen = set()
    all_darts = [(ci, s) for ci in range(len(d.crossings)) for s in range(4)]
    all_darts += [(BOUNDARY, p) for p in range(len(d.boundary))]
    for start in all_darts:
        if start in seen:
            continue
        orbit = []
        cur = start
        while cur not in seen:
            seen.add(cur)
            orbit.append(cur)
            cur = _sigma(d, alpha[cur])
        out.append(orbit)
    return out


def euler_characteristic(d: Diagram) -> int:
    """V - E + F counting the boundary circle as one vertex (when present)."""
    v = len(d.crossings) + (1 if d.is_tangle else 0)
    e = d.arc_count
    return v - e + len(faces(d))


def is_planar(d: Diagram) -> bool:
    """
    Whether the incidence data embeds in the sphere. Each connected piece
    must satisfy the sphere count V - E + F = 2; since face orbits never
    span pieces, that is the single count V - E + F = 2 * pieces. Free
    loops carry no darts and are always embeddable, so they are ignored.
    """
    vertices = list(range(len(d.crossings)))
    if d.is_tangle:
        vertices.append(BOUNDARY)
    if not vertices:
        return True
    uf = _UnionFind(vertices)
    darts_by_edge = d.edge_darts()
    for darts in darts_by_edge.values():
        uf.union(darts[0][0], darts[1][0])
    pieces = len({uf.find(v) for v in vertices})
    return len(vertices) - len(darts_by_edge) + len(faces(d)) == 2 * pieces


# -- surgery helpers --------------------------------------------------------


def merge_edges(
    d: Diagram,
    unions: list[tuple[int, int]],
    drop: set[int] | frozenset[int] = frozenset(),
    add: tuple[Crossing, ...] = (),
    extra_loops: int = 0,
    name: str | None = None,
) -> Diagram:
    """
    Rebuild a diagram after local surgery: remove the crossings in `drop`,
    append the crossings in `add`, and identify edge labels pairwise per
    `unions`. Merged edge classes left with no endpoints become free loops.
    """
    labels = set(d.labels)
    for c in add:
        labels.update(c.slots)
    uf = _UnionFind(labels)
    for a, b in unions:
        uf.union(a, b)
    kept = [c for ci, c in enumerate(d.crossings) if ci not in drop]
    kept += list(add)
    new_crossings = tuple(
        Crossing(tuple(uf.find(e) for e in c.slots), c.virtual) for c in kept
    )
    new_boundary = tuple(uf.find(e) for e in d.boundary)
    dart_count: dict[int, int] = {e: 0 for e in {uf.find(x) for x in labels}}
    for c in new_crossings:
        for e in c.slots:
            dart_count[e] += 1
    for e in new_boundary:
        dart_count[e] += 1
    loops = d.free_loops + extra_loops
    for e, n in dart_count.items():
        if n == 0:
            loops += 1
        elif n != 2:
            raise DiagramError(f"surgery left arc {e} with {n} endpoints")
    return Diagram(new_crossings, loops, new_boundary, name).normalized()


def smooth_crossing(d: Diagram, ci: int, kind: str) -> Diagram:
    """
    Replace classical crossing ci by one of its two smoothings.

    kind "A" joins slots (0,1) and (2,3); kind "B" joins (0,3) and (1,2).
    On a positively oriented crossing the A smoothing is the one respecting
    the orientation.
    """
    c = d.crossings[ci]
    if c.virtual:
        raise DiagramError("cannot smooth a virtual crossing")
    if kind == "A":
        unions = [(c.slots[0], c.slots[1]), (c.slots[2], c.slots[3])]
    elif kind == "B":
        unions = [(c.slots[0], c.slots[3]), (c.slots[1], c.slots[2])]
    else:
        raise DiagramError(f"smoothing kind must be 'A' or 'B', not {kind!r}")
    return merge_edges(d, unions, drop={ci})


def crossing_variants(
    d: Diagram, ci: int, o: Orientation | None = None
) -> tuple[Diagram, Diagram, Diagram, Diagram]:
    """
    The four diagrams differing from d only at classical crossing ci:
    positive switch, negative switch, oriented smoothing, the other
    smoothing. Arc labels are re-normalized in each output.
    """
    c = d.crossings[ci]
    if c.virtual:
        raise DiagramError("virtual crossings have no variants")
    if o is None:
        o = default_orientation(d)
    sign = crossing_sign(d, o, ci)
    flipped = list(d.crossings)
    flipped[ci] = c.rotated(1)
    other = Diagram(tuple(flipped), d.free_loops, d.boundary).normalized()
    same = d.normalized()
    plus, minus = (same, other) if sign > 0 else (other, same)
    oriented = smooth_crossing(d, ci, "A" if sign > 0 else "B")
    infinity = smooth_crossing(d, ci, "B" if sign > 0 else "A")
    return plus, minus, oriented, infinity


def twist_family(d: Diagram, ci: int, k: int) -> list[Diagram]:
    """
    The k+1 diagrams obtained from classical crossing ci by replacing it
    with j half-twists of its own handedness (j = 0..k-1) and, last, with
    the opposite smoothing. One half-twist (j=1) reproduces d itself.

    A crossing X[a,b,c,d] counts as the first half-twist of a vertical
    tower whose strands enter at (a, b) and leave at (d, c); j = 0 joins
    a-d and b-c (the strands pass without twisting), and the opposite
    smoothing joins a-b and c-d.
    """
    c = d.crossings[ci]
    if c.virtual:
        raise DiagramError("cannot twist a virtual crossing")
    a, b, cc, dd = c.slots
    out = [smooth_crossing(d, ci, "B")]
    fresh = max(d.labels, default=0) + 1
    for j in range(1, k):
        # Chain of j crossings: left lane a..dd, right lane b..cc.
        left = [a] + [fresh + 2 * t for t in range(j - 1)] + [dd]
        right = [b] + [fresh + 2 * t + 1 for t in range(j - 1)] + [cc]
        tower = tuple(
            Crossing((left[t], right[t], right[t + 1], left[t + 1]))
            for t in range(j)
        )
        out.append(merge_edges(d, [], drop={ci}, add=tower))
    out.append(smooth_crossing(d, ci, "A"))
    return out


def connected_sum(d1: Diagram, d2: Diagram, arc1: int, arc2: int) -> Diagram:
    """
    Splice two link diagrams along the designated arcs (cut both arcs and
    join the loose ends crosswise). Arc value 0 designates a free loop,
    which acts as the unit for this operation.

    >>> t = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]")
    >>> components(connected_sum(t, t, 1, 1))
    1
    """
    if d1.is_tangle or d2.is_tangle:
        raise DiagramError("connected sum is defined for links")
    if arc1 == 0 and d1.free_loops < 1:
        raise DiagramError("no free loop in the first diagram to splice")
    if arc2 == 0 and d2.free_loops < 1:
        raise DiagramError("no free loop in the second diagram to splice")
    if arc1 != 0 and arc1 not in set(d1.labels):
        raise DiagramError(f"no arc {arc1} in the first diagram")
    if arc2 != 0 and arc2 not in set(d2.labels):
        raise DiagramError(f"no arc {arc2} in the second diagram")
    off = max(d1.labels, default=0)
    slots = [list(c.slots) for c in d1.crossings]
    slots += [[e + off for e in c.slots] for c in d2.crossings]
    virtual = [c.virtual for c in d1.crossings] + [c.virtual for c in d2.crossings]
    loops = d1.free_loops + d2.free_loops
    if arc1 == 0 or arc2 == 0:
        # Splicing a crossingless circle into a strand absorbs the circle.
        loops -= 1
    else:
        n1 = len(d1.crossings)
        (c1a, s1a), (c1b, s1b) = d1.edge_darts()[arc1]
        (c2a, s2a), (c2b, s2b) = d2.edge_darts()[arc2]
        m1 = off + max(d2.labels) + 1
        # Cut both arcs and join: first halves together, second halves
        # together. The second summand can always be reflected to make
        # this gluing planar, so the combinatorics need no side choice.
        slots[c1b][s1b] = m1
        slots[n1 + c2a][s2a] = arc1
        slots[n1 + c2b][s2b] = m1
    crossings = tuple(
        Crossing(tuple(s), v) for s, v in zip(slots, virtual)
    )
    return Diagram(crossings, loops, (), None).normalized()


# -- tangle constructions ---------------------------------------------------


def trivial_tangle(n: int) -> Diagram:
    """
    The crossingless n-tangle whose strand i joins boundary positions 2i-1
    and 2i (positions are 1-based in the cyclic boundary order).
    """
    if n < 1:
        raise DiagramError("need at least one strand")
    boundary = []
    for i in range(1, n + 1):
        boundary += [i, i]
    return Diagram((), 0, tuple(boundary))


def add_boundary_crossing(
    d: Diagram, i: int, sign: int, virtual: bool = False
) -> Diagram:
    """
    Compose a tangle with one crossing between adjacent boundary positions
    i and i+1 (1-based, cyclic). With sign +1 the strand ending at the
    higher-indexed position passes over; -1 gives the mirror crossing;
    virtual=True marks the new crossing virtual (the sign then only fixes
    the slot bookkeeping).
    """
    if not d.is_tangle:
        raise DiagramError("boundary crossings require a tangle")
    m = len(d.boundary)
    pos_i = (i - 1) % m
    pos_j = i % m
    b_i, b_j = d.boundary[pos_i], d.boundary[pos_j]
    fresh = max(d.labels, default=0) + 1
    n_i, n_j = fresh, fresh + 1
    if sign > 0:
        new = Crossing((b_i, b_j, n_j, n_i), virtual)
    else:
        new = Crossing((b_j, n_j, n_i, b_i), virtual)
    boundary = list(d.boundary)
    boundary[pos_i] = n_i
    boundary[pos_j] = n_j
    return Diagram(
        d.crossings + (new,), d.free_loops, tuple(boundary), d.name
    ).normalized()


def add_cup(d: Diagram, at: int | None = None) -> Diagram:
    """
    Cap a tangle by joining two adjacent boundary endpoints with an arc.
    By default the last two positions are joined; `at` (1-based) joins
    positions at, at+1 (cyclic). A strand whose both ends are capped
    together becomes a free loop.
    """
    if not d.is_tangle:
        raise DiagramError("cup contraction requires a tangle")
    m = len(d.boundary)
    if at is None:
        at = m - 1
    pos_a = (at - 1) % m
    pos_b = at % m
    if pos_a == pos_b:
        raise DiagramError("boundary too small to contract")
    e_a, e_b = d.boundary[pos_a], d.boundary[pos_b]
    rest = tuple(e for p, e in enumerate(d.boundary) if p not in (pos_a, pos_b))
    if e_a == e_b:
        return Diagram(d.crossings, d.free_loops + 1, rest, d.name).normalized()
    lo, hi = min(e_a, e_b), max(e_a, e_b)
    crossings = tuple(
        Crossing(tuple(lo if e == hi else e for e in c.slots), c.virtual)
        for c in d.crossings
    )
    rest = tuple(lo if e == hi else e for e in rest)
    return Diagram(crossings, d.free_loops, rest, d.name).normalized()


def canonical_form(d: Diagram):
    """
    A hashable key identifying a diagram up to arc relabeling and crossing
    order. Two diagrams with equal keys present the same labeled incidence
    data; unequal keys can still be moves apart.
    """
    n = d.normalized()
    return (
        tuple(sorted((c.slots, c.virtual) for c in n.crossings)),
        n.free_loops,
        n.boundary,
    )


def rotate_boundary(d: Diagram, by: int) -> Diagram:
    """
    Renumber the boundary positions cyclically: the point at old position
    by+1 (1-based) becomes position 1. The underlying tangle is unchanged.
    """
    if not d.is_tangle:
        raise DiagramError("no boundary to rotate")
    m = len(d.boundary)
    by %= m
    boundary = d.boundary[by:] + d.boundary[:by]
    return Diagram(d.crossings, d.free_loops, boundary, d.name)

# -- Reidemeister moves -------------------------------------------------------

REIDEMEISTER_MOVES = ("R1-", "R1+", "R2-", "R2+", "R3")


def _face_from(d: Diagram, dart: Dart) -> list[Dart]:
    """The face orbit (under rotate-after-crossing-edge) through one dart."""
    alpha = _alpha(d)
    if dart not in alpha:
        raise DiagramError(f"no dart {dart} in this diagram")
    face = [dart]
    cur = _sigma(d, alpha[dart])
    while cur != dart:
        face.append(cur)
        cur = _sigma(d, alpha[cur])
    return face


def _fresh_labels(d: Diagram, count: int) -> list[int]:
    base = max(d.labels, default=0)
    return [base + i + 1 for i in range(count)]


def _relabel_second(crossings, boundary, edge: int, new: int):
    """Split an edge for twist insertion: its second occurrence (crossing
    scan order, then boundary) is renamed. Returns (crossings, boundary)."""
    seen = 0
    out = []
    for c in crossings:
        slots = list(c.slots)
        for k, e in enumerate(slots):
            if e == edge:
                seen += 1
                if seen == 2:
                    slots[k] = new
        out.append(Crossing(tuple(slots), c.virtual))
    new_boundary = list(boundary)
    for k, e in enumerate(new_boundary):
        if e == edge:
            seen += 1
            if seen == 2:
                new_boundary[k] = new
    if seen != 2:
        raise DiagramError(f"arc {edge} not present twice")
    return tuple(out), tuple(new_boundary)


def edges_share_face(d: Diagram, e: int, f: int) -> bool:
    for face in faces(d):
        on_face = {d.edge_at(dart) for dart in face}
        if e in on_face and f in on_face:
            return True
    return False


def _tear(crossings, boundary, dart: Dart, old: int, new: int):
    """Rewrite the single label occurrence at one dart (raw tuples in/out)."""
    ci, s = dart
    if ci == BOUNDARY:
        if boundary[s] != old:
            raise DiagramError("tear does not match the edge")
        return crossings, boundary[:s] + (new,) + boundary[s + 1 :]
    c = crossings[ci]
    if c.slots[s] != old:
        raise DiagramError("tear does not match the edge")
    fixed = Crossing(c.slots[:s] + (new,) + c.slots[s + 1 :], c.virtual)
    return crossings[:ci] + (fixed,) + crossings[ci + 1 :], boundary


def graft_tangle(d: Diagram, e: int, f: int, t: Diagram, name: str | None = None) -> Diagram:
    """
    Replace the parallel pair (e, f) by a 4-ended tangle.

    The pair must bound a common face. Walking that face, each arc is torn
    open at its far corner and rejoined through t: boundary positions 1, 2
    of t take the two ends of e and positions 3, 4 the two ends of f, in
    the cyclic order the face sees them. Grafting the 2-strand trivial
    tangle therefore reproduces d. Label 0 stands for a free loop, which
    closes back around its side of the graft.
    """
    if len(t.boundary) != 4:
        raise DiagramError("graft needs a tangle with four boundary ends")
    if e == f:
        raise DiagramError("graft needs two distinct strands")
    loops_used = (e == 0) + (f == 0)
    if d.free_loops < loops_used:
        raise DiagramError("no free loop available at this site")

    tears = {}
    if e or f:
        alpha = _alpha(d)
        for face in faces(d):
            labels = [d.edge_at(dart) for dart in face]
            if (e == 0 or e in labels) and (f == 0 or f in labels):
                for g in (e, f):
                    if g:
                        tears[g] = alpha[face[labels.index(g)]]
                break
        else:
            raise DiagramError(f"arcs {e} and {f} do not bound a common face")

    t_labels = t.labels
    base = max(d.labels + t_labels, default=0) + 1
    relabel = {lbl: base + i for i, lbl in enumerate(t_labels)}
    extra = base + len(t_labels)
    t_crossings = tuple(
        Crossing(tuple(relabel[x] for x in c.slots), c.virtual) for c in t.crossings
    )
    ends = [relabel[x] for x in t.boundary]

    crossings, boundary = d.crossings, d.boundary
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: int, b: int):
        ra, rb = find(a), find(b)
        if ra > rb:
            ra, rb = rb, ra
        parent[rb] = ra

    for g, lo, hi in ((e, ends[0], ends[1]), (f, ends[2], ends[3])):
        if g == 0:
            union(extra, lo)
            union(extra, hi)
            extra += 1
        else:
            crossings, boundary = _tear(crossings, boundary, tears[g], g, extra)
            union(g, lo)
            union(extra, hi)
            extra += 1

    def rep(x: int) -> int:
        return find(x) if x in parent else x

    combined = tuple(
        Crossing(tuple(rep(x) for x in c.slots), c.virtual)
        for c in crossings + t_crossings
    )
    boundary = tuple(rep(x) for x in boundary)
    seen = {x for c in combined for x in c.slots} | set(boundary)
    closed = len({find(x) for x in parent} - seen)
    loops = d.free_loops - loops_used + t.free_loops + closed
    return Diagram(combined, loops, boundary, name).normalized()


def insert_twists(d: Diagram, e: int, f: int, signs, name: str | None = None) -> Diagram:
    """
    Splice a tower of half-twists into the parallel pair (e, f).

    Each sign adds one crossing between the two strands; a tower of k
    positive twists is the slope-k twist region of the rational-tangle
    convention. Label 0 stands for a free loop, which is consumed and
    closed back up around its side of the tower. The pair must bound a
    common face; `edges_share_face` checks that in advance.
    """
    signs = tuple(signs)
    if not signs:
        return d
    tower = trivial_tangle(2)
    for s in signs:
        if s == 0:
            raise DiagramError("twist signs must be nonzero")
        tower = add_boundary_crossing(tower, 2, 1 if s > 0 else -1)
    return graft_tangle(d, e, f, tower, name)


def _substitute(c: Crossing, old: int, new: int) -> Crossing:
    return Crossing(tuple(new if e == old else e for e in c.slots), c.virtual)


def find_reidemeister_sites(d: Diagram, move: str) -> list:
    """All legal sites for one move kind, in a deterministic order."""
    if move == "R1-":
        return [
            (ci, j)
            for ci, c in enumerate(d.crossings)
            if not c.virtual
            for j in range(4)
            if c.slots[j] == c.slots[(j + 1) % 4]
        ]
    if move == "R1+":
        sites = [(0, v) for v in range(4)] if d.free_loops else []
        sites += [(e, v) for e in d.labels for v in range(4)]
        return sites
    if move == "R2-":
        out = []
        for face in faces(d):
            if _bigon_pattern(d, face) is not None:
                out.append(min(face))
        return out
    if move == "R2+":
        sites = [(0, 0)] if d.free_loops else []
        if d.free_loops:
            sites += [(0, e) for e in d.labels] + [(e, 0) for e in d.labels]
        for face in faces(d):
            on_face = sorted({d.edge_at(dart) for dart in face})
            for i, e in enumerate(on_face):
                for f in on_face[i + 1 :]:
                    if (e, f) not in sites:
                        sites.append((e, f))
                        sites.append((f, e))
        return sites
    if move == "R3":
        out = []
        for face in faces(d):
            if _triangle_pattern(d, face) is not None:
                out.append(min(face))
        return out
    raise DiagramError(f"unknown move {move!r}")


def _bigon_pattern(d: Diagram, face: list[Dart]):
    """R2-removable bigon: two distinct classical crossings whose two face
    edges each keep one parity (one strand over at both corners, the other
    under at both). That is equivalent to the dart slots having odd sum."""
    if len(face) != 2:
        return None
    (c1, s1), (c2, s2) = face
    if BOUNDARY in (c1, c2) or c1 == c2:
        return None
    if d.crossings[c1].virtual or d.crossings[c2].virtual:
        return None
    g1, g2 = d.edge_at((c1, s1)), d.edge_at((c2, s2))
    if g1 == g2 or (s1 + s2) % 2 == 0:
        return None
    return (c1, s1), (c2, s2)


def _triangle_pattern(d: Diagram, face: list[Dart]):
    """R3-movable triangle: three distinct classical crossings, three
    distinct edges, and a strand that is over (or under) at both of its
    corners; the fully cyclic over/under triangle admits no R3."""
    if len(face) != 3:
        return None
    corners = [c for c, _ in face]
    if BOUNDARY in corners or len(set(corners)) != 3:
        return None
    if any(d.crossings[c].virtual for c in corners):
        return None
    edges = [d.edge_at(dart) for dart in face]
    if len(set(edges)) != 3:
        return None
    for i in range(3):
        _, s_here = face[i]
        _, s_next = face[(i + 1) % 3]
        if (s_here % 2) == ((s_next - 1) % 2):
            return face
    return None


def apply_reidemeister(d: Diagram, move: str, site) -> Diagram:
    """
    Apply one Reidemeister move at an explicit site.

    Sites: R1- takes (crossing, slot) with equal labels at slot, slot+1;
    R1+ takes (arc, variant 0..3); R2- and R3 take any dart of the bigon
    or triangle face; R2+ takes an ordered arc pair (under, over), with 0
    meaning a free loop and (0, 0) the self-poke of one loop.
    Raises DiagramError when the site does not match the move's pattern.
    """
    if move == "R1-":
        ci, j = site
        if ci not in range(len(d.crossings)) or d.crossings[ci].virtual:
            raise DiagramError("R1- needs a classical crossing")
        c = d.crossings[ci]
        if c.slots[j % 4] != c.slots[(j + 1) % 4]:
            raise DiagramError("site does not match an R1 curl")
        a, b = c.slots[(j + 2) % 4], c.slots[(j + 3) % 4]
        return merge_edges(d, [(c.slots[j % 4], a), (a, b)], drop={ci}, name=d.name)

    if move == "R1+":
        edge, variant = site
        v = variant % 4
        if edge == 0:
            if d.free_loops < 1:
                raise DiagramError("no free loop to kink")
            n1, n2 = _fresh_labels(d, 2)
            slots = [0, 0, 0, 0]
            slots[v], slots[(v + 1) % 4] = n2, n2
            slots[(v + 2) % 4], slots[(v + 3) % 4] = n1, n1
            return Diagram(
                d.crossings + (Crossing(tuple(slots)),),
                d.free_loops - 1,
                d.boundary,
                d.name,
            ).normalized()
        if edge not in d.labels:
            raise DiagramError(f"no arc {edge} to kink")
        n1, n2 = _fresh_labels(d, 2)
        crossings, boundary = _relabel_second(d.crossings, d.boundary, edge, n1)
        slots = [0, 0, 0, 0]
        slots[v], slots[(v + 1) % 4] = n2, n2
        slots[(v + 2) % 4], slots[(v + 3) % 4] = edge, n1
        return Diagram(
            crossings + (Crossing(tuple(slots)),), d.free_loops, boundary, d.name
        ).normalized()

    if move == "R2-":
        pattern = _bigon_pattern(d, _face_from(d, tuple(site)))
        if pattern is None:
            raise DiagramError("site does not match an R2 bigon")
        (c1, s1), (c2, s2) = pattern
        g1, g2 = d.edge_at((c1, s1)), d.edge_at((c2, s2))
        q1, q2 = d.crossings[c1].slots, d.crossings[c2].slots
        unions = [
            (g1, q1[(s1 + 2) % 4]),
            (g1, q2[(s2 + 1) % 4]),
            (g2, q2[(s2 + 2) % 4]),
            (g2, q1[(s1 + 1) % 4]),
        ]
        return merge_edges(d, unions, drop={c1, c2}, name=d.name)

    if move == "R2+":
        e, f = site
        if e == 0 and f == 0:
            if d.free_loops < 1:
                raise DiagramError("no free loop to poke")
            # a bight of the loop folded back over the opposite arc; the
            # lens between the two crossings is a legal R2 bigon
            a, n, m, w = _fresh_labels(d, 4)
            poke = (Crossing((a, w, n, a)), Crossing((n, w, m, m)))
            return Diagram(
                d.crossings + poke, d.free_loops - 1, d.boundary, d.name
            ).normalized()
        if e and f and not edges_share_face(d, e, f):
            raise DiagramError(f"arcs {e} and {f} do not bound a common face")
        return insert_twists(d, e, f, (1, -1), name=d.name)

    if move == "R3":
        face = _face_from(d, tuple(site))
        if _triangle_pattern(d, face) is None:
            raise DiagramError("site does not match an R3 triangle")
        g = [d.edge_at(dart) for dart in face]
        u, v = [], []
        for i in range(3):
            c_i, s_i = face[i]
            c_n, s_n = face[(i + 1) % 3]
            u.append(d.crossings[c_i].slots[(s_i + 2) % 4])
            v.append(d.crossings[c_n].slots[(s_n + 1) % 4])
        new = list(d.crossings)
        for j in range(3):
            c_j, s_j = face[j]
            slots = list(d.crossings[c_j].slots)
            slots[s_j] = v[j]
            slots[(s_j + 2) % 4] = g[j]
            slots[(s_j - 1) % 4] = u[(j - 1) % 3]
            slots[(s_j + 1) % 4] = g[(j - 1) % 3]
            new[c_j] = Crossing(tuple(slots))
        return Diagram(tuple(new), d.free_loops, d.boundary, d.name).normalized()

    raise DiagramError(f"unknown move {move!r}")


def strong_canonical_form(d: Diagram):
    """
    Isomorphism-grade canonical key for closed diagrams.

    Each connected piece is encoded by a breadth-first relabeling started
    from every dart (crossing presentations may rotate by two slots, which
    keeps the understrand on slots 0 and 2), and the lexicographically
    smallest encoding wins. Unlike `canonical_form` this is insensitive to
    arc names, crossing order, and slot rotation, so equal keys mean equal
    diagrams up to renaming. Tangles are not supported.
    """
    if d.is_tangle:
        raise DiagramError("strong canonical form is for closed diagrams")
    darts = d.edge_darts()
    piece_uf = _UnionFind(range(len(d.crossings)))
    for dd in darts.values():
        (c1, _), (c2, _) = dd
        piece_uf.union(c1, c2)
    pieces: dict[int, list[int]] = {}
    for ci in range(len(d.crossings)):
        pieces.setdefault(piece_uf.find(ci), []).append(ci)

    def encode(start_ci: int, start_rot: int):
        from collections import deque

        quads = []
        new_edge: dict[int, int] = {}
        seen = {start_ci}
        queue = deque([(start_ci, start_rot)])
        while queue:
            ci, rot = queue.popleft()
            c = d.crossings[ci]
            pres = c.slots[rot:] + c.slots[:rot]
            quad = []
            for e in pres:
                if e not in new_edge:
                    new_edge[e] = len(new_edge) + 1
                quad.append(new_edge[e])
            quads.append((tuple(quad), c.virtual))
            for k, e in enumerate(pres):
                (a1, s1), (a2, s2) = darts[e]
                other = (a2, s2) if (a1, s1) == (ci, (rot + k) % 4) else (a1, s1)
                if other[0] not in seen:
                    seen.add(other[0])
                    queue.append((other[0], other[1] - other[1] % 2))
        return tuple(quads)

    keys = []
    for members in pieces.values():
        keys.append(min(encode(ci, r) for ci in members for r in (0, 2)))
    return (tuple(sorted(keys)), d.free_loops)
