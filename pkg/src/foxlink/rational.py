"""
Rational tangles in Conway notation, their slopes, and twist moves.

T(a1, ..., an) stacks twist blocks alternately against the bottom and the
right side of a crossingless 2-tangle; its slope is the continued fraction
an + 1/(a(n-1) + ... + 1/a1), kept as a formal pair (p, q) so that zero
coefficients and the infinite tangle (1, 0) need no special cases.
Boundary positions run counterclockwise from the southwest corner. The Fox
k-colorings of such a tangle form a plane: one degree of freedom shifts all
colors at once, the other moves the corner colors along the slope, which is
how p/q can be read off any nontrivial coloring.

The moves here substitute twist regions for a pair of parallel strands: an
("n", k) move inserts k half-twists and permutes k-colorings bijectively,
and a ("pq", p, q) move grafts the whole p/q tangle, which preserves the
group of p-colorings. move_search chains such moves breadth-first, looking
for a sequence that lands on a trivial diagram.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, replace
from math import gcd

from .diagram import (
    BOUNDARY,
    Diagram,
    DiagramError,
    add_boundary_crossing,
    add_cup,
    apply_reidemeister,
    canonical_form,
    faces,
    find_reidemeister_sites,
    graft_tangle,
    insert_twists,
    rotate_boundary,
    trivial_tangle,
)

__all__ = [
    "MoveSpec",
    "RationalTangle",
    "SEARCH_DEPTH_CAP",
    "SEARCH_TWIST_CAP",
    "apply_move",
    "conway_fraction",
    "denominator_closure",
    "infinity_tangle",
    "move_search",
    "move_sites",
    "numerator_closure",
    "parse_conway",
    "rational_boundary_relation",
    "rational_tangle_diagram",
]


def conway_fraction(coeffs) -> tuple[int, int]:
    """
    Evaluate an + 1/(a(n-1) + ... + 1/a1) as a reduced pair (p, q), q >= 0.

    The arithmetic is formal: each step maps (p, q) to (a*p + q, p), which
    tolerates zero coefficients and infinite intermediates. Consecutive
    pairs differ by a unimodular step, so the result is automatically
    coprime. The empty list gives the 0-tangle (0, 1); a genuine infinity
    comes out as (1, 0).
    """
    coeffs = tuple(coeffs)
    for a in coeffs:
        if not isinstance(a, int) or isinstance(a, bool):
            raise ValueError(f"coefficients must be integers, got {a!r}")
    if not coeffs:
        return (0, 1)
    p, q = 1, 0
    for a in coeffs:
        p, q = a * p + q, p
    if q < 0:
        p, q = -p, -q
    return (1, 0) if q == 0 else (p, q)


@dataclass(frozen=True)
class RationalTangle:
    """
    A 2-string tangle in Conway notation T(a1, ..., an).

    Coefficients must be nonzero integers; negative entries produce mirror
    twist blocks. The empty tuple is the 0-tangle, two horizontal strands.
    """

    coefficients: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(self.coefficients)
        for a in coeffs:
            if not isinstance(a, int) or isinstance(a, bool) or a == 0:
                raise ValueError(f"Conway coefficients must be nonzero integers, got {a!r}")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def fraction(self) -> tuple[int, int]:
        """The reduced slope (p, q) of the tangle."""
        return conway_fraction(self.coefficients)

    @property
    def notation(self) -> str:
        return "C(" + ",".join(str(a) for a in self.coefficients) + ")"


_CONWAY_RE = re.compile(r"\s*C\(\s*(?P<body>[^()]*?)\s*\)\s*\Z")


def parse_conway(text: str) -> RationalTangle:
    """Read Conway notation "C(a1,a2,...)"; "C()" is the 0-tangle."""
    m = _CONWAY_RE.match(text)
    if not m:
        raise ValueError(f"not Conway notation: {text!r}")
    body = m.group("body")
    if not body:
        return RationalTangle(())
    try:
        coeffs = tuple(int(part) for part in body.split(","))
    except ValueError as exc:
        raise ValueError(f"bad Conway coefficient in {text!r}") from exc
    return RationalTangle(coeffs)


def infinity_tangle() -> Diagram:
    """
    The 0-crossing vertical 2-tangle: left corners joined and right corners
    joined. It is the rotation of the 0-tangle and carries slope (1, 0).
    """
    return rotate_boundary(trivial_tangle(2), 1)


def _twist_stack(coeffs, name: str | None = None) -> Diagram:
    """
    Build alternating twist blocks over a crossingless base.

    Block i sits on the right side when n - i is even (the last block is
    always on the right) and at the bottom otherwise; the base is the
    horizontal 0-tangle when n is odd or zero and the vertical one when n
    is even. Positive right twists use positive crossings and positive
    bottom twists the mirror kind: that is the sign convention under which
    the slope relations of rational_boundary_relation hold for the built
    diagram. Zero entries add no crossings but still count toward parity.
    """
    n = len(coeffs)
    d = trivial_tangle(2) if n % 2 or n == 0 else infinity_tangle()
    for i, a in enumerate(coeffs, 1):
        right = (n - i) % 2 == 0
        pos = 2 if right else 1
        sign = (1 if right else -1) * (1 if a > 0 else -1)
        for _ in range(abs(a)):
            d = add_boundary_crossing(d, pos, sign)
    return replace(d, name=name) if name is not None else d


def rational_tangle_diagram(rt) -> Diagram:
    """
    The 2-tangle diagram of rt, with exactly sum(|ai|) crossings. Raw
    coefficient iterables are accepted and validated. The empty notation
    yields the horizontal 0-tangle, the identity for grafting.
    """
    if not isinstance(rt, RationalTangle):
        rt = RationalTangle(tuple(rt))
    return _twist_stack(rt.coefficients, name=rt.notation)


def numerator_closure(d: Diagram, name: str | None = None) -> Diagram:
    """Close a 4-ended tangle with an arc across the top and one across the bottom."""
    if len(d.boundary) != 4:
        raise DiagramError("numerator closure needs a 4-ended tangle")
    out = add_cup(add_cup(d, 3), 1)
    return replace(out, name=name) if name is not None else out


def denominator_closure(d: Diagram, name: str | None = None) -> Diagram:
    """Close a 4-ended tangle with an arc down each side."""
    if len(d.boundary) != 4:
        raise DiagramError("denominator closure needs a 4-ended tangle")
    out = add_cup(add_cup(d, 2), 1)
    return replace(out, name=name) if name is not None else out


def rational_boundary_relation(rt, k: int, x1: int, x: int) -> tuple[int, int, int]:
    """
    The corner colors a Fox k-coloring of the tangle must take, given the
    southwest corner color x1 and the slope parameter x.

    Corners are named clockwise from the southwest: x1 SW, x2 NW, x3 NE,
    x4 SE. In the counterclockwise boundary numbering that places x1 at
    position 1, x4 at position 2, x3 at position 3 and x2 at position 4.
    With slope p/q the relations are

        x2 = x1 + q*(x - x1),  x4 = x1 + p*(x - x1),  x3 = x2 + x4 - x1,

    all mod k. Every boundary coloring of the tangle diagram arises this
    way, so a nontrivial coloring reads the slope back off the corners:
    (x4 - x1)/(x2 - x1) = p/q whenever the division is defined mod k.
    """
    if k < 2:
        raise ValueError("the modulus must be at least 2")
    if not isinstance(rt, RationalTangle):
        rt = RationalTangle(tuple(rt))
    p, q = rt.fraction
    x2 = (x1 + q * (x - x1)) % k
    x4 = (x1 + p * (x - x1)) % k
    x3 = (x2 + x4 - x1) % k
    return (x2, x3, x4)


# -- twist moves ---------------------------------------------------------------

SEARCH_DEPTH_CAP = 8
SEARCH_TWIST_CAP = 16


def _validate_kind(kind) -> tuple:
    kind = tuple(kind)
    if kind and kind[0] == "n":
        if len(kind) != 2 or not isinstance(kind[1], int) or kind[1] == 0:
            raise ValueError("an n-move needs a single nonzero twist count")
        return kind
    if kind and kind[0] == "pq":
        if len(kind) != 3 or not all(isinstance(x, int) for x in kind[1:]):
            raise ValueError("a pq-move needs integer p and q")
        p, q = kind[1], kind[2]
        if q < 0:
            p, q = -p, -q
        if gcd(p, q) != 1:
            raise ValueError(f"p/q must be a reduced fraction, got {kind[1]}/{kind[2]}")
        return ("pq", p, q)
    raise ValueError(f"unknown move kind {kind!r}")


@dataclass(frozen=True)
class MoveSpec:
    """
    A twist move at a marked site.

    kind is ("n", k), replacing two parallel strands by k half-twists
    (k < 0 for the mirror kind), or ("pq", p, q), substituting the p/q
    rational tangle for the identity tangle there. site is an ordered pair
    (e, f) of arcs bounding a common face; e is rerouted through the bottom
    of the inserted tangle and f through the top, and the label 0 stands
    for a free loop.
    """

    kind: tuple
    site: tuple[int, int]

    def __post_init__(self):
        site = tuple(self.site)
        if len(site) != 2 or not all(isinstance(x, int) for x in site):
            raise ValueError(f"site must be a pair of arc labels, got {site!r}")
        object.__setattr__(self, "kind", _validate_kind(self.kind))
        object.__setattr__(self, "site", site)


def _twist_bijection(k: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """
    Push the strand pair through |k| half-twists symbolically. Colors are
    linear forms c0*b + c1*a in the entering pair, stored as (c0, c1), and
    the right lane is listed first. One positive half-twist takes lanes
    (l, r) to (r, 2r - l); a negative one inverts that.
    """
    l, r = (0, 1), (1, 0)
    for _ in range(abs(k)):
        if k > 0:
            l, r = r, (2 * r[0] - l[0], 2 * r[1] - l[1])
        else:
            l, r = (2 * l[0] - r[0], 2 * l[1] - r[1]), l
    return r, l


def _fraction_coefficients(p: int, q: int) -> tuple[int, ...]:
    """
    A Conway coefficient list evaluating to p/q, found by floor-division
    Euclid on the outermost entry. Only the final entry can be zero or
    negative (that happens for |p| < q and for p < 0), and _twist_stack
    tolerates both.
    """
    out = []
    while q:
        a = p // q
        out.append(a)
        p, q = q, p - a * q
    return tuple(reversed(out))


def _fraction_tangle(p: int, q: int) -> Diagram:
    if q == 0:
        return infinity_tangle()
    return _twist_stack(_fraction_coefficients(p, q))


def _kind_growth(kind) -> int:
    """Crossings one application of the move adds before any reduction."""
    if kind[0] == "n":
        return abs(kind[1])
    _, p, q = kind
    return sum(abs(a) for a in _fraction_coefficients(p, q)) if q else 0


def _mirror_kind(kind) -> tuple:
    if kind[0] == "n":
        return ("n", -kind[1])
    return _validate_kind(("pq", -kind[1], kind[2]))


def apply_move(d: Diagram, m: MoveSpec) -> Diagram:
    """
    Substitute a twist region for the identity tangle at m.site.

    An ("n", k) move inserts k half-twists between the two arcs; before
    surgery the strand-end bijection is rederived symbolically and checked
    against (b, a) -> (k(b-a) + b, k(b-a) + a), the reason k-colorings are
    preserved. A ("pq", p, q) move grafts the p/q rational tangle: mod p it
    forces the pair of corners on each strand to share a color, so it acts
    on p-colorings exactly like the identity tangle it replaces.
    """
    e, f = m.site
    if m.kind[0] == "n":
        k = m.kind[1]
        if _twist_bijection(k) != ((k + 1, -k), (k, 1 - k)):
            raise AssertionError("half-twist coloring bijection self-check failed")
        return insert_twists(d, e, f, [1 if k > 0 else -1] * abs(k), name=d.name)
    _, p, q = m.kind
    return graft_tangle(d, e, f, _fraction_tangle(p, q), name=d.name)


def move_sites(d: Diagram) -> list[tuple[int, int]]:
    """
    Ordered pairs of distinct arcs bounding a common face: everywhere a
    twist move can act. Free loops bound no face and are not proposed.
    """
    pairs = set()
    for face in faces(d):
        labels = {
            d.boundary[s] if ci == BOUNDARY else d.crossings[ci].slots[s]
            for ci, s in face
        }
        pairs.update((e, f) for e in labels for f in labels if e != f)
    return sorted(pairs)


def untwist(d: Diagram) -> Diagram:
    """Greedily undo kinks and opposite bigons until neither move applies."""
    while True:
        for move in ("R1-", "R2-"):
            sites = find_reidemeister_sites(d, move)
            if sites:
                d = apply_reidemeister(d, move, sites[0])
                break
        else:
            return d


def move_search(
    d: Diagram,
    kinds,
    depth: int,
    target=None,
    max_crossings: int | None = None,
    max_states: int = 4000,
):
    """
    Breadth-first hunt for a move sequence taking d to a diagram satisfying
    target (by default: no crossings, i.e. a trivial link).

    Each requested kind is tried together with its mirror at every site,
    and results are untwisted greedily before being enqueued. States are
    deduplicated by the weak canonical form only, so the same link can
    reappear under a different presentation; a None result is therefore
    inconclusive, while a returned path is a replayable certificate. The
    search gives up quietly once max_states distinct diagrams have been
    seen, and refuses up front when depth exceeds SEARCH_DEPTH_CAP or a
    single move would add more than SEARCH_TWIST_CAP crossings.
    """
    if not kinds:
        raise ValueError("no move kinds to search with")
    if not 0 <= depth <= SEARCH_DEPTH_CAP:
        raise ValueError(f"depth must be between 0 and {SEARCH_DEPTH_CAP}")
    kindlist = []
    for kind in sorted(set(map(tuple, kinds))):
        kind = _validate_kind(kind)
        if _kind_growth(kind) > SEARCH_TWIST_CAP:
            raise ValueError(f"{kind!r} adds more than {SEARCH_TWIST_CAP} crossings per step")
        for variant in (kind, _mirror_kind(kind)):
            if variant not in kindlist:
                kindlist.append(variant)
    if target is None:
        target = lambda x: not x.crossings
    start = untwist(d)
    if target(start):
        return []
    cap = max_crossings if max_crossings is not None else len(start.crossings) + 8
    seen = {canonical_form(start)}
    frontier = [(start, [])]
    for _ in range(depth):
        grown = []
        for cur, path in frontier:
            for kind in kindlist:
                for site in move_sites(cur):
                    m = MoveSpec(kind, site)
                    out = untwist(apply_move(cur, m))
                    if len(out.crossings) > cap:
                        continue
                    key = canonical_form(out)
                    if key in seen:
                        continue
                    seen.add(key)
                    if target(out):
                        return path + [m]
                    if len(seen) >= max_states:
                        return None
                    grown.append((out, path + [m]))
        frontier = grown
        if not frontier:
            break
    return None
