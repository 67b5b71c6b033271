"""
Fox colorings of link and tangle diagrams over Z_k.

A coloring assigns an element of Z_k to every arc of the diagram so that at
each classical crossing twice the over-arc color equals the sum of the two
under-arc colors. An arc here is a maximal run of edges: the over strand
keeps its color through a classical crossing, and both strands keep theirs
through a virtual crossing (virtual crossings impose no relation at all).

The solution sets are finite abelian groups. Over a prime modulus they are
vector spaces and Gaussian elimination suffices; over composite k the group
structure comes from the Smith normal form of the integer relation matrix.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import prod

from .diagram import (
    Diagram,
    DiagramError,
    component_edges,
    crossing_variants,
    twist_family,
)
from .linalg import (
    Subspace,
    kernel_mod_p,
    rref_mod_p,
    solution_group_mod_k,
)

__all__ = [
    "ColoringSpace",
    "ReducedColoringSpace",
    "ABFParams",
    "LawViolation",
    "arc_classes",
    "coloring_matrix",
    "col_group",
    "reduced_group",
    "tri",
    "is_valid_coloring",
    "check_quadruple",
    "check_k_quadruple",
    "bridge_count",
    "boundary_colorings",
    "abf_colorings",
    "brute_force_count",
    "search_forced_monochromatic",
]


class LawViolation(AssertionError):
    """A counting law that must hold for classical diagrams failed."""


def _is_prime(k: int) -> bool:
    if k < 2:
        return False
    f = 2
    while f * f <= k:
        if k % f == 0:
            return False
        f += 1
    return True


def arc_classes(d: Diagram) -> tuple[list[tuple[int, ...]], int]:
    """
    Group edge labels into arcs: the over strand of a classical crossing
    and both strands of a virtual one carry their color through. Returns
    (classes as sorted label tuples, count of free loops). Free loops are
    arcs too; they carry one unknown each but no labels.
    """
    labels = d.labels
    parent = {e: e for e in labels}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in d.crossings:
        a, b, cc, dd = c.slots
        parent[find(b)] = find(dd)
        if c.virtual:
            parent[find(a)] = find(cc)
    groups: dict[int, list[int]] = {}
    for e in labels:
        groups.setdefault(find(e), []).append(e)
    classes = sorted(tuple(sorted(g)) for g in groups.values())
    return classes, d.free_loops


def coloring_matrix(d: Diagram, k: int) -> list[list[int]]:
    """
    One row per classical crossing: +2 at the over arc, -1 at each under
    arc, entries reduced into [0, k). Columns follow arc_classes order,
    arcs first and free loops last (loop columns are identically zero).
    A crossingless diagram yields no rows at all (a 0 x ncols matrix).

    >>> coloring_matrix(Diagram((), 1), 3)   # zero-crossing unknot
    []
    """
    if k < 2:
        raise ValueError("modulus must be at least 2")
    classes, loops = arc_classes(d)
    index = {e: i for i, cls in enumerate(classes) for e in cls}
    ncols = len(classes) + loops
    rows = []
    for c in d.crossings:
        if c.virtual:
            continue
        row = [0] * ncols
        row[index[c.slots[1]]] += 2
        row[index[c.slots[0]]] -= 1
        row[index[c.slots[2]]] -= 1
        rows.append([x % k for x in row])
    return rows


@dataclass(frozen=True)
class ColoringSpace:
    """The group of colorings of one diagram, with its cyclic decomposition.

    columns names the unknowns: a tuple of arc labels per arc, then a
    ("loop", i) marker per free loop. basis[i] generates a cyclic summand
    of order divisors[i]; together they generate the whole group.
    """

    k: int
    columns: tuple
    divisors: tuple[int, ...]
    basis: tuple[tuple[int, ...], ...]
    reduced_divisors: tuple[int, ...]

    @property
    def size(self) -> int:
        return prod(self.divisors)

    def as_arc_maps(self) -> list[dict]:
        out = []
        for vec in self.basis:
            m: dict = {}
            for key, val in zip(self.columns, vec):
                if key and key[0] == "loop":
                    m[f"loop{key[1]}"] = val
                else:
                    for label in key:
                        m[label] = val
            out.append(m)
        return out

    def report(self) -> dict:
        return {
            "k": self.k,
            "divisors": list(self.divisors),
            "size": self.size,
            "reduced_dim": len(self.reduced_divisors),
        }


@dataclass(frozen=True)
class ReducedColoringSpace:
    """Coloring group modulo the monochromatic colorings."""

    k: int
    divisors: tuple[int, ...]
    basis: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return prod(self.divisors)

    @property
    def dim(self) -> int:
        return len(self.divisors)


def _columns(d: Diagram):
    classes, loops = arc_classes(d)
    return tuple(classes) + tuple(("loop", i + 1) for i in range(loops))


def _group_from_matrix(rows, ncols, k):
    """(divisors, basis) of the solution group of rows.x = 0 over Z_k."""
    if ncols == 0:
        return (), ()
    if _is_prime(k):
        kern = kernel_mod_p(rows, ncols, k)
        basis, _ = rref_mod_p(kern, k) if kern else ([], [])
        return tuple([k] * len(basis)), tuple(tuple(v) for v in basis)
    divisors, gens = solution_group_mod_k(rows, ncols, k)
    gens = sorted(gens, key=lambda g: g[1])
    return tuple(divisors), tuple(tuple(v) for v, _ in gens)


def col_group(d: Diagram, k: int) -> ColoringSpace:
    """
    The group of colorings over Z_k with its elementary divisors.

    >>> from foxlink.diagram import parse_pd
    >>> col_group(parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"), 3).size
    9
    """
    cols = _columns(d)
    rows = coloring_matrix(d, k)
    divisors, basis = _group_from_matrix(rows, len(cols), k)
    red, _ = _group_from_matrix([r[:-1] for r in rows], max(len(cols) - 1, 0), k)
    return ColoringSpace(k, cols, divisors, basis, red)


def reduced_group(d: Diagram, k: int) -> ReducedColoringSpace:
    """
    Colorings modulo the k monochromatic ones. Substituting away one
    unknown (every coloring is a reduced representative plus a constant)
    realizes the quotient as the solution group of the matrix with its
    last column dropped.
    """
    cols = _columns(d)
    rows = coloring_matrix(d, k)
    if not cols:
        return ReducedColoringSpace(k, (), ())
    trimmed = [row[:-1] for row in rows]
    divisors, basis = _group_from_matrix(trimmed, len(cols) - 1, k)
    return ReducedColoringSpace(k, divisors, basis)


def tri(d: Diagram) -> int:
    """
    Number of colorings over Z_3 (tricolorings), monochromatic included.

    >>> from foxlink.diagram import parse_pd
    >>> tri(parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"))
    9
    """
    return col_group(d, 3).size


def is_valid_coloring(d: Diagram, k: int, arc_map: dict) -> bool:
    """Check the crossing relations directly for a full arc assignment."""
    for c in d.crossings:
        if c.virtual:
            if arc_map[c.slots[0]] != arc_map[c.slots[2]]:
                return False
            if arc_map[c.slots[1]] != arc_map[c.slots[3]]:
                return False
            continue
        if arc_map[c.slots[1]] != arc_map[c.slots[3]]:
            return False
        lhs = 2 * arc_map[c.slots[1]] - arc_map[c.slots[0]] - arc_map[c.slots[2]]
        if lhs % k:
            return False
    return True


def check_quadruple(d: Diagram, ci: int) -> dict:
    """
    Tricoloring counts of the four local variants at crossing ci (positive
    switch, negative switch, oriented smoothing, other smoothing). Exactly
    three of the four counts agree and the fourth is three times bigger;
    anything else raises LawViolation.
    """
    values = tuple(tri(v) for v in crossing_variants(d, ci))
    _check_one_bigger(values, 3)
    return {"values": values, "largest_index": values.index(max(values))}


def _check_one_bigger(values, factor):
    lo = min(values)
    if sorted(values) != [lo] * (len(values) - 1) + [factor * lo]:
        raise LawViolation(
            f"expected {len(values) - 1} equal counts and one {factor}x "
            f"bigger, got {values}"
        )


def check_k_quadruple(d: Diagram, ci: int, k: int) -> dict:
    """
    Coloring counts over Z_k of the k+1 diagrams built at crossing ci from
    j = 0..k-1 half-twists plus the opposite smoothing (k prime). Verifies
    that k counts agree and one is k times bigger, and that the signed
    counts (each count weighted by (-1)**its k-logarithm) sum to zero,
    which is the k+1 term skein relation for these counts.
    """
    if not _is_prime(k):
        raise ValueError("the twist-family law needs a prime modulus")
    family = twist_family(d, ci, k)
    values = tuple(col_group(x, k).size for x in family)
    _check_one_bigger(values, k)
    signed = []
    for v in values:
        m = 0
        while k**m < v:
            m += 1
        if k**m != v:
            raise LawViolation(f"count {v} is not a power of {k}")
        signed.append((-1) ** m * v)
    if sum(signed) != 0:
        raise LawViolation(f"signed counts {signed} do not cancel")
    return {"values": values, "signed": tuple(signed)}


def bridge_count(d: Diagram) -> int:
    """
    Number of maximal overpasses of the diagram: arcs that cross over at
    least once, plus one for every component (or free loop) that never
    does. The coloring dimension over any prime is bounded by this count.
    """
    if not d.crossings:
        raise DiagramError("bridge count needs at least one crossing")
    if not d.is_classical:
        raise DiagramError("bridge count is for classical diagrams")
    classes, loops = arc_classes(d)
    cls_of = {e: cls for cls in classes for e in cls}
    over = {cls_of[c.slots[1]] for c in d.crossings}
    bridges = len(over)
    for comp in component_edges(d):
        if not any(cls_of[e] in over for e in comp):
            bridges += 1
    return bridges + loops


def boundary_colorings(d: Diagram, p: int) -> Subspace:
    """
    Image of the coloring space on the tangle boundary: each coloring read
    off at the 2n boundary positions in cyclic order, as a subspace of
    Z_p^(2n).
    """
    if not d.is_tangle:
        raise DiagramError("boundary colorings require a tangle")
    if not _is_prime(p):
        raise ValueError("boundary images are computed over prime moduli")
    cols = _columns(d)
    index = {}
    for i, key in enumerate(cols):
        if not (key and key[0] == "loop"):
            for e in key:
                index[e] = i
    rows = coloring_matrix(d, p)
    kern = kernel_mod_p(rows, len(cols), p)
    projected = [[v[index[e]] for e in d.boundary] for v in kern]
    return Subspace(projected, len(d.boundary), p)


@dataclass(frozen=True)
class ABFParams:
    """Alexander-Burau-Fox twist: color change c = (1-t)a + t b mod p."""

    p: int
    t: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError("modulus must be prime")
        if self.t % self.p == 0:
            raise ValueError("twist unit must be invertible")


def abf_colorings(d: Diagram, params: ABFParams, orientation) -> ColoringSpace:
    """
    Colorings where passing under a strand of color a turns color b into
    (1-t)a + tb, read along the orientation. At t = -1 this is the Fox
    rule. Orientation matters: the incoming under-edge plays b.
    """
    if not d.is_classical:
        raise DiagramError("the twisted rule is defined for classical diagrams")
    p, t = params.p, params.t
    cols = _columns(d)
    index = {}
    for i, key in enumerate(cols):
        if not (key and key[0] == "loop"):
            for e in key:
                index[e] = i
    heads = orientation.as_dict()
    rows = []
    for ci, c in enumerate(d.crossings):
        row = [0] * len(cols)
        under_in = 0 if heads[c.slots[0]] == (ci, 0) else 2
        under_out = 2 - under_in
        row[index[c.slots[1]]] += (1 - t) % p
        row[index[c.slots[under_in]]] += t % p
        row[index[c.slots[under_out]]] -= 1
        rows.append([x % p for x in row])
    divisors, basis = _group_from_matrix(rows, len(cols), p)
    red, _ = _group_from_matrix([r[:-1] for r in rows], max(len(cols) - 1, 0), p)
    return ColoringSpace(p, cols, divisors, basis, red)


def brute_force_count(d: Diagram, k: int) -> int:
    """
    Count colorings by enumerating every assignment of Z_k values to the
    arcs. Exponential; the independent check behind the linear algebra.
    """
    import numpy as np

    classes, loops = arc_classes(d)
    rows = [
        row for row in coloring_matrix(d, k) if any(row)
    ]
    n = len(classes)
    if n == 0:
        return k**loops
    mat = np.array([row[:n] for row in rows], dtype=np.int64)
    total = k**n
    powers = k ** np.arange(n, dtype=np.int64)
    count = 0
    chunk = 1 << 18
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        digits = (idx[:, None] // powers) % k
        if len(mat):
            ok = (digits @ mat.T % k == 0).all(axis=1)
            count += int(ok.sum())
        else:
            count += len(idx)
    return count * k**loops


def search_forced_monochromatic(
    n: int, p: int, attempts: int, max_crossings: int, rng
) -> list[tuple[Diagram, int]]:
    """
    Random search for virtual n-tangles whose boundary image has dimension
    below n (for n = 1: below-full already means monochromatic-forcing is
    impossible classically, so any hit would be a virtual phenomenon).
    Returns the (diagram, dimension) pairs found; empty list means the
    search saw nothing, not that nothing exists.
    """
    from .diagram import add_boundary_crossing, trivial_tangle

    found = []
    for _ in range(attempts):
        d = trivial_tangle(n)
        for _ in range(rng.randrange(1, max_crossings + 1)):
            pos = rng.randrange(1, 2 * n + 1)
            sign = rng.choice([1, -1])
            virtual = rng.random() < 0.5
            d = add_boundary_crossing(d, pos, sign, virtual)
        dim = boundary_colorings(d, p).dim
        if dim < n:
            found.append((d, dim))
    return found
