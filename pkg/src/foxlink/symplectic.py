"""
The alternating form on tangle-boundary colorings and its Lagrangians.

Colors at the 2n boundary points of a tangle form Z_p^2n. Every coloring
that extends over a classical tangle satisfies the alternating condition
x1 - x2 + x3 - ... - x_2n = 0; that hyperplane V' has basis
f_k = e_k + e_{k+1} (k = 1..2n-1) and carries the alternating form

    phi(f_i, f_j) = +1 if j = i+1, -1 if j = i-1, 0 otherwise,

whose radical is exactly the line of monochromatic colorings. The quotient
Z_p^{2n-2} is symplectic. A classical n-tangle always paints an
n-dimensional totally isotropic subspace of V' (a pre-Lagrangian), which
descends to a Lagrangian of the quotient. Adding a crossing at two
adjacent boundary points acts on colorings as a symplectic transvection,
and adding a cup contracts one symplectic pair away; those two facts drive
the verification here. Over odd primes the crossing transvections generate
the full symplectic group, so every Lagrangian is the image of the trivial
tangle under some crossing word; realize_lagrangian recovers such a word
by breadth-first search (for p = 2 it can genuinely fail).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import prod

from .coloring import boundary_colorings
from .diagram import Diagram, DiagramError, is_planar
from .linalg import Subspace, kernel_mod_p

__all__ = [
    "BoundarySpace",
    "TransvectionWord",
    "alternating_sum",
    "apply_linear",
    "apply_to_subspace",
    "apply_transvection_word",
    "crossing_action",
    "cup_contraction",
    "enumerate_lagrangians",
    "form_value",
    "is_lagrangian",
    "is_pre_lagrangian",
    "lagrangian_count",
    "realize_lagrangian",
    "reduce_mod_trivial",
    "reduced_form_value",
    "tangle_image_lagrangian",
    "transvection",
    "trivial_tangle_image",
]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


@dataclass(frozen=True)
class BoundarySpace:
    """
    The coloring space of 2n boundary points over Z_p, with the standard
    basis e_1..e_2n and the alternating basis f_k = e_k + e_{k+1} on the
    hyperplane of alternating-sum-zero vectors.
    """

    n: int
    p: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a tangle boundary needs at least one strand pair")
        if not _is_prime(self.p):
            raise ValueError(f"the modulus must be prime, got {self.p}")

    @property
    def points(self) -> int:
        return 2 * self.n

    @property
    def reduced_dim(self) -> int:
        return 2 * self.n - 2

    def check(self, v) -> list[int]:
        v = [x % self.p for x in v]
        if len(v) != self.points:
            raise ValueError(f"vector length {len(v)}, expected {self.points}")
        return v

    def trivial_vector(self) -> list[int]:
        return [1] * self.points


def alternating_sum(sp: BoundarySpace, v) -> int:
    """x1 - x2 + x3 - ... mod p; zero on everything a classical tangle paints."""
    v = sp.check(v)
    return sum(x if i % 2 == 0 else -x for i, x in enumerate(v)) % sp.p


def _to_f(sp: BoundarySpace, v) -> list[int]:
    """Coordinates of an alternating vector in the basis f_1..f_{2n-1}."""
    v = sp.check(v)
    coeffs = []
    prev = 0
    for x in v[:-1]:
        prev = (x - prev) % sp.p
        coeffs.append(prev)
    if coeffs[-1] != v[-1] % sp.p:
        raise ValueError("vector outside the alternating subspace")
    return coeffs


def _from_f(sp: BoundarySpace, coeffs) -> list[int]:
    coeffs = [c % sp.p for c in coeffs]
    if len(coeffs) != sp.points - 1:
        raise ValueError(f"expected {sp.points - 1} alternating coordinates")
    out = []
    prev = 0
    for c in coeffs:
        out.append((prev + c) % sp.p)
        prev = c
    out.append(prev)
    return out


def _tridiagonal_form(u, v, p: int) -> int:
    return sum(u[i] * v[i + 1] - u[i + 1] * v[i] for i in range(len(u) - 1)) % p


def form_value(sp: BoundarySpace, u, v) -> int:
    """
    The alternating form of two boundary colorings, both given in point
    coordinates and required to satisfy the alternating condition.
    """
    return _tridiagonal_form(_to_f(sp, u), _to_f(sp, v), sp.p)


def reduced_form_value(sp: BoundarySpace, u, v) -> int:
    """The symplectic form on the quotient by monochromatic colorings."""
    u = [x % sp.p for x in u]
    v = [x % sp.p for x in v]
    if len(u) != sp.reduced_dim or len(v) != sp.reduced_dim:
        raise ValueError(f"reduced vectors have {sp.reduced_dim} coordinates")
    return _tridiagonal_form(u, v, sp.p)


def transvection(sp: BoundarySpace, v, b) -> list[int]:
    """v - phi(v, b) * b, the isometry a crossing induces along b."""
    b = sp.check(b)
    if not any(b):
        raise ValueError("transvection direction must be nonzero")
    scale = form_value(sp, v, b)
    return [(x - scale * y) % sp.p for x, y in zip(sp.check(v), b)]


def trivial_tangle_image(sp: BoundarySpace) -> Subspace:
    """
    The colorings painted by the trivial tangle joining points 2i-1 and 2i:
    the span of e_1+e_2, e_3+e_4, ..., the base pre-Lagrangian.
    """
    rows = []
    for i in range(sp.n):
        r = [0] * sp.points
        r[2 * i] = r[2 * i + 1] = 1
        rows.append(r)
    return Subspace(rows, sp.points, sp.p)


def reduce_mod_trivial(sp: BoundarySpace, s: Subspace) -> Subspace:
    """
    Project a space of boundary colorings to the symplectic quotient
    Z_p^{2n-2}: rewrite in the f basis, kill the monochromatic direction
    f_1 + f_3 + ... + f_{2n-1}, and keep the first 2n-2 coordinates.
    """
    if s.ncols != sp.points or s.p != sp.p:
        raise ValueError("subspace does not live on this boundary")
    if not s.contains(sp.trivial_vector()):
        raise ValueError("space lacks the monochromatic colorings")
    reduced = []
    for row in s.rows:
        c = _to_f(sp, row)
        last = c[-1]
        reduced.append([(x - last) % sp.p if i % 2 == 0 else x for i, x in enumerate(c[:-1])])
    return Subspace(reduced, sp.reduced_dim, sp.p)


def is_lagrangian(sp: BoundarySpace, s: Subspace):
    """
    Whether s is a Lagrangian of the reduced symplectic space: dimension
    n-1 with the form vanishing throughout. Returns (verdict, certificate);
    the certificate names the failing dimension or a basis pair with a
    nonzero form value.
    """
    if s.ncols != sp.reduced_dim or s.p != sp.p:
        raise ValueError("subspace does not live in the reduced space")
    if s.dim != sp.n - 1:
        return False, ("dimension", s.dim, sp.n - 1)
    for i, u in enumerate(s.rows):
        for v in s.rows[i + 1 :]:
            val = reduced_form_value(sp, u, v)
            if val:
                return False, ("pair", u, v, val)
    return True, None


def is_pre_lagrangian(sp: BoundarySpace, s: Subspace):
    """
    Whether s is an n-dimensional totally isotropic space of boundary
    colorings containing the monochromatic line. Returns (verdict, reason).
    """
    if s.ncols != sp.points or s.p != sp.p:
        raise ValueError("subspace does not live on this boundary")
    if not s.contains(sp.trivial_vector()):
        return False, "missing the monochromatic colorings"
    for row in s.rows:
        if alternating_sum(sp, row):
            return False, f"row {row} breaks the alternating condition"
    if s.dim != sp.n:
        return False, f"dimension {s.dim}, expected {sp.n}"
    for i, u in enumerate(s.rows):
        for v in s.rows[i + 1 :]:
            val = form_value(sp, u, v)
            if val:
                return False, f"form value {val} on a basis pair"
    return True, None


# -- crossing and cup actions ---------------------------------------------------


def crossing_action(sp: BoundarySpace, i: int, sign: int):
    """
    The linear map a crossing at boundary positions (i, i+1), cyclic and
    1-based, induces on colorings. For sign +1 the pair transforms as
    (x_i, x_{i+1}) -> (x_{i+1}, 2x_{i+1} - x_i); sign -1 gives the inverse
    (the mirror crossing). On the alternating hyperplane this is the
    transvection along f_i, raised to the sign. Returned as a 2n x 2n
    matrix in point coordinates, rows indexing the output.
    """
    if not 1 <= i <= sp.points:
        raise ValueError(f"position {i} outside 1..{sp.points}")
    if sign not in (1, -1):
        raise ValueError("crossing sign must be +1 or -1")
    a = i - 1
    b = i % sp.points
    m = [[int(r == c) for c in range(sp.points)] for r in range(sp.points)]
    if sign > 0:
        m[a][a], m[a][b] = 0, 1
        m[b][a], m[b][b] = (-1) % sp.p, 2 % sp.p
    else:
        m[a][a], m[a][b] = 2 % sp.p, (-1) % sp.p
        m[b][a], m[b][b] = 1, 0
    return tuple(tuple(row) for row in m)


def apply_linear(sp: BoundarySpace, matrix, v) -> list[int]:
    v = sp.check(v)
    return [sum(mc * xc for mc, xc in zip(row, v)) % sp.p for row in matrix]


def apply_to_subspace(sp: BoundarySpace, matrix, s: Subspace) -> Subspace:
    return Subspace([apply_linear(sp, matrix, row) for row in s.rows], s.ncols, s.p)


@dataclass(frozen=True)
class TransvectionWord:
    """
    A sequence of crossing letters (boundary position, exponent +-1), to be
    applied left to right.
    """

    letters: tuple[tuple[int, int], ...]

    def __post_init__(self):
        letters = tuple((int(i), int(e)) for i, e in self.letters)
        for i, e in letters:
            if i < 1:
                raise ValueError(f"boundary position {i} must be positive")
            if e not in (1, -1):
                raise ValueError(f"exponent {e} must be +1 or -1")
        object.__setattr__(self, "letters", letters)

    def __len__(self):
        return len(self.letters)


def apply_transvection_word(sp: BoundarySpace, word: TransvectionWord, s: Subspace) -> Subspace:
    for i, e in word.letters:
        s = apply_to_subspace(sp, crossing_action(sp, i, e), s)
    return s


def cup_contraction(sp: BoundarySpace, s: Subspace) -> Subspace:
    """
    The colorings surviving a cup over the last boundary pair: restrict to
    vectors with x_{2n-1} = x_{2n}, then forget those two coordinates.

    For a pre-Lagrangian input the two dimension cases (restriction loses a
    dimension or not; projection loses a dimension or not) exclude each
    other, so the result is a pre-Lagrangian on 2n-2 points. Other inputs
    are rejected, reporting which case combination they landed in.
    """
    if sp.n < 2:
        raise ValueError("cup contraction needs at least two strand pairs")
    if s.ncols != sp.points or s.p != sp.p:
        raise ValueError("subspace does not live on this boundary")
    # restriction to the hyperplane x_{2n-1} = x_{2n}, solved inside s
    constraint = [[(row[-2] - row[-1]) % sp.p for row in s.rows]]
    coeff_kernel = kernel_mod_p(constraint, s.dim, sp.p)
    restricted = [
        [sum(c * row[j] for c, row in zip(coeffs, s.rows)) % sp.p for j in range(s.ncols)]
        for coeffs in coeff_kernel
    ]
    f1 = Subspace(restricted, s.ncols, sp.p)
    cup_vector = [0] * (sp.points - 2) + [1, 1]
    case_restrict = "i" if f1.dim == s.dim else "ii"
    case_project = "ii" if f1.contains(cup_vector) else "i"
    ok, reason = is_pre_lagrangian(sp, s)
    if not ok:
        raise ValueError(
            f"input is not a pre-Lagrangian ({reason}); the contraction "
            f"followed cases (1)({case_restrict}) and (2)({case_project})"
        )
    return Subspace([row[:-2] for row in f1.rows], sp.points - 2, sp.p)


# -- tangles, enumeration, realization -------------------------------------------


def tangle_image_lagrangian(t: Diagram, p: int):
    """
    The boundary colorings a tangle paints, plus the verdict of the
    Lagrangian check: dimension n, monochromatic colorings present, the
    alternating condition, and a vanishing form after reduction. Classical
    tangles must pass (a False there would be a bug, so it raises); virtual
    or non-planar inputs may genuinely fail and get verdict False.
    """
    if not t.is_tangle:
        raise DiagramError("the diagram has no boundary")
    if len(t.boundary) % 2:
        raise DiagramError("a tangle boundary has evenly many points")
    sp = BoundarySpace(len(t.boundary) // 2, p)
    image = boundary_colorings(t, p)
    verdict = (
        image.contains(sp.trivial_vector())
        and not any(alternating_sum(sp, row) for row in image.rows)
        and image.dim == sp.n
        and is_lagrangian(sp, reduce_mod_trivial(sp, image))[0]
    )
    classical = is_planar(t) and not any(c.virtual for c in t.crossings)
    if classical and not verdict:
        raise RuntimeError(
            "a classical tangle painted a non-Lagrangian image; "
            "this breaks the coloring form theorem and means a bug"
        )
    return image, verdict


def lagrangian_count(n: int, p: int) -> int:
    """How many Lagrangians the reduced space has: the product of p^i + 1."""
    return prod(p**i + 1 for i in range(1, n))


def enumerate_lagrangians(n: int, p: int) -> list[Subspace]:
    """
    Every Lagrangian of the reduced symplectic space Z_p^{2n-2}, built by
    extending isotropic subspaces one dimension at a time and deduplicating
    by the canonical echelon basis. The count is checked against the
    product formula before returning. Capped at p <= 5, n <= 4.
    """
    if p > 5 or n > 4:
        raise ValueError("enumeration cap is p <= 5, n <= 4")
    sp = BoundarySpace(n, p)
    d = sp.reduced_dim
    layer = {Subspace([], d, p)}
    for _ in range(n - 1):
        grown = set()
        for s in layer:
            perp_rows = []
            for row in s.rows:
                perp_rows.append(
                    [
                        ((row[j + 1] if j + 1 < d else 0) - (row[j - 1] if j else 0)) % p
                        for j in range(d)
                    ]
                )
            for v in Subspace(kernel_mod_p(perp_rows, d, p), d, p).vectors():
                if any(v) and not s.contains(v):
                    grown.add(Subspace(list(s.rows) + [list(v)], d, p))
        layer = grown
    out = sorted(layer, key=lambda s: s.rows)
    if len(out) != lagrangian_count(n, p):
        raise RuntimeError(
            f"enumeration found {len(out)} Lagrangians, "
            f"the product formula demands {lagrangian_count(n, p)}"
        )
    return out


def _lift_lagrangian(sp: BoundarySpace, s: Subspace) -> Subspace:
    """The pre-Lagrangian over a reduced Lagrangian: lift rows, add trivial."""
    rows = [_from_f(sp, list(row) + [0]) for row in s.rows]
    rows.append(sp.trivial_vector())
    return Subspace(rows, sp.points, sp.p)


def realize_lagrangian(L: Subspace, n: int, p: int, depth: int = 8):
    """
    A crossing word carrying the trivial tangle's Lagrangian onto L, found
    breadth-first over all single-crossing transvections; None when no word
    exists within the depth cap. Over odd primes a word always exists, so
    None just means the cap was too tight; over p = 2 the realization can
    genuinely be impossible.
    """
    sp = BoundarySpace(n, p)
    ok, certificate = is_lagrangian(sp, L)
    if not ok:
        raise ValueError(f"target is not Lagrangian: {certificate}")
    target = _lift_lagrangian(sp, L)
    start = trivial_tangle_image(sp)
    if start == target:
        return TransvectionWord(())
    actions = [
        ((i, e), crossing_action(sp, i, e))
        for i in range(1, sp.points + 1)
        for e in (1, -1)
    ]
    seen = {start: None}
    frontier = [start]
    for _ in range(depth):
        grown = []
        for s in frontier:
            for letter, matrix in actions:
                out = apply_to_subspace(sp, matrix, s)
                if out in seen:
                    continue
                seen[out] = (s, letter)
                if out == target:
                    letters = []
                    cur = out
                    while seen[cur] is not None:
                        cur, lt = seen[cur]
                        letters.append(lt)
                    return TransvectionWord(tuple(reversed(letters)))
                grown.append(out)
        frontier = grown
        if not frontier:
            break
    return None
