"""
Kauffman bracket state sums, the Jones polynomial, and the exact
evaluations at the primitive 12th root of unity that tie Jones values to
3-coloring counts.

Conventions, fixed once and shared with the rest of the package:

* at a classical crossing with counterclockwise slots (s0, s1, s2, s3)
  and the understrand on slots 0 and 2, the A smoothing joins s0-s1 and
  s2-s3, the B smoothing joins s0-s3 and s1-s2;
* <D> = sum over states of A^(a-b) * delta^(loops-1), delta = -A^2 - A^-2,
  so the one-loop unknot has bracket 1;
* V(D) = (-1)^w * A^(-3w) * <D>, rewritten in s = A^-2 (and t = s^2).
  A closed classical diagram always yields even powers of A at this point;
  the rewrite refuses odd ones rather than rounding them away.

With these choices the closure of the three-crossing positive braid word
s1 s1 s1 (the right-handed trefoil) gets V = s^2 + s^6 - s^8.
"""
from __future__ import annotations

from .coloring import LawViolation, tri
from .diagram import (
    Diagram,
    DiagramError,
    Orientation,
    components,
    default_orientation,
    smooth_crossing,
    twist_family,
    writhe,
)
from .poly import Cyclotomic12, LaurentPoly, eval_at_zeta, x_power

DELTA = LaurentPoly.make("A", [(2, -1), (-2, -1)])

DEFAULT_CROSSING_CAP = 24


def _require_closed_classical(d: Diagram, what: str):
    if d.is_tangle:
        raise DiagramError(f"{what} needs a closed diagram, not a tangle")
    if not d.is_classical:
        raise DiagramError(f"{what} is not defined for virtual diagrams")
    if not d.crossings and d.free_loops == 0:
        raise DiagramError(f"{what} of the empty diagram is undefined")


def kauffman_bracket(d: Diagram, cap: int = DEFAULT_CROSSING_CAP) -> LaurentPoly:
    """Bracket polynomial in A by direct summation over all 2^n states.

    Loops of each state are counted with a union-find over arc labels;
    diagrams with more than `cap` crossings are refused rather than left
    to grind (the sum is genuinely exponential).
    """
    _require_closed_classical(d, "bracket")
    n = len(d.crossings)
    if n > cap:
        raise DiagramError(f"{n} crossings exceeds the state-sum cap of {cap}")
    labels = d.labels
    index = {lab: i for i, lab in enumerate(labels)}
    m = len(labels)
    quads = [tuple(index[e] for e in c.slots) for c in d.crossings]
    a_pairs = [((q[0], q[1]), (q[2], q[3])) for q in quads]
    b_pairs = [((q[0], q[3]), (q[1], q[2])) for q in quads]

    max_loops = m + d.free_loops
    delta_pows = [LaurentPoly.const("A", 1)]
    for _ in range(max_loops):
        delta_pows.append(delta_pows[-1] * DELTA)

    acc: dict[int, int] = {}
    for mask in range(1 << n):
        parent = list(range(m))
        for ci in range(n):
            pairs = b_pairs[ci] if mask >> ci & 1 else a_pairs[ci]
            for a, b in pairs:
                while parent[a] != a:
                    parent[a] = parent[parent[a]]
                    a = parent[a]
                while parent[b] != b:
                    parent[b] = parent[parent[b]]
                    b = parent[b]
                if a != b:
                    parent[a] = b
        loops = sum(1 for i in range(m) if parent[i] == i) + d.free_loops
        sigma = n - 2 * bin(mask).count("1")
        for e, c in delta_pows[loops - 1].coeffs:
            key = e + sigma
            acc[key] = acc.get(key, 0) + c
    return LaurentPoly.make("A", acc)


def bracket_by_recursion(d: Diagram) -> LaurentPoly:
    """The same bracket via the skein recursion on actual diagrams.

    <D> = A <D_A> + A^-1 <D_B> at the first crossing, with the crossingless
    base case delta^(loops-1). Much slower than the state sum, which is the
    point: it shares no smoothing bookkeeping with it, so agreement between
    the two is a real check.
    """
    _require_closed_classical(d, "bracket")
    if not d.crossings:
        out = LaurentPoly.const("A", 1)
        for _ in range(d.free_loops - 1):
            out = out * DELTA
        return out
    left = bracket_by_recursion(smooth_crossing(d, 0, "A"))
    right = bracket_by_recursion(smooth_crossing(d, 0, "B"))
    return left.scale(1, 1) + right.scale(1, -1)


def jones(
    d: Diagram,
    o: Orientation | None = None,
    cap: int = DEFAULT_CROSSING_CAP,
) -> LaurentPoly:
    """Jones polynomial in s (t = s^2), normalized so the unknot gives 1.

    For links the value depends on the orientation; pass one explicitly to
    control it, otherwise each component is oriented by the default walk.
    """
    _require_closed_classical(d, "Jones polynomial")
    if o is None:
        o = default_orientation(d)
    w = writhe(d, o)
    sign = -1 if w % 2 else 1
    return kauffman_bracket(d, cap).scale(sign, -3 * w).substitute_square("s")


def jones_at_zeta(
    d: Diagram,
    o: Orientation | None = None,
    cap: int = DEFAULT_CROSSING_CAP,
) -> Cyclotomic12:
    """V evaluated exactly at s = e^(i*pi/6), i.e. t = e^(i*pi/3)."""
    return eval_at_zeta(jones(d, o, cap))


def kauffman_f_at_one_minus_one(
    d: Diagram,
    o: Orientation | None = None,
    cap: int = DEFAULT_CROSSING_CAP,
) -> int:
    """The Kauffman polynomial evaluation F(1, -1), as a plain integer.

    Computed through the identity with the Jones value at the 12th root:
    F(1,-1) = (-1)^(com-1) * V(zeta)^2, whose right side must come out
    rational; a non-rational square means the diagram violates the
    identity's hypotheses and is reported loudly rather than truncated.
    """
    z = jones_at_zeta(d, o, cap)
    sq = z * z
    if not sq.is_rational:
        raise LawViolation(f"V(zeta)^2 = {sq} is not an integer for {d.name!r}")
    com = components(d)
    return sq.c0 if (com - 1) % 2 == 0 else -sq.c0


def _log3(n: int) -> int:
    e = 0
    while n > 1 and n % 3 == 0:
        n //= 3
        e += 1
    if n != 1:
        raise LawViolation(f"expected a power of 3, got residue {n}")
    return e


def check_tri_identity(d: Diagram, cap: int = DEFAULT_CROSSING_CAP) -> dict:
    """Verify the 3-coloring / Jones / Kauffman numerical identities.

    Checks, for a closed classical diagram:
      * tri(D) = 3 * |V(zeta)|^2,
      * tri(D) is a power of 3,
      * the sign-decorated count tri'(D) = (-1)^log3(tri) * tri equals
        -3 * F(1,-1).
    Returns the computed quantities; raises LawViolation on any mismatch.
    """
    t = tri(d)
    z = jones_at_zeta(d, cap=cap)
    norm = z.norm_squared()
    f = kauffman_f_at_one_minus_one(d, cap=cap)
    if t != 3 * norm:
        raise LawViolation(f"tri={t} but 3|V(zeta)|^2={3 * norm} for {d.name!r}")
    exp = _log3(t)
    t_signed = t if exp % 2 == 0 else -t
    if t_signed != -3 * f:
        raise LawViolation(
            f"signed count {t_signed} != -3*F(1,-1) = {-3 * f} for {d.name!r}"
        )
    return {
        "tri": t,
        "norm_squared": norm,
        "f_one_minus_one": f,
        "tri_signed": t_signed,
    }


_FOURTH_ROOTS = (
    Cyclotomic12(1),
    Cyclotomic12(-1),
    x_power(3),
    -x_power(3),
)


def check_three_move(d: Diagram, ci: int, cap: int = DEFAULT_CROSSING_CAP) -> dict:
    """Compare a diagram with the result of a 3-move at crossing ci.

    The move replaces the crossing by four coherent half-twists (three
    extra crossings of the same handedness).  Checks that tri is
    unchanged, that V(zeta) changes only by a factor in {1, -1, i, -i},
    and that |F(1,-1)| is unchanged.  Raises LawViolation otherwise.
    """
    fam = twist_family(d, ci, 5)
    before, after = fam[1], fam[4]
    t0, t1 = tri(before), tri(after)
    if t0 != t1:
        raise LawViolation(f"3-move changed tri: {t0} -> {t1} for {d.name!r}")
    z0 = jones_at_zeta(before, cap=cap)
    z1 = jones_at_zeta(after, cap=cap)
    unit = None
    for u in _FOURTH_ROOTS:
        if z0 * u == z1:
            unit = u
            break
    if unit is None:
        raise LawViolation(
            f"3-move ratio of V(zeta) is not a 4th root of unity for {d.name!r}"
        )
    f0 = kauffman_f_at_one_minus_one(before, cap=cap)
    f1 = kauffman_f_at_one_minus_one(after, cap=cap)
    if abs(f0) != abs(f1):
        raise LawViolation(f"3-move changed |F(1,-1)|: {f0} -> {f1} for {d.name!r}")
    return {"tri": t0, "unit": str(unit), "f_before": f0, "f_after": f1}
