"""
Tests for the alternating form on boundary colorings, its Lagrangians, and
their realization by tangles. Every frozen number here (census counts,
word lengths, the 105-of-135 reachability figure) was computed live from
the diagram and coloring modules before being written down.
"""
import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from foxlink.coloring import boundary_colorings
from foxlink.diagram import (
    DiagramError,
    add_boundary_crossing,
    add_cup,
    parse_pd,
    trivial_tangle,
)
from foxlink.linalg import Subspace
from foxlink.rational import RationalTangle, rational_tangle_diagram
from foxlink.symplectic import (
    BoundarySpace,
    TransvectionWord,
    alternating_sum,
    apply_linear,
    apply_to_subspace,
    apply_transvection_word,
    crossing_action,
    cup_contraction,
    enumerate_lagrangians,
    form_value,
    is_lagrangian,
    is_pre_lagrangian,
    lagrangian_count,
    realize_lagrangian,
    reduce_mod_trivial,
    reduced_form_value,
    tangle_image_lagrangian,
    transvection,
    trivial_tangle_image,
)

VIRTUAL_ONE_TANGLE = "X[1,2,3,4] Xv[3,4,5,2] B[1,5]"


def f_vector(sp, k):
    """The basis vector e_k + e_{k+1} in point coordinates, cyclic in k."""
    v = [0] * sp.points
    v[k - 1] = 1
    v[k % sp.points] = (v[k % sp.points] + 1) % sp.p
    return v


def random_classical_tangle(n, steps, rng):
    d = trivial_tangle(n)
    for _ in range(steps):
        d = add_boundary_crossing(d, rng.randrange(1, 2 * n + 1), rng.choice((1, -1)))
    return d


def test_boundary_space_validation():
    sp = BoundarySpace(3, 5)
    assert sp.points == 6 and sp.reduced_dim == 4
    with pytest.raises(ValueError):
        BoundarySpace(0, 5)
    with pytest.raises(ValueError):
        BoundarySpace(2, 6)
    with pytest.raises(ValueError):
        BoundarySpace(2, 1)


def test_alternating_sum_reference():
    sp = BoundarySpace(2, 7)
    assert alternating_sum(sp, [1, 1, 1, 1]) == 0
    assert alternating_sum(sp, [3, 1, 0, 2]) == 0
    assert alternating_sum(sp, [1, 0, 0, 0]) == 1
    with pytest.raises(ValueError):
        alternating_sum(sp, [1, 2, 3])


def test_classical_images_satisfy_alternating_law():
    # whatever a classical tangle paints on its boundary alternates to zero
    rng = random.Random(20260815)
    for p in (2, 3, 5, 7):
        for _ in range(10):
            n = rng.choice((1, 2, 3))
            t = random_classical_tangle(n, rng.randrange(0, 8), rng)
            sp = BoundarySpace(n, p)
            for row in boundary_colorings(t, p).rows:
                assert alternating_sum(sp, row) == 0


def test_form_value_on_adjacent_basis_vectors():
    sp = BoundarySpace(3, 5)
    for i in range(1, 6):
        for j in range(1, 6):
            val = form_value(sp, f_vector(sp, i), f_vector(sp, j))
            if j == i + 1:
                assert val == 1
            elif j == i - 1:
                assert val == 5 - 1
            else:
                assert val == 0


def test_form_value_rejects_non_alternating():
    sp = BoundarySpace(2, 3)
    with pytest.raises(ValueError):
        form_value(sp, [1, 0, 0, 0], [1, 1, 1, 1])


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_form_is_bilinear_and_antisymmetric(data):
    p = data.draw(st.sampled_from([2, 3, 5]))
    n = data.draw(st.integers(1, 3))
    sp = BoundarySpace(n, p)
    coeff = st.lists(st.integers(0, p - 1), min_size=2 * n - 1, max_size=2 * n - 1)

    def vec(c):
        out, prev = [], 0
        for x in c:
            out.append((prev + x) % p)
            prev = x
        out.append(prev)
        return out

    u, v, w = (vec(data.draw(coeff)) for _ in range(3))
    s = data.draw(st.integers(0, p - 1))
    assert form_value(sp, u, v) == (-form_value(sp, v, u)) % p
    uw = [(a + s * b) % p for a, b in zip(u, w)]
    assert form_value(sp, uw, v) == (form_value(sp, u, v) + s * form_value(sp, w, v)) % p


def test_transvection_fixes_direction_and_needs_nonzero():
    sp = BoundarySpace(2, 5)
    b = f_vector(sp, 2)
    assert transvection(sp, b, b) == b
    moved = transvection(sp, f_vector(sp, 1), b)
    # phi(f1, f2) = 1, so f1 picks up -f2
    assert moved == [(a - c) % 5 for a, c in zip(f_vector(sp, 1), b)]
    with pytest.raises(ValueError):
        transvection(sp, b, [0, 0, 0, 0])


def test_trivial_tangle_image_matches_diagram():
    for p in (2, 3, 5):
        for n in (1, 2, 3, 4):
            sp = BoundarySpace(n, p)
            assert trivial_tangle_image(sp) == boundary_colorings(trivial_tangle(n), p)


def test_reduce_mod_trivial_of_trivial_image():
    sp = BoundarySpace(3, 5)
    reduced = reduce_mod_trivial(sp, trivial_tangle_image(sp))
    assert reduced == Subspace([[1, 0, 0, 0], [0, 0, 1, 0]], 4, 5)


def test_reduce_mod_trivial_rejects_bad_input():
    sp = BoundarySpace(2, 3)
    with pytest.raises(ValueError):
        reduce_mod_trivial(sp, Subspace([[1, 0, 0, 0]], 4, 3))
    with pytest.raises(ValueError):
        reduce_mod_trivial(sp, Subspace([[1, 1]], 2, 3))


def test_is_lagrangian_accepts_trivial_and_certifies_failures():
    sp = BoundarySpace(3, 3)
    good = reduce_mod_trivial(sp, trivial_tangle_image(sp))
    assert is_lagrangian(sp, good) == (True, None)
    ok, cert = is_lagrangian(sp, Subspace([[1, 0, 0, 0], [0, 1, 0, 0]], 4, 3))
    assert not ok and cert == ("pair", (1, 0, 0, 0), (0, 1, 0, 0), 1)
    ok, cert = is_lagrangian(sp, Subspace([[1, 0, 0, 0]], 4, 3))
    assert not ok and cert == ("dimension", 1, 2)
    with pytest.raises(ValueError):
        is_lagrangian(sp, Subspace([[1, 1]], 2, 3))


def test_is_pre_lagrangian_reasons():
    sp = BoundarySpace(2, 3)
    assert is_pre_lagrangian(sp, trivial_tangle_image(sp)) == (True, None)
    ok, why = is_pre_lagrangian(sp, Subspace([[1, 0, 0, 0], [0, 0, 0, 1]], 4, 3))
    assert not ok and "monochromatic" in why
    ok, why = is_pre_lagrangian(sp, Subspace([[1, 1, 1, 1], [1, 0, 0, 0]], 4, 3))
    assert not ok and "alternating" in why
    ok, why = is_pre_lagrangian(sp, Subspace([[1, 1, 1, 1]], 4, 3))
    assert not ok and "dimension" in why


def test_crossing_action_matrix_columns():
    # at the last adjacent pair the positive crossing sends the final point
    # color to 2x + (previous point) and the previous one to minus the final
    sp = BoundarySpace(2, 5)
    m = crossing_action(sp, 3, 1)
    assert tuple(m[r][2] for r in range(4)) == (0, 0, 0, 4)
    assert tuple(m[r][3] for r in range(4)) == (0, 0, 1, 2)
    with pytest.raises(ValueError):
        crossing_action(sp, 5, 1)
    with pytest.raises(ValueError):
        crossing_action(sp, 1, 2)


def test_crossing_action_signs_are_inverse():
    sp = BoundarySpace(3, 7)
    start = trivial_tangle_image(sp)
    for i in range(1, 7):
        word = TransvectionWord(((i, 1), (i, -1)))
        assert apply_transvection_word(sp, word, start) == start


def test_crossing_action_matches_diagram_calibration():
    # adding one boundary crossing to a tangle transforms its painted
    # colorings by exactly the matrix crossing_action produces
    rng = random.Random(20260815)
    for p in (2, 3, 5, 7):
        for _ in range(15):
            n = rng.choice((1, 2, 3))
            sp = BoundarySpace(n, p)
            t = random_classical_tangle(n, rng.randrange(0, 6), rng)
            img = boundary_colorings(t, p)
            i = rng.randrange(1, 2 * n + 1)
            s = rng.choice((1, -1))
            grown = boundary_colorings(add_boundary_crossing(t, i, s), p)
            assert grown == apply_to_subspace(sp, crossing_action(sp, i, s), img)


def test_crossing_action_is_isometry_preserving_alternation():
    rng = random.Random(20260815)
    for _ in range(1000):
        p = rng.choice((2, 3, 5, 7))
        n = rng.choice((1, 2, 3))
        sp = BoundarySpace(n, p)

        def vec():
            # expand random f coefficients: x_j = c_{j-1} + c_j
            out, prev = [], 0
            for _ in range(2 * n - 1):
                c = rng.randrange(p)
                out.append((prev + c) % p)
                prev = c
            out.append(prev)
            return out

        u, v = vec(), vec()
        i = rng.randrange(1, 2 * n + 1)
        sgn = rng.choice((1, -1))
        m = crossing_action(sp, i, sgn)
        mu, mv = apply_linear(sp, m, u), apply_linear(sp, m, v)
        assert alternating_sum(sp, mu) == 0
        assert alternating_sum(sp, mv) == 0
        assert form_value(sp, mu, mv) == form_value(sp, u, v)
        if sgn == 1:
            assert mu == transvection(sp, u, f_vector(sp, i))


def test_cup_contraction_of_trivial_image():
    sp = BoundarySpace(2, 3)
    assert cup_contraction(sp, trivial_tangle_image(sp)) == Subspace([[1, 1]], 2, 3)


def test_cup_contraction_matches_add_cup():
    rng = random.Random(20260816)
    for p in (2, 3, 5):
        for n in (2, 3):
            sp = BoundarySpace(n, p)
            for _ in range(8):
                t = random_classical_tangle(n, rng.randrange(0, 7), rng)
                want = boundary_colorings(add_cup(t, 2 * n - 1), p)
                assert cup_contraction(sp, boundary_colorings(t, p)) == want


def test_cup_contraction_rejects_non_pre_lagrangian_with_cases():
    sp = BoundarySpace(2, 3)
    with pytest.raises(ValueError, match=r"\(1\)\(ii\) and \(2\)\(i\)"):
        cup_contraction(sp, Subspace([[1, 0, 0, 0], [0, 0, 0, 1]], 4, 3))
    with pytest.raises(ValueError, match="at least two"):
        cup_contraction(BoundarySpace(1, 3), Subspace([[1, 1]], 2, 3))


def test_tangle_image_lagrangian_on_classical_inputs():
    img, verdict = tangle_image_lagrangian(trivial_tangle(2), 5)
    assert verdict is True and img.dim == 2
    d = rational_tangle_diagram(RationalTangle((2, 3)))
    img, verdict = tangle_image_lagrangian(d, 7)
    assert verdict is True and img.dim == 2


def test_tangle_image_lagrangian_virtual_fixture_fails_softly():
    # this virtual one-tangle paints every color pair, which no classical
    # tangle can do; the verdict flags it instead of raising
    img, verdict = tangle_image_lagrangian(parse_pd(VIRTUAL_ONE_TANGLE), 3)
    assert verdict is False
    assert img.dim == 2 and img == Subspace([[1, 0], [0, 1]], 2, 3)


def test_tangle_image_lagrangian_rejects_non_tangles():
    with pytest.raises(DiagramError):
        tangle_image_lagrangian(parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"), 3)


def test_random_classical_tangles_paint_pre_lagrangians():
    rng = random.Random(20260815)
    for p in (3, 5):
        for _ in range(50):
            n = rng.choice((1, 2, 3))
            t = random_classical_tangle(n, rng.randrange(0, 9), rng)
            img, verdict = tangle_image_lagrangian(t, p)
            assert verdict is True
            assert img.dim == n
            assert is_pre_lagrangian(BoundarySpace(n, p), img) == (True, None)


def test_lagrangian_count_formula():
    assert lagrangian_count(2, 2) == 3
    assert lagrangian_count(2, 3) == 4
    assert lagrangian_count(2, 5) == 6
    assert lagrangian_count(3, 2) == 15
    assert lagrangian_count(3, 3) == 40
    assert lagrangian_count(4, 2) == 135
    assert lagrangian_count(1, 7) == 1


def test_enumerate_lagrangians_census():
    for (n, p), want in [
        ((2, 2), 3),
        ((2, 3), 4),
        ((2, 5), 6),
        ((3, 2), 15),
        ((3, 3), 40),
        ((4, 2), 135),
    ]:
        found = enumerate_lagrangians(n, p)
        assert len(found) == want
        assert len(set(found)) == want
    sp = BoundarySpace(3, 3)
    for L in enumerate_lagrangians(3, 3):
        assert is_lagrangian(sp, L) == (True, None)


def test_enumerate_lagrangians_cap():
    with pytest.raises(ValueError):
        enumerate_lagrangians(5, 3)
    with pytest.raises(ValueError):
        enumerate_lagrangians(2, 7)


def test_transvection_word_validation():
    w = TransvectionWord(((1, 1), (4, -1)))
    assert len(w) == 2
    with pytest.raises(ValueError):
        TransvectionWord(((0, 1),))
    with pytest.raises(ValueError):
        TransvectionWord(((1, 2),))
    sp = BoundarySpace(2, 3)
    with pytest.raises(ValueError):
        apply_transvection_word(sp, TransvectionWord(((5, 1),)), trivial_tangle_image(sp))


def test_realize_trivial_lagrangian_is_empty_word():
    sp = BoundarySpace(2, 3)
    own = reduce_mod_trivial(sp, trivial_tangle_image(sp))
    word = realize_lagrangian(own, 2, 3)
    assert word == TransvectionWord(())


def test_realize_lagrangian_rejects_non_lagrangian():
    with pytest.raises(ValueError):
        realize_lagrangian(Subspace([[1, 0], [0, 1]], 2, 3), 2, 3)


@pytest.mark.parametrize("p", [3, 5])
def test_realize_all_lagrangians_two_strand_pairs(p):
    # every Lagrangian at n = 2 comes from an actual tangle; replay each
    # word both on subspaces and on diagrams to cross-check the two routes
    sp = BoundarySpace(2, p)
    start = trivial_tangle_image(sp)
    for L in enumerate_lagrangians(2, p):
        word = realize_lagrangian(L, 2, p)
        assert word is not None and len(word) <= 3
        end = apply_transvection_word(sp, word, start)
        assert reduce_mod_trivial(sp, end) == L
        d = trivial_tangle(2)
        for i, e in word.letters:
            d = add_boundary_crossing(d, i, e)
        assert boundary_colorings(d, p) == end


def test_realize_saturates_over_two_element_field():
    # over F2 with four strand pairs crossing words reach only 105 of the
    # 135 Lagrangians, no matter the depth; the rest genuinely need more
    # than transvections (computed by saturating the search at depths 6,
    # 10, and 14, which all find the same 105)
    found = sum(
        1 for L in enumerate_lagrangians(4, 2) if realize_lagrangian(L, 4, 2, depth=6) is not None
    )
    assert found == 105


def test_realized_pre_lagrangians_cover_alternating_space():
    # at n = 2, p = 3: the four tangle images overlap only in monochromatic
    # colorings and jointly exhaust all 27 alternating vectors
    p = 3
    sp = BoundarySpace(2, p)
    images = []
    for L in enumerate_lagrangians(2, p):
        word = realize_lagrangian(L, 2, p)
        d = trivial_tangle(2)
        for i, e in word.letters:
            d = add_boundary_crossing(d, i, e)
        images.append(boundary_colorings(d, p))
    union = set()
    for s in images:
        union.update(s.vectors())
    alternating = {
        v for v in product(range(p), repeat=4) if (v[0] - v[1] + v[2] - v[3]) % p == 0
    }
    assert union == alternating
    mono = {(0, 0, 0, 0), (1, 1, 1, 1), (2, 2, 2, 2)}
    for i in range(len(images)):
        for j in range(i + 1, len(images)):
            assert set(images[i].vectors()) & set(images[j].vectors()) == mono


def test_rational_tangle_images_are_lagrangian():
    rng = random.Random(20260817)
    for _ in range(20):
        coeffs = tuple(
            rng.choice((1, -1)) * rng.randrange(1, 4) for _ in range(rng.randrange(1, 4))
        )
        p = rng.choice((3, 5))
        img, verdict = tangle_image_lagrangian(rational_tangle_diagram(RationalTangle(coeffs)), p)
        assert verdict is True and img.dim == 2
