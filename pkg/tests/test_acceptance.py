"""
The acceptance battery. Ten numbered criteria, one test each, asserting
the exact counts, identities, and wall-clock budgets promised; `pytest -v`
prints one verdict line per criterion. Randomized criteria run on fixed
seeds so any failure replays byte for byte.
"""
import math
import random
import time

from foxlink.bracket import (
    bracket_by_recursion,
    check_three_move,
    check_tri_identity,
    kauffman_bracket,
)
from foxlink.coloring import (
    boundary_colorings,
    brute_force_count,
    check_quadruple,
    col_group,
    tri,
)
from foxlink.diagram import (
    add_boundary_crossing,
    braid_closure,
    components,
    parse_pd,
    trivial_tangle,
)
from foxlink.fixtures import build_diagram, load_fixtures
from foxlink.rational import (
    MoveSpec,
    apply_move,
    move_search,
    move_sites,
    numerator_closure,
    parse_conway,
    rational_tangle_diagram,
)
from foxlink.symplectic import (
    BoundarySpace,
    apply_transvection_word,
    enumerate_lagrangians,
    is_lagrangian,
    lagrangian_count,
    realize_lagrangian,
    reduce_mod_trivial,
    tangle_image_lagrangian,
    trivial_tangle_image,
)
from foxlink.tait import graph_to_diagram, is_alternating, random_signed_plane_graph

FIXTURES = [(entry.name, build_diagram(entry)) for entry in load_fixtures()]
CHEN_BRAID = "B 5: ( s2 s1^-1 s2 s3 s4^-1 )^4"


def test_criterion_01_figure_eight_and_five_two_coloring_counts():
    start = time.perf_counter()
    figure_eight = braid_closure("B 3: s1 s2^-1 s1 s2^-1")
    assert col_group(figure_eight, 5).size == 25
    five_two = numerator_closure(rational_tangle_diagram(parse_conway("C(3,2)")))
    space = col_group(five_two, 7)
    assert space.size == 49
    assert tuple(space.divisors) == (7, 7)
    assert time.perf_counter() - start < 1.0


def test_criterion_02_tri_jones_kauffman_identity_on_full_table():
    start = time.perf_counter()
    assert len(FIXTURES) >= 40
    for name, d in FIXTURES:
        assert len(d.crossings) <= 9, name
        report = check_tri_identity(d)
        assert report["tri"] == 3 * report["norm_squared"], name
        assert report["tri"] == 3 * abs(report["f_one_minus_one"]), name
    assert time.perf_counter() - start < 60.0


def test_criterion_03_power_law_and_quadruple_law_everywhere():
    for name, d in FIXTURES:
        count = tri(d)
        while count % 3 == 0:
            count //= 3
        assert count == 1, name
        for ci in range(len(d.crossings)):
            report = check_quadruple(d, ci)
            assert max(report["values"]) == 3 * min(report["values"]), (name, ci)


def test_criterion_04_two_hundred_randomized_moves_preserve_colorings():
    rng = random.Random(20260815)
    primes = (2, 3, 5, 7, 13)
    bases = [d for _, d in FIXTURES if d.crossings and len(d.crossings) <= 7]
    for _ in range(200):
        d = rng.choice(bases)
        if rng.random() < 0.5:
            k = rng.choice(primes) * rng.choice((1, -1))
            kind, modulus = ("n", k), abs(k)
        else:
            p = rng.choice(primes)
            kind, modulus = ("pq", p, rng.randrange(1, p) if p > 2 else 1), p
        site = rng.choice(move_sites(d))
        moved = apply_move(d, MoveSpec(kind, site))
        assert col_group(moved, modulus).size == col_group(d, modulus).size, (kind, site)


def test_criterion_05_twenty_randomized_three_moves_shift_jones_by_a_unit():
    rng = random.Random(20260816)
    bases = [d for _, d in FIXTURES if d.crossings and d.is_classical and not d.is_tangle]
    for _ in range(20):
        d = rng.choice(bases)
        ci = rng.randrange(len(d.crossings))
        report = check_three_move(d, ci)
        assert abs(report["f_before"]) == abs(report["f_after"])
        assert report["tri"] % 3 == 0


def test_criterion_06_hundred_random_tangle_images_are_lagrangian():
    rng = random.Random(20260817)
    failures = 0
    for _ in range(100):
        n = rng.randrange(1, 5)
        p = rng.choice((3, 5))
        t = trivial_tangle(n)
        for _ in range(rng.randrange(1, 13)):
            t = add_boundary_crossing(t, rng.randrange(1, 2 * n + 1), rng.choice((1, -1)))
        image, verdict = tangle_image_lagrangian(t, p)
        sp = BoundarySpace(n, p)
        ok, certificate = is_lagrangian(sp, reduce_mod_trivial(sp, image))
        if not (verdict and image.dim == n and ok and certificate is None):
            failures += 1
    assert failures == 0


def test_criterion_07_lagrangian_census_matches_product_formula():
    start = time.perf_counter()
    for n, p in ((2, 2), (2, 3), (2, 5), (3, 2), (3, 3)):
        want = math.prod(p**i + 1 for i in range(1, n + 1))
        assert lagrangian_count(n, p) == want
        assert len(enumerate_lagrangians(n, p)) == want, (n, p)
    assert lagrangian_count(3, 3) == 40
    assert time.perf_counter() - start < 30.0


def test_criterion_08_every_small_lagrangian_realized_by_short_word():
    for p in (3, 5):
        sp = BoundarySpace(2, p)
        start = trivial_tangle_image(sp)
        for lagrangian in enumerate_lagrangians(2, p):
            word = realize_lagrangian(lagrangian, 2, p, depth=5)
            assert word is not None, (p, lagrangian.rows)
            assert len(word) <= 5
            image = apply_transvection_word(sp, word, start)
            assert reduce_mod_trivial(sp, image) == lagrangian


def test_criterion_09_linear_algebra_agrees_with_brute_force_oracles():
    small = [(name, d) for name, d in FIXTURES if len(d.crossings) <= 5]
    small.append(("virtual_tangle", parse_pd("X[1,2,3,4] Xv[3,4,5,2] B[1,5]")))
    small.append(("virtual_closed", parse_pd("X[1,4,2,5] Xv[3,6,4,1] X[5,2,6,3]")))
    small.append(("open_twists", parse_pd("X[1,3,4,2] X[3,5,6,4] B[1,2,5,6]")))
    assert len(small) >= 15
    for name, d in small:
        for k in (2, 3, 5):
            assert col_group(d, k).size == brute_force_count(d, k), (name, k)
    skein = [
        (name, d) for name, d in FIXTURES
        if len(d.crossings) <= 6 and d.is_classical and not d.is_tangle
    ]
    assert len(skein) >= 15
    for name, d in skein:
        assert kauffman_bracket(d) == bracket_by_recursion(d), name


def test_criterion_10_graph_diagrams_alternating_iff_monosigned():
    rng = random.Random(20260818)
    mono = mixed = 0
    for _ in range(100):
        g = random_signed_plane_graph(
            rng, rng.randrange(1, 8), monosigned=rng.random() < 0.5
        )
        d = graph_to_diagram(g)
        assert is_alternating(d) == g.monosigned, g
        if g.monosigned:
            mono += 1
        else:
            mixed += 1
    assert mono >= 25 and mixed >= 25


def test_chen_link_direct_invariants_fast_and_bounded_search_inconclusive():
    # the full 3-move irreducibility of this 20-crossing link is out of
    # reach here; what is checked instead is that its direct invariants
    # come out instantly and that a small bounded search stays honest by
    # reporting None (inconclusive) rather than inventing an answer
    start = time.perf_counter()
    chen = braid_closure(CHEN_BRAID)
    assert len(chen.crossings) == 20
    assert components(chen) == 5
    assert tri(chen) == 3**5
    assert col_group(chen, 3).size == 3**5
    assert time.perf_counter() - start < 10.0
    assert move_search(chen, [("n", 3)], depth=1, max_states=60) is None
