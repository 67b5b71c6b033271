"""Bracket state sums, Jones values, and the counting identities."""
import pytest
from hypothesis import given, settings, strategies as st

from foxlink.bracket import (
    DELTA,
    bracket_by_recursion,
    check_three_move,
    check_tri_identity,
    jones,
    jones_at_zeta,
    kauffman_bracket,
    kauffman_f_at_one_minus_one,
)
from foxlink.coloring import LawViolation, tri
from foxlink.diagram import (
    DiagramError,
    braid_closure,
    components,
    flip_components,
    linking_number,
    oriented_braid_closure,
    parse_pd,
    trivial_tangle,
    writhe,
)
from foxlink.poly import Cyclotomic12, LaurentPoly, divides, eval_at_zeta

UNKNOT = parse_pd("O", "unknot")
LEFT_TREFOIL = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]", "left trefoil")
FIG8 = braid_closure("B 3: ( s1 s2^-1 )^2", "figure eight")


def S(items):
    return LaurentPoly.make("s", items)


def test_unknot_and_unlinks():
    assert kauffman_bracket(UNKNOT) == LaurentPoly.const("A", 1)
    assert kauffman_bracket(parse_pd("O O")) == DELTA
    assert kauffman_bracket(parse_pd("O O O")) == DELTA * DELTA
    assert jones(UNKNOT) == LaurentPoly.const("s", 1)


def test_trefoil_bracket_and_jones():
    rt, o = oriented_braid_closure("B 2: s1 s1 s1", "right trefoil")
    assert writhe(rt, o) == 3
    assert kauffman_bracket(rt) == LaurentPoly.make(
        "A", [(-7, 1), (-3, -1), (5, -1)]
    )
    assert jones(rt, o) == S([(2, 1), (6, 1), (8, -1)])
    assert writhe(LEFT_TREFOIL) == -3
    assert jones(LEFT_TREFOIL) == jones(rt, o).mirror()


def test_hopf_jones():
    hopf, o = oriented_braid_closure("B 2: s1 s1", "hopf")
    assert jones(hopf, o) == S([(1, -1), (5, -1)])


def test_figure_eight_is_palindromic():
    v = jones(FIG8)
    assert v == v.mirror()
    assert v == S([(-4, 1), (-2, -1), (0, 1), (2, -1), (4, 1)])


def test_free_loop_multiplies_by_delta():
    with_loop = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3] O")
    assert kauffman_bracket(with_loop) == DELTA * kauffman_bracket(LEFT_TREFOIL)


def test_refusals():
    with pytest.raises(DiagramError, match="tangle"):
        kauffman_bracket(trivial_tangle(1))
    with pytest.raises(DiagramError, match="virtual"):
        kauffman_bracket(parse_pd("Xv[1,2,2,1] O"))
    with pytest.raises(DiagramError, match="empty"):
        kauffman_bracket(parse_pd(""))
    with pytest.raises(DiagramError, match="cap"):
        kauffman_bracket(LEFT_TREFOIL, cap=2)


def test_state_sum_matches_recursion_on_zoo():
    zoo = [
        UNKNOT,
        LEFT_TREFOIL,
        FIG8,
        braid_closure("B 2: s1 s1"),
        braid_closure("B 2: ( s1 )^5"),
        braid_closure("B 3: s1 s2"),
        braid_closure("B 3: ( s1 s2 )^3"),
        braid_closure("B 4: s1 s3 s2 s2"),
        parse_pd("X[1,2,2,3] X[3,4,4,1]"),
        parse_pd("X[1,2,2,1] O"),
    ]
    for d in zoo:
        assert kauffman_bracket(d) == bracket_by_recursion(d)


@settings(max_examples=40, deadline=None)
@given(
    st.integers(2, 4),
    st.lists(st.tuples(st.integers(0, 2), st.sampled_from([1, -1])), max_size=6),
)
def test_state_sum_matches_recursion_random(m, raw):
    word = [(1 + (g % (m - 1)), e) for g, e in raw]
    d = braid_closure((m, word))
    assert kauffman_bracket(d) == bracket_by_recursion(d)


@settings(max_examples=30, deadline=None)
@given(
    st.integers(2, 4),
    st.lists(st.tuples(st.integers(0, 2), st.sampled_from([1, -1])), max_size=5),
    st.integers(0, 2),
)
def test_skein_relation(m, raw, gpick):
    word = [(1 + (g % (m - 1)), e) for g, e in raw]
    i = 1 + (gpick % (m - 1))
    dp, op = oriented_braid_closure((m, word + [(i, 1)]))
    dm, om = oriented_braid_closure((m, word + [(i, -1)]))
    d0, o0 = oriented_braid_closure((m, word))
    lhs = jones(dp, op).scale(1, -2) - jones(dm, om).scale(1, 2)
    assert lhs == S([(1, 1), (-1, -1)]) * jones(d0, o0)


def test_jones_depends_on_orientation_covariantly():
    hopf, o = oriented_braid_closure("B 2: s1 s1", "hopf")
    for comp in (0, 1):
        lam = linking_number(hopf, comp, o)
        assert lam == 1
        flipped = flip_components(hopf, o, (comp,))
        assert jones(hopf, flipped) == jones(hopf, o).scale(1, -6 * lam)


def test_reversal_with_zero_linking_is_invisible():
    bor, o = oriented_braid_closure("B 3: ( s1 s2^-1 )^3", "borromean")
    assert components(bor) == 3
    base = jones(bor, o)
    assert base == base.mirror()
    for comp in range(3):
        assert linking_number(bor, comp, o) == 0
        assert jones(bor, flip_components(bor, o, (comp,))) == base


def test_jones_minus_one_divisibility_for_knots():
    div = S([(2, 1), (0, -1)]) * S([(6, 1), (0, -1)])
    one = LaurentPoly.const("s", 1)
    for text in (
        "B 2: s1 s1 s1",
        "B 2: ( s1 )^5",
        "B 2: ( s1 )^7",
        "B 3: ( s1 s2^-1 )^2",
        "B 3: ( s1 s2 )^4",
        "B 3: s1 s1 s1 s2 s1^-1 s2",
    ):
        d, o = oriented_braid_closure(text, text)
        assert components(d) == 1, text
        assert divides(div, jones(d, o) - one), text


def test_jones_at_zeta_never_vanishes():
    for text in ("B 2: s1 s1", "B 2: s1 s1 s1", "B 3: ( s1 s2^-1 )^2", "B 3: s1 s2"):
        z = jones_at_zeta(braid_closure(text))
        assert z != Cyclotomic12()
        assert 3 * z.norm_squared() == tri(braid_closure(text))


def test_f_values():
    rt = braid_closure("B 2: s1 s1 s1")
    assert kauffman_f_at_one_minus_one(UNKNOT) == 1
    assert kauffman_f_at_one_minus_one(rt) == -3
    assert kauffman_f_at_one_minus_one(LEFT_TREFOIL) == -3
    assert kauffman_f_at_one_minus_one(FIG8) == 1
    assert kauffman_f_at_one_minus_one(braid_closure("B 2: s1 s1")) == 1


def test_tri_identity_reports():
    rep = check_tri_identity(UNKNOT)
    assert rep == {
        "tri": 3,
        "norm_squared": 1,
        "f_one_minus_one": 1,
        "tri_signed": -3,
    }
    rep = check_tri_identity(LEFT_TREFOIL)
    assert rep["tri"] == 9 and rep["tri_signed"] == 9
    assert rep["f_one_minus_one"] == -3
    for text in ("B 2: s1 s1", "B 3: s1 s2", "B 3: ( s1 s2^-1 )^3", "B 3: ( s1 s2 )^3"):
        check_tri_identity(braid_closure(text, text))


def test_three_move_covariance():
    cases = [
        ("B 2: s1 s1 s1", 0),
        ("B 2: s1 s1", 1),
        ("B 3: ( s1 s2^-1 )^2", 2),
        ("B 3: s1 s2 s1 s2", 3),
    ]
    units = set()
    for text, ci in cases:
        rep = check_three_move(braid_closure(text, text), ci)
        units.add(rep["unit"])
        assert abs(rep["f_before"]) == abs(rep["f_after"])
    assert len(units) >= 2


def test_law_violation_message_forms():
    with pytest.raises(LawViolation, match="power of 3"):
        from foxlink.bracket import _log3

        _log3(6)
