"""Elementary cobordisms: move mechanics, chain maps, movie plumbing."""

import os

import pytest
from hypothesis import given, settings, strategies as st

from knothom.diagram import parse_pd, unknot_diagram, is_planar
from knothom.frobenius import theory_from_selector
from knothom.complexes import (build_complex, identity_map, zero_map,
                               compose, add_maps, scale_map, maps_equal)
from knothom.homology import HomologyData, maps_equal_on_homology
from knothom.cobordism import (Move, MoveError, MovieError, apply_move,
                               decoration_chain_map, move_chain_map,
                               elementary_chain_map, Movie, parse_movie,
                               load_movie, evaluate_movie,
                               verify_dot_crossing, verify_saddle_split,
                               verify_symmetry, verify_star_placement,
                               ribbon_structure_errors,
                               verify_ribbon_composite)
from knothom.tables import load_table, braid_pd

SELECTORS = ["bn", "kh-f2", "alpha", "alpha@0,t/f2", "alpha@1,-1/q"]
MOVIE_DIR = os.path.join(os.path.dirname(__file__), os.pardir, "src",
                         "knothom", "data", "movies")


# -- raw move mechanics ---------------------------------------------------

def test_r1_round_trip():
    u = unknot_diagram()
    d1, info, rev = apply_move(u, Move("r1+", (1, "+")))
    assert d1.n == 1 and len(d1.components) == 1
    assert info["kind"] == "r1+"
    back, _, _ = apply_move(d1, rev)
    assert back.canonical_key() == u.canonical_key()


def test_r1_signs():
    u = unknot_diagram()
    plus, _, _ = apply_move(u, Move("r1+", (1, "+")))
    minus, _, _ = apply_move(u, Move("r1+", (1, "-")))
    assert plus.writhe == 1 and minus.writhe == -1


def test_r2_round_trip_on_trefoil():
    # edges 2 and 5 of the bundled trefoil share a face
    d = load_table()["3_1"]
    d2, info, rev = apply_move(d, Move("r2+", (2, 5)))
    assert d2.n == 5
    assert is_planar(d2)
    back, _, _ = apply_move(d2, rev)
    assert back.canonical_key() == d.canonical_key()


def test_r3_round_trip():
    d = parse_pd(braid_pd([1, 2, 1], 3))
    d2, info, rev = apply_move(d, Move("r3", (0, 1, 2)))
    assert d2.n == 3
    back, _, _ = apply_move(d2, rev)
    assert back.canonical_key() == d.canonical_key()


def test_split_loop_saddle():
    u = unknot_diagram()
    d2, info, rev = apply_move(u, Move("saddle", (1, 1)))
    assert len(d2.components) == 2
    assert info["case"] == "split_loop"
    back, _, _ = apply_move(d2, rev)
    assert len(back.components) == 1


def test_standard_saddle_changes_components():
    d = load_table()["3_1"]
    d2, info, rev = apply_move(d, Move("saddle", (1, 2)))
    assert info["case"] == "standard"
    assert abs(len(d2.components) - len(d.components)) == 1


def test_birth_and_death():
    u = unknot_diagram()
    d2, info, _ = apply_move(u, Move("birth", ()))
    assert len(d2.components) == 2
    new = (set(d2.free_edges) - set(u.free_edges)).pop()
    d3, _, _ = apply_move(d2, Move("death", (new,)))
    assert d3.canonical_key() == u.canonical_key()


@pytest.mark.parametrize("mv", [
    Move("r1-", (0,)),              # trefoil crossing 0 is not a kink
    Move("r2-", (0, 1)),            # not a bigon pair
    Move("saddle", (99, 1)),        # unknown edge
    Move("death", (1,)),            # component is not a free circle
    Move("r3", (0, 1, 2)),          # no triangle here
])
def test_invalid_moves_raise(mv):
    d = load_table()["3_1"]
    with pytest.raises(MoveError):
        apply_move(d, mv)


def test_move_error_is_value_error():
    assert issubclass(MoveError, ValueError)
    assert issubclass(MovieError, ValueError)


# -- elementary chain maps ------------------------------------------------

@pytest.mark.parametrize("sel", SELECTORS)
def test_decoration_maps_are_chain_maps(sel):
    th = theory_from_selector(sel)
    cx = build_complex(load_table()["3_1"], th)
    kinds = ["dot", "star"] + (["dot1", "dot2"] if th.alphas else [])
    for kind in kinds:
        f = decoration_chain_map(th, cx, kind, 1)
        assert f.is_chain_map(), (sel, kind)
        assert f.q_shift == -2


@pytest.mark.parametrize("sel", ["bn", "alpha", "alpha@0,t/f2"])
def test_saddle_maps_are_chain_maps(sel):
    th = theory_from_selector(sel)
    d = load_table()["4_1"]
    # (1, 3) is a cofacial pair, so the saddle target stays planar
    mv = Move("saddle", (1, 3))
    d2, info, _ = apply_move(d, mv)
    cx, cx2 = build_complex(d, th), build_complex(d2, th)
    f = move_chain_map(th, cx, cx2, info)
    assert f.is_chain_map()


@pytest.mark.parametrize("sel", ["bn", "alpha"])
def test_kink_and_bigon_maps_are_chain_maps(sel):
    th = theory_from_selector(sel)
    d = load_table()["3_1"]
    for mv in (Move("r1+", (1, "+")), Move("r1+", (1, "-")),
               Move("r2+", (1, 4))):
        d2, info, rev = apply_move(d, mv)
        cx, cx2 = build_complex(d, th), build_complex(d2, th)
        f = move_chain_map(th, cx, cx2, info)
        assert f.is_chain_map(), mv
        _, info_r, _ = apply_move(d2, rev)
        g = move_chain_map(th, cx2, cx, info_r)
        assert g.is_chain_map(), rev


def test_dot_squared_is_relation():
    # on the unknot complex, dot twice equals s dot - p id
    for sel in SELECTORS:
        th = theory_from_selector(sel)
        cx = build_complex(unknot_diagram(), th)
        dot = decoration_chain_map(th, cx, "dot", 1)
        lhs = compose(dot, dot)
        rhs = add_maps(scale_map(th.s, dot),
                       scale_map(th.ring.neg(th.p), identity_map(cx)))
        assert maps_equal(lhs, rhs), sel


def test_death_after_birth_vanishes():
    # the counit kills the unit: a birth immediately undone is zero
    th = theory_from_selector("bn")
    m = parse_movie("start unknot\nbirth\ndeath 2\n")
    total = evaluate_movie(m, th)
    assert maps_equal(total, zero_map(total.source, total.target))


def test_empty_movie_is_identity():
    th = theory_from_selector("bn")
    m = parse_movie("start PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]\n")
    total = evaluate_movie(m, th)
    assert maps_equal(total, identity_map(total.source))


# -- homology-level identities (small instances) --------------------------

def test_dot_crossing_identity_trefoil():
    d = load_table()["3_1"]
    for sel in ("bn", "alpha@0,t/f2"):
        th = theory_from_selector(sel)
        hdata = HomologyData(build_complex(d, th))
        for c in range(d.n):
            assert verify_dot_crossing(d, c, th, hdata), (sel, c)


def test_saddle_split_identity():
    for sel in ("bn", "alpha@0,t/f2"):
        th = theory_from_selector(sel)
        u = unknot_diagram()
        assert verify_saddle_split(u, Move("saddle", (1, 1)), th)
        d = load_table()["4_1"]
        hdata = HomologyData(build_complex(d, th))
        assert verify_saddle_split(d, Move("saddle", (1, 1)), th, hdata)


def test_star_placement_same_component():
    d = load_table()["3_1"]
    th = theory_from_selector("alpha@0,t/f2")
    assert verify_star_placement(d, 1, 4, th)
    u = unknot_diagram()
    d2, _, _ = apply_move(u, Move("saddle", (1, 1)))
    with pytest.raises(MoveError):
        verify_star_placement(d2, *sorted(d2.free_edges), theory_from_selector("bn"))


def test_symmetry_of_palindromic_kink_movie():
    script = ("start unknot\n"
              "r1+ 1 +\n"
              "dot 1\n"
              "r1- 0\n")
    m = parse_movie(script)
    for sel in ("bn", "alpha@0,t/f2"):
        assert verify_symmetry(m, theory_from_selector(sel)), sel


def test_symmetry_rejects_non_palindrome():
    m = parse_movie("start unknot\nr1+ 1 +\n")
    with pytest.raises(MoveError):
        verify_symmetry(m, theory_from_selector("bn"))


# -- movie parsing and bundled files --------------------------------------

def test_parse_movie_basics():
    m = parse_movie("# comment\nstart unknot\n\nbirth\nsaddle 1 2\n")
    assert len(m.moves) == 2
    assert m.saddle_count() == 1
    assert len(m.frames) == 3


def test_parse_movie_aliases_and_ledger():
    m = parse_movie("start unknot\ndigit1 1\ndigit2 1\nstar 1\n")
    kinds = [mv.kind for mv in m.moves]
    assert kinds == ["dot1", "dot2", "star"]
    ledger = m.decoration_ledger()
    assert [k for _, k, _ in ledger] == ["dot1", "dot2", "star"]


@pytest.mark.parametrize("text,frag", [
    ("birth\n", "start"),
    ("start nope\n", "expected a crossing"),
    ("start unknot\nwiggle 1\n", "unknown move"),
    ("start unknot\nsaddle 1\n", "argument"),
    ("start unknot\nr1+ 1 *\n", "usage"),
    ("start unknot\ndeath 7\n", "death"),
])
def test_parse_movie_errors(text, frag):
    with pytest.raises(MovieError) as err:
        parse_movie(text)
    assert frag.lower() in str(err.value).lower()


def test_movie_error_carries_line_number():
    try:
        parse_movie("start unknot\n# pad\nsaddle 9 4\n")
    except MovieError as e:
        assert e.line == 3
    else:
        assert False


def test_reversed_movie_frames():
    m = parse_movie("start unknot\nr1+ 1 +\nr1- 0\n")
    r = m.reversed()
    assert [f.key() for f in r.frames] == [f.key() for f in m.frames[::-1]]


def test_bundled_movies_load_and_have_ribbon_shape():
    names = sorted(os.listdir(MOVIE_DIR))
    assert len(names) == 3
    for fn in names:
        m = load_movie(os.path.join(MOVIE_DIR, fn))
        assert ribbon_structure_errors(m) == [], fn
        for f in m.frames:
            assert is_planar(f), fn


def test_ribbon_structure_rejections():
    bad_death = parse_movie("start unknot\nbirth\ndeath 2\n")
    assert any("death" in msg for msg in ribbon_structure_errors(bad_death))
    unfused = parse_movie("start unknot\nbirth\n")
    assert any("birth" in msg for msg in ribbon_structure_errors(unfused))
    split = parse_movie("start unknot\nbirth\nsaddle 1 1\nsaddle 1 2\n")
    msgs = ribbon_structure_errors(split)
    assert any("fuse" in msg for msg in msgs)
    late = parse_movie("start unknot\nbirth\nsaddle 1 2\nr1+ 1 +\n")
    assert any("order" in msg for msg in ribbon_structure_errors(late))


def test_trivial_ribbon_composite_identity():
    m = load_movie(os.path.join(MOVIE_DIR, "trivial-ribbon.movie"))
    for sel in ("bn", "alpha@0,t/f2"):
        assert verify_ribbon_composite(m, 0, theory_from_selector(sel)), sel


def test_one_saddle_movie_composite():
    m = load_movie(os.path.join(MOVIE_DIR, "one-saddle-unknot.movie"))
    assert m.saddle_count() == 1
    assert len(m.final.components) == 1
    th = theory_from_selector("bn")
    assert verify_ribbon_composite(m, 1, th)


@given(st.sampled_from(["3_1", "4_1", "5_2"]), st.integers(0, 5))
@settings(max_examples=25, deadline=None)
def test_move_then_reverse_round_trip(name, seed):
    # r2+ on the first few planar pairs and back is the identity on keys
    d = load_table()[name]
    edges = sorted(d.edges)
    e1 = edges[seed % len(edges)]
    e2 = edges[(seed * 3 + 1) % len(edges)]
    if e1 == e2:
        return
    try:
        d2, _, rev = apply_move(d, Move("r2+", (e1, e2)))
    except MoveError:
        return
    back, _, _ = apply_move(d2, rev)
    assert back.canonical_key() == d.canonical_key()
