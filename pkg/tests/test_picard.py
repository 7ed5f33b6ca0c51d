import itertools
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from fatpoints import picard
from fatpoints.errors import InvalidInputError, ScopeError
from fatpoints.picard import DivClass, pairing, canonical, weyl_apply

E = DivClass.e


def classes(min_r=3, max_r=9):
    return st.integers(min_r, max_r).flatmap(lambda r: st.builds(
        DivClass, st.integers(-20, 40), st.lists(st.integers(-10, 20), min_size=r, max_size=r)))


def test_parse_and_format():
    D = DivClass.parse("28;13,13,10^5")
    assert D == DivClass(28, (13, 13, 10, 10, 10, 10, 10))
    assert str(D) == "28e0-13e1-13e2-10e3-10e4-10e5-10e6-10e7"
    assert str(DivClass(-2, (0, 0, 0, -2, -2, -5, -5))) == "-2e0+2e4+2e5+5e6+5e7"
    assert str(DivClass(1, (0, 0))) == "e0"
    assert str(DivClass(0, (0,))) == "0"
    assert D.semicolon() == "28;13,13,10,10,10,10,10"
    with pytest.raises(InvalidInputError):
        DivClass.parse("28,13")
    with pytest.raises(InvalidInputError):
        DivClass.parse("x;1")


def test_pairing_examples():
    assert pairing(E(0, 3), E(0, 3)) == 1
    assert pairing(E(1, 3), E(1, 3)) == -1
    assert pairing(E(0, 3), E(1, 3)) == 0
    assert pairing(DivClass.parse("4;3,3,1,1"), DivClass.parse("1;1,1,0,0")) == -2
    for r in range(10):
        assert pairing(canonical(r), canonical(r)) == 9 - r
    with pytest.raises(InvalidInputError):
        pairing(E(0, 3), E(0, 4))


def test_weyl_examples():
    assert weyl_apply(0, E(1, 3)) == DivClass.parse("1;0,1,1")
    assert weyl_apply(0, E(0, 3)) == DivClass.parse("2;1,1,1")
    assert weyl_apply(2, DivClass.parse("5;1,2,3,4")) == DivClass.parse("5;1,3,2,4")
    with pytest.raises(InvalidInputError):
        weyl_apply(0, E(1, 2))
    with pytest.raises(InvalidInputError):
        weyl_apply(4, E(1, 4))


@settings(max_examples=300)
@given(classes(), classes(), st.data())
def test_generators_are_involutive_isometries(x, y, data):
    y = DivClass(y.d, (y.m + (0,) * x.r)[: x.r])
    i = data.draw(st.integers(0, x.r - 1))
    sx, sy = weyl_apply(i, x), weyl_apply(i, y)
    assert weyl_apply(i, sx) == x
    assert pairing(sx, sy) == pairing(x, y)
    assert weyl_apply(i, canonical(x.r)) == canonical(x.r)


@settings(max_examples=200)
@given(classes())
def test_reduction_replays_and_preserves_invariants(D):
    reduced, word = picard.cremona_reduce(D)
    assert picard.apply_word(word, D) == reduced
    assert picard.expected_dimension(reduced) == picard.expected_dimension(D)
    assert pairing(reduced, reduced) == pairing(D, D)
    assert list(reduced.m) == sorted(reduced.m, reverse=True)
    assert reduced.d < 0 or sum(reduced.m[:3]) <= reduced.d


def test_reduction_examples():
    assert str(picard.cremona_reduce(DivClass.parse("17;6^8"))[0]) == "e0"
    assert str(picard.cremona_reduce(DivClass.parse("28;13,13,10^5"))[0]) == "-2e0+2e4+2e5+5e6+5e7"
    # fewer than three points: sorting only
    red, word = picard.cremona_reduce(DivClass.parse("3;1,2"))
    assert red == DivClass.parse("3;2,1") and word == (1,)


def test_expected_dimension():
    assert picard.expected_dimension(DivClass.parse("4;3,3,1,1")) == 1
    assert picard.expected_dimension(DivClass(0, ())) == 1
    assert picard.expected_dimension(DivClass.parse("2;1,1,1,1,1")) == 1


@given(classes(1, 9))
def test_expected_dimension_is_riemann_roch(D):
    K = canonical(D.r)
    twice = pairing(D, D) - pairing(K, D)
    assert twice % 2 == 0
    assert picard.expected_dimension(D) == twice // 2 + 1


def test_shgh_worked_values():
    m = (13, 13) + (10,) * 5
    assert [picard.shgh_hilbert(m, t) for t in (28, 29, 30)] == [0, 10, 39]
    assert picard.shgh_hilbert((12,) + (10,) * 7, 29) == 3
    assert picard.shgh_alpha((6,) * 8) == 17


def test_shgh_scope():
    with pytest.raises(ScopeError):
        picard.shgh_hilbert((1,) * 10, 3)
    rep = picard.shgh_report((1,) * 10, 4, allow_conjectural=True)
    assert rep.conjectural and rep.value == 5


def test_shgh_needs_several_passes_sometimes():
    assert picard.shgh_report((13, 13) + (10,) * 5, 29).passes == 2


def test_shgh_clamps_negative_input():
    assert picard.shgh_hilbert((-3, 1), 1) == picard.shgh_hilbert((0, 1), 1) == 2


def test_exceptional_examples():
    assert picard.exceptional_test(E(1, 4))
    assert picard.exceptional_test(DivClass.parse("2;1,1,1,1,1"))
    assert picard.exceptional_test(DivClass.parse("1;1,1"))
    assert not picard.exceptional_test(DivClass.parse("1;1,1,1"))
    assert not picard.exceptional_test(DivClass.parse("0;1,0,0"))
    assert picard.exceptional_test(DivClass.parse("3;2,1,1,1,1,1,1"))
    assert not picard.exceptional_test(DivClass.parse("3;1,1,1,1,1,1,1,1,1,1"))


def bounded_search(r, dmax=6):
    """Classes with C.C = C.K = -1, d >= 0, and m >= 0 unless C = e_i."""
    found = [E(i, r) for i in range(1, r + 1)]
    for d in range(1, dmax + 1):
        for ms in itertools.combinations_with_replacement(range(d, -1, -1), r):
            if sum(ms) != 3 * d - 1 or sum(x * x for x in ms) != d * d + 1:
                continue
            found.extend(DivClass(d, p) for p in set(itertools.permutations(ms)))
    return found


@pytest.mark.parametrize("r,count", [(1, 1), (2, 3), (3, 6), (4, 10), (5, 16), (6, 27), (7, 56)])
def test_enumeration_matches_search(r, count):
    orbit = picard.enumerate_exceptional(r)
    assert len(orbit) == count
    assert sorted(map(str, orbit)) == sorted(map(str, bounded_search(r)))
    assert all(picard.exceptional_test(c) for c in orbit)


def test_enumeration_r8_and_limits():
    orbit = picard.enumerate_exceptional(8)
    assert len(orbit) == 240
    assert Counter(c.d for c in orbit) == {0: 8, 1: 28, 2: 56, 3: 56, 4: 56, 5: 28, 6: 8}
    with pytest.raises(ScopeError):
        picard.enumerate_exceptional(9)


@pytest.mark.parametrize("r", range(1, 9))
def test_multiples_of_exceptional_classes_are_special(r):
    for C in picard.enumerate_exceptional(r):
        for m in range(2, 6):
            assert picard.expected_dimension(C.scale(m)) <= 0


@pytest.mark.parametrize("ms", [(1,), (3,), (4, 2), (2, 2), (3, 1), (5, 5), (2, 1, 1), (3, 3, 3)])
def test_shgh_small_point_counts_against_rank(ms):
    from fatpoints.exactlin import FieldSpec
    from fatpoints.scheme import FatPointScheme, hilbert, random_generic_points
    big = FieldSpec.prime(2147483647)
    Z = FatPointScheme.build(big, random_generic_points(len(ms), 2, big, seed=7), ms)
    for t in range(sum(ms) + 1):
        assert picard.shgh_hilbert(ms, t) == hilbert(Z, t)
