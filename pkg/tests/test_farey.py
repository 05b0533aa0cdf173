import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from karp.farey import (
    ArcId,
    ArcType,
    arc_params,
    arcs_of_order,
    endpoint_map,
    farey_pairs_for,
    farey_sequence,
    is_farey_pair,
    locate_turn,
    mod_index,
    star,
)


def test_mod_index_wraps():
    assert mod_index(1, 5) == 1
    assert mod_index(5, 5) == 5
    assert mod_index(6, 5) == 1
    assert mod_index(0, 3) == 3
    assert mod_index(-1, 3) == 2


def test_farey_sequence_small():
    assert farey_sequence(1) == [Fraction(0)]
    assert farey_sequence(5) == [
        Fraction(0),
        Fraction(1, 5),
        Fraction(1, 4),
        Fraction(1, 3),
        Fraction(2, 5),
        Fraction(1, 2),
        Fraction(3, 5),
        Fraction(2, 3),
        Fraction(3, 4),
        Fraction(4, 5),
    ]


@given(st.integers(min_value=1, max_value=60))
def test_farey_sequence_adjacency(n):
    """Consecutive fractions are unimodular with denominator sum > n."""
    seq = farey_sequence(n) + [Fraction(1)]
    for a, b in zip(seq, seq[1:]):
        assert a < b
        assert b.denominator * a.numerator - a.denominator * b.numerator == -1
        assert a.denominator + b.denominator > n
        assert is_farey_pair(a, b, n)


def test_farey_sequence_length():
    # |F_n on [0,1)| = 1 + sum of totients
    def phi(k):
        return sum(1 for i in range(1, k + 1) if math.gcd(i, k) == 1)

    for n in range(1, 12):
        assert len(farey_sequence(n)) == 1 + sum(phi(k) for k in range(2, n + 1))


def test_is_farey_pair_rejects():
    assert not is_farey_pair(Fraction(1, 3), Fraction(1, 2), 14)  # q+s too small
    assert not is_farey_pair(Fraction(1, 2), Fraction(1, 3), 5)  # wrong order
    assert not is_farey_pair(Fraction(1, 4), Fraction(3, 4), 4)  # not unimodular
    assert is_farey_pair(Fraction(4, 5), Fraction(1, 1), 5)


def test_arcid_normalises_and_validates():
    arc = ArcId(8, 8, 7)
    assert (arc.q, arc.s) == (7, 8)
    assert str(arc) == "K_8(7,8)"
    with pytest.raises(ValueError):
        ArcId(8, 2, 4)  # not coprime
    with pytest.raises(ValueError):
        ArcId(8, 3, 4)  # q + s <= n
    with pytest.raises(ValueError):
        ArcId(8, 3, 9)  # s > n


def test_farey_pairs_for_example():
    primary, conjugate = farey_pairs_for(ArcId(14, 3, 14))
    assert (primary.left, primary.right) == (Fraction(1, 3), Fraction(5, 14))
    assert (conjugate.left, conjugate.right) == (Fraction(9, 14), Fraction(2, 3))


def test_farey_pairs_by_adjacency_scan():
    """The computed pairs really are adjacent in the Farey sequence."""
    for n in range(2, 20):
        closed = farey_sequence(n) + [Fraction(1)]
        adjacent = set(zip(closed, closed[1:]))
        for arc in arcs_of_order(n):
            primary, conjugate = farey_pairs_for(arc)
            assert (primary.left, primary.right) in adjacent
            assert (conjugate.left, conjugate.right) in adjacent


def test_arc_params_types():
    assert arc_params(ArcId(8, 1, 8)).arc_type is ArcType.TYPE_0
    p = arc_params(ArcId(8, 7, 8))
    assert p.arc_type is ArcType.TYPE_I and p.d == 1
    p = arc_params(ArcId(6, 2, 5))
    assert p.arc_type is ArcType.TYPE_II and (p.d, p.excess) == (3, 1)
    p = arc_params(ArcId(8, 3, 8))
    assert p.arc_type is ArcType.TYPE_III and (p.d, p.excess) == (2, 2)
    # n=14, q=3: d=4, delta=gcd(4,14)=2
    p = arc_params(ArcId(14, 3, 14))
    assert (p.d, p.delta, p.d1, p.s1) == (4, 2, 2, 7)


def test_arcs_of_order_cover_circle():
    for n in range(2, 16):
        arcs = arcs_of_order(n)
        assert len(set(arcs)) == len(arcs)
        # every Farey gap maps to exactly one arc
        closed = farey_sequence(n) + [Fraction(1)]
        assert len(arcs) == len({tuple(sorted((a.denominator, b.denominator)))
                                 for a, b in zip(closed, closed[1:])})


def test_locate_turn():
    arc, left, right = locate_turn(14, Fraction(29, 84))  # theta = 29pi/42
    assert arc == ArcId(14, 3, 14)
    assert (left, right) == (Fraction(1, 3), Fraction(5, 14))


def test_star_worked_example():
    res = star(ArcId(6, 5, 6), 3)
    assert res is not None
    assert res.target == ArcId(6, 2, 5)
    assert res.a == 2


def test_star_undefined_cases():
    assert star(ArcId(6, 5, 6), 31) is None
    for n in range(7, 11):
        assert star(ArcId(n, 5, 6), 3) is None


def test_star_divisibility_lemma():
    """Whenever star is defined with c >= 2, c divides one denominator."""
    for n in range(2, 41):
        for arc in arcs_of_order(n):
            for c in range(2, n + 1):
                res = star(arc, c)
                if res is None:
                    continue
                assert arc.q % c == 0 or arc.s % c == 0
                em = endpoint_map(arc, c)  # also checks the endpoint algebra
                assert em.target == res.target


def test_endpoint_map_case():
    em = endpoint_map(ArcId(6, 5, 6), 3)
    assert em.case == "divides_shat"
    assert em.a == 2
    em = endpoint_map(ArcId(120, 24, 115), 4)
    assert em.case == "divides_qhat"
