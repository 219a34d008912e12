"""The set-difference fiber engine and the structural axiom checks."""

from math import comb

import pytest

from nilschober.compositions import all_compositions, refines
from nilschober.fiber import (
    FiberContainmentError,
    FiberError,
    check_far_commutativity,
    check_recursiveness,
    collapse_order,
    initial_cube,
    is_twist_pair,
    take_fiber_along,
    total_fiber,
)
from nilschober.cubes import build_bifactorization
from nilschober.perms import block_cross, compose
from nilschober.report import two_part_pairs
from nilschober.shuffles import LevelParams, anycross, mincross


def test_initial_cube_worked_example():
    cube = initial_cube(((2, 3), (2, 3)))
    sizes = {i: len(s) for i, s in cube.vertex_sets.items()}
    assert sizes == {
        (0, 0, 0): 10, (1, 0, 0): 12, (0, 1, 0): 18, (1, 1, 0): 24,
        (0, 0, 1): 1, (1, 0, 1): 6, (0, 1, 1): 3, (1, 1, 1): 12,
    }


def test_initial_cube_nh3_swap():
    cube = initial_cube(((1, 2), (2, 1)))
    assert cube.vertex_sets[(0,)] == ((1, 2, 3), (2, 1, 3), (3, 1, 2))
    assert cube.vertex_sets[(1,)] == ((1, 2, 3), (2, 1, 3))


@pytest.mark.parametrize("n", range(2, 7))
def test_bottom_all_ones_is_identity_only_refinement(n):
    """At the bottom-most all-ones index the inner refinement is identity
    only, so the set size is the multinomial shuffle count of the word's
    middle row (for the a = c families, where rows 2-4 coincide)."""
    from nilschober.cubes import bc_vertex
    from nilschober.shuffles import shuffle_count

    for pair in two_part_pairs(n):
        if pair[0][0] != pair[1][0]:
            continue
        spec = build_bifactorization(pair)
        cube = initial_cube(pair)
        ones_beta = (1,) * (spec.dim - 2)
        word = bc_vertex(spec, ones_beta, 1).word
        assert word.rows[1] == word.rows[2] == word.rows[3]
        assert len(cube.vertex_sets[ones_beta + (1,)]) == shuffle_count(
            pair[1], word.rows[1]
        )


def test_worked_example_level_tables():
    rep = total_fiber(((2, 3), (2, 3)))
    tables = {level: dict(entries) for level, entries in rep.level_table()}
    assert tables[3] == {
        (0, 0, 0): 10, (1, 0, 0): 12, (0, 1, 0): 18, (1, 1, 0): 24,
        (0, 0, 1): 1, (1, 0, 1): 6, (0, 1, 1): 3, (1, 1, 1): 12,
    }
    assert tables[2] == {(0, 0): 9, (1, 0): 6, (0, 1): 15, (1, 1): 12}
    assert tables[1] == {(0,): 3, (1,): 3}
    assert tables[0] == {(): 0}
    assert rep.verdict == "Vanishes"


def test_worked_example_b1_diagrams():
    rep = total_fiber(((2, 3), (2, 3)))
    b1 = rep.levels[2]
    expected = ((3, 4, 1, 2, 5), (3, 5, 1, 2, 4), (4, 5, 1, 2, 3))
    assert b1.vertex_sets[(0,)] == expected
    assert b1.vertex_sets[(1,)] == expected


@pytest.mark.parametrize("n", range(2, 7))
def test_defect_vanishing_sweep(n):
    for pair in two_part_pairs(n):
        if not is_twist_pair(pair):
            assert total_fiber(pair).verdict == "Vanishes", pair


@pytest.mark.parametrize("n", range(2, 7))
def test_twist_invertibility_sweep(n):
    for pair in two_part_pairs(n):
        if is_twist_pair(pair):
            rep = total_fiber(pair)
            assert rep.verdict == "FlipEquivalence", pair
            assert rep.residual == (block_cross(*pair[0]),), pair
            assert rep.flip_blocks == pair[0]


@pytest.mark.parametrize("n", range(2, 7))
def test_rank_accounting(n):
    """rank(child) = rank(top) - rank(bottom) at every collapse, on top of
    the containment check the engine itself enforces."""
    for pair in two_part_pairs(n):
        rep = total_fiber(pair)
        for parent, child in zip(rep.levels, rep.levels[1:]):
            axis_pos = next(
                i for i, a in enumerate(parent.axes) if a not in child.axes
            )
            for index, dset in child.vertex_sets.items():
                top = index[:axis_pos] + (0,) + index[axis_pos:]
                bottom = index[:axis_pos] + (1,) + index[axis_pos:]
                assert len(dset) == len(parent.vertex_sets[top]) - len(
                    parent.vertex_sets[bottom]
                )


def test_mirrored_pairs_report_mirror():
    rep = total_fiber(((1, 2), (2, 1)))
    assert rep.mirrored
    assert rep.verdict == "FlipEquivalence"
    # transported residual is W = [3,1,2], the crossing of blocks (1)(2,3)
    assert rep.residual == ((3, 1, 2),)
    assert not total_fiber(((2, 1), (1, 2))).mirrored


def test_level_sets_match_levelparams():
    """Engine vertex sets at intermediate levels equal the composed
    Anycross x Mincross products of the level parameters (AC family).

    After i collapses the index reads (beta_1 .. beta_{c-i}, tail); the
    last palindrome bit selects the primed (1) or unprimed (0) variant of
    the level-i sets.
    """
    for c, m in [(2, 1), (2, 2), (3, 1), (3, 2)]:
        pair = ((c, c + m), (c, c + m))
        rep = total_fiber(pair)
        for i in range(0, c):
            cube = rep.levels[i]
            for index, dset in cube.vertex_sets.items():
                if i == 0:
                    # the layer bit selects the primed variant at level 0
                    head = index[: c - 1]
                    primed = index[-1] == 1
                    tail = index[c - 1 : -1]
                else:
                    head = index[: c - i - 1]
                    primed = index[c - i - 1] == 1
                    tail = index[c - i :]
                p = LevelParams(c=c, m=m, level=i,
                                head_bits=head, tail_bits=tail)
                prods = tuple(
                    sorted(
                        compose(e, f)
                        for e in anycross(p, primed)
                        for f in mincross(p, primed)
                    )
                )
                assert prods == dset, (pair, i, index)


def test_terminal_cardinality():
    for c, m in [(1, 1), (2, 1), (2, 2), (3, 1)]:
        pair = ((c, c + m), (c, c + m))
        rep = total_fiber(pair)
        terminal = next(cube for cube in rep.levels if cube.level == m)
        for dset in terminal.vertex_sets.values():
            assert len(dset) == comb(c + m, c)


def test_wrong_collapse_order_fails_containment():
    cube = initial_cube(((2, 3), (2, 3)))
    cube = take_fiber_along(cube, "layer")
    with pytest.raises(FiberContainmentError):
        take_fiber_along(cube, "zeta")


def test_exhausted_axis_rejected():
    cube = initial_cube(((1, 2), (2, 1)))
    collapsed = take_fiber_along(cube, "layer")
    with pytest.raises(FiberError):
        take_fiber_along(collapsed, "layer")


def test_alternate_tail_order_agrees():
    for pair in [((2, 3), (2, 3)), ((2, 4), (2, 4)), ((3, 3), (3, 3)),
                 ((2, 2), (1, 3))]:
        a = total_fiber(pair)
        b = total_fiber(pair, alternate_tail=True)
        assert a.verdict == b.verdict
        assert a.residual == b.residual


def test_collapse_order_shape():
    spec = build_bifactorization(((3, 4), (3, 4)))
    assert collapse_order(spec) == ["layer", "eps2", "eps1", "zeta"]
    spec2 = build_bifactorization(((2, 4), (2, 4)))
    assert collapse_order(spec2) == ["layer", "eps1", "zeta", "eta1"]
    assert collapse_order(spec2, alternate_tail=True) == [
        "layer", "eps1", "eta1", "zeta",
    ]


def test_recursiveness_examples():
    assert check_recursiveness(5, (2, 3), 2)
    assert check_recursiveness(5, (5,), 1)  # trivial one-part restriction
    assert check_recursiveness(4, (1, 2, 1), 2)
    with pytest.raises(FiberError):
        check_recursiveness(5, (2, 2), 1)
    with pytest.raises(FiberError):
        check_recursiveness(4, (2, 2), 3)


@pytest.mark.parametrize("n", range(2, 6))
def test_recursiveness_sweep(n):
    for comp in all_compositions(n):
        for i in range(1, len(comp) + 1):
            assert check_recursiveness(n, comp, i)


def test_far_commutativity_examples():
    assert check_far_commutativity((2, 2), (2,), (1, 1), (2,), (1, 1))
    assert check_far_commutativity((2, 2), (2,), (2,), (2,), (1, 1))
    with pytest.raises(FiberError):
        check_far_commutativity((2, 2), (1, 1), (2,), (2,), (2,))


@pytest.mark.parametrize("n", range(2, 6))
def test_far_commutativity_sweep(n):
    for a in range(1, n):
        b = n - a
        for c0 in all_compositions(a):
            for c1 in all_compositions(a):
                if not refines(c0, c1):
                    continue
                for d0 in all_compositions(b):
                    for d1 in all_compositions(b):
                        if not refines(d0, d1):
                            continue
                        assert check_far_commutativity((a, b), c0, c1, d0, d1)


def test_sweeps_extend_to_seven_strands():
    """Beyond the required range: one more strand of both axiom sweeps."""
    for pair in two_part_pairs(7):
        rep = total_fiber(pair)
        if is_twist_pair(pair):
            assert rep.verdict == "FlipEquivalence", pair
            assert rep.residual == (block_cross(*pair[0]),)
        else:
            assert rep.verdict == "Vanishes", pair
