"""Diagram-set fidelity for the worked ((2,3),(2,3)) computation.

Beyond the rank tables, the full permutation sets at every vertex of
B^3, B^2 and B^1 are pinned down; these are the strongest available
desk values for the engine.
"""

from nilschober.fiber import total_fiber


def _perms(*rows):
    return tuple(sorted(tuple(int(ch) for ch in row) for row in rows))


B3_SETS = {
    (0, 0, 0): _perms(
        "12345", "13245", "14235", "15234", "23145",
        "24135", "25134", "34125", "35124", "45123",
    ),
    (0, 0, 1): _perms("12345"),
    (0, 1, 0): _perms(
        "12345", "12354", "12453", "13245", "13254", "14235",
        "14253", "15234", "15243", "23145", "23154", "24135",
        "24153", "25134", "25143", "34125", "35124", "45123",
    ),
    (0, 1, 1): _perms("12345", "12453", "12354"),
    (1, 0, 0): _perms(
        "12345", "12435", "12534", "21345", "21435", "21534",
        "13245", "14235", "15234", "23145", "24135", "25134",
    ),
    (1, 0, 1): _perms(
        "12345", "12435", "12534", "21345", "21435", "21534",
    ),
    (1, 1, 0): _perms(
        "12345", "12354", "12435", "12453", "12534", "12543",
        "21345", "21354", "21435", "21453", "21534", "21543",
        "13245", "13254", "14235", "14253", "15234", "15243",
        "23145", "23154", "24135", "24153", "25134", "25143",
    ),
    (1, 1, 1): _perms(
        "12345", "12354", "12435", "12453", "12534", "12543",
        "21345", "21354", "21435", "21453", "21534", "21543",
    ),
}

B2_SETS = {
    (0, 0): _perms(
        "13245", "14235", "15234", "23145", "24135",
        "25134", "34125", "35124", "45123",
    ),
    # ranks force 6 here (9 -> 6 in the table); the complement of the
    # (1,0,1) set inside the (1,0,0) set
    (1, 0): _perms(
        "13245", "14235", "15234", "23145", "24135", "25134",
    ),
    (0, 1): _perms(
        "13245", "13254", "14235", "14253", "15234", "15243",
        "23145", "23154", "24135", "24153", "25134", "25143",
        "34125", "35124", "45123",
    ),
    (1, 1): _perms(
        "13245", "13254", "14235", "14253", "15234", "15243",
        "23145", "23154", "24135", "24153", "25134", "25143",
    ),
}

B1_SET = _perms("34125", "35124", "45123")


def test_b3_vertex_sets_match_figures():
    rep = total_fiber(((2, 3), (2, 3)))
    assert rep.levels[0].vertex_sets == B3_SETS


def test_b2_vertex_sets_match_figures():
    rep = total_fiber(((2, 3), (2, 3)))
    assert rep.levels[1].vertex_sets == B2_SETS


def test_b1_vertex_sets_match_figures():
    rep = total_fiber(((2, 3), (2, 3)))
    assert rep.levels[2].vertex_sets == {(0,): B1_SET, (1,): B1_SET}
    assert rep.levels[3].vertex_sets == {(): ()}
