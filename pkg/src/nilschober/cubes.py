"""
Bifactorization cubes and Beck-Chevalley vertices as functor words.

A bifactorization cube assigns a composition (standing for its module
category) to every vertex of {0,1}^d via a per-case binary formula.  The
Beck-Chevalley cube's vertices are 5-row functor words: restriction steps
go coarse-to-fine, induction steps fine-to-coarse, composed top to bottom.
"""

from __future__ import annotations

from dataclasses import dataclass

from .compositions import (
    Composition,
    Pair,
    PairCase,
    classify_pair,
    psi_inv,
    refines,
    total,
)
from .perms import Perm, compose
from .shuffles import enumerate_shuffles, shuffle_count


class CubeError(ValueError):
    pass


def _axis_names(case: PairCase) -> tuple[str, ...]:
    p = dict(case.params)
    tag = case.tag.removeprefix("Mirror")
    eps = lambda k: tuple(f"eps{i}" for i in range(1, k))
    etas = lambda k: tuple(f"eta{i}" for i in range(1, k))
    if tag == "AC_Unbal":
        return ("delta1", "delta2", *eps(p["c"]), "zeta", *etas(p["m"]))
    if tag == "AA":
        return ("delta1", "delta2", *eps(p["a"]))
    if tag in ("CA_Unbal", "OverLeft"):
        return ("delta1", "delta2", "zeta", *eps(p["b"]))
    if tag == "Swap":
        return ("delta1", "delta2", *eps(p["c"]))
    if tag == "OverRight":
        return ("delta1", "delta2", *eps(p["c"]), "zeta")
    raise CubeError(f"unknown case tag {case.tag!r}")


def _vertex_bits(case: PairCase, index: dict[str, int]) -> str:
    """The binary formula of the a >= c case families."""
    p = dict(case.params)
    d1, d2 = index["delta1"], index["delta2"]
    tag = case.tag
    eps = lambda k: [index[f"eps{i}"] for i in range(1, k)]
    if tag == "AC_Unbal":
        e = eps(p["c"])
        mid = [d1 | d2]
        return _bits(e + mid + e[::-1] + [index["zeta"]] + [0] * (p["m"] - 1))
    if tag == "AA":
        e = eps(p["a"])
        return _bits(e + [d1 | d2] + e[::-1])
    if tag == "CA_Unbal":
        e = eps(p["b"])
        return _bits([0] * (p["m"] - 1) + [index["zeta"]] + e + [d1 | d2] + e[::-1])
    if tag == "Swap":
        e = eps(p["c"])
        return _bits(e + [d1] + [0] * (p["l"] - 1) + [d2] + e[::-1])
    if tag == "OverLeft":
        e = eps(p["b"])
        return _bits(
            [0] * (p["m"] - 1) + [index["zeta"]] + e
            + [d1] + [0] * (p["l"] - 1) + [d2] + e[::-1]
        )
    if tag == "OverRight":
        e = eps(p["c"])
        return _bits(
            e + [d1] + [0] * (p["l"] - 1) + [d2] + e[::-1]
            + [index["zeta"]] + [0] * (p["m"] - 1)
        )
    raise CubeError(f"no direct formula for case {tag!r}")


def _bits(vals: list[int]) -> str:
    return "".join(str(v) for v in vals)


@dataclass(frozen=True)
class CubeSpec:
    """A bifactorization cube: vertex compositions over {0,1}^d.

    For a < c pairs the cube is the mirror of the matching a > c cube:
    every vertex composition is reversed, per the symmetry of the
    construction.
    """

    pair: Pair
    case: PairCase
    dim: int
    axis_names: tuple[str, ...]

    def vertex(self, index: tuple[int, ...]) -> Composition:
        if len(index) != self.dim or any(b not in (0, 1) for b in index):
            raise CubeError(f"bad cube index {index} for dimension {self.dim}")
        named = dict(zip(self.axis_names, index))
        if self.case.mirrored:
            inner = PairCase(self.case.tag.removeprefix("Mirror"), self.case.params)
            return tuple(reversed(psi_inv(_vertex_bits(inner, named))))
        return psi_inv(_vertex_bits(self.case, named))

    def bc_axes(self) -> tuple[str, ...]:
        """Axes of the Beck-Chevalley cube: the non-delta axes, then the
        top/bottom layer axis."""
        return self.axis_names[2:] + ("layer",)


def build_bifactorization(pair: Pair) -> CubeSpec:
    """The bifactorization cube of a pair of two-part compositions.

    >>> cube = build_bifactorization(((1, 2), (2, 1)))
    >>> [cube.vertex(i) for i in [(0, 0), (0, 1), (1, 0), (1, 1)]]
    [(3,), (1, 2), (2, 1), (1, 1, 1)]
    """
    case = classify_pair(*pair)
    names = _axis_names(case)
    cube = CubeSpec(pair, case, len(names), names)
    if cube.vertex((0, 1) + (0,) * (cube.dim - 2)) != pair[0]:
        raise CubeError(f"cube boundary mismatch at (0,1,0...) for {pair}")
    if cube.vertex((1, 0) + (0,) * (cube.dim - 2)) != pair[1]:
        raise CubeError(f"cube boundary mismatch at (1,0,0...) for {pair}")
    return cube


@dataclass(frozen=True)
class FunctorWord:
    """Five compositions read top to bottom; consecutive rows give one
    restriction (coarse to fine), induction (fine to coarse) or identity
    step each, composed downwards."""

    rows: tuple[Composition, ...]

    def steps(self) -> tuple[str, ...]:
        out = []
        for upper, lower in zip(self.rows, self.rows[1:]):
            if upper == lower:
                out.append("id")
            elif refines(upper, lower):
                out.append("res")
            elif refines(lower, upper):
                out.append("ind")
            else:
                raise CubeError(
                    f"rows {upper} and {lower} are not refinement-related"
                )
        return tuple(out)


@dataclass(frozen=True)
class BCVertex:
    """One vertex of the Beck-Chevalley cube: a functor word plus its free
    rank over the coefficient module and its diagram basis."""

    index: tuple[int, ...]  # (beta_1, ..., beta_{d-2}, layer)
    word: FunctorWord
    rank: int
    products: tuple[Perm, ...]  # composed outer o inner shuffles, sorted


def bc_vertex(cube: CubeSpec, beta: tuple[int, ...], layer: int) -> BCVertex:
    """The Beck-Chevalley vertex at (beta, layer).

    The rows are the cube vertices at (0,1,0...), (0,1,beta),
    (0,0,beta) or (1,1,beta), (1,0,beta), (1,0,0...).
    """
    if len(beta) != cube.dim - 2:
        raise CubeError(
            f"need {cube.dim - 2} index bits for this cube, got {beta}"
        )
    if layer not in (0, 1):
        raise CubeError(f"layer must be 0 or 1, got {layer}")
    zeros = (0,) * (cube.dim - 2)
    mid = (0, 0) if layer == 0 else (1, 1)
    rows = (
        cube.vertex((0, 1) + zeros),
        cube.vertex((0, 1) + beta),
        cube.vertex(mid + beta),
        cube.vertex((1, 0) + beta),
        cube.vertex((1, 0) + zeros),
    )
    word = FunctorWord(rows)
    products = word_products(word)
    rank = vertex_rank_from_word(word)
    if len(products) != rank:
        raise CubeError(
            f"shuffle products collide at {beta}, {layer}: "
            f"{len(products)} products for rank {rank}"
        )
    return BCVertex(beta + (layer,), word, rank, products)


def vertex_rank_from_word(word: FunctorWord) -> int:
    """Product over induction steps of the shuffle-set sizes."""
    rank = 1
    for upper, lower, step in zip(word.rows, word.rows[1:], word.steps()):
        if step == "ind":
            rank *= shuffle_count(lower, upper)
    return rank


def vertex_rank(v: BCVertex) -> int:
    return vertex_rank_from_word(v.word)


def word_products(word: FunctorWord) -> tuple[Perm, ...]:
    """The composed shuffle diagrams spanning the vertex.

    Walking the word top to bottom, each induction step contributes its
    shuffle set; later sets stack on top (compose on the left).
    """
    return tuple(sorted(word_factorizations(word)))


def word_factorizations(word: FunctorWord) -> dict[Perm, tuple[Perm, Perm]]:
    """Map each composed product to its (outer, inner) shuffle pair.

    The outer factor comes from the bottom induction step, the inner from
    the upper one; a missing step contributes the identity.  Products must
    determine the pair uniquely or the vertex is ill-formed.
    """
    (cd, outer_fine), (inner_coarse, inner_fine) = vertex_hom_layers(word)
    out: dict[Perm, tuple[Perm, Perm]] = {}
    for e in enumerate_shuffles(cd, outer_fine):
        for f in enumerate_shuffles(inner_coarse, inner_fine):
            w = compose(e, f)
            if w in out:
                raise CubeError(
                    f"product collision at {w}: ({e}, {f}) vs {out[w]}"
                )
            out[w] = (e, f)
    return out


def vertex_hom_layers(word: FunctorWord) -> tuple[Pair, Pair]:
    """((outer_target, outer_source), (inner_target, inner_source)): the two
    Hom layers of the vertex functor, outer first.

    outer: maps NH_{(c,d)} -> inner over NH_{row4}; inner: maps NH_C -> T
    over NH_B.  For words without an inner induction step the inner layer
    degenerates to (row, row).
    """
    rows = word.rows
    steps = word.steps()
    outer = (rows[4], rows[3])
    if steps[1] == "ind":
        inner = (rows[2], rows[1])
    elif steps[2] == "ind":
        inner = (rows[3], rows[2])
    else:
        inner = (rows[2], rows[2])
    return outer, inner


def edge_checks(cube: CubeSpec) -> None:
    """Raise unless every single-bit flip connects refinement-related
    compositions (equal vertices count, for the dummy axes)."""
    from itertools import product as iproduct

    for index in iproduct((0, 1), repeat=cube.dim):
        base = cube.vertex(index)
        for axis in range(cube.dim):
            if index[axis] == 1:
                continue
            flipped = list(index)
            flipped[axis] = 1
            other = cube.vertex(tuple(flipped))
            if not refines(base, other):
                raise CubeError(
                    f"edge {index} -> {tuple(flipped)} connects unrelated "
                    f"compositions {base}, {other}"
                )
