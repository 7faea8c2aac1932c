"""Finite dimension-truncated Theta_n-sets.

The central object is the reduced Eilenberg-MacLane Theta_n-set
K(pi,n) = gamma_n^*(H pi): a tree evaluates to labelings of its height-n
vertices by elements of pi, operators act through gamma_n and subset
sums.  Also here: products of representables, reduction to the
non-degenerate core, cell censuses, mod-2 cellular chains with homology,
and an independent (multi)simplicial oracle for the homology.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

from .gamma import FiniteAbelianGroup, h_pi_act
from .theta import (
    ThetaOperator,
    codim1_retractions,
    compose_theta,
    gamma_n,
    hom_theta,
    identity_theta,
    is_face,
)
from .trees import LEAF, LevelTree, enumerate_trees, is_pruned, vertices_at_height


@dataclass(frozen=True)
class Cell:
    """A tree together with labels for its height-n vertices, in planar
    order; the elements of K(pi,n)."""

    tree: LevelTree
    labels: tuple

    @property
    def dimension(self) -> int:
        return self.tree.edges


@dataclass
class FiniteThetaSet:
    """Lazy presheaf on Theta_n, truncated at dimension dim_bound."""

    level: int
    dim_bound: int
    eval_tree: Callable[[LevelTree], list]
    action: Callable[[ThetaOperator, object], object]
    # optional fast paths for non-degenerate cells (used by K(pi,n))
    nondeg_count: Optional[Callable[[LevelTree], int]] = None
    nondeg_elements: Optional[Callable[[LevelTree], list]] = None

    def eval(self, tree: LevelTree) -> list:
        return self.eval_tree(tree)

    def act(self, f: ThetaOperator, x):
        return self.action(f, x)


def em_set(pi: FiniteAbelianGroup, n: int, dim_bound: int) -> FiniteThetaSet:
    """The Eilenberg-MacLane Theta_n-set K(pi,n)."""
    if n < 1:
        raise ValueError("level n must be >= 1")

    def eval_tree(tree: LevelTree) -> list:
        k = len(vertices_at_height(tree, n))
        return list(itertools.product(pi.elements(), repeat=k))

    def action(f: ThetaOperator, x):
        return h_pi_act(pi, gamma_n(f), x)

    def nondeg_count(tree: LevelTree) -> int:
        if tree == LEAF:
            return 1
        if not is_pruned(tree, n):
            return 0
        return (pi.order - 1) ** len(vertices_at_height(tree, n))

    def nondeg_elements(tree: LevelTree) -> list:
        if tree == LEAF:
            return [()]
        if not is_pruned(tree, n):
            return []
        k = len(vertices_at_height(tree, n))
        return list(itertools.product(pi.non_neutral(), repeat=k))

    return FiniteThetaSet(n, dim_bound, eval_tree, action,
                          nondeg_count, nondeg_elements)


def product_set(
    s: LevelTree, t: LevelTree, n: int, dim_bound: int
) -> FiniteThetaSet:
    """The product of representables Theta_n[S] x Theta_n[T]: elements over
    U are pairs of operators U -> S, U -> T acting by precomposition."""

    def eval_tree(tree: LevelTree) -> list:
        return list(
            itertools.product(hom_theta(tree, s, n), hom_theta(tree, t, n))
        )

    def action(f: ThetaOperator, x):
        a, b = x
        return (compose_theta(a, f), compose_theta(b, f))

    return FiniteThetaSet(n, dim_bound, eval_tree, action)


def is_nondegenerate(x_set: FiniteThetaSet, tree: LevelTree, x) -> bool:
    """True iff x is not the image of anything along a codimension-1
    retraction out of the tree."""
    for r, s in codim1_retractions(tree, x_set.level):
        candidate = x_set.act(s, x)
        if x_set.act(r, candidate) == x:
            return False
    return True


def reduce_element(
    x_set: FiniteThetaSet, tree: LevelTree, x
) -> tuple[LevelTree, ThetaOperator, object]:
    """The unique non-degenerate core: a tree U, a degeneracy d: S -> U and
    a non-degenerate y over U with act(d, y) = x."""
    degeneracy = identity_theta(tree, x_set.level)
    y = x
    progress = True
    while progress:
        progress = False
        for r, s in codim1_retractions(tree, x_set.level):
            candidate = x_set.act(s, y)
            if x_set.act(r, candidate) == y:
                degeneracy = compose_theta(r, degeneracy)
                tree = r.target
                y = candidate
                progress = True
                break
    return tree, degeneracy, y


def cell_census(x_set: FiniteThetaSet, dim_bound: int) -> dict[int, int]:
    """Count of non-degenerate cells per dimension 0..dim_bound."""
    census = {}
    for d in range(dim_bound + 1):
        total = 0
        for tree in enumerate_trees(x_set.level, d):
            if x_set.nondeg_count is not None:
                total += x_set.nondeg_count(tree)
            else:
                total += sum(
                    1 for x in x_set.eval(tree)
                    if is_nondegenerate(x_set, tree, x)
                )
        census[d] = total
    return census


def product_census(
    s: LevelTree, t: LevelTree, n: int, dim_bound: int
) -> dict[int, int]:
    return cell_census(product_set(s, t, n, dim_bound), dim_bound)


# --- mod-2 cellular chains --------------------------------------------


class BoundarySquareError(AssertionError):
    """Raised when the boundary of a boundary fails to vanish."""


@dataclass
class F2ChainComplex:
    """Basis cells per degree and boundary matrices over F2; the matrix in
    degree d has one bitmask row per degree-d cell, bits indexed by the
    degree-(d-1) basis."""

    dim_bound: int
    basis: list[list[tuple[LevelTree, object]]]
    boundary: list[list[int]]


@lru_cache(maxsize=None)
def _faces_between(
    source: LevelTree, target: LevelTree, n: int
) -> tuple[ThetaOperator, ...]:
    return tuple(f for f in hom_theta(source, target, n) if is_face(f))


def chain_complex(x_set: FiniteThetaSet, dim_bound: int) -> F2ChainComplex:
    """Cellular F2 chains: the boundary of a non-degenerate cell sums its
    reductions along all codimension-1 monomorphisms, keeping only the
    summands that stay non-degenerate; checks that the boundary squares
    to zero."""
    n = x_set.level
    basis: list[list[tuple[LevelTree, object]]] = []
    for d in range(dim_bound + 1):
        layer = []
        for tree in enumerate_trees(n, d):
            if x_set.nondeg_elements is not None:
                layer.extend((tree, x) for x in x_set.nondeg_elements(tree))
            else:
                layer.extend(
                    (tree, x)
                    for x in x_set.eval(tree)
                    if is_nondegenerate(x_set, tree, x)
                )
        basis.append(layer)
    index = [
        {cell: i for i, cell in enumerate(layer)} for layer in basis
    ]
    boundary: list[list[int]] = [[0] * len(basis[0])]  # degree 0 maps to zero
    for d in range(1, dim_bound + 1):
        rows = []
        for tree, x in basis[d]:
            hits: Counter = Counter()
            for small in enumerate_trees(n, d - 1):
                for face in _faces_between(small, tree, n):
                    y0 = x_set.act(face, x)
                    core_tree, _, y = reduce_element(x_set, small, y0)
                    if core_tree.edges == d - 1:
                        hits[(core_tree, y)] += 1
            row = 0
            for cell, count in hits.items():
                if count % 2:
                    row |= 1 << index[d - 1][cell]
            rows.append(row)
        boundary.append(rows)
    for d in range(2, dim_bound + 1):
        for row, cell in zip(boundary[d], basis[d]):
            acc = 0
            bits = row
            while bits:
                i = (bits & -bits).bit_length() - 1
                acc ^= boundary[d - 1][i]
                bits &= bits - 1
            if acc:
                raise BoundarySquareError(
                    f"boundary squared nonzero on {cell[0]} / {cell[1]}"
                )
    return F2ChainComplex(dim_bound, basis, boundary)


def gf2_rank(rows: list[int]) -> int:
    rank = 0
    pivots: list[int] = []
    for row in rows:
        for p in pivots:
            row = min(row, row ^ p)
        if row:
            pivots.append(row)
            pivots.sort(reverse=True)
            rank += 1
    return rank


def homology_f2(complex_: F2ChainComplex, degree: int) -> int:
    """F2 Betti number: dim ker boundary_d minus rank boundary_{d+1}."""
    if degree + 1 > complex_.dim_bound:
        raise ValueError(
            f"degree {degree} needs boundary {degree + 1} beyond the "
            f"truncation {complex_.dim_bound}"
        )
    kernel = len(complex_.basis[degree]) - gf2_rank(complex_.boundary[degree])
    return kernel - gf2_rank(complex_.boundary[degree + 1])


# --- independent (multi)simplicial oracle ------------------------------


def _nerve_betti(pi: FiniteAbelianGroup, dim_bound: int) -> list[int]:
    """Normalized F2 chains of the classical nerve of pi, built directly
    from the group multiplication."""
    basis = [
        list(itertools.product(pi.non_neutral(), repeat=k))
        for k in range(dim_bound + 1)
    ]
    index = [{x: i for i, x in enumerate(layer)} for layer in basis]
    neutral = pi.neutral
    boundary: list[list[int]] = [[0] * len(basis[0])]
    for k in range(1, dim_bound + 1):
        rows = []
        for x in basis[k]:
            hits: Counter = Counter()
            for i in range(k + 1):
                if i == 0:
                    face = x[1:]
                elif i == k:
                    face = x[:-1]
                else:
                    face = x[: i - 1] + (pi.add(x[i - 1], x[i]),) + x[i + 1 :]
                if neutral not in face:
                    hits[face] += 1
            row = 0
            for face, count in hits.items():
                if count % 2:
                    row |= 1 << index[k - 1][face]
            rows.append(row)
        boundary.append(rows)
    return [
        (len(basis[d]) - gf2_rank(boundary[d])) - gf2_rank(boundary[d + 1])
        for d in range(dim_bound)
    ]


def _double_nerve_betti(pi: FiniteAbelianGroup, dim_bound: int) -> list[int]:
    """F2 Betti numbers of the double nerve of pi (the bisimplicial set
    underlying K(pi,2) pulled back along the bi-simplicial diagonal),
    via the total complex of its doubly-normalized chains.

    Cells in bidegree (a,b) are a x b matrices over pi; the doubly
    non-degenerate ones are those without an all-neutral row or column.
    Horizontal faces drop or merge rows, vertical faces columns.
    """
    neutral = pi.neutral

    def nondeg(matrix: tuple) -> bool:
        a = len(matrix)
        b = len(matrix[0]) if a else 0
        if any(all(v == neutral for v in row) for row in matrix):
            return False
        return not any(
            all(matrix[i][j] == neutral for i in range(a)) for j in range(b)
        )

    basis: list[list[tuple]] = [[] for _ in range(dim_bound + 1)]
    basis[0].append((0, 0, ()))
    for a in range(1, dim_bound):
        for b in range(1, dim_bound + 1 - a):
            rows_pool = list(itertools.product(pi.elements(), repeat=b))
            for matrix in itertools.product(rows_pool, repeat=a):
                if nondeg(matrix):
                    basis[a + b].append((a, b, matrix))
    index = [{cell: i for i, cell in enumerate(layer)} for layer in basis]

    def row_faces(matrix: tuple, a: int) -> list[tuple]:
        out = []
        for i in range(a + 1):
            if i == 0:
                out.append(matrix[1:])
            elif i == a:
                out.append(matrix[:-1])
            else:
                merged = tuple(
                    pi.add(u, v) for u, v in zip(matrix[i - 1], matrix[i])
                )
                out.append(matrix[: i - 1] + (merged,) + matrix[i + 1 :])
        return out

    def transpose(matrix: tuple) -> tuple:
        return tuple(zip(*matrix))

    boundary: list[list[int]] = [[0] * len(basis[0])]
    for d in range(1, dim_bound + 1):
        rows = []
        for a, b, matrix in basis[d]:
            hits: Counter = Counter()
            for face in row_faces(matrix, a):
                key = (a - 1, b, face)
                if key in index[d - 1]:
                    hits[key] += 1
            for face in row_faces(transpose(matrix), b):
                key = (a, b - 1, transpose(face))
                if key in index[d - 1]:
                    hits[key] += 1
            row = 0
            for cell, count in hits.items():
                if count % 2:
                    row |= 1 << index[d - 1][cell]
            rows.append(row)
        boundary.append(rows)
    return [
        (len(basis[d]) - gf2_rank(boundary[d])) - gf2_rank(boundary[d + 1])
        for d in range(dim_bound)
    ]


def oracle_multisimplicial(
    pi: FiniteAbelianGroup, n: int, dim_bound: int
) -> list[int]:
    """Independent F2 Betti numbers for degrees 0..dim_bound-1: the nerve
    of pi for n=1, the double nerve (via its total complex) for n=2."""
    if n == 1:
        return _nerve_betti(pi, dim_bound)
    if n == 2:
        return _double_nerve_betti(pi, dim_bound)
    raise ValueError(f"oracle unsupported for level {n}")
