"""Segal's category Gamma and the Gamma-set H(pi).

Objects of Gamma are the finite sets n_bar = {1..n}; a morphism
m_bar -> n_bar is an ordered m-tuple of pairwise disjoint subsets of
{1..n}.  Also here: finite abelian groups (products of cyclic groups),
the assembly of a wreath operator in Gamma-wr-Gamma into a single Gamma
operator, and the contravariant action defining H(pi).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import reduce


class GammaShapeError(ValueError):
    pass


class GammaCompositionError(ValueError):
    pass


@dataclass(frozen=True)
class GammaOperator:
    source: int
    target: int
    subsets: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.subsets) != self.source:
            raise GammaShapeError(
                f"expected {self.source} subsets, got {len(self.subsets)}"
            )
        seen: set[int] = set()
        for sub in self.subsets:
            if list(sub) != sorted(sub):
                raise GammaShapeError(f"subset {sub} not sorted")
            for v in sub:
                if not 1 <= v <= self.target:
                    raise GammaShapeError(f"element {v} outside 1..{self.target}")
                if v in seen:
                    raise GammaShapeError(f"element {v} appears twice")
                seen.add(v)

    def __call__(self, i: int) -> tuple[int, ...]:
        """The i-th subset, 1-based."""
        return self.subsets[i - 1]

    def to_json(self) -> str:
        return json.dumps(
            {"src": self.source, "tgt": self.target,
             "subsets": [list(s) for s in self.subsets]}
        )


def identity_gamma(n: int) -> GammaOperator:
    return GammaOperator(n, n, tuple((i,) for i in range(1, n + 1)))


def compose_gamma(g: GammaOperator, f: GammaOperator) -> GammaOperator:
    """Composite of f: k -> m followed by g: m -> n; the i-th subset is the
    union of g's subsets over f's i-th subset."""
    if f.target != g.source:
        raise GammaCompositionError(
            f"cannot compose {f.source}->{f.target} with {g.source}->{g.target}"
        )
    subsets = tuple(
        tuple(sorted(itertools.chain.from_iterable(g(j) for j in f(i))))
        for i in range(1, f.source + 1)
    )
    return GammaOperator(f.source, g.target, subsets)


def hom_gamma(m: int, n: int) -> list[GammaOperator]:
    """All Gamma operators m_bar -> n_bar: each element of n_bar goes to at
    most one of the m subsets."""
    out = []
    for assignment in itertools.product(range(m + 1), repeat=n):
        subsets = tuple(
            tuple(v for v in range(1, n + 1) if assignment[v - 1] == i)
            for i in range(1, m + 1)
        )
        out.append(GammaOperator(m, n, subsets))
    return out


def assemble(
    outer: GammaOperator,
    components: dict[tuple[int, int], GammaOperator],
    source_sizes: list[int],
    target_sizes: list[int],
) -> GammaOperator:
    """Assembly of a wreath operator in Gamma-wr-Gamma.

    outer: k -> l; source block i has size source_sizes[i-1], target block
    j has size target_sizes[j-1]; components[(i, j)] : n_i -> m_j is given
    for each j in outer's i-th subset.  The result maps the concatenated
    source blocks to the concatenated target blocks by offset unions.
    """
    if len(source_sizes) != outer.source or len(target_sizes) != outer.target:
        raise GammaShapeError("block size lists do not match outer endpoints")
    tgt_offsets = [0]
    for m_j in target_sizes:
        tgt_offsets.append(tgt_offsets[-1] + m_j)
    subsets: list[tuple[int, ...]] = []
    for i in range(1, outer.source + 1):
        n_i = source_sizes[i - 1]
        for j in outer(i):
            u = components[(i, j)]
            if u.source != n_i or u.target != target_sizes[j - 1]:
                raise GammaShapeError(
                    f"component ({i},{j}) has shape {u.source}->{u.target}, "
                    f"expected {n_i}->{target_sizes[j - 1]}"
                )
        for v in range(1, n_i + 1):
            image = sorted(
                tgt_offsets[j - 1] + w
                for j in outer(i)
                for w in components[(i, j)](v)
            )
            subsets.append(tuple(image))
    return GammaOperator(sum(source_sizes), sum(target_sizes), tuple(subsets))


# --- finite abelian groups --------------------------------------------


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Product of cyclic groups Z/m_1 x ... x Z/m_r, written additively."""

    cyclic_orders: tuple[int, ...]

    def __post_init__(self):
        if any(m < 1 for m in self.cyclic_orders):
            raise ValueError("cyclic orders must be >= 1")

    @property
    def order(self) -> int:
        return reduce(lambda a, b: a * b, self.cyclic_orders, 1)

    @property
    def neutral(self) -> tuple[int, ...]:
        return (0,) * len(self.cyclic_orders)

    def add(self, x: tuple[int, ...], y: tuple[int, ...]) -> tuple[int, ...]:
        return tuple((a + b) % m for a, b, m in zip(x, y, self.cyclic_orders))

    def elements(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*(range(m) for m in self.cyclic_orders)))

    def non_neutral(self) -> list[tuple[int, ...]]:
        e = self.neutral
        return [x for x in self.elements() if x != e]

    def spec_string(self) -> str:
        return "x".join(f"z{m}" for m in self.cyclic_orders)


def parse_group(spec: str) -> FiniteAbelianGroup:
    """Parse a group spec like "z2" or "z2xz4"."""
    orders = []
    for part in spec.lower().split("x"):
        if not part.startswith("z") or not part[1:].isdigit():
            raise ValueError(f"bad group spec {spec!r}")
        orders.append(int(part[1:]))
    return FiniteAbelianGroup(tuple(orders))


def h_pi_act(
    pi: FiniteAbelianGroup, u: GammaOperator, x: tuple
) -> tuple:
    """The Gamma-set H(pi): x in pi^n pulled back along u: m -> n gives the
    tuple in pi^m whose i-th entry is the sum of x over u's i-th subset."""
    if len(x) != u.target:
        raise GammaShapeError(f"element has length {len(x)}, expected {u.target}")
    out = []
    for i in range(1, u.source + 1):
        acc = pi.neutral
        for j in u(i):
            acc = pi.add(acc, x[j - 1])
        out.append(acc)
    return tuple(out)
