"""Empirical distortion measurement by breadth-first Cayley ball search.

The ambient ball is grown layer by layer from the identity, one multiplication
per generator (and inverse) per frontier element, deduplicating on coordinate
tuples.  Delta(n) is the largest subgroup length among ball elements that lie
in the subgroup; for a cyclic subgroup <u> the subgroup length of u^k is |k|
exactly, otherwise a second search over the subgroup's own generators supplies
the lengths.  When that second search hits a cap before resolving every
member, the affected table rows are reported as lower bounds and flagged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import CapExceededError
from .hall import from_coordinates, to_coordinates
from .magnus import embed, identity, inverse, multiply
from .presentation import Presentation
from .subgroups import SubgroupStandardBasis, induced_basis, member

DEFAULT_MAX_ELEMENTS = 5 * 10**6


@dataclass
class BallIndex:
    presentation: Presentation
    radius: int
    lengths: dict

    def __len__(self) -> int:
        return len(self.lengths)

    def length(self, coords) -> int | None:
        return self.lengths.get(tuple(coords))


def _steps(gens, presentation):
    seen = {}
    for word in gens:
        g = embed(tuple(word), presentation)
        for h in (g, inverse(g)):
            if not h.is_identity():
                seen.setdefault(to_coordinates(h), h)
    return list(seen.values())


def enumerate_ball(
    presentation: Presentation,
    gens,
    radius: int,
    *,
    max_elements: int = DEFAULT_MAX_ELEMENTS,
) -> BallIndex:
    """All elements within the given word length of the identity."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    if not gens:
        raise ValueError("need at least one generator")
    steps = _steps(gens, presentation)
    start = identity(presentation)
    lengths = {to_coordinates(start): 0}
    frontier = [start]
    for layer in range(1, radius + 1):
        new: list = []
        for g in frontier:
            for s in steps:
                h = multiply(g, s)
                key = to_coordinates(h)
                if key not in lengths:
                    if len(lengths) >= max_elements:
                        raise CapExceededError(
                            f"ball exceeded {max_elements} elements at radius {layer}"
                        )
                    lengths[key] = layer
                    new.append(h)
        if not new:
            break
        frontier = new
    return BallIndex(presentation, radius, lengths)


@dataclass
class DistortionRow:
    n: int
    delta: int
    exact: bool


@dataclass
class DistortionTable:
    presentation: Presentation
    radius: int
    rows: tuple[DistortionRow, ...]

    @property
    def complete(self) -> bool:
        return all(row.exact for row in self.rows)

    def to_csv(self) -> str:
        lines = ["n,delta,exact"]
        for row in self.rows:
            lines.append(f"{row.n},{row.delta},{'true' if row.exact else 'false'}")
        return "\n".join(lines) + "\n"


def _ambient_words(presentation):
    return [((i, 1),) for i in range(presentation.m)]


def _cyclic_lengths(basis: SubgroupStandardBasis, members):
    entry = basis.entries[0]
    j = entry.pivot
    a = entry.coords[j]
    return {coords: abs(coords[j] // a) for coords in members}


def _bfs_lengths(presentation, gens, targets, max_elements, radius_cap):
    """Subgroup lengths for the target coordinate set, by BFS over gens.

    Stops once every target is resolved or a cap is reached; targets still
    missing from the result are unresolved and the caller flags their rows.
    """
    steps = _steps(gens, presentation)
    start = identity(presentation)
    lengths = {to_coordinates(start): 0}
    uncovered = set(targets) - set(lengths)
    frontier = [start]
    layer = 0
    while uncovered and frontier and layer < radius_cap:
        layer += 1
        new: list = []
        capped = False
        for g in frontier:
            for s in steps:
                h = multiply(g, s)
                key = to_coordinates(h)
                if key not in lengths:
                    if len(lengths) >= max_elements:
                        capped = True
                        break
                    lengths[key] = layer
                    uncovered.discard(key)
                    new.append(h)
            if capped:
                break
        if capped:
            break
        frontier = new
    return lengths


def measure_distortion(
    gens,
    presentation: Presentation,
    radius: int,
    *,
    max_elements: int = DEFAULT_MAX_ELEMENTS,
    subgroup_radius_cap: int | None = None,
) -> DistortionTable:
    gens = [tuple(w) for w in gens]
    ball = enumerate_ball(
        presentation, _ambient_words(presentation), radius, max_elements=max_elements
    )
    basis = induced_basis(gens, presentation)

    members = {}
    for coords, flen in ball.lengths.items():
        if member(basis, from_coordinates(coords, presentation)):
            members[coords] = flen

    if len(basis) == 1:
        hlengths = _cyclic_lengths(basis, members)
    elif len(basis) == 0:
        hlengths = {coords: 0 for coords in members}
    else:
        if subgroup_radius_cap is None:
            subgroup_radius_cap = max(4 * radius + 4, 16)
        hlengths = _bfs_lengths(
            presentation, gens, members, max_elements, subgroup_radius_cap
        )

    # a row is exact when every member inside that radius got a resolved
    # subgroup length; otherwise its delta is only a lower bound
    rows = []
    for n in range(1, radius + 1):
        delta = 0
        exact = True
        for coords, flen in members.items():
            if flen > n:
                continue
            hl = hlengths.get(coords)
            if hl is None:
                exact = False
            elif hl > delta:
                delta = hl
        rows.append(DistortionRow(n, delta, exact))
    return DistortionTable(presentation, radius, tuple(rows))


def estimate_exponent(table: DistortionTable) -> float:
    """Least-squares slope of log delta against log n, over the largest half
    of the radii with nonzero delta.  Needs at least four such radii."""
    nonzero = [(row.n, row.delta) for row in table.rows if row.delta > 0]
    if len(nonzero) < 4:
        raise ValueError(
            f"need at least 4 radii with nonzero delta, have {len(nonzero)}"
        )
    window = nonzero[len(nonzero) // 2 :]
    xs = [math.log(n) for n, _ in window]
    ys = [math.log(d) for _, d in window]
    mean_x = sum(xs) / len(xs)
    mean_y = sum(ys) / len(ys)
    var = sum((x - mean_x) ** 2 for x in xs)
    cov = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    return cov / var
