"""Finite semimetric spaces with exact distance matrices.

A space is a finite list of labelled points plus a symmetric, positive
off-diagonal distance matrix.  Axiom checks (triangle / ultrametric
inequality), distance-set extraction and rank matrices all report
deterministic witnesses: the lexicographically first offender in label order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .backends import RATIONAL, Backend, RationalBackend, Value
from .errors import (
    AmbiguousRanking,
    DuplicateLabel,
    DuplicateValue,
    LabelMismatch,
    NotSemimetric,
    ZeroMissing,
)


@dataclass(frozen=True)
class Verdict:
    """Outcome of an axiom check; failing verdicts carry a label witness."""

    ok: bool
    witness: Optional[tuple[str, ...]] = None

    def __bool__(self) -> bool:
        return self.ok


TRUE_VERDICT = Verdict(True)


@dataclass(frozen=True)
class Space:
    """A finite semimetric space. Immutable; build via :func:`new_space`."""

    labels: tuple[str, ...]
    matrix: tuple[tuple[Value, ...], ...]
    backend: Backend

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise LabelMismatch(f"unknown label {label!r}") from None

    def dist(self, a: str, b: str) -> Value:
        return self.matrix[self.index(a)][self.index(b)]


@dataclass(frozen=True)
class DistanceSet:
    """Strictly increasing distinct distances of a space; 0 comes first."""

    values: tuple[Value, ...]
    backend: Backend

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class RankMatrix:
    """Each distance replaced by its index in the sorted distance set."""

    ranks: tuple[tuple[int, ...], ...]


def new_space(labels: Sequence[str], matrix, backend: Backend = RATIONAL) -> Space:
    """Validate and build a space.

    Raises NotSemimetric with the first offending pair (label order) when the
    diagonal is nonzero, the matrix is asymmetric, or an off-diagonal entry
    is not positive; DuplicateLabel on repeated point names.
    """
    labels = tuple(str(x) for x in labels)
    if len(labels) == 0:
        raise ValueError("a space needs at least one point")
    if len(set(labels)) != len(labels):
        seen = set()
        for lab in labels:
            if lab in seen:
                raise DuplicateLabel(f"duplicate label {lab!r}")
            seen.add(lab)
    n = len(labels)
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise ValueError("matrix dimensions do not match labels")
    m = tuple(tuple(backend.coerce(v) for v in row) for row in matrix)
    order = sorted(range(n), key=lambda k: labels[k])
    for pos, i in enumerate(order):
        if not backend.is_zero(m[i][i]):
            raise NotSemimetric((labels[i], labels[i]), "nonzero diagonal")
        for j in order[pos + 1 :]:
            if not backend.eq(m[i][j], m[j][i]):
                raise NotSemimetric((labels[i], labels[j]), "asymmetric")
            if not backend.lt(0, m[i][j]):
                raise NotSemimetric(
                    (labels[i], labels[j]), "off-diagonal distance not positive"
                )
    return Space(labels=labels, matrix=m, backend=backend)


def _label_order(space: Space) -> list[int]:
    return sorted(range(space.n), key=lambda k: space.labels[k])


def is_metric(space: Space) -> Verdict:
    """Check the triangle inequality over all ordered triples.

    A failing verdict carries (x, z, y) with d(x,y) > d(x,z) + d(z,y),
    minimal in label order.
    """
    m = space.matrix
    lt = space.backend.lt
    order = _label_order(space)
    for i in order:
        for j in order:
            if j == i:
                continue
            for k in order:
                if k == i or k == j:
                    continue
                if lt(m[i][j] + m[j][k], m[i][k]):
                    return Verdict(
                        False, (space.labels[i], space.labels[j], space.labels[k])
                    )
    return TRUE_VERDICT


def is_ultrametric(space: Space) -> Verdict:
    """Check d(x,y) <= max(d(x,z), d(z,y)) over all ordered triples."""
    m = space.matrix
    lt = space.backend.lt
    order = _label_order(space)
    for i in order:
        for j in order:
            if j == i:
                continue
            for k in order:
                if k == i or k == j:
                    continue
                bound = m[i][j] if m[i][j] >= m[j][k] else m[j][k]
                if lt(bound, m[i][k]):
                    return Verdict(
                        False, (space.labels[i], space.labels[j], space.labels[k])
                    )
    return TRUE_VERDICT


def _grouped_values(space: Space) -> tuple[tuple[Value, ...], dict]:
    """Sorted distinct distances plus an exact value-to-rank lookup.

    Float spaces group values whose adjacent gaps are within tolerance; a
    group whose extremes do not compare equal would make the grouping depend
    on merge order, so it raises AmbiguousRanking.
    """
    backend = space.backend
    values = sorted({v for row in space.matrix for v in row})
    if isinstance(backend, RationalBackend):
        return tuple(values), {v: r for r, v in enumerate(values)}
    groups: list[list[float]] = []
    for v in values:
        if groups and backend.eq(groups[-1][-1], v):
            groups[-1].append(v)
        else:
            groups.append([v])
    rank_of = {}
    reps = []
    for rank, group in enumerate(groups):
        if not backend.eq(group[0], group[-1]):
            raise AmbiguousRanking(
                f"values {group[0]!r}..{group[-1]!r} chain within tolerance "
                "but their extremes do not compare equal"
            )
        reps.append(group[0])
        for v in group:
            rank_of[v] = rank
    return tuple(reps), rank_of


def distance_set(space: Space) -> DistanceSet:
    """All distinct distances of the space, sorted ascending (0 included)."""
    reps, _ = _grouped_values(space)
    return DistanceSet(values=reps, backend=space.backend)


def rank_matrix(space: Space) -> RankMatrix:
    """Matrix of distance ranks; rank 0 is the diagonal zero."""
    _, rank_of = _grouped_values(space)
    ranks = tuple(
        tuple(rank_of[v] for v in row) for row in space.matrix
    )
    return RankMatrix(ranks=ranks)


def max_ultrametric_from_set(values, backend: Backend = RATIONAL) -> Space:
    """Ultrametric space on the points of ``values`` with d(x,y) = max(x,y).

    The input must contain 0 and no duplicates; the resulting space has
    exactly ``values`` as its distance set.
    """
    vals = sorted(backend.coerce(v) for v in values)
    if vals and vals[0] < 0:
        raise ValueError("values must be nonnegative")
    if not vals or not backend.is_zero(vals[0]):
        raise ZeroMissing("the value set must contain 0")
    for a, b in zip(vals, vals[1:]):
        if backend.eq(a, b):
            raise DuplicateValue(f"values {a!r} and {b!r} coincide")
    labels = [backend.format(v) for v in vals]
    n = len(vals)
    matrix = [
        [0 if i == j else max(vals[i], vals[j]) for j in range(n)]
        for i in range(n)
    ]
    return new_space(labels, matrix, backend)


def coincreasing(d: Space, rho: Space) -> Verdict:
    """Do two semimetrics on the same points induce the same pair order?

    Checks d(x,y) <= d(z,w) <=> rho(x,y) <= rho(z,w) by brute force over all
    quadruples; a failing verdict carries the first (x, y, z, w) in label
    order.
    """
    if d.labels != rho.labels:
        raise LabelMismatch("spaces must share one label list")
    md, mr = d.matrix, rho.matrix
    le_d, le_r = d.backend.le, rho.backend.le
    labels = d.labels
    order = _label_order(d)
    for i1 in order:
        for i2 in order:
            for i3 in order:
                for i4 in order:
                    if le_d(md[i1][i2], md[i3][i4]) != le_r(mr[i1][i2], mr[i3][i4]):
                        return Verdict(
                            False, (labels[i1], labels[i2], labels[i3], labels[i4])
                        )
    return TRUE_VERDICT
