"""Weak similarities between finite semimetric spaces.

A weak similarity from X to Y is a point bijection together with a strictly
increasing scaling table that pulls every Y-distance back onto the matching
X-distance.  Because finite totally ordered sets admit exactly one increasing
bijection onto each other, the scaling table is forced as soon as the two
distance sets have equal size; the search is therefore an edge-colored
complete-graph isomorphism over the rank matrices, solved by iterated color
refinement followed by canonical-order backtracking.

Enumeration order is deterministic: source labels are processed in sorted
order and candidate images are tried in sorted target-label order, so results
arrive in lexicographic order of the mapping.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Optional, Union

from .backends import Backend, FloatBackend, RationalBackend, Value
from .errors import (
    CardinalityMismatch,
    DomainMismatch,
    LabelMismatch,
    SpaceMismatch,
)
from .spaces import (
    DistanceSet,
    Space,
    Verdict,
    distance_set,
    new_space,
    rank_matrix,
)

DEFAULT_ENUM_LIMIT = 10_000

MappingLike = Union[Mapping[str, str], Iterable[tuple[str, str]]]


@dataclass(frozen=True)
class ScalingFunction:
    """Finite strictly increasing bijection table between two distance sets.

    ``pairs`` holds (t, f_t) sorted by t; t ranges over the target's distance
    set and f_t over the source's.  The zero pair (0, 0) is always present.
    """

    pairs: tuple[tuple[Value, Value], ...]

    def __post_init__(self):
        if not self.pairs:
            raise DomainMismatch("a scaling table cannot be empty")
        if self.pairs[0][0] != 0 or self.pairs[0][1] != 0:
            raise DomainMismatch("a scaling table must map 0 to 0")
        for (t1, v1), (t2, v2) in zip(self.pairs, self.pairs[1:]):
            if not (t1 < t2 and v1 < v2):
                raise DomainMismatch(
                    "scaling table entries must be strictly increasing "
                    "in both coordinates"
                )

    @cached_property
    def _table(self) -> dict:
        return dict(self.pairs)

    def domain(self) -> tuple[Value, ...]:
        return tuple(t for t, _ in self.pairs)

    def values(self) -> tuple[Value, ...]:
        return tuple(v for _, v in self.pairs)

    def apply(self, t: Value, eq=None) -> Value:
        """Evaluate the table at t; ``eq`` is the fallback comparison for
        float-backed domains whose entry is not the group representative."""
        try:
            return self._table[t]
        except KeyError:
            pass
        if eq is not None:
            for key, val in self.pairs:
                if eq(key, t):
                    return val
        raise DomainMismatch(f"value {t!r} is outside the scaling domain")

    def inverse(self) -> "ScalingFunction":
        return ScalingFunction(tuple(sorted((v, t) for t, v in self.pairs)))


@dataclass(frozen=True)
class Classification:
    """Isometry, similarity with a ratio, or generic weak similarity."""

    kind: str  # "isometry" | "similarity" | "generic"
    ratio: Optional[Value] = None

    @staticmethod
    def isometry() -> "Classification":
        return Classification("isometry", Fraction(1))

    @staticmethod
    def similarity(ratio: Value) -> "Classification":
        return Classification("similarity", ratio)

    @staticmethod
    def generic() -> "Classification":
        return Classification("generic", None)


@dataclass(frozen=True)
class WeakSimilarity:
    """A verified realization: point bijection plus scaling table."""

    source: Space
    target: Space
    mapping: tuple[tuple[str, str], ...]  # sorted by source label
    scaling: ScalingFunction
    classification: Classification

    def as_map(self) -> dict[str, str]:
        return dict(self.mapping)

    def apply(self, label: str) -> str:
        return self.as_map()[label]


def increasing_bijection(d1: DistanceSet, d2: DistanceSet) -> ScalingFunction:
    """The unique strictly increasing bijection pairing i-th smallest values.

    Finite totally ordered sets are rigid, so this is the only candidate;
    sets of different size admit none (CardinalityMismatch).
    """
    if len(d1) != len(d2):
        raise CardinalityMismatch(
            f"distance sets have sizes {len(d1)} and {len(d2)}"
        )
    return ScalingFunction(tuple(zip(d1.values, d2.values)))


def _normalize_mapping(mapping: MappingLike, source: Space, target: Space) -> dict:
    pairs = mapping.items() if isinstance(mapping, Mapping) else mapping
    m = {str(a): str(b) for a, b in pairs}
    if set(m) != set(source.labels):
        raise LabelMismatch("mapping keys must be exactly the source labels")
    if set(m.values()) != set(target.labels) or len(set(m.values())) != len(m):
        raise LabelMismatch("mapping must be a bijection onto the target labels")
    return m


def _values_match(actual, expected: DistanceSet) -> bool:
    if len(actual) != len(expected.values):
        return False
    eq = expected.backend.eq
    return all(eq(a, b) for a, b in zip(sorted(actual), expected.values))


def verify(
    X: Space, Y: Space, mapping: MappingLike, scaling: ScalingFunction
) -> Verdict:
    """Check the defining identity d_X(x,y) = f(d_Y(map x, map y)) pairwise.

    Raises DomainMismatch when the scaling table does not pair D(Y) with
    D(X); a failing verdict carries the first bad pair in label order.
    """
    m = _normalize_mapping(mapping, X, Y)
    if not _values_match(scaling.domain(), distance_set(Y)):
        raise DomainMismatch("scaling domain differs from the target distance set")
    if not _values_match(scaling.values(), distance_set(X)):
        raise DomainMismatch("scaling range differs from the source distance set")
    labels = sorted(X.labels)
    eq_y = Y.backend.eq
    for idx, a in enumerate(labels):
        for b in labels[idx + 1 :]:
            image = scaling.apply(Y.dist(m[a], m[b]), eq=eq_y)
            if not X.backend.eq(X.dist(a, b), image):
                return Verdict(False, (a, b))
    return Verdict(True)


def classify_scaling(
    scaling: ScalingFunction, source_backend: Backend, target_backend: Backend
) -> Classification:
    """Classify a scaling table: f(t) = t/r for a constant r, or generic."""
    positive = scaling.pairs[1:]
    if not positive:
        return Classification.isometry()
    exact = isinstance(source_backend, RationalBackend) and isinstance(
        target_backend, RationalBackend
    )
    if exact:
        t0, v0 = positive[-1]
        ratio = Fraction(t0) / Fraction(v0)
        if all(t == ratio * v for t, v in positive):
            if ratio == 1:
                return Classification.isometry()
            return Classification.similarity(ratio)
        return Classification.generic()
    eps_backend = (
        source_backend if isinstance(source_backend, FloatBackend) else target_backend
    )
    t0, v0 = positive[-1]
    ratio = float(t0) / float(v0)
    if all(eps_backend.eq(float(t), ratio * float(v)) for t, v in positive):
        if eps_backend.eq(ratio, 1.0):
            return Classification.isometry()
        return Classification.similarity(ratio)
    return Classification.generic()


def classify(ws: WeakSimilarity) -> Classification:
    """Recompute the classification of a weak similarity from its table."""
    return classify_scaling(ws.scaling, ws.source.backend, ws.target.backend)


def _refine_colors(rkX, rkY) -> Optional[tuple[list[int], list[int]]]:
    """Synchronized color refinement on two edge-colored complete graphs.

    Points start in one cell; each round re-colors every point by the sorted
    multiset of (edge rank, neighbor color) signatures, with colors drawn
    from a table shared by both graphs.  Returns None when the stable color
    class sizes differ, which rules out any rank-preserving bijection.
    """
    nX, nY = len(rkX), len(rkY)
    colorsX = [0] * nX
    colorsY = [0] * nY
    ncolors = 1
    while True:
        sigX = [
            (
                colorsX[i],
                tuple(sorted((rkX[i][j], colorsX[j]) for j in range(nX) if j != i)),
            )
            for i in range(nX)
        ]
        sigY = [
            (
                colorsY[i],
                tuple(sorted((rkY[i][j], colorsY[j]) for j in range(nY) if j != i)),
            )
            for i in range(nY)
        ]
        palette = {s: c for c, s in enumerate(sorted(set(sigX) | set(sigY)))}
        colorsX = [palette[s] for s in sigX]
        colorsY = [palette[s] for s in sigY]
        if len(palette) == ncolors:
            break
        ncolors = len(palette)
    if Counter(colorsX) != Counter(colorsY):
        return None
    return colorsX, colorsY


def _search_mappings(X: Space, Y: Space) -> Iterator[dict[str, str]]:
    """Yield all rank-preserving bijections in canonical order."""
    if X.n != Y.n:
        return
    dX, dY = distance_set(X), distance_set(Y)
    if len(dX) != len(dY):
        return
    rkX = rank_matrix(X).ranks
    rkY = rank_matrix(Y).ranks
    if Counter(v for row in rkX for v in row) != Counter(
        v for row in rkY for v in row
    ):
        return
    refined = _refine_colors(rkX, rkY)
    if refined is None:
        return
    colorsX, colorsY = refined
    n = X.n
    src_order = sorted(range(n), key=lambda i: X.labels[i])
    by_color: dict[int, list[int]] = {}
    for j in sorted(range(n), key=lambda j: Y.labels[j]):
        by_color.setdefault(colorsY[j], []).append(j)
    candidates = [by_color.get(colorsX[i], []) for i in range(n)]

    image: list[Optional[int]] = [None] * n
    used = [False] * n

    def extend(k: int) -> Iterator[dict[str, str]]:
        if k == n:
            yield {X.labels[i]: Y.labels[image[i]] for i in src_order}
            return
        i = src_order[k]
        row = rkX[i]
        for j in candidates[i]:
            if used[j]:
                continue
            target_row = rkY[j]
            ok = True
            for m in range(k):
                prev = src_order[m]
                if row[prev] != target_row[image[prev]]:
                    ok = False
                    break
            if ok:
                image[i] = j
                used[j] = True
                yield from extend(k + 1)
                used[j] = False
                image[i] = None

    yield from extend(0)


def build_realization(
    X: Space, Y: Space, mapping: MappingLike, scaling: ScalingFunction
) -> WeakSimilarity:
    """Assemble and classify a weak similarity from its raw parts.

    The parts are not verified here; run :func:`verify` to check the
    defining identity.
    """
    pairs = tuple(sorted(_normalize_mapping(mapping, X, Y).items()))
    cls = classify_scaling(scaling, X.backend, Y.backend)
    return WeakSimilarity(
        source=X, target=Y, mapping=pairs, scaling=scaling, classification=cls
    )


def find_weak_similarity(X: Space, Y: Space) -> Optional[WeakSimilarity]:
    """First weak similarity in canonical order, or None if there is none."""
    for mapping in _search_mappings(X, Y):
        scaling = increasing_bijection(distance_set(Y), distance_set(X))
        return build_realization(X, Y, mapping, scaling)
    return None


def enumerate_weak_similarities(
    X: Space, Y: Space, limit: Optional[int] = DEFAULT_ENUM_LIMIT
) -> list[WeakSimilarity]:
    """All weak similarities X -> Y in canonical order, truncated at limit.

    Pass ``limit=None`` for an unbounded enumeration (factorially many on
    highly symmetric spaces).
    """
    out: list[WeakSimilarity] = []
    if limit is not None and limit <= 0:
        return out
    scaling = None
    for mapping in _search_mappings(X, Y):
        if scaling is None:
            scaling = increasing_bijection(distance_set(Y), distance_set(X))
        out.append(build_realization(X, Y, mapping, scaling))
        if limit is not None and len(out) >= limit:
            break
    return out


def invert(ws: WeakSimilarity) -> WeakSimilarity:
    """The inverse realization: reversed bijection, inverted scaling table."""
    mapping = {b: a for a, b in ws.mapping}
    return build_realization(ws.target, ws.source, mapping, ws.scaling.inverse())


def compose(first: WeakSimilarity, second: WeakSimilarity) -> WeakSimilarity:
    """Compose X -> Y with Y -> Z into X -> Z; scales compose the other way."""
    if first.target != second.source:
        raise SpaceMismatch("first.target and second.source must be the same space")
    fmap = first.as_map()
    smap = second.as_map()
    mapping = {x: smap[y] for x, y in fmap.items()}
    eq_mid = first.target.backend.eq
    pairs = tuple(
        (u, first.scaling.apply(g_u, eq=eq_mid)) for u, g_u in second.scaling.pairs
    )
    return build_realization(first.source, second.target, mapping, ScalingFunction(pairs))


def pullback(X: Space, Y: Space, mapping: MappingLike) -> Space:
    """Transport d_Y back along a bijection onto X's points.

    The bijection underlies a weak similarity X -> Y exactly when the
    returned semimetric and d_X are coincreasing.
    """
    m = _normalize_mapping(mapping, X, Y)
    matrix = [
        [Y.dist(m[a], m[b]) for b in X.labels]
        for a in X.labels
    ]
    return new_space(X.labels, matrix, Y.backend)


def factorize(phi1: WeakSimilarity, phi2: WeakSimilarity) -> WeakSimilarity:
    """Solve phi2 = phi1 compose F for the self-map F of the common source.

    With finite distance sets F always classifies as an isometry.
    """
    if phi1.source != phi2.source or phi1.target != phi2.target:
        raise SpaceMismatch("both morphisms must share source and target")
    return compose(phi2, invert(phi1))
