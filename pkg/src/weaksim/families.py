"""Deterministic generators for example spaces and random test instances.

The two paired families build weakly equivalent ultrametric spaces from a
pair of strictly decreasing positive sequences, together with their defining
realization; truncation size n is the desk-scale surrogate for the infinite
construction.  Random generators are reproducible per seed and are correct
by construction (shortest-path completion for metrics, merge hierarchies for
ultrametrics), which makes them usable as test oracles.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .backends import RATIONAL, parse_exact
from .errors import BadSequence
from .morphisms import (
    ScalingFunction,
    WeakSimilarity,
    build_realization,
    increasing_bijection,
)
from .spaces import Space, distance_set, new_space
from .transforms import apply_function, function_table, snowflake


def harmonic(k: int) -> Fraction:
    """Default vanishing sequence 1/k."""
    return Fraction(1, k)


def one_plus_harmonic(k: int) -> Fraction:
    """Default sequence 1 + 1/k with positive limit 1."""
    return 1 + Fraction(1, k)


@dataclass(frozen=True)
class FamilySpec:
    """Parameters for the paired families.

    The sequence callables must be strictly decreasing and positive on
    1..n; the declared limits are documentation metadata only (no operation
    branches on them).
    """

    name: str
    n: int
    r: Callable[[int], Fraction] = harmonic
    p: Callable[[int], Fraction] = one_plus_harmonic
    r_limit: Fraction = Fraction(0)
    p_limit: Fraction = Fraction(1)
    seed: int = 0


def _sequence(fn: Callable[[int], Fraction], n: int, name: str) -> list[Fraction]:
    values = [parse_exact(fn(k)) for k in range(1, n + 1)]
    for v in values:
        if v <= 0:
            raise BadSequence(f"sequence {name} must stay positive")
    for a, b in zip(values, values[1:]):
        if not b < a:
            raise BadSequence(f"sequence {name} must be strictly decreasing")
    return values


def _pad(i: int, width: int) -> str:
    return str(i).zfill(width)


def example_2_6(spec: FamilySpec) -> tuple[Space, Space, WeakSimilarity]:
    """Two weakly equivalent ultrametric combs on points 0..n.

    X uses the vanishing sequence, Y the positively-bounded one: the distance
    between the hub point and point k is the k-th term, between two spoke
    points the smaller-indexed term.  The realization maps points by index
    and pairs the k-th terms of the two sequences.
    """
    n = spec.n
    if n < 2:
        raise ValueError("need n >= 2")
    rs = _sequence(spec.r, n, "r")
    ps = _sequence(spec.p, n, "p")

    width = len(str(n))

    def comb(prefix: str, seq: list[Fraction]) -> Space:
        labels = [f"{prefix}{_pad(i, width)}" for i in range(n + 1)]
        matrix = []
        for i in range(n + 1):
            row = []
            for j in range(n + 1):
                if i == j:
                    row.append(Fraction(0))
                elif min(i, j) == 0:
                    row.append(seq[max(i, j) - 1])
                else:
                    row.append(seq[min(i, j) - 1])
            matrix.append(row)
        return new_space(labels, matrix, RATIONAL)

    X = comb("x", rs)
    Y = comb("y", ps)
    mapping = {f"x{_pad(i, width)}": f"y{_pad(i, width)}" for i in range(n + 1)}
    pairs = [(Fraction(0), Fraction(0))]
    pairs += sorted(zip(ps, rs))
    scaling = ScalingFunction(tuple(pairs))
    return X, Y, build_realization(X, Y, mapping, scaling)


def example_2_6_star(spec: FamilySpec) -> tuple[Space, Space, WeakSimilarity]:
    """Two weakly equivalent discrete ultrametric pair-families on 2n points.

    Here X carries the positively-bounded sequence on its matched pairs and Y
    the vanishing one, so the scaling function sends the smallest positive
    target distance to the largest-indexed term.
    """
    n = spec.n
    if n < 2:
        raise ValueError("need n >= 2")
    rs = _sequence(spec.r, n, "r")
    ps = _sequence(spec.p, n, "p")

    width = len(str(n))

    def paired(prefix: str, seq: list[Fraction]) -> Space:
        labels = [
            f"{prefix}{_pad(i, width)}_{j}" for i in range(1, n + 1) for j in (1, 2)
        ]
        size = 2 * n
        matrix = [[Fraction(0)] * size for _ in range(size)]
        for a in range(size):
            for b in range(size):
                if a == b:
                    continue
                # same pair index iff they differ only in the _1/_2 suffix
                if labels[a][:-2] == labels[b][:-2]:
                    i = int(labels[a][len(prefix) : -2])
                    matrix[a][b] = seq[i - 1]
                else:
                    matrix[a][b] = seq[0]
        return new_space(labels, matrix, RATIONAL)

    X = paired("x", ps)
    Y = paired("y", rs)
    mapping = {x_lab: "y" + x_lab[1:] for x_lab in X.labels}
    pairs = [(Fraction(0), Fraction(0))]
    pairs += sorted(zip(rs, ps))
    scaling = ScalingFunction(tuple(pairs))
    return X, Y, build_realization(X, Y, mapping, scaling)


def segment_grid(n: int, length) -> Space:
    """n evenly spaced points on a segment with the absolute-difference metric."""
    if n < 2:
        raise ValueError("need n >= 2")
    length = parse_exact(length)
    if length <= 0:
        raise ValueError("length must be positive")
    h = length / (n - 1)
    width = len(str(n - 1))
    labels = [f"t{_pad(i, width)}" for i in range(n)]
    matrix = [[abs(i - j) * h for j in range(n)] for i in range(n)]
    return new_space(labels, matrix, RATIONAL)


def snowflake_segment(n: int, p) -> Space:
    """Unit segment grid with distances raised to the power p in (0, 1]."""
    p = parse_exact(p)
    if not 0 < p <= 1:
        raise ValueError("exponent must lie in (0, 1]")
    return snowflake(segment_grid(n, 1), p)


def random_metric(n: int, seed: int) -> Space:
    """Random rational metric space: symmetric positive draws closed under
    shortest-path completion, so the triangle inequality holds by
    construction.  Bit-identical per seed."""
    if n < 1:
        raise ValueError("need n >= 1")
    rng = random.Random(seed)
    width = len(str(max(n - 1, 1)))
    labels = [f"v{_pad(i, width)}" for i in range(n)]
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            m[i][j] = m[j][i] = Fraction(rng.randint(1, 12), rng.randint(1, 4))
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if i != j and m[i][k] + m[k][j] < m[i][j]:
                    m[i][j] = m[i][k] + m[k][j]
    return new_space(labels, m, RATIONAL)


def random_ultrametric(n: int, seed: int) -> Space:
    """Random rational ultrametric from a merge hierarchy: the distance of
    two points is the (strictly increasing) height at which their clusters
    merged.  Bit-identical per seed."""
    if n < 1:
        raise ValueError("need n >= 1")
    rng = random.Random(seed)
    width = len(str(max(n - 1, 1)))
    labels = [f"v{_pad(i, width)}" for i in range(n)]
    m = [[Fraction(0)] * n for _ in range(n)]
    clusters = [[i] for i in range(n)]
    height = Fraction(0)
    while len(clusters) > 1:
        height += Fraction(rng.randint(1, 8), rng.randint(1, 4))
        a, b = sorted(rng.sample(range(len(clusters)), 2))
        for i in clusters[a]:
            for j in clusters[b]:
                m[i][j] = m[j][i] = height
        clusters[a] = clusters[a] + clusters[b]
        del clusters[b]
    return new_space(labels, m, RATIONAL)


def derive_partner(
    space: Space,
    mode: str,
    ratio=None,
    seed: int = 0,
) -> tuple[Space, WeakSimilarity]:
    """A weakly equivalent partner plus its generating realization.

    mode "scaled": multiply every distance by ratio (> 0); the realization
    classifies as a similarity with that ratio.  mode "relabeled": permute
    the points per seed; an isometry.  mode "distorted": push the distances
    through a random strictly increasing table; generically not a similarity.
    """
    if mode == "scaled":
        r = parse_exact(ratio)
        if r <= 0:
            raise ValueError("ratio must be positive")
        matrix = [[r * v for v in row] for row in space.matrix]
        partner = new_space(space.labels, matrix, space.backend)
        mapping = {lab: lab for lab in space.labels}
        scaling = increasing_bijection(distance_set(partner), distance_set(space))
        return partner, build_realization(space, partner, mapping, scaling)
    if mode == "relabeled":
        rng = random.Random(seed)
        perm = list(range(space.n))
        rng.shuffle(perm)
        matrix = [
            [space.matrix[perm[i]][perm[j]] for j in range(space.n)]
            for i in range(space.n)
        ]
        partner = new_space(space.labels, matrix, space.backend)
        mapping = {space.labels[perm[i]]: space.labels[i] for i in range(space.n)}
        scaling = increasing_bijection(distance_set(partner), distance_set(space))
        return partner, build_realization(space, partner, mapping, scaling)
    if mode == "distorted":
        rng = random.Random(seed)
        values = distance_set(space).values
        rows = [(Fraction(0), Fraction(0))]
        acc = Fraction(0)
        for v in values[1:]:
            acc += Fraction(rng.randint(1, 8), rng.randint(1, 4))
            rows.append((parse_exact(v), acc))
        table = function_table(rows)
        partner = apply_function(space, table)
        mapping = {lab: lab for lab in space.labels}
        scaling = ScalingFunction(tuple(sorted((fv, a) for a, fv in rows)))
        return partner, build_realization(space, partner, mapping, scaling)
    raise ValueError(f"unknown mode {mode!r}")
