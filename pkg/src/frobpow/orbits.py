"""Orbit counting on points of (F_{q^m})^n by direct enumeration.

The group acts coordinate-wise on the points of V' = (F_{q^m})^n once its
matrix entries are embedded into the extension field.  We enumerate all
q^{mn} points, merge them with a union-find under the generator moves, and
read off the orbit count and the orbit-size histogram.  For the groups
built from a GroupSpec the count has a closed form,

    q^{m(n-1)} + q^{m(n-1)} (q^m - 1) / |G|,

because points on the extended hyperplane are fixed and every other point
has trivial stabilizer.  The enumeration re-derives both facts and the
report records whether they hold.

Points are indexed densely: a coordinate is the integer code of a field
element and a point is the mixed-radix word of its coordinate codes, so
the union-find runs over plain integer arrays.
"""

from __future__ import annotations

import dataclasses
from collections import Counter

import numpy as np

from .ff import CapExceeded, embed, make_field
from .group import build_group

DEFAULT_POINT_CAP = 10**6


@dataclasses.dataclass(frozen=True)
class OrbitReport:
    """Outcome of one orbit enumeration.

    histogram maps are stored as a sorted tuple of (size, multiplicity)
    pairs; formula_value and match stay None when no closed form applies
    (user-supplied generator sets).
    """

    spec: object
    m: int
    total_points: int
    orbit_count: int
    histogram: tuple
    formula_value: int | None
    match: bool | None

    def __post_init__(self):
        assert sum(s * c for s, c in self.histogram) == self.total_points, (
            "histogram fails to account for every point"
        )
        assert sum(c for _, c in self.histogram) == self.orbit_count, (
            "histogram fails to account for every orbit"
        )

    def to_json(self):
        return {
            "spec": None if self.spec is None else self.spec.to_json(),
            "m": self.m,
            "total_points": self.total_points,
            "orbit_count": self.orbit_count,
            "histogram": [[s, c] for s, c in self.histogram],
            "formula_value": self.formula_value,
            "match": self.match,
        }


class _UnionFind:
    """Array union-find with path halving and union by size."""

    def __init__(self, size):
        self.parent = list(range(size))
        self.size = [1] * size

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.size[x] < self.size[y]:
            x, y = y, x
        self.parent[y] = x
        self.size[x] += self.size[y]

    def component_sizes(self):
        return [self.size[i] for i in range(len(self.parent)) if self.find(i) == i]


def closed_form_orbit_count(spec, m):
    """q^{m(n-1)} + q^{m(n-1)}(q^m - 1)/|G| for any spec-built group."""
    if m < 1:
        raise ValueError("Frobenius exponent m must be at least 1")
    qm = spec.q**m
    fixed = qm ** (spec.n - 1)
    moving, rem = divmod(fixed * (qm - 1), spec.group_order)
    assert rem == 0, "group order fails to divide the off-hyperplane point count"
    return fixed + moving


def _code_add(a, b, p, digits):
    """Field addition on integer codes: digit-wise mod p in base p."""
    out = np.zeros_like(a)
    scale = 1
    for _ in range(digits):
        out += ((a % p + b % p) % p) * scale
        a = a // p
        b = b // p
        scale *= p
    return out


def _entry_tables(mat, big):
    """Per-entry code maps c -> code(entry * decode(c)), None for zeros."""
    order = big.order
    src = mat.field
    identity = np.arange(order, dtype=np.int64)
    tables = []
    for i in range(mat.rows):
        row = []
        for j in range(mat.cols):
            ent = embed(src, big, mat.entry(i, j))
            if not ent:
                row.append(None)
            elif ent == big.one():
                row.append(identity)
            else:
                row.append(
                    np.array(
                        [big.encode(ent * big.decode(c)) for c in range(order)],
                        dtype=np.int64,
                    )
                )
        tables.append(row)
    return tables


def _generator_images(mat, big, coords, radix):
    """Index array of g applied to every point, from coordinate code arrays."""
    n = mat.rows
    tables = _entry_tables(mat, big)
    images = np.zeros_like(coords[0])
    for i in range(n):
        acc = None
        for j in range(n):
            table = tables[i][j]
            if table is None:
                continue
            term = table[coords[j]]
            acc = term if acc is None else _code_add(acc, term, big.p, big.r)
        if acc is not None:
            images = images + acc * radix**i
    return images


def _enumerate_orbits(mats, big, n, total):
    radix = big.order
    idx = np.arange(total, dtype=np.int64)
    coords = [(idx // radix**j) % radix for j in range(n)]
    uf = _UnionFind(total)
    for mat in mats:
        images = _generator_images(mat, big, coords, radix)
        for point in range(total):
            uf.union(point, int(images[point]))
    sizes = Counter(uf.component_sizes())
    return tuple(sorted(sizes.items()))


def _check_point_cap(total, cap):
    if total > cap:
        raise CapExceeded(
            f"orbit enumeration needs {total} points, above the cap of {cap}"
        )


def count_orbits_enum(spec, m, max_points=DEFAULT_POINT_CAP):
    """Enumerate the orbits of the spec group on (F_{q^m})^n.

    Checks the enumerated histogram against the known orbit structure:
    the q^{m(n-1)} points of the extended hyperplane are singletons and
    every other orbit has the full group order as its size.
    """
    if m < 1:
        raise ValueError("Frobenius exponent m must be at least 1")
    total = spec.q ** (m * spec.n)
    _check_point_cap(total, max_points)
    big = make_field(spec.p, spec.r * m)
    mats = [g.mat for g in build_group(spec)]
    histogram = _enumerate_orbits(mats, big, spec.n, total)
    hist = dict(histogram)
    fixed = spec.q ** (m * (spec.n - 1))
    order = spec.group_order
    if order == 1:
        assert histogram == ((1, total),), "a trivial group moved a point"
    else:
        assert hist.get(1, 0) == fixed, "hyperplane points fail to be singleton orbits"
        assert set(hist) <= {1, order}, "an orbit off the hyperplane has the wrong size"
    for size in hist:
        assert order % size == 0, "an orbit size fails to divide the group order"
    count = sum(hist.values())
    formula = closed_form_orbit_count(spec, m)
    return OrbitReport(
        spec=spec,
        m=m,
        total_points=total,
        orbit_count=count,
        histogram=histogram,
        formula_value=formula,
        match=count == formula,
    )


def count_orbits_custom(gens, m, max_points=DEFAULT_POINT_CAP):
    """Enumerate orbits for an arbitrary generator list, asserting nothing.

    Exploratory variant: gens are matrices (or group elements) over a common
    base field, acting on (F_{q^m})^n.  The report carries no formula value
    and no match flag; callers compare against fixed-space dimensions
    themselves.
    """
    if m < 1:
        raise ValueError("Frobenius exponent m must be at least 1")
    mats = [getattr(g, "mat", g) for g in gens]
    if not mats:
        raise ValueError("need at least one generator matrix")
    base = mats[0].field
    n = mats[0].rows
    for mat in mats:
        if mat.field != base or mat.rows != n or mat.cols != n:
            raise ValueError("generators must be square matrices over one field")
    total = base.order ** (m * n)
    _check_point_cap(total, max_points)
    big = make_field(base.p, base.r * m)
    histogram = _enumerate_orbits(mats, big, n, total)
    return OrbitReport(
        spec=None,
        m=m,
        total_points=total,
        orbit_count=sum(c for _, c in histogram),
        histogram=histogram,
        formula_value=None,
        match=None,
    )
