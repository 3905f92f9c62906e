"""Geometric input configurations: finite point sets and unions of linear
flats in P^n, their radical ideals, and symbolic powers.

Symbolic powers are intersections of ordinary powers of the component
ideals; every component here is a complete intersection of linear forms,
for which ordinary and symbolic powers agree.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from . import linalg
from .groebner import Ideal, groebner_basis, intersect_ideals, ideal_contains
from .rings import Polynomial

GENERIC_COORD_BOUND = 100


class DegenerateConfigError(ValueError):
    """Repeated points, dependent defining forms, or similar degeneracy."""


@dataclass(frozen=True)
class PointConfig:
    n: int  # ambient projective dimension; coordinates have length n+1
    points: tuple  # tuples of Fraction, projectively distinct

    @classmethod
    def of(cls, n, points):
        pts = tuple(tuple(Fraction(c) for c in p) for p in points)
        for p in pts:
            if len(p) != n + 1:
                raise DegenerateConfigError("point coordinate length != n+1")
            if not any(p):
                raise DegenerateConfigError("zero coordinate tuple is not a point")
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if linalg.rank([list(pts[i]), list(pts[j])]) < 2:
                    raise DegenerateConfigError(
                        f"points {i} and {j} coincide projectively"
                    )
        return cls(n, pts)

    @classmethod
    def generic(cls, n, r, seed, bound=GENERIC_COORD_BOUND):
        """r seeded random points with integer coordinates."""
        rng = random.Random(seed)
        pts = []
        while len(pts) < r:
            p = tuple(rng.randint(-bound, bound) for _ in range(n + 1))
            if not any(p):
                continue
            try:
                cls.of(n, pts + [p])
            except DegenerateConfigError:
                continue
            pts.append(p)
        return cls.of(n, pts)

    @property
    def components(self):
        return tuple(("point", p) for p in self.points)


@dataclass(frozen=True)
class FlatConfig:
    n: int
    flats: tuple  # each flat: tuple of linear-form coefficient tuples
    pairwise_disjoint: bool

    @classmethod
    def of(cls, n, flats):
        clean = []
        for forms in flats:
            forms = tuple(tuple(Fraction(c) for c in f) for f in forms)
            for f in forms:
                if len(f) != n + 1:
                    raise DegenerateConfigError("form length != n+1")
            if linalg.rank([list(f) for f in forms]) != len(forms):
                raise DegenerateConfigError("dependent defining forms for a flat")
            clean.append(forms)
        disjoint = all(
            _flats_disjoint(clean[i], clean[j], n)
            for i in range(len(clean))
            for j in range(i + 1, len(clean))
        )
        return cls(n, tuple(clean), disjoint)

    @classmethod
    def generic(cls, n, r, s, seed, bound=GENERIC_COORD_BOUND):
        """s seeded random flats of dimension r in P^n (n-r forms each)."""
        if not 0 <= r < n:
            raise ValueError("flat dimension must satisfy 0 <= r < n")
        rng = random.Random(seed)
        flats = []
        while len(flats) < s:
            forms = [
                tuple(rng.randint(-bound, bound) for _ in range(n + 1))
                for _ in range(n - r)
            ]
            try:
                cls.of(n, flats + [forms])
            except DegenerateConfigError:
                continue
            flats.append(forms)
        return cls.of(n, flats)

    @property
    def flat_dimensions(self):
        return tuple(self.n - len(forms) for forms in self.flats)

    @property
    def components(self):
        return tuple(("flat", f) for f in self.flats)


@dataclass(frozen=True)
class UnionConfig:
    """Mixed configuration: points and flats together."""

    n: int
    parts: tuple  # PointConfig / FlatConfig instances

    @property
    def components(self):
        return tuple(c for part in self.parts for c in part.components)


Config = PointConfig | FlatConfig | UnionConfig


def _flats_disjoint(forms_a, forms_b, n) -> bool:
    """Two flats are disjoint iff their combined forms have only the zero
    solution, i.e. full rank n+1."""
    mat = [list(f) for f in forms_a] + [list(f) for f in forms_b]
    return linalg.rank(mat) == n + 1


def point_ideal(point, n) -> Ideal:
    """The n independent linear forms vanishing at the point."""
    kernel = linalg.nullspace([list(point)])
    assert len(kernel) == n
    return Ideal.of(Polynomial.linear_form(v) for v in kernel)


def component_ideal(component, n) -> Ideal:
    kind, data = component
    if kind == "point":
        return point_ideal(data, n)
    return Ideal.of(Polynomial.linear_form(f) for f in data)


def ideal_of(config: Config) -> Ideal:
    """Radical ideal of the configuration: intersection over components."""
    comps = config.components
    if not comps:
        raise DegenerateConfigError("empty configuration")
    ideal = component_ideal(comps[0], config.n)
    for c in comps[1:]:
        ideal = intersect_ideals(ideal, component_ideal(c, config.n))
    return ideal


@dataclass(frozen=True)
class SymbolicPower:
    base: Ideal
    m: int
    ideal: Ideal

    def verify_contained_in_base(self) -> bool:
        gb = groebner_basis(self.base)
        return ideal_contains(gb, self.ideal)


def symbolic_power(config: Config, m: int) -> SymbolicPower:
    """I^(m) as the intersection of m-th powers of the component ideals
    (Zariski-Nagata for unions of points and linear flats)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    comps = config.components
    if not comps:
        raise DegenerateConfigError("empty configuration")
    ideal = component_ideal(comps[0], config.n).power(m)
    for c in comps[1:]:
        ideal = intersect_ideals(ideal, component_ideal(c, config.n).power(m))
    return SymbolicPower(ideal_of(config), m, ideal)


def differential_membership_check(f: Polynomial, config: PointConfig, m: int) -> bool:
    """True iff every partial of order <= m-1 vanishes at every point.

    Cross-check oracle for symbolic-power membership on point sets.
    """
    if not isinstance(config, PointConfig):
        raise TypeError("differential check is only decidable for point sets")
    if not f.is_homogeneous():
        raise ValueError("f must be homogeneous")
    nvars = config.n + 1
    for alpha in _multi_indices(nvars, m - 1):
        g = f
        for i, e in enumerate(alpha):
            for _ in range(e):
                g = g.partial(i + 1)
        if g.is_zero():
            continue
        for p in config.points:
            if g.evaluate(p) != 0:
                return False
    return True


def _multi_indices(n, max_total):
    for alpha in product(range(max_total + 1), repeat=n):
        if sum(alpha) <= max_total:
            yield alpha


def configs_disjoint(a: Config, b: Config) -> bool:
    """Exact check that the zero sets share no projective point."""
    if a.n != b.n:
        return False
    n = a.n
    for ca in a.components:
        for cb in b.components:
            forms_a = _forms_of(ca, n)
            forms_b = _forms_of(cb, n)
            if not _flats_disjoint(forms_a, forms_b, n):
                return False
    return True


def _forms_of(component, n):
    kind, data = component
    if kind == "point":
        return tuple(tuple(v) for v in linalg.nullspace([list(data)]))
    return data


# -- JSON config format ----------------------------------------------------


def _frac_str(x: Fraction):
    return int(x) if x.denominator == 1 else str(x)


def config_to_dict(config: Config):
    comps = []
    for kind, data in config.components:
        if kind == "point":
            comps.append({"type": "point", "coords": [_frac_str(c) for c in data]})
        else:
            comps.append(
                {"type": "flat", "forms": [[_frac_str(c) for c in f] for f in data]}
            )
    return {"n": config.n, "components": comps}


def config_to_json(config: Config) -> str:
    return json.dumps(config_to_dict(config))


def config_from_dict(data) -> Config:
    n = data["n"]
    if "generic" in data and not data.get("components"):
        g = data["generic"]
        r, s, seed = g["r"], g["s"], g["seed"]
        if r == 0:
            return PointConfig.generic(n, s, seed)
        return FlatConfig.generic(n, r, s, seed)
    points = []
    flats = []
    for comp in data.get("components", []):
        if comp["type"] == "point":
            points.append([Fraction(c) for c in comp["coords"]])
        elif comp["type"] == "flat":
            flats.append([[Fraction(c) for c in f] for f in comp["forms"]])
        else:
            raise DegenerateConfigError(f"unknown component type {comp['type']!r}")
    parts = []
    if points:
        parts.append(PointConfig.of(n, points))
    if flats:
        parts.append(FlatConfig.of(n, flats))
    if not parts:
        raise DegenerateConfigError("configuration has no components")
    if len(parts) == 1:
        return parts[0]
    return UnionConfig(n, tuple(parts))


def config_from_json(text: str) -> Config:
    return config_from_dict(json.loads(text))
