# ============================================================
# GDOF - MIMO Interference Channel GDoF Toolkit
# core/polytope.py — Exact Rational Polyhedra (2-D regions, 4-D split systems)
# ============================================================

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from loguru import logger

from utils.helpers import RationalLike, point_to_json, rational_to_json, to_fraction

Point = Tuple[Fraction, Fraction]

# Variable order of every split system.
SPLIT_VARIABLES = ("d1p", "d1c", "d2p", "d2c")

ZERO = Fraction(0)


class UnboundedRegionError(ValueError):
    """The half-space system admits a ray inside the nonnegative orthant."""


class EmptyRegionError(ValueError):
    """An operation needs at least one point but the region is empty."""


class DegenerateHalfspaceError(ValueError):
    """All-zero coefficients with a negative right-hand side."""


@dataclass(frozen=True)
class Halfspace:
    """coefficients · x ≤ rhs, exact."""
    coefficients: Tuple[Fraction, ...]
    rhs: Fraction
    label: str = ""

    def __post_init__(self):
        coefficients = tuple(to_fraction(c) for c in self.coefficients)
        rhs = to_fraction(self.rhs)
        if not coefficients:
            raise DegenerateHalfspaceError("Halfspace needs at least one coefficient")
        if all(c == 0 for c in coefficients) and rhs < 0:
            raise DegenerateHalfspaceError(f"0 ≤ {rhs} can never hold ({self.label or 'unlabeled'})")
        object.__setattr__(self, "coefficients", coefficients)
        object.__setattr__(self, "rhs", rhs)

    @property
    def dimension(self) -> int:
        return len(self.coefficients)

    @property
    def is_vacuous(self) -> bool:
        return all(c == 0 for c in self.coefficients)

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        return sum((c * x for c, x in zip(self.coefficients, point)), ZERO)

    def satisfied_by(self, point: Sequence[Fraction]) -> bool:
        return self.evaluate(point) <= self.rhs

    def is_tight(self, point: Sequence[Fraction]) -> bool:
        return self.evaluate(point) == self.rhs

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "c": [rational_to_json(c) for c in self.coefficients],
            "rhs": rational_to_json(self.rhs),
        }
        if self.label:
            data["label"] = self.label
        return data


@dataclass(frozen=True)
class Region2:
    """A bounded polygon in (d1, d2) with its canonical counterclockwise vertex list."""
    halfspaces: Tuple[Halfspace, ...]
    vertices: Tuple[Point, ...]

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def contains(self, point: Sequence[RationalLike]) -> bool:
        return contains(self, point)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "halfspaces": [h.to_dict() for h in self.halfspaces],
            "vertices": [point_to_json(v) for v in self.vertices],
        }

    def __repr__(self):
        return f"<Region2 halfspaces={len(self.halfspaces)} vertices={[tuple(map(str, v)) for v in self.vertices]}>"


@dataclass(frozen=True)
class SplitRegion:
    """Constraint system over (d1p, d1c, d2p, d2c); nonnegativity is implicit."""
    halfspaces: Tuple[Halfspace, ...]

    def __post_init__(self):
        for h in self.halfspaces:
            if h.dimension != len(SPLIT_VARIABLES):
                raise ValueError(f"Split constraint '{h.label}' has {h.dimension} coefficients, expected 4")

    def contains(self, split: Sequence[RationalLike]) -> bool:
        values = [to_fraction(v) for v in split]
        if any(v < 0 for v in values):
            return False
        return all(h.satisfied_by(values) for h in self.halfspaces)

    def rhs(self) -> List[Fraction]:
        return [h.rhs for h in self.halfspaces]


@dataclass
class SplitWitness:
    """Outcome of a split search: feasible with a tuple, or infeasible."""
    feasible: bool
    point: Point
    split: Optional[Any] = None  # SplitTuple when feasible

    def to_dict(self) -> Dict[str, Any]:
        return {
            "feasible": self.feasible,
            "point": point_to_json(self.point),
            "witness": (
                {name: rational_to_json(v) for name, v in zip(SPLIT_VARIABLES, self.split.as_tuple())}
                if self.split is not None else None
            ),
        }

    def __repr__(self):
        if self.feasible:
            return f"<SplitWitness OK {self.split}>"
        return f"<SplitWitness INFEASIBLE at {tuple(map(str, self.point))}>"


# ── Internal row form ─────────────────────────────────────────
# (c1, c2, b) meaning c1*x + c2*y <= b

_Row2 = Tuple[Fraction, Fraction, Fraction]


def _orthant_rows() -> List[_Row2]:
    return [(Fraction(-1), ZERO, ZERO), (ZERO, Fraction(-1), ZERO)]


def _normalize_rows(rows: Iterable[_Row2]) -> Optional[List[_Row2]]:
    """Drop vacuous rows and keep the tightest of parallel rows; None if infeasible."""
    tightest: Dict[Tuple[Fraction, Fraction], Fraction] = {}
    for c1, c2, b in rows:
        scale = max(abs(c1), abs(c2))
        if scale == 0:
            if b < 0:
                return None
            continue
        key = (c1 / scale, c2 / scale)
        value = b / scale
        if key not in tightest or value < tightest[key]:
            tightest[key] = value
    return [(k[0], k[1], v) for k, v in tightest.items()]


def _intersections(rows: List[_Row2]) -> List[Point]:
    found = set()
    for i in range(len(rows)):
        a1, a2, ab = rows[i]
        for j in range(i + 1, len(rows)):
            b1, b2, bb = rows[j]
            det = a1 * b2 - a2 * b1
            if det == 0:
                continue
            x = (ab * b2 - a2 * bb) / det
            y = (a1 * bb - ab * b1) / det
            if all(c1 * x + c2 * y <= b for c1, c2, b in rows):
                found.add((x, y))
    return list(found)


def _has_recession_ray(rows: List[_Row2]) -> bool:
    candidates = [(Fraction(1), ZERO), (ZERO, Fraction(1))]
    for c1, c2, _ in rows:
        for ray in ((c2, -c1), (-c2, c1)):
            if ray[0] >= 0 and ray[1] >= 0 and ray != (ZERO, ZERO):
                candidates.append(ray)
    return any(all(c1 * r1 + c2 * r2 <= 0 for c1, c2, _ in rows) for r1, r2 in candidates)


def _counterclockwise(points: List[Point]) -> List[Point]:
    if len(points) <= 1:
        return list(points)
    origin = min(points)
    rest = [p for p in points if p != origin]

    def compare(p: Point, q: Point) -> int:
        px, py = p[0] - origin[0], p[1] - origin[1]
        qx, qy = q[0] - origin[0], q[1] - origin[1]
        cross = px * qy - py * qx
        if cross > 0:
            return -1
        if cross < 0:
            return 1
        dp, dq = px * px + py * py, qx * qx + qy * qy
        return -1 if dp < dq else (1 if dp > dq else 0)

    return [origin] + sorted(rest, key=cmp_to_key(compare))


def _vertices_of_rows(rows: Iterable[_Row2]) -> List[Point]:
    normalized = _normalize_rows(list(rows) + _orthant_rows())
    if normalized is None:
        return []
    vertices = _intersections(normalized)
    if vertices and _has_recession_ray(normalized):
        raise UnboundedRegionError("Half-space system is unbounded in the nonnegative orthant")
    return _counterclockwise(vertices)


# ── Public Operations ─────────────────────────────────────────

def enumerate_vertices_2d(halfspaces: Sequence[Halfspace]) -> List[Point]:
    """Extreme points of the system ∩ nonnegative orthant, counterclockwise from the lexicographic minimum.

    Raises UnboundedRegionError for unbounded systems; returns [] when infeasible.
    """
    rows: List[_Row2] = []
    for h in halfspaces:
        if h.dimension != 2:
            raise ValueError(f"Expected a 2-D halfspace, got {h.dimension} coefficients ('{h.label}')")
        if h.is_vacuous:
            logger.debug(f"Vacuous constraint '{h.label}' ignored")
            continue
        rows.append((h.coefficients[0], h.coefficients[1], h.rhs))
    vertices = _vertices_of_rows(rows)
    logger.debug(f"Enumerated {len(vertices)} vertices from {len(rows)} constraints")
    return vertices


def region_from_halfspaces(halfspaces: Sequence[Halfspace], prune: bool = False) -> Region2:
    vertices = enumerate_vertices_2d(halfspaces)
    kept = prune_redundant(halfspaces, vertices) if prune else list(halfspaces)
    return Region2(halfspaces=tuple(kept), vertices=tuple(vertices))


def prune_redundant(halfspaces: Sequence[Halfspace], vertices: Sequence[Point]) -> List[Halfspace]:
    """Keep facet-defining halfspaces (tight on an edge); for degenerate polygons keep any tight one."""
    if not vertices:
        return list(halfspaces)
    needed = 2 if len(vertices) >= 3 else 1
    kept: List[Halfspace] = []
    seen = set()
    for h in halfspaces:
        if h.is_vacuous:
            continue
        if sum(1 for v in vertices if h.is_tight(v)) >= needed:
            scale = max(abs(c) for c in h.coefficients)
            key = tuple(c / scale for c in h.coefficients) + (h.rhs / scale,)
            if key not in seen:
                seen.add(key)
                kept.append(h)
    return kept


def contains(region: Region2, point: Sequence[RationalLike]) -> bool:
    x = [to_fraction(v) for v in point]
    return all(v >= 0 for v in x) and all(h.satisfied_by(x) for h in region.halfspaces)


def sup_linear(region: Region2, weights: Tuple[RationalLike, RationalLike]) -> Fraction:
    if region.is_empty:
        raise EmptyRegionError("Cannot maximize over an empty region")
    w1, w2 = to_fraction(weights[0]), to_fraction(weights[1])
    return max(w1 * x + w2 * y for x, y in region.vertices)


def region_equal(a: Region2, b: Region2) -> bool:
    return a.vertices == b.vertices


# ── Fourier–Motzkin Projection ────────────────────────────────

@dataclass(frozen=True)
class _HistoryRow:
    coefficients: Tuple[Fraction, ...]
    rhs: Fraction
    history: FrozenSet[int] = field(default_factory=frozenset)


def _scaled(row: _HistoryRow) -> _HistoryRow:
    scale = max((abs(c) for c in row.coefficients), default=ZERO)
    if scale == 0:
        return row
    return _HistoryRow(tuple(c / scale for c in row.coefficients), row.rhs / scale, row.history)


def _dedupe(rows: Iterable[_HistoryRow]) -> List[_HistoryRow]:
    best: Dict[Tuple[Fraction, ...], _HistoryRow] = {}
    for row in map(_scaled, rows):
        current = best.get(row.coefficients)
        if current is None or row.rhs < current.rhs:
            best[row.coefficients] = row
    return list(best.values())


def _eliminate(rows: List[_HistoryRow], index: int, eliminated: int) -> List[_HistoryRow]:
    """Remove variable `index`; rows whose history exceeds eliminated+1 originals are dropped."""
    zero = [r for r in rows if r.coefficients[index] == 0]
    positive = [r for r in rows if r.coefficients[index] > 0]
    negative = [r for r in rows if r.coefficients[index] < 0]

    combined: List[_HistoryRow] = list(zero)
    skipped = 0
    for p in positive:
        for n in negative:
            history = p.history | n.history
            if len(history) > eliminated + 1:
                skipped += 1
                continue
            lam, mu = p.coefficients[index], -n.coefficients[index]
            coefficients = tuple(mu * pc + lam * nc for pc, nc in zip(p.coefficients, n.coefficients))
            combined.append(_HistoryRow(coefficients, mu * p.rhs + lam * n.rhs, history))

    result = _dedupe(combined)
    logger.debug(
        f"FM eliminate x{index}: {len(positive)}+/{len(negative)}-/{len(zero)}0 "
        f"→ {len(result)} rows ({skipped} pruned by history)"
    )
    return result


def project_split_region(split: SplitRegion) -> Region2:
    """Project onto (d1, d2) = (d1p + d1c, d2p + d2c) by exact Fourier–Motzkin elimination."""
    # Substitute d1c = d1 - d1p and d2c = d2 - d2p; variables become (d1, d2, d1p, d2p).
    rows: List[_HistoryRow] = []
    for h in split.halfspaces:
        c1p, c1c, c2p, c2c = h.coefficients
        rows.append(_HistoryRow((c1c, c2c, c1p - c1c, c2p - c2c), h.rhs))
    one = Fraction(1)
    rows += [
        _HistoryRow((ZERO, ZERO, -one, ZERO), ZERO),   # d1p >= 0
        _HistoryRow((-one, ZERO, one, ZERO), ZERO),    # d1c >= 0
        _HistoryRow((ZERO, ZERO, ZERO, -one), ZERO),   # d2p >= 0
        _HistoryRow((ZERO, -one, ZERO, one), ZERO),    # d2c >= 0
    ]
    rows = [_HistoryRow(r.coefficients, r.rhs, frozenset({i})) for i, r in enumerate(rows)]

    rows = _eliminate(rows, index=2, eliminated=1)
    rows = _eliminate(rows, index=3, eliminated=2)

    halfspaces: List[Halfspace] = []
    for r in rows:
        c1, c2 = r.coefficients[0], r.coefficients[1]
        if c1 == 0 and c2 == 0:
            if r.rhs < 0:
                logger.debug("Projection is empty (0 ≤ negative row)")
                return Region2(halfspaces=(), vertices=())
            continue
        halfspaces.append(Halfspace((c1, c2), r.rhs, label="projected"))

    region = region_from_halfspaces(halfspaces, prune=True)
    logger.debug(f"Projected split region: {len(region.halfspaces)} facets, {len(region.vertices)} vertices")
    return region


# ── Split Witness Search ──────────────────────────────────────

def find_split(split: SplitRegion, d1: RationalLike, d2: RationalLike) -> SplitWitness:
    """Find (d1p, d1c, d2p, d2c) in the split region summing to (d1, d2).

    The witness is the basic solution with lexicographically largest (d1p, d2p).
    """
    from core.gdof import SplitTuple

    d1, d2 = to_fraction(d1), to_fraction(d2)
    point = (d1, d2)
    if d1 < 0 or d2 < 0:
        return SplitWitness(feasible=False, point=point)

    one = Fraction(1)
    rows: List[_Row2] = []
    for h in split.halfspaces:
        c1p, c1c, c2p, c2c = h.coefficients
        rows.append((c1p - c1c, c2p - c2c, h.rhs - c1c * d1 - c2c * d2))
    rows += [(one, ZERO, d1), (ZERO, one, d2)]  # private parts cannot exceed the totals

    candidates = _vertices_of_rows(rows)
    if not candidates:
        logger.debug(f"No split for point ({d1}, {d2})")
        return SplitWitness(feasible=False, point=point)

    d1p, d2p = max(candidates)
    witness = SplitTuple(d1p=d1p, d1c=d1 - d1p, d2p=d2p, d2c=d2 - d2p)
    return SplitWitness(feasible=True, point=point, split=witness)
