"""Validated scenes of pairwise-disjoint weighted disks and their derived constants."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from .geometry import DEFAULT_TOL, HALF_PI, Disk, Point


class SceneError(ValueError):
    """Base class for invalid scenes."""


class OverlapError(SceneError):
    def __init__(self, j: int, k: int):
        super().__init__(f"disks {j} and {k} overlap or touch")
        self.j, self.k = j, k


class NonPositiveRadius(SceneError):
    def __init__(self, i: int):
        super().__init__(f"disk {i} has a non-positive radius")
        self.i = i


class NegativeWeight(SceneError):
    def __init__(self, i: int):
        super().__init__(f"disk {i} has a negative or NaN weight")
        self.i = i


class SceneParseError(SceneError):
    """Malformed scene file; the message carries the offending location."""


@dataclass(frozen=True)
class QueryPoints:
    s: Point
    t: Point


@dataclass(frozen=True)
class Scene:
    """Disks plus the per-disk clearance, angular radius and global ``c``, ``a``.

    Construct through :func:`validate` (or :meth:`from_disks`), which checks
    disjointness and fills the derived fields.
    """

    disks: tuple[Disk, ...]
    tol: float
    clearance: tuple[float, ...]
    alpha: tuple[float | None, ...]
    c: float
    a: float
    query: QueryPoints | None = field(default=None, compare=False)

    @classmethod
    def from_disks(cls, disks, query: QueryPoints | None = None, tol: float | None = None) -> "Scene":
        return validate(list(disks), query=query, tol=tol)

    @property
    def n(self) -> int:
        return len(self.disks)

    def disk(self, i: int) -> Disk:
        return self.disks[i]

    def diameter(self) -> float:
        return _diameter(self.disks)

    def with_weights(self, weights) -> "Scene":
        disks = [Disk(d.id, d.cx, d.cy, d.r, float(w)) for d, w in zip(self.disks, weights)]
        return validate(disks, query=self.query, tol=self.tol)


def _diameter(disks) -> float:
    xs = [d.cx - d.r for d in disks] + [d.cx + d.r for d in disks]
    ys = [d.cy - d.r for d in disks] + [d.cy + d.r for d in disks]
    return math.hypot(max(xs) - min(xs), max(ys) - min(ys))


def weighted_angular_radius(R: float, d: float, w: float) -> float:
    """Angular radius of a vertex vicinity; ``w`` is clamped to pi/2."""
    if not w > 0.0:
        raise ValueError("angular radius is undefined for a zero-weight disk")
    w = min(w, HALF_PI)
    return math.asin(min(d, R) * min(1.0, w) / (4.0 * R * max(1.0, w)))


def constant_a(c: float) -> float:
    return (1.0 + 3.0 * c + math.sqrt(9.0 * c * c + 10.0 * c + 1.0)) / 2.0


def global_constants(scene_or_disks, clearance=None) -> tuple[float, float]:
    """Return ``(c, a)``: c = (pi/2 max R) / min d and a = (1 + 3c + sqrt(9c^2 + 10c + 1)) / 2."""
    if isinstance(scene_or_disks, Scene):
        return scene_or_disks.c, scene_or_disks.a
    disks = list(scene_or_disks)
    c = HALF_PI * max(d.r for d in disks) / min(clearance)
    return c, constant_a(c)


def validate(disks: list[Disk], query: QueryPoints | None = None, tol: float | None = None) -> Scene:
    """Check a disk list and compute the derived constants.

    Raises :class:`OverlapError`, :class:`NonPositiveRadius` or
    :class:`NegativeWeight`.  A one-disk scene uses its radius as clearance.
    """
    if not disks:
        raise SceneError("a scene needs at least one disk")
    for d in disks:
        if not (d.r > 0.0) or not math.isfinite(d.r):
            raise NonPositiveRadius(d.id)
        if not (d.w >= 0.0):
            raise NegativeWeight(d.id)
        if not (math.isfinite(d.cx) and math.isfinite(d.cy)):
            raise SceneError(f"disk {d.id} has a non-finite center")
    ids = [d.id for d in disks]
    if len(set(ids)) != len(ids):
        raise SceneError("disk ids must be unique")
    if tol is None:
        tol = DEFAULT_TOL * max(_diameter(disks), 1.0)

    n = len(disks)
    clear = [math.inf] * n
    for j in range(n):
        for k in range(j + 1, n):
            dj, dk = disks[j], disks[k]
            gap = math.hypot(dj.cx - dk.cx, dj.cy - dk.cy) - dj.r - dk.r
            if gap <= tol:
                raise OverlapError(dj.id, dk.id)
            clear[j] = min(clear[j], gap)
            clear[k] = min(clear[k], gap)
    if n == 1:
        clear[0] = disks[0].r

    alpha = tuple(weighted_angular_radius(d.r, cl, d.w) if d.w > 0.0 else None
                  for d, cl in zip(disks, clear))
    c, a = global_constants(disks, clear)
    if query is not None:
        for p in (query.s, query.t):
            for d in disks:
                if math.isinf(d.w) and d.contains(p, tol):
                    raise SceneError(f"query point {tuple(p)} lies inside obstacle {d.id}")
        if Point(*query.s).dist(query.t) <= tol:
            raise SceneError("query points s and t coincide")
    return Scene(tuple(disks), tol, tuple(clear), alpha, c, a, query)


# ---------------------------------------------------------------- file format

def _fmt(x: float) -> str:
    if math.isinf(x):
        return '"inf"'
    return format(x, ".17g")


def dumps_scene(scene: Scene) -> str:
    lines = ['{', '  "disks": [']
    rows = []
    for d in scene.disks:
        rows.append('    {"id": %d, "cx": %s, "cy": %s, "r": %s, "w": %s}'
                    % (d.id, _fmt(d.cx), _fmt(d.cy), _fmt(d.r), _fmt(d.w)))
    lines.append(",\n".join(rows))
    if scene.query is None:
        lines.append('  ]')
    else:
        s, t = scene.query.s, scene.query.t
        lines.append('  ],')
        lines.append('  "query": {"s": [%s, %s], "t": [%s, %s]}'
                     % (_fmt(s[0]), _fmt(s[1]), _fmt(t[0]), _fmt(t[1])))
    lines.append('}')
    return "\n".join(lines) + "\n"


def save_scene(scene: Scene, path) -> None:
    Path(path).write_text(dumps_scene(scene), encoding="utf-8")


def _number(value, where: str, allow_inf: bool = False) -> float:
    if allow_inf and value in ("inf", "Infinity", "+inf"):
        return math.inf
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SceneParseError(f"{where}: expected a number, got {value!r}")
    return float(value)


def _point(value, where: str) -> Point:
    if not isinstance(value, list) or len(value) != 2:
        raise SceneParseError(f"{where}: expected [x, y]")
    return Point(_number(value[0], where + "[0]"), _number(value[1], where + "[1]"))


def loads_scene(text: str, tol: float | None = None) -> Scene:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SceneParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict) or "disks" not in doc:
        raise SceneParseError("top level: expected an object with a 'disks' array")
    raw = doc["disks"]
    if not isinstance(raw, list):
        raise SceneParseError("disks: expected an array")
    disks = []
    for i, item in enumerate(raw):
        where = f"disks[{i}]"
        if not isinstance(item, dict):
            raise SceneParseError(f"{where}: expected an object")
        for key in ("cx", "cy", "r", "w"):
            if key not in item:
                raise SceneParseError(f"{where}.{key}: missing")
        did = item.get("id", i)
        if isinstance(did, bool) or not isinstance(did, int):
            raise SceneParseError(f"{where}.id: expected an integer")
        disks.append(Disk(did, _number(item["cx"], where + ".cx"), _number(item["cy"], where + ".cy"),
                          _number(item["r"], where + ".r"), _number(item["w"], where + ".w", allow_inf=True)))
    query = None
    if doc.get("query") is not None:
        q = doc["query"]
        if not isinstance(q, dict) or "s" not in q or "t" not in q:
            raise SceneParseError("query: expected an object with 's' and 't'")
        query = QueryPoints(_point(q["s"], "query.s"), _point(q["t"], "query.t"))
    return validate(disks, query=query, tol=tol)


def load_scene(path, tol: float | None = None) -> Scene:
    return loads_scene(Path(path).read_text(encoding="utf-8"), tol=tol)
