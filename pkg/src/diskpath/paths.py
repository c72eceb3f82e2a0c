"""Weighted paths: chains of straight segments and boundary arcs."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .geometry import TWO_PI, Point


@dataclass(frozen=True)
class Piece:
    """One path piece.  Arcs carry their disk, angles and orientation."""

    kind: str  # "seg" or "arc"
    start: Point
    end: Point
    length: float
    multiplier: float
    disk: int | None = None
    center: Point | None = None
    radius: float | None = None
    start_angle: float | None = None
    end_angle: float | None = None
    orientation: str | None = None

    @property
    def weight(self) -> float:
        if self.length == 0.0:
            return 0.0
        return self.multiplier * self.length

    def to_json(self) -> dict:
        out = {"type": self.kind, "start": list(self.start), "end": list(self.end),
               "length": self.length, "multiplier": self.multiplier, "weight": self.weight}
        if self.kind == "arc":
            out.update({"disk": self.disk, "center": list(self.center), "radius": self.radius,
                        "start_angle": self.start_angle, "end_angle": self.end_angle,
                        "orientation": self.orientation})
        return out


def segment(p, q, multiplier: float = 1.0) -> Piece:
    p, q = Point(*p), Point(*q)
    return Piece("seg", p, q, p.dist(q), multiplier)


def arc_piece(disk, index: int, a0: float, a1: float, multiplier: float, orientation: str | None = None) -> Piece:
    """Arc on ``disk`` from angle ``a0`` to ``a1``; the shorter way unless ``orientation`` is given."""
    ccw = (a1 - a0) % TWO_PI
    if orientation is None:
        orientation = "ccw" if ccw <= TWO_PI - ccw else "cw"
    sweep = ccw if orientation == "ccw" else (a0 - a1) % TWO_PI
    return Piece("arc", disk.point_at(a0), disk.point_at(a1), disk.r * sweep, multiplier,
                 disk=index, center=disk.center, radius=disk.r,
                 start_angle=a0, end_angle=a1, orientation=orientation)


@dataclass
class WeightedPath:
    pieces: list[Piece] = field(default_factory=list)
    nodes: list[int] = field(default_factory=list)
    edge_classes: list[str] = field(default_factory=list)
    # total as summed by the graph search, when the path came from one
    graph_weight: float | None = None

    @property
    def total_weight(self) -> float:
        return math.fsum(p.weight for p in self.pieces)

    @property
    def total_euclidean(self) -> float:
        return math.fsum(p.length for p in self.pieces)

    @property
    def start(self) -> Point | None:
        return self.pieces[0].start if self.pieces else None

    @property
    def end(self) -> Point | None:
        return self.pieces[-1].end if self.pieces else None

    def extend(self, other: "WeightedPath") -> None:
        self.pieces.extend(other.pieces)

    def reversed(self) -> "WeightedPath":
        out = []
        for p in reversed(self.pieces):
            if p.kind == "seg":
                out.append(Piece("seg", p.end, p.start, p.length, p.multiplier))
            else:
                orient = "cw" if p.orientation == "ccw" else "ccw"
                out.append(Piece("arc", p.end, p.start, p.length, p.multiplier, p.disk, p.center, p.radius,
                                 p.end_angle, p.start_angle, orient))
        return WeightedPath(out, list(reversed(self.nodes)), list(reversed(self.edge_classes)))

    def to_json(self) -> dict:
        return {"weight": self.total_weight, "euclidean": self.total_euclidean,
                "pieces": [p.to_json() for p in self.pieces]}
