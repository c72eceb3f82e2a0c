"""Scene drawings: byte-stable SVG text and matplotlib report figures."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .geometry import HALF_PI, Point
from .paths import WeightedPath
from .scene import Scene


@dataclass(frozen=True)
class RenderSpec:
    width: int = 800
    height: int = 800
    margin: int = 24
    path_stroke: str = "#d62728"
    path_width: float = 2.5
    node_fill: str = "#222222"
    node_radius: float = 1.6
    obstacle_fill: str = "#555555"
    # light to dark as the interior weight grows towards pi/2
    ramp: tuple[str, str] = ("#f2f7fc", "#1f4e8c")
    class_stroke: dict = field(default_factory=lambda: {
        "boundary_arc": "#2ca02c", "interior_chord": "#ff7f0e",
        "free_segment": "#7f7f7f", "curved_detour": "#9467bd"})


def _hex(c: str) -> tuple[int, int, int]:
    return int(c[1:3], 16), int(c[3:5], 16), int(c[5:7], 16)


def weight_color(w: float, spec: RenderSpec = RenderSpec()) -> str:
    if math.isinf(w) or w > HALF_PI:
        return spec.obstacle_fill
    t = w / HALF_PI
    lo, hi = _hex(spec.ramp[0]), _hex(spec.ramp[1])
    return "#%02x%02x%02x" % tuple(round(a + t * (b - a)) for a, b in zip(lo, hi))


def _f(x: float) -> str:
    s = "%.3f" % x
    return "0.000" if s == "-0.000" else s


class _Frame:
    def __init__(self, scene: Scene, extra, spec: RenderSpec):
        xs = [d.cx - d.r for d in scene.disks] + [d.cx + d.r for d in scene.disks] + [p[0] for p in extra]
        ys = [d.cy - d.r for d in scene.disks] + [d.cy + d.r for d in scene.disks] + [p[1] for p in extra]
        self.x0, self.y1 = min(xs), max(ys)
        w, h = max(max(xs) - min(xs), 1e-9), max(max(ys) - min(ys), 1e-9)
        self.k = min((spec.width - 2 * spec.margin) / w, (spec.height - 2 * spec.margin) / h)
        # centre the drawing on the canvas
        self.ox = 0.5 * (spec.width - w * self.k)
        self.oy = 0.5 * (spec.height - h * self.k)

    def x(self, x: float) -> str:
        return _f(self.ox + (x - self.x0) * self.k)

    def y(self, y: float) -> str:
        return _f(self.oy + (self.y1 - y) * self.k)

    def r(self, r: float) -> str:
        return _f(r * self.k)


def render_svg(scene: Scene, path: WeightedPath | None = None, nodes=None,
               spec: RenderSpec = RenderSpec(), terminals=(), edges=()) -> str:
    """SVG of the disks, optional node dots, optional ``(p, q, class)`` edges and a path."""
    nodes = list(nodes or [])
    extra = list(terminals) + nodes
    if path is not None:
        extra += [pc.start for pc in path.pieces] + [pc.end for pc in path.pieces]
    fr = _Frame(scene, extra, spec)
    out = ['<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" viewBox="0 0 %d %d">'
           % (spec.width, spec.height, spec.width, spec.height),
           '<rect width="100%" height="100%" fill="#ffffff"/>']
    for d in scene.disks:
        out.append('<circle cx="%s" cy="%s" r="%s" fill="%s" stroke="#000000" stroke-width="0.8"/>'
                   % (fr.x(d.cx), fr.y(d.cy), fr.r(d.r), weight_color(d.w, spec)))
    for p, q, cls in edges:
        out.append('<line x1="%s" y1="%s" x2="%s" y2="%s" stroke="%s" stroke-width="0.5"/>'
                   % (fr.x(p[0]), fr.y(p[1]), fr.x(q[0]), fr.y(q[1]), spec.class_stroke.get(cls, "#999999")))
    for p in nodes:
        out.append('<circle cx="%s" cy="%s" r="%s" fill="%s"/>'
                   % (fr.x(p[0]), fr.y(p[1]), _f(spec.node_radius), spec.node_fill))
    if path is not None and path.pieces:
        d_attr = ["M %s %s" % (fr.x(path.pieces[0].start[0]), fr.y(path.pieces[0].start[1]))]
        for pc in path.pieces:
            if pc.kind == "seg":
                d_attr.append("L %s %s" % (fr.x(pc.end[0]), fr.y(pc.end[1])))
            else:
                sweep = pc.length / pc.radius
                large = 1 if sweep > math.pi else 0
                # screen y points down, so a counter-clockwise world arc is drawn clockwise
                flag = 1 if pc.orientation == "ccw" else 0
                d_attr.append("A %s %s 0 %d %d %s %s" % (fr.r(pc.radius), fr.r(pc.radius), large, flag,
                                                         fr.x(pc.end[0]), fr.y(pc.end[1])))
        out.append('<path d="%s" fill="none" stroke="%s" stroke-width="%s"/>'
                   % (" ".join(d_attr), spec.path_stroke, _f(spec.path_width)))
    for p in terminals:
        out.append('<circle cx="%s" cy="%s" r="4.000" fill="#ffbf00" stroke="#000000"/>' % (fr.x(p[0]), fr.y(p[1])))
    out.append("</svg>")
    return "\n".join(out) + "\n"


# ------------------------------------------------------------ matplotlib

def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def figure_scene(scene: Scene, outfile, path: WeightedPath | None = None, nodes=(), title: str = "") -> None:
    plt = _pyplot()
    from matplotlib.patches import Arc as ArcPatch
    from matplotlib.patches import Circle

    fig, ax = plt.subplots(figsize=(6, 6))
    for d in scene.disks:
        ax.add_patch(Circle((d.cx, d.cy), d.r, facecolor=weight_color(d.w), edgecolor="black", lw=0.8))
    if len(nodes):
        ax.plot([p[0] for p in nodes], [p[1] for p in nodes], ".", ms=2, color="#222222")
    if path is not None:
        for pc in path.pieces:
            if pc.kind == "seg":
                ax.plot([pc.start[0], pc.end[0]], [pc.start[1], pc.end[1]], color="#d62728", lw=2)
            else:
                a0, a1 = math.degrees(pc.start_angle), math.degrees(pc.end_angle)
                if pc.orientation == "cw":
                    a0, a1 = a1, a0
                ax.add_patch(ArcPatch(pc.center, 2 * pc.radius, 2 * pc.radius, theta1=a0, theta2=a1,
                                      color="#d62728", lw=2))
    ax.set_aspect("equal")
    ax.autoscale_view()
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(outfile, dpi=120, metadata={"Software": None})
    plt.close(fig)


def figure_bench(rows: list[dict], outfile) -> None:
    """Node counts against their closed-form bounds, one point per epsilon."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6, 4))
    eps = [r["epsilon"] for r in rows]
    ax.loglog(eps, [r["nodes"] for r in rows], "o-", label="nodes")
    ax.loglog(eps, [r["total_bound"] for r in rows], "s--", label="C n / eps")
    ax.set_xlabel("epsilon")
    ax.set_ylabel("count")
    ax.legend()
    fig.tight_layout()
    fig.savefig(outfile, dpi=120, metadata={"Software": None})
    plt.close(fig)


def figure_verify(rows: list[dict], outfile) -> None:
    """Measured ratio against its allowed bound for each verification case."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7, 4))
    xs = range(len(rows))
    ax.plot(xs, [r["ratio"] for r in rows], "o", label="measured")
    ax.plot(xs, [r["bound"] for r in rows], "_", ms=14, color="black", label="bound")
    ax.set_xticks(list(xs), [r["case"] for r in rows], rotation=90, fontsize=6)
    ax.set_ylabel("ratio")
    ax.legend()
    fig.tight_layout()
    fig.savefig(outfile, dpi=120, metadata={"Software": None})
    plt.close(fig)


def node_points(scene: Scene, nodes) -> list[Point]:
    return [Point(*n.point) if n.point is not None else scene.disks[n.disk].point_at(n.angle) for n in nodes]
