'''
SVG rendering of a path family on top of its lozenge tiling.

Lattice point (a,b) is drawn as the midpoint of a 120-degree edge of the
triangular lattice at ((a-2b)/2, a*sqrt(3)/2). A right step crosses a
vertical lozenge, a down step a left-tilted one, and every region point not
on a path is the short diagonal of a right-tilted lozenge.
'''
import logging
import math
import xml.etree.ElementTree as ET
from pathlib import Path as FilePath
from typing import Iterable, List, Optional, Sequence, Set, Tuple

from backend.src.api.models import RegionSpec
from backend.src.errors import InvalidInputError
from backend.src.services.oracle import PathFamily, iter_families
from backend.src.services.paths import LatticePoint, step_label

logger = logging.getLogger("qhex.render")

SVG_NS = "http://www.w3.org/2000/svg"
XML_DECLARATION = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
SCALE = 40.0
MARGIN = 20.0
H = math.sqrt(3) / 4

COLOURS = {
    "left": "#C04000",      # mahogany
    "right": "#FBCEB1",     # apricot
    "vertical": "#D2B48C",  # tan
}
PATH_COLOUR = "#FFFFFF"
STROKE_COLOUR = "#2c3e50"

Point = Tuple[float, float]


def _anchor(v: Tuple[int, int]) -> Point:
    a, b = v
    return ((a - 2 * b) / 2, a * 2 * H)


def _offset(p: Point, dx: float, dy: float) -> Point:
    return (p[0] + dx, p[1] + dy)


def vertical_lozenge(v) -> List[Point]:
    p = _anchor(v)
    return [_offset(p, 0.25, -H), _offset(p, 0.75, H), _offset(p, 0.25, 3 * H), _offset(p, -0.25, H)]


def left_lozenge(v) -> List[Point]:
    p = _anchor(v)
    return [_offset(p, 0.25, -H), _offset(p, 1.25, -H), _offset(p, 0.75, H), _offset(p, -0.25, H)]


def right_lozenge(v) -> List[Point]:
    p = _anchor(v)
    return [_offset(p, -0.75, -H), _offset(p, 0.25, -H), _offset(p, 0.75, H), _offset(p, -0.25, H)]


class _Canvas:
    # collects shapes in lattice units, converts to SVG pixels on output
    def __init__(self):
        self.shapes = []
        self.xs: List[float] = []
        self.ys: List[float] = []

    def add(self, kind: str, points: Sequence[Point], **extra):
        self.shapes.append((kind, list(points), extra))
        for x, y in points:
            self.xs.append(x)
            self.ys.append(y)

    def _px(self, p: Point) -> Tuple[float, float]:
        x0, y1 = min(self.xs, default=0.0), max(self.ys, default=0.0)
        return (MARGIN + (p[0] - x0) * SCALE, MARGIN + (y1 - p[1]) * SCALE)

    def _fmt(self, points) -> str:
        return " ".join(f"{x:.3f},{y:.3f}" for x, y in (self._px(p) for p in points))

    def to_svg(self) -> ET.Element:
        width = 2 * MARGIN + (max(self.xs, default=0.0) - min(self.xs, default=0.0)) * SCALE
        height = 2 * MARGIN + (max(self.ys, default=0.0) - min(self.ys, default=0.0)) * SCALE
        root = ET.Element("svg", {
            "xmlns": SVG_NS,
            "version": "1.1",
            "width": f"{width:.0f}",
            "height": f"{height:.0f}",
            "viewBox": f"0 0 {width:.3f} {height:.3f}",
        })
        tiling = ET.SubElement(root, "g", {"id": "tiling"})
        labels = ET.SubElement(root, "g", {"id": "labels"})
        paths = ET.SubElement(root, "g", {"id": "paths"})
        for kind, points, extra in self.shapes:
            if kind == "path":
                ET.SubElement(paths, "polyline", {
                    "class": "path",
                    "points": self._fmt(points),
                    "fill": "none",
                    "stroke": PATH_COLOUR,
                    "stroke-width": "3",
                })
                continue
            ET.SubElement(tiling, "polygon", {
                "class": f"lozenge {kind}",
                "points": self._fmt(points),
                "fill": COLOURS[kind],
                "stroke": STROKE_COLOUR,
                "stroke-width": "1",
            })
            if kind == "vertical":
                cx, cy = self._px(_offset(points[0], 0, 2 * H))
                text = ET.SubElement(labels, "text", {
                    "class": "label",
                    "x": f"{cx:.3f}",
                    "y": f"{cy + 4:.3f}",
                    "text-anchor": "middle",
                    "font-size": "12",
                    "font-family": "sans-serif",
                })
                text.text = str(extra["label"])
        return root


def build_scene(family: PathFamily, region_points: Iterable[Tuple[int, int]], tiling_only: bool = False) -> ET.Element:
    canvas = _Canvas()
    on_path: Set[Tuple[int, int]] = family.vertices()
    for path in family.paths:
        for u, v in path.steps():
            if v[0] == u[0] + 1:
                canvas.add("vertical", vertical_lozenge(u), label=step_label(LatticePoint(*u)))
            else:
                canvas.add("left", left_lozenge(u))
    for point in sorted(set(region_points) - on_path):
        canvas.add("right", right_lozenge(point))
    if not tiling_only:
        for path in family.paths:
            canvas.add("path", [_anchor(v) for v in path.vertices])
    return canvas.to_svg()


def render_family(region: RegionSpec, index: int = 0, tiling_only: bool = False, cap: Optional[int] = None) -> Tuple[str, PathFamily]:
    '''
    SVG text for family number `index` (enumeration order) of the region.
    The region outline is the union of vertices used by any family.
    '''
    families = list(iter_families(region, cap))
    if not families:
        raise InvalidInputError(f"region m={region.m} k={region.k} dents={region.dents.values} has no tilings")
    if not 0 <= index < len(families):
        raise InvalidInputError(f"family index {index} outside 0..{len(families) - 1}")
    region_points: Set[Tuple[int, int]] = set()
    for family in families:
        region_points |= family.vertices()
    family = families[index]
    root = build_scene(family, region_points, tiling_only)
    logger.info(f"Rendered family {index} of {len(families)} with {len(family.labels())} vertical lozenges")
    return XML_DECLARATION + ET.tostring(root, encoding="unicode"), family


def write_svg(text: str, out: str) -> FilePath:
    path = FilePath(out)
    path.write_text(text, encoding="utf-8")
    return path


def svg_labels(text: str) -> List[int]:
    # label multiset of a rendered scene, read back from the XML
    root = ET.fromstring(text)
    return [
        int(node.text)
        for node in root.iter(f"{{{SVG_NS}}}text")
        if node.get("class") == "label"
    ]
