import math
import xml.etree.ElementTree as ET

import pytest

from flatmink.render import chart, render_svg
from flatmink.torus import TorusPoint

SVG = "{http://www.w3.org/2000/svg}"


def test_chart_maps_circle_to_unit_interval():
    assert chart(math.inf) == 0.0
    assert chart(0.0) == 0.5
    assert chart(1.0) == pytest.approx(0.75)
    assert chart(-1e300) == pytest.approx(0.0, abs=1e-12)


def test_svg_is_well_formed(classical):
    C = classical.curve(1.0, 0.0, 0.0)
    L = classical.line(-1.0, 2.0)
    svg = render_svg([C, L], [TorusPoint(1.0, 1.0)], title="a < b & c")
    root = ET.fromstring(svg)
    assert root.tag == SVG + "svg"
    groups = root.findall(SVG + "g")
    assert len(groups) == 2
    # the curve has two branches, the line one; each polyline has many vertices
    assert len(groups[0].findall(SVG + "polyline")) == 2
    assert len(groups[1].findall(SVG + "polyline")) == 1
    assert all(len(p.get("points").split()) > 100 for p in root.iter(SVG + "polyline"))
    assert root.find(SVG + "title").text == "a < b & c"


def test_infinite_points_are_marked(classical):
    # a curve has two infinite points, a line one
    C = classical.curve(1.0, 0.0, 0.0)
    root = ET.fromstring(render_svg([C]))
    assert len(root.find(SVG + "g").findall(SVG + "circle")) == 2
    root = ET.fromstring(render_svg([classical.line(-1.0, 0.0)]))
    assert len(root.find(SVG + "g").findall(SVG + "circle")) == 1


def test_render_is_deterministic(mixed):
    C = mixed.curve(0.7, 0.3, -1.2)
    assert render_svg([C]) == render_svg([C])
