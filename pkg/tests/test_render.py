from __future__ import annotations

import xml.etree.ElementTree as ET

import pytest

from platlab import plat, render
from platlab.labyrinth import chain_recurrence
from platlab.plat import PlatSpec

NS = "{http://www.w3.org/2000/svg}"


def elements(svg, tag, cls=None):
    root = ET.fromstring(svg.encode())
    out = root.iter(NS + tag)
    return [e for e in out if cls is None or cls in e.get("class", "").split()]


def test_plat_counts_b5():
    spec = plat.uniform_square(5, 2)
    svg = render.render_plat(spec)
    assert len(elements(svg, "circle", "strand-top")) == 10
    assert len(elements(svg, "circle", "endpoint")) == 2 * spec.b
    assert len(elements(svg, "rect", "twist-region")) == sum(len(r) for r in spec.twists)
    assert len(elements(svg, "path", "bridge")) == 2 * spec.b


def test_labyrinth_boxes():
    spec = plat.uniform_square(5, 2)
    svg = render.render(spec, render.RenderPlan("labyrinth"))
    boxes = elements(svg, "rect", "multiplicity-box")
    labels = [e.text for e in elements(svg, "text", "multiplicity")]
    assert len(boxes) == spec.h
    assert labels == [str(x) for x in chain_recurrence(spec).N]
    assert len(elements(svg, "line", "gate")) == spec.h - 1


def test_labyrinth_unboxed():
    spec = plat.uniform_square(4, 3)
    svg = render.render(spec, render.RenderPlan("labyrinth", boxed=False))
    assert not elements(svg, "rect", "multiplicity-box")
    assert len(elements(svg, "text", "multiplicity")) == spec.h


def test_labyrinth_needs_strict_spec():
    spec = PlatSpec(4, 3, ((2, 2, 2), (-2, -2)))
    with pytest.raises(plat.InvalidSpecError):
        render.render(spec, render.RenderPlan("labyrinth"))
    render.render(spec, render.RenderPlan("plat"))


@pytest.mark.parametrize("target", ["plat", "labyrinth"])
def test_deterministic(target):
    spec = plat.family_for_k(5, 2)
    plan = render.RenderPlan(target, 640, 480)
    assert render.render(spec, plan).encode() == render.render(plat.loads(plat.dumps(spec)), plan).encode()


def test_bad_plan():
    with pytest.raises(ValueError):
        render.RenderPlan("gauss")
    with pytest.raises(ValueError):
        render.RenderPlan("plat", 0, 100)
