import xml.etree.ElementTree as ET

import pytest

from backend.src.api.models import RegionSpec
from backend.src.errors import InvalidInputError
from backend.src.services.oracle import family_count, iter_families
from backend.src.services.render import SVG_NS, render_family, svg_labels, write_svg


def _classes(text):
    root = ET.fromstring(text)
    return [node.get("class") for node in root.iter(f"{{{SVG_NS}}}polygon")]


def test_single_step_family():
    text, family = render_family(RegionSpec.of(1, 1, (0,)))
    assert family.labels() == [1]
    assert svg_labels(text) == [1]
    assert _classes(text).count("lozenge vertical") == 1


def test_empty_path_family_has_no_labels():
    text, family = render_family(RegionSpec.of(1, 0, (0,)))
    assert family.labels() == []
    assert svg_labels(text) == []
    ET.fromstring(text)


@pytest.mark.parametrize("region", [RegionSpec.of(2, 0, (0, 1)), RegionSpec.of(2, 1, (-1, 1)), RegionSpec.of(3, 1, (-2, 0, 2))])
def test_label_multiset_matches_every_family(region):
    for index in range(family_count(region)):
        text, family = render_family(region, index=index)
        assert family.is_vertex_disjoint()
        assert sorted(svg_labels(text)) == sorted(family.labels())
        assert len(ET.fromstring(text).findall(f".//{{{SVG_NS}}}polyline")) == region.m


def test_each_step_gets_one_lozenge():
    region = RegionSpec.of(2, 1, (-1, 0))
    text, family = render_family(region, index=0)
    classes = _classes(text)
    steps = sum(len(p.vertices) - 1 for p in family.paths)
    assert classes.count("lozenge vertical") + classes.count("lozenge left") == steps


def test_tiling_only_drops_the_paths():
    text, _ = render_family(RegionSpec.of(2, 1, (-1, 0)), tiling_only=True)
    assert ET.fromstring(text).findall(f".//{{{SVG_NS}}}polyline") == []


def test_family_index_out_of_range():
    region = RegionSpec.of(1, 1, (0,))
    with pytest.raises(InvalidInputError):
        render_family(region, index=1)
    with pytest.raises(InvalidInputError):
        render_family(region, index=-1)


def test_region_without_tilings():
    with pytest.raises(InvalidInputError):
        render_family(RegionSpec.of(2, 0, (1, 2)))


def test_write_svg(tmp_path):
    text, _ = render_family(RegionSpec.of(1, 1, (0,)))
    path = write_svg(text, str(tmp_path / "tiling.svg"))
    assert path.read_text(encoding="utf-8") == text


def test_family_order_is_deterministic():
    region = RegionSpec.of(2, 1, (-1, 1))
    assert list(iter_families(region)) == list(iter_families(region))
