"""SVG output structure."""

import pytest

from dcmap import RenderOptions, generate, render_svg


class TestRenderOptions:
    def test_validation(self):
        with pytest.raises(ValueError):
            RenderOptions(stroke_width=0)
        with pytest.raises(ValueError):
            RenderOptions(padding=-1)
        with pytest.raises(ValueError):
            RenderOptions(scheme="neon")


class TestRenderSvg:
    def test_identity_counts(self):
        svg = render_svg(generate("zc", 1.0, 6))
        # 25 even vertices on a 7x7 grid, 2*6*7 lattice edges
        assert svg.count("<circle") == 25
        assert svg.count("<path") == 84
        assert svg.startswith("<svg")
        assert svg.rstrip().endswith("</svg>")

    def test_flags(self):
        lat = generate("zc", 1.0, 4)
        no_circles = render_svg(lat, RenderOptions(draw_circles=False))
        assert "<circle" not in no_circles
        no_quads = render_svg(lat, RenderOptions(draw_quads=False))
        assert "<path" not in no_quads

    def test_log_line_element(self, log_42):
        svg = render_svg(log_42)
        assert svg.count("<line") == 1

    def test_y_axis_flipped(self):
        # the first-quadrant lattice must render with negative y coords
        svg = render_svg(generate("zc", 1.5, 4), RenderOptions(draw_quads=False))
        circle_lines = [ln for ln in svg.splitlines() if "<circle" in ln]
        assert any('cy="-' in ln for ln in circle_lines)

    def test_z2_renders_without_corner_circle(self, z2_42):
        svg = render_svg(z2_42)
        # even vertices of the 43x43 grid minus the radius-0 corner
        assert svg.count("<circle") == (43 * 43 + 1) // 2 - 1

    def test_naive_lattice_renders(self, naive15_12):
        svg = render_svg(naive15_12)
        assert svg.count("<circle") > 0

    def test_print_scheme(self):
        svg = render_svg(generate("zc", 1.0, 4), RenderOptions(scheme="print"))
        assert "#000000" in svg
