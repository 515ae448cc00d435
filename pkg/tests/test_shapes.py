import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from asbsr import InfeasibleError, InvalidArgument
from asbsr.shapes import FAMILIES, ShapeSpec, fit_shape_to_budget, make_mask, mask_area


class TestMakeMask:
    def test_full_rectangle(self):
        m = make_mask(ShapeSpec("rectangle", 1.0, 1.0), (9, 13))
        assert m.all()

    def test_quarter_rectangle_512(self):
        _, frac = mask_area(make_mask(ShapeSpec("rectangle", 0.5), (512, 512)))
        assert abs(frac - 0.25) <= 2 / 512

    def test_triangle_half_area(self):
        n = 256
        m = make_mask(ShapeSpec("triangle", 1.0), (n, n))
        # cells with (u + 0.5) + (v + 0.5) <= n: row u holds n - u of them
        assert m.sum() == sum(n - u for u in range(n))
        assert abs(m.mean() - 0.5) <= 0.01

    def test_anchored_at_dc(self):
        m = make_mask(ShapeSpec("ellipse", 0.3, 0.5), (40, 40))
        assert m[0, 0] and not m[-1, -1]
        # extent: 0.3 of the band horizontally, 0.15 vertically
        assert m[0].sum() == 12 and m[:, 0].sum() == 6

    def test_pie_sector_angular_limits(self):
        m = make_mask(ShapeSpec("pie_sector", 1.0, 1.0, (30.0, 60.0)), (64, 64))
        p = (np.argwhere(m) + 0.5) / 64
        ang = np.degrees(np.arctan2(p[:, 0], p[:, 1]))
        inside = np.hypot(p[:, 0], p[:, 1])
        keep = ~np.all(np.argwhere(m) == 0, axis=1)
        assert np.all((ang[keep] >= 30) & (ang[keep] <= 60) & (inside[keep] <= 1))
        assert m[0, 0]

    def test_full_span_pie_equals_ellipse(self):
        a = make_mask(ShapeSpec("pie_sector", 0.7, 0.8), (50, 70))
        b = make_mask(ShapeSpec("ellipse", 0.7, 0.8), (50, 70))
        np.testing.assert_array_equal(a, b)

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(family="blob", scale=0.5),
            dict(family="ellipse", scale=0.0),
            dict(family="ellipse", scale=1.2),
            dict(family="ellipse", scale=0.8, aspect_ratio=2.0),
            dict(family="pie_sector", scale=0.5, angular_span=(60, 30)),
            dict(family="pie_sector", scale=0.5, angular_span=(0, 120)),
        ],
    )
    def test_invalid_spec(self, kwargs):
        with pytest.raises(InvalidArgument):
            ShapeSpec(**kwargs)

    @settings(max_examples=40, deadline=None)
    @given(st.sampled_from(FAMILIES), st.floats(0.2, 2.0), st.floats(0.01, 1.0), st.floats(0.01, 1.0))
    def test_nested_and_monotone_in_scale(self, family, aspect, s1, s2):
        hi_scale = min(1.0, 1.0 / aspect)
        lo, hi = sorted((s1 * hi_scale, s2 * hi_scale))
        small = make_mask(ShapeSpec(family, lo, aspect), (31, 47))
        big = make_mask(ShapeSpec(family, hi, aspect), (31, 47))
        assert small[0, 0] and big[0, 0]
        assert not (small & ~big).any()
        assert small.sum() <= big.sum()


class TestFit:
    def test_rectangle_quarter(self):
        spec = fit_shape_to_budget("rectangle", (512, 512), 0.25)
        assert spec.scale == pytest.approx(0.5, abs=1 / 512)
        assert mask_area(make_mask(spec, (512, 512)))[1] == pytest.approx(0.25, abs=1 / 512**2)

    def test_ellipse_quarter_disc(self):
        dims = (1024, 1024)
        target = math.pi / 16
        spec = fit_shape_to_budget("ellipse", dims, target)
        assert spec.scale == pytest.approx(0.5, abs=2e-3)
        n = dims[0] * dims[1]
        frac = mask_area(make_mask(spec, dims))[1]
        assert target - 1 / n <= frac <= target + max(1, 0.001 * n) / n

    @pytest.mark.parametrize("family", FAMILIES)
    def test_smallest_budget_is_dc(self, family):
        spec = fit_shape_to_budget(family, (32, 32), 1 / 1024)
        m = make_mask(spec, (32, 32))
        assert m.sum() == 1 and m[0, 0]

    def test_infeasible(self):
        with pytest.raises(InfeasibleError):
            fit_shape_to_budget("triangle", (64, 64), 0.8)
        with pytest.raises(InfeasibleError):
            fit_shape_to_budget("ellipse", (64, 64), 0.5, aspect_ratio=4.0)

    def test_bad_target(self):
        with pytest.raises(InvalidArgument):
            fit_shape_to_budget("ellipse", (8, 8), 0.0)

    @settings(max_examples=30, deadline=None)
    @given(st.sampled_from(FAMILIES), st.floats(0.5, 1.5), st.floats(0.001, 0.35))
    def test_never_under_covers(self, family, aspect, target):
        dims = (96, 128)
        n = dims[0] * dims[1]
        spec = fit_shape_to_budget(family, dims, target, aspect)
        frac = mask_area(make_mask(spec, dims))[1]
        assert frac >= target - 1 / n
        # the returned scale is minimal: a slightly smaller shape misses the target
        smaller = ShapeSpec(family, spec.scale * (1 - 1e-9), aspect)
        assert mask_area(make_mask(smaller, dims))[1] < target - 1e-12 or spec.scale < 1e-9


class TestMaskArea:
    def test_full(self):
        assert mask_area(np.ones((8, 8), bool)) == (64, 1.0)

    def test_dc_only(self):
        m = np.zeros((8, 8), bool)
        m[0, 0] = True
        assert mask_area(m) == (1, 1 / 64)

    def test_oval_at_half_band_area(self):
        # 0.505 is the shape area used in the jittered-lattice image experiment
        spec = fit_shape_to_budget("ellipse", (512, 512), 0.505)
        cells, _ = mask_area(make_mask(spec, (512, 512)))
        assert abs(cells - 0.505 * 262144) <= 262
