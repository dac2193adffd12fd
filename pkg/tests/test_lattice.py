"""Lattice generation, the boundary constraint, duality, residuals."""

import cmath
import math

import pytest

from dcmap import (
    INFINITY,
    ConformalLattice,
    LatticeIndex,
    LatticeKind,
    ZeroEdge,
    boundary_extend,
    constraint_residual,
    cross_ratio,
    dual_map,
    generate,
    generate_naive,
)


def quad_defect(lat, n, m):
    q = cross_ratio(lat.at(n, m), lat.at(n + 1, m),
                    lat.at(n + 1, m + 1), lat.at(n, m + 1))
    return abs(q.value + 1)


class TestBoundaryExtend:
    @pytest.mark.parametrize("c", [0.3, 0.5, 1.0, 1.5, 1.9])
    def test_first_step(self, c):
        nxt = boundary_extend("zc", c, [0, 1])
        assert abs(nxt.value - 2.0 / (2.0 - c)) < 1e-14

    def test_identity_axis(self):
        axis = [0, 1]
        for _ in range(20):
            axis.append(boundary_extend("zc", 1.0, axis).value)
        assert axis == [k for k in range(22)]

    def test_log_infinite_corner(self):
        nxt = boundary_extend("log", None, [INFINITY, 0])
        assert abs(nxt.value - 1.0) < 1e-15
        nxt = boundary_extend("log", None, [INFINITY, 1j * math.pi])
        assert abs(nxt.value - (1 + 1j * math.pi)) < 1e-15

    def test_needs_two_values(self):
        with pytest.raises(ValueError):
            boundary_extend("zc", 1.5, [1])

    @pytest.mark.parametrize("kind,c", [("zc", 1.5), ("z2", None), ("log", None)])
    def test_matches_generated_axes(self, kind, c):
        lat = generate(kind, c, 10)
        start = 2 if kind == "z2" else 1
        axis = [lat.at(n, 0) for n in range(start + 1)]
        for n in range(start, 10):
            axis.append(boundary_extend(kind, c, axis))
        for n in range(11):
            if not axis[n].is_finite:
                continue
            ref = lat.value_at(n, 0)
            assert abs(axis[n].value - ref) < 1e-11 * max(1.0, abs(ref))


class TestGenerate:
    def test_identity_is_exact(self):
        lat = generate("zc", 1.0, 30)
        err = max(abs(lat.value_at(n, m) - (n + 1j * m))
                  for n in range(31) for m in range(31))
        assert err < 1e-13

    @pytest.mark.parametrize("c", [0.5, 1.25, 1.5])
    def test_corner_value(self, c):
        lat = generate("zc", c, 4)
        w = cmath.exp(1j * c * math.pi / 2)
        assert abs(lat.value_at(1, 1) - 2 * w / (1 + w)) < 1e-14
        assert abs(lat.value_at(2, 0) - 2 / (2 - c)) < 1e-14

    def test_z2_seeds(self):
        lat = generate("z2", None, 6)
        assert lat.value_at(0, 0) == 0
        assert lat.value_at(1, 0) == 0
        assert lat.value_at(0, 1) == 0
        assert abs(lat.value_at(2, 0) - 1) < 1e-15
        assert abs(lat.value_at(0, 2) + 1) < 1e-15
        assert abs(lat.value_at(1, 1) - 2j / math.pi) < 1e-15

    def test_log_seeds(self):
        lat = generate("log", None, 6)
        assert not lat.is_finite(0, 0)
        assert lat.value_at(1, 0) == 0
        assert abs(lat.value_at(0, 1) - 1j * math.pi) < 1e-15
        assert abs(lat.value_at(1, 1) - 1j * math.pi / 2) < 1e-15
        assert abs(lat.value_at(2, 0) - 1.0) < 1e-14
        assert abs(lat.value_at(0, 2) - (1 + 1j * math.pi)) < 1e-14

    def test_cross_ratio_invariant(self, zc15_small):
        worst = max(quad_defect(zc15_small, n, m)
                    for n in range(20) for m in range(20))
        assert worst < 1e-9

    def test_log_corner_quad_cross_ratio(self):
        lat = generate("log", None, 4)
        q = cross_ratio(lat.at(0, 0), lat.at(1, 0), lat.at(1, 1), lat.at(0, 1))
        assert abs(q.value + 1) < 1e-14

    def test_axis_rays(self, zc15_small):
        target = 1.5 * math.pi / 2
        for k in range(1, 21):
            assert abs(cmath.phase(zc15_small.value_at(k, 0))) < 1e-10
            assert abs(cmath.phase(zc15_small.value_at(0, k)) - target) < 1e-10

    def test_fill_order_compatibility(self):
        a = generate("zc", 1.5, 24)
        b = generate("zc", 1.5, 24, fill_order="rows")
        worst = max(abs(a.value_at(n, m) - b.value_at(n, m))
                    for n in range(25) for m in range(25))
        assert worst < 1e-10

    def test_exponent_range_enforced(self):
        with pytest.raises(ValueError):
            generate("zc", 2.5, 8)
        with pytest.raises(ValueError):
            generate("zc", 0.0, 8)
        with pytest.raises(ValueError):
            generate("zc", None, 8)

    def test_fixed_exponents(self):
        assert generate("z2", None, 4).c == 2.0
        assert generate("log", None, 4).c == 0.0
        with pytest.raises(ValueError):
            generate("z2", 1.5, 4)


class TestGenerateNaive:
    def test_identity_case(self):
        lat = generate_naive(1.0, 10)
        err = max(abs(lat.value_at(n, m) - (n + 1j * m))
                  for n in range(11) for m in range(11))
        assert err < 1e-13

    def test_axes_equidistant(self, naive15_12):
        for k in range(12):
            assert abs(abs(naive15_12.value_at(k + 1, 0)
                           - naive15_12.value_at(k, 0)) - 1.0) < 1e-13
            assert abs(abs(naive15_12.value_at(0, k + 1)
                           - naive15_12.value_at(0, k)) - 1.0) < 1e-13

    def test_still_cross_ratio_lattice(self, naive15_12):
        worst = max(quad_defect(naive15_12, n, m)
                    for n in range(12) for m in range(12))
        assert worst < 1e-9


class TestConstraintResidual:
    def test_identity_zero(self):
        lat = generate("zc", 1.0, 10)
        for n, m in ((1, 1), (3, 4), (8, 8)):
            assert constraint_residual(lat, LatticeIndex(n, m)) < 1e-12

    def test_generated_lattice_satisfies(self, zc15_small):
        worst = max(constraint_residual(zc15_small, LatticeIndex(n, m))
                    for n in range(1, 20) for m in range(1, 20))
        assert worst < 1e-9

    def test_naive_violates(self, naive15_12):
        worst = max(constraint_residual(naive15_12, LatticeIndex(n, m))
                    for n in range(1, 12) for m in range(1, 12))
        assert worst > 1e-3

    def test_boundary_index_rejected(self, zc15_small):
        with pytest.raises(ValueError):
            constraint_residual(zc15_small, LatticeIndex(0, 5))


class TestDualMap:
    def test_dual_of_z2_is_log(self, z2_42, log_42):
        dual = dual_map(z2_42, anchor=0.0, anchor_index=LatticeIndex(1, 0))
        assert dual.kind is LatticeKind.LOG
        assert not dual.is_finite(0, 0)
        worst = 0.0
        for n in range(43):
            for m in range(43):
                if dual.is_finite(n, m) and log_42.is_finite(n, m):
                    worst = max(worst, abs(dual.value_at(n, m)
                                           - log_42.value_at(n, m)))
        assert worst < 1e-9

    def test_dual_of_identity_has_unit_edges(self):
        lat = generate("zc", 1.0, 8)
        dual = dual_map(lat)
        for n in range(8):
            for m in range(8):
                e_n = dual.value_at(n + 1, m) - dual.value_at(n, m)
                e_m = dual.value_at(n, m + 1) - dual.value_at(n, m)
                assert abs(abs(e_n) - 1) < 1e-12
                assert abs(abs(e_m) - 1) < 1e-12

    def test_double_dual_restores_edges(self, zc15_small):
        dd = dual_map(dual_map(zc15_small))
        for n in range(0, 20, 3):
            for m in range(0, 20, 3):
                e = zc15_small.value_at(n + 1, m) - zc15_small.value_at(n, m)
                e_dd = dd.value_at(n + 1, m) - dd.value_at(n, m)
                assert abs(e - e_dd) < 1e-10 * max(1.0, abs(e))

    def test_dual_exponent(self, zc15_small):
        assert dual_map(zc15_small).c == 0.5

    def test_dual_satisfies_constraint_with_dual_exponent(self, zc15_small):
        dual = dual_map(zc15_small)
        worst = max(constraint_residual(dual, LatticeIndex(n, m))
                    for n in range(1, 20) for m in range(1, 20))
        assert worst < 1e-9

    def test_unreachable_anchor_raises(self, z2_42):
        # anchoring at the triple corner of z2: every incident edge is zero
        with pytest.raises(ZeroEdge):
            dual_map(z2_42, anchor=0.0, anchor_index=LatticeIndex(0, 0))


class TestConformalLattice:
    def test_shape_validated(self):
        with pytest.raises(ValueError):
            ConformalLattice(kind=LatticeKind.ZC, c=1.5, size=2, values=[[]])

    def test_index_bounds(self, zc15_small):
        with pytest.raises(IndexError):
            zc15_small.at(25, 0)
