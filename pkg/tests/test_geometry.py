"""Circle incidence and the immersion / embeddedness predicates."""

import cmath

import pytest

from dcmap import (
    ConformalLattice,
    ExtendedComplex,
    LatticeKind,
    ToleranceConfig,
    circles,
    generate,
    incidence_check,
    is_embedded,
    is_immersed,
)


def lattice_from_values(values, kind=LatticeKind.ZC, c=1.5):
    wrapped = [[ExtendedComplex.from_complex(complex(v)) for v in row]
               for row in values]
    return ConformalLattice(kind=kind, c=c, size=len(values) - 1, values=wrapped)


def transformed(lat, rotation, scale):
    factor = scale * cmath.exp(1j * rotation)
    values = [
        [v if not v.is_finite else ExtendedComplex.from_complex(factor * v.value)
         for v in row]
        for row in lat.values
    ]
    return ConformalLattice(kind=lat.kind, c=lat.c, size=lat.size, values=values)


class TestCircles:
    def test_identity_unit_circles(self):
        pat = circles(generate("zc", 1.0, 6))
        assert len(pat.entries) == 25  # even vertices of a 7x7 grid
        for entry in pat.entries.values():
            assert abs(entry.radius - 1.0) < 1e-12

    def test_z2_border_radii(self, z2_42):
        pat = circles(z2_42)
        for N in range(1, 15):
            assert abs(pat.entries[(N, N)].radius - N) < 1e-10

    def test_log_line_circle(self, log_42):
        pat = circles(log_42)
        assert pat.entries[(0, 0)].is_line
        assert not pat.entries[(0, 0)].center.is_finite


class TestIncidence:
    def test_identity_exact(self):
        pat = circles(generate("zc", 1.0, 6))
        rep = incidence_check(pat)
        assert rep.ok
        assert rep.orthogonal_checked > 0
        assert rep.tangent_checked > 0

    @pytest.mark.parametrize("kind_c", [("zc", 0.5), ("zc", 1.5), ("z2", None), ("log", None)])
    def test_generated_patterns_pass(self, kind_c):
        kind, c = kind_c
        pat = circles(generate(kind, c, 20))
        rep = incidence_check(pat, ToleranceConfig(rel_tol=1e-8))
        assert rep.ok, rep.violations[:3]

    def test_perturbed_radius_flagged(self, zc15_small):
        pat = circles(zc15_small)
        label = (0, 3)
        pat.entries[label].radius *= 1.01
        rep = incidence_check(pat)
        assert not rep.ok
        assert all(label in (z1, z2) for _, z1, z2, _ in rep.violations)


class TestImmersionPredicates:
    def test_identity_embedded(self):
        lat = generate("zc", 1.0, 10)
        assert is_immersed(lat).ok
        assert is_embedded(lat).ok

    def test_zc_embedded(self, zc15_small):
        assert is_embedded(zc15_small).ok

    def test_naive_not_immersed(self, naive15_12):
        rep = is_immersed(naive15_12)
        assert not rep.ok
        assert rep.witness is not None
        i1, i2 = rep.witness
        assert 0 <= i1.n < 12 and 0 <= i1.m < 12
        assert not is_embedded(naive15_12).ok

    def test_folded_mesh_rejected(self):
        # second column folds back across the first: quads overlap
        values = [
            [0 + 0j, 0 + 1j, 0 + 2j],
            [1 + 0j, 1 + 1j, 1 + 2j],
            [0.25 + 0.1j, 0.25 + 1.1j, 0.25 + 2.1j],
        ]
        lat = lattice_from_values(values)
        assert not is_immersed(lat).ok
        assert not is_embedded(lat).ok

    def test_embedded_implies_immersed(self, naive15_12, zc15_small, z2_42, log_42):
        for lat in (naive15_12, zc15_small, z2_42, log_42):
            emb = is_embedded(lat).ok
            imm = is_immersed(lat).ok
            assert (not emb) or imm

    def test_seed_corner_exempt(self, z2_42, log_42):
        for lat in (z2_42, log_42):
            rep = is_embedded(lat)
            assert rep.ok
            assert (0, 0) in rep.excluded

    @pytest.mark.parametrize("rotation,scale", [(0.7, 3.0), (2.1, 0.25)])
    def test_predicates_invariant_under_similarity(self, naive15_12, rotation, scale):
        lat = generate("zc", 1.5, 10)
        assert is_embedded(transformed(lat, rotation, scale)).ok
        assert not is_immersed(transformed(naive15_12, rotation, scale)).ok

    def test_pairs_counted(self, zc15_small):
        rep = is_embedded(zc15_small)
        assert rep.pairs_checked > len(zc15_small.values) ** 2 // 4
