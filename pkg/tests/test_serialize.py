"""Document formats: lattice JSON, radii CSV, angle CSV."""

import json
import math

import pytest

from dcmap import (
    dpii_solve,
    dual_radii,
    extract_radii,
    lattice_from_json,
    lattice_to_json,
    load_lattice,
    painleve_to_csv,
    radii_from_csv,
    radii_to_csv,
    save_lattice,
)


class TestLatticeJson:
    def test_round_trip_bit_exact(self, zc15_small):
        text = lattice_to_json(zc15_small)
        back = lattice_from_json(text)
        assert back.kind == zc15_small.kind
        assert back.c == zc15_small.c
        assert back.size == zc15_small.size
        for n in range(back.size + 1):
            for m in range(back.size + 1):
                a, b = back.at(n, m), zc15_small.at(n, m)
                assert a.re == b.re and a.im == b.im

    def test_infinite_vertex_round_trip(self, log_42):
        back = lattice_from_json(lattice_to_json(log_42))
        assert not back.is_finite(0, 0)
        assert back.at(1, 1).im == log_42.at(1, 1).im
        doc = json.loads(lattice_to_json(log_42))
        assert doc["values"][0][0] == "inf"

    def test_double_round_trip_stable(self, z2_42):
        once = lattice_to_json(z2_42)
        twice = lattice_to_json(lattice_from_json(once))
        assert once == twice

    def test_file_round_trip(self, tmp_path, zc15_small):
        path = tmp_path / "lat.json"
        save_lattice(zc15_small, path)
        back = load_lattice(path)
        assert lattice_to_json(back) == lattice_to_json(zc15_small)

    @pytest.mark.parametrize("mutate", [
        lambda d: d.pop("kind"),
        lambda d: d.update(kind="cubic"),
        lambda d: d.update(size=99),
        lambda d: d["values"][0].append([0, 0]),
        lambda d: d["values"][1].__setitem__(1, "not a number"),
    ])
    def test_malformed_rejected(self, zc15_small, mutate):
        doc = json.loads(lattice_to_json(zc15_small))
        mutate(doc)
        with pytest.raises(ValueError):
            lattice_from_json(json.dumps(doc))


class TestRadiiCsv:
    def test_round_trip(self, zc15_small):
        fld = extract_radii(zc15_small)
        back = radii_from_csv(radii_to_csv(fld), c=fld.c)
        assert back.values == fld.values

    def test_line_marker(self, log_42):
        fld = extract_radii(log_42)
        text = radii_to_csv(fld)
        assert "0,0,inf" in text.splitlines()
        back = radii_from_csv(text, c=0.0)
        assert math.isinf(back.values[(0, 0)])

    def test_header_enforced(self):
        with pytest.raises(ValueError):
            radii_from_csv("A,B,C\n1,2,3\n", c=1.0)

    def test_dual_round_trip(self, z2_42):
        fld = extract_radii(z2_42)
        dual = dual_radii(fld)
        back = radii_from_csv(radii_to_csv(dual), c=dual.c)
        assert back.values == dual.values


class TestAngleCsv:
    def test_schema(self):
        sol = dpii_solve(1.5, 12)
        lines = painleve_to_csv(sol).splitlines()
        assert lines[0] == "n,alpha,residual"
        assert len(lines) == 14  # header + alphas 0..12
        first = lines[1].split(",")
        assert first[0] == "0" and first[2] == ""
        mid = lines[6].split(",")
        assert float(mid[2]) < 1e-9
