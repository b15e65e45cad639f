import json
from fractions import Fraction

import pytest

from couplingkit import ParseError, Pmf, Pmf2, coupling_maximal
from couplingkit.jsonio import (
    coupling4_to_obj,
    coupling_to_obj,
    decimal_renderer,
    detect_coupling_kind,
    dump_json,
    load_coupling4_blocks,
    load_coupling_matrix,
    load_distribution,
    load_pmf,
    parse_coupling4_blocks,
    parse_distribution,
    pmf2_to_obj,
    pmf_to_obj,
)
from couplingkit.multidim import Coupling4, coupling4_maximal

F = Fraction


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj), encoding="utf-8")
    return path


class TestDistributionFiles:
    def test_pmf_round_trip(self, tmp_path, ramp):
        path = write(tmp_path, "p.json", pmf_to_obj(ramp))
        loaded = load_distribution(path)
        assert isinstance(loaded, Pmf) and loaded.p == ramp.p

    def test_decimal_strings_parse_exactly(self, tmp_path):
        path = write(
            tmp_path,
            "p.json",
            {"alphabet": ["1", "2", "3", "4"], "p": ["0.1", "0.2", "0.3", "0.4"]},
        )
        loaded = load_pmf(path)
        assert loaded.p == (F(1, 10), F(1, 5), F(3, 10), F(2, 5))

    def test_pmf2_round_trip(self, tmp_path, band3):
        path = write(tmp_path, "q2.json", pmf2_to_obj(band3))
        loaded = load_distribution(path)
        assert isinstance(loaded, Pmf2) and loaded.p == band3.p

    def test_ambiguous_shape_rejected(self):
        with pytest.raises(ParseError, match="ambiguous"):
            parse_distribution({"alphabet": ["1"], "p": ["1"], "matrix": [["1"]]})

    def test_missing_shape_rejected(self):
        with pytest.raises(ParseError, match="neither"):
            parse_distribution({"alphabet": ["1"]})

    def test_bad_alphabet(self):
        with pytest.raises(ParseError, match="alphabet"):
            parse_distribution({"alphabet": "abc", "p": ["1"]})

    def test_bad_row_length(self):
        with pytest.raises(ParseError):
            parse_distribution({"alphabet": ["1", "2"], "p": ["1"]})

    def test_invalid_json_file(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(ParseError, match="not valid JSON"):
            load_distribution(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError, match="cannot read"):
            load_distribution(tmp_path / "absent.json")

    def test_load_pmf_rejects_matrix_file(self, tmp_path, band3):
        path = write(tmp_path, "q2.json", pmf2_to_obj(band3))
        with pytest.raises(ParseError, match="one-dim"):
            load_pmf(path)


class TestCouplingFiles:
    def test_matrix_round_trip(self, tmp_path, ramp, uniform4):
        c = coupling_maximal(ramp, uniform4)
        path = write(tmp_path, "c.json", coupling_to_obj(c))
        alphabet, rows = load_coupling_matrix(path)
        assert alphabet == ramp.alphabet and rows == c.j

    def test_decimal_render(self, ramp, uniform4):
        c = coupling_maximal(ramp, uniform4)
        obj = coupling_to_obj(c, decimal_renderer(5))
        assert obj["matrix"][2][0] == "0.03750"
        assert obj["matrix"][3][0] == "0.11250"

    def test_blocks_round_trip(self, tmp_path, diag3, band3):
        c4 = coupling4_maximal(diag3, band3)
        path = write(tmp_path, "c4.json", coupling4_to_obj(c4))
        alphabet, tensor = load_coupling4_blocks(path)
        rebuilt = Coupling4.from_tensor(tensor, diag3, band3)
        assert rebuilt.flatten().j == c4.flatten().j

    def test_blocks_layout_mirrors_tables(self, diag3, band3):
        obj = coupling4_to_obj(coupling4_maximal(diag3, band3))
        assert list(obj["blocks"].keys())[:3] == ["(1,1)", "(1,2)", "(1,3)"]
        assert obj["blocks"]["(1,1)"]["1"] == ["1/9", "4/45", "0"]
        assert obj["blocks"]["(1,1)"]["2"] == ["2/45", "0", "2/45"]

    def test_missing_block_rejected(self, diag3, band3):
        obj = coupling4_to_obj(coupling4_maximal(diag3, band3))
        del obj["blocks"]["(2,3)"]
        with pytest.raises(ParseError, match="missing block"):
            parse_coupling4_blocks(obj)

    def test_missing_column_rejected(self, diag3, band3):
        obj = coupling4_to_obj(coupling4_maximal(diag3, band3))
        del obj["blocks"]["(1,1)"]["2"]
        with pytest.raises(ParseError, match="missing column"):
            parse_coupling4_blocks(obj)

    def test_detect_kind(self, tmp_path, ramp, uniform4, diag3, band3):
        m = write(tmp_path, "m.json", coupling_to_obj(coupling_maximal(ramp, uniform4)))
        b = write(tmp_path, "b.json", coupling4_to_obj(coupling4_maximal(diag3, band3)))
        assert detect_coupling_kind(m) == "matrix"
        assert detect_coupling_kind(b) == "blocks"
        neither = write(tmp_path, "n.json", {"alphabet": ["1"]})
        with pytest.raises(ParseError):
            detect_coupling_kind(neither)


class TestDumpDeterminism:
    def test_dump_is_stable(self, ramp):
        obj = pmf_to_obj(ramp)
        assert dump_json(obj) == dump_json(pmf_to_obj(ramp))
        assert dump_json(obj).endswith("\n")
