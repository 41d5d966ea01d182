"""
Tests for zp_smith.io module.
"""

import json

import pytest


class TestParseComplex:
    """Tests for parse_complex and dump_complex."""

    def test_plain_complex(self):
        from zp_smith.complex import SimplicialComplex
        from zp_smith.io import parse_complex

        K = parse_complex({"vertices": ["a", "b"], "facets": [["a", "b"]]})
        assert isinstance(K, SimplicialComplex)
        assert K.count(1) == 1
        assert K.names == ("a", "b")

    def test_zp_complex(self):
        from zp_smith.complex import ZpComplex
        from zp_smith.io import parse_complex

        K = parse_complex(
            {"p": 2, "vertices": ["x", "y"], "action": [1, 0], "facets": [["x"], ["y"]]}
        )
        assert isinstance(K, ZpComplex)
        assert K.action == (1, 0)

    def test_integer_vertex_names(self):
        from zp_smith.io import parse_complex

        K = parse_complex({"vertices": [0, 1, 2], "facets": [[0, 2]]})
        assert K.simplices[1] == ((0, 2),)

    def test_missing_fields(self):
        from zp_smith.io import FileFormatError, parse_complex

        with pytest.raises(FileFormatError):
            parse_complex({"vertices": ["a"]})
        with pytest.raises(FileFormatError):
            parse_complex([["a"]])

    def test_unknown_vertex(self):
        from zp_smith.io import FileFormatError, parse_complex

        with pytest.raises(FileFormatError, match="unknown vertex"):
            parse_complex({"vertices": ["a"], "facets": [["a", "b"]]})

    def test_duplicate_vertex_names(self):
        from zp_smith.io import FileFormatError, parse_complex

        with pytest.raises(FileFormatError):
            parse_complex({"vertices": ["a", "a"], "facets": []})

    def test_action_without_p(self):
        from zp_smith.io import FileFormatError, parse_complex

        with pytest.raises(FileFormatError):
            parse_complex({"vertices": ["a", "b"], "action": [1, 0], "facets": [["a"]]})
        with pytest.raises(FileFormatError):
            parse_complex({"p": 2, "vertices": ["a", "b"], "action": ["b", "a"], "facets": []})

    def test_invalid_action(self):
        from zp_smith.complex import validate_zp
        from zp_smith.io import parse_complex

        data = {"p": 2, "vertices": ["a", "b", "c"], "action": [1, 0, 2], "facets": [["c"]]}
        with pytest.raises(ValueError, match="fixed"):
            parse_complex(data)
        K = parse_complex(data, validate=False)
        assert not validate_zp(K).success

    def test_dump_keeps_names_and_action(self):
        from zp_smith.corpus import example_a
        from zp_smith.io import dump_complex, parse_complex

        K = example_a(1)
        data = dump_complex(K)
        assert list(data) == ["p", "vertices", "action", "facets"]
        assert data["vertices"][0] == "c0"
        again = parse_complex(json.loads(json.dumps(data)))
        assert again.complex == K.complex
        assert again.action == K.action


class TestFiles:
    """Tests for reading and writing files."""

    def test_write_and_read_complex(self, tmp_path):
        from zp_smith.corpus import sphere
        from zp_smith.io import read_complex, write_complex

        path = tmp_path / "s1.json"
        text = write_complex(sphere(1), path)
        assert path.read_text(encoding="utf-8") == text
        assert read_complex(path).complex.count(1) == 4

    def test_invalid_json(self, tmp_path):
        from zp_smith.io import FileFormatError, read_complex

        path = tmp_path / "bad.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(FileFormatError, match="invalid JSON"):
            read_complex(path)

    def test_not_utf8(self, tmp_path):
        from zp_smith.io import FileFormatError, read_complex, read_matrix

        path = tmp_path / "bad.json"
        path.write_bytes(b"\xff\xfe{bad")
        with pytest.raises(FileFormatError, match="not UTF-8"):
            read_complex(path)
        with pytest.raises(FileFormatError, match="not UTF-8"):
            read_matrix(path)

    def test_missing_file(self, tmp_path):
        from zp_smith.io import read_complex

        with pytest.raises(OSError):
            read_complex(tmp_path / "missing.json")


class TestMatrices:
    """Tests for matrix files."""

    def test_parse(self):
        from zp_smith.io import parse_matrix

        assert parse_matrix("1 2\n\n3 4\n").to_dense() == [[1, 2], [3, 4]]
        assert parse_matrix("-12345678901234567890 0\n").get(0, 0) == -12345678901234567890

    def test_format(self):
        from zp_smith.io import format_matrix, parse_matrix

        assert format_matrix(parse_matrix("2 0\n0 -3\n")) == "2 0\n0 -3\n"

    def test_ragged_rows(self):
        from zp_smith.io import FileFormatError, parse_matrix

        with pytest.raises(FileFormatError):
            parse_matrix("1 2\n3\n")

    def test_non_integer(self):
        from zp_smith.io import FileFormatError, parse_matrix

        with pytest.raises(FileFormatError, match="Line 2"):
            parse_matrix("1 2\n3 x\n")


class TestSmithReport:
    """Tests for smith_report function."""

    def test_four_cycle(self, four_cycle):
        from zp_smith.io import smith_report
        from zp_smith.smith import SmithComputation

        report = smith_report(SmithComputation(four_cycle), metadata={"seconds": 0.1})
        assert report["p"] == 2
        assert report["index"] == 2
        assert report["index_mod_p"] == 2
        assert report["index_mod"] == {"exponent": 1, "index": 2}
        assert report["moduli"] == [2]
        assert [c["j"] for c in report["classes"]] == [0, 1, 2]
        assert report["classes"][1]["parity"] == "s"
        assert report["classes"][1]["certificate"]["modulus"] == 2
        assert report["classes"][2]["trivial_over_Z"] is True
        assert report["classes"][2]["certificate"] is None
        assert report["metadata"] == {"seconds": 0.1}

    def test_max_dim_and_exponent(self):
        from zp_smith.complex import to_free_chain_complex
        from zp_smith.corpus import example_a
        from zp_smith.io import smith_report
        from zp_smith.smith import SmithComputation

        computation = SmithComputation(to_free_chain_complex(example_a(1)))
        report = smith_report(computation, max_dim=1, exponent=2)
        assert len(report["classes"]) == 2
        assert report["index_mod"] == {"exponent": 2, "index": 3}
        assert report["moduli"] == [2, 4]

    def test_write_report(self, tmp_path, four_cycle):
        from zp_smith.io import smith_report, write_report
        from zp_smith.smith import SmithComputation

        path = tmp_path / "report.json"
        write_report(smith_report(SmithComputation(four_cycle)), path)
        assert json.loads(path.read_text(encoding="utf-8"))["index"] == 2
