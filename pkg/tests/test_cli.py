import json

import pytest

from hkdensity import Rat, SegrePair, SpecParseError, ToricPair, pw_equal, pw_from_json
from hkdensity.cli import main, parse_spec

from conftest import line_density_form


LINE2 = '{"vertices": [[0], [2]]}'
PLANE = '{"rays": [[1,0],[0,1],[-1,-1]], "coeffs": [1,1,1]}'
SQUARE = '{"vertices": [[-1,-1],[1,-1],[-1,1],[1,1]]}'
SIMPLEX = '{"vertices": [[0,0],[1,0],[0,1]]}'
CUBE = ('{"segre": [{"vertices": [[0],[1]]}, {"vertices": [[0],[1]]}, '
        '{"vertices": [[0],[1]]}]}')


def run(capsys, argv, stdin_text, monkeypatch):
    import io
    import sys
    monkeypatch.setattr(sys, "stdin", io.StringIO(stdin_text))
    status = main(argv)
    out = capsys.readouterr().out
    return status, out


# --- parse_spec ----------------------------------------------------------------

def test_parse_vertices_form():
    pair = parse_spec(LINE2)
    assert isinstance(pair, ToricPair)
    assert pair.d == 2 and pair.l == 2


def test_parse_fan_form():
    pair = parse_spec(PLANE)
    assert isinstance(pair, ToricPair)
    assert pair.l == 3


def test_parse_segre_form():
    pair = parse_spec(CUBE)
    assert isinstance(pair, SegrePair)
    assert pair.d == 4


def test_parse_rejects_malformed():
    with pytest.raises(SpecParseError):
        parse_spec("not json")
    with pytest.raises(SpecParseError):
        parse_spec('{"vertices": [[0]], "rays": [[1]]}')
    with pytest.raises(SpecParseError):
        parse_spec('{"rays": [[1,0]]}')
    with pytest.raises(SpecParseError):
        parse_spec('{"vertices": [[0, "x"]]}')
    with pytest.raises(SpecParseError):
        parse_spec('{"segre": [{"vertices": [[0],[1]]}]}')


# --- commands ---------------------------------------------------------------------

def test_density_json_round_trip(capsys, monkeypatch):
    status, out = run(capsys, ["density"], LINE2, monkeypatch)
    assert status == 0
    data = json.loads(out)
    assert data["breakpoints"] == ["0", "1", "3/2"]
    assert data["pieces"] == [["0", "2"], ["6", "-4"]]
    assert pw_equal(pw_from_json(data), line_density_form(2))


def test_density_csv_row_count(capsys, monkeypatch):
    status, out = run(capsys, ["density", "--format", "csv", "--samples", "10"],
                      LINE2, monkeypatch)
    assert status == 0
    lines = out.strip().splitlines()
    assert lines[0] == "lambda,value"
    assert len(lines) == 12  # header + samples + 1 rows
    assert lines[1] == "0,0"
    assert lines[-1] == "3/2,0"


def test_density_svg(capsys, monkeypatch):
    status, out = run(capsys, ["density", "--format", "svg", "--samples", "32"],
                      LINE2, monkeypatch)
    assert status == 0
    assert out.startswith("<svg") and "polyline" in out and "circle" in out


def test_phi_with_scaling(capsys, monkeypatch):
    status, out = run(capsys, ["phi", "--k", "2"], LINE2, monkeypatch)
    data = json.loads(out)
    assert data == {"breakpoints": ["0", "1/4"], "pieces": [["1", "-4"]]}


def test_ehk_and_power(capsys, monkeypatch):
    status, out = run(capsys, ["ehk"], LINE2, monkeypatch)
    assert json.loads(out) == {"e_hk": "3/2"}
    status, out = run(capsys, ["ehk", "--k", "2"], LINE2, monkeypatch)
    assert json.loads(out) == {"k": 2, "e_hk_power": "5"}


def test_limit_command(capsys, monkeypatch):
    status, out = run(capsys, ["limit"], PLANE, monkeypatch)
    assert json.loads(out) == {
        "e0": "9", "phi_integral": "1/3", "limit_A": "3/2"}


def test_tiling_command(capsys, monkeypatch):
    status, out = run(capsys, ["tiling"], SQUARE, monkeypatch)
    assert json.loads(out) == {"is_tiler": True, "B": "0"}
    status, out = run(capsys, ["tiling"], PLANE, monkeypatch)
    data = json.loads(out)
    assert data["is_tiler"] is False and float(data["B"]) > 1e-9


def test_oracle_command(capsys, monkeypatch):
    status, out = run(capsys, ["oracle", "--q", "2", "--lambda", "1"],
                      SIMPLEX, monkeypatch)
    assert json.loads(out) == {"q": 2, "m": 2, "count": 3, "f_value": "3/4"}


def test_convergence_csv(capsys, monkeypatch):
    status, out = run(capsys,
                      ["convergence", "--lambda", "5/4", "--q", "4,8",
                       "--format", "csv"],
                      LINE2, monkeypatch)
    lines = out.strip().splitlines()
    assert lines[0] == "q,m,count,f_value,exact_value,gap"
    assert len(lines) == 3


def test_report_command(capsys, monkeypatch):
    status, out = run(capsys, ["report"], PLANE, monkeypatch)
    data = json.loads(out)
    assert data["e0"] == "9" and data["h0"] == 10
    assert isinstance(data["e_hk"], str) and Rat(*map(int, data["e_hk"].split("/")))
    assert data["phi_integral"] == "1/3"
    assert data["is_tiler"] is False


def test_segre_command(capsys, monkeypatch):
    status, out = run(capsys, ["segre"], CUBE, monkeypatch)
    data = json.loads(out)
    assert data["hkd"] is None and data["e_hk"] is None
    assert data["phi"] == {"breakpoints": ["0", "1"],
                           "pieces": [["1", "0", "0", "-1"]]}
    assert data["is_tiler"] is True
    status, out = run(capsys, ["segre"], LINE2, monkeypatch)
    assert status == 1
    assert json.loads(out)["error"]["code"] == "parse_error"


# --- errors and outputs ---------------------------------------------------------------

def test_engine_error_exit_status(capsys, monkeypatch):
    status, out = run(capsys, ["density"],
                      '{"rays": [[1,0]], "coeffs": [1]}', monkeypatch)
    assert status == 1
    assert json.loads(out)["error"]["code"] == "unbounded"


def test_parse_error_exit_status(capsys, monkeypatch):
    status, out = run(capsys, ["ehk"], "garbage", monkeypatch)
    assert status == 1
    assert json.loads(out)["error"]["code"] == "parse_error"


def test_missing_oracle_flags(capsys, monkeypatch):
    status, out = run(capsys, ["oracle"], SIMPLEX, monkeypatch)
    assert status == 1
    assert json.loads(out)["error"]["code"] == "parse_error"


def test_output_directory(tmp_path, capsys, monkeypatch):
    status, out = run(capsys, ["density", "--output", str(tmp_path)],
                      LINE2, monkeypatch)
    assert status == 0
    written = tmp_path / "density.json"
    assert written.exists()
    assert json.loads(written.read_text())["breakpoints"] == ["0", "1", "3/2"]


def test_input_file(tmp_path, capsys, monkeypatch):
    spec = tmp_path / "pair.json"
    spec.write_text(LINE2)
    status = main(["ehk", "--input", str(spec)])
    out = capsys.readouterr().out
    assert status == 0 and json.loads(out) == {"e_hk": "3/2"}


def test_missing_input_file(capsys):
    status = main(["ehk", "--input", "/nonexistent/pair.json"])
    out = capsys.readouterr().out
    assert status == 1
    assert json.loads(out)["error"]["code"] == "parse_error"


def test_run_command_programmatic():
    from hkdensity.cli import run_command
    status, text, ext = run_command("ehk", LINE2)
    assert (status, ext) == (0, "json")
    assert json.loads(text) == {"e_hk": "3/2"}
    status, text, ext = run_command(
        "density", LINE2, ["--format", "csv", "--samples", "4"])
    assert ext == "csv" and len(text.strip().splitlines()) == 6
