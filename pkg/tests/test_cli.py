import json
import re

import jsonschema
import pytest

import motivicdt.partition_functions as pf
from motivicdt.cli import main
from motivicdt.motives import half_power

CHECK_SCHEMA = {
    "type": "object",
    "properties": {
        "check": {"type": "string"},
        "order": {"type": "integer"},
        "status": {"enum": ["pass", "fail"]},
        "seed": {"type": "integer"},
        "first_discrepancy": {
            "oneOf": [
                {"type": "null"},
                {
                    "type": "object",
                    "properties": {
                        "power": {"type": "integer"},
                        "lhs": {"type": "string"},
                        "rhs": {"type": "string"},
                    },
                    "required": ["power", "lhs", "rhs"],
                },
            ]
        },
        "elapsed_ms": {"type": "integer"},
    },
    "required": ["check", "order", "status", "seed", "first_discrepancy", "elapsed_ms"],
    "additionalProperties": False,
}


def test_check_pass_exit_code(capsys):
    assert main(["check", "local-quot-exp-form", "--order", "6"]) == 0
    out = capsys.readouterr().out
    assert "local-quot-exp-form: pass" in out


def test_check_unknown_name_lists_available(capsys):
    assert main(["check", "no-such-check"]) == 2
    err = capsys.readouterr().err
    assert "dtpt-conifold" in err
    assert "macmahon-vs-plane-partitions" in err


def test_series_table_motivic(capsys):
    assert main(["series", "z-hilb-A3", "--order", "3"]) == 0
    out = capsys.readouterr().out
    assert re.search(r"t\^1\s+L\^\(3/2\)", out)


def test_series_euler_realization(capsys):
    assert main(["series", "q-quot-L", "--order", "1", "--realization", "euler"]) == 0
    out = capsys.readouterr().out
    assert re.search(r"t\^1\s+-2\b", out)


def test_series_z0_order_zero(capsys):
    assert main(["series", "z0", "--order", "0"]) == 0
    assert re.search(r"t\^0\s+1\b", capsys.readouterr().out)


def test_series_json_export(capsys):
    assert main(["series", "z-hilb-A3", "--order", "2", "--json"]) == 0
    out = capsys.readouterr().out
    payload = json.loads(out.strip().splitlines()[-1])
    assert payload == ["1", "L^(3/2)", "L^3 + L^2 + L"]


def test_series_unknown_name(capsys):
    assert main(["series", "nope"]) == 2
    assert "available series" in capsys.readouterr().err


def test_order_env_override(capsys, monkeypatch):
    monkeypatch.setenv("MOTIVICDT_ORDER", "2")
    assert main(["series", "z0"]) == 0
    out = capsys.readouterr().out
    assert "t^2" in out and "t^3" not in out


def test_report_writes_documents_and_figures(tmp_path, capsys):
    out = tmp_path / "rep"
    assert main(["report", "--order", "4", "--out", str(out), "--format", "json"]) == 0
    results = json.loads((out / "report.json").read_text())
    assert results == sorted(results, key=lambda r: r["check"])
    for entry in results:
        jsonschema.validate(entry, CHECK_SCHEMA)
        assert entry["status"] == "pass"
    csv_text = (out / "results.csv").read_text()
    assert csv_text.splitlines()[0].startswith("check,order,status,seed")
    assert len(csv_text.splitlines()) == len(results) + 1
    for fig in ("check_times.png", "euler_growth.png"):
        assert (out / fig).stat().st_size > 0


def test_report_markdown_format(tmp_path, capsys):
    out = tmp_path / "rep"
    assert main(["report", "--order", "3", "--out", str(out), "--format", "md"]) == 0
    text = (out / "report.md").read_text()
    assert "| check | status |" in text
    assert "twisted-omega" in text


def _strip_timings_json(text):
    data = json.loads(text)
    for entry in data:
        entry["elapsed_ms"] = 0
    return json.dumps(data)


def test_report_is_deterministic_up_to_wall_time(tmp_path):
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert main(["report", "--order", "3", "--out", str(out1)]) == 0
    assert main(["report", "--order", "3", "--out", str(out2)]) == 0
    a = _strip_timings_json((out1 / "report.json").read_text())
    b = _strip_timings_json((out2 / "report.json").read_text())
    assert a == b


def test_report_mutation_hook(tmp_path, monkeypatch, capsys):
    # corrupting the punctual weights must surface in the relative-model check
    real = pf.omega_bbs

    def corrupted(n):
        return real(n) + half_power(2) if n == 1 else real(n)

    monkeypatch.setattr(pf, "omega_bbs", corrupted)
    assert main(["check", "thm-newB-pushforward", "--order", "4"]) == 1
    out = capsys.readouterr().out
    assert "fail" in out
    assert "t^1" in out


def test_quiver_preset_roundtrips_through_cli(tmp_path, capsys):
    assert main(["quiver", "preset", "conifold-framed"]) == 0
    text = capsys.readouterr().out
    path = tmp_path / "con.quiver"
    path.write_text(text)
    assert main(["quiver", "derive", "--file", str(path), "--arrow", "b1"]) == 0
    out = capsys.readouterr().out.strip()
    assert out == "- a1 b2 a2 + a2 b2 a1"


def test_quiver_preset_unknown(capsys):
    assert main(["quiver", "preset", "nope"]) == 2
    assert "available" in capsys.readouterr().err


def test_quiver_derive_absent_arrow_gives_zero(capsys):
    assert main(["quiver", "derive", "--preset", "conifold-framed", "--arrow", "iota"]) == 0
    assert capsys.readouterr().out.strip() == "0"


def test_quiver_derive_unknown_arrow(capsys):
    assert main(["quiver", "derive", "--preset", "bbs", "--arrow", "w"]) == 2
    assert "unknown arrow" in capsys.readouterr().err


def test_quiver_derive_parse_error(tmp_path, capsys):
    path = tmp_path / "bad.quiver"
    path.write_text("vertex 1\narrow a: 1 -> 2\n")
    assert main(["quiver", "derive", "--file", str(path), "--arrow", "a"]) == 2
    assert "parse error" in capsys.readouterr().err


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as info:
        main(["series"])  # missing name
    assert info.value.code == 2
