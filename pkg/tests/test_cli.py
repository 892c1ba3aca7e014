import json

import pytest

from qespoly.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestFamilyCommand:
    def test_m3_table_pretty(self, capsys):
        code, out, _ = run(capsys, "family", "--chain", "P", "--m", "3",
                           "--s", "0", "--order", "4", "--format", "pretty")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[1] == "1"
        assert lines[2] == "E + (2ζ)"
        assert lines[3] == "E^2 + (12ζ+4)E + (20ζ^2+24ζ)"

    def test_order_zero_prints_one(self, capsys):
        code, out, _ = run(capsys, "family", "--order", "0")
        assert code == 0
        assert out.strip().splitlines()[-1] == "1"

    def test_numeric_zeta(self, capsys):
        code, out, _ = run(capsys, "family", "--m", "3", "--s", "0",
                           "--order", "2", "--zeta", "1", "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["family"]["members"][2] == [44.0, 16.0, 1.0]

    def test_json_has_manifest(self, capsys):
        code, out, _ = run(capsys, "family", "--order", "1", "--format", "json")
        doc = json.loads(out)
        assert doc["manifest"]["command"] == "family"
        assert doc["manifest"]["version"]


class TestSpectrumCommand:
    def test_m1_single_level(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--m", "1", "--zeta", "1",
                           "--format", "pretty")
        assert code == 0
        assert "E=2.0000000000" in out

    def test_missing_zeta_is_usage_error(self, capsys):
        code, _, err = run(capsys, "spectrum", "--m", "1")
        assert code == 2
        assert "zeta" in err

    def test_non_integer_m_is_domain_error(self, capsys):
        code, _, err = run(capsys, "spectrum", "--m", "7/2", "--zeta", "1")
        assert code == 1
        assert "integer" in err

    def test_csv_format(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--m", "3", "--zeta", "1",
                           "--format", "csv")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0].startswith("# manifest:")
        assert lines[1] == "E,script_E,nodes,chain"
        assert len(lines) == 5


class TestOtherCommands:
    def test_weights_json(self, capsys):
        code, out, _ = run(capsys, "weights", "--m", "3", "--zeta", "1",
                           "--chain", "P", "--format", "json")
        assert code == 0
        doc = json.loads(out)
        ws = [row["w"] for row in doc["weights"]]
        assert ws[0] == pytest.approx(-0.1708203932, abs=1e-9)

    def test_norms_symbolic(self, capsys):
        code, out, _ = run(capsys, "norms", "--chain", "P", "--m", "3",
                           "--s", "0", "--order", "3", "--format", "pretty")
        assert code == 0
        assert "gamma_1 = -16ζ" in out
        assert "recursion matches closed form: True" in out

    def test_moments_pretty(self, capsys):
        code, out, _ = run(capsys, "moments", "--m", "3", "--zeta", "1",
                           "--chain", "P", "--order", "2", "--format", "pretty")
        assert code == 0
        assert "mu_1 = 14" in out and "mu_2 = 180" in out

    def test_duality_odd(self, capsys):
        code, out, _ = run(capsys, "duality", "--m", "3", "--zeta", "1",
                           "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["levels"][0]["E"] == pytest.approx(-12.4721359550, abs=1e-9)

    def test_duality_even_rejection(self, capsys):
        code, out, _ = run(capsys, "duality", "--m", "2", "--zeta", "1",
                           "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["rejected"] is True
        assert doc["characters"] == [-1, -1]

    def test_wavefunction_json(self, capsys):
        code, out, _ = run(capsys, "wavefunction", "--m", "3", "--zeta", "1",
                           "--level", "1", "--grid-n", "801", "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["chain"] == "Q" and doc["nodes"] == 1

    def test_oracle_harmonic(self, capsys):
        code, out, _ = run(capsys, "oracle", "--family", "harmonic",
                           "--domain-l", "10", "--grid-n", "2000",
                           "--count", "2", "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["eigenvalues"][0] == pytest.approx(1.0, abs=1e-3)


class TestCliContract:
    def test_unknown_flag_usage_error(self, capsys):
        code, _, _ = run(capsys, "spectrum", "--m", "1", "--zeta", "1",
                         "--no-such-flag")
        assert code == 2

    def test_unknown_command_usage_error(self, capsys):
        code, _, _ = run(capsys, "frobnicate")
        assert code == 2

    def test_deterministic_output(self, capsys):
        args = ("spectrum", "--m", "4", "--zeta", "1", "--format", "json")
        _, first, _ = run(capsys, *args)
        _, second, _ = run(capsys, *args)
        assert first == second

    def test_out_flag_writes_file(self, capsys, tmp_path):
        target = tmp_path / "spectrum.json"
        code, out, _ = run(capsys, "spectrum", "--m", "3", "--zeta", "1",
                           "--format", "json", "--out", str(target))
        assert code == 0
        assert out == ""
        doc = json.loads(target.read_text())
        assert doc["m"] == 3

    def test_verify_all_m3(self, capsys):
        code, out, _ = run(capsys, "verify-all", "--m", "3", "--zeta", "1",
                           "--seed", "7", "--format", "pretty")
        assert code == 0
        body = [line for line in out.splitlines() if not line.startswith("#")]
        assert all(line.startswith("PASS") for line in body)

    def test_verify_all_even_m(self, capsys):
        code, out, _ = run(capsys, "verify-all", "--m", "2", "--zeta", "1",
                           "--format", "pretty")
        assert code == 0
