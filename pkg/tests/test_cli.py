import json
import subprocess
import sys

import pytest

from twophoton import states
from twophoton.cli import EXIT_DOMAIN, EXIT_IO, EXIT_OK, main


@pytest.fixture
def state_file(tmp_path):
    def make(p, name="state.json"):
        path = tmp_path / name
        path.write_text(states.dumps_state(p), encoding="utf-8")
        return str(path)

    return make


def test_validate_physical(state_file, capsys):
    assert main(["validate", state_file(states.TwoPhotonParams.zeros())]) == EXIT_OK
    out = capsys.readouterr().out
    assert "norm_budget" in out and out.strip().endswith("physical")


def test_validate_unphysical(state_file, capsys):
    path = state_file(states.FiveParamState(0, 0, 0, 0, 1.5).to_params())
    assert main(["validate", path]) == EXIT_DOMAIN
    out = capsys.readouterr().out
    assert "zeta33_range" in out and "FAIL" in out and "UNPHYSICAL" in out


def test_validate_missing_keys(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"xi1": [0, 0, 0]}), encoding="utf-8")
    assert main(["validate", str(path)]) == EXIT_IO
    assert "error" in capsys.readouterr().err


def test_validate_missing_file(tmp_path):
    assert main(["validate", str(tmp_path / "none.json")]) == EXIT_IO


def test_entropy_output(state_file, capsys):
    assert main(["entropy", state_file(states.model_c(0.0, 0.8).to_params()), "--closed-form"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "S(1,2)   = 0.325083 nats" in out
    assert "S(2|1)   = -0.368064 nats" in out
    assert "classification: exotic" in out
    assert "S closed" in out


def test_entropy_bits(state_file, capsys):
    assert main(["entropy", state_file(states.TwoPhotonParams.zeros()), "--bits"]) == EXIT_OK
    assert "S(1,2)   = 2.000000 bits" in capsys.readouterr().out


def test_entropy_unphysical(state_file):
    assert main(["entropy", state_file(states.FiveParamState(0, 0, 0, 0, 1.5).to_params())]) == EXIT_DOMAIN


def test_measure_type_i(state_file, capsys):
    path = state_file(states.TwoPhotonParams.zeros())
    assert main(["measure", path, "--type", "I", "--n", "0,0,1", "--n2", "1,0,0"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "w = 0.250000"


def test_measure_type_ii(state_file, capsys):
    path = state_file(states.TwoPhotonParams.zeros())
    filt = state_file(states.model_a(1.0, 1.0).to_params(), "filter.json")
    assert main(["measure", path, "--type", "II", "--filter", filt]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "w = 0.250000"


def test_measure_type_ii_mixed_filter(state_file):
    path = state_file(states.TwoPhotonParams.zeros())
    assert main(["measure", path, "--type", "II", "--filter", path]) == EXIT_DOMAIN


def test_measure_type_iii(state_file, capsys):
    path = state_file(states.model_a(1.0, 1.0).to_params())
    assert main(["measure", path, "--type", "III", "--n", "1,0,0"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "probability = 0.500000" in out
    assert "verdict: cooling" in out


def test_measure_type_iii_degenerate(state_file, capsys):
    path = state_file(states.TwoPhotonParams.product([0, 0, 1], [0, 0, 0]))
    assert main(["measure", path, "--type", "III", "--n", "0,0,-1"]) == EXIT_DOMAIN
    assert "degenerate" in capsys.readouterr().err


def test_measure_non_unit_direction(state_file):
    path = state_file(states.TwoPhotonParams.zeros())
    assert main(["measure", path, "--type", "III", "--n", "0,0,0.5"]) == EXIT_DOMAIN


def test_measure_missing_direction_is_usage_error(state_file):
    with pytest.raises(SystemExit) as exc:
        main(["measure", state_file(states.TwoPhotonParams.zeros()), "--type", "III"])
    assert exc.value.code == 2


def test_sweep_custom(tmp_path, capsys):
    out = tmp_path / "s.csv"
    code = main(
        ["sweep", "--model", "C", "--sweep", "zeta=0:1:0.25", "--fix", "xi=0,0.4", "--n", "0.8,0,0.6",
         "--reference", "--out", str(out)]
    )
    assert code == EXIT_OK
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "zeta,xi=0,xi=0.4,S1(zeta),reason"
    assert len(lines) == 6


def test_sweep_figure_to_stdout(capsys):
    assert main(["sweep", "--figure", "3", "--points", "5"]) == EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert out[0].startswith("# figure 3")
    assert out[-1].startswith("1,")


def test_sweep_bad_figure_combination():
    with pytest.raises(SystemExit):
        main(["sweep", "--figure", "1", "--model", "A"])


def test_sweep_unknown_parameter():
    assert main(["sweep", "--model", "A", "--sweep", "xi=0:1:0.1"]) == EXIT_DOMAIN


def test_generate_roundtrip(tmp_path, capsys):
    out = tmp_path / "g.json"
    assert main(["generate", "--model", "C", "--fix", "xi=0", "--fix", "zeta=0.8", "--out", str(out)]) == EXIT_OK
    assert states.load_state(out) == states.model_c(0.0, 0.8).to_params()
    assert main(["entropy", str(out)]) == EXIT_OK
    assert "0.325083" in capsys.readouterr().out


def test_generate_out_of_domain():
    assert main(["generate", "--model", "A", "--fix", "zeta=0.9", "--fix", "zeta33=0.5"]) == EXIT_DOMAIN


def test_console_module_entry():
    out = subprocess.run(
        [sys.executable, "-m", "twophoton.cli", "sweep", "--figure", "1", "--points", "3"],
        capture_output=True,
        text=True,
        check=True,
    )
    header = [line for line in out.stdout.splitlines() if not line.startswith("#")][0]
    assert header == "zeta,zeta33=0,zeta33=0.66,zeta33=0.85,zeta33=1,reason"
