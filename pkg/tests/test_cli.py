import json
import math
import pathlib

from qfithermo.cli import main

LOG2 = math.log(2.0)
REPO_ROOT = pathlib.Path(__file__).resolve().parent.parent


def write_config(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


def run_cli(args):
    return main(args)


def read_csv_rows(path):
    text = path.read_text(encoding="utf-8")
    blocks = []
    for block in text.split("\n\n"):
        lines = [ln for ln in block.split("\n") if ln]
        header = lines[0].split(",")
        rows = [dict(zip(header, ln.split(","))) for ln in lines[1:]]
        blocks.append((header, rows))
    return blocks


BALANCED_STATE = {"coefficients": [0.7071067811865476, 0.7071067811865476]}


def test_bounds_balanced_qubit(tmp_path):
    cfg = write_config(tmp_path, "b.json", {"state": BALANCED_STATE, "t": 1.0, "kbt": 1.0})
    out = tmp_path / "out.csv"
    assert run_cli(["bounds", "--config", cfg, "--output", str(out), "--verify"]) == 0
    header, rows = read_csv_rows(out)[0]
    assert header == ["fq", "entropy_avg_state", "entropy_final",
                      "entropy_floor", "heat_floor", "kbt"]
    row = rows[0]
    assert abs(float(row["entropy_avg_state"]) - LOG2) < 1e-10
    assert abs(float(row["heat_floor"]) - LOG2) < 1e-10


def test_bounds_ghz_family(tmp_path):
    cfg = write_config(tmp_path, "g.json", {
        "state": {"family": "ghz_like", "N": 8, "nu": 1e-6}, "t": 1.0, "kbt": 1.0,
    })
    out = tmp_path / "out.csv"
    assert run_cli(["bounds", "--config", cfg, "--output", str(out)]) == 0
    _, rows = read_csv_rows(out)[0]
    assert abs(float(rows[0]["fq"]) - 64.0) < 1e-8


def test_bounds_malformed_config(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json", encoding="utf-8")
    assert run_cli(["bounds", "--config", str(path)]) == 2


def test_bounds_unknown_key(tmp_path):
    cfg = write_config(tmp_path, "u.json", {"state": BALANCED_STATE, "tee": 1.0})
    assert run_cli(["bounds", "--config", cfg]) == 2


def test_bounds_missing_file(tmp_path):
    assert run_cli(["bounds", "--config", str(tmp_path / "nope.json")]) == 2


SMALL_RABI = {"nmax": 12, "m_lambda": 4, "tau": 8.0, "c0_list": [0.5, 0.707]}


def test_rabi_header_and_determinism(tmp_path):
    cfg = write_config(tmp_path, "r.json", SMALL_RABI)
    out1 = tmp_path / "r1.csv"
    out2 = tmp_path / "r2.csv"
    out3 = tmp_path / "r3.csv"
    assert run_cli(["rabi", "--config", cfg, "--output", str(out1), "--verify"]) == 0
    assert run_cli(["rabi", "--config", cfg, "--output", str(out2)]) == 0
    assert run_cli(["rabi", "--config", cfg, "--output", str(out3), "--workers", "4"]) == 0
    text = out1.read_text(encoding="utf-8")
    assert text.splitlines()[0] == ("c0,fq_over_t2,heat_avg,entropy_final_avg,"
                                    "entropy_of_avg,bound_floor,erasure_quality")
    assert out1.read_bytes() == out2.read_bytes() == out3.read_bytes()
    assert "\r" not in text and text.endswith("\n")


def test_rabi_rows_sorted_by_fq(tmp_path):
    cfg = write_config(tmp_path, "r.json", SMALL_RABI)
    out = tmp_path / "r.csv"
    run_cli(["rabi", "--config", cfg, "--output", str(out)])
    _, rows = read_csv_rows(out)[0]
    fq = [float(r["fq_over_t2"]) for r in rows]
    assert fq == sorted(fq)


def test_rabi_truncation_guard_exit_code(tmp_path):
    cfg = write_config(tmp_path, "t.json", {
        "nmax": 10, "temperature": 5.0, "tau": 3.0, "c0_list": [0.5],
    })
    assert run_cli(["rabi", "--config", cfg]) == 3


def test_rabi_requires_tau_and_c0_list(tmp_path):
    cfg = write_config(tmp_path, "m.json", {"nmax": 12, "c0_list": [0.5]})
    assert run_cli(["rabi", "--config", cfg]) == 2
    cfg = write_config(tmp_path, "m2.json", {"nmax": 12, "tau": 1.0})
    assert run_cli(["rabi", "--config", cfg]) == 2


DICKE_CFG = {"families": ["product", "ghz_like"], "N_list": [8, 16, 32, 64], "nu": 2.0}


def test_dicke_blocks(tmp_path):
    cfg = write_config(tmp_path, "d.json", DICKE_CFG)
    out = tmp_path / "d.csv"
    assert run_cli(["dicke", "--config", cfg, "--output", str(out), "--verify"]) == 0
    blocks = read_csv_rows(out)
    assert blocks[0][0] == ["family", "N", "entropy_nats", "weighted_fq_nats",
                            "fq_over_t2", "sql_ratio"]
    assert len(blocks[0][1]) == 8
    assert blocks[1][0] == ["family", "alpha", "beta", "rms_residual"]
    assert blocks[1][1][0]["family"] == "product"
    assert blocks[2][0] == ["family", "N_low", "N_high", "entropy_change"]
    assert blocks[2][1][0]["family"] == "ghz_like"


def test_dicke_twin_fock_odd_n_exit_2(tmp_path):
    cfg = write_config(tmp_path, "d.json", {"families": ["twin_fock"], "N_list": [7]})
    assert run_cli(["dicke", "--config", cfg]) == 2


def test_dicke_unknown_family_exit_2(tmp_path):
    cfg = write_config(tmp_path, "d.json", {"families": ["cat"], "N_list": [8]})
    assert run_cli(["dicke", "--config", cfg]) == 2


def test_dicke_bits_toggle(tmp_path):
    cfg = write_config(tmp_path, "d.json", {"families": ["product"], "N_list": [8]})
    nats = tmp_path / "n.csv"
    bits = tmp_path / "b.csv"
    run_cli(["dicke", "--config", cfg, "--output", str(nats)])
    run_cli(["dicke", "--config", cfg, "--output", str(bits), "--bits"])
    _, nat_rows = read_csv_rows(nats)[0]
    header, bit_rows = read_csv_rows(bits)[0]
    assert "entropy_bits" in header
    assert abs(float(bit_rows[0]["entropy_bits"]) -
               float(nat_rows[0]["entropy_nats"]) / LOG2) < 1e-9


def test_dicke_json_format(tmp_path):
    cfg = write_config(tmp_path, "d.json", DICKE_CFG)
    out = tmp_path / "d.json.out"
    assert run_cli(["dicke", "--config", cfg, "--output", str(out), "--format", "json"]) == 0
    payload = json.loads(out.read_text(encoding="utf-8"))
    assert set(payload) == {"rows", "fits", "saturation"}
    assert payload["rows"][0]["family"] == "product"
    assert payload["saturation"][0]["N_high"] == 64


def test_erasure_scan_output(tmp_path):
    cfg = write_config(tmp_path, "s.json", {
        "nmax": 12, "m_lambda": 4, "tau_min": 0.0, "tau_max": 2.0, "steps": 5,
    })
    out = tmp_path / "s.csv"
    assert run_cli(["erasure-scan", "--config", cfg, "--output", str(out), "--verify"]) == 0
    blocks = read_csv_rows(out)
    assert blocks[0][0] == ["tau", "quality"]
    assert len(blocks[0][1]) == 5
    assert blocks[1][0] == ["tau_star", "quality_star"]


def test_shipped_configs_parse(tmp_path):
    # the bounds and dicke configs in configs/ run end to end
    out = tmp_path / "o.csv"
    assert run_cli(["bounds", "--config", str(REPO_ROOT / "configs/bounds_qubit.json"),
                    "--output", str(out)]) == 0
    assert run_cli(["dicke", "--config", str(REPO_ROOT / "configs/dicke_families.json"),
                    "--output", str(out), "--verify"]) == 0


def test_shipped_erasure_config_full_run(tmp_path):
    # the five-point c0 grid of the erasure experiment passes its own audit
    out = tmp_path / "e.csv"
    assert run_cli(["rabi", "--config", str(REPO_ROOT / "configs/rabi_erasure.json"),
                    "--output", str(out), "--verify"]) == 0
    _, rows = read_csv_rows(out)[0]
    assert len(rows) == 5
    heats = [float(r["heat_avg"]) for r in rows]
    assert heats == sorted(heats)


def test_float_formatting_12_digits(tmp_path):
    cfg = write_config(tmp_path, "b.json", {"state": BALANCED_STATE})
    out = tmp_path / "b.csv"
    run_cli(["bounds", "--config", cfg, "--output", str(out)])
    _, rows = read_csv_rows(out)[0]
    assert rows[0]["entropy_avg_state"] == "0.69314718056"
