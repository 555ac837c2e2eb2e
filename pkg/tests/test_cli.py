import argparse
import csv
import json
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from zerofree.cli import CSV_HEADER, main, parse_complex, run, validate_report


def call(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if code == 0 else None), err


def test_parse_complex_forms():
    assert parse_complex("0.01+50i") == complex(0.01, 50)
    assert parse_complex("1-2i") == complex(1, -2)
    assert parse_complex("0.5") == 0.5
    with pytest.raises(argparse.ArgumentTypeError):
        parse_complex("one+2i")


def test_zeta_disc_example(capsys):
    code, rep, _ = call(capsys, "zeta-disc", "--lambda", "0.01+50i", "--r", "0.49", "--sigma1", "0.4")
    assert code == 0
    res = rep["result"]
    assert abs(res["radius"] / 3.75e-6 - 1) < 0.03
    assert abs(complex(res["center_re"], res["center_im"]) - (0.5 + 50j)) < 1e-3
    validate_report(rep)


def test_zeta_disc_on_real_axis(capsys):
    code, rep, _ = call(capsys, "zeta-disc", "--lambda", "1+0i", "--r", "0.5", "--sigma1", "0")
    assert code == 0 and rep["result"]["radius"] > 0


@pytest.mark.parametrize(
    "argv",
    [
        ["zeta-disc", "--lambda", "0.01+50i", "--r", "1.0", "--sigma1", "0.4"],
        ["zeta-disc", "--lambda=-0.2+50i", "--r", "0.49", "--sigma1", "0.4"],
        ["psi-norm", "--series", "zeta", "--sigma1", "0.4", "--r", "0.3"],
        ["admissible", "--m", "1", "--alphas", "0.5"],
        ["distance", "--series", "dirichlet", "--char", "q6", "--r", "0.5", "--lambda", "0.5"],
    ],
)
def test_domain_errors_exit_2(capsys, argv):
    code, _, err = call(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_argparse_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["zeta-disc", "--r", "0.5"])
    assert exc.value.code == 2


def test_integrability_message_names_the_rule(capsys):
    code, _, err = call(capsys, "psi-norm", "--series", "zeta", "--sigma1", "0.4", "--r", "0.3")
    assert code == 2 and "r > max(0, sigma1" in err


def test_trivial_character_file_rejected(tmp_path, capsys):
    path = tmp_path / "chi.json"
    path.write_text(json.dumps({"q": 4, "values": [0, 1, 0, 1]}))
    code, _, err = call(
        capsys, "distance", "--series", "dirichlet", "--char-file", str(path), "--r", "0.5",
        "--lambda", "0.5", "--alphas", "1",
    )
    assert code == 2 and "trivial" in err


def test_psi_norm_dirichlet(capsys):
    code, rep, _ = call(capsys, "psi-norm", "--series", "dirichlet", "--char", "q3", "--r", "0.5")
    assert code == 0 and abs(rep["result"]["norm_sq"] - 0.6046) < 1e-4
    validate_report(rep)


def test_admissible_example(capsys):
    code, rep, _ = call(capsys, "admissible", "--m", "1", "--alphas", "0.5,1")
    c = [complex(*z) for z in rep["result"]["coeffs"]]
    assert abs(c[0] + 2.8854) < 1e-4 and abs(c[1] - 1.4427) < 1e-4


def test_distance_dirichlet_example(capsys):
    code, rep, _ = call(
        capsys, "distance", "--series", "dirichlet", "--char", "q3", "--r", "0.5", "--lambda", "0.5",
        "--alphas", "1", "--siegel-C", "0.1",
    )
    res = rep["result"]
    assert code == 0 and abs(res["d_sq"] - 0.3954) < 1e-3
    assert abs(res["real_interval"] - 0.6112) < 2e-4
    assert set(res["siegel"]) == {"C", "holds", "slack"}
    validate_report(rep)


def test_distance_zeta_empty(capsys):
    code, rep, _ = call(capsys, "distance", "--series", "zeta", "--r", "0.5", "--lambda", "0.8+3i")
    assert code == 0 and rep["result"]["d_sq"] == pytest.approx(1 / 1.6)
    assert rep["result"]["real_interval"] is None


def test_scan_outputs_and_determinism(tmp_path, capsys):
    a, b, svg = tmp_path / "a.csv", tmp_path / "b.csv", tmp_path / "plot.svg"
    base = ["scan", "--t-min", "49", "--t-max", "53", "--step", "0.01", "--re-lambda", "0.01",
            "--r", "0.49", "--sigma1", "0.4"]
    code, rep, _ = call(capsys, *base, "--out", str(a), "--svg", str(svg))
    assert code == 0
    call(capsys, *base, "--out", str(b))
    assert a.read_bytes() == b.read_bytes()
    rows = list(csv.reader(a.open()))
    assert ",".join(rows[0]) == CSV_HEADER == "t,re_center,im_center,radius,R_pseudo"
    assert len(rows) == 402
    mins = rep["result"]["radius_minima"]
    assert any(abs(m - 49.7738) < 0.05 for m in mins) and any(abs(m - 52.9703) < 0.05 for m in mins)
    root = ET.parse(svg).getroot()
    assert root.tag.endswith("svg")


def test_scan_single_row_and_bad_step(tmp_path, capsys):
    out = tmp_path / "one.csv"
    code, _, _ = call(capsys, "scan", "--t-min", "50", "--t-max", "50", "--step", "0.1", "--re-lambda",
                      "0.01", "--r", "0.49", "--sigma1", "0.4", "--out", str(out))
    assert code == 0 and len(out.read_text().splitlines()) == 2
    code, _, _ = call(capsys, "scan", "--t-min", "50", "--t-max", "51", "--step", "0", "--re-lambda",
                      "0.01", "--r", "0.49", "--sigma1", "0.4", "--out", str(out))
    assert code == 2


def test_unwritable_path_exit_3(tmp_path, capsys):
    code, _, _ = call(capsys, "scan", "--t-min", "50", "--t-max", "50", "--step", "0.1", "--re-lambda",
                      "0.01", "--r", "0.49", "--sigma1", "0.4", "--out", str(tmp_path / "no" / "x.csv"))
    assert code == 3


def test_json_byte_identical_and_round_trip(capsys):
    argv = ["zeta-disc", "--lambda", "0.2+30i", "--r", "0.6", "--sigma1", "0.1"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first
    rep = json.loads(first)
    validate_report(rep)
    code, again, _ = run(argv)
    assert again == rep


def test_validate_report_catches_tampering(capsys):
    _, rep, _ = call(capsys, "zeta-disc", "--lambda", "0.2+30i", "--r", "0.6", "--sigma1", "0.1")
    rep["result"]["center_re"] = 0.0
    with pytest.raises(Exception):
        validate_report(rep)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "zerofree", "admissible", "--m", "0", "--alphas", "1"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["command"] == "admissible"
