"""Experiment runner and CLI: grid parsing, target catalog, report
serialization, subcommand wiring, and exit codes."""

import json
import math

import numpy as np
import pytest

from gruenwald import (
    ExperimentConfig,
    Order,
    TruncationPolicy,
    UsageError,
    cli_converge,
    cli_eval,
    cli_kernel_check,
    cli_probe,
    cli_zeros,
    make_grid,
    make_target,
    run_converge,
    target_callable,
)
from gruenwald.cli import main
from gruenwald.harness import TableReport, parse_ladder, read_samples_csv
from gruenwald.reports import ConvergenceReport, ReportRow


def test_make_grid_fractional_step_is_exact():
    grid = make_grid("-5:5:1/97")
    expected = -5.0 + np.arange(971) / 97.0
    assert grid.size == 971
    assert np.array_equal(grid, expected)
    assert grid[-1] == 5.0


def test_make_grid_plain_step():
    grid = make_grid("0:1:0.25")
    assert np.allclose(grid, [0.0, 0.25, 0.5, 0.75, 1.0])


@pytest.mark.parametrize(
    "spec", ["1:2", "a:b:c", "0:1:0", "0:1:-0.5", "2:1:0.1", "0:1:1/0"]
)
def test_make_grid_rejects_malformed_specs(spec):
    with pytest.raises(UsageError):
        make_grid(spec)


def test_parse_ladder():
    assert parse_ladder("4,8,16") == (4.0, 8.0, 16.0)
    with pytest.raises(UsageError):
        parse_ladder("8,4")
    with pytest.raises(UsageError):
        parse_ladder("0,4")
    with pytest.raises(UsageError):
        parse_ladder("4,apple")


def test_make_target_regime_metadata():
    even = make_target("gaussian", Order(0.7))
    assert even.fw_vanishes_at_origin and even.origin_limit == 0.0
    odd = make_target("gaussian", Order(-0.75))
    assert not odd.fw_bounded
    classical = make_target("gaussian", Order(-0.5))
    assert classical.origin_limit == 1.0
    recip = make_target("recip-weight", Order(0.7))
    assert recip.origin_limit == 1.0
    assert recip.fw_bounded and recip.fw_uniformly_continuous
    x2 = make_target("gaussian-times-x2", Order(-0.75))
    assert x2.fw_vanishes_at_origin


def test_make_target_rejects_unusable_ids():
    with pytest.raises(UsageError):
        make_target("unknown-target", Order(0.0))
    with pytest.raises(UsageError):
        make_target("custom-samples", Order(0.0))
    with pytest.raises(UsageError):
        make_target("recip-weight", None)
    with pytest.raises(UsageError):
        target_callable("recip-weight")


def test_config_validation():
    with pytest.raises(Exception):
        ExperimentConfig(
            experiment="theorem1",
            nu=0.0,
            tau_ladder=(8.0, 4.0),
            grid_min=-1.0,
            grid_max=1.0,
            grid_step=0.5,
        )
    with pytest.raises(Exception):
        ExperimentConfig(
            experiment="nope",
            nu=0.0,
            tau_ladder=(4.0,),
            grid_min=-1.0,
            grid_max=1.0,
            grid_step=0.5,
        )


def test_run_converge_theorem1_matches_direct_scan():
    config = ExperimentConfig(
        experiment="theorem1",
        nu=0.0,
        tau_ladder=(4.0, 8.0),
        grid_min=-5.0,
        grid_max=5.0,
        grid_step=1.0 / 97.0,
    )
    report = run_converge(config, make_grid("-5:5:1/97"))
    assert report.rows[0].sup_error == pytest.approx(0.10780330600615043, rel=1e-9)
    assert report.rows[1].sup_error == pytest.approx(0.075511399183036398, rel=1e-9)
    assert report.verdicts() == {"rule": "decreasing", "pass": True}


def test_run_converge_requires_nu_for_theorem1():
    config = ExperimentConfig(
        experiment="theorem1",
        nu=None,
        tau_ladder=(4.0,),
        grid_min=-1.0,
        grid_max=1.0,
        grid_step=0.5,
    )
    with pytest.raises(UsageError):
        run_converge(config)


def test_report_note_fails_verdict():
    report = ConvergenceReport(
        experiment="theorem2-sinh",
        nu=None,
        target="poisson-recip",
        grid_min=-1.0,
        grid_max=1.0,
        grid_step=0.5,
        tail_tolerance=1e-3,
        rows=(),
        family_id="sinh",
        note="hypothesis check failed: phase derivative strayed",
    )
    assert report.verdicts()["pass"] is False


def test_report_csv_and_json_round_trip(tmp_path):
    rows = (
        ReportRow(tau=4.0, sup_error=0.1, argmax=-1.0, nodes_used=500, tail_estimate=1e-4),
        ReportRow(tau=8.0, sup_error=0.05, argmax=0.5, nodes_used=500, tail_estimate=5e-5),
    )
    report = ConvergenceReport(
        experiment="theorem1",
        nu=0.0,
        target="gaussian",
        grid_min=-5.0,
        grid_max=5.0,
        grid_step=0.1,
        tail_tolerance=1e-3,
        rows=rows,
    )
    csv_text = report.to_csv()
    header = csv_text.splitlines()[0]
    assert header == "nu,tau,grid_min,grid_max,grid_step,sup_error,argmax,tail_tolerance,nodes_used"
    payload = json.loads(report.to_json())
    assert payload["schema"] == 1
    assert len(payload["rows"]) == 2
    assert payload["verdicts"]["pass"] is True


def test_table_report_serialization():
    report = TableReport(
        experiment="demo",
        meta={"tau": 2.0},
        columns=("a", "b"),
        rows=((1.0, True), (2.0, False)),
        passed=False,
    )
    assert report.to_csv().splitlines()[1] == "1,true"
    payload = json.loads(report.to_json())
    assert payload["schema"] == 1 and payload["pass"] is False
    with pytest.raises(UsageError):
        report.serialize("yaml")


def test_cli_zeros_text_and_file(tmp_path):
    path = tmp_path / "zeros.csv"
    table, text = cli_zeros(0.0, "A", 3, str(path), "csv")
    assert path.read_text() == text
    assert text.splitlines()[1].startswith("1,2.4048255576957")
    _, js = cli_zeros(0.0, "A", 2, None, "json")
    payload = json.loads(js)
    assert payload["schema"] == 1 and len(payload["zeros"]) == 2
    with pytest.raises(UsageError):
        cli_zeros(0.0, "A", 0)


def test_cli_kernel_check_small_window_fails():
    report, text, code = cli_kernel_check(4.0, radius=500.0)
    assert code == 1
    assert not report.passed
    assert "identity_resid" in text.splitlines()[0]


def test_cli_probe_dispatch_and_validation():
    with pytest.raises(UsageError):
        cli_probe("unknown-probe")
    with pytest.raises(UsageError):
        cli_probe("wrong-operator")
    report, _, code = cli_probe("dilation-failure", tau_ladder=(2.0, 4.0))
    assert code == 0 and report.passed
    values = [row[1] for row in report.rows]
    assert values[1] > values[0]


def test_cli_eval_custom_samples_match_catalog(tmp_path):
    policy = TruncationPolicy(radius=20.0, tail_tolerance=1.0, min_nodes=8)
    catalog_value, _, _ = cli_eval(0.0, 1.0, 0.9, target="gaussian", policy=policy)
    from gruenwald import interpolation_kernel

    kernel = interpolation_kernel(Order(0.0), 1.0, 0.9, "G", policy)
    lines = ["node,value"]
    for t in kernel.nodes:
        lines.append("%.17g,%.17g" % (t, math.exp(-float(t) * float(t))))
    path = tmp_path / "samples.csv"
    path.write_text("\n".join(lines) + "\n")
    custom_value, _, code = cli_eval(
        0.0, 1.0, 0.9, samples_path=str(path), policy=policy
    )
    assert code == 0
    assert custom_value == catalog_value


def test_read_samples_csv_validation(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("node,value\n1.0\n")
    with pytest.raises(UsageError):
        read_samples_csv(str(path))
    empty = tmp_path / "empty.csv"
    empty.write_text("node,value\n")
    with pytest.raises(UsageError):
        read_samples_csv(str(empty))


def test_main_exit_codes(tmp_path, capsys):
    assert main(["zeros", "--nu", "0", "--count", "2"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("index,zero")

    assert main(["zeros", "--nu", "-2", "--count", "2"]) == 2
    assert "order must exceed -1" in capsys.readouterr().err

    assert main(["converge", "--experiment", "theorem2-sinh", "--target", "recip-weight"]) == 2
    capsys.readouterr()

    assert main(["probe", "wrong-operator", "--nu", "0", "--tau", "5"]) == 1
    out = capsys.readouterr().out
    assert "verdict: fail" in out

    assert main(["probe", "wrong-operator", "--nu", "-0.75", "--tau", "5"]) == 0
    out = capsys.readouterr().out
    assert "verdict: pass" in out

    assert main(["eval", "--nu", "0", "--tau", "4", "--x", "1.0"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("which,nu,tau,x,value")

    assert main(["no-such-command"]) == 2


def test_main_converge_writes_file_and_prints_verdict(tmp_path, capsys):
    out_path = tmp_path / "report.csv"
    code = main(
        [
            "converge",
            "--nu",
            "0",
            "--tau-ladder",
            "4,8",
            "--grid",
            "-5:5:1/97",
            "--out",
            str(out_path),
        ]
    )
    assert code == 0
    printed = capsys.readouterr().out
    assert "wrote %s" % out_path in printed
    assert "verdict[decreasing]: pass" in printed
    lines = out_path.read_text().splitlines()
    assert lines[0].startswith("nu,tau,grid_min")
    assert len(lines) == 3
