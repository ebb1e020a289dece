import math
import os
import stat
import sys
import textwrap
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from evosize.circuit import CircuitProblem, Topology, load_preset
from evosize.core import ContractError, EvaluationBudget
from evosize.spice_adapter import (
    SIMULATOR_ENV,
    MeasurementParseError,
    NetlistTemplate,
    SimulatorConfig,
    SimulatorExitError,
    SimulatorNotFoundError,
    SimulatorTimeoutError,
    TemplateError,
    emit_netlist,
    format_measurements,
    load_template,
    parse_measurements,
    read_decision_variables,
    resolve_executable,
    run_simulation,
    simulator_problem,
)

NM = 1e-9
TWO_STAGE_MABCO = [259 * NM, 797 * NM, 121 * NM, 1114 * NM, 183 * NM, 28.8e-6]
FOLDED_MABCO = [8686 * NM, 3417 * NM, 1118 * NM, 805 * NM, 367 * NM, 6156 * NM, 259.5e-6]


def make_stub(tmp_path, name, body):
    path = tmp_path / name
    path.write_text(f"#!{sys.executable}\n" + textwrap.dedent(body))
    path.chmod(path.stat().st_mode | stat.S_IXUSR)
    return str(path)


@pytest.fixture(scope="module")
def two_stage():
    return load_preset("two_stage_65n")


# netlist emission

def test_emit_is_deterministic(two_stage):
    t = load_template("two_stage_miller")
    a = emit_netlist(TWO_STAGE_MABCO, t, *two_stage)
    assert a == emit_netlist(list(TWO_STAGE_MABCO), t, *two_stage)
    assert "{{" not in a


def test_w6_token_appears_once(two_stage):
    text = emit_netlist(TWO_STAGE_MABCO, load_template("two_stage_miller"), *two_stage)
    assert text.count("w6=1114n") == 1
    assert text.count("1114n") == 1


def test_emit_includes_analyses(two_stage):
    text = emit_netlist(TWO_STAGE_MABCO, load_template("two_stage_miller"), *two_stage).lower()
    for directive in ("op", "ac dec 50 1 10g", "noise v(out)", "meas", "av_db", "pm", "sr", "power"):
        assert directive in text


def test_emit_rejects_wrong_dimension_and_topology(two_stage):
    t = load_template("two_stage_miller")
    with pytest.raises(ContractError):
        emit_netlist(TWO_STAGE_MABCO[:5], t, *two_stage)
    with pytest.raises(ContractError):
        emit_netlist(FOLDED_MABCO, load_template("folded_cascode"), *two_stage)
    with pytest.raises(ContractError):
        emit_netlist([0.0] + TWO_STAGE_MABCO[1:], t, *two_stage)


def test_template_missing_placeholder_is_named():
    text = load_template("two_stage_miller").text.replace("{{W7}}", "183n")
    with pytest.raises(TemplateError, match="W7"):
        NetlistTemplate("two_stage_miller", text)


def test_template_repeated_variable_rejected():
    text = load_template("two_stage_miller").text + "\n* {{W6}}\n"
    with pytest.raises(TemplateError, match="W6"):
        NetlistTemplate("two_stage_miller", text)


def test_unknown_placeholder_rejected(two_stage):
    t = load_template("two_stage_miller")
    odd = NetlistTemplate("two_stage_miller", t.text + "\n* {{MYSTERY}}\n")
    with pytest.raises(TemplateError, match="MYSTERY"):
        emit_netlist(TWO_STAGE_MABCO, odd, *two_stage)


@pytest.mark.parametrize("preset, x", [("two_stage_65n", TWO_STAGE_MABCO), ("folded_cascode_180n", FOLDED_MABCO)])
def test_table_vector_round_trips(preset, x):
    spec, tech = load_preset(preset)
    text = emit_netlist(x, load_template(spec.topology), spec, tech)
    assert read_decision_variables(text, spec.topology).tolist() == x


@given(st.lists(st.floats(1e-8, 1e-4, allow_subnormal=False), min_size=6, max_size=6))
def test_any_vector_round_trips(x):
    spec, tech = load_preset("two_stage_65n")
    text = emit_netlist(x, load_template(spec.topology), spec, tech)
    assert read_decision_variables(text, spec.topology).tolist() == x


# measurement parsing

def _report(preset="two_stage_65n", x=TWO_STAGE_MABCO):
    # a report without margins, as the parser produces
    return replace(CircuitProblem.from_preset(preset).report(x), margins=())


def test_parse_gain_fixture():
    raw = format_measurements(_report()).replace(
        next(l for l in format_measurements(_report()).splitlines() if l.startswith("av_db")), "av_db = 21.9")
    assert parse_measurements(raw, "two_stage_miller").gain_db == 21.9


def test_parse_missing_pm_names_it():
    raw = "\n".join(l for l in format_measurements(_report()).splitlines() if not l.startswith("pm "))
    with pytest.raises(MeasurementParseError, match="'pm'"):
        parse_measurements(raw, "two_stage_miller")


def test_parse_malformed_number_reports_line():
    raw = format_measurements(_report()).replace("ugb = ", "ugb = 1.2.3 #", 1)
    with pytest.raises(MeasurementParseError, match="line 3"):
        parse_measurements(raw, "two_stage_miller")


def test_parse_units():
    raw = format_measurements(_report())
    line = next(l for l in raw.splitlines() if l.startswith("sr"))
    # printed in V/s, reported in V/us
    assert float(line.split("=")[1]) == pytest.approx(_report().sr * 1e6)


def test_parse_ignores_chatter_and_takes_last_value():
    raw = "Circuit: evosize\nNo. of Data Rows : 451\n" + format_measurements(_report())
    raw += "av_db = 30.5\n"
    assert parse_measurements(raw, "two_stage_miller").gain_db == 30.5


@pytest.mark.parametrize("preset, x", [("two_stage_65n", TWO_STAGE_MABCO), ("folded_cascode_180n", FOLDED_MABCO)])
def test_report_round_trip(preset, x):
    rep = _report(preset, x)
    spec, _ = load_preset(preset)
    assert parse_measurements(format_measurements(rep), spec.topology) == rep
    no_area = replace(rep, area=math.nan)
    back = parse_measurements(format_measurements(no_area), spec.topology)
    assert math.isnan(back.area) and back.gain_db == rep.gain_db


# subprocess runner

def test_timeout_kills_sleeping_stub(tmp_path):
    exe = make_stub(tmp_path, "sleeper", "import time\ntime.sleep(30)\n")
    budget = EvaluationBudget()
    cfg = SimulatorConfig(exe, timeout=1.0)
    with pytest.raises(SimulatorTimeoutError):
        run_simulation("* deck\n", cfg, budget)
    assert budget.evaluations == 1


def test_nonzero_exit(tmp_path):
    exe = make_stub(tmp_path, "failing", "import sys\nprint('singular matrix')\nsys.exit(4)\n")
    budget = EvaluationBudget()
    with pytest.raises(SimulatorExitError) as info:
        run_simulation("* deck\n", SimulatorConfig(exe), budget)
    assert info.value.returncode == 4 and "singular matrix" in info.value.output
    assert budget.evaluations == 1


def test_missing_executable_leaves_budget(tmp_path):
    budget = EvaluationBudget()
    with pytest.raises(SimulatorNotFoundError):
        run_simulation("* deck\n", SimulatorConfig(str(tmp_path / "absent")), budget)
    assert budget.evaluations == 0


def test_environment_variable_is_honoured(tmp_path, monkeypatch):
    exe = make_stub(tmp_path, "envsim", "print('ok')\n")
    monkeypatch.setenv(SIMULATOR_ENV, exe)
    assert resolve_executable() == exe
    assert run_simulation("* deck\n", SimulatorConfig()).strip() == "ok"
    assert resolve_executable(str(tmp_path / "absent")) is None


def test_timeout_must_be_positive():
    with pytest.raises(ContractError):
        SimulatorConfig("x", timeout=0)


def test_concurrent_calls_use_separate_directories(tmp_path):
    exe = make_stub(tmp_path, "echo", """
        import os, sys, time
        deck = open(sys.argv[-1]).read()
        time.sleep(0.05)
        print(os.getcwd())
        print(deck)
        """)
    budget = EvaluationBudget()
    cfg = SimulatorConfig(exe, work_dir=str(tmp_path / "work"))

    def call(i):
        return i, run_simulation(f"* job {i}\n", cfg, budget)

    with ThreadPoolExecutor(32) as pool:
        results = list(pool.map(call, range(32)))
    dirs = set()
    for i, out in results:
        cwd, deck = out.split("\n", 1)
        assert deck.strip() == f"* job {i}"
        dirs.add(cwd)
    assert len(dirs) == 32
    assert budget.evaluations == 32
    assert os.listdir(tmp_path / "work") == []


# backend wired to a stub simulator that answers with the analytic model

EMULATOR = """
    import sys
    from evosize.circuit import CircuitProblem
    from evosize.spice_adapter import format_measurements, read_decision_variables
    from dataclasses import replace
    deck = open(sys.argv[-1]).read()
    topo = "two_stage_miller" if "two_stage_miller" in deck else "folded_cascode"
    preset = "two_stage_65n" if topo == "two_stage_miller" else "folded_cascode_180n"
    x = read_decision_variables(deck, topo)
    rep = CircuitProblem.from_preset(preset).report(x)
    print(format_measurements(replace(rep, margins=())))
    """


def test_simulator_backend_matches_analytic_model(tmp_path):
    exe = make_stub(tmp_path, "emulator", EMULATOR)
    spec, tech = load_preset("two_stage_65n")
    problem = simulator_problem(spec, tech, SimulatorConfig(exe, timeout=30))
    analytic = CircuitProblem(spec, tech)
    ev, ref = problem.evaluate(TWO_STAGE_MABCO), analytic.evaluate(TWO_STAGE_MABCO)
    assert ev.fitness == ref.fitness and ev.feasible == ref.feasible
    assert ev.report == ref.report


@pytest.mark.skipif(resolve_executable() is None, reason="no circuit simulator installed")
def test_real_simulator_prints_measurements(tmp_path):
    (tmp_path / "models.lib").write_text(
        ".model nch nmos level=1 vto=0.25 kp=200u lambda=1.5\n"
        ".model pch pmos level=1 vto=-0.25 kp=80u lambda=1.5\n")
    spec, tech = load_preset("two_stage_65n")
    text = emit_netlist(TWO_STAGE_MABCO, load_template(spec.topology), spec, tech,
                        str(tmp_path / "models.lib"), ("nch", "pch"))
    out = run_simulation(text, SimulatorConfig(timeout=60))
    rep = parse_measurements(out, Topology.TWO_STAGE_MILLER)
    assert np.isfinite(rep.gain_db) and rep.power > 0
