"""Running an external circuit simulator in batch mode."""

from __future__ import annotations

import os
import shutil
import subprocess
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from ..core import ContractError, EvaluationBudget

SIMULATOR_ENV = "EVOSIZE_SPICE"
DEFAULT_SIMULATOR = "ngspice"


class SimulationError(RuntimeError):
    """Base class for simulator failures."""


class SimulatorNotFoundError(SimulationError):
    pass


class SimulatorExitError(SimulationError):
    def __init__(self, returncode: int, output: str):
        tail = "\n".join(output.strip().splitlines()[-5:])
        super().__init__(f"simulator exited with status {returncode}: {tail}")
        self.returncode = returncode
        self.output = output


class SimulatorTimeoutError(SimulationError):
    pass


def resolve_executable(configured: str | None = None) -> str | None:
    """Find the simulator: explicit value, then the environment, then PATH.

    Returns None when nothing usable is found.
    """
    candidate = configured or os.environ.get(SIMULATOR_ENV) or DEFAULT_SIMULATOR
    if os.sep in candidate or (os.altsep and os.altsep in candidate):
        return candidate if os.path.isfile(candidate) and os.access(candidate, os.X_OK) else None
    return shutil.which(candidate)


@dataclass(frozen=True)
class SimulatorConfig:
    executable: str | None = None
    model_path: str = "models.lib"
    timeout: float = 60.0
    work_dir: str | None = None
    arguments: tuple[str, ...] = field(default=("-b",))
    keep_files: bool = False

    def __post_init__(self) -> None:
        if not self.timeout > 0:
            raise ContractError(f"simulator timeout must be positive, got {self.timeout}")


def run_simulation(netlist: str, config: SimulatorConfig,
                   budget: EvaluationBudget | None = None) -> str:
    """Simulate ``netlist`` in a fresh directory and return stdout plus stderr.

    ``budget`` is charged once for every launched process, whether or not it
    succeeds; failures before launch leave it untouched.
    """
    exe = resolve_executable(config.executable)
    if exe is None:
        shown = config.executable or os.environ.get(SIMULATOR_ENV) or DEFAULT_SIMULATOR
        raise SimulatorNotFoundError(f"simulator {shown!r} not found; set {SIMULATOR_ENV} or pass a path")
    if config.work_dir is not None:
        Path(config.work_dir).mkdir(parents=True, exist_ok=True)
    workdir = Path(tempfile.mkdtemp(prefix="evosize-", dir=config.work_dir))
    try:
        deck = workdir / "circuit.cir"
        deck.write_text(netlist)
        try:
            proc = subprocess.run([exe, *config.arguments, deck.name], cwd=workdir,
                                  capture_output=True, text=True, timeout=config.timeout)
        except subprocess.TimeoutExpired:
            # subprocess.run has already killed the child
            if budget is not None:
                budget.record()
            raise SimulatorTimeoutError(f"simulation exceeded {config.timeout} s") from None
        except OSError as exc:
            raise SimulatorNotFoundError(f"could not launch {exe!r}: {exc}") from exc
        if budget is not None:
            budget.record()
        output = proc.stdout + proc.stderr
        if proc.returncode != 0:
            raise SimulatorExitError(proc.returncode, output)
        return output
    finally:
        if not config.keep_files:
            shutil.rmtree(workdir, ignore_errors=True)
