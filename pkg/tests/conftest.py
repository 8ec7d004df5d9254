import os

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("ci", max_examples=1000, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


import subprocess
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import pytest


@dataclass
class CliRun:
    rc: int
    stdout: str
    stderr: str
    seconds: float
    out: Path


def run_cli(args, out=None, env_extra=None):
    env = dict(os.environ, **(env_extra or {}))
    t0 = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "fanocert.cli", *args], env=env, capture_output=True, text=True
    )
    return CliRun(proc.returncode, proc.stdout, proc.stderr, time.perf_counter() - t0, out)


@pytest.fixture(scope="session")
def verify_all_pair(tmp_path_factory):
    """Two full verify-all runs with different worker counts."""
    runs = []
    for jobs in ("1", "2"):
        out = tmp_path_factory.mktemp(f"va{jobs}")
        runs.append(run_cli(["verify-all", "--out", str(out), "--jobs", jobs], out))
    return runs


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_log():
    def log(n, ok, detail=""):
        line = f"acceptance {n}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip()
        ACCEPTANCE_LINES.append(line)
        print(line)
    return log


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
