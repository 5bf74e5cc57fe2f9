import subprocess
import sys
from pathlib import Path

import pytest

SCRIPTS = Path(__file__).resolve().parent.parent


def run_script(name, *args):
    return subprocess.run(
        [sys.executable, str(SCRIPTS / name), *map(str, args)],
        capture_output=True,
        text=True,
    )


def reproduce(outdir, *args):
    proc = subprocess.run(
        [sys.executable, "-m", "nlrabi.cli", "reproduce", *map(str, args),
         "--outdir", str(outdir)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    return outdir


@pytest.fixture(scope="session")
def fig1_dir(tmp_path_factory):
    return reproduce(tmp_path_factory.mktemp("fig1"), "fig1", "--points", "5")


@pytest.fixture(scope="session")
def fig3_dir(tmp_path_factory):
    return reproduce(
        tmp_path_factory.mktemp("fig3"),
        "fig3", "--points", "3", "--eta-max", "1", "--k", "4", "--J", "0.1",
    )


@pytest.fixture(scope="session")
def wigner_dir(tmp_path_factory):
    return reproduce(
        tmp_path_factory.mktemp("wigner"), "wigner-panel", "--resolution", "41"
    )
