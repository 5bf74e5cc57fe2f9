import json

import pytest

from nlrabi import cli


@pytest.fixture(scope="session")
def validate_run(tmp_path_factory, capsys=None):
    """One full `validate` CLI run, shared by every test that inspects it."""
    outdir = tmp_path_factory.mktemp("validate")
    out = outdir / "validate.json"
    code = cli.main(["validate", "--out", str(out)])
    doc = json.loads(out.read_text())
    return code, doc
