import csv
import json
import shutil

from conftest import run_script


def edit_manifest(src_dir, dst_dir, **changes):
    shutil.copytree(src_dir, dst_dir, dirs_exist_ok=True)
    manifests = list(dst_dir.glob("*manifest.json"))
    assert len(manifests) == 1
    doc = json.loads(manifests[0].read_text())
    doc.update(changes)
    manifests[0].write_text(json.dumps(doc))
    return manifests[0]


class TestRenderLevels:
    def test_fig1_produces_an_image(self, fig1_dir, tmp_path):
        out = tmp_path / "fig1.png"
        proc = run_script(
            "render_levels.py", "--manifest", fig1_dir / "fig1_manifest.json",
            "--out", out,
        )
        assert proc.returncode == 0, proc.stderr
        assert out.stat().st_size > 0
        assert out.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"

    def test_fig3_produces_an_image(self, fig3_dir, tmp_path):
        out = tmp_path / "fig3.png"
        proc = run_script(
            "render_levels.py", "--manifest", fig3_dir / "fig3_manifest.json",
            "--out", out,
        )
        assert proc.returncode == 0, proc.stderr
        assert out.exists()

    def test_rendering_is_deterministic(self, fig1_dir, tmp_path):
        outs = [tmp_path / "a.png", tmp_path / "b.png"]
        for out in outs:
            proc = run_script(
                "render_levels.py", "--manifest", fig1_dir / "fig1_manifest.json",
                "--out", out,
            )
            assert proc.returncode == 0, proc.stderr
        assert outs[0].read_bytes() == outs[1].read_bytes()

    def test_unconverged_rows_warn_but_render(self, fig1_dir, tmp_path):
        work = tmp_path / "doctored"
        shutil.copytree(fig1_dir, work)
        target = work / "fig1_kerr.csv"
        rows = list(csv.reader(target.open()))
        for row in rows[2:4]:
            row[-1] = "false"
        with target.open("w", newline="") as fh:
            csv.writer(fh).writerows(rows)
        out = tmp_path / "warned.png"
        proc = run_script(
            "render_levels.py", "--manifest", work / "fig1_manifest.json",
            "--out", out,
        )
        assert proc.returncode == 0
        assert "unconverged" in proc.stderr
        assert "fig1_kerr.csv" in proc.stderr
        assert out.exists()

    def test_schema_mismatch_fails_loudly(self, fig1_dir, tmp_path):
        manifest = edit_manifest(fig1_dir, tmp_path / "schema", schema_version="999")
        proc = run_script(
            "render_levels.py", "--manifest", manifest, "--out", tmp_path / "x.png"
        )
        assert proc.returncode != 0
        assert "schema_version" in proc.stderr
        assert not (tmp_path / "x.png").exists()

    def test_empty_manifest_rejected(self, fig1_dir, tmp_path):
        manifest = edit_manifest(fig1_dir, tmp_path / "empty", panels=[])
        proc = run_script(
            "render_levels.py", "--manifest", manifest, "--out", tmp_path / "x.png"
        )
        assert proc.returncode != 0
        assert "panels" in proc.stderr

    def test_missing_data_file_names_the_path(self, fig1_dir, tmp_path):
        work = tmp_path / "missing"
        shutil.copytree(fig1_dir, work)
        (work / "fig1_kerr.csv").unlink()
        proc = run_script(
            "render_levels.py", "--manifest", work / "fig1_manifest.json",
            "--out", tmp_path / "x.png",
        )
        assert proc.returncode != 0
        assert "fig1_kerr.csv" in proc.stderr

    def test_missing_manifest_fails(self, tmp_path):
        proc = run_script(
            "render_levels.py", "--manifest", tmp_path / "nope.json",
            "--out", tmp_path / "x.png",
        )
        assert proc.returncode != 0
        assert "nope.json" in proc.stderr


class TestRenderWignerGrid:
    def test_panel_figure_renders(self, wigner_dir, tmp_path):
        out = tmp_path / "grid.png"
        proc = run_script(
            "render_wigner_grid.py", "--manifest",
            wigner_dir / "wigner_panel_manifest.json", "--out", out,
        )
        assert proc.returncode == 0, proc.stderr
        assert out.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"

    def test_rendering_is_deterministic(self, wigner_dir, tmp_path):
        outs = [tmp_path / "a.png", tmp_path / "b.png"]
        for out in outs:
            proc = run_script(
                "render_wigner_grid.py", "--manifest",
                wigner_dir / "wigner_panel_manifest.json", "--out", out,
            )
            assert proc.returncode == 0, proc.stderr
        assert outs[0].read_bytes() == outs[1].read_bytes()

    def test_kerr_isotropy_guard_accepts_real_data(self, wigner_dir, tmp_path):
        # rendering succeeds only after the marginal-variance check; reaching
        # an image at all certifies the kerr panels are isotropic to 1%
        proc = run_script(
            "render_wigner_grid.py", "--manifest",
            wigner_dir / "wigner_panel_manifest.json", "--out", tmp_path / "ok.png",
        )
        assert proc.returncode == 0, proc.stderr

    def test_kerr_isotropy_guard_rejects_stretched_data(self, wigner_dir, tmp_path):
        work = tmp_path / "stretched"
        shutil.copytree(wigner_dir, work)
        target = work / "wigner_panel_kerr_n0.csv"
        rows = list(csv.reader(target.open()))
        # stretch the p axis by 10%: isotropy in the marginals breaks
        for row in rows[1:]:
            row[0] = repr(float(row[0]) * 1.1)
        with target.open("w", newline="") as fh:
            csv.writer(fh).writerows(rows)
        proc = run_script(
            "render_wigner_grid.py", "--manifest",
            work / "wigner_panel_manifest.json", "--out", tmp_path / "x.png",
        )
        assert proc.returncode != 0
        assert "isotropic" in proc.stderr

    def test_schema_mismatch_fails_loudly(self, wigner_dir, tmp_path):
        manifest = edit_manifest(wigner_dir, tmp_path / "schema", schema_version="0")
        proc = run_script(
            "render_wigner_grid.py", "--manifest", manifest,
            "--out", tmp_path / "x.png",
        )
        assert proc.returncode != 0
        assert "schema_version" in proc.stderr

    def test_incomplete_panel_set_rejected(self, wigner_dir, tmp_path):
        work = tmp_path / "partial"
        shutil.copytree(wigner_dir, work)
        manifest = work / "wigner_panel_manifest.json"
        doc = json.loads(manifest.read_text())
        doc["panels"] = doc["panels"][:-1]
        manifest.write_text(json.dumps(doc))
        proc = run_script(
            "render_wigner_grid.py", "--manifest", manifest,
            "--out", tmp_path / "x.png",
        )
        assert proc.returncode != 0
        assert "missing panels" in proc.stderr
