import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from worstload import generate_disk_mesh, write_mesh
from worstload.cli import main
from worstload.config import DEFAULT_OUT, OUT_ENV, load_config, parse_config, preset_names
from worstload.errors import ConfigError
from worstload.output import read_quantities

SMALL_DISK = ["--set", "mesh.target_h=0.1", "--set", "kkl.n_cos=6", "--set", "kkl.n_sin=6"]

WORST_FILES = {"worst.csv", "worst.txt", "spectrum.csv", "worst_trace.csv",
               "worst_u.vtk", "worst_strain.vtk", "worst_stress.vtk"}
KKL_FILES = {"kkl.csv", "kkl.txt", "modes.csv", "mean_u.vtk", "mean_strain.vtk",
             "mean_stress.vtk"}


def run(tmp_path, *args, out="out"):
    target = tmp_path / out
    code = main([*args, "--out", str(target)])
    return code, target


def quantities(path):
    return read_quantities(path)


def test_presets_are_bundled():
    assert {"disk", "disk_full", "geo1", "geo2", "geo3", "geo4"} <= set(preset_names())


def test_worst_writes_report_and_fields(tmp_path, capsys):
    code, out = run(tmp_path, "worst", "--config", "disk", *SMALL_DISK)
    assert code == 0
    assert WORST_FILES <= {p.name for p in out.iterdir()}
    q = quantities(out / "worst.csv")
    assert float(q["V"]) == pytest.approx(0.25, rel=0.02)
    assert q["spectrum_in_bounds"] == "1"
    assert "V=" in capsys.readouterr().out
    spectrum = np.loadtxt(out / "spectrum.csv", delimiter=",", skiprows=1)
    assert spectrum[0, 0] == 1 and np.all(np.diff(spectrum[:, 1]) <= 0)
    assert np.all((spectrum[:, 1] >= 0) & (spectrum[:, 1] <= 1))
    assert (out / "spectrum.csv").read_text().startswith("k,lambda_k\n")


def test_full_omega_preset_gives_one(tmp_path):
    code, out = run(tmp_path, "compare", "--config", "disk_full", *SMALL_DISK)
    assert code == 0
    q = quantities(out / "compare.csv")
    assert float(q["V"]) == pytest.approx(1.0, abs=1e-10)
    assert float(q["ratio_P_bar_N_over_V"]) == pytest.approx(float(q["P_bar_N"]), abs=1e-10)


def test_runs_are_deterministic(tmp_path):
    outs = [run(tmp_path, "compare", "--config", "disk", *SMALL_DISK, out=f"r{k}")[1]
            for k in range(2)]
    names = sorted(p.name for p in outs[0].iterdir())
    assert names == sorted(p.name for p in outs[1].iterdir())
    for name in names:
        a, b = ((o / name).read_text().splitlines() for o in outs)
        drop = lambda lines: [ln for ln in lines if not ln.startswith("elapsed_s")]  # noqa: E731
        assert drop(a) == drop(b), name


def test_kkl_files_and_mode_table(tmp_path):
    code, out = run(tmp_path, "kkl", "--config", "disk", *SMALL_DISK)
    assert code == 0
    assert KKL_FILES <= {p.name for p in out.iterdir()}
    header = (out / "modes.csv").read_text().splitlines()[0]
    assert header == "family,n,mu,energy_omega,energy_omegastar"
    modes = (out / "modes.csv").read_text().splitlines()[1:]
    assert len(modes) == 12
    q = quantities(out / "kkl.csv")
    assert "V" not in q


def test_kkl_reuses_worst_case_results(tmp_path):
    assert run(tmp_path, "worst", "--config", "disk", *SMALL_DISK)[0] == 0
    code, out = run(tmp_path, "kkl", "--config", "disk", *SMALL_DISK)
    q = quantities(out / "kkl.csv")
    assert q["V"] == quantities(out / "worst.csv")["V"]
    assert q["inequality_holds"] == "1"


def test_pure_mean_run(tmp_path):
    code, out = run(tmp_path, "kkl", "--config", "disk", "--set", "mesh.target_h=0.1",
                    "--set", "kkl.n_cos=0", "--set", "kkl.n_sin=0")
    assert code == 0
    q = quantities(out / "kkl.csv")
    assert float(q["P_bar_N"]) == pytest.approx(float(q["P_mean"]), rel=1e-12)


def test_correlation_length_controls_first_eigenvalue(tmp_path):
    mu = {}
    for b in ("0.001", "10"):
        code, out = run(tmp_path, "kkl", "--config", "disk", *SMALL_DISK, "--set", f"kkl.b={b}",
                        out=f"b{b}")
        assert code == 0
        mu[b] = float(quantities(out / "kkl.csv")["mu_1"])
    assert mu["0.001"] < mu["10"]


def test_radius_sweep_is_increasing(tmp_path):
    values = []
    for r in ("0.3", "0.5", "0.7"):
        code, out = run(tmp_path, "worst", "--config", "disk", "--set", "mesh.target_h=0.05",
                        "--set", f"mesh.omega_radius={r}", out=f"r{r}")
        assert code == 0
        values.append(float(quantities(out / "worst.csv")["V"]))
    assert values[0] < values[1] < values[2]


def test_geometry_report_flags_approximate_layout(tmp_path):
    code, out = run(tmp_path, "kkl", "--config", "geo1")
    assert code == 0
    assert "approximate inclusion layout" in (out / "kkl.txt").read_text()
    assert quantities(out / "kkl.csv")["approximate_layout"] == "1"


def test_vtk_layout(tmp_path):
    _, out = run(tmp_path, "worst", "--config", "disk", *SMALL_DISK)
    mesh = load_config("disk", overrides=["mesh.target_h=0.1"]).build_mesh()
    lines = (out / "worst_u.vtk").read_text().splitlines()
    assert lines[0] == "# vtk DataFile Version 3.0"
    assert lines[2:4] == ["ASCII", "DATASET UNSTRUCTURED_GRID"]
    assert lines[4] == f"POINTS {mesh.n_nodes} double"
    i = lines.index(f"CELLS {mesh.n_elements} {4 * mesh.n_elements}")
    j = lines.index(f"CELL_TYPES {mesh.n_elements}")
    assert j == i + mesh.n_elements + 1
    assert set(lines[j + 1:j + 1 + mesh.n_elements]) == {"5"}
    k = lines.index(f"POINT_DATA {mesh.n_nodes}")
    assert lines[k + 1].startswith("SCALARS worst_u double 1")
    values = np.array(lines[k + 3:], float)
    assert len(values) == mesh.n_nodes
    strain = (out / "worst_strain.vtk").read_text()
    assert f"CELL_DATA {mesh.n_elements}" in strain


def test_worst_fields_have_unit_energy(tmp_path):
    _, out = run(tmp_path, "worst", "--config", "disk", *SMALL_DISK)
    q = quantities(out / "worst.csv")
    assert float(q["worst_energy_omegastar"]) == pytest.approx(1.0, abs=1e-10)


# errors and exit codes ---------------------------------------------------------------

def test_missing_config_exits_2(tmp_path, capsys):
    assert run(tmp_path, "worst", "--config", str(tmp_path / "nope.ini"))[0] == 2
    assert "config error" in capsys.readouterr().err


@pytest.mark.parametrize("args, expected", [
    (["--set", "novalue"], 2),
    (["--set", "material.matrix=-1"], 2),
    (["--set", "bogus.key=1"], 2),
    (["--threads", "0"], 2),
    (["--set", "mesh.omega_radius=2.0"], 3),
])
def test_bad_settings_exit_codes(tmp_path, args, expected):
    assert run(tmp_path, "worst", "--config", "disk", *args)[0] == expected


def test_kkl_without_section_exits_2(tmp_path):
    cfg = tmp_path / "c.ini"
    cfg.write_text("[mesh]\ngenerator = disk\nomega_radius = 0.5\ntarget_h = 0.1\n")
    assert run(tmp_path, "kkl", "--config", str(cfg))[0] == 2
    assert run(tmp_path, "worst", "--config", str(cfg))[0] == 0


def test_mesh_errors_exit_3(tmp_path):
    bad = tmp_path / "bad.mesh"
    bad.write_text("meshv1\nnodes 3\n0 0\n1 0\n0 1\ntris 1\n0 1 5\nregions\nM+w\n")
    assert run(tmp_path, "worst", "--config", "disk", "--mesh", str(bad))[0] == 3
    assert run(tmp_path, "worst", "--config", "disk",
               "--mesh", str(tmp_path / "missing.mesh"))[0] == 3


def test_solver_errors_exit_4(tmp_path):
    m = generate_disk_mesh(1.0, 0.5, 0.2).with_omega(False)
    path = tmp_path / "no_omega.mesh"
    write_mesh(m, path)
    assert run(tmp_path, "worst", "--config", "disk", "--mesh", str(path))[0] == 4


def test_mesh_override_and_config_file(tmp_path):
    m = generate_disk_mesh(1.0, 0.6, 0.1)
    write_mesh(m, tmp_path / "d.mesh")
    cfg = tmp_path / "c.ini"
    cfg.write_text("[run]\nname = mine\n[mesh]\nfile = d.mesh\n[kkl]\nb = 2\nn_cos = 3\n"
                   "n_sin = auto\nmean_load =\n    box -2 -2 2 0 0.5\n")
    code, out = run(tmp_path, "compare", "--config", str(cfg))
    assert code == 0
    q = quantities(out / "compare.csv")
    assert float(q["V"]) == pytest.approx(0.36, rel=0.03)
    assert q["n_cos"] == "3" and int(q["n_sin"]) > 3


def test_output_dir_precedence(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv(OUT_ENV, raising=False)
    assert main(["worst", "--config", "disk", *SMALL_DISK]) == 0
    assert (tmp_path / DEFAULT_OUT / "worst.csv").exists()
    monkeypatch.setenv(OUT_ENV, str(tmp_path / "env_out"))
    assert main(["worst", "--config", "disk", *SMALL_DISK]) == 0
    assert (tmp_path / "env_out" / "worst.csv").exists()
    assert main(["worst", "--config", "disk", *SMALL_DISK,
                 "--set", f"output.dir={tmp_path / 'cfg_out'}"]) == 0
    assert (tmp_path / "cfg_out" / "worst.csv").exists()


def test_parse_config_rejects_two_mesh_sources():
    with pytest.raises(ConfigError):
        parse_config("[mesh]\nfile = x.mesh\ngenerator = disk\n")
    with pytest.raises(ConfigError):
        parse_config("[mesh]\ngenerator = disk\n[kkl]\nb = 0\n")
    with pytest.raises(ConfigError):
        parse_config("[mesh]\ngenerator = disk\n[kkl]\nb = 1\nmean_load = line 1 2\n")


def test_console_script_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "worstload.cli", "worst", "--config", "disk",
                           *SMALL_DISK, "--threads", "1", "--out", str(tmp_path / "o")],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert "wrote" in proc.stdout
    assert Path(tmp_path / "o" / "worst.csv").exists()
