import json
import xml.etree.ElementTree as ET

import numpy as np
import pytest

import kernelsig.signature as signature
from kernelsig import KernelSpec, SignatureModel, extract_isolines, gen_circle
from kernelsig.cli import main
from kernelsig.errors import SolveFailed
from kernelsig.io import (cloud_to_csv, isolines_to_svg, load_model, read_cloud, save_model, write_cloud)


def read_rows(path):
    lines = [ln for ln in path.read_text().splitlines() if ln]
    header = lines[0].split(",")
    data = np.array([[float(v) for v in ln.split(",")] for ln in lines[1:]]).reshape(-1, len(header))
    return header, data


def kv(text):
    return dict(ln.split("=", 1) for ln in text.splitlines() if "=" in ln)


@pytest.fixture
def circle_files(tmp_path):
    cloud = tmp_path / "circle.csv"
    model = tmp_path / "circle.json"
    assert main(["gen", "circle", "--n", "30", "--out", str(cloud)]) == 0
    assert main(["fit", "--cloud", str(cloud), "--kernel", "gauss", "--alpha", "0", "--out", str(model)]) == 0
    return cloud, model


def test_cloud_csv_round_trip(tmp_path):
    cloud = gen_circle(17, 0.3, (1.0 / 3, 2.0))
    write_cloud(cloud, tmp_path / "c.csv")
    back = read_cloud(tmp_path / "c.csv")
    np.testing.assert_array_equal(back.points, cloud.points)
    assert cloud_to_csv(cloud).splitlines()[0] == "# d=2"


def test_cloud_header_mismatch(tmp_path):
    (tmp_path / "bad.csv").write_text("# d=3\n1,2\n3,4\n")
    with pytest.raises(ValueError):
        read_cloud(tmp_path / "bad.csv")


@pytest.mark.parametrize("spec, alpha", [(KernelSpec.gauss(), 0.0), (KernelSpec.laplace_r(1e-3, 2.0), 0.05),
                                         (KernelSpec.laplace(), 1e-10)])
def test_model_round_trip(tmp_path, spec, alpha):
    rng = np.random.default_rng(6)
    model = SignatureModel.fit(rng.uniform(-1, 1, (20, 3)), spec, alpha)
    save_model(model, tmp_path / "m.json")
    back = load_model(tmp_path / "m.json")
    X = rng.uniform(-1.5, 1.5, (10, 3))
    np.testing.assert_allclose(back(X), model(X), rtol=1e-15, atol=0)
    assert back.spec == model.spec and back.alpha == model.alpha
    assert back.density.solver_path == model.density.solver_path


def test_model_file_is_json(circle_files):
    data = json.loads(circle_files[1].read_text())
    assert data["format"] == "kernelsig-model"
    assert len(data["lambda"]) == 30


def test_gen_circle_rows(tmp_path):
    out = tmp_path / "c.csv"
    assert main(["gen", "circle", "--n", "30", "--out", str(out)]) == 0
    assert read_cloud(out).points.shape == (30, 2)


def test_gen_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for p in (a, b):
        assert main(["gen", "sphere", "--m", "80", "--seed", "7", "--out", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_gen_noise_bound(tmp_path):
    out = tmp_path / "n.csv"
    assert main(["gen", "circle", "--n", "30", "--noise-percent", "0.05", "--seed", "1", "--out", str(out)]) == 0
    clean = gen_circle(30)
    disp = np.linalg.norm(read_cloud(out).points - clean.points, axis=1)
    assert np.all(disp <= 0.05 * clean.h_max() + 1e-15)
    assert disp.max() > 0


@pytest.mark.parametrize("shape", ["square", "sector", "graph", "folded-curve", "folded-surface"])
def test_gen_all_shapes(tmp_path, shape):
    out = tmp_path / "s.csv"
    assert main(["gen", shape, "--out", str(out)]) == 0
    assert read_cloud(out).m > 0


def test_gen_invalid_count(tmp_path, capsys):
    assert main(["gen", "square", "--n", "30", "--out", str(tmp_path / "x.csv")]) == 2
    assert "error" in capsys.readouterr().err


def test_fit_reports(tmp_path, capsys):
    cloud = tmp_path / "c.csv"
    main(["gen", "circle", "--n", "30", "--out", str(cloud)])
    capsys.readouterr()
    assert main(["fit", "--cloud", str(cloud), "--alpha", "0", "--out", str(tmp_path / "a.json")]) == 0
    info = kv(capsys.readouterr().out)
    assert float(info["residual"]) <= 1e-9
    assert int(info["m"]) == 30
    assert main(["fit", "--cloud", str(cloud), "--alpha", "1e-10", "--out", str(tmp_path / "b.json")]) == 0
    assert float(kv(capsys.readouterr().out)["interpolation_check"]) <= 1e-10


def test_fit_single_point(tmp_path):
    (tmp_path / "p.csv").write_text("0.5,0.5\n")
    assert main(["fit", "--cloud", str(tmp_path / "p.csv"), "--out", str(tmp_path / "p.json")]) == 0
    assert json.loads((tmp_path / "p.json").read_text())["lambda"] == [1.0]


def test_fit_bad_input(tmp_path):
    (tmp_path / "bad.csv").write_text("1,2\nfoo,3\n")
    assert main(["fit", "--cloud", str(tmp_path / "bad.csv"), "--out", str(tmp_path / "m.json")]) == 2
    assert main(["fit", "--cloud", str(tmp_path / "missing.csv"), "--out", str(tmp_path / "m.json")]) == 2


def test_fit_solver_failure(tmp_path, monkeypatch):
    def boom(*a, **k):
        raise SolveFailed("forced")
    monkeypatch.setattr(signature, "solve_density", boom)
    (tmp_path / "c.csv").write_text("0,0\n1,0\n")
    assert main(["fit", "--cloud", str(tmp_path / "c.csv"), "--out", str(tmp_path / "m.json")]) == 3


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["fit"])
    assert exc.value.code == 2


def test_analyze_circle_curvature(circle_files, tmp_path):
    _, model = circle_files
    out = tmp_path / "a.csv"
    assert main(["analyze", "--model", str(model), "--at-data", "--curvature", "--reference-center",
                 "--out", str(out)]) == 0
    header, data = read_rows(out)
    assert data.shape[0] == 30
    k = data[:, header.index("k0")]
    assert np.all((k >= 0.99) & (k <= 1.01))
    assert np.max(data[:, header.index("normal_angle_deg")]) <= 0.1


def test_analyze_sphere_points(tmp_path):
    cloud, model, pts, out = (tmp_path / n for n in ("s.csv", "s.json", "q.csv", "a.csv"))
    main(["gen", "sphere", "--m", "80", "--seed", "0", "--out", str(cloud)])
    main(["gen", "sphere", "--m", "32", "--seed", "100", "--out", str(pts)])
    main(["fit", "--cloud", str(cloud), "--out", str(model)])
    assert main(["analyze", "--model", str(model), "--points", str(pts), "--reference-center", "0,0,0",
                 "--out", str(out)]) == 0
    header, data = read_rows(out)
    assert data.shape == (32, len(header))
    assert np.max(data[:, header.index("normal_angle_deg")]) <= 0.1


def test_analyze_dimension(tmp_path):
    from kernelsig.bench import DIMENSION_DELTA, folded_base_points
    cloud, model, pts, out = (tmp_path / n for n in ("f.csv", "f.json", "q.csv", "a.csv"))
    main(["gen", "folded-curve", "--out", str(cloud)])
    main(["fit", "--cloud", str(cloud), "--delta", str(DIMENSION_DELTA), "--out", str(model)])
    write_cloud(type(read_cloud(cloud))(folded_base_points(read_cloud(cloud))), pts)
    assert main(["analyze", "--model", str(model), "--points", str(pts), "--dimension", "--out", str(out)]) == 0
    header, data = read_rows(out)
    assert data[:, header.index("dimension")].tolist() == [1, 1, 1, 1]


def test_analyze_singular_exit(circle_files, tmp_path, capsys):
    _, model = circle_files
    (tmp_path / "far.csv").write_text("1000,0\n")
    code = main(["analyze", "--model", str(model), "--points", str(tmp_path / "far.csv"), "--normals"])
    assert code == 4
    assert "1000" in capsys.readouterr().err


def test_analyze_needs_points(circle_files):
    assert main(["analyze", "--model", str(circle_files[1])]) == 2


def test_isoline_csv(circle_files, tmp_path):
    out = tmp_path / "iso.csv"
    assert main(["isoline", "--model", str(circle_files[1]), "--iso", "auto", "--out", str(out)]) == 0
    header, data = read_rows(out)
    assert header == ["polyline_id", "x", "y"]
    assert set(data[:, 0]) == {0}
    np.testing.assert_array_equal(data[0, 1:], data[-1, 1:])


def test_isoline_out_of_range(circle_files, tmp_path):
    out = tmp_path / "iso.csv"
    assert main(["isoline", "--model", str(circle_files[1]), "--iso", "2", "--out", str(out)]) == 0
    assert out.read_text().strip() == "polyline_id,x,y"


def test_isoline_svg(circle_files, tmp_path):
    out = tmp_path / "iso.svg"
    assert main(["isoline", "--model", str(circle_files[1]), "--iso", "0.6", "--normals",
                 "--out", str(out)]) == 0
    root = ET.parse(out).getroot()
    ns = "{http://www.w3.org/2000/svg}"
    model = load_model(circle_files[1])
    expected = len(extract_isolines(model, 0.6).polylines)
    assert len(root.findall(f".//{ns}path")) == expected
    assert len(root.findall(f".//{ns}circle")) == 30
    assert len(root.findall(f".//{ns}line")) == 30


def test_isoline_rejects_3d(tmp_path):
    cloud, model = tmp_path / "s.csv", tmp_path / "s.json"
    main(["gen", "sphere", "--m", "20", "--out", str(cloud)])
    main(["fit", "--cloud", str(cloud), "--out", str(model)])
    assert main(["isoline", "--model", str(model), "--out", str(tmp_path / "i.csv")]) == 2


def test_svg_helper_without_extras(circle_gauss):
    svg = isolines_to_svg(extract_isolines(circle_gauss, 1.0, nx=40, ny=40))
    assert len(ET.fromstring(svg).findall(".//{http://www.w3.org/2000/svg}path")) == 1


@pytest.mark.parametrize("suite", ["sector", "circle", "sphere", "graph", "dimension"])
def test_bench_suites(tmp_path, suite, capsys):
    out = tmp_path / suite
    assert main(["bench", suite, "--out", str(out)]) == 0
    assert (tmp_path / f"{suite}.csv").read_text().strip()
    assert "|" in (tmp_path / f"{suite}.md").read_text()
