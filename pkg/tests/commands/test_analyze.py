import json

from app.main import main


def test_compare(tmp_path):
    out = tmp_path / "compare.json"
    assert main(["analyze", "compare", "--q", "16", "--m", "2", "--k", "4,4", "-o", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["dominant"] == "pw"
    assert report["weight_recursive"] == 64


def test_compare_bad_dimensions():
    assert main(["analyze", "compare", "--q", "16", "--m", "2", "--k", "4"]) == 2


def test_volume_monte_carlo(tmp_path):
    out = tmp_path / "volume.csv"
    assert main(["analyze", "volume", "--m", "2", "--samples", "5000", "--seed", "1", "-o", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "m,method,parameter,volume,lower_bound"
    assert lines[1].startswith("2,monte-carlo,5000,")
    assert lines[-1].startswith("# V_2 = ")


def test_volume_knobs_exclusive():
    assert main(["analyze", "volume", "--m", "2", "--samples", "10", "--resolution", "0.1"]) == 2


def test_surface(tmp_path):
    out = tmp_path / "surface.csv"
    assert main(["analyze", "surface", "--steps", "3", "-o", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "rho1,rho2,radius_recursive,radius_pw"
    assert len(lines) == 10


def test_dominance(capsys):
    assert main(["analyze", "dominance", "--q-max", "8", "--m-max", "2"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["violations"] == []
