import json

from app.main import main


def test_encode_rs(tmp_path):
    message = tmp_path / "message.txt"
    message.write_text("3 1 4\n")
    out = tmp_path / "word.txt"
    code = main(["encode", "--kind", "rs", "--q", "7", "--w", "2", "-i", str(message), "-o", str(out)])
    assert code == 0
    symbols = [int(line) for line in out.read_text().splitlines() if not line.startswith("#")]
    assert len(symbols) == 7
    # f(0) = 3, f(1) = 3 + 1 + 4 = 8 = 1 mod 7
    assert symbols[:2] == [3, 1]


def test_encode_rm_from_spec_file(tmp_path):
    spec = tmp_path / "code.json"
    spec.write_text(json.dumps({"kind": "rm", "q": 4, "ell": 2, "m": 2}))
    message = tmp_path / "message.txt"
    message.write_text("1 1 0\n2 0 1\n")
    out = tmp_path / "word.txt"
    assert main(["encode", "--code", str(spec), "-i", str(message), "-o", str(out)]) == 0
    assert len(out.read_text().split()) == 16


def test_encode_prs_writes_tensor(tmp_path):
    message = tmp_path / "message.txt"
    message.write_text("1 1 1\n")
    out = tmp_path / "cube.txt"
    code = main(["encode", "--kind", "prs", "--q", "4", "--m", "2", "--k", "2,2", "-i", str(message), "-o", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "4 2"
    assert len(lines[1].split()) == 16


def test_encode_degree_too_high(tmp_path):
    message = tmp_path / "message.txt"
    message.write_text("1 2 1\n")
    code = main(["encode", "--kind", "prs", "--q", "4", "--m", "2", "--k", "2,2", "-i", str(message)])
    assert code == 2


def test_encode_requires_code(tmp_path):
    message = tmp_path / "message.txt"
    message.write_text("1\n")
    assert main(["encode", "-i", str(message)]) == 2
