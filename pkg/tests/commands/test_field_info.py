from app.main import main


def test_base_field(capsys):
    assert main(["field-info", "--q", "16"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "field 2 4 1 1 0 0 1"


def test_extension_polynomial_basis(capsys):
    assert main(["field-info", "--q", "4", "--m", "2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[2].startswith("extension 2 4 ")
    assert "vandermonde yes" in lines
    assert sum(line.startswith("mu_") for line in lines) == 2


def test_extension_normal_basis(capsys):
    assert main(["field-info", "--q", "4", "--m", "2", "--basis", "normal"]) == 0
    assert "vandermonde no" in capsys.readouterr().out.splitlines()


def test_not_a_prime_power():
    assert main(["field-info", "--q", "6"]) == 2


def test_binary_field(capsys):
    assert main(["field-info", "--q", "2", "--m", "2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[:2] == ["field 2 1 0 1", "primitive 1"]
    assert "mu_1 0 3 2" in lines
    assert "mu_2 0 1 1" in lines
