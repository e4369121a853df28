from app.main import main


def write(path, text):
    path.write_text(text)
    return str(path)


def test_decode_rs_round_trip(tmp_path, capsys):
    word = tmp_path / "word.txt"
    main(["encode", "--kind", "rs", "--q", "7", "--w", "2", "-i", write(tmp_path / "m.txt", "3 1 4\n"), "-o", str(word)])
    capsys.readouterr()
    assert main(["decode", "--kind", "rs", "--q", "7", "--w", "2", "-i", str(word)]) == 0
    out = capsys.readouterr().out
    assert "distance 0" in out
    assert "message 3 1 4" in out


def test_decode_rs_with_errors(tmp_path):
    received = write(tmp_path / "r.txt", "\n".join(["0"] * 13 + ["5", "9", "1"]) + "\n")
    out = tmp_path / "list.txt"
    code = main(["decode", "--kind", "rs", "--q", "16", "--w", "1", "--tau", "3", "-i", received, "-o", str(out)])
    assert code == 0
    text = out.read_text()
    assert text.startswith("# 1 entries")
    assert "distance 3" in text


def test_decode_radius_unachievable(tmp_path):
    received = write(tmp_path / "r.txt", "0\n" * 7)
    code = main(["decode", "--kind", "rs", "--q", "7", "--w", "2", "--tau", "4", "-i", received])
    assert code == 3


def test_decode_empty_list_is_success(tmp_path, capsys):
    received = write(tmp_path / "r.txt", "0\n1\n1\n0\n")
    code = main(["decode", "--kind", "rs", "--q", "4", "--w", "1", "--tau", "0", "-i", received])
    assert code == 0
    assert capsys.readouterr().out.startswith("# 0 entries")


def test_decode_prs_recursive(tmp_path, capsys):
    cube = tmp_path / "cube.txt"
    main(["encode", "--kind", "prs", "--q", "16", "--m", "2", "--k", "4,4", "-i", write(tmp_path / "m.txt", "5 1 2\n"), "-o", str(cube)])
    header, symbols = cube.read_text().splitlines()
    values = [int(v) for v in symbols.split()]
    for pos in (0, 17, 40, 200):
        values[pos] ^= 3
    received = write(tmp_path / "r.txt", header + "\n" + " ".join(map(str, values)) + "\n")
    capsys.readouterr()
    assert main(["decode", "--kind", "prs", "--q", "16", "--m", "2", "--k", "4,4", "-i", received]) == 0
    out = capsys.readouterr().out
    assert "distance 4" in out
    assert "codeword " + symbols in out


def test_decode_rm_recursive_candidates(tmp_path, capsys):
    received = write(tmp_path / "r.txt", "0\n" * 16)
    args = ["decode", "--kind", "rm", "--q", "4", "--ell", "2", "--m", "2", "--decoder", "recursive", "--tuple-rule", "shifted", "-i", received]
    assert main(args) == 0
    out = capsys.readouterr().out
    assert "in_code yes" in out
    assert "tuples 1x1" in out


def test_decode_rm_lifting(tmp_path, capsys):
    received = write(tmp_path / "r.txt", "0\n" * 15 + "1\n")
    assert main(["decode", "--kind", "rm", "--q", "4", "--ell", "2", "--m", "2", "-i", received]) == 0
    out = capsys.readouterr().out
    assert "distance 1" in out


def test_decode_wrong_decoder_for_kind(tmp_path):
    received = write(tmp_path / "r.txt", "0\n" * 7)
    code = main(["decode", "--kind", "rs", "--q", "7", "--w", "2", "--decoder", "recursive", "-i", received])
    assert code == 2


def test_decode_missing_input(tmp_path):
    code = main(["decode", "--kind", "rs", "--q", "7", "--w", "2", "-i", str(tmp_path / "missing.txt")])
    assert code == 2
