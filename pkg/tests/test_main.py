import pytest

from app.main import build_parser, main


def test_parser_lists_subcommands():
    help_text = build_parser().format_help()
    for name in ("encode", "decode", "simulate", "analyze", "field-info"):
        assert name in help_text


def test_help_exits_cleanly():
    assert main(["--help"]) == 0


def test_unknown_subcommand():
    assert main(["transmit"]) == 2


def test_missing_subcommand():
    assert main([]) == 2


def test_invalid_field_order():
    assert main(["encode", "--kind", "prs", "--q", "6", "--m", "2", "--k", "2,2"]) == 2


def test_unexpected_errors_propagate(monkeypatch):
    def broken(args):
        raise RuntimeError("internal bug")

    monkeypatch.setattr("app.commands.field_info.cmd_field_info", broken)
    with pytest.raises(RuntimeError):
        main(["field-info", "--q", "2"])
