import io

import pandas as pd

from src.loader import LEDGER_CELL_WIDTH, LEDGER_COLUMNS, ReportWriter, abbreviate, ledger_frame

ROWS = [
    {"tree": "p3", "n": 1, "check": "wiener", "expected": "4", "observed": "4", "status": "pass", "note": ""},
    {"tree": "*", "n": None, "check": "path_formula", "expected": "580", "observed": "580",
     "status": "pass", "note": ""},
]


def test_emit_to_stream():
    stream = io.StringIO()
    writer = ReportWriter(stream)
    assert writer.emit("hello\n") is None
    assert stream.getvalue() == "hello\n"


def test_emit_to_file(tmp_path):
    writer = ReportWriter(io.StringIO())
    path = writer.emit("graph {}\n", tmp_path / "out" / "g.dot")
    assert path.read_text() == "graph {}\n"
    assert writer.written == [path]


def test_ledger_frame_column_order():
    frame = ledger_frame(ROWS)
    assert list(frame.columns) == LEDGER_COLUMNS
    assert frame.loc[1, "n"] == ""


def test_emit_ledger_table():
    stream = io.StringIO()
    ReportWriter(stream).emit_ledger(ROWS)
    text = stream.getvalue()
    assert "path_formula" in text
    assert text.splitlines()[0].split() == LEDGER_COLUMNS


def test_emit_empty_ledger():
    stream = io.StringIO()
    ReportWriter(stream).emit_ledger([])
    assert stream.getvalue() == "(no checks)\n"


def test_write_ledger_csv(tmp_path):
    writer = ReportWriter(io.StringIO())
    path = writer.write_ledger_csv(ROWS, tmp_path / "ledger.csv")
    frame = pd.read_csv(path)
    assert list(frame.columns) == LEDGER_COLUMNS
    assert frame["check"].tolist() == ["wiener", "path_formula"]
    assert frame["status"].eq("pass").all()


def test_abbreviate():
    assert abbreviate("2025") == "2025"
    assert abbreviate("7" * 500) == "<500 digits>"
    assert abbreviate("-" + "3" * 80) == "<80 digits>"
    cut = abbreviate("y**6*(x + y)**2" * 10)
    assert len(cut) == LEDGER_CELL_WIDTH and cut.endswith("...")


def test_printed_ledger_stays_narrow_but_csv_keeps_values(tmp_path):
    huge = str(3 ** 4000)
    rows = ROWS + [{"tree": "p2", "n": 12, "check": "spanning_forests", "expected": huge,
                    "observed": huge, "status": "pass", "note": ""}]
    stream = io.StringIO()
    writer = ReportWriter(stream)
    writer.emit_ledger(rows)
    lines = stream.getvalue().splitlines()
    assert max(len(line) for line in lines) < 4 * LEDGER_CELL_WIDTH
    assert f"<{len(huge)} digits>" in lines[-1]

    path = writer.write_ledger_csv(rows, tmp_path / "ledger.csv")
    assert huge in path.read_text()
