import json
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from supergrid.cli import main
from supergrid.documents import DocumentError, InstanceDocument, parse, parse_label, serialize
from supergrid.grid import GridError, ShapeSpec
from supergrid.render import base36, render_svg, render_text
from tests.strategies import shapes

O333 = ShapeSpec.oshape(3, 3, 1, 1, 1, 1, 1, 1)
O53_DOC = '{"family": "O", "m": 5, "n": 3, "k": 3, "l": 1, "a": 1, "b": 1, "c": 1, "d": 1, "s": [2, 1], "t": [4, 1]}'
O333_DOC = '{"family": "O", "m": 3, "n": 3, "k": 1, "l": 1, "a": 1, "b": 1, "c": 1, "d": 1'


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def records(text):
    return [json.loads(line) for line in text.splitlines()]


# -- documents --------------------------------------------------------------------

@st.composite
def documents(draw):
    spec = draw(shapes(7))
    cells = spec.cells()
    with_pts = draw(st.booleans())
    if not with_pts:
        return InstanceDocument(spec)
    s = draw(st.sampled_from(cells))
    t = draw(st.sampled_from([c for c in cells if c != s]))
    path = draw(st.none() | st.lists(st.sampled_from(cells), max_size=5).map(tuple))
    return InstanceDocument(spec, s, t, path)


@settings(max_examples=150, deadline=None)
@given(documents())
def test_document_round_trip(doc):
    assert parse(serialize(doc)) == doc
    assert serialize(parse(serialize(doc))) == serialize(doc)


@pytest.mark.parametrize("text, field", [
    ('{"family": "X", "m": 3}', "family"),
    ('{"family": "R", "m": 3}', "n"),
    ('{"family": "R", "m": 3, "n": "2"}', "n"),
    ('{"family": "R", "m": 3, "n": true}', "n"),
    ('{"family": "R", "m": 3, "n": 2, "k": 1}', "k"),
    ('{"family": "R", "m": 3, "n": 2, "s": [4, 1]}', "s"),
    ('{"family": "R", "m": 3, "n": 2, "s": [1, 1], "t": [1, 1]}', "t"),
    ('{"family": "R", "m": 3, "n": 2, "s": [1]}', "s"),
])
def test_document_field_errors(text, field):
    with pytest.raises(DocumentError) as info:
        parse(text, line=7)
    assert info.value.field == field and info.value.line == 7 and "line 7" in str(info.value)


def test_document_errors_without_field():
    with pytest.raises(DocumentError, match="invalid JSON"):
        parse("{nope")
    with pytest.raises(DocumentError, match="valid shape"):
        parse('{"family": "O", "m": 3, "n": 3, "k": 2, "l": 1, "a": 1, "b": 1, "c": 1, "d": 1}')


def test_parse_label():
    assert parse_label("O(5,3;3,1;1,1,1,1)") == ShapeSpec.oshape(5, 3, 3, 1, 1, 1, 1, 1)
    assert parse_label("R(4, 2)") == ShapeSpec.rect(4, 2)
    with pytest.raises(DocumentError):
        parse_label("L(4,2)")


# -- render ------------------------------------------------------------------------

def test_render_examples():
    assert render_text(O333) == ". . .\n.   .\n. . .\n"
    ring = [(1, 1), (2, 1), (3, 1), (3, 2), (3, 3), (2, 3), (1, 3), (1, 2)]
    assert render_text(O333, ring) == "1 2 3\n8   4\n7 6 5\n"
    with pytest.raises(GridError, match="invalid-path"):
        render_text(O333, [(1, 1), (2, 2)])


def test_render_markers_and_width():
    spec = ShapeSpec.rect(10, 4)
    path = [(x if y % 2 else 11 - x, y) for y in range(1, 5) for x in range(1, 11)]
    art = render_text(spec, path, path[0], path[-1])
    rows = art.splitlines()
    assert rows[0].split()[0] == "S" and rows[-1].split()[0] == "T"
    assert "13" in rows[3].split() and "s" in rows[2].split() and base36(28) == "s"


def test_render_long_paths_use_arrows():
    spec = ShapeSpec.rect(40, 33)
    path = [(x if y % 2 else 41 - x, y) for y in range(1, 34) for x in range(1, 41)]
    art = render_text(spec, path, path[0], path[-1])
    assert "→" in art and "←" in art and "↓" in art


def test_svg_is_deterministic():
    ring = [(1, 1), (2, 1), (3, 1), (3, 2), (3, 3), (2, 3), (1, 3), (1, 2)]
    a = render_svg(O333, ring, (1, 1), (1, 2))
    assert a == render_svg(O333, ring, (1, 1), (1, 2)) and a.startswith("<svg") and "<polyline" in a


# -- commands ----------------------------------------------------------------------

def test_solve_longest(capsys):
    code, out, _ = run(capsys, "solve", "--instance", O53_DOC, "--format", "structured")
    rec = records(out)[0]
    assert code == 0 and rec["verdict"]["class"] == "O1" and rec["bound"] == 11 and len(rec["path"]) == 11


def test_solve_hamiltonian_forbidden(capsys):
    code, out, _ = run(capsys, "solve", "--instance", O333_DOC + ', "s": [1, 1], "t": [2, 3]}',
                       "--mode", "hamiltonian", "--format", "structured")
    rec = records(out)[0]
    assert code == 3 and rec["status"] == "no-path" and rec["condition"] == "F10_1" and rec["path"] is None


def test_solve_cycle(capsys):
    code, out, _ = run(capsys, "solve", "--instance", O333_DOC + "}", "--mode", "cycle", "--format", "structured")
    rec = records(out)[0]
    assert code == 0 and rec["closed"] and len(rec["path"]) == 8


def test_solve_other_families(capsys):
    code, out, _ = run(capsys, "solve", "--shape", "C(2,3;1,1;1,1)", "--s", "1,1", "--t", "2,1",
                       "--mode", "hamiltonian")
    assert code == 3 and "condition=F6" in out
    code, out, _ = run(capsys, "solve", "--shape", "C(2,3;1,1;1,1)", "--s", "1,1", "--t", "2,1")
    assert code == 0 and "length=3" in out
    code, out, _ = run(capsys, "solve", "--shape", "R(3,1)", "--mode", "cycle")
    assert code == 3


def test_batch_reports_line_and_field(tmp_path, capsys):
    src = tmp_path / "in.jsonl"
    src.write_text(O53_DOC + "\n\n" + '{"family": "O", "m": 5}\n')
    code, out, _ = run(capsys, "solve", str(src), "--format", "structured")
    recs = records(out)
    assert code == 2 and len(recs) == 2
    assert recs[1]["line"] == 3 and recs[1]["error"]["field"] == "n"
    code, out, err = run(capsys, "solve", str(src))
    assert code == 2 and "line 3" in err and "'n'" in err


def test_classify_and_bound(capsys):
    code, out, _ = run(capsys, "classify", "--instance", O53_DOC)
    assert code == 0 and "verdict=O1" in out and "condition=F1" in out
    code, out, _ = run(capsys, "bound", "--shape", "O(3,3;1,1;1,1,1,1)", "--s", "1,1", "--t", "2,3")
    assert code == 0 and "bound=7" in out
    code, _, err = run(capsys, "bound", "--shape", "R(3,3)", "--s", "1,1", "--t", "2,3")
    assert code == 2


def test_render_command(tmp_path, capsys):
    code, out, _ = run(capsys, "render", "--instance", O333_DOC + "}")
    assert code == 0 and out == ". . .\n.   .\n. . .\n"
    svg = tmp_path / "o.svg"
    code, out, _ = run(capsys, "render", "--instance", O53_DOC, "--mode", "longest", "--svg-out", str(svg))
    assert code == 0 and out.splitlines()[0].split()[:2] == ["2", "S"]
    assert svg.read_text().startswith("<svg")
    code, _, err = run(capsys, "render", "--instance", O333_DOC + ', "path": [[1, 1], [2, 2]]}')
    assert code == 2 and "out-of-shape" in err


def test_verify_and_cap(capsys, monkeypatch):
    code, out, _ = run(capsys, "verify", "--max-vertices", "9")
    assert code == 0 and out.splitlines()[-1] == "checked 28 instances: 28 passed, 0 failed"
    code, out, _ = run(capsys, "verify", "--family", "R", "--max-vertices", "12", "--format", "structured")
    assert code == 0 and records(out)[-1]["summary"]["failed"] == 0
    code, out, _ = run(capsys, "verify", "--max-vertices", "30", "--format", "structured")
    assert code == 2 and records(out)[0]["error"]["code"] == "cap-exceeded"


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--max-vertices", "8", "--format", "structured")
    recs = records(out)
    assert code == 0 and len(recs) == 28 and parse(json.dumps(recs[0])).spec == O333
    code, out, _ = run(capsys, "enumerate", "--max-vertices", "12", "--shapes-only")
    assert out.splitlines()[0] == "O(3,3;1,1;1,1,1,1)"


def test_console_script_exit_code():
    proc = subprocess.run([sys.executable, "-m", "supergrid.cli", "solve", "--instance",
                           O333_DOC + ', "s": [1, 1], "t": [2, 3]}', "--mode", "hamiltonian"],
                          capture_output=True, text=True)
    assert proc.returncode == 3 and "path=none" in proc.stdout
