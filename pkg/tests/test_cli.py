import io
import subprocess
import sys

import pytest

from wedgesyz.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_resolve_veronese():
    code, out, _ = call("resolve", "--corpus", "veronese_proj")
    assert code == 0
    assert "total:  1  7 10  5  1" in out
    assert "    2:  .  7 10  5  1" in out


def test_resolve_kv():
    code, out, _ = call("resolve", "--corpus", "gr25", "--format", "kv")
    assert code == 0
    assert out.splitlines() == ["betti.0.0 = 1", "betti.1.2 = 5", "betti.2.3 = 5", "betti.3.5 = 1"]


def test_theorem_check_segre():
    code, out, _ = call("theorem-check", "--corpus", "segre22")
    assert code == 0
    assert "skew-symmetric: yes" in out


def test_theorem_check_refuted_exits_1():
    code, out, _ = call("theorem-check", "--corpus", "rnc4")
    assert code == 1
    assert "skew-symmetric: no" in out


def test_empty_file_exits_2(tmp_path):
    p = tmp_path / "empty.ideal"
    p.write_text("")
    code, out, err = call("resolve", "--input", str(p))
    assert code == 2 and not out
    assert "empty input" in err


def test_parse_error_has_position(tmp_path):
    p = tmp_path / "bad.ideal"
    p.write_text("ring x y\nideal\nx^2 + *y\n")
    code, _, err = call("resolve", "--input", str(p))
    assert code == 2
    assert "line 3" in err and "position" in err


def test_missing_file_and_source_errors(tmp_path):
    assert call("resolve", "--input", str(tmp_path / "nope"))[0] == 2
    assert call("resolve")[0] == 2
    assert call("resolve", "--corpus", "gr25", "--input", "x")[0] == 2
    assert call("resolve", "--corpus", "nope")[0] == 2
    assert call("frobnicate")[0] == 2


def test_inhomogeneous_input_exits_2(tmp_path):
    p = tmp_path / "inh.ideal"
    p.write_text("ring x y\nideal\nx^2 - y\n")
    assert call("resolve", "--input", str(p))[0] == 2


def test_input_file_matches_corpus(tmp_path):
    code, text, _ = call("corpus", "--corpus", "dp5_surface")
    assert code == 0
    p = tmp_path / "dp5.ideal"
    p.write_text(text)
    a = call("theorem-check", "--input", str(p), "--format", "kv")[1]
    b = call("theorem-check", "--corpus", "dp5_surface", "--format", "kv")[1]
    assert a.replace("name = dp5", "name = dp5_surface") == b


def test_wedge():
    code, out, _ = call("wedge", "--corpus", "ci5", "--p", "4", "--primitive")
    assert code == 0
    assert out.startswith("D_4 (5x5):\n")
    assert "x2^x3^x4" in out and "6*" not in out
    code, out, _ = call("wedge", "--corpus", "ci5", "--p", "4", "--format", "kv")
    assert "D.0.1 = " in out
    assert call("wedge", "--corpus", "ci5", "--p", "9")[0] == 2


def test_syzygy_scheme_column_and_coeffs():
    code, out, _ = call("syzygy-scheme", "--corpus", "gr25", "--column", "4")
    assert code == 0
    assert "quadric count: 4" in out
    code, out, _ = call("syzygy-scheme", "--corpus", "dp5_surface", "--coeffs", "1,0,0,0,0", "--samples", "3")
    assert code == 0
    assert "bounds hold: yes" in out
    assert call("syzygy-scheme", "--corpus", "gr25", "--coeffs", "1,2")[0] == 2
    assert call("syzygy-scheme", "--corpus", "gr25", "--coeffs", "a,b")[0] == 2
    assert call("syzygy-scheme", "--corpus", "rnc4")[0] == 1


def test_syzygy_scheme_segre_reports_failed_decomposition():
    code, out, _ = call("syzygy-scheme", "--corpus", "segre22", "--column", "0")
    assert code == 1
    assert "quadric count: 8" in out
    assert "I(gamma) = I_X cap colon: no" in out


def test_koszul_dim():
    code, out, _ = call("koszul-dim", "--corpus", "veronese_proj", "--module", "IX", "--p", "3", "--q", "3")
    assert code == 0 and out.splitlines()[-1].split() == ["3:", "1"]
    code, out, _ = call("koszul-dim", "--corpus", "gr25", "--format", "kv")
    assert "koszul.1.1 = 5" in out and "koszul.3.2 = 1" in out


def test_corpus_listing():
    code, out, _ = call("corpus")
    assert code == 0 and len(out.splitlines()) == 6
    code, out, _ = call("corpus", "--corpus", "gr25", "--format", "kv")
    assert "e = 3" in out


def test_lex_order_gives_same_betti():
    a = call("resolve", "--corpus", "rnc4", "--order", "lex")[1]
    b = call("resolve", "--corpus", "rnc4")[1]
    assert a == b


def test_verify_fixtures_single_entry(tmp_path):
    assert call("verify-fixtures", "--corpus", "gr25", "--dir", str(tmp_path))[0] == 1
    assert call("verify-fixtures", "--corpus", "gr25", "--dir", str(tmp_path), "--update")[0] == 0
    code, out, _ = call("verify-fixtures", "--corpus", "gr25", "--dir", str(tmp_path))
    assert code == 0 and "fixtures match" in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "wedgesyz", "theorem-check", "--corpus", "gr25"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert "skew-symmetric: yes" in proc.stdout


@pytest.mark.parametrize("cmd", ["resolve", "wedge", "theorem-check", "koszul-dim"])
def test_output_is_deterministic(cmd):
    assert call(cmd, "--corpus", "dp5_surface") == call(cmd, "--corpus", "dp5_surface")
