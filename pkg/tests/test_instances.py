"""Instance files: parsing, validation errors, round trips, CLI behavior."""

import json
from fractions import Fraction as F

import pytest

from trunclab.cli import main
from trunclab.elements import SimpleElement
from trunclab.errors import ParseError
from trunclab.instances import (parse_instance, parse_instance_text,
                                serialize_object)
from trunclab.seqspace import TailElement

SAMPLE = """\
# sample instance
space X3 points * 1 2 3 star *
element g space X3 values 1=5 2=2 3=1/3
element nf space X3 values 1=3 2=3 3=1/2
trunc T space X3 components { } { 1 2 } { 3 } { 1 2 3 }
gba A family { } { 1 } { 2 } { 1 2 }
iba B idealize A
iba D atoms p q r ideal-omits r
frame F4 elements bot a b top covers bot<a bot<b a<top b<top point a
framereal u frame F4 cells 1=b 0=a
frame C3 elements bot m top covers bot<m m<top point m
frame TWO elements bot top covers bot<top point top
surjection q source C3 target TWO map bot=bot m=top top=top
framereal hz frame C3 dtype cells 0=top
framereal w2 frame TWO cells 0=top
seqtrunc S1 degree 1
tailel g0 trunc S1 tail 1
tailel a1 trunc S1 correction 3=1/2 5=2
kernel K model S1 support all tails 0
kernel K2 model T support 1 2
element f1 space X3 values 1=1 2=1 3=1
element f2 space X3 values 1=1/2 2=1/2 3=1/2
element f3 space X3 values
sequence s elements f1 f2 f3 f3 stable
goodseq fs elements f1 f2
"""


@pytest.fixture
def sample_file(tmp_path):
    path = tmp_path / "sample.tl"
    path.write_text(SAMPLE)
    return str(path)


def test_parse_sample(sample_file):
    inst = parse_instance(sample_file)
    assert inst.kinds["X3"] == "space"
    g = inst.get("g", "element")
    assert g.value("3") == F(1, 3)
    assert inst.get("g0", "tailel") == TailElement.tail_unit(1)
    assert inst.get("s", "sequence").stable
    assert len(inst.get("T", "trunc").components) == 4


def test_parse_errors_located():
    _, errors = parse_instance_text("space X points 1 2 star 9\n")
    assert errors and errors[0].lineno == 1
    _, errors = parse_instance_text(
        "space X points * 1 2 star *\n"
        "trunc T space X components { } { 1 } { 2 }\n")
    assert errors and errors[0].lineno == 2
    assert "closed" in str(errors[0])
    _, errors = parse_instance_text("element g space NOPE values\n")
    assert errors and "unknown object" in str(errors[0])
    _, errors = parse_instance_text("wibble W foo\n")
    assert "unknown object kind" in str(errors[0])


def test_duplicate_names_rejected():
    _, errors = parse_instance_text(
        "space X points * star *\nspace X points * star *\n")
    assert errors and "duplicate" in str(errors[0])


def test_round_trip_serialization(sample_file):
    inst = parse_instance(sample_file)
    lines = []
    for name in inst.order:
        kind = inst.kinds[name]
        if kind in ("space", "element", "trunc", "seqtrunc", "tailel",
                    "sequence", "goodseq"):
            lines.append(serialize_object(kind, name, inst.objects[name], inst))
    reparsed, errors = parse_instance_text("\n".join(lines))
    assert not errors
    for name in reparsed.order:
        assert reparsed.objects[name] == inst.objects[name] or \
            reparsed.objects[name].__dict__ == inst.objects[name].__dict__


def test_full_round_trip_via_source_lines(sample_file):
    inst = parse_instance(sample_file)
    reparsed, errors = parse_instance_text(inst.to_text())
    assert not errors
    assert reparsed.order == inst.order
    for name in inst.order:
        assert reparsed.kinds[name] == inst.kinds[name]
        assert reparsed.objects[name] == inst.objects[name]


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr().out
    return code, out


def test_cli_normal_form(sample_file, capsys):
    code, out = run_cli(["normal-form", "nf", "--file", sample_file], capsys)
    assert code == 0
    assert '[["3", ["1", "2"]], ["1/2", ["3"]]]' in out


def test_cli_good_seq_and_trunc_seq(sample_file, capsys):
    code, out = run_cli(["good-seq", "g", "--file", sample_file], capsys)
    assert code == 0 and "5 terms" in out
    code, out = run_cli(["trunc-seq", "g", "--file", sample_file], capsys)
    assert code == 0 and "5 terms" in out
    code, out = run_cli(["trunc-seq", "s", "--file", sample_file], capsys)
    assert code == 1  # (1,1,1),(1/2..) is not a truncation sequence


def test_cli_uc(sample_file, capsys):
    code, out = run_cli(["uc", "T", "u", "--file", sample_file], capsys)
    assert code == 0 and "witness b" in out


def test_cli_equivalence(sample_file, capsys):
    code, out = run_cli(["equivalence", "X3", "--file", sample_file], capsys)
    assert code == 0 and out.count("pass") == 3


def test_cli_induced_op_and_eval(sample_file, capsys):
    code, out = run_cli(["induced-op", "add", "u", "u",
                         "--file", sample_file], capsys)
    assert code == 0 and "oracle" in out
    code, out = run_cli(["induced-op", "tminus:1/2", "g",
                         "--file", sample_file], capsys)
    assert code == 0 and '"9/2"' in out
    code, out = run_cli(["frame-eval", "u", "(-inf,1/2)",
                         "--file", sample_file], capsys)
    assert code == 0 and '"a"' in out


def test_cli_drop_e0q(sample_file, capsys):
    code, out = run_cli(["e0q", "q", "u", "--file", sample_file], capsys)
    assert code == 2  # u lives on F4, not on the target of q
    code, out = run_cli(["drop", "q", "hz", "--file", sample_file], capsys)
    assert code == 0 and '"result"' in out or "result" in out
    code, out = run_cli(["e0q", "q", "w2", "--file", sample_file], capsys)
    assert code == 0 and "adjoint" in out


def test_cli_kernel_commands(sample_file, capsys):
    code, out = run_cli(["kernel-check", "K2", "--file", sample_file,
                         "--cases", "60"], capsys)
    assert code == 0
    code, out = run_cli(["kernel-check", "K", "--file", sample_file,
                         "--cases", "60"], capsys)
    assert code == 1 and "witness" in out
    code, out = run_cli(["kernel-close", "K", "--file", sample_file], capsys)
    assert code == 0 and "enlarged" in out
    code, out = run_cli(["pointwise", "K2", "--file", sample_file,
                         "--cases", "60"], capsys)
    assert code == 0
    code, out = run_cli(["pointwise", "f1", "f2", "--file", sample_file],
                        capsys)
    assert code == 0 and '"sup"' in out or "sup" in out


def test_cli_dini(sample_file, capsys):
    code, out = run_cli(["dini", "s", "--file", sample_file], capsys)
    assert code == 0 and "uniform" in out


def test_cli_ex1_report(capsys):
    code, out = run_cli(["ex1-report", "--cases", "200"], capsys)
    assert code == 0
    for part in ("(a)", "(b)", "(c)", "(d)", "(e)"):
        assert part in out


def test_cli_suite_json_deterministic(capsys):
    code1, out1 = run_cli(["suite", "trunc-axioms", "--cases", "40",
                           "--seed", "3", "--json"], capsys)
    code2, out2 = run_cli(["suite", "trunc-axioms", "--cases", "40",
                           "--seed", "3", "--json"], capsys)
    assert code1 == code2 == 0
    assert out1 == out2
    payload = json.loads(out1)
    assert payload["ok"] is True


def test_cli_input_errors(tmp_path, capsys):
    bad = tmp_path / "bad.tl"
    bad.write_text("space X points 1 2 star 9\n")
    code = main(["check", "--file", str(bad)])
    assert code == 2
    code = main(["normal-form", "g"])  # missing --file
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
