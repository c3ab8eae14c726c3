import io
import json
import subprocess
import sys

import pytest

from wavetile import formats
from wavetile.cli import run
from wavetile.errors import UnknownFixture
from wavetile.fixtures import FIXTURE_NAMES, JOURNE, SHANNON, load_fixture
from wavetile.intervals import IntervalSet
from wavetile.stepfunc import StepFunction
from wavetile.wavelet import ComplexProfile


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


@pytest.mark.parametrize("argv,code", [
    (["verify-set", "--example", "journe"], 0),
    (["verify-set", "--example", "toostrong"], 1),
    (["dar-select", "--example", "mix"], 0),
    (["dar-select", "--example", "h-cells"], 0),
    (["certify-wavelet", "--example", "shannon"], 0),
    (["geom-check", "--example", "journe", "--window", "20"], 0),
    (["extract", "--example", "shannon", "--action", "dil"], 0),
    (["extract", "--example", "toostrong", "--action", "dil"], 1),
    (["speegle-check", "--example", "paper-X"], 0),
    (["build-uv", "--example", "paper-X"], 0),
    (["ip-check", "--example", "paper-X", "--eps", "1/200"], 0),
    (["diagonal", "--example", "h-cells"], 0),
    (["orbit", "--example", "mix", "--xi", "1/2√2", "--window", "4"], 0),
    (["measure-match", "--example", "mix", "--tol", "1e-9"], 0),
    (["dimension", "--example", "shannon", "--window", "10"], 0),
    (["verify-function", "--example", "mix"], 0),
    (["verify-set"], 2),
    (["verify-set", "--example", "nope"], 2),
    (["orbit", "--example", "mix", "--xi", "3/4"], 2),
    (["build-uv", "--example", "paper-X", "--eps", "1/128"], 2),
    (["no-such-command"], 2),
])
def test_exit_codes(argv, code):
    assert call(*argv)[0] == code


def test_verify_set_report():
    code, text = call("verify-set", "--example", "toostrong")
    report = json.loads(text)
    assert report["is_wavelet_set"] is False
    assert report["translation"]["witnesses"]
    assert report["lebesgue"] == "1/1"


def test_dar_select_prints_shannon():
    report = json.loads(call("dar-select", "--example", "mix")[1])
    assert IntervalSet.from_dict(report["selected"]) == SHANNON
    assert report["checks"]["wavelet_set"] is True


def test_reports_are_byte_identical():
    for argv in (["orbit", "--example", "mix", "--xi", "1/2√2"], ["measure-match", "--example", "mix"]):
        assert call(*argv)[1] == call(*argv)[1]


def test_input_file(tmp_path):
    path = tmp_path / "e.json"
    path.write_text(json.dumps(JOURNE.to_dict()))
    assert call("verify-set", "--input", str(path))[0] == 0
    path.write_text("{not json")
    assert call("verify-set", "--input", str(path))[0] == 2


def test_matrix_input(tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"matrix": [["1/2", "1/2"], ["1/2", "1/2"]]}))
    code, text = call("diagonal", "--input", str(path))
    assert code == 0
    assert json.loads(text)["all_diagonals"] == [[0, 1], [1, 0]]


def test_text_report():
    code, text = call("verify-set", "--example", "shannon", "--report", "text")
    assert code == 0
    assert "is_wavelet_set: True" in text


@pytest.mark.parametrize("obj", [
    SHANNON,
    StepFunction.indicator(JOURNE, 3),
    ComplexProfile.indicator(SHANNON, 0, 1),
    [load_fixture("paper-X")[0]],
])
def test_serialization_round_trip(obj):
    once = formats.dumps(formats.encode(obj))
    back = formats.decode(json.loads(once))
    assert back == obj
    assert formats.dumps(formats.encode(back)) == once


def test_fixtures():
    for name in FIXTURE_NAMES:
        load_fixture(name)
    with pytest.raises(UnknownFixture):
        load_fixture("nope")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "wavetile", "verify-set", "--example", "shannon"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["is_wavelet_set"] is True
