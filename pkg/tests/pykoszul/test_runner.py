import io
import json
from unittest.mock import Mock, patch

from parametrization import Parametrization
from typer.testing import CliRunner

from pykoszul.__main__ import app
from pykoszul.runner import ExitCode, JobRunner

HILBERT = 'command = "hilbert"\nweights = [1, 2]\nrange = [0, 1]\n'


def test_run_human():
    stream = io.StringIO()

    assert JobRunner(stream).run(HILBERT) == ExitCode.OK
    assert stream.getvalue() == (
        "hilbert\n"
        "  weights  (1,2)\n"
        "  sigma    3\n"
        "\n"
        "algebra pieces\n"
        "d  dim A_d\n"
        "0        1\n"
        "1        1\n"
        "\n"
        "series PASS\n"
    )


def test_run_machine():
    stream = io.StringIO()

    assert JobRunner(stream, overrides={"output_format": "machine"}).run(HILBERT) == ExitCode.OK
    assert json.loads(stream.getvalue()) == {
        "command": "hilbert",
        "weights": [1, 2],
        "sigma": 3,
        "tables": [{"title": "algebra pieces", "columns": ["d", "dim A_d"], "rows": [[0, 1], [1, 1]]}],
        "verdict": "series PASS",
    }


def test_run_machine_is_deterministic():
    outputs = []
    for _ in range(2):
        stream = io.StringIO()
        JobRunner(stream, overrides={"output-format": "machine"}).run(HILBERT)
        outputs.append(stream.getvalue())

    assert outputs[0] == outputs[1]


def test_failed_check_still_exits_ok():
    stream = io.StringIO()
    text = 'command = "koszul-check"\nweights = [1, 1, 1]\nrelations = ["x0^3 + x1^3 + x2^3"]\nbounds = [3, 4]\n'

    assert JobRunner(stream).run(text) == ExitCode.OK
    assert stream.getvalue().endswith("\nFAIL at (m,k)=(1,3)\n")


@Parametrization.autodetect_parameters()
@Parametrization.case(
    name="unknown_command",
    text='command = "nope"\n',
    code=ExitCode.USAGE,
    expected="error: usage: unknown command 'nope'",
)
@Parametrization.case(name="malformed_toml", text="command = \n", code=ExitCode.USAGE, expected="error: parse: ")
@Parametrization.case(
    name="not_well_formed",
    text='command = "cohomology"\nweights = [2, 2]\nk = 0\n',
    code=ExitCode.VALIDATION,
    expected="error: validation: weights [2, 2] are not well formed",
)
@Parametrization.case(
    name="missing_parameter",
    text='command = "bott"\nweights = [1, 2]\n',
    code=ExitCode.VALIDATION,
    expected="error: validation: p required",
)
@Parametrization.case(
    name="vanishing_violated",
    text='command = "resolve-left"\nweights = [1, 1]\nrange = [0, 2]\n\n[module]\ngenerators = [1]\n',
    code=ExitCode.HYPOTHESIS,
    expected="error: hypothesis: vanishing violated",
)
@Parametrization.case(
    name="bound_exhausted",
    text='command = "diagonal-check"\nweights = [1, 1]\nrange = [0, 2]\n\n[module]\ngenerators = [0]\n\n'
    "[options]\nmax-m = 1\n",
    code=ExitCode.BOUND,
    expected="error: bound: bound exhausted",
)
def test_run__failure(text, code, expected):
    stream = io.StringIO()

    assert JobRunner(stream).run(text) == code
    assert stream.getvalue().startswith(expected)


def test_run_machine_error():
    stream = io.StringIO()

    assert JobRunner(stream, overrides={"output_format": "machine"}).run('command = "nope"\n') == ExitCode.USAGE
    assert json.loads(stream.getvalue()) == {"error": "usage", "message": "unknown command 'nope'"}


def test_cli(tmp_path):
    job = tmp_path / "hilbert.toml"
    job.write_text(HILBERT)

    result = CliRunner().invoke(app, [str(job), "--format", "machine", "--window", "0..1"])

    assert result.exit_code == 0
    assert json.loads(result.stdout)["verdict"] == "series PASS"


def test_cli_reads_standard_input():
    result = CliRunner().invoke(app, ["-"], input='command = "stabilizer-cover"\nweights = [2, 3]\n')

    assert result.exit_code == 0
    assert "max j_0  2" in result.stdout


def test_cli_missing_file(tmp_path):
    result = CliRunner().invoke(app, [str(tmp_path / "missing.toml")])

    assert result.exit_code == ExitCode.USAGE
    assert result.stdout.startswith("error: usage: ")


@Parametrization.autodetect_parameters()
@Parametrization.case(name="human", output_format="human", expected="error: internal: RuntimeError: lost a row\n")
@Parametrization.case(
    name="machine",
    output_format="machine",
    expected='{\n  "error": "internal",\n  "message": "RuntimeError: lost a row"\n}\n',
)
def test_run_internal_error(output_format, expected):
    stream = io.StringIO()
    job = Mock(spec_set=["execute"])
    job.execute.side_effect = RuntimeError("lost a row")

    with patch("pykoszul.runner.parse_job", return_value=job):
        code = JobRunner(stream, overrides={"output_format": output_format}).run(HILBERT)

    assert code == ExitCode.INTERNAL == 5
    assert stream.getvalue() == expected
