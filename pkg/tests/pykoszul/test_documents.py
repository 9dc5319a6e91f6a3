import logging

import pytest
from parametrization import Parametrization

from pykoszul.algebra_objects.configurations import Configurations
from pykoszul.algebra_objects.errors import JobParseError, UnknownJobError, ValidationError
from pykoszul.documents import TomlDumper, load_document, parse_job, render_job
from pykoszul.jobs.complexes import Convolve
from pykoszul.jobs.hilbert import Hilbert
from pykoszul.jobs.inputs import ComplexInput, MapInput, ModuleInput


def test_parse_job():
    job = parse_job('command = "hilbert"\nweights = [1, 2]\nrange = [0, 3]\n')

    assert job == Hilbert(weights=[1, 2], degrees=(0, 3), configurations=Configurations())


def test_parse_job_ignores_command_case():
    assert isinstance(parse_job('command = "HILBERT"\nweights = [1]\n'), Hilbert)


@Parametrization.autodetect_parameters()
@Parametrization.case(
    name="module",
    job=Hilbert(
        weights=[1, 2],
        degrees=(0, 3),
        module=ModuleInput([0, 1], relations=[["x0", "x1^2"], ["0", "x0"]]),
        configurations=Configurations(),
    ),
)
@Parametrization.case(
    name="relations",
    job=Hilbert(weights=[1, 1, 1], relations=["x0^3 + x1^3 + x2^3"], configurations=Configurations()),
)
@Parametrization.case(
    name="nested_lists",
    job=Convolve(
        weights=[1, 1],
        complexes=[ComplexInput([[0]]), ComplexInput([[1, 1]], low=-1)],
        maps=[MapInput([[["x0", "x1"]]])],
        side="left",
        hom_window=(-1, 1),
        configurations=Configurations(),
    ),
)
def test_render_then_parse(job):
    assert parse_job(render_job(job)) == job


def test_render_job():
    job = Hilbert(
        weights=[1, 2], degrees=(0, 3), module=ModuleInput([0], relations=[["x0"]]), configurations=Configurations()
    )

    assert render_job(job) == (
        'command = "hilbert"\n'
        "weights = [1, 2]\n"
        "range = [0, 3]\n"
        "relations = []\n"
        "\n"
        "[module]\n"
        "generators = [0]\n"
        'relations = [["x0"]]\n'
        "relation_degrees = []\n"
        "twist = 0\n"
    )


def test_toml_dumper_quotes_keys():
    dumper = TomlDumper()

    assert dumper.dump({"max j_0": {"a b": True}}) == '\n["max j_0"]\n"a b" = true\n'


def test_load_document_reports_position():
    with pytest.raises(JobParseError) as e:
        load_document('command = "hilbert"\nweights = [1, 2\nk = 0\n')

    assert e.value.line is not None
    assert e.value.line >= 2
    assert "line" in e.value.message


@Parametrization.autodetect_parameters()
@Parametrization.case(name="missing_command", text="weights = [1]\n", message="command required")
@Parametrization.case(name="command_not_string", text="command = 3\n", message="command must be a string")
@Parametrization.case(name="missing_weights", text='command = "cohomology"\nk = 0\n', message="weights required")
@Parametrization.case(
    name="unknown_key", text='command = "hilbert"\nweights = [1]\ncolour = "red"\n', message="unknown key 'colour'"
)
@Parametrization.case(
    name="options_not_table",
    text='command = "hilbert"\nweights = [1]\noptions = 3\n',
    message="options must be a table",
)
@Parametrization.case(
    name="unknown_option",
    text='command = "hilbert"\nweights = [1]\n[options]\ncolour = "red"\n',
    message="unknown option 'colour'",
)
def test_parse_job__failure(text, message):
    with pytest.raises(ValidationError, match=message):
        parse_job(text)


def test_parse_job_unknown_command():
    with pytest.raises(UnknownJobError, match="unknown command 'nope'") as e:
        parse_job('command = "nope"\n')

    assert e.value.command == "nope"


def test_options_feed_configurations():
    configurations = Configurations()

    job = parse_job(
        'command = "hilbert"\nweights = [1]\n[options]\nwindow = "1..2"\nmax-m = 3\n', configurations
    )

    assert (configurations.window, configurations.max_m) == ((1, 2), 3)
    assert job.configurations is configurations


def test_overrides_win_over_options():
    configurations = Configurations()

    parse_job(
        'command = "hilbert"\nweights = [1]\n[options]\nwindow = [1, 2]\n', configurations, {"window": "0..5"}
    )

    assert configurations.window == (0, 5)


def test_lenient_options_warn_about_unknown_keys(caplog):
    with caplog.at_level(logging.WARNING):
        job = parse_job('command = "hilbert"\nweights = [1]\ncolour = "red"\n[options]\nstrict = false\n')

    assert job == Hilbert(weights=[1], configurations=Configurations())
    assert "colour" in caplog.text
