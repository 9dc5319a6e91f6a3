import logging
import sys
from pathlib import Path

import typer

from pykoszul.runner import ExitCode, JobRunner

app = typer.Typer()


@app.command()
def main(
    job: Path | None = typer.Argument(None, help="job document, standard input when omitted or '-'"),
    output_format: str | None = typer.Option(None, "--format", help="human or machine"),
    window: str | None = typer.Option(None, help="degree window a..b"),
    max_m: int | None = None,
    max_degree: int | None = None,
    character_convention: str | None = typer.Option(None, help="chi or minus-chi"),
    n0: int | None = None,
    verbose: bool = False,
) -> None:
    if verbose:
        logging.basicConfig(level=logging.DEBUG, stream=sys.stderr)

    overrides = {
        "output_format": output_format,
        "window": window,
        "max_m": max_m,
        "max_degree": max_degree,
        "character_convention": character_convention,
        "n0": n0,
    }
    runner = JobRunner(sys.stdout, overrides={name: value for name, value in overrides.items() if value is not None})
    try:
        text = sys.stdin.read() if job is None or str(job) == "-" else job.read_text()
    except OSError as e:
        runner.dumper().dump_error("usage", str(e), output_format or "human")
        raise typer.Exit(code=int(ExitCode.USAGE))
    raise typer.Exit(code=int(runner.run(text)))


if __name__ == "__main__":
    app()
