"""Command-line front end.

Every command builds a :class:`JobSpec`, hands it to :func:`run` and exits with the
code it returns: 0 success (or decided nilpotent), 1 decided not nilpotent, 2 usage
or parse error.
"""

from pathlib import Path
from typing import Annotated, Any, List, Optional

import typer
from pydantic import ValidationError

from .config import JobSpec, load_config
from .logging_utils import configure_logging, log_err
from .run import EXIT_USAGE, run

app = typer.Typer(
    add_completion=False,
    no_args_is_help=True,
    help="Supertropical max-plus Lie algebra engine: nilpotency, triangularization, certificates.",
)

InputArg = Annotated[Path, typer.Argument(help="System or matrix JSON document.")]
FormatOpt = Annotated[Optional[str], typer.Option("--format", "-f", help="Report format: human or json.")]
MaxDepthOpt = Annotated[Optional[int], typer.Option("--max-depth", help="Deepest lower central series level.")]
CapOpt = Annotated[Optional[int], typer.Option("--cap", help="Most generators allowed per series level.")]
SeedOpt = Annotated[Optional[int], typer.Option("--seed", help="Random seed for selftest.")]
OutputOpt = Annotated[Optional[Path], typer.Option("--output", "-o", help="Write the report here instead of stdout.")]
ConfigOpt = Annotated[Optional[Path], typer.Option("--config", "-c", help="EngineConfig JSON file.")]
MaxPlusOpt = Annotated[Optional[bool], typer.Option("--max-plus/--supertropical", help="Reject ghost parts in input.")]
VerboseOpt = Annotated[int, typer.Option("--verbose", "-v", count=True, help="-v for INFO, -vv for DEBUG logs on stderr.")]


def _execute(
    command: str,
    inputs: List[Path],
    *,
    format: Optional[str],
    config_path: Optional[Path],
    verbose: int,
    max_plus: Optional[bool] = None,
    max_depth: Optional[int] = None,
    cap: Optional[int] = None,
    seed: Optional[int] = None,
    output: Optional[Path] = None,
    k: int = 2,
) -> None:
    try:
        config = load_config(config_path)
    except (FileNotFoundError, ValueError) as e:
        log_err(f"error: {e}")
        raise typer.Exit(EXIT_USAGE)

    level = config.log_level
    if verbose == 1:
        level = "INFO"
    elif verbose >= 2:
        level = "DEBUG"
    configure_logging(level)

    def pick(flag: Optional[Any], default: Any) -> Any:
        return default if flag is None else flag

    try:
        job = JobSpec(
            command=command,
            inputs=inputs,
            format=pick(format, config.format),
            max_depth=pick(max_depth, config.max_depth),
            cap=pick(cap, config.cap),
            seed=pick(seed, config.seed),
            max_plus=pick(max_plus, config.max_plus),
            output=output,
            k=k,
            selftest=config.selftest,
        )
    except ValidationError as e:
        log_err(f"error: invalid options: {e.errors()[0]['msg']}")
        raise typer.Exit(EXIT_USAGE)

    code, report = run(job)
    if report:
        if job.output is not None:
            try:
                job.output.write_text(report, encoding="utf-8")
            except OSError as e:
                log_err(f"error: cannot write report: {e}")
                raise typer.Exit(EXIT_USAGE)
        else:
            typer.echo(report, nl=False)
    raise typer.Exit(code)


@app.command()
def check(
    input: InputArg,
    format: FormatOpt = None,
    max_plus: MaxPlusOpt = None,
    output: OutputOpt = None,
    config: ConfigOpt = None,
    verbose: VerboseOpt = 0,
) -> None:
    """Decide nilpotency: prints NILPOTENT (exit 0) or NOT_NILPOTENT (exit 1)."""
    _execute("check", [input], format=format, max_plus=max_plus, output=output, config_path=config, verbose=verbose)


@app.command()
def triangularize(
    input: InputArg,
    format: FormatOpt = None,
    max_plus: MaxPlusOpt = None,
    output: OutputOpt = None,
    config: ConfigOpt = None,
    verbose: VerboseOpt = 0,
) -> None:
    """Print the triangularizing permutation and the relabeled generators."""
    _execute("triangularize", [input], format=format, max_plus=max_plus, output=output, config_path=config, verbose=verbose)


@app.command()
def certificate(
    input: InputArg,
    format: FormatOpt = None,
    max_plus: MaxPlusOpt = None,
    output: OutputOpt = None,
    config: ConfigOpt = None,
    verbose: VerboseOpt = 0,
) -> None:
    """Print a bracket word whose value is a non-nilpotent element, if one exists."""
    _execute("certificate", [input], format=format, max_plus=max_plus, output=output, config_path=config, verbose=verbose)


@app.command()
def lcs(
    input: InputArg,
    format: FormatOpt = None,
    max_depth: MaxDepthOpt = None,
    cap: CapOpt = None,
    max_plus: MaxPlusOpt = None,
    output: OutputOpt = None,
    config: ConfigOpt = None,
    verbose: VerboseOpt = 0,
) -> None:
    """Lower central series: generator count per level and the nilpotency index."""
    _execute(
        "lcs", [input], format=format, max_depth=max_depth, cap=cap, max_plus=max_plus,
        output=output, config_path=config, verbose=verbose,
    )


@app.command()
def spectrum(
    input: InputArg,
    format: FormatOpt = None,
    max_plus: MaxPlusOpt = None,
    output: OutputOpt = None,
    config: ConfigOpt = None,
    verbose: VerboseOpt = 0,
) -> None:
    """Maximum cycle mean of each matrix (eps exactly when nilpotent)."""
    _execute("spectrum", [input], format=format, max_plus=max_plus, output=output, config_path=config, verbose=verbose)


@app.command("bracket")
def bracket_command(
    inputs: Annotated[List[Path], typer.Argument(help="One system with two generators, or two matrix files.")],
    format: FormatOpt = None,
    max_plus: MaxPlusOpt = None,
    output: OutputOpt = None,
    config: ConfigOpt = None,
    verbose: VerboseOpt = 0,
) -> None:
    """[A, B] = AB ⊕ BA."""
    _execute("bracket", inputs, format=format, max_plus=max_plus, output=output, config_path=config, verbose=verbose)


@app.command()
def power(
    input: InputArg,
    k: Annotated[int, typer.Option("--k", "-k", help="Exponent, at least 1.")] = 2,
    format: FormatOpt = None,
    max_plus: MaxPlusOpt = None,
    output: OutputOpt = None,
    config: ConfigOpt = None,
    verbose: VerboseOpt = 0,
) -> None:
    """A^k."""
    _execute("power", [input], k=k, format=format, max_plus=max_plus, output=output, config_path=config, verbose=verbose)


@app.command()
def selftest(
    format: FormatOpt = None,
    seed: SeedOpt = None,
    cap: CapOpt = None,
    max_depth: MaxDepthOpt = None,
    output: OutputOpt = None,
    config: ConfigOpt = None,
    verbose: VerboseOpt = 0,
) -> None:
    """Run the randomized property suites with a fixed seed; exit 1 on any failure."""
    _execute(
        "selftest", [], format=format, seed=seed, cap=cap, max_depth=max_depth,
        output=output, config_path=config, verbose=verbose,
    )


def main() -> None:
    app()


if __name__ == "__main__":
    main()
