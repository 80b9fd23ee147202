"""CLI interface for the sharpfront laboratory."""

from contextlib import contextmanager
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional
import logging

import typer
from rich.console import Console
from rich.panel import Panel
from rich.syntax import Syntax
from rich.table import Table

from ..checks import CheckResult
from ..config import Config
from ..errors import SharpFrontError
from ..laboratory import Laboratory

logger = logging.getLogger(__name__)

# Initialize Rich console and Typer app
console = Console()
app = typer.Typer(
    name="sharpfront",
    help="Sharp extinction/propagation thresholds for T_t = T_xx + f(T)",
    add_completion=False,
)

ConfigOption = typer.Option(None, "--config", "-c", help="YAML run configuration")
OutputOption = typer.Option(None, "--output-dir", "-o", help="Output root (default: $SHARPFRONT_OUTPUT_DIR or ./output)")
SetOption = typer.Option([], "--set", help="Override a config value, e.g. --set nonlinearity.a=0.3")


def _format(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.8g}"
    if isinstance(value, bool):
        return "[green]yes[/green]" if value else "[red]no[/red]"
    return str(value)


class LaboratoryCLI:
    """Option handling and result display for the laboratory commands."""

    def __init__(self):
        self.console = console

    @contextmanager
    def guarded(self):
        """Turn laboratory errors into a red message and the documented exit code."""
        try:
            yield
        except SharpFrontError as e:
            logger.error(f"{type(e).__name__}: {e}")
            self.console.print(f"❌ [red]{type(e).__name__}: {e}[/red]")
            raise typer.Exit(code=e.exit_code)

    def settings(self, config_file: Optional[Path], overrides: Iterable[str]) -> Config:
        return Config(config_file, overrides)

    def laboratory(self, config_file: Optional[Path], output_dir: Optional[Path], overrides: Iterable[str]) -> Laboratory:
        settings = self.settings(config_file, overrides)
        return Laboratory(settings.run_config(), output_dir or settings.output_dir)

    def display_summary(self, title: str, summary: Dict[str, Any], keys: Iterable[str]):
        """Display selected summary values in a two-column table."""
        table = Table(title=title, show_header=True, header_style="bold magenta")
        table.add_column("Quantity", style="dim")
        table.add_column("Value")
        for key in keys:
            value = summary.get(key)
            if isinstance(value, dict):
                for inner, inner_value in value.items():
                    if not isinstance(inner_value, (dict, list)):
                        table.add_row(f"{key}.{inner}", _format(inner_value))
            elif value is not None:
                table.add_row(key, _format(value))
        self.console.print(table)

    def display_trace(self, trace: List[Dict[str, Any]]):
        """Display the classified runs of a threshold search, sorted by L."""
        table = Table(title="Bisection trace", show_header=True, header_style="bold magenta")
        table.add_column("L", justify="right")
        table.add_column("Outcome")
        table.add_column("Side", justify="right")
        table.add_column("Horizon", justify="right")
        for entry in sorted(trace, key=lambda item: item["L"]):
            outcome = entry["outcome"]
            if entry["flagged"]:
                outcome = f"[yellow]{outcome} (flagged)[/yellow]"
            table.add_row(f"{entry['L']:.8f}", outcome, f"{entry['side']:+d}", f"{entry['horizon']:g}")
        self.console.print(table)

    def display_checks(self, results: List[CheckResult]):
        table = Table(title="Invariant checks", show_header=True, header_style="bold magenta")
        table.add_column("Check", style="dim")
        table.add_column("Status", width=10)
        table.add_column("Details")
        for result in results:
            status = "[green]✅ ok[/green]" if result.passed else "[red]❌ failed[/red]"
            table.add_row(result.name, status, result.detail)
        self.console.print(table)

    def display_rows(self, title: str, columns: List[str], rows: List[List[float]]):
        table = Table(title=title, show_header=True, header_style="bold magenta")
        for column in columns:
            table.add_column(column, justify="right")
        for row in rows:
            table.add_row(*(_format(float(value)) for value in row))
        self.console.print(table)

    def done(self, lab: Laboratory, command: str):
        self.console.print(f"✅ [green]{command} finished[/green], artifacts in {lab.output_dir / command}")


# Global CLI instance
cli = LaboratoryCLI()


@app.command()
def simulate(
    config_file: Optional[Path] = ConfigOption,
    output_dir: Optional[Path] = OutputOption,
    overrides: List[str] = SetOption,
):
    """Evolve indicator data and write snapshots and probe series."""
    with cli.guarded():
        lab = cli.laboratory(config_file, output_dir, overrides)
        with console.status("[bold blue]Simulating...", spinner="dots"):
            summary = lab.simulate()
    cli.display_summary("Simulation", summary, ("L", "alpha", "dt", "t_final", "sup_norm", "midpoint", "mass", "outcome"))
    cli.done(lab, "simulate")


@app.command()
def threshold(
    config_file: Optional[Path] = ConfigOption,
    output_dir: Optional[Path] = OutputOption,
    overrides: List[str] = SetOption,
    L_min: Optional[float] = typer.Option(None, "--L-min", help="Lower end of the L bracket"),
    L_max: Optional[float] = typer.Option(None, "--L-max", help="Upper end of the L bracket"),
    gap_tol: Optional[float] = typer.Option(None, "--gap-tol", help="Stop once L_hi - L_lo is below this"),
    t_max: Optional[float] = typer.Option(None, "--t-max", help="Horizon of each classified run"),
    alpha: Optional[float] = typer.Option(None, "--alpha", help="Amplitude of the initial indicator"),
):
    """Bisect for the critical half-width L0."""
    flags = {"L_min": L_min, "L_max": L_max, "gap_tol": gap_tol, "t_max": t_max, "alpha": alpha}
    overrides = list(overrides) + [f"threshold.{key}={value!r}" for key, value in flags.items() if value is not None]
    with cli.guarded():
        lab = cli.laboratory(config_file, output_dir, overrides)
        with console.status("[bold blue]Bisecting on L...", spinner="dots"):
            summary = lab.threshold()
    cli.display_trace(summary["trace"])
    cli.display_summary(
        "Threshold", summary, ("L_lo", "L_hi", "L0_estimate", "sharpness_gap", "iterations", "hair_trigger")
    )
    cli.done(lab, "threshold")


@app.command()
def bump(
    config_file: Optional[Path] = ConfigOption,
    output_dir: Optional[Path] = OutputOption,
    overrides: List[str] = SetOption,
):
    """Compute the stationary bump with crest theta2."""
    with cli.guarded():
        lab = cli.laboratory(config_file, output_dir, overrides)
        summary = lab.bump()
    cli.display_summary("Bump", summary, ("theta2", "x_end", "decay_rate", "residual", "energy_defect"))
    shape = summary["bell_shape"]
    if not shape["ok"]:
        console.print(Panel("\n".join(shape["problems"]), title="Bell shape", border_style="yellow"))
    cli.done(lab, "bump")


@app.command()
def front(
    config_file: Optional[Path] = ConfigOption,
    output_dir: Optional[Path] = OutputOption,
    overrides: List[str] = SetOption,
):
    """Compute the traveling front speed and profile."""
    with cli.guarded():
        lab = cli.laboratory(config_file, output_dir, overrides)
        summary = lab.front()
    cli.display_summary("Front", summary, ("speed", "integral", "shoot_residual", "iterations"))
    cli.done(lab, "front")


@app.command("lemma22")
def lemma22(
    config_file: Optional[Path] = ConfigOption,
    output_dir: Optional[Path] = OutputOption,
    overrides: List[str] = SetOption,
):
    """Check domination, the ratio witness and the continuity bound."""
    with cli.guarded():
        lab = cli.laboratory(config_file, output_dir, overrides)
        with console.status("[bold blue]Co-evolving T and S...", spinner="dots"):
            summary = lab.compare()
    cli.display_summary("Comparison checks", summary, ("domination", "ratio_witness", "continuity"))
    cli.done(lab, "lemma22")


# short alias, same section and artifacts
app.command("compare", hidden=True)(lemma22)


@app.command()
def sweep(
    config_file: Optional[Path] = ConfigOption,
    output_dir: Optional[Path] = OutputOption,
    overrides: List[str] = SetOption,
    jobs: Optional[int] = typer.Option(None, "--jobs", "-j", min=1, help="Parallel cells"),
):
    """Repeat threshold, front or bump over a list of parameter values."""
    with cli.guarded():
        lab = cli.laboratory(config_file, output_dir, overrides)
        with console.status("[bold blue]Sweeping...", spinner="dots"):
            summary = lab.sweep(jobs)
    cli.display_rows("Sweep", summary["columns"], summary["rows"])
    for value, error in summary["errors"].items():
        console.print(f"⚠️  [yellow]{value}: {error}[/yellow]")
    cli.done(lab, "sweep")


@app.command()
def check(
    config_file: Optional[Path] = ConfigOption,
    output_dir: Optional[Path] = OutputOption,
    overrides: List[str] = SetOption,
):
    """Run the invariant suite on the configured reaction term."""
    with cli.guarded():
        lab = cli.laboratory(config_file, output_dir, overrides)
        with console.status("[bold blue]Running checks...", spinner="dots"):
            passed, results = lab.check()
    cli.display_checks(results)
    if not passed:
        console.print("❌ [red]some checks failed[/red]")
        raise typer.Exit(code=3)
    cli.done(lab, "check")


@app.command("show-config")
def show_config(
    config_file: Optional[Path] = ConfigOption,
    overrides: List[str] = SetOption,
):
    """Print the resolved configuration as YAML."""
    with cli.guarded():
        run = cli.settings(config_file, overrides).run_config()
    console.print(Syntax(run.emit(), "yaml"))


if __name__ == "__main__":
    app()
