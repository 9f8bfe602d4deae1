from __future__ import annotations

import dataclasses
import sys
from collections.abc import Sequence
from pathlib import Path

import numpy as np
from piou import Cli, Option
from piou.tui import TuiContext, TuiOption
from rich.markup import escape
from rich.table import Table

from .bargmann import QuadratureSpec
from .cone import FourMomentum
from .config import RunConfig, config_hash
from .errors import ConfigurationError, TwoProjError, VerificationFailed
from .evolution import centroid_momentum, run_snapshots
from .output import Provenance, write_csv, write_json
from .reports import (
    ORACLES,
    TOEPLITZ_SYMBOLS,
    algebra_rows,
    asymptotic_rows,
    boost_rows,
    histogram_rows,
    lambda_rows,
    mu_rows,
    oscillator_deviation,
    snapshot_rows,
    toeplitz_rows,
)
from .spectrum import default_table, energy_range, finite_section, spectrum_range
from .utils import console, parse_floats, parse_range, parse_xi, resolve_output_dir, setup_logging
from .verify import REPORT_COLUMNS, format_check, format_report_table, run_suite
from .widgets import CheckResultWidget

CUSTOM_CSS = """
Static {
    padding: 0 1;
}
"""

cli = Cli(description="Two-projection relativistic quantization numerics")


def _load_config(config: str | None, seed: int | None) -> RunConfig:
    run_config = RunConfig.from_file(config) if config else RunConfig()
    if seed is not None:
        run_config = dataclasses.replace(run_config, seed=seed)
    return run_config


def _output_dir(run_config: RunConfig, output: str | None) -> Path:
    return resolve_output_dir(output or run_config.output_dir)


def _summary(title: str, items: dict[str, object]) -> None:
    table = Table(title=title)
    table.add_column("Quantity", style="cyan")
    table.add_column("Value", style="green", justify="right")
    for key, value in items.items():
        table.add_row(key, f"{value:.6g}" if isinstance(value, float) else str(value))
    console.print(table)


@cli.command("algebra", help="Two-projection representation matrices and spin classes")
def algebra_cmd(
    p: str = Option("0,0.5,1", "--p", help="Comma-separated spin parameters in [0, 1]"),
    word: str | None = Option(None, "-w", "--word", help="Also evaluate a word over Q and R"),
    config: str | None = Option(None, "-c", "--config", help="JSON run config"),
    output: str | None = Option(None, "-o", "--output", help="Output directory"),
) -> None:
    """Write algebra.csv with phi(P_Q), phi(P_Q) + phi(P_R) and the spin class per p."""
    run_config = _load_config(config, None)
    ps = parse_floats(p)
    if not ps:
        raise ConfigurationError("--p needs at least one value")
    columns, rows = algebra_rows(ps, word)
    provenance = Provenance(run_config, "algebra", {"p": ps, "word": word})
    path = write_csv(_output_dir(run_config, output) / "algebra.csv", columns, rows, provenance)

    table = Table(title="Spin classification")
    table.add_column("p", justify="right")
    table.add_column("Class", style="cyan")
    table.add_column("Dim", justify="right")
    table.add_column("Reducible")
    table.add_column("[Q, R]", justify="right")
    index = {name: k for k, name in enumerate(columns)}
    for row in rows:
        table.add_row(
            f"{row[0]:g}",
            row[index["spin_class"]],
            str(row[index["dimension"]]),
            str(row[index["reducible"]]),
            f"{row[index['commutator_norm']]:.3e}",
        )
    console.print(table)
    console.print(f"[green]Wrote {path}[/green]")


@cli.command("toeplitz", help="Berezin-Toeplitz matrix of a polynomial symbol")
def toeplitz_cmd(
    n: int = Option(1, "-n", "--n", help="Number of complex variables"),
    cap: int = Option(3, "--cap", help="Maximum total degree of the basis"),
    symbol: str = Option(
        "oscillator", "-s", "--symbol", help="Symbol to quantize", choices=list(TOEPLITZ_SYMBOLS)
    ),
    j: int = Option(0, "-j", "--j", help="Variable index for creation/annihilation"),
    config: str | None = Option(None, "-c", "--config", help="JSON run config"),
    output: str | None = Option(None, "-o", "--output", help="Output directory"),
) -> None:
    """Write toeplitz.csv with the matrix entries (row, col, re, im)."""
    run_config = _load_config(config, None)
    (columns, rows), matrix = toeplitz_rows(n, cap, symbol, j)
    provenance = Provenance(run_config, "toeplitz", {"n": n, "cap": cap, "symbol": symbol, "j": j})
    path = write_csv(_output_dir(run_config, output) / "toeplitz.csv", columns, rows, provenance)

    items: dict[str, object] = {
        "basis size": len(matrix.basis),
        "hermitian defect": matrix.hermitian_defect(),
    }
    if symbol == "oscillator":
        items["deviation from n + |a|"] = oscillator_deviation(matrix)
    _summary(f"Toeplitz matrix of {symbol}", items)
    console.print(f"[green]Wrote {path}[/green]")


def _radial_command(
    name: str,
    s: str,
    rho: str,
    oracle: str,
    samples: int,
    nodes: int,
    config: str | None,
    seed: int | None,
    output: str | None,
) -> None:
    run_config = _load_config(config, seed)
    s_values, rho_values = parse_range(s), parse_range(rho)
    build = lambda_rows if name == "lambda" else mu_rows
    columns, rows = build(
        s_values,
        rho_values,
        run_config.cone_config(),
        run_config.quad_params(),
        oracle,
        samples,
        nodes,
        run_config.seed,
    )
    arguments = {"s": s, "rho": rho, "oracle": oracle, "samples": samples, "nodes": nodes}
    provenance = Provenance(run_config, name, arguments)
    path = write_csv(_output_dir(run_config, output) / f"{name}.csv", columns, rows, provenance)

    values = np.array([row[columns.index(name)] for row in rows])
    _summary(
        name,
        {"points": len(rows), "min": float(values.min()), "max": float(values.max())},
    )
    console.print(f"[green]Wrote {path}[/green]")


@cli.command("lambda", help="Cone symbol lambda on an (s, rho) grid")
def lambda_cmd(
    s: str = Option("-4:4:1", "--s", help="xi_0 values as min:max:step"),
    rho: str = Option("0:4:1", "--rho", help="|xi| values as min:max:step"),
    oracle: str = Option("none", "--oracle", help="Reference integrator", choices=list(ORACLES)),
    samples: int = Option(1_000_000, "--samples", help="Monte Carlo samples"),
    nodes: int = Option(32, "--nodes", help="Tensor-grid nodes per axis"),
    config: str | None = Option(None, "-c", "--config", help="JSON run config"),
    seed: int | None = Option(None, "--seed", help="Override the config seed"),
    output: str | None = Option(None, "-o", "--output", help="Output directory"),
) -> None:
    """Write lambda.csv, optionally with an oracle column for comparison."""
    _radial_command("lambda", s, rho, oracle, samples, nodes, config, seed, output)


@cli.command("mu", help="Smeared cone indicator mu on an (s, rho) grid")
def mu_cmd(
    s: str = Option("-4:4:1", "--s", help="xi_0 values as min:max:step"),
    rho: str = Option("0:4:1", "--rho", help="|xi| values as min:max:step"),
    oracle: str = Option("none", "--oracle", help="Reference integrator", choices=list(ORACLES)),
    samples: int = Option(1_000_000, "--samples", help="Monte Carlo samples"),
    nodes: int = Option(32, "--nodes", help="Tensor-grid nodes per axis"),
    config: str | None = Option(None, "-c", "--config", help="JSON run config"),
    seed: int | None = Option(None, "--seed", help="Override the config seed"),
    output: str | None = Option(None, "-o", "--output", help="Output directory"),
) -> None:
    """Write mu.csv with mu and 1 - mu, each integrated directly."""
    _radial_command("mu", s, rho, oracle, samples, nodes, config, seed, output)


@cli.command("asymptotics", help="Convergence of lambda(t xi) / t^2 to the leading term")
def asymptotics_cmd(
    xi: str = Option("2,1,0,0", "--xi", help="Direction inside the cone"),
    t: str = Option("2,4,8,16", "-t", "--t", help="Increasing scale factors"),
    rapidity: str | None = Option(None, "--rapidity", help="Also report boost deviations"),
    config: str | None = Option(None, "-c", "--config", help="JSON run config"),
    output: str | None = Option(None, "-o", "--output", help="Output directory"),
) -> None:
    """Write asymptotics.csv, and boost.csv when rapidities are given."""
    run_config = _load_config(config, None)
    direction = FourMomentum(parse_xi(xi))
    cfg, qp = run_config.cone_config(), run_config.quad_params()
    out_dir = _output_dir(run_config, output)
    arguments = {"xi": list(direction.xi), "t": parse_floats(t), "rapidity": rapidity}
    provenance = Provenance(run_config, "asymptotics", arguments)

    columns, rows = asymptotic_rows(direction, parse_floats(t), cfg, qp)
    path = write_csv(out_dir / "asymptotics.csv", columns, rows, provenance)

    table = Table(title=f"lambda(t xi) / t^2 for xi = {direction.xi}")
    for column in columns:
        table.add_column(column, justify="right")
    for row in rows:
        table.add_row(*(f"{v:.6g}" for v in row))
    console.print(table)
    console.print(f"[green]Wrote {path}[/green]")

    if rapidity:
        columns, rows = boost_rows(direction, parse_floats(rapidity), cfg, qp)
        path = write_csv(out_dir / "boost.csv", columns, rows, provenance)
        console.print(f"[green]Wrote {path}[/green]")


@cli.command("spectrum", help="Spectrum of (P_Q - P_R)^2 on the Fock space")
def spectrum_cmd(
    sizes: str = Option("4,16,64", "--sizes", help="Finite section sizes"),
    rho0: float = Option(0.0, "--rho0", help="Slice rho = rho0 for the finite sections"),
    bins: int = Option(64, "--bins", help="Coverage histogram bins on [0, 1]"),
    nodes: int = Option(192, "--nodes", help="Gauss-Hermite nodes shared by all sections"),
    config: str | None = Option(None, "-c", "--config", help="JSON run config"),
    output: str | None = Option(None, "-o", "--output", help="Output directory"),
) -> None:
    """Write spectrum.json, spectrum_histogram.csv and spectrum_sections.csv."""
    run_config = _load_config(config, None)
    cfg, qp = run_config.cone_config(), run_config.quad_params()
    table = default_table(cfg, qp)
    report = spectrum_range(table, bins=bins)
    quad = QuadratureSpec(nodes)
    size_list = [int(v) for v in parse_floats(sizes)]
    sections = [finite_section(n, rho0, table, quad, qp) for n in size_list]
    low, high = energy_range(table)

    out_dir = _output_dir(run_config, output)
    arguments = {"sizes": size_list, "rho0": rho0, "bins": bins, "nodes": nodes}
    provenance = Provenance(run_config, "spectrum", arguments)
    payload = {
        "range": {
            "observed_min": report.observed_min,
            "observed_max": report.observed_max,
            "max_gap": report.max_gap,
            "samples": report.samples,
            "empty_bins": report.empty_bins,
            "histogram": report.coverage_histogram,
            "bin_edges": report.bin_edges,
        },
        "energy_range": [low, high],
        "sections": [
            {"size": sec.size, "min": float(sec.eigenvalues[0]), "max": float(sec.eigenvalues[-1])}
            for sec in sections
        ],
    }
    json_path = write_json(out_dir / "spectrum.json", payload, provenance)
    columns, rows = histogram_rows(report)
    histogram_path = write_csv(out_dir / "spectrum_histogram.csv", columns, rows, provenance)
    rows = [[sec.size, k, float(v)] for sec in sections for k, v in enumerate(sec.eigenvalues)]
    csv_path = write_csv(
        out_dir / "spectrum_sections.csv", ["size", "index", "eigenvalue"], rows, provenance
    )

    summary = Table(title="Spectrum of 1 - mu")
    summary.add_column("Section N", justify="right", style="cyan")
    summary.add_column("Min eigenvalue", justify="right")
    summary.add_column("Max eigenvalue", justify="right")
    for sec in sections:
        summary.add_row(str(sec.size), f"{sec.eigenvalues[0]:.3e}", f"{sec.eigenvalues[-1]:.6f}")
    summary.add_section()
    summary.add_row("sampled", f"{report.observed_min:.3e}", f"{report.observed_max:.6f}")
    console.print(summary)
    console.print(f"[green]Wrote {json_path}, {histogram_path} and {csv_path}[/green]")


@cli.command("evolve", help="Evolve a Gaussian packet under H_S = lambda(xi) I")
def evolve_cmd(
    config: str | None = Option(None, "-c", "--config", help="JSON run config"),
    direct: bool = Option(False, "--direct", help="Evaluate lambda per node, no table"),
    approximate: bool = Option(False, "--approximate", help="Use chi_R q / (4 m c)"),
    no_cone: bool = Option(False, "--no-cone", help="Drop chi_R from the approximation"),
    output: str | None = Option(None, "-o", "--output", help="Output directory"),
) -> None:
    """Write one snapshot_NNN.csv per tau and evolve_summary.json."""
    run_config = _load_config(config, None)
    if direct and approximate:
        raise ConfigurationError("--direct and --approximate are mutually exclusive")
    settings = run_config.evolve
    if direct:
        settings = dataclasses.replace(settings, symbol="direct")
    elif approximate:
        settings = dataclasses.replace(settings, symbol="approximate")
    if no_cone:
        settings = dataclasses.replace(settings, include_cone=False)
    run_config = dataclasses.replace(run_config, evolve=settings)

    packet = run_config.initial_packet()
    snapshots = run_snapshots(
        packet, run_config.symbol(), run_config.cone_config(), run_config.evolve.taus
    )

    out_dir = _output_dir(run_config, output)
    provenance = Provenance(run_config, "evolve")
    files = []
    for k, snapshot in enumerate(snapshots):
        columns, rows = snapshot_rows(snapshot)
        path = write_csv(out_dir / f"snapshot_{k:03d}.csv", columns, rows, provenance)
        files.append(path.name)
    payload = {
        "center_momentum": centroid_momentum(packet),
        "snapshots": [
            {
                "tau": snap.tau,
                "file": name,
                "norm": snap.norm,
                "expectations": snap.expectations,
                "centroid_position": snap.centroid,
            }
            for snap, name in zip(snapshots, files)
        ],
    }
    summary_path = write_json(out_dir / "evolve_summary.json", payload, provenance)

    table = Table(title=f"Evolution ({run_config.evolve.symbol} symbol)")
    table.add_column("tau", justify="right", style="cyan")
    table.add_column("norm", justify="right")
    table.add_column("<lambda>", justify="right")
    table.add_column("centroid", justify="right")
    for snap in snapshots:
        table.add_row(
            f"{snap.tau:g}",
            f"{snap.norm:.12f}",
            f"{snap.expectations['lambda']:.6g}",
            ", ".join(f"{x:.4f}" for x in snap.centroid),
        )
    console.print(table)
    console.print(f"[green]Wrote {len(files)} snapshots and {summary_path}[/green]")


@cli.command("verify", help="Run the acceptance suite")
def verify_cmd(
    config: str | None = Option(None, "-c", "--config", help="JSON run config"),
    group: str | None = Option(None, "-g", "--group", help="Comma-separated check groups"),
    seed: int | None = Option(None, "--seed", help="Override the config seed"),
    output: str | None = Option(None, "-o", "--output", help="Output directory"),
    ctx: TuiContext = TuiOption(),
) -> None:
    """Run every check, write verify.csv and fail with exit code 1 on any failure."""
    run_config = _load_config(config, seed)
    groups = [g.strip() for g in group.split(",") if g.strip()] if group else None
    console.print(f"Running verification (config {config_hash(run_config)[:12]})")
    report = run_suite(run_config, groups, on_result=None if ctx.is_tui else format_check)

    provenance = Provenance(run_config, "verify", {"groups": groups})
    path = write_csv(
        _output_dir(run_config, output) / "verify.csv", REPORT_COLUMNS, report.rows(), provenance
    )
    if ctx.is_tui:
        ctx.mount_widget(CheckResultWidget(report))
    else:
        console.print(format_report_table(report))
    console.print(f"[green]Wrote {path}[/green]")
    if not report.all_passed:
        raise VerificationFailed(report.failed)


def run(argv: Sequence[str] | None = None) -> int:
    """Run one command and map the outcome to an exit code (0 ok, 1 failed verify, 2 error)."""
    args = list(sys.argv[1:] if argv is None else argv)
    setup_logging()
    try:
        cli.run_with_args(*args)
    except VerificationFailed as exc:
        console.print(f"[red]Verification failed: {escape(str(exc))}[/red]")
        return 1
    except TwoProjError as exc:
        console.print(f"[red]Error: {escape(str(exc))}[/red]")
        return 2
    except SystemExit as exc:
        if exc.code is None:
            return 0
        return exc.code if isinstance(exc.code, int) else 2
    except Exception as exc:
        if not _is_argument_error(exc):
            raise
        console.print(f"[red]Error: {escape(str(exc))}[/red]")
        return 2
    return 0


def _is_argument_error(exc: BaseException) -> bool:
    """Exceptions defined by piou itself: unknown commands, missing or unexpected parameters."""
    module = type(exc).__module__
    return module == "piou" or module.startswith("piou.")


def main() -> None:
    """Entry point for the CLI."""
    sys.exit(run())


def main_tui() -> None:
    """Entry point for the TUI CLI."""
    setup_logging()
    cli.tui = True
    cli.run(css=CUSTOM_CSS)


if __name__ == "__main__":
    main()
