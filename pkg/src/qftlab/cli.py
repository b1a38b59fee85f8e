"""Command-line front end.

Subcommands: ``simulate``, ``preset``, ``theorems``, ``leakage``.
Exit status is 0 on success, 2 on bad input or config, 1 on anything else.
"""

from __future__ import annotations

import json
import logging
import os
import sys
import tempfile
from pathlib import Path

import click
import numpy as np

from .analysis import check_theorem1, leakage_scan
from .circuits import MAX_QUBITS
from .encoding import SignalSpec
from .errors import ConfigInvalid, QFTLabError
from .experiment import (
    OUTPUT_FORMATS,
    PRESETS,
    ExperimentConfig,
    pair_verdicts,
    render_histogram,
    run_experiment,
    run_preset,
    sig9,
)

log = logging.getLogger("qftlab")

CONFIG_KEYS = {"qubits", "signal", "shots", "seed", "out_dir", "format"}
STDOUT_FORMATS = ("text", "json", "csv")


def read_config_file(path: str | os.PathLike) -> dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    out: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if not sep or key not in CONFIG_KEYS:
            raise ConfigInvalid(key or f"line {lineno}", f"unrecognised config line {raw!r}")
        out[key] = value.strip()
    return out


def _parse_formats(text: str) -> tuple[str, ...]:
    fmts = tuple(f.strip() for f in text.split(",") if f.strip())
    bad = [f for f in fmts if f not in OUTPUT_FORMATS]
    if bad or not fmts:
        raise ConfigInvalid("format", f"unsupported {bad or text!r}; choose from {OUTPUT_FORMATS}")
    return fmts


def _as_int(field: str, value) -> int:
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ConfigInvalid(field, f"expected an integer, got {value!r}") from None


def atomic_write(path: Path, data: bytes) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def report_bytes(report, fmt: str) -> bytes:
    if fmt == "json":
        return report.to_json().encode()
    if fmt == "png":
        from .plotting import plot_histogram

        return plot_histogram(report)
    return render_histogram(report, fmt)


def emit(report, formats: tuple[str, ...], out_dir: str | None) -> None:
    if out_dir is None:
        unsupported = [f for f in formats if f not in STDOUT_FORMATS]
        if unsupported:
            raise ConfigInvalid("out_dir", f"formats {unsupported} need --out-dir")
        for fmt in formats:
            click.echo(report_bytes(report, fmt).decode(), nl=False)
        return
    for rep in (report, *report.parts):
        stem = rep.config.label
        for fmt in formats:
            path = Path(out_dir) / f"{stem}.{fmt if fmt != 'text' else 'txt'}"
            atomic_write(path, report_bytes(rep, fmt))
            log.info("wrote %s", path)
            click.echo(str(path))


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Log progress to stderr.")
def cli(verbose: bool):
    """Simulate QFT circuits and check their accuracy limits."""
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING, format="%(message)s")


@cli.command()
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), help="key = value file; flags override it.")
@click.option("--qubits", type=int, help="Register size (1-14).")
@click.option("--signal", help='Phase:amplitude pairs in bins, e.g. "3:1,5:2,7:4".')
@click.option("--shots", type=int, help="Shots to sample; 0 gives the exact distribution.")
@click.option("--seed", type=int, help="Sampling seed.")
@click.option("--out-dir", type=click.Path(file_okay=False), help="Directory for output files.")
@click.option("--format", "fmt", help=f"Comma list from {', '.join(OUTPUT_FORMATS)}.")
def simulate(config_path, qubits, signal, shots, seed, out_dir, fmt):
    """Encode a signal, apply the inverse QFT and report the histogram."""
    opts = read_config_file(config_path) if config_path else {}
    flags = {"qubits": qubits, "signal": signal, "shots": shots, "seed": seed, "out_dir": out_dir, "format": fmt}
    opts.update({k: v for k, v in flags.items() if v is not None})
    if "qubits" not in opts:
        raise ConfigInvalid("qubits", "required")
    if "signal" not in opts:
        raise ConfigInvalid("signal", "required")
    n = _as_int("qubits", opts["qubits"])
    if not 1 <= n <= MAX_QUBITS:
        raise ConfigInvalid("qubits", f"must be in [1, {MAX_QUBITS}], got {n}")
    try:
        spec = SignalSpec.parse(str(opts["signal"]), n)
    except ValueError as exc:
        raise ConfigInvalid("signal", str(exc)) from None
    out = opts.get("out_dir")
    formats = _parse_formats(opts.get("format", "json,csv,text" if out else "text"))
    cfg = ExperimentConfig(
        n_qubits=n,
        signal=spec,
        shots=_as_int("shots", opts.get("shots", 0)),
        seed=_as_int("seed", opts.get("seed", 0)),
        outputs=formats,
    )
    emit(run_experiment(cfg), formats, out)


@cli.command()
@click.argument("name", type=click.Choice(sorted(PRESETS)))
@click.option("--shots", type=int, default=0, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out-dir", type=click.Path(file_okay=False))
@click.option("--format", "fmt", default=None, help=f"Comma list from {', '.join(OUTPUT_FORMATS)}.")
def preset(name, shots, seed, out_dir, fmt):
    """Reproduce one of the reference figure configurations."""
    formats = _parse_formats(fmt or ("json,csv,text,svg,png" if out_dir else "text"))
    if shots < 0:
        raise ConfigInvalid("shots", f"must be >= 0, got {shots}")
    emit(run_preset(name, shots=shots, seed=seed, outputs=formats), formats, out_dir)


@cli.command()
@click.option("--qubits", type=int, required=True)
@click.option("--signal", required=True, help='Phase:amplitude pairs in bins, e.g. "3:1,5:2,7:4".')
def theorems(qubits, signal):
    """Run the amplitude and eigenvalue-ratio checks without simulating."""
    if not 1 <= qubits <= MAX_QUBITS:
        raise ConfigInvalid("qubits", f"must be in [1, {MAX_QUBITS}], got {qubits}")
    try:
        spec = SignalSpec.parse(signal, qubits)
    except ValueError as exc:
        raise ConfigInvalid("signal", str(exc)) from None
    t1 = check_theorem1(spec).to_dict()
    out = {
        "schema": 1,
        "n_qubits": qubits,
        "signal": spec.to_text(),
        "theorem1": {k: sig9(v) if isinstance(v, float) else v for k, v in t1.items()},
        "theorem2": [
            {
                "phases": [sig9(v.phases[0]), sig9(v.phases[1])],
                "ratio": sig9(v.ratio),
                "threshold": sig9(v.threshold),
                "resolvable": v.resolvable,
                "distinguishable": v.distinguishable,
            }
            for v in pair_verdicts(spec)
        ],
    }
    click.echo(json.dumps(out, indent=2, sort_keys=True))


@cli.command()
@click.option("--k", "k", type=int, default=4, show_default=True, help="Bin index.")
@click.option("--nu-min", type=float, default=0.0, show_default=True)
@click.option("--nu-max", type=float, default=8.0, show_default=True)
@click.option("--steps", type=int, default=161, show_default=True)
@click.option("--points", "N", type=int, default=16, show_default=True, help="DFT length N.")
@click.option("--duration", "T", type=float, default=1.0, show_default=True, help="Integration window T.")
@click.option("--amplitude", type=float, default=1.0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), help="CSV path (stdout if omitted).")
@click.option("--plot", type=click.Path(dir_okay=False), help="Also write a PNG figure here.")
def leakage(k, nu_min, nu_max, steps, N, T, amplitude, out, plot):
    """Scan signal frequency against one bin and tabulate both leakage measures."""
    if steps < 1:
        raise ConfigInvalid("steps", "must be >= 1")
    if N < 1:
        raise ConfigInvalid("points", "must be >= 1")
    if not T > 0:
        raise ConfigInvalid("duration", "must be positive")
    rows = leakage_scan(np.linspace(nu_min, nu_max, steps), k, N, T, amplitude)
    header = "nu,k,magnitude,integral_magnitude,bound,t_jk,n_jk"
    lines = [header] + [
        f"{r.nu:.9g},{r.k},{r.magnitude:.9g},{r.integral_magnitude:.9g},{r.bound:.9g},{r.t_jk:.9g},{r.n_jk}"
        for r in rows
    ]
    text = "\n".join(lines) + "\n"
    if out:
        atomic_write(Path(out), text.encode())
        click.echo(out)
    else:
        click.echo(text, nl=False)
    if plot:
        from .plotting import plot_leakage

        atomic_write(Path(plot), plot_leakage(rows))
        click.echo(plot)


def main(argv: list[str] | None = None) -> int:
    try:
        cli.main(args=argv, prog_name="qftlab", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.UsageError as exc:
        exc.show()
        return 2
    except click.Abort:
        click.echo("aborted", err=True)
        return 1
    except QFTLabError as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    except click.ClickException as exc:
        exc.show()
        return 1
    except Exception:
        log.exception("internal error")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
