"""Experiment pipeline, figure presets and report rendering.

Pipeline: encode the signal, run the inverse QFT, take the outcome
distribution, optionally draw shots, then attach the theorem checks.
Reports serialize to JSON (``schema: 1``) with every float rounded to
9 significant digits so output is byte-stable across runs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from itertools import combinations
from xml.sax.saxutils import escape

from .analysis import Theorem1Report, check_theorem1, check_theorem2, peak_bin
from .circuits import MAX_QUBITS, iqft_circuit, run_circuit
from .encoding import EigenPair, SignalSpec, encode_signal
from .errors import ConfigInvalid, UnknownPreset, UnsupportedFormat
from .measurement import (
    OutcomeDistribution,
    ShotCounts,
    decode_phase,
    distribution,
    histogram_csv,
    sample,
)

SCHEMA_VERSION = 1
OUTPUT_FORMATS = ("json", "csv", "svg", "text", "png")
RENDER_FORMATS = ("text", "svg", "csv")
NONZERO = 1e-12


def sig9(x: float) -> float:
    return float(f"{x:.9g}")


def prob9(p: float) -> float:
    # rounding noise from the transform is far below anything printable
    return 0.0 if p < 1e-15 else sig9(p)


@dataclass(frozen=True)
class ExperimentConfig:
    n_qubits: int
    signal: SignalSpec
    shots: int = 0
    seed: int = 0
    outputs: tuple[str, ...] = ("json",)
    label: str = "simulate"

    def __post_init__(self):
        if not 1 <= self.n_qubits <= MAX_QUBITS:
            raise ConfigInvalid("qubits", f"must be in [1, {MAX_QUBITS}], got {self.n_qubits}")
        if self.signal.n_qubits != self.n_qubits:
            raise ConfigInvalid("signal", "signal register size differs from qubits")
        if self.shots < 0:
            raise ConfigInvalid("shots", f"must be >= 0, got {self.shots}")
        bad = [f for f in self.outputs if f not in OUTPUT_FORMATS]
        if bad:
            raise ConfigInvalid("format", f"unsupported {bad}; choose from {OUTPUT_FORMATS}")

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "n_qubits": self.n_qubits,
            "signal": self.signal.to_text(),
            "shots": self.shots,
            "seed": self.seed,
            "outputs": list(self.outputs),
        }


@dataclass(frozen=True)
class PairVerdict:
    phases: tuple[float, float]
    ratio: float
    threshold: float
    resolvable: bool
    distinguishable: bool


@dataclass(frozen=True, eq=False)
class ExperimentReport:
    config: ExperimentConfig
    distribution: OutcomeDistribution
    counts: ShotCounts | None
    decoded_phases: list[tuple[int, float, float]]
    theorem1: Theorem1Report
    theorem2: list[PairVerdict]
    parts: tuple["ExperimentReport", ...] = field(default_factory=tuple)

    @property
    def n_qubits(self) -> int:
        return self.config.n_qubits

    def probability(self, outcome: int | str) -> float:
        return self.distribution[outcome]

    def to_dict(self) -> dict:
        n = self.n_qubits
        d = {
            "schema": SCHEMA_VERSION,
            "config": self.config.to_dict(),
            "distribution": {
                "n_qubits": n,
                "probs": [prob9(p) for p in self.distribution.probs],
            },
            "counts": None
            if self.counts is None
            else {
                "shots": self.counts.shots,
                "counts": {format(m, f"0{n}b"): c for m, c in sorted(self.counts.counts.items())},
            },
            "decoded_phases": [
                {"bin": b, "binary": format(b, f"0{n}b"), "theta": sig9(th), "probability": sig9(p)}
                for b, th, p in self.decoded_phases
            ],
            "theorem1": {
                k: sig9(v) if isinstance(v, float) else v
                for k, v in self.theorem1.to_dict().items()
            },
            "theorem2": [
                {
                    "phases": [sig9(v.phases[0]), sig9(v.phases[1])],
                    "ratio": sig9(v.ratio),
                    "threshold": sig9(v.threshold),
                    "resolvable": v.resolvable,
                    "distinguishable": v.distinguishable,
                }
                for v in self.theorem2
            ],
        }
        if self.parts:
            d["parts"] = [p.to_dict() for p in self.parts]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def decoded_phases(dist: OutcomeDistribution) -> list[tuple[int, float, float]]:
    """``(bin, bin/2**n, probability)`` for nonzero bins, most likely first."""
    rows = [
        (m, decode_phase(m, dist.n_qubits), float(p))
        for m, p in enumerate(dist.probs)
        if p > NONZERO
    ]
    return sorted(rows, key=lambda r: (-r[2], r[0]))


def pair_verdicts(spec: SignalSpec) -> list[PairVerdict]:
    """Eigenvalue-ratio and peak-bin verdicts for each pair of nonzero phases."""
    n = spec.n_qubits
    phases = sorted({p for p in spec.phases if p > 0})
    peaks = {p: peak_bin(p / 2**n, n) for p in phases}
    out = []
    for a, b in combinations(phases, 2):
        res = check_theorem2(EigenPair.of(a, b), n)
        out.append(PairVerdict((a, b), res.ratio, res.threshold, res.resolvable, peaks[a] != peaks[b]))
    return out


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    n = cfg.n_qubits
    state = run_circuit(iqft_circuit(n), encode_signal(cfg.signal))
    dist = distribution(state)
    counts = sample(dist, cfg.shots, seed=cfg.seed) if cfg.shots else None
    return ExperimentReport(
        config=cfg,
        distribution=dist,
        counts=counts,
        decoded_phases=decoded_phases(dist),
        theorem1=check_theorem1(cfg.signal),
        theorem2=pair_verdicts(cfg.signal),
    )


def merge_reports(label: str, parts: list[ExperimentReport]) -> ExperimentReport:
    """Combine independent runs: equal-weight mixture of their distributions."""
    first = parts[0].config
    comps = tuple(c for p in parts for c in p.config.signal.components)
    spec = SignalSpec(comps, first.n_qubits)
    cfg = replace(first, signal=spec, label=label)
    dist = OutcomeDistribution.mixture([p.distribution for p in parts])
    counts = None
    if all(p.counts is not None for p in parts):
        merged: dict[int, int] = {}
        for p in parts:
            for m, c in p.counts.counts.items():
                merged[m] = merged.get(m, 0) + c
        counts = ShotCounts(merged, sum(p.counts.shots for p in parts))
    return ExperimentReport(
        config=cfg,
        distribution=dist,
        counts=counts,
        decoded_phases=decoded_phases(dist),
        theorem1=check_theorem1(spec),
        theorem2=pair_verdicts(spec),
        parts=tuple(parts),
    )


PRESETS: dict[str, tuple[str, ...]] = {
    "fig1-left": ("5:1",),
    "fig1-right": (",".join(f"{k}:1" for k in range(16)),),
    "fig2-left": ("3:1,5:2,7:4",),
    "fig2-right": ("2:1,4.5:2,7:4",),
    "fig3": ("15:1", "17:1"),
}
PRESET_QUBITS = 4


def run_preset(name: str, shots: int = 0, seed: int = 0, outputs: tuple[str, ...] = ("json",)) -> ExperimentReport:
    """Run a figure configuration on 4 qubits.

    Multi-run presets (``fig3``) return a merged report whose ``parts`` hold
    the individual runs, labelled ``<name>-<phase>``; part ``i`` samples
    with ``seed + i``.
    """
    try:
        signals = PRESETS[name]
    except KeyError:
        raise UnknownPreset(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    reports = [
        run_experiment(
            ExperimentConfig(
                PRESET_QUBITS,
                SignalSpec.parse(sig, PRESET_QUBITS),
                shots=shots,
                seed=seed + i,
                outputs=outputs,
                label=name if len(signals) == 1 else f"{name}-{sig.split(':')[0]}",
            )
        )
        for i, sig in enumerate(signals)
    ]
    if len(reports) == 1:
        return reports[0]
    return merge_reports(name, reports)


# ------------------------------------------------------------ rendering

BAR_WIDTH = 50


def _render_text(report: ExperimentReport) -> str:
    dist = report.distribution
    top = max(float(dist.probs.max()), NONZERO)
    lines = [f"# {report.config.label}  n_qubits={report.n_qubits}  signal={report.config.signal.to_text()}"]
    for m, p in enumerate(dist.probs):
        bar = "#" * int(round(BAR_WIDTH * p / top))
        line = f"{dist.label(m)} {m:>5} {p:.9f} |{bar.ljust(BAR_WIDTH)}|"
        if report.counts is not None:
            line += f" {report.counts.get(m)}"
        lines.append(line)
    return "\n".join(lines) + "\n"


def _render_svg(report: ExperimentReport) -> str:
    dist = report.distribution
    N = dist.probs.size
    W, H, pad = 640, 360, 40
    plot_w, plot_h = W - 2 * pad, H - 2 * pad
    slot = plot_w / N
    top = max(float(dist.probs.max()), NONZERO)
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
        f"<title>{escape(report.config.label)}</title>",
        f'<line x1="{pad}" y1="{H - pad}" x2="{W - pad}" y2="{H - pad}" stroke="black"/>',
        f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{H - pad}" stroke="black"/>',
    ]
    for m, p in enumerate(dist.probs):
        x = pad + m * slot
        if p > NONZERO:
            h = plot_h * p / top
            parts.append(
                f'<rect x="{x + 0.1 * slot:.3f}" y="{H - pad - h:.3f}" width="{0.8 * slot:.3f}" '
                f'height="{h:.3f}" fill="#2b8cbe"><title>{dist.label(m)}: {p:.9g}</title></rect>'
            )
        if N <= 64:
            parts.append(
                f'<text x="{x + slot / 2:.3f}" y="{H - pad + 14}" font-size="9" '
                f'text-anchor="middle">{dist.label(m)}</text>'
            )
    parts.append(f'<text x="{pad}" y="{pad - 10}" font-size="11">max p = {top:.9g}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_histogram(report: ExperimentReport, format: str) -> bytes:
    """Serialize a report's histogram as ``text``, ``svg`` or ``csv``."""
    if format == "text":
        return _render_text(report).encode()
    if format == "svg":
        return _render_svg(report).encode()
    if format == "csv":
        return histogram_csv(report.distribution, report.counts).encode()
    raise UnsupportedFormat(f"cannot render {format!r}; choose from {RENDER_FORMATS}")
