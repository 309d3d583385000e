"""Ranking assembly and report serialization.

The ranking orders series ascending by median index (rank 1 = most
efficient).  Ties break lexicographically on the label and are flagged.
CSV output carries full-precision numbers (``repr`` round-trip), the text
table renders ``median±se`` with 4 decimals, and JSON carries the complete
configuration fingerprint plus estimator flags.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field

from .efficiency import EIConfig, EIEstimate
from .errors import EmptyReportError
from .series import SeedSpec

CSV_COLUMNS = [
    "rank",
    "label",
    "ei_median",
    "ei_se",
    "h_lw",
    "h_gph",
    "d_hw",
    "d_g",
    "apen",
    "contrib_h",
    "contrib_d",
    "contrib_ae",
    "n_obs",
    "n_shuffles",
    "seed",
    "mode",
]

CONTRIB_COLUMNS = ["rank", "label", "contrib_h", "contrib_d", "contrib_ae"]


@dataclass(frozen=True)
class RankingRow:
    rank: int
    label: str
    ei_median: float
    ei_se: float
    h_lw: float
    h_gph: float
    d_hw: float
    d_g: float
    apen: float
    contrib_h: float
    contrib_d: float
    contrib_ae: float
    n_obs: int
    tied: bool = False
    h_lw_boundary: bool = False
    h_gph_boundary: bool = False
    d_hw_clamped: bool = False
    d_g_clamped: bool = False


@dataclass(frozen=True)
class RankingReport:
    rows: tuple
    config: dict = field(default_factory=dict)
    seed: int = 0


def rank(results: dict[str, EIEstimate], cfg: EIConfig | None = None,
         seed: SeedSpec | None = None, extra_config: dict | None = None) -> RankingReport:
    """Order per-series estimates into a ranking report.

    ``results`` maps series label to estimate.  Equal medians tie-break on
    the label and both rows are flagged.
    """
    if not results:
        raise EmptyReportError("no successful estimates to rank")
    ordered = sorted(results.items(), key=lambda kv: (kv[1].median, kv[0]))
    medians = [est.median for _, est in ordered]
    rows = []
    for idx, (label, est) in enumerate(ordered):
        tied = (idx > 0 and medians[idx - 1] == medians[idx]) or (
            idx + 1 < len(medians) and medians[idx + 1] == medians[idx]
        )
        m = est.measures
        rows.append(
            RankingRow(
                rank=idx + 1,
                label=label,
                ei_median=est.median,
                ei_se=est.standard_error,
                h_lw=m.h_lw.h,
                h_gph=m.h_gph.h,
                d_hw=m.d_hw.d,
                d_g=m.d_g.d,
                apen=m.apen.value,
                contrib_h=float(est.contributions[0]),
                contrib_d=float(est.contributions[1]),
                contrib_ae=float(est.contributions[2]),
                n_obs=est.n_obs,
                tied=tied,
                h_lw_boundary=m.h_lw.at_boundary,
                h_gph_boundary=m.h_gph.at_boundary,
                d_hw_clamped=m.d_hw.clamped,
                d_g_clamped=m.d_g.clamped,
            )
        )
    config = dict(cfg.fingerprint()) if cfg is not None else {}
    if extra_config:
        config.update(extra_config)
    return RankingReport(
        rows=tuple(rows),
        config=config,
        seed=seed.base_seed if seed is not None else 0,
    )


def _row_csv_values(row: RankingRow, report: RankingReport) -> list[str]:
    return [
        str(row.rank),
        row.label,
        repr(row.ei_median),
        repr(row.ei_se),
        repr(row.h_lw),
        repr(row.h_gph),
        repr(row.d_hw),
        repr(row.d_g),
        repr(row.apen),
        repr(row.contrib_h),
        repr(row.contrib_d),
        repr(row.contrib_ae),
        str(row.n_obs),
        str(report.config.get("shuffles", "")),
        str(report.seed),
        str(report.config.get("mode", "")),
    ]


def emit_ranking(report: RankingReport, format: str = "csv") -> bytes:
    """Serialize a ranking report to csv, json, or a fixed-width text table."""
    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in report.rows:
            writer.writerow(_row_csv_values(row, report))
        return buf.getvalue().encode("utf-8")
    if format == "json":
        payload = {
            "config": report.config,
            "seed": report.seed,
            "series": [
                {
                    "rank": r.rank,
                    "label": r.label,
                    "ei_median": r.ei_median,
                    "ei_se": r.ei_se,
                    "measures": {
                        "h_lw": r.h_lw,
                        "h_gph": r.h_gph,
                        "d_hw": r.d_hw,
                        "d_g": r.d_g,
                        "apen": r.apen,
                    },
                    "flags": {
                        "h_lw_boundary": r.h_lw_boundary,
                        "h_gph_boundary": r.h_gph_boundary,
                        "d_hw_clamped": r.d_hw_clamped,
                        "d_g_clamped": r.d_g_clamped,
                    },
                    "contributions": {
                        "hurst": r.contrib_h,
                        "fractal": r.contrib_d,
                        "entropy": r.contrib_ae,
                    },
                    "n_obs": r.n_obs,
                    "tied": r.tied,
                }
                for r in report.rows
            ],
        }
        return (json.dumps(payload, indent=2) + "\n").encode("utf-8")
    if format == "table":
        label_width = max([len("label")] + [len(r.label) for r in report.rows])
        rank_width = max(4, len(str(len(report.rows))))
        lines = [f"{'rank':>{rank_width}}  {'label':<{label_width}}  ei"]
        for r in report.rows:
            mark = " *" if r.tied else ""
            lines.append(
                f"{r.rank:>{rank_width}}  {r.label:<{label_width}}  "
                f"{r.ei_median:.4f}±{r.ei_se:.4f}{mark}"
            )
        cfg = " ".join(f"{k}={v}" for k, v in sorted(report.config.items()))
        lines.append(f"# seed={report.seed} {cfg}".rstrip())
        return ("\n".join(lines) + "\n").encode("utf-8")
    raise ValueError(f"unknown format {format!r}")


def emit_contributions(report: RankingReport) -> bytes:
    """Per-series contribution shares, most efficient series first."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CONTRIB_COLUMNS)
    for row in report.rows:
        writer.writerow(
            [str(row.rank), row.label, repr(row.contrib_h), repr(row.contrib_d), repr(row.contrib_ae)]
        )
    return buf.getvalue().encode("utf-8")


def parse_ranking_csv(data: bytes | str) -> RankingReport:
    """Inverse of ``emit_ranking(..., 'csv')`` for the numeric fields."""
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if header != CSV_COLUMNS:
        raise ValueError("unexpected ranking csv header")
    rows = []
    config: dict = {}
    seed = 0
    for rec in reader:
        if not rec:
            continue
        values = dict(zip(CSV_COLUMNS, rec))
        rows.append(
            RankingRow(
                rank=int(values["rank"]),
                label=values["label"],
                ei_median=float(values["ei_median"]),
                ei_se=float(values["ei_se"]),
                h_lw=float(values["h_lw"]),
                h_gph=float(values["h_gph"]),
                d_hw=float(values["d_hw"]),
                d_g=float(values["d_g"]),
                apen=float(values["apen"]),
                contrib_h=float(values["contrib_h"]),
                contrib_d=float(values["contrib_d"]),
                contrib_ae=float(values["contrib_ae"]),
                n_obs=int(values["n_obs"]),
            )
        )
        if values["n_shuffles"]:
            config["shuffles"] = int(values["n_shuffles"])
        if values["mode"]:
            config["mode"] = values["mode"]
        seed = int(values["seed"])
    return RankingReport(rows=tuple(rows), config=config, seed=seed)


def parse_ranking_json(data: bytes | str) -> RankingReport:
    """Inverse of ``emit_ranking(..., 'json')``."""
    payload = json.loads(data.decode("utf-8") if isinstance(data, bytes) else data)
    rows = []
    for entry in payload["series"]:
        m = entry["measures"]
        c = entry["contributions"]
        flags = entry.get("flags", {})
        rows.append(
            RankingRow(
                rank=entry["rank"],
                label=entry["label"],
                ei_median=entry["ei_median"],
                ei_se=entry["ei_se"],
                h_lw=m["h_lw"],
                h_gph=m["h_gph"],
                d_hw=m["d_hw"],
                d_g=m["d_g"],
                apen=m["apen"],
                contrib_h=c["hurst"],
                contrib_d=c["fractal"],
                contrib_ae=c["entropy"],
                n_obs=entry["n_obs"],
                tied=entry.get("tied", False),
                h_lw_boundary=flags.get("h_lw_boundary", False),
                h_gph_boundary=flags.get("h_gph_boundary", False),
                d_hw_clamped=flags.get("d_hw_clamped", False),
                d_g_clamped=flags.get("d_g_clamped", False),
            )
        )
    return RankingReport(rows=tuple(rows), config=payload.get("config", {}), seed=payload.get("seed", 0))


def row_dict(row: RankingRow) -> dict:
    return asdict(row)
