"""Command-line front end.

Reads one confusion matrix (matrix CSV, label-pairs CSV, or JSON), then
evaluates any number of requested metrics on it and prints a report.

Metric request syntax: "name[:outer=<avg>][:p=<float>]" where <avg> is
harmonic | geometric | arithmetic | min | max | power:<float>.  Examples:

    gofmetrics --input cm.csv --metric generalized_mcc
    gofmetrics --input cm.csv --metric generalized_f1:outer=harmonic \
               --metric one_vs_one_mcc:outer=min --output json
    gofmetrics --input pairs.csv --format pairs_csv \
               --metric lp_multiclass:p=-1 --smooth 0.5

Exit codes: 0 success, 2 unreadable/invalid input, 3 bad metric parameters.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import sys
from dataclasses import dataclass, field

from .confusion import ConfusionMatrix, SmoothingSpec, smooth
from .means import ARITHMETIC, AveragingSpec
from .multiclass import (
    BINARY_METRIC_NAMES,
    MetricScore,
    cramers_phi,
    generalized_f1,
    generalized_fm,
    generalized_mcc,
    lp_multiclass,
    one_vs_one_average,
)

__all__ = [
    "RunConfig",
    "MetricRequest",
    "InputError",
    "ParameterError",
    "parse_matrix_csv",
    "parse_pairs_csv",
    "parse_json_input",
    "matrix_to_csv",
    "parse_metric_request",
    "run",
    "render_text",
    "render_json",
    "main",
]

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_PARAMS = 3


class InputError(Exception):
    """Unreadable or invalid input data (exit 2)."""


class ParameterError(Exception):
    """Invalid metric request or parameter (exit 3)."""


@dataclass(frozen=True)
class MetricRequest:
    """One requested metric with its optional outer average and exponent."""

    name: str
    outer: AveragingSpec | None = None
    p: float | None = None


@dataclass(frozen=True)
class RunConfig:
    input_path: str
    input_format: str = "matrix_csv"  # matrix_csv | pairs_csv | json
    metrics: tuple[MetricRequest, ...] = ()
    output_format: str = "text"  # text | json
    smoothing: float | None = None  # alpha, when requested


# ---------------------------------------------------------------- ingestion

def _read_text(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None


def _is_number(cell: str) -> bool:
    try:
        float(cell)
        return True
    except ValueError:
        return False


def parse_matrix_csv(path: str) -> ConfusionMatrix:
    """Read a square numeric grid, optionally headed by label row/column.

    Layouts accepted (blank lines are skipped, cells may carry spaces):
        plain grid            header row            header row + label column
        1,0                   a,b                   ,a,b
        0,1                   1,0                   a,1,0
                              0,1                   b,0,1
    """
    rows: list[tuple[int, list[str]]] = []  # (1-based line number, cells)
    reader = csv.reader(io.StringIO(_read_text(path)))
    for lineno, row in enumerate(reader, start=1):
        cells = [c.strip() for c in row]
        if not cells or all(c == "" for c in cells):
            continue
        rows.append((lineno, cells))
    if not rows:
        raise InputError(f"{path}: empty file")

    first = rows[0][1]
    has_header = not all(_is_number(c) for c in first)
    labels: list[str] | None = None
    data_rows = rows
    if has_header:
        labels = first[1:] if first[0] == "" else list(first)
        data_rows = rows[1:]
        if not data_rows:
            raise InputError(f"{path}: header but no data rows")

    has_label_col = has_header and not _is_number(data_rows[0][1][0])
    width = len(data_rows[0][1])
    grid: list[list[float]] = []
    row_labels: list[str] = []
    for lineno, cells in data_rows:
        if len(cells) != width:
            raise InputError(f"{path}: ragged row at line {lineno}")
        if has_label_col:
            row_labels.append(cells[0])
            cells = cells[1:]
        values = []
        for colno, cell in enumerate(cells, start=1):
            if not _is_number(cell):
                raise InputError(
                    f"{path}: non-numeric cell at line {lineno}, column {colno}"
                )
            values.append(float(cell))
        grid.append(values)

    if has_label_col and row_labels != list(labels):
        raise InputError(
            f"{path}: row labels {row_labels} do not match header {labels}"
        )
    try:
        return ConfusionMatrix.from_counts(grid, labels)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def parse_pairs_csv(path: str) -> ConfusionMatrix:
    """Read (true, predicted) label pairs, one pair per line.

    A first line reading exactly "true,predicted" is treated as a header.
    """
    truths: list[str] = []
    preds: list[str] = []
    reader = csv.reader(io.StringIO(_read_text(path)))
    first_row = True
    for lineno, row in enumerate(reader, start=1):
        cells = [c.strip() for c in row]
        if not cells or all(c == "" for c in cells):
            continue
        if len(cells) != 2:
            raise InputError(
                f"{path}: expected 2 columns at line {lineno}, got {len(cells)}"
            )
        is_header = first_row and [c.lower() for c in cells] == ["true", "predicted"]
        first_row = False
        if is_header:
            continue
        truths.append(cells[0])
        preds.append(cells[1])
    if not truths:
        raise InputError(f"{path}: empty file")
    try:
        return ConfusionMatrix.from_label_pairs(truths, preds)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def parse_json_input(path: str) -> ConfusionMatrix:
    """Read a JSON object {"labels": [...], "counts": [[...]]}; labels optional."""
    try:
        payload = json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(payload, dict) or "counts" not in payload:
        raise InputError(f'{path}: expected an object with a "counts" field')
    labels = payload.get("labels")
    try:
        return ConfusionMatrix.from_counts(payload["counts"], labels)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def matrix_to_csv(cm: ConfusionMatrix) -> str:
    """Serialize with a label header row; parse_matrix_csv inverts this exactly."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(cm.labels)
    for row in cm.counts:
        writer.writerow([repr(float(v)) for v in row])
    return out.getvalue()


_PARSERS = {
    "matrix_csv": parse_matrix_csv,
    "pairs_csv": parse_pairs_csv,
    "json": parse_json_input,
}


# ------------------------------------------------------------ metric requests

def parse_metric_request(text: str) -> MetricRequest:
    """Parse "name[:outer=<avg>][:p=<float>]".

    The outer value may itself contain a colon (power:<float>); any
    colon-separated token without "=" is glued back onto the previous
    option's value.
    """
    parts = text.split(":")
    name = parts[0].strip()
    if not name:
        raise ParameterError(f"empty metric name in {text!r}")
    options: list[list[str]] = []
    for token in parts[1:]:
        if "=" in token:
            key, value = token.split("=", 1)
            options.append([key.strip(), value.strip()])
        elif options:
            options[-1][1] += ":" + token.strip()
        else:
            raise ParameterError(f"bad metric option {token!r} in {text!r}")
    outer: AveragingSpec | None = None
    p: float | None = None
    for key, value in options:
        if key == "outer":
            try:
                outer = AveragingSpec.from_string(value)
            except ValueError as exc:
                raise ParameterError(str(exc)) from None
        elif key == "p":
            try:
                p = float(value)
            except ValueError:
                raise ParameterError(f"bad exponent {value!r} in {text!r}") from None
        else:
            raise ParameterError(f"unknown metric option {key!r} in {text!r}")
    return MetricRequest(name, outer, p)


def _reject_outer(req: MetricRequest) -> None:
    if req.outer is not None:
        raise ParameterError(f"{req.name} takes no outer average")


def _reject_p(req: MetricRequest) -> None:
    if req.p is not None:
        raise ParameterError(
            f"{req.name} takes no p option (use outer=power:<float> for a power outer)"
        )


def _evaluate(cm: ConfusionMatrix, req: MetricRequest) -> MetricScore:
    name = req.name
    try:
        if name == "generalized_mcc":
            _reject_outer(req)
            _reject_p(req)
            return MetricScore(name, generalized_mcc(cm), {}, cm.n)
        if name == "cramers_phi":
            _reject_outer(req)
            _reject_p(req)
            return MetricScore(name, cramers_phi(cm), {}, cm.n)
        if name in ("generalized_f1", "generalized_fm"):
            _reject_p(req)
            outer = req.outer or ARITHMETIC
            func = generalized_f1 if name == "generalized_f1" else generalized_fm
            return MetricScore(
                name, func(cm, outer), {"outer": outer.to_string()}, cm.n
            )
        if name == "lp_multiclass":
            _reject_outer(req)
            if req.p is None:
                raise ParameterError(f"{name} needs p (e.g. {name}:p=-1)")
            return MetricScore(
                name, lp_multiclass(cm, req.p), {"p": repr(float(req.p))}, cm.n
            )
        if name.startswith("one_vs_one_"):
            binary_name = name[len("one_vs_one_"):]
            if binary_name not in BINARY_METRIC_NAMES:
                raise ParameterError(f"unknown metric {name!r}")
            if binary_name != "lp_four_rate" and req.p is not None:
                raise ParameterError(f"{name} takes no p option")
            if binary_name == "lp_four_rate" and req.p is None:
                raise ParameterError(f"{name} needs p (e.g. {name}:p=-1)")
            outer = req.outer or ARITHMETIC
            return one_vs_one_average(cm, binary_name, outer, req.p)
    except ParameterError:
        raise
    except ValueError as exc:
        raise ParameterError(str(exc)) from None
    raise ParameterError(f"unknown metric {name!r}")


def run(config: RunConfig) -> tuple[ConfusionMatrix, list[MetricScore]]:
    """Ingest per config, smooth when requested, evaluate every metric.

    Raises InputError (exit 2) or ParameterError (exit 3); the caller maps
    them to exit codes.
    """
    if not config.metrics:
        raise ParameterError("no metrics requested")
    if config.input_format not in _PARSERS:
        raise ParameterError(f"unknown input format {config.input_format!r}")
    cm = _PARSERS[config.input_format](config.input_path)
    if config.smoothing is not None:
        try:
            spec = SmoothingSpec(config.smoothing)
        except ValueError as exc:
            raise ParameterError(str(exc)) from None
        cm = smooth(cm, spec)
    scores = []
    for req in config.metrics:
        score = _evaluate(cm, req)
        if config.smoothing is not None:
            score = dataclasses.replace(
                score,
                parameters={**score.parameters, "alpha": repr(float(config.smoothing))},
            )
        scores.append(score)
    return cm, scores


# ----------------------------------------------------------------- reporting

def _sig12(value: float) -> float:
    # round to 12 significant digits for stable, diff-friendly reports
    return float(f"{value:.12g}")


def render_json(config: RunConfig, cm: ConfusionMatrix, scores: list[MetricScore]) -> str:
    total = cm.total
    report = {
        "input": config.input_path,
        "n_classes": cm.n,
        "total": int(total) if total == int(total) else _sig12(total),
        "scores": [
            {
                "metric": s.metric_id,
                "params": dict(sorted(s.parameters.items())),
                "value": _sig12(s.value),
            }
            for s in scores
        ],
    }
    return json.dumps(report, indent=2) + "\n"


def render_text(config: RunConfig, cm: ConfusionMatrix, scores: list[MetricScore]) -> str:
    total = cm.total
    total_str = str(int(total)) if total == int(total) else f"{total:.12g}"
    lines = [
        f"input: {config.input_path}",
        f"classes: {cm.n} ({', '.join(cm.labels)})  total: {total_str}",
    ]
    for s in scores:
        params = ""
        if s.parameters:
            inner = ",".join(f"{k}={v}" for k, v in sorted(s.parameters.items()))
            params = f"[{inner}]"
        lines.append(f"{s.metric_id}{params} = {s.value:.12g}")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------- main

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gofmetrics",
        description="Goodness-of-fit metrics for a multi-class confusion matrix.",
    )
    parser.add_argument("--input", required=True, help="path to the input file")
    parser.add_argument(
        "--format",
        choices=sorted(_PARSERS),
        default="matrix_csv",
        help="input layout (default: matrix_csv)",
    )
    parser.add_argument(
        "--metric",
        action="append",
        required=True,
        metavar="NAME[:outer=AVG][:p=FLOAT]",
        help="metric to evaluate; repeatable",
    )
    parser.add_argument(
        "--smooth",
        type=float,
        default=None,
        metavar="ALPHA",
        help="add ALPHA to every cell before computing",
    )
    parser.add_argument(
        "--output", choices=["text", "json"], default="text", help="report format"
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        requests = tuple(parse_metric_request(m) for m in args.metric)
        config = RunConfig(
            input_path=args.input,
            input_format=args.format,
            metrics=requests,
            output_format=args.output,
            smoothing=args.smooth,
        )
        cm, scores = run(config)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    renderer = render_json if config.output_format == "json" else render_text
    sys.stdout.write(renderer(config, cm, scores))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
