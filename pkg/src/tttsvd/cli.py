"""Command-line entry point: ``tttsvd {build,compress,metrics,tournament,sweep}``.

Relative output paths are resolved against ``$TTTSVD_OUTPUT_DIR`` when it is
set.  Every CSV starts with a ``# config: {...}`` line and every JSON
document carries a ``"config"`` key holding the run configuration.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .compression import (
    approximate,
    compress_hosvd,
    compress_svd,
    hosvd_factors,
    reconstruct_hosvd,
    reconstruct_svd,
    svd_factorization,
)
from .evaluation import EvalTensor, build_exact
from .game import valid_mask
from .metrics import MAX_RANK, CompressionPoint, compression_ratio, relative_error
from .tensorfile import TensorFileError, checksum, read_tensor, write_tensor
from .tournament import (
    SWEEP_FIELDS,
    method_comparison_pairings,
    rank_dependence_pairings,
    run_match,
    sweep,
)

OUTPUT_DIR_ENV = "TTTSVD_OUTPUT_DIR"


@dataclass
class RunConfig:
    subcommand: str
    method: Optional[str] = None
    ranks: Optional[list] = None
    games: Optional[int] = None
    w: Optional[float] = None
    seed: Optional[int] = None
    kind: Optional[str] = None
    inputs: list = field(default_factory=list)
    outputs: list = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def render_csv(fields: Sequence[str], rows: Sequence[dict], config: RunConfig) -> str:
    buf = io.StringIO()
    buf.write(f"# config: {config.to_json()}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fields)
    for row in rows:
        writer.writerow([fmt(row[k]) for k in fields])
    return buf.getvalue()


def output_path(path: str) -> Path:
    p = Path(path)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    p.parent.mkdir(parents=True, exist_ok=True)
    return p


def load_exact(path: str) -> EvalTensor:
    tensor = read_tensor(path)
    if tensor.method != "exact":
        raise SystemExit(f"error: {path} holds a {tensor.meta} tensor, expected the exact one")
    return tensor


def cmd_build(args) -> int:
    out = output_path(args.out)
    data = write_tensor(out, build_exact())
    print(f"valid states: {int(valid_mask().sum())} of {valid_mask().size}")
    print(f"wrote {out} ({len(data)} bytes, sha256 {checksum(data)})")
    return 0


def cmd_compress(args) -> int:
    max_rank = MAX_RANK[args.method]
    if not 0 <= args.rank <= max_rank:
        raise SystemExit(f"error: {args.method} rank must lie in [0, {max_rank}], got {args.rank}")
    exact = load_exact(args.input)
    approx = approximate(exact, args.method, args.rank)
    out = output_path(args.out)
    data = write_tensor(out, approx)
    print(f"method={args.method} rank={args.rank}")
    print(f"Cr={fmt(compression_ratio(args.method, args.rank))}")
    print(f"rel_error={fmt(relative_error(exact, approx))}")
    print(f"wrote {out} ({len(data)} bytes, sha256 {checksum(data)})")
    return 0


def metric_points(exact: EvalTensor, method: str, ranks: Sequence[int]) -> list[CompressionPoint]:
    if method == "svd":
        factors = svd_factorization(exact)
        recon = lambda r: reconstruct_svd(compress_svd(exact, r, factors))
    else:
        factors = hosvd_factors(exact)
        recon = lambda r: reconstruct_hosvd(compress_hosvd(exact, r, factors))
    return [CompressionPoint(method, r, compression_ratio(method, r), relative_error(exact, recon(r)))
            for r in ranks]


def cmd_metrics(args) -> int:
    ranks = args.ranks if args.ranks else list(range(MAX_RANK[args.method] + 1))
    for r in ranks:
        if not 0 <= r <= MAX_RANK[args.method]:
            raise SystemExit(f"error: {args.method} rank out of range: {r}")
    exact = load_exact(args.input)
    config = RunConfig("metrics", method=args.method, ranks=list(ranks),
                       inputs=[args.input], outputs=[args.out])
    points = metric_points(exact, args.method, ranks)
    text = render_csv(CompressionPoint.CSV_FIELDS, [p.row() for p in points], config)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        output_path(args.out).write_text(text)
    return 0


def cmd_tournament(args) -> int:
    a, b = read_tensor(args.file_a), read_tensor(args.file_b)
    if args.games <= 0 or args.games % 2:
        raise SystemExit(f"error: --games must be a positive even number, got {args.games}")
    json_path, csv_path = output_path(args.out + ".json"), output_path(args.out + ".csv")
    config = RunConfig("tournament", games=args.games, w=args.w, seed=args.seed,
                       inputs=[args.file_a, args.file_b], outputs=[str(json_path), str(csv_path)])
    report = run_match(a, b, args.games, args.w, args.seed)
    doc = {"config": asdict(config), "report": report.to_dict()}
    json_path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    row = report.to_dict()
    fields = ("label_a", "label_b", "games_total", "wins_a", "wins_b", "draws",
              "rate_a", "rate_b", "draw_rate", "ci_halfwidth", "seed", "w")
    csv_path.write_text(render_csv(fields, [row], config))
    print(f"{report.label_a}: {fmt(report.rate_a)}  {report.label_b}: {fmt(report.rate_b)}  "
          f"draw: {fmt(report.draw_rate)}  (+/- {report.ci_halfwidth:.3f})")
    return 0


def run_sweep(kind: str, games: int, w: float, seed: int,
              exact: Optional[EvalTensor] = None, config: Optional[RunConfig] = None) -> str:
    """Run a sweep and return its CSV text."""
    exact = exact if exact is not None else build_exact()
    if kind == "fig4":
        pairings = rank_dependence_pairings(exact)
    elif kind == "fig5":
        pairings = method_comparison_pairings(exact)
    else:
        raise ValueError(f"unknown sweep kind {kind!r}")
    config = config or RunConfig("sweep", kind=kind, games=games, w=w, seed=seed)
    results = sweep(pairings, games, w, seed)
    return render_csv(SWEEP_FIELDS, [res.row() for res in results], config)


def cmd_sweep(args) -> int:
    if args.games <= 0 or args.games % 2:
        raise SystemExit(f"error: --games must be a positive even number, got {args.games}")
    out_dir = args.out_dir or os.environ.get(OUTPUT_DIR_ENV) or "."
    out = Path(out_dir) / f"{args.kind}.csv"
    out.parent.mkdir(parents=True, exist_ok=True)
    exact = load_exact(args.tensor) if args.tensor else None
    config = RunConfig("sweep", kind=args.kind, games=args.games, w=args.w, seed=args.seed,
                       inputs=[args.tensor] if args.tensor else [], outputs=[str(out)])
    out.write_text(run_sweep(args.kind, args.games, args.w, args.seed, exact, config))
    print(f"wrote {out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tttsvd",
        description="Low-rank compression of the Tic-Tac-Toe evaluation tensor.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build the exact evaluation tensor")
    p.add_argument("--out", default="exact.evt")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("compress", help="write a rank-r approximation")
    p.add_argument("--in", dest="input", default="exact.evt")
    p.add_argument("--method", choices=("svd", "hosvd"), required=True)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("metrics", help="compression ratio and relative error per rank")
    p.add_argument("--in", dest="input", default="exact.evt")
    p.add_argument("--method", choices=("svd", "hosvd"), required=True)
    p.add_argument("--ranks", type=int, nargs="*", help="default: every admissible rank")
    p.add_argument("--out", default="-", help="CSV path, '-' for stdout")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("tournament", help="side-swapped match between two tensor files")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--games", type=int, default=500)
    p.add_argument("--w", type=float, default=10.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="match", help="output prefix for .json and .csv")
    p.set_defaults(func=cmd_tournament)

    p = sub.add_parser("sweep", help="winning-rate sweeps over compression levels")
    p.add_argument("--kind", choices=("fig4", "fig5"), required=True)
    p.add_argument("--games", type=int, default=500)
    p.add_argument("--w", type=float, default=10.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tensor", help="exact tensor file (built on the fly if omitted)")
    p.add_argument("--out-dir")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TensorFileError as exc:
        raise SystemExit(f"error: {exc}") from exc


if __name__ == "__main__":
    sys.exit(main())
