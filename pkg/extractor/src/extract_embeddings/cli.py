"""Command line front end: extract-embeddings --data ... --model ... --out ..."""

from __future__ import annotations

import argparse
import sys

from .core import POOLING_MODES, ExtractJob, extract
from .errors import ExtractionError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="extract-embeddings",
        description="Encode a sentence-pair dataset CSV with a pretrained "
        "transformer and write one embedding TSV row per sentence.",
    )
    parser.add_argument("--data", required=True, help="dataset CSV (PairID,Text[,Score])")
    parser.add_argument("--model", required=True, help="model id or local checkpoint path")
    parser.add_argument("--out", required=True, help="output embedding TSV path")
    parser.add_argument(
        "--pooling",
        choices=POOLING_MODES,
        default="mean",
        help="sentence pooling over final hidden states (default: mean)",
    )
    parser.add_argument("--batch-size", type=int, default=16, help="sentences per forward pass")
    parser.add_argument("--device", default="cpu", help="torch device (default: cpu)")
    parser.add_argument(
        "--max-length", type=int, default=256, help="token truncation length (default: 256)"
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    job = ExtractJob(
        data=args.data,
        model=args.model,
        out=args.out,
        pooling=args.pooling,
        batch_size=args.batch_size,
        device=args.device,
        max_length=args.max_length,
    )
    try:
        result = extract(job)
    except (ExtractionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {result.rows} vectors (dim {result.dim}) to {args.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
