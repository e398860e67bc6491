"""Command line entry point: ``glosswsd run | eval | stats``."""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .corpus_io import Version, read_corpus_xml
from .errors import GlossWSDError
from .evalstats import (compute_stats, intrinsic_eval, read_gold, read_pairs,
                        sense_clustering_eval)
from .inventory import load_inventory
from .pipeline import PipelineConfig, read_config_file, run_pipeline
from .vectors import load_vectors

# flag dest -> PipelineConfig field
_RUN_FLAGS = {
    "inventory": "inventory_dir",
    "vectors": "vectors_path",
    "out": "out_dir",
    "stopwords": "stopwords_dir",
    "bf_threshold": "bf_threshold",
    "coh_threshold": "coh_threshold",
    "nasari_threshold": "nasari_threshold",
    "radius": "signature_radius",
    "workers": "workers",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="glosswsd", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="disambiguate a gloss corpus and write both releases")
    run.add_argument("--config", type=Path, help="key=value settings file; flags take precedence")
    run.add_argument("--inventory", type=Path, help="inventory directory (synsets/glosses/rankings/edges)")
    run.add_argument("--vectors", type=Path, help="sense vectors file")
    run.add_argument("--out", type=Path, help="output directory")
    run.add_argument("--stopwords", type=Path, help="directory of stopwords.<lang>.txt (default: inventory)")
    run.add_argument("--bf-threshold", type=float)
    run.add_argument("--coh-threshold", type=float)
    run.add_argument("--nasari-threshold", type=float)
    run.add_argument("--radius", type=int)
    run.add_argument("--workers", type=int)

    ev = sub.add_parser("eval", help="score a release against gold annotations or cluster pairs")
    ev.add_argument("--out", type=Path, help="output directory of a previous run")
    group = ev.add_mutually_exclusive_group(required=True)
    group.add_argument("--gold", type=Path, help="TSV: glossId, start, end, synsetId")
    group.add_argument("--pairs", type=Path, help="TSV: idA, idB, merge|split")
    ev.add_argument("--vectors", type=Path, help="sense vectors (required with --pairs)")
    ev.add_argument("--inventory", type=Path, help="validate gold senses against this inventory")

    st = sub.add_parser("stats", help="print statistics of a release")
    st.add_argument("release", type=Path, help="output directory of a previous run")
    st.add_argument("--tsv", action="store_true", help="print TSV rows instead of tables")
    return parser


def _config(args) -> PipelineConfig:
    values = read_config_file(args.config) if args.config else {}
    for flag, key in _RUN_FLAGS.items():
        value = getattr(args, flag)
        if value is not None:
            values[key] = value
    for key in ("inventory_dir", "vectors_path", "out_dir"):
        if key not in values:
            flag = next(f for f, k in _RUN_FLAGS.items() if k == key)
            raise ValueError(f"--{flag} is required")
    return PipelineConfig(**values)


def _releases(root: Path):
    if not root.is_dir():
        raise FileNotFoundError(f"no release directory at {root}")
    return [read_corpus_xml(root / v.dirname, v) for v in Version]


def cmd_run(args) -> int:
    result = run_pipeline(_config(args))
    print(f"complete: {result.stats.total_before} annotations; "
          f"high-precision: {result.stats.total_after} annotations "
          f"over {result.stats.n_glosses} glosses -> {args.out or 'configured output'}")
    return 0


def cmd_eval(args) -> int:
    if args.pairs:
        if args.vectors is None:
            raise ValueError("--pairs needs --vectors")
        result = sense_clustering_eval(read_pairs(args.pairs), load_vectors(args.vectors))
        print("pairs\taccuracy\tF1\tTP\tFP\tTN\tFN\tunjudgeable")
        print(f"{result.tp + result.fp + result.tn + result.fn}\t{result.accuracy:.4f}\t{result.f1:.4f}\t"
              f"{result.tp}\t{result.fp}\t{result.tn}\t{result.fn}\t{result.unjudgeable}")
        return 0
    if args.out is None:
        raise ValueError("--gold needs --out pointing at a previous run")
    gold = read_gold(args.gold)
    inventory = load_inventory(args.inventory) if args.inventory else None
    print("version\tprecision\tcoverage\tcorrect\tattempted\tgold")
    for release in _releases(args.out):
        r = intrinsic_eval(release.annotations(), gold, inventory)
        print(f"{release.version.value}\t{r.precision:.4f}\t{r.coverage:.4f}\t"
              f"{r.correct}\t{r.attempted}\t{r.gold}")
    return 0


def cmd_stats(args) -> int:
    complete, high_precision = _releases(args.release)
    report = compute_stats(complete, high_precision)
    sys.stdout.write(report.to_tsv() if args.tsv else report.render())
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    handler = {"run": cmd_run, "eval": cmd_eval, "stats": cmd_stats}[args.command]
    try:
        return handler(args)
    except (GlossWSDError, OSError, ValueError) as exc:
        print(f"glosswsd {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
