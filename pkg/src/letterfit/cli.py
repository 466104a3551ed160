"""Command-line front end: ``letterfit <subcommand> [options]``.

Subcommands write plain data files (TSV/JSON) into ``--out``.  Files are
staged in a scratch directory and moved into place only when the whole
subcommand succeeds.
"""
from __future__ import annotations

import argparse
import logging
import os
import shutil
import sys
import tempfile
from pathlib import Path

import numpy as np

from . import fitter, io, models, selection, trends
from .corpus import SPACE, Corpus, get_profile, merge_counts
from .distribution import (average_distribution, gusein_ratio, group_means,
                           rank_string, space_fraction, to_ranked)
from .errors import LetterFitError

log = logging.getLogger("letterfit")


def _csv_list(value):
    return [v.strip() for v in value.split(",") if v.strip()]


def _int_list(value):
    return [int(v) for v in _csv_list(value)]


def _pair(value):
    pair = _csv_list(value)
    if len(pair) != 2:
        raise argparse.ArgumentTypeError(f"expected two letters, got {value!r}")
    return tuple(pair)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lang", default="en",
                        help="language profile: en, es or custom:<profile.json> (default: en)")
    common.add_argument("--keep-space", action="store_true",
                        help="treat the word separator as an extra symbol")
    common.add_argument("--out", default=".", help="output directory (default: .)")
    common.add_argument("--format", choices=("tsv", "json"), default="tsv",
                        help="format of tabular outputs")
    common.add_argument("-v", "--verbose", action="store_true")

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("--manifest", help="corpus manifest (TSV or JSON)")
    source.add_argument("--counts", help="counts TSV written by `count`")
    source.add_argument("--average", choices=("pooled", "mean"), default="pooled",
                        help="merge documents by pooling counts or by averaging frequencies")

    fitting = argparse.ArgumentParser(add_help=False)
    fitting.add_argument("--scale-mode", choices=("free", "constrained"), default="free")
    fitting.add_argument("--jacobian", choices=("analytic", "finite_difference"),
                         default="analytic")
    fitting.add_argument("--max-iterations", type=int, default=200)

    parser = argparse.ArgumentParser(
        prog="letterfit",
        description="Rank-frequency analysis of letters in text corpora.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], help="count letters per document")
    p.add_argument("--manifest", required=True)

    sub.add_parser("rank", parents=[common, source], help="ranked distribution and rank string")

    p = sub.add_parser("fit", parents=[common, source, fitting], help="fit model families")
    p.add_argument("--model", action="append", type=_csv_list,
                   help=f"model id(s), repeatable; default all of: {', '.join(models.MODEL_IDS)}")

    p = sub.add_parser("select", parents=[common, source, fitting],
                       help="AIC/BIC comparison of fitted models")
    p.add_argument("--fits", help="directory holding fit_<model>.json files from `fit`")

    p = sub.add_parser("piecewise", parents=[common, source],
                       help="piecewise Gusein-Zade fit and Gusein ratio series")
    p.add_argument("--segments", type=int, default=2)

    p = sub.add_parser("trends", parents=[common], help="per-document letter trends")
    p.add_argument("--manifest", required=True)
    p.add_argument("--letters", type=_csv_list)
    p.add_argument("--eras", type=_int_list, help="first years of the 2nd, 3rd, ... era")
    p.add_argument("--pair", action="append", type=_pair,
                   help="letter pair whose order is tracked, e.g. d,l (repeatable)")

    p = sub.add_parser("report", parents=[common, fitting], help="run every step")
    p.add_argument("--manifest", required=True)
    p.add_argument("--average", choices=("pooled", "mean"), default="pooled")
    p.add_argument("--segments", type=int, default=2)
    p.add_argument("--letters", type=_csv_list)
    p.add_argument("--eras", type=_int_list)
    p.add_argument("--pair", action="append", type=_pair)
    return parser


# -- inputs -----------------------------------------------------------------

def _profile(args):
    return get_profile(args.lang, args.keep_space)


def _corpus(args):
    return Corpus.from_manifest(args.manifest, _profile(args))


def _distribution(args, corpus=None):
    if corpus is None and getattr(args, "manifest", None):
        corpus = _corpus(args)
    if corpus is not None:
        if args.average == "mean":
            return average_distribution(corpus.counts), corpus.merged()
        merged = corpus.merged()
        return to_ranked(merged), merged
    if getattr(args, "counts", None):
        counts = io.read_counts(args.counts, _profile(args))
        return to_ranked(counts), counts
    raise LetterFitError("need --manifest or --counts")


def _options(args):
    return fitter.FitOptions(max_iterations=args.max_iterations, jacobian=args.jacobian,
                             scale_mode=args.scale_mode)


# -- steps ------------------------------------------------------------------

def do_count(args, out, corpus=None):
    corpus = corpus or _corpus(args)
    rows = []
    for doc, counts in zip(corpus.documents, corpus.counts):
        io.write_counts(out / f"counts_{doc.id}.tsv", counts)
        rows.append((doc.id, doc.label, ",".join(map(str, doc.years)),
                     counts.total, counts.space_count, counts.dropped))
    merged = corpus.merged()
    io.write_counts(out / "counts_merged.tsv", merged)
    rows.append(("merged", "", "", merged.total, merged.space_count, merged.dropped))
    io.write_table(out / "count_diagnostics.tsv",
                   ("id", "label", "years", "total", "space_count", "dropped"), rows, args.format)


def do_rank(args, out, dist=None):
    if dist is None:
        dist, _ = _distribution(args)
    io.write_ranked(out / "ranked.tsv", dist, args.format)
    (out / "rank_string.txt").write_text(rank_string(dist) + "\n", encoding="utf-8")


def _write_fits(args, out, dist, results):
    for res in results:
        io.write_json(out / f"fit_{res.model}.json", res.to_dict())
    header = ["rank", "letter", "observed"] + [r.model for r in results]
    rows = []
    for i, (rank, letter, f) in enumerate(dist.entries):
        rows.append([rank, letter, f] + [float(r.fitted[i]) for r in results])
    io.write_table(out / "fitted_curves.tsv", header, rows, args.format)


def do_fit(args, out, dist=None):
    if dist is None:
        dist, _ = _distribution(args)
    ids = [m for group in args.model for m in group] if args.model else list(models.MODEL_IDS)
    for mid in ids:
        models.get_model(mid)
    results = fitter.fit_all(dist, _options(args), ids)
    _write_fits(args, out, dist, results)
    return results


def _read_fits(directory):
    paths = sorted(Path(directory).glob("fit_*.json"))
    if not paths:
        raise LetterFitError(f"no fit_*.json files in {directory}")
    return [fitter.FitResult.from_dict(io.read_json(p)) for p in paths]


def do_select(args, out, results=None):
    if results is None:
        if getattr(args, "fits", None):
            results = _read_fits(args.fits)
        else:
            dist, _ = _distribution(args)
            results = fitter.fit_all(dist, _options(args))
    table = selection.build_table(results)
    rows = []
    for row in table.rows:
        name = row.model + ("*" if row.warning else "")
        rows.append((name, row.eq, row.p, row.sse, row.delta_aic, row.delta_bic))
    io.write_table(out / "selection.tsv",
                   ("function", "eq", "p", "sse", "delta_aic", "delta_bic"), rows, args.format)
    summary = {
        "n": table.n,
        "best_aic": table.best_aic,
        "best_bic": table.best_bic,
        "rows": [vars(r) | {"warning": r.warning} for r in table.rows],
    }
    io.write_json(out / "selection_summary.json", summary)
    ordered = sorted(results, key=lambda r: models.MODELS[r.model].eq
                     if r.model in models.MODELS else 99)
    names, matrix = selection.residual_table(ordered)
    io.write_table(out / "residuals.tsv", ["rank"] + names,
                   [[i + 1] + [float(v) for v in matrix[i]] for i in range(matrix.shape[0])],
                   args.format)
    return table


def do_piecewise(args, out, dist=None):
    if dist is None:
        dist, _ = _distribution(args)
    spec, res = fitter.fit_piecewise(dist, args.segments)
    ratio = gusein_ratio(dist)
    segment = spec.segment_of(dist.ranks)
    fitted = res.fitted
    rows = [(r, letter, f, float(ratio[i]), int(segment[i]) + 1, float(fitted[i]))
            for i, (r, letter, f) in enumerate(dist.entries)]
    io.write_table(out / "gusein_ratio.tsv",
                   ("rank", "letter", "frequency", "ratio", "segment", "fitted"), rows, args.format)
    means = group_means(ratio, spec.breakpoints)
    groups = []
    edges = (1,) + spec.breakpoints + (dist.n + 1,)
    for k in range(spec.segments):
        lo, hi = edges[k], edges[k + 1]
        groups.append({
            "segment": k + 1,
            "ranks": [lo, hi - 1],
            "letters": "".join(dist.letters[lo - 1:hi - 1]),
            "C": spec.constants[k],
            "mean_ratio": means[k],
        })
    io.write_json(out / "piecewise.json", {
        "segments": spec.segments,
        "breakpoints": list(spec.breakpoints),
        "constants": list(spec.constants),
        "sse": res.sse,
        "p": res.p,
        "n": dist.n,
        "groups": groups,
    })
    return spec, res


def do_trends(args, out, corpus=None):
    corpus = corpus or _corpus(args)
    profile = corpus.profile
    letters = args.letters or trends.DEFAULT_LETTERS.get(profile.id, profile.alphabet[:3])
    eras = args.eras if args.eras is not None else trends.DEFAULT_ERAS.get(profile.id, ())
    pairs = args.pair or trends.DEFAULT_PAIRS.get(profile.id, ())
    symbols = list(profile.symbols)

    table = trends.per_document_table(corpus)
    io.write_table(out / "letter_matrix.tsv", ["id", "year"] + symbols,
                   [[d.id, d.year] + [float(v) for v in table[i]]
                    for i, d in enumerate(corpus.documents)], args.format)

    rows = []
    for series in trends.letter_series(corpus, letters):
        rows.extend((series.letter, i, y, f) for i, y, f in series.points)
    io.write_table(out / "letter_series.tsv", ("letter", "id", "year", "frequency"),
                   rows, args.format)

    io.write_table(out / "rank_table.tsv", ("id", "label", "years", "rank_string", "num"),
                   [(i, lab, ",".join(map(str, ys)), s, tot)
                    for i, lab, ys, s, tot in trends.rank_table(corpus)], args.format)

    rows = []
    for pair in pairs:
        for doc_id, lead, switched in trends.rank_switches(corpus, pair):
            rows.append(("".join(pair), doc_id, pair[0] if lead else pair[1], lead, switched))
    io.write_table(out / "rank_switches.tsv",
                   ("pair", "id", "leader", "first_leads", "switched"), rows, args.format)

    era_ids, means = trends.era_means(corpus, eras)
    bounds = [None] + list(eras) + [None]
    io.write_table(out / "era_means.tsv", ["era", "from_year", "to_year"] + symbols,
                   [[e + 1, bounds[e] if bounds[e] is not None else "",
                     bounds[e + 1] - 1 if bounds[e + 1] is not None else ""]
                    + [float(v) for v in means[e]] for e in era_ids], args.format)

    if profile.keep_space:
        rows = [(d.id, d.year, space_fraction(c)) for d, c in zip(corpus.documents, corpus.counts)]
        rows.append(("mean", "", float(np.mean([r[2] for r in rows]))))
        rows.append(("merged", "", space_fraction(merge_counts(corpus.counts))))
        io.write_table(out / "space_fraction.tsv", ("id", "year", "p_space"), rows, args.format)


def do_report(args, out):
    corpus = _corpus(args)
    dist, _ = _distribution(args, corpus)
    do_count(args, out, corpus)
    do_rank(args, out, dist)
    args.model = None
    results = do_fit(args, out, dist)
    do_select(args, out, results)
    do_piecewise(args, out, dist)
    do_trends(args, out, corpus)


STEPS = {
    "count": do_count,
    "rank": do_rank,
    "fit": do_fit,
    "select": do_select,
    "piecewise": do_piecewise,
    "trends": do_trends,
    "report": do_report,
}


def run(argv=None) -> int:
    """Run one subcommand; returns the process exit code."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
        staging = Path(tempfile.mkdtemp(prefix=".letterfit-", dir=out))
    except OSError as exc:
        print(f"letterfit: error: cannot write to {out}: {exc}", file=sys.stderr)
        return 1
    try:
        STEPS[args.command](args, staging)
        for path in sorted(staging.iterdir()):
            os.replace(path, out / path.name)
    except (LetterFitError, OSError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"letterfit: error: {msg}", file=sys.stderr)
        return 1
    finally:
        shutil.rmtree(staging, ignore_errors=True)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
