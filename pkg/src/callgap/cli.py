"""Command-line interface: stats, score, predict, eval, gen.

All commands are deterministic batch operations; exit code 0 means success,
1 an analysis-level failure (e.g. nothing to evaluate), 2 an input/IO error.
Defaults mirror the headline configuration: t=0.9, k=1, strict comparison,
context equality on, leave-one-out on.
"""

from __future__ import annotations

import argparse
import sys

from .corpus import Corpus, CorpusFormatError, load_corpus, write_corpus
from .evaluation import (
    REPORT_CSV_HEADER,
    EvalConfig,
    SyntheticSpec,
    evaluate,
    gen_synthetic,
    report_csv_row,
    sweep_k,
    sweep_threshold,
)
from .prediction import PredictionConfig, likelihoods, filter_recommendations
from .scoring import (
    as_fraction,
    distribution_stats,
    histogram,
    s_score,
    score_all,
)
from .similarity import Query, SimilarityParams, almost_similar, exactly_similar

EXIT_OK = 0
EXIT_ANALYSIS = 1
EXIT_INPUT = 2


def _fmt(x) -> str:
    return f"{float(x):.6g}"


def _load(path: str, out) -> Corpus | None:
    try:
        return load_corpus(path)
    except OSError as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        return None
    except (CorpusFormatError, ValueError) as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        return None


def _sim_params(args) -> SimilarityParams:
    return SimilarityParams(k=args.k, use_context=not args.no_context)


def _pred_config(args) -> PredictionConfig:
    return PredictionConfig(as_fraction(args.threshold), strict_comparison=not args.ge)


def cmd_stats(args, out) -> int:
    corpus = _load(args.corpus, out)
    if corpus is None:
        return EXIT_INPUT
    if len(corpus) == 0:
        print("error: corpus is empty", file=sys.stderr)
        return EXIT_ANALYSIS
    scores = score_all(corpus, _sim_params(args))
    stats = distribution_stats(scores, corpus)
    print("metric,value", file=out)
    print(f"n_usages,{stats.n_usages}", file=out)
    print(f"n_types,{corpus.n_types()}", file=out)
    print(f"n_contexts,{corpus.n_contexts()}", file=out)
    print(f"n_redundant,{stats.n_redundant}", file=out)
    print(f"frac_redundant,{_fmt(stats.frac_redundant)}", file=out)
    print(f"median_s,{_fmt(stats.median_s)}", file=out)
    print(f"mean_s,{_fmt(stats.mean_s)}", file=out)
    print(f"frac_below_0_1,{_fmt(stats.frac_below_0_1)}", file=out)
    print(f"frac_above_0_5,{_fmt(stats.frac_above_0_5)}", file=out)
    print(f"frac_above_0_9,{_fmt(stats.frac_above_0_9)}", file=out)
    print("", file=out)
    print("bin_start,bin_end,count", file=out)
    for lo, hi, count in histogram(scores, as_fraction(args.hist_width)):
        print(f"{_fmt(lo)},{_fmt(hi)},{count}", file=out)
    return EXIT_OK


def cmd_score(args, out) -> int:
    corpus = _load(args.corpus, out)
    if corpus is None:
        return EXIT_INPUT
    p = _sim_params(args)
    cfg = _pred_config(args)
    min_score = as_fraction(args.min_score)
    scores = score_all(corpus, p)
    rows = [s for s in scores if s.s_score >= min_score]
    if args.top is not None:
        rows = rows[: args.top]
    human = args.format == "human"
    if args.format == "csv":
        print("id,type,context,origin,score,e,a,recommendations", file=out)
    for s in rows:
        u = corpus.get(s.id)
        q = Query(u.type_name, u.context, u.calls, exclude_id=u.id)
        a_ids = almost_similar(q, corpus, p)
        recs = filter_recommendations(likelihoods(q, a_ids, corpus), cfg)
        if human:
            origin = f"  [{u.origin}]" if u.origin else ""
            print(
                f"{s.id}  score={_fmt(s.s_score)}  {u.type_name}  {u.context}{origin}",
                file=out,
            )
            for r in recs:
                print(
                    f"    missing {r.method}? {r.support} of {len(a_ids)} similar "
                    f"usages also call it (likelihood {_fmt(r.likelihood)})",
                    file=out,
                )
        else:
            rec_str = ";".join(f"{r.method}:{_fmt(r.likelihood)}" for r in recs)
            print(
                f"{s.id},{u.type_name},{u.context},{u.origin or ''},"
                f"{_fmt(s.s_score)},{s.e_count},{s.a_count},{rec_str}",
                file=out,
            )
    return EXIT_OK


def cmd_predict(args, out) -> int:
    corpus = _load(args.corpus, out)
    if corpus is None:
        return EXIT_INPUT
    p = _sim_params(args)
    cfg = _pred_config(args)
    calls = frozenset(c.strip() for c in (args.calls or "").split(",") if c.strip())
    q = Query(args.type, args.context, calls)
    e = exactly_similar(q, corpus, p)
    a_ids = almost_similar(q, corpus, p)
    score = s_score(e, len(a_ids))
    print(f"e_count: {e}", file=out)
    print(f"a_count: {len(a_ids)}", file=out)
    print(f"s_score: {_fmt(score)}", file=out)
    if not a_ids:
        print("no almost-similar usages", file=out)
        return EXIT_OK
    recs = filter_recommendations(likelihoods(q, a_ids, corpus), cfg)
    cmp = ">=" if args.ge else ">"
    print(f"missing calls (likelihood {cmp} {_fmt(as_fraction(args.threshold))}):", file=out)
    for r in recs:
        print(
            f"  {r.method}  likelihood={_fmt(r.likelihood)}  "
            f"({r.support} of {len(a_ids)} similar usages also call it)",
            file=out,
        )
    return EXIT_OK


def cmd_eval(args, out) -> int:
    corpus = _load(args.corpus, out)
    if corpus is None:
        return EXIT_INPUT
    cfg = EvalConfig(
        prediction=_pred_config(args),
        similarity=_sim_params(args),
        include_seed=args.include_seed,
    )
    print(REPORT_CSV_HEADER, file=out)
    try:
        if args.sweep_t:
            ts = [as_fraction(t) for t in args.sweep_t.split(",")]
            for t, report in sweep_threshold(corpus, cfg, ts):
                print(report_csv_row(t, args.k, args.include_seed, not args.no_context, report), file=out)
        elif args.sweep_k:
            ks = [int(k) for k in args.sweep_k.split(",")]
            for k, report in sweep_k(corpus, cfg, ks):
                print(report_csv_row(cfg.prediction.threshold, k, args.include_seed, not args.no_context, report), file=out)
        else:
            report = evaluate(corpus, cfg)
            print(
                report_csv_row(cfg.prediction.threshold, args.k, args.include_seed, not args.no_context, report),
                file=out,
            )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ANALYSIS
    return EXIT_OK


def cmd_gen(args, out) -> int:
    try:
        spec = SyntheticSpec(
            n_buckets=args.buckets,
            usages_per_bucket=args.per_bucket,
            convention_size=args.convention_size,
            deviance_rate=args.deviance,
            method_vocab=args.vocab,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    corpus, truth = gen_synthetic(spec, args.seed)
    try:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(write_corpus(corpus))
        with open(args.truth, "w", encoding="utf-8", newline="\n") as fh:
            for uid, dropped in truth:
                fh.write(f"{uid}\t{dropped}\n")
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(f"wrote {len(corpus)} usages to {args.out}, {len(truth)} deviants to {args.truth}", file=out)
    return EXIT_OK


def _add_similarity_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k", type=int, default=1, help="extra calls admitted into almost-similarity")
    p.add_argument("--no-context", action="store_true", help="drop the context-equality condition")


def _add_threshold_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("-t", "--threshold", default="0.9", help="likelihood threshold (default 0.9)")
    p.add_argument("--ge", action="store_true", help="filter with >= instead of strict >")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="callgap",
        description="Detect likely missing method calls by majority-rule deviance over type-usages.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", help="corpus counts and score distribution (CSV)")
    p.add_argument("corpus")
    _add_similarity_flags(p)
    p.add_argument("--hist-width", default="0.05", help="histogram bin width")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("score", help="ranked deviance warnings with recommendations")
    p.add_argument("corpus")
    _add_similarity_flags(p)
    _add_threshold_flags(p)
    p.add_argument("--top", type=int, default=None, help="keep only the N highest-scored usages")
    p.add_argument("--min-score", default="0", help="drop usages scoring below this")
    p.add_argument("--format", choices=["csv", "human"], default="csv")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("predict", help="recommendations for one ad-hoc query")
    p.add_argument("corpus")
    p.add_argument("--type", required=True, help="variable type name")
    p.add_argument("--context", required=True, help="enclosing method signature")
    p.add_argument("--calls", default="", help="comma-separated calls already made")
    _add_similarity_flags(p)
    _add_threshold_flags(p)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("eval", help="degradation-protocol evaluation (CSV report)")
    p.add_argument("corpus")
    _add_similarity_flags(p)
    _add_threshold_flags(p)
    p.add_argument("--include-seed", action="store_true", help="disable leave-one-out")
    p.add_argument("--sweep-t", default=None, help="comma-separated thresholds to sweep")
    p.add_argument("--sweep-k", default=None, help="comma-separated k values to sweep")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("gen", help="generate a seeded synthetic corpus + ground truth")
    p.add_argument("out", help="corpus output path")
    p.add_argument("--truth", required=True, help="ground-truth output path")
    p.add_argument("--buckets", type=int, required=True)
    p.add_argument("--per-bucket", type=int, required=True)
    p.add_argument("--convention-size", type=int, default=3)
    p.add_argument("--deviance", type=float, default=0.0)
    p.add_argument("--vocab", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gen)

    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args, out if out is not None else sys.stdout)


if __name__ == "__main__":
    sys.exit(main())
