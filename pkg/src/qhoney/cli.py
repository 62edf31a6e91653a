"""Operator command line.

Verbs: freq, groups, pick-index, sweetwords, metrics, simulate, serve-auth,
serve-checker, register, login.  Exit codes: 0 success, 1 domain error,
2 usage.  Randomized verbs accept --seed for reproducible output; --json
switches to machine-readable output.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import analysis
from .alternatives import AnswerSubmission  # noqa: F401  (re-exported for scripts)
from .catalog import CorpusClass, IndexSelector, default_lambda
from .errors import QhoneyError
from .grouping import (
    FrequencyTable,
    GroupingParams,
    form_groups,
    letter_frequencies,
    load_corpus,
    select_index_position,
)
from .sweetwords import feasibility_advice, generate_sweetwords


def _f(value) -> float:
    return float(value) if isinstance(value, Fraction) else value


def _print_json(obj) -> None:
    def default(o):
        if isinstance(o, Fraction):
            return float(o)
        raise TypeError(f"not serializable: {o!r}")

    print(json.dumps(obj, indent=2, default=default))


def _write_or_print(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + ("\n" if not text.endswith("\n") else ""), encoding="utf-8")
    else:
        print(text)


def _grouping_params(args) -> GroupingParams:
    return GroupingParams(args.alpha, args.beta, args.eps_p, args.eps_b)


def _add_grouping_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", type=float, default=45.0)
    p.add_argument("--beta", type=float, default=85.0)
    p.add_argument("--eps-p", type=float, default=0.1)
    p.add_argument("--eps-b", type=float, default=0.6)


def _corpus_flags(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--corpus", required=required, help="one entry per line, '#' comments")
    p.add_argument(
        "--class",
        dest="corpus_class",
        choices=[c.value for c in CorpusClass],
        default="person",
    )


# -- verbs ----------------------------------------------------------------


def cmd_freq(args) -> int:
    corpus = load_corpus(args.corpus, CorpusClass(args.corpus_class))
    table = letter_frequencies(corpus, IndexSelector(args.index))
    if args.json or args.out:
        _write_or_print(table.to_json(), args.out)
    else:
        print(f"index={table.index.value} used={table.n_used} skipped={table.n_skipped}")
        for letter in sorted(table.freq):
            print(f"{letter} {table.freq[letter]:8.4f}")
    return 0


def cmd_groups(args) -> int:
    if args.freq:
        table = FrequencyTable.from_json(Path(args.freq).read_text(encoding="utf-8"))
    else:
        if not args.corpus:
            print("either --freq or --corpus is required", file=sys.stderr)
            return 2
        corpus = load_corpus(args.corpus, CorpusClass(args.corpus_class))
        table = letter_frequencies(corpus, IndexSelector(args.index))
    gt = form_groups(_grouping_params(args), table)
    if args.json or args.out:
        _write_or_print(gt.to_json(), args.out)
    else:
        for g in gt.groups:
            print(f"g{g.g_id}: {{{', '.join(g.letters)}}} mean={g.mean:.4f} var={g.variance:.4f}")
        print(f"outliers: {{{', '.join(gt.outliers)}}}" if gt.outliers else "outliers: none")
    return 0


def cmd_pick_index(args) -> int:
    corpus = load_corpus(args.corpus, CorpusClass(args.corpus_class))
    chosen, scores = select_index_position(corpus, args.d, _grouping_params(args))
    if args.json:
        _print_json(
            {
                "chosen": chosen.value,
                "scores": [
                    {
                        "index": s.index.value,
                        "viable": s.viable,
                        "group_sizes": s.group_sizes,
                        "outliers": s.n_outliers,
                        "total_variance": s.total_variance,
                        "reason": s.reason,
                    }
                    for s in scores
                ],
            }
        )
    else:
        print(f"chosen index: {chosen.value}")
        for s in scores:
            status = "ok" if s.viable else f"rejected ({s.reason})"
            print(
                f"  {s.index.value:6s} {status}; sizes={s.group_sizes} "
                f"outliers={s.n_outliers} variance={s.total_variance:.4f}"
            )
    return 0


def cmd_sweetwords(args) -> int:
    rng = random.Random(args.seed)
    length = len(args.ops)
    lam = args.lam if args.lam is not None else default_lambda(length)
    accept = feasibility_advice(args.k, lam, length, args.d)
    sweet = generate_sweetwords(args.k, lam, args.ops, length, rng, d=args.d)
    if args.json:
        _print_json(
            {
                "sequences": sweet.sequences,
                "true_index": sweet.true_index,
                "lam": lam,
                "single_pair_acceptance": accept,
            }
        )
    else:
        for i, s in enumerate(sweet.sequences):
            marker = " <- submitted" if i == sweet.true_index else ""
            print(f"{i:3d} {s}{marker}")
        print(f"pairwise distance >= {lam}; single-pair acceptance {accept:.4f}")
    return 0


def cmd_metrics(args) -> int:
    lam = args.lam if args.lam is not None else default_lambda(args.q)
    summary = analysis.metrics_summary(
        args.q,
        args.d,
        args.k,
        lam,
        N=args.pop_n,
        m=args.planted,
        popular_fraction=args.popular_fraction,
    )
    if args.json:
        _print_json(summary)
        return 0
    print(f"q={args.q} d={args.d} k={args.k} lam={lam}")
    print(f"dos_probability        {_f(summary['dos_probability']):.6f}")
    print(f"typo_mistake_bound     {_f(summary['typo_mistake_bound']):.6f}")
    print(f"typo_safety_percent    {_f(summary['typo_safety_percent']):.6f}")
    print(f"storage_qba_units      {summary['storage_qba_units']}")
    print(f"storage_pqba_units     {summary['storage_pqba_units']}")
    print(f"storage_saved_percent  {_f(summary['storage_saved_percent']):.6f}")
    print(f"detection_probability  {_f(summary['detection_probability']):.6f}")
    if "planted_appearance_prob" in summary:
        print(f"planted_appearance     {_f(summary['planted_appearance_prob']):.6f}")
    if "popular_absence_prob" in summary:
        print(f"popular_absence        {_f(summary['popular_absence_prob']):.6f}")
    return 0


def _report_out(report, args) -> int:
    if args.json:
        _print_json(report.as_dict())
    else:
        lo, hi = report.ci95
        print(f"trials     {report.trials}")
        print(f"successes  {report.successes}")
        print(f"estimate   {report.estimate:.6f}  (95% CI {lo:.6f}..{hi:.6f})")
        if report.baseline is not None:
            print(f"baseline   {report.baseline:.6f}")
        for key, value in report.extras.items():
            print(f"{key}  {value}")
    return 0


def cmd_simulate(args) -> int:
    if args.what == "erguler":
        if args.population_file:
            population = [
                line.strip()
                for line in Path(args.population_file).read_text(encoding="utf-8").splitlines()
                if line.strip()
            ]
        else:
            population = [f"user-pw-{i:06d}" for i in range(args.pop_n)]
        report = analysis.simulate_peer_sampling(
            args.pop_n,
            args.planted,
            args.k,
            population,
            args.trials,
            seed=args.seed,
            with_replacement=not args.without_replacement,
        )
        return _report_out(report, args)

    if args.what == "dos":
        lam = args.lam if args.lam is not None else default_lambda(args.q)
        report = analysis.simulate_dos(args.q, args.d, args.k, lam, args.trials, seed=args.seed)
        return _report_out(report, args)

    if args.what == "typo":
        rng = random.Random(args.seed)
        act = "".join(rng.choice("ABCD"[: args.d]) for _ in range(args.length))
        sweet = generate_sweetwords(args.k, args.lam, act, args.length, rng, d=args.d)
        report = analysis.typo_accident_rate(
            sweet,
            args.d,
            args.trials,
            seed=args.seed,
            p=args.p,
            exact_errors=args.errors,
        )
        return _report_out(report, args)

    # flatness
    scheme = analysis.Scheme(args.scheme)
    corpus = None
    group_table = None
    if args.corpus:
        corpus = load_corpus(args.corpus, CorpusClass(args.corpus_class))
    if args.groups:
        from .grouping import GroupTable

        group_table = GroupTable.from_json(Path(args.groups).read_text(encoding="utf-8"))
    attacker = analysis.AttackerModel(
        strategy=analysis.GuessStrategy(args.attacker),
        knows_password=args.knows_password,
    )
    report = analysis.simulate_flatness(
        scheme,
        corpus,
        group_table,
        attacker,
        args.trials,
        seed=args.seed,
        d=args.d,
        k=args.k,
        lam=args.lam if args.lam is not None else default_lambda(args.length),
        length=args.length,
        index=IndexSelector(args.index) if args.index else None,
    )
    return _report_out(report, args)


def cmd_serve_checker(args) -> int:
    from .honeychecker import serve

    print(f"honeychecker listening on {args.host}:{args.port}, state in {args.state}")
    serve(args.state, args.host, args.port)
    return 0


def cmd_serve_auth(args) -> int:
    import uvicorn

    from .authservice import create_app
    from .config import ServiceSettings

    settings = ServiceSettings.from_file(args.config) if args.config else ServiceSettings()
    if not args.config:
        settings.apply_env()
    service = settings.build_service()
    app = create_app(service)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def _parse_answer_flags(pairs: list[str]) -> list[dict]:
    answers = []
    for pair in pairs:
        qid, _, text = pair.partition(":")
        answers.append({"question": int(qid), "answer": text})
    return answers


def cmd_register(args) -> int:
    import httpx

    body = {"username": args.username, "answers": _parse_answer_flags(args.answer)}
    reply = httpx.post(f"{args.url}/register", json=body, timeout=10.0)
    print(reply.text)
    return 0 if reply.status_code == 200 else 1


def cmd_login(args) -> int:
    import httpx

    body = {"username": args.username, "sequence": args.sequence}
    reply = httpx.post(f"{args.url}/login", json=body, timeout=10.0)
    print(reply.text)
    if reply.status_code != 200:
        return 1
    return 0 if reply.json().get("result") == "ALLOW" else 1


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qhoney",
        description="questionnaire-based honeyword authentication toolkit",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("freq", help="letter frequencies of a corpus at an index position")
    _corpus_flags(p)
    p.add_argument("--index", choices=[i.value for i in IndexSelector], default="first")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_freq)

    p = sub.add_parser("groups", help="band the alphabet into decoy groups")
    p.add_argument("--freq", help="frequency table JSON (alternative to --corpus)")
    _corpus_flags(p, required=False)
    p.add_argument("--index", choices=[i.value for i in IndexSelector], default="first")
    _add_grouping_flags(p)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_groups)

    p = sub.add_parser("pick-index", help="choose the index position with the best bands")
    _corpus_flags(p)
    _add_grouping_flags(p)
    p.add_argument("--d", type=int, default=4)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_pick_index)

    p = sub.add_parser("sweetwords", help="generate a sweetword list for a sequence")
    p.add_argument("--ops", required=True, help="the true option sequence, e.g. BDBAAA")
    p.add_argument("--k", type=int, default=20)
    p.add_argument("--lam", type=int, default=None)
    p.add_argument("--d", type=int, default=4)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_sweetwords)

    p = sub.add_parser("metrics", help="all closed-form security/storage values")
    p.add_argument("--q", type=int, default=6)
    p.add_argument("--d", type=int, default=4)
    p.add_argument("--k", type=int, default=20)
    p.add_argument("--lam", type=int, default=None)
    p.add_argument("--pop-n", type=int, default=None)
    p.add_argument("--planted", type=int, default=None)
    p.add_argument("--popular-fraction", type=float, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("simulate", help="Monte Carlo attacker simulations")
    p.add_argument(
        "what", choices=["erguler", "flatness", "dos", "typo"],
        help="erguler: peer-password honeyword baseline",
    )
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.add_argument("--pop-n", type=int, default=1000)
    p.add_argument("--planted", type=int, default=50)
    p.add_argument("--population-file")
    p.add_argument("--without-replacement", action="store_true")
    p.add_argument("--scheme", choices=[s.value for s in analysis.Scheme],
                   default="proposed-tuples")
    p.add_argument("--attacker", choices=[g.value for g in analysis.GuessStrategy],
                   default="uniform")
    p.add_argument("--knows-password", action="store_true")
    p.add_argument("--corpus")
    p.add_argument("--class", dest="corpus_class",
                   choices=[c.value for c in CorpusClass], default="person")
    p.add_argument("--groups", help="group table JSON")
    p.add_argument("--index", choices=[i.value for i in IndexSelector], default=None)
    p.add_argument("--q", type=int, default=6)
    p.add_argument("--d", type=int, default=4)
    p.add_argument("--k", type=int, default=20)
    p.add_argument("--lam", type=int, default=None)
    p.add_argument("--length", type=int, default=6)
    p.add_argument("--errors", type=int, default=None, help="exact corrupted positions per trial")
    p.add_argument("--p", type=float, default=0.0, help="per-symbol corruption probability")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("serve-checker", help="run the honeychecker TCP server")
    p.add_argument("--state", default="var/checker")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=7601)
    p.set_defaults(func=cmd_serve_checker)

    p = sub.add_parser("serve-auth", help="run the HTTP authentication service")
    p.add_argument("--config", help="ServiceSettings JSON file")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8100)
    p.set_defaults(func=cmd_serve_auth)

    p = sub.add_parser("register", help="scripted registration against a running service")
    p.add_argument("--url", default="http://127.0.0.1:8100")
    p.add_argument("--username", required=True)
    p.add_argument("--answer", action="append", required=True,
                   metavar="QID:TEXT", help="repeatable, e.g. --answer 2:Titanic")
    p.set_defaults(func=cmd_register)

    p = sub.add_parser("login", help="scripted login against a running service")
    p.add_argument("--url", default="http://127.0.0.1:8100")
    p.add_argument("--username", required=True)
    p.add_argument("--sequence", required=True)
    p.set_defaults(func=cmd_login)

    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except QhoneyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
