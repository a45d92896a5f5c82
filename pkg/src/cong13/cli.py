"""Command-line interface.

Subcommands expose computation (pn, bigp, expand, k1-table) and the claim
checkers (verify ..., selftest) with text, JSON or CSV output.

Exit codes: 0 all pass, 1 at least one fail (counterexample found),
2 indeterminate or insufficient precision, 3 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import verify as V
from .eta import eta_quotient, parse_eta_spec
from .partitions import bigP, partition_table
from .rings import EXACT, residue_ring
from .series import PrecisionExceededError

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INDETERMINATE = 2
EXIT_USAGE = 3

CACHE_ENV = "CF13_CACHE_DIR"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # exit 3, not argparse's 2
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


@dataclass
class CliConfig:
    format: str = "text"
    modexp: int | None = None
    prec: int | None = None
    cache_dir: str | None = None
    threads: int = 1
    seed: int = 0

    def __post_init__(self) -> None:
        if self.format not in ("text", "json", "csv"):
            raise UsageError(f"unknown format {self.format!r}")
        if self.modexp is not None and self.modexp < 1:
            raise UsageError("--modexp must be >= 1")
        if self.prec is not None and self.prec < 1:
            raise UsageError("--prec must be >= 1")
        if self.threads < 1:
            raise UsageError("--threads must be >= 1")

    @property
    def cache(self) -> str:
        if self.cache_dir:
            return self.cache_dir
        env = os.environ.get(CACHE_ENV)
        if env:
            return env
        return os.path.join(os.path.expanduser("~"), ".cache", "cong13")


def _add_common(p: argparse.ArgumentParser) -> None:
    # SUPPRESS keeps subcommand-level occurrences from clobbering values
    # already parsed at the top level; real defaults live in set_defaults.
    sup = argparse.SUPPRESS
    p.add_argument("--format", choices=["text", "json", "csv"], default=sup)
    p.add_argument("--modexp", type=int, default=sup, help="work mod 13^K")
    p.add_argument("--prec", type=int, default=sup, help="grid precision override")
    p.add_argument("--cache-dir", default=sup, help=f"partition cache (or ${CACHE_ENV})")
    p.add_argument("--threads", type=int, default=sup, help="cap on internal parallelism")
    p.add_argument("--seed", type=int, default=sup, help="seed for randomized batteries")


def build_parser() -> _Parser:
    p = _Parser(prog="cong13", description=__doc__)
    _add_common(p)
    p.set_defaults(
        format="text", modexp=None, prec=None, cache_dir=None, threads=1, seed=0
    )
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_cmd(parent, name, **kw):
        s = parent.add_parser(name, **kw)
        _add_common(s)
        return s

    s = add_cmd(sub, "pn", help="print p(n)")
    s.add_argument("--n", type=int, required=True)

    s = add_cmd(sub, "bigp", help="print P(N)")
    s.add_argument("--N", type=int, required=True)

    s = add_cmd(sub, "expand", help="expand an eta quotient to --prec")
    s.add_argument("--eta", required=True, help="quotient, e.g. 13^2/1^2 for g")

    add_cmd(sub, "k1-table", help="check the k_{1,r} table")

    v = sub.add_parser("verify", help="run a claim checker")
    vsub = v.add_subparsers(dest="claim", required=True, parser_class=_Parser)

    s = add_cmd(vsub, "theorem")
    s.add_argument("--alpha", type=int, required=True)
    s.add_argument("--nmax", type=int, default=None)

    for name in ("conjecture", "corollary"):
        s = add_cmd(vsub, name)
        s.add_argument("--alpha", type=int, required=True)
        s.add_argument("--prime", type=int, required=True)
        s.add_argument("--nmax", type=int, default=None)

    s = add_cmd(vsub, "hecke")
    s.add_argument("--prime", type=int, required=True)

    s = add_cmd(vsub, "valuations")
    s.add_argument("--alpha-max", type=int, default=2)
    s.add_argument("--rmax", type=int, default=30)
    s.add_argument("--prime", type=int, default=5)

    s = add_cmd(vsub, "mu-gamma")
    s.add_argument("--alpha-max", type=int, default=2)
    s.add_argument("--stmax", type=int, default=10)
    s.add_argument("--prime", type=int, default=5)

    s = add_cmd(vsub, "eigen")
    s.add_argument("--alpha-max", type=int, default=2)
    s.add_argument("--prime", type=int, default=5)
    s.add_argument("--nmax", type=int, default=3000)

    add_cmd(sub, "selftest", help="oracle battery + k1 table")
    return p


DEFAULT_THEOREM_NMAX = {1: 2000, 2: 1000, 3: 500}
DEFAULT_CONJECTURE_NMAX = {1: 5000, 2: 600}


def _status_exit(reports: list[V.Report]) -> int:
    statuses = {r.status for r in reports}
    if V.FAIL in statuses:
        return EXIT_FAIL
    if V.INDETERMINATE in statuses:
        return EXIT_INDETERMINATE
    return EXIT_PASS


def format_reports(reports: list[V.Report], fmt: str) -> str:
    if fmt == "json":
        if len(reports) == 1:
            return reports[0].to_json()
        return "[" + ",".join(r.to_json() for r in reports) + "]"
    if fmt == "csv":
        return V.constants_csv(reports).rstrip("\n")
    lines = []
    for r in reports:
        tags = " ".join(f"{k}={v}" for k, v in sorted(r.params.items()))
        consts = " ".join(
            f"{k}={cv['value']}" + (f" (mod {cv['modulus']})" if cv.get("modulus") else "")
            for k, cv in sorted(r.constants.items())
        )
        line = f"[{r.status.upper():>5}] {r.claim_id} {tags}"
        if consts:
            line += f" | {consts}"
        line += f" | {r.runtime_ms} ms"
        lines.append(line)
        for ce in r.counterexamples[:5]:
            lines.append(f"    counterexample: {ce}")
        if len(r.counterexamples) > 5:
            lines.append(f"    ... and {len(r.counterexamples) - 5} more")
    return "\n".join(lines)


def _run_compute(args, cfg: CliConfig) -> int:
    ring = EXACT if cfg.modexp is None else residue_ring(cfg.modexp)
    if args.command == "pn":
        if args.n < 0:
            print(0)
            return EXIT_PASS
        table = partition_table(args.n, ring, cache_dir=cfg.cache)
        print(table[args.n])
        return EXIT_PASS
    if args.command == "bigp":
        N = args.N
        if N < -1 or N % 24 != 23:
            print(0)
            return EXIT_PASS
        table = partition_table((N + 1) // 24, ring, cache_dir=cfg.cache)
        print(bigP(N, table))
        return EXIT_PASS
    if args.command == "expand":
        if cfg.prec is None:
            raise UsageError("expand requires --prec")
        spec = parse_eta_spec(args.eta)
        series = eta_quotient(spec, cfg.prec, ring)
        sys.stdout.write(series.dumps())
        return EXIT_PASS
    raise UsageError(f"unknown command {args.command}")


def _run_verify(args, cfg: CliConfig) -> list[V.Report]:
    claim = args.claim
    if claim == "theorem":
        nmax = args.nmax or DEFAULT_THEOREM_NMAX.get(args.alpha, 300)
        return [V.check_theorem_aob(args.alpha, nmax, cache_dir=cfg.cache)]
    if claim == "conjecture":
        nmax = args.nmax or DEFAULT_CONJECTURE_NMAX.get(args.alpha, 120)
        return [V.check_conjecture(args.alpha, args.prime, nmax, cache_dir=cfg.cache)]
    if claim == "corollary":
        nmax = args.nmax or 2000
        return [V.check_corollary(args.alpha, args.prime, nmax, cache_dir=cfg.cache)]
    if claim == "hecke":
        modexp = cfg.modexp or V.DEFAULT_H_MODEXP
        return V.check_h_and_newman(args.prime, modexp, prec=cfg.prec)
    if claim == "valuations":
        return [
            V.check_val_lemmas(args.alpha_max, args.rmax, p=args.prime, modexp=cfg.modexp)
        ]
    if claim == "mu-gamma":
        return [
            V.check_mu_gamma(args.alpha_max, args.stmax, p=args.prime, modexp=cfg.modexp)
        ]
    if claim == "eigen":
        return [
            V.check_eigen(
                args.alpha_max, args.prime, conj_nmax=args.nmax, cache_dir=cfg.cache
            )
        ]
    raise UsageError(f"unknown claim {claim}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = CliConfig(
            format=args.format,
            modexp=args.modexp,
            prec=args.prec,
            cache_dir=args.cache_dir,
            threads=args.threads,
            seed=args.seed,
        )
        if args.command in ("pn", "bigp", "expand"):
            return _run_compute(args, cfg)
        if args.command == "k1-table":
            reports = [V.check_k1_table()]
        elif args.command == "verify":
            reports = _run_verify(args, cfg)
        elif args.command == "selftest":
            if cfg.threads > 1:
                with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
                    futs = [
                        pool.submit(V.cross_checks, cfg.seed),
                        pool.submit(V.check_k1_table),
                    ]
                    reports = [f.result() for f in futs]
            else:
                reports = [V.cross_checks(seed=cfg.seed), V.check_k1_table()]
        else:
            raise UsageError(f"unknown command {args.command}")
        print(format_reports(reports, cfg.format))
        return _status_exit(reports)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except PrecisionExceededError as exc:
        print(f"insufficient precision: {exc}", file=sys.stderr)
        return EXIT_INDETERMINATE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
