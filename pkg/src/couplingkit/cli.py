"""Command-line front end.

Subcommands: vdist, couple, verify, oracle, audit, tables.  Every
command is a pure function of its input files and flags; repeated runs
produce byte-identical output.  Exit codes are stable API:

    0  success
    2  parse failure (file shape, rational literal, invalid distribution)
    3  alphabet mismatch between inputs (including one-dim vs two-dim)
    4  invalid coupling (first violated constraint is reported)
    5  claimed epsilon bound inconsistent with the computed distance
    6  regenerated golden table differs from the committed fixture

All comparisons are exact; the decimal renderings next to each rational
are display only (``--precision``, default 5 places).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from .audit import EpsilonAuditInput, epsilon_audit
from .coupling import (
    coupling_independent,
    coupling_maximal,
    coupling_validate,
    lemma_audit,
)
from .distributions import Pmf, Pmf2
from .errors import (
    AlphabetMismatchError,
    ConstraintInfeasibleError,
    CorruptedCouplingError,
    CouplingError,
    CouplingKitError,
    DistributionError,
    EnumerationLimitError,
    ParseError,
    ShapeMismatchError,
    UnbalancedProblemError,
)
from .jsonio import (
    coupling4_to_obj,
    coupling_to_obj,
    detect_coupling_kind,
    dump_json,
    load_coupling4_blocks,
    load_coupling_matrix,
    load_distribution,
    load_pmf,
)
from .metrics import DEFAULT_SUBSET_LIMIT, vdist_halfsum
from .multidim import (
    Coupling4,
    coupling4_independent,
    coupling4_maximal,
    mismatch_components,
    vdist2,
)
from .rational import decimal_string, parse_rational
from .tables import resolve_fixtures_dir, sync_fixtures
from .transport import DEFAULT_VERTEX_LIMIT, TransportProblem, certify, lp_min_mismatch

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_ALPHABET = 3
EXIT_COUPLING = 4
EXIT_EPSILON = 5
EXIT_GOLDEN = 6


@dataclass(frozen=True)
class Config:
    """Resolved output options shared by the subcommands."""

    format: str = "table"
    precision: int = 5
    subset_limit: int = DEFAULT_SUBSET_LIMIT
    vertex_limit: int = DEFAULT_VERTEX_LIMIT

    def __post_init__(self):
        if self.format not in ("json", "table"):
            raise ValueError(f"unknown format {self.format!r}")
        if self.precision < 1:
            raise ValueError("precision must be >= 1")
        if self.subset_limit < 1 or self.vertex_limit < 1:
            raise ValueError("enumeration limits must be >= 1")

    def show(self, value) -> str:
        return f"{value} ({decimal_string(value, self.precision)})"


def _config(args: argparse.Namespace) -> Config:
    return Config(format=args.format, precision=args.precision)


def _emit(text: str) -> None:
    sys.stdout.write(text + "\n")


def _load_pair(p_path: str, q_path: str):
    p = load_distribution(p_path)
    q = load_distribution(q_path)
    if type(p) is not type(q):
        raise AlphabetMismatchError(
            f"{p_path} and {q_path} mix one-dim and two-dim distributions"
        )
    return p, q


def cmd_vdist(args: argparse.Namespace) -> int:
    cfg = _config(args)
    p, q = _load_pair(args.p_file, args.q_file)
    v = vdist2(p, q) if isinstance(p, Pmf2) else vdist_halfsum(p, q)
    if cfg.format == "json":
        _emit(dump_json({"v": str(v), "decimal": decimal_string(v, cfg.precision)}).rstrip("\n"))
    else:
        _emit(cfg.show(v))
    return EXIT_OK


def _audit_lines(cfg: Config, audit) -> list[str]:
    return [
        f"v: {cfg.show(audit.v)}",
        f"mismatch: {cfg.show(audit.mismatch)}",
        f"holds (v <= mismatch): {str(audit.holds).lower()}",
        f"maximal (v = mismatch): {str(audit.maximal).lower()}",
        f"gap: {cfg.show(audit.gap)}",
    ]


def cmd_couple(args: argparse.Namespace) -> int:
    cfg = _config(args)
    p, q = _load_pair(args.p_file, args.q_file)
    if isinstance(p, Pmf2):
        build = coupling4_maximal if args.kind == "maximal" else coupling4_independent
        c4 = build(p, q)
        payload = dump_json(coupling4_to_obj(c4))
        audit = lemma_audit(c4.flatten())
        parts = mismatch_components(c4)
        summary = _audit_lines(cfg, audit) + [
            f"pair mismatch: {cfg.show(parts.pair_mismatch)}",
            f"coordinate mismatch: {cfg.show(parts.coord_mismatch)}",
        ]
    else:
        build = coupling_maximal if args.kind == "maximal" else coupling_independent
        c = build(p, q)
        payload = dump_json(coupling_to_obj(c))
        summary = _audit_lines(cfg, lemma_audit(c))
    if args.out:
        Path(args.out).write_text(payload, encoding="utf-8")
        for line in summary:
            _emit(line)
    else:
        sys.stdout.write(payload)
        for line in summary:
            sys.stderr.write(line + "\n")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    cfg = _config(args)
    kind = detect_coupling_kind(args.coupling_file)
    p, q = _load_pair(args.p_file, args.q_file)
    if kind == "matrix":
        if not isinstance(p, Pmf):
            raise AlphabetMismatchError(
                "a matrix coupling file needs one-dim marginal files"
            )
        alphabet, rows = load_coupling_matrix(args.coupling_file)
        if alphabet != p.alphabet:
            raise AlphabetMismatchError(
                "coupling file alphabet differs from the marginals' alphabet"
            )
        c = coupling_validate(rows, p, q)
        audit = lemma_audit(c)
        lines = ["valid: true"] + _audit_lines(cfg, audit)
        payload = {"valid": True, **audit.to_json_dict()}
    else:
        if not isinstance(p, Pmf2):
            raise AlphabetMismatchError(
                "a blocks coupling file needs two-dim marginal files"
            )
        alphabet, tensor = load_coupling4_blocks(args.coupling_file)
        if alphabet != p.alphabet:
            raise AlphabetMismatchError(
                "coupling file alphabet differs from the marginals' alphabet"
            )
        c4 = Coupling4.from_tensor(tensor, p, q)
        audit = lemma_audit(c4.flatten())
        parts = mismatch_components(c4)
        lines = (
            ["valid: true"]
            + _audit_lines(cfg, audit)
            + [
                f"pair mismatch: {cfg.show(parts.pair_mismatch)}",
                f"coordinate mismatch: {cfg.show(parts.coord_mismatch)}",
            ]
        )
        payload = {
            "valid": True,
            **audit.to_json_dict(),
            "pairMismatch": str(parts.pair_mismatch),
            "coordMismatch": str(parts.coord_mismatch),
        }
    if cfg.format == "json":
        _emit(dump_json(payload).rstrip("\n"))
    else:
        for line in lines:
            _emit(line)
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    cfg = _config(args)
    p, q = _load_pair(args.p_file, args.q_file)
    if isinstance(p, Pmf2):
        p, q = p.flatten(), q.flatten()
    coupling, certificate = lp_min_mismatch(p, q)
    problem = TransportProblem.mismatch(p, q)
    certified = certify(coupling, certificate, problem)
    v = vdist_halfsum(p, q)
    agreement = certified and certificate.objective == v
    if not agreement:
        raise CorruptedCouplingError(
            f"oracle disagreement: objective {certificate.objective}, v {v}, "
            f"certified {certified}"
        )
    solution = {
        "coupling": coupling_to_obj(coupling),
        "certificate": certificate.to_json_dict(),
    }
    if args.out:
        Path(args.out).write_text(dump_json(solution), encoding="utf-8")
    if cfg.format == "json":
        _emit(
            dump_json(
                {
                    "objective": str(certificate.objective),
                    "v": str(v),
                    "certified": certified,
                    "agreement": agreement,
                    **({} if args.out else solution),
                }
            ).rstrip("\n")
        )
    else:
        _emit(f"objective: {cfg.show(certificate.objective)}")
        _emit(f"v: {cfg.show(v)}")
        _emit(f"certified: {str(certified).lower()}")
        _emit(f"agreement: {str(agreement).lower()}")
        if not args.out:
            _emit("potentials u: " + " ".join(str(x) for x in certificate.u))
            _emit("potentials v: " + " ".join(str(x) for x in certificate.v))
    return EXIT_OK


def cmd_audit(args: argparse.Namespace) -> int:
    cfg = _config(args)
    pk = load_pmf(args.pk_file)
    epsilon = parse_rational(args.epsilon) if args.epsilon is not None else None
    report = epsilon_audit(EpsilonAuditInput(pk=pk, epsilon=epsilon))
    if cfg.format == "json":
        _emit(dump_json(report.to_json_dict()).rstrip("\n"))
    else:
        _emit(report.render_table(cfg.precision))
    if report.epsilon_consistent is False:
        sys.stderr.write(
            f"warning: epsilon = {report.epsilon} is below v = {report.v}\n"
        )
        return EXIT_EPSILON
    return EXIT_OK


def cmd_tables(args: argparse.Namespace) -> int:
    directory = resolve_fixtures_dir(args.fixtures)
    results = sync_fixtures(directory)
    failed = False
    for result in results:
        _emit(f"{result.status:8s} {result.name}")
        if result.status == "mismatch":
            failed = True
            for line in result.diff:
                _emit(f"    {line}")
    return EXIT_GOLDEN if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="couplingkit",
        description="Exact couplings, variational distance, and certified minimum mismatch.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="table")
    common.add_argument("--precision", type=int, default=5, metavar="K")

    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("vdist", parents=[common], help="variational distance of two distribution files")
    s.add_argument("p_file")
    s.add_argument("q_file")
    s.set_defaults(func=cmd_vdist)

    s = sub.add_parser("couple", parents=[common], help="construct a coupling of two distributions")
    s.add_argument("p_file")
    s.add_argument("q_file")
    s.add_argument("--kind", choices=("independent", "maximal"), required=True)
    s.add_argument("--out", metavar="PATH")
    s.set_defaults(func=cmd_couple)

    s = sub.add_parser("verify", parents=[common], help="validate a coupling file against marginals")
    s.add_argument("coupling_file")
    s.add_argument("p_file")
    s.add_argument("q_file")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("oracle", parents=[common], help="certified minimum mismatch over all couplings")
    s.add_argument("p_file")
    s.add_argument("q_file")
    s.add_argument("--out", metavar="PATH")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("audit", parents=[common], help="key-distribution audit against the uniform ideal")
    s.add_argument("pk_file")
    s.add_argument("--epsilon", metavar="R")
    s.set_defaults(func=cmd_audit)

    s = sub.add_parser("tables", parents=[common], help="regenerate golden tables and check them")
    s.add_argument("--fixtures", metavar="DIR")
    s.set_defaults(func=cmd_tables)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CouplingError as exc:
        sys.stderr.write(f"error: invalid coupling ({exc.constraint}): {exc}\n")
        return EXIT_COUPLING
    except ConstraintInfeasibleError as exc:
        sys.stderr.write(f"error: infeasible constraint: {exc}\n")
        return EXIT_COUPLING
    except AlphabetMismatchError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_ALPHABET
    except (
        ParseError,
        DistributionError,
        EnumerationLimitError,
        ShapeMismatchError,
        UnbalancedProblemError,
    ) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except CouplingKitError as exc:
        sys.stderr.write(f"internal error: {exc}\n")
        return 1
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
