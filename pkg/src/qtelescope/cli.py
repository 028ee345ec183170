"""Command-line driver: ``qtelescope <subcommand> ...``.

Exit status is 0 when every check passes, 1 when a verification fails (the
report is still written) and 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Sequence

from . import __version__
from .certificates import verify_sylvester_certificate, verify_watson_certificate
from .gauss import GAUSS, gauss_verify_identity
from .series import (
    AQSeries,
    QSeries,
    gauss_lhs,
    gauss_rhs,
    rr_product,
    rr_sum,
    schur_bilateral,
    sylvester_lhs,
    watson_lhs,
    watson_rhs,
)
from .sylvester import SYLVESTER, sylvester_verify_identity
from .telescoping import (
    CellRecord,
    MissingPreimage,
    VerificationReport,
    brute_force_F,
    build_involution,
    check_bijections,
    check_telescoping,
    global_bijection_check,
)
from .watson import WATSON, schur_check, watson_verify_identity, watson_verify_recurrence

DEFAULT_Q_ORDER = 30
DEFAULT_A_ORDER = 12

INSTANCES = {"gauss": GAUSS, "watson": WATSON, "sylvester": SYLVESTER}
IDENTITIES = ("gauss", "watson", "schur", "rr1", "rr2", "sylvester")
WITH_A_ORDER = {"watson", "sylvester"}

RR_NOTE = "product side is the standard modulus-5 Rogers-Ramanujan product (literature-standard companion check)"

SERIES_NAMES = (
    "watson-lhs",
    "watson-rhs",
    "sylvester-lhs",
    "schur-bilateral",
    "rr1-product",
    "rr1-sum",
    "rr2-product",
    "rr2-sum",
    "gauss-lhs",
    "gauss-rhs",
)


class UsageError(Exception):
    pass


def named_series(name: str, q_order: int, a_order: int, n: int | None = None) -> AQSeries:
    """The series behind ``expand NAME``."""
    uni: dict[str, Callable[[], QSeries]] = {
        "schur-bilateral": lambda: schur_bilateral(q_order),
        "rr1-product": lambda: rr_product(1, q_order),
        "rr1-sum": lambda: rr_sum(1, q_order),
        "rr2-product": lambda: rr_product(2, q_order),
        "rr2-sum": lambda: rr_sum(2, q_order),
    }
    if name in uni:
        return AQSeries.from_qseries(uni[name](), 0)
    if name == "watson-lhs":
        return watson_lhs(a_order, q_order)
    if name == "watson-rhs":
        return watson_rhs(a_order, q_order)
    if name == "sylvester-lhs":
        return sylvester_lhs(a_order, q_order)
    if name in ("gauss-lhs", "gauss-rhs"):
        if n is None or n < 0:
            raise UsageError(f"{name} needs --n >= 0")
        fn = gauss_lhs if name == "gauss-lhs" else gauss_rhs
        return AQSeries.from_qseries(fn(n, q_order), 0)
    raise UsageError(f"unknown series {name!r}; choose from {', '.join(SERIES_NAMES)}")


def _n_values(args, default_max: int, start: int = 1) -> list[int]:
    if args.n is not None:
        return [args.n]
    top = default_max if args.n_max is None else args.n_max
    return list(range(start, top + 1))


def _orders(args, identity: str) -> tuple[int, int]:
    if args.a_order is not None and identity not in WITH_A_ORDER:
        raise UsageError(f"--a-order has no meaning for {identity}")
    q = DEFAULT_Q_ORDER if args.q_order is None else args.q_order
    a = DEFAULT_A_ORDER if args.a_order is None else args.a_order
    if q < 0 or a < 0:
        raise UsageError("orders must be nonnegative")
    return q, a


def cmd_verify(args) -> VerificationReport:
    ident = args.identity
    q, a = _orders(args, ident)
    if ident == "gauss":
        ns = [args.n] if args.n is not None else list(range(0, (args.n_max or 12) + 1))
        rep = VerificationReport(command="verify", instance="gauss")
        for n in ns:
            rep.extend(gauss_verify_identity(n, q))
        for n in ns:
            if n >= 1:
                sub = check_recurrence(GAUSS, n, q, 0)
                rep.cells.append(sub)
        return rep
    if ident == "watson":
        rep = watson_verify_identity(q, a)
        for n in range(1, a + 1):
            rep.extend(watson_verify_recurrence(n, q, a))
        return rep
    if ident == "sylvester":
        return sylvester_verify_identity(q, a)
    if ident == "schur":
        rep = VerificationReport(command="verify", instance="schur")
        rep.cells.append(schur_check(q))
        return rep
    which = 1 if ident == "rr1" else 2
    rep = VerificationReport(command="verify", instance=ident, notes=[RR_NOTE])
    rec = CellRecord(max_weight=q)
    s, p = rr_sum(which, q), rr_product(which, q)
    if s != p:
        i = next(i for i in range(q + 1) if s[i] != p[i])
        rec.fail("sum_equals_product", None, {"q_exp": i, "sum": str(s[i]), "product": str(p[i])})
    rep.cells.append(rec)
    return rep


def check_recurrence(inst, n: int, q_order: int, a_order: int) -> CellRecord:
    rec = CellRecord(n=n, max_weight=q_order)
    rec.counts["recurrence"] = 1
    lhs, rhs = inst.declared_recurrence(n, lambda m: brute_force_F(inst, m, q_order, a_order), q_order, a_order)
    d = lhs.first_difference(rhs)
    if d is not None:
        rec.fail("recurrence", None, {"a_exp": d[0], "q_exp": d[1], "lhs": str(d[2]), "rhs": str(d[3])})
    return rec


def _instance(name: str):
    if name not in INSTANCES:
        raise UsageError(f"{name} has no bijection instance; choose from {', '.join(INSTANCES)}")
    return INSTANCES[name]


def cmd_check_bijection(args) -> VerificationReport:
    inst = _instance(args.identity)
    if args.a_order is not None or args.q_order is not None:
        raise UsageError("check-bijection takes --max-weight, not series orders")
    weight = 16 if args.max_weight is None else args.max_weight
    k_max = args.k_max if args.k_max is not None else (None if inst is GAUSS else 3)
    return check_bijections(inst, _n_values(args, 8), k_max, weight)


def cmd_check_telescoping(args) -> VerificationReport:
    inst = _instance(args.identity)
    q, a = _orders(args, args.identity)
    if inst is GAUSS:
        a = 0
    rep = VerificationReport(command="check-telescoping", instance=inst.name)
    for n in _n_values(args, 4):
        rep.extend(check_telescoping(inst, n, q, a))
    return rep


def cmd_check_involution(args) -> VerificationReport:
    inst = _instance(args.identity)
    if args.a_order is not None or args.q_order is not None:
        raise UsageError("check-involution takes --max-weight, not series orders")
    weight = 14 if args.max_weight is None else args.max_weight
    rep = VerificationReport(command="check-involution", instance=inst.name)
    for n in _n_values(args, 6):
        try:
            _, rec = build_involution(inst, n, weight)
        except MissingPreimage as exc:
            rec = CellRecord(n=n, max_weight=weight)
            rec.fail("missing_preimage", None, str(exc))
        rec.counts["involution"] = 1
        rep.cells.append(rec)
        g = global_bijection_check(inst, n, weight)
        g.counts["global_bijection"] = 1
        rep.cells.append(g)
    return rep


def cmd_check_certificate(args) -> VerificationReport:
    if args.identity not in ("watson", "sylvester"):
        raise UsageError("certificates exist for watson and sylvester only")
    q, a = _orders(args, args.identity)
    k_max = 6 if args.k_max is None else args.k_max
    fn = verify_watson_certificate if args.identity == "watson" else verify_sylvester_certificate
    return fn(k_max, a, q).to_report()


def cmd_expand(args) -> dict:
    q = DEFAULT_Q_ORDER if args.q_order is None else args.q_order
    a = DEFAULT_A_ORDER if args.a_order is None else args.a_order
    if args.name in ("watson-lhs", "watson-rhs", "sylvester-lhs"):
        pass
    elif args.a_order is not None:
        raise UsageError(f"--a-order has no meaning for {args.name}")
    out = {"name": args.name}
    if args.n is not None:
        out["n"] = args.n
    out.update(named_series(args.name, q, a, args.n).to_json_dict())
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qtelescope", description="Exact checks of combinatorial-telescoping proofs."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q-order", type=int, default=None, help=f"q truncation (default {DEFAULT_Q_ORDER})")
    common.add_argument("--a-order", type=int, default=None, help=f"a/x truncation (default {DEFAULT_A_ORDER})")
    common.add_argument("--n", type=int, default=None, help="single n")
    common.add_argument("--n-max", type=int, default=None, help="check n = 1..N")
    common.add_argument("--k-max", type=int, default=None)
    common.add_argument("--max-weight", type=int, default=None, help="q-weight bound for exhaustive checks")
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--output", "-o", default=None, help="write the report here instead of stdout")

    sub = parser.add_subparsers(dest="command", required=True)
    for name, choices, helptext in (
        ("verify", IDENTITIES, "check an identity coefficientwise"),
        ("check-bijection", tuple(INSTANCES), "exhaustively check every phi_{n,k}"),
        ("check-telescoping", tuple(INSTANCES), "check f = g + h(k) + h(k+1) by enumeration"),
        ("check-involution", tuple(INSTANCES), "build psi and check the global bijection"),
        ("check-certificate", ("watson", "sylvester"), "check the q-Zeilberger certificates"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("identity", choices=choices)
    p = sub.add_parser("expand", parents=[common], help="print a named series as JSON")
    p.add_argument("name", help=", ".join(SERIES_NAMES))
    return parser


COMMANDS = {
    "verify": cmd_verify,
    "check-bijection": cmd_check_bijection,
    "check-telescoping": cmd_check_telescoping,
    "check-involution": cmd_check_involution,
    "check-certificate": cmd_check_certificate,
}


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text + "\n")
    else:
        with open(path, "w") as fh:
            fh.write(text + "\n")


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "expand":
            _emit(json.dumps(cmd_expand(args)), args.output)
            return 0
        report = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"qtelescope: error: {exc}", file=sys.stderr)
        return 2
    opts = {k: v for k, v in vars(args).items() if k not in ("json", "output")}
    report.options = {**opts, **report.options}
    _emit(report.to_json() if args.json else report.to_text(), args.output)
    return 0 if report.ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
