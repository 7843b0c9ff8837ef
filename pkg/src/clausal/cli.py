"""Command-line interface.  Every command reads files and writes files;
exit status is 0 on success (VERIFIED), 1 on REJECTED, 2 on usage or
input errors."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile

from . import builders, oracle
from .cnf import Cnf
from .dimacs import parse_dimacs, write_dimacs
from .errors import ClausalError, InputNotVerified
from .model import proof_size
from .proof_format import parse_proof, write_proof
from .proofs import check
from .redundancy import kernel
from .simulation import restrict_h_rat_proof_with_cases, translate_rat_to_bc_with_reports

log = logging.getLogger("clausal")


class UsageError(Exception):
    pass


def _read(path) -> str:
    try:
        with open(path, encoding="ascii") as f:
            return f.read()
    except (OSError, UnicodeDecodeError) as e:
        raise UsageError(f"cannot read {path}: {e}") from None


def _write(args, path, text: str) -> None:
    """Write atomically; refuse to clobber an input file unless --force."""
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    target = os.path.realpath(path)
    if not args.force and any(os.path.realpath(p) == target for p in _inputs(args)):
        raise UsageError(f"refusing to overwrite input {path} (use --force)")
    d = os.path.dirname(target) or "."
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=os.path.basename(target))
    try:
        with os.fdopen(fd, "w", encoding="ascii") as f:
            f.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    log.info("wrote %s", path)


def _inputs(args):
    out = []
    for name in ("cnf_in", "er", "pairs_in", "proof", "file"):
        v = getattr(args, name, None)
        if v:
            out.append(v)
    return out


def _cnf(path) -> Cnf:
    return parse_dimacs(_read(path))


def _er(cnf: Cnf, path) -> builders.ErProof:
    proof = parse_proof(_read(path), len(cnf))
    return builders.ErProof.from_proof(cnf, proof)


def _stats_row(family, n, t, cnf_clauses, size) -> str:
    return f"{family},{n},{t},{cnf_clauses},{'' if size is None else size}\n"


STATS_HEADER = "family,n,t,cnf_clauses,proof_size\n"


def cmd_gen(args):
    gen = builders.gen_php if args.family == "php" else builders.gen_bphp
    try:
        cnf = gen(args.n)
    except ValueError as e:
        raise UsageError(str(e)) from None
    _write(args, args.output, write_dimacs(cnf, [f"{args.family} n={args.n}"]))
    if args.stats:
        sys.stdout.write(STATS_HEADER + _stats_row(args.family, args.n, 0, len(cnf), None))
    return 0


def cmd_prove(args):
    if args.n < 1:
        raise UsageError("n must be at least 1")
    cnf = builders.gen_php(args.n)
    if args.kind == "er-php":
        er = builders.gen_cook_er_php(args.n)
        proof, t = er.to_proof(), er.t
    else:
        proof, t = builders.build_sbc_proof_of_php(args.n), 0
    if args.cnf_out:
        _write(args, args.cnf_out, write_dimacs(cnf, [f"php n={args.n}"]))
    _write(args, args.output, write_proof(proof, [f"{args.kind} n={args.n}"]))
    if args.stats:
        sys.stdout.write(STATS_HEADER + _stats_row(args.kind, args.n, t, len(cnf), proof_size(proof)))
    return 0


def cmd_transform(args):
    cnf = _cnf(args.cnf_in)
    er = _er(cnf, args.er)
    if args.kind == "g":
        out = builders.transform_g(cnf, er)
    else:
        out, pairs = builders.transform_h(cnf, er)
        if args.pairs_out:
            _write(args, args.pairs_out, pairs.to_json())
    _write(args, args.output, write_dimacs(out, [f"{args.kind.upper()} transform, t={er.t}"]))
    return 0


def cmd_build(args):
    cnf = _cnf(args.cnf_in)
    er = _er(cnf, args.er)
    make = {
        "rat-of-g": builders.build_rat_proof_of_g,
        "ger-of-h": builders.build_ger_proof_of_h,
        "sbc-of-h": builders.build_sbc_proof_of_h,
    }[args.kind]
    proof = make(cnf, er)
    _write(args, args.output, write_proof(proof, [f"{args.kind}, t={er.t}"]))
    if args.stats:
        target = builders.transform_g(cnf, er, False) if args.kind == "rat-of-g" \
            else builders.transform_h(cnf, er, False)[0]
        sys.stdout.write(STATS_HEADER + _stats_row(args.kind, "", er.t, len(target), proof_size(proof)))
    return 0


def cmd_check(args):
    cnf = _cnf(args.cnf_in)
    # id ranges are left to the checker so that they are reported per step
    proof = parse_proof(_read(args.proof))
    if args.system and args.system != proof.system:
        raise UsageError(f"--system {args.system} but the proof header says {proof.system}")
    report = check(cnf, proof)
    if not args.quiet or not report.ok:
        print(report)
    return 0 if report.ok else 1


def cmd_simulate(args):
    cnf = _cnf(args.cnf_in)
    proof = parse_proof(_read(args.proof))
    if not check(cnf, proof, require_refutation=False).ok:
        print("REJECTED: input proof does not verify", file=sys.stderr)
        return 1
    out, reports = translate_rat_to_bc_with_reports(cnf, proof)
    _write(args, args.output, write_proof(out, ["translated from rat"]))
    if args.report:
        doc = {
            "steps": [r.to_dict() for r in reports],
            "violations": sum(r.actual > r.bound for r in reports),
            "input_size": proof_size(proof),
            "output_size": proof_size(out),
            "note": "refutation_size is the length of our own refutation, "
                    "an upper bound on the minimum",
        }
        _write(args, args.report, json.dumps(doc, indent=2) + "\n")
    return 0


def cmd_restrict(args):
    gamma = _cnf(args.cnf_in)
    pairs = builders.PairAllocation.from_json(_read(args.pairs_in))
    if pairs.base_num_vars != gamma.num_vars:
        raise UsageError("pair allocation does not belong to this CNF")
    h = builders.h_from_pairs(gamma, pairs)
    proof = parse_proof(_read(args.proof))
    try:
        out, cases = restrict_h_rat_proof_with_cases(gamma, pairs, proof, h)
    except InputNotVerified as e:
        print(f"REJECTED: {e}", file=sys.stderr)
        return 1
    _write(args, args.output, write_proof(out, ["restricted from H"]))
    if args.stats:
        print(json.dumps(cases, sort_keys=True))
    return 0


def cmd_kernel(args):
    cnf = _cnf(args.file)
    res = kernel(cnf)
    print(f"kernel size {len(res.kernel)} of {len(cnf)}")
    for c in res.elimination_order:
        print(" ".join(map(str, c + (0,))))
    return 0


def _stats_rows(family, n, proof_kind):
    if family == "bphp":
        cnf = builders.gen_bphp(n)
        return _stats_row(family, n, 0, len(cnf), None)
    php = builders.gen_php(n)
    if family == "php":
        if proof_kind == "er":
            er = builders.gen_cook_er_php(n)
            return _stats_row(family, n, er.t, len(php), er.size())
        return _stats_row(family, n, 0, len(php), proof_size(builders.build_sbc_proof_of_php(n)))
    er = builders.gen_cook_er_php(n)
    if family == "g-php":
        g = builders.transform_g(php, er, False)
        return _stats_row(family, n, er.t, len(g), proof_size(builders.build_rat_proof_of_g(php, er, False)))
    h, _ = builders.transform_h(php, er, False)
    build = builders.build_ger_proof_of_h if proof_kind == "ger" else builders.build_sbc_proof_of_h
    return _stats_row(family, n, er.t, len(h), proof_size(build(php, er, verify=False)))


def cmd_stats(args):
    if args.n_from > args.n_to or args.n_from < 1:
        raise UsageError("need 1 <= --n-from <= --n-to")
    out = [STATS_HEADER]
    for n in range(args.n_from, args.n_to + 1):
        if args.family == "bphp" and (n < 2 or n & (n - 1)):
            continue
        out.append(_stats_rows(args.family, n, args.proof))
    sys.stdout.write("".join(out))
    return 0


def cmd_oracle(args):
    cnf = _cnf(args.file)
    v = oracle.sat_brute(cnf)
    if v.satisfiable:
        print("SAT")
        print(" ".join(str(k if b else -k) for k, b in sorted(v.witness.items())) + " 0")
    else:
        print("UNSAT")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiet", action="store_true", help="only print errors")
    common.add_argument("--force", action="store_true", help="allow overwriting input files")
    common.add_argument("--stats", action="store_true", help="print counts as CSV")

    p = argparse.ArgumentParser(prog="clausal", description=__doc__, parents=[common])
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    s = sub.add_parser("gen", parents=[common], help="generate PHP or BPHP in DIMACS")
    s.add_argument("family", choices=["php", "bphp"])
    s.add_argument("-n", type=int, required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("prove", parents=[common], help="emit a proof of PHP_n")
    s.add_argument("kind", choices=["er-php", "sbc-php"])
    s.add_argument("-n", type=int, required=True)
    s.add_argument("-o", "--output")
    s.add_argument("--cnf", dest="cnf_out", help="also write PHP_n here")
    s.set_defaults(func=cmd_prove)

    s = sub.add_parser("transform", parents=[common], help="apply the G or H transformation")
    s.add_argument("kind", choices=["g", "h"])
    s.add_argument("--cnf", dest="cnf_in", required=True)
    s.add_argument("--er", required=True, help="er proof of the CNF")
    s.add_argument("-o", "--output")
    s.add_argument("--pairs", dest="pairs_out", help="pair allocation JSON (h only)")
    s.set_defaults(func=cmd_transform)

    s = sub.add_parser("build", parents=[common], help="build a proof of G or H from an er proof")
    s.add_argument("kind", choices=["rat-of-g", "ger-of-h", "sbc-of-h"])
    s.add_argument("--cnf", dest="cnf_in", required=True, help="the base CNF")
    s.add_argument("--er", required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_build)

    s = sub.add_parser("check", parents=[common], help="verify a proof")
    s.add_argument("--system", choices=["res", "bc", "rat", "sbc", "ger", "er"])
    s.add_argument("--cnf", dest="cnf_in", required=True)
    s.add_argument("proof")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("simulate", parents=[common], help="translate a rat proof into bc")
    s.add_argument("kind", choices=["rat-to-bc"])
    s.add_argument("--cnf", dest="cnf_in", required=True)
    s.add_argument("proof")
    s.add_argument("-o", "--output")
    s.add_argument("--report", help="JSON report path")
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("restrict", parents=[common], help="restrict a rat proof of H to the base CNF")
    s.add_argument("kind", choices=["h-proof"])
    s.add_argument("--cnf", dest="cnf_in", required=True, help="the base CNF")
    s.add_argument("--pairs", dest="pairs_in", required=True)
    s.add_argument("proof")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_restrict)

    s = sub.add_parser("kernel", parents=[common], help="print the kernel size and elimination order")
    s.add_argument("file")
    s.set_defaults(func=cmd_kernel)

    s = sub.add_parser("stats", parents=[common], help="CSV of sizes over a range of n")
    s.add_argument("--family", choices=["php", "bphp", "g-php", "h-php"], default="php")
    s.add_argument("--n-from", type=int, default=1)
    s.add_argument("--n-to", type=int, default=4)
    s.add_argument("--proof", choices=["sbc", "er", "ger"], default="sbc",
                   help="proof kind for php (sbc/er) and h-php (sbc/ger)")
    s.set_defaults(func=cmd_stats)

    # debugging aid, kept out of the help listing
    s = sub.add_parser("oracle", parents=[common])
    s.add_argument("kind", choices=["sat"])
    s.add_argument("file")
    s.set_defaults(func=cmd_oracle)
    sub._choices_actions = [a for a in sub._choices_actions if a.dest != "oracle"]
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    logging.basicConfig(level=logging.ERROR if args.quiet else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, ClausalError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
