"""Command-line interface: ``stackylg verify | search | recheck | chi``.

Exit codes: 0 ok, 2 hypothesis failure, 3 verification failure,
64 usage error, 65 malformed certificate, 66 missing input / unwritable output.
"""

from __future__ import annotations

import argparse
import os
import sys

from .certificate import Certificate
from .errors import CertificateParseError, CounterexampleRefuted, DomainError, StackyError, VerificationFailed
from .forms import BinaryQuadraticForm
from .hypotheses import PrimeTriple
from .search import DEFAULT_PER_TRIPLE, discover
from .stacky import chi, genus, parse_signature
from .verifier import CertifyConfig, certify, recheck_problems

EXIT_OK = 0
EXIT_HYPOTHESIS = 2
EXIT_VERIFICATION = 3
EXIT_USAGE = 64
EXIT_DATAERR = 65
EXIT_NOINPUT = 66


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _form(text):
    try:
        return BinaryQuadraticForm.parse(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a,b,c integers, got {text!r}")


def _add_certify_options(p):
    p.add_argument("--good-prime-bound", type=int, default=100, metavar="N")
    p.add_argument("--height-bound", type=int, default=200, metavar="N")
    p.add_argument("--mode", choices=("fast", "paranoid"), default="fast")
    p.add_argument(
        "--exclude-2adic",
        dest="exclude_two_adic",
        action="store_true",
        help="count only failures at R, Q_p, Q_q, Q_r toward the verdict",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="stackylg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="certify one (p, q, r, f) instance")
    v.add_argument("--p", type=int, required=True)
    v.add_argument("--q", type=int, required=True)
    v.add_argument("--r", type=int, required=True)
    v.add_argument("--form", type=_form, required=True, metavar="a,b,c")
    v.add_argument("--out", metavar="PATH", help="certificate path (default: stdout)")
    _add_certify_options(v)

    s = sub.add_parser("search", help="find and certify admissible instances")
    s.add_argument("--bound", type=int, required=True)
    s.add_argument("--per-triple", type=int, default=DEFAULT_PER_TRIPLE)
    s.add_argument("--out-dir", default=".", metavar="PATH")
    s.add_argument("--workers", type=int, default=1)
    _add_certify_options(s)

    r = sub.add_parser("recheck", help="re-verify certificate files")
    r.add_argument("paths", nargs="*", metavar="CERT")

    c = sub.add_parser("chi", help="Euler characteristic and genus of a signature")
    c.add_argument("--signature", required=True, metavar='"g;Z;[(2),(2)]"')
    return parser


def _config(args) -> CertifyConfig:
    return CertifyConfig(
        good_prime_bound=args.good_prime_bound,
        height_bound=args.height_bound,
        mode=args.mode,
        exclude_two_adic=args.exclude_two_adic,
    )


def cmd_verify(args) -> int:
    triple = PrimeTriple(args.p, args.q, args.r)
    try:
        cert = certify(triple, args.form, _config(args))
    except (VerificationFailed, CounterexampleRefuted) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
    text = cert.dumps()
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_NOINPUT
    else:
        sys.stdout.write(text)
    if not cert.verdict:
        failed = [h.name for h in cert.hypotheses if not h.passed]
        if failed:
            print(f"hypotheses failed: {', '.join(failed)}", file=sys.stderr)
            return EXIT_HYPOTHESIS
        return EXIT_VERIFICATION
    return EXIT_OK


def cmd_search(args) -> int:
    out_dir = args.out_dir
    try:
        os.makedirs(out_dir, exist_ok=True)
    except OSError as exc:
        print(f"cannot create {out_dir}: {exc}", file=sys.stderr)
        return EXIT_NOINPUT
    if not os.access(out_dir, os.W_OK):
        print(f"{out_dir} is not writable", file=sys.stderr)
        return EXIT_NOINPUT
    try:
        certs = discover(args.bound, args.per_triple, _config(args), workers=args.workers)
        print(f"{'p':>5} {'q':>5} {'r':>5}  {'form':<20} verdict")
        for cert in certs:
            path = os.path.join(out_dir, cert.filename)
            with open(path, "w") as fh:
                fh.write(cert.dumps())
            t = cert.triple
            print(f"{t.p:>5} {t.q:>5} {t.r:>5}  {str(cert.form):<20} {cert.verdict}")
    except (VerificationFailed, CounterexampleRefuted) as exc:
        print(f"search aborted: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
    except OSError as exc:
        print(f"cannot write certificate: {exc}", file=sys.stderr)
        return EXIT_NOINPUT
    return EXIT_OK


def cmd_recheck(args) -> int:
    if not args.paths:
        print("recheck: at least one certificate path is required", file=sys.stderr)
        return EXIT_USAGE
    missing = malformed = failed = False
    for path in args.paths:
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as exc:
            print(f"{path}: cannot read: {exc}", file=sys.stderr)
            missing = True
            continue
        try:
            cert = Certificate.loads(text)
        except CertificateParseError as exc:
            print(f"{path}: MALFORMED", file=sys.stdout)
            print(f"{path}: {exc}", file=sys.stderr)
            malformed = True
            continue
        try:
            problems = recheck_problems(cert)
        except (StackyError, ValueError) as exc:
            problems = [f"recheck raised {exc!r}"]
        if problems:
            failed = True
            print(f"FAIL {path}")
            for p in problems:
                print(f"  {path}: {p}", file=sys.stderr)
        else:
            print(f"PASS {path}")
    if missing:
        return EXIT_NOINPUT
    if malformed:
        return EXIT_DATAERR
    return EXIT_VERIFICATION if failed else EXIT_OK


def cmd_chi(args) -> int:
    try:
        sig = parse_signature(args.signature)
    except (ValueError, DomainError) as exc:
        print(f"cannot parse signature: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(f"chi = {chi(sig)}")
    print(f"genus = {genus(sig)}")
    return EXIT_OK


COMMANDS = {"verify": cmd_verify, "search": cmd_search, "recheck": cmd_recheck, "chi": cmd_chi}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # --help exits 0; every other parse failure is a usage error
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
