"""Command-line entry point: compute, verify and explain.

Exit status: 0 ok, 1 a check failed, 2 invalid input, 3 a pole or other
precondition failure.  BETHE_WORKERS caps the number of worker processes used
by ``verify``.
"""

import argparse
import hashlib
import json
import sys

from .errors import BetheError, InvariantError, PoleError, ShapeError, ValidationError
from .jobs import canonical_bytes, compute, explain, manifest, parse_job
from .verify import SUITES, run_suite, summarize, workers_from_env

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_POLE = 0, 1, 2, 3


def read_json(path):
    try:
        with open(path, "rb") as fh:
            return json.loads(fh.read().decode("utf-8"))
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}", "")
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ValidationError(f"{path} is not valid JSON: {exc}", "")


def write_bytes(path, data):
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
        return
    with open(path, "wb") as fh:
        fh.write(data)


def cmd_compute(args):
    job = parse_job(read_json(args.job))
    write_bytes(args.output, canonical_bytes(compute(job)))
    return EXIT_OK


def cmd_explain(args):
    job = parse_job(read_json(args.job))
    write_bytes(args.output, canonical_bytes(explain(job)))
    return EXIT_OK


def verify_report(suite, seed, scale, workers=1):
    entries = run_suite(suite, seed, scale, workers)
    key = canonical_bytes({"suite": suite, "seed": seed, "scale": scale})
    return {
        "suite": suite,
        "scale": scale,
        "summary": summarize(entries),
        "entries": [e.to_json() for e in entries],
        "manifest": manifest(hashlib.sha256(key).hexdigest(), seed),
    }


def cmd_verify(args):
    report = verify_report(args.suite, args.seed, args.scale, workers_from_env())
    write_bytes(args.output, canonical_bytes(report))
    s = report["summary"]
    print(f"{args.suite}: {s['pass']} pass, {s['fail']} fail, {s['skipped']} skipped", file=sys.stderr)
    return EXIT_FAIL if s["fail"] else EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="bethe-weights",
                                description="Exact weight functions and their verification.")
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("compute", help="evaluate a weight function job")
    c.add_argument("job")
    c.add_argument("-o", "--output", default="-")
    c.set_defaults(func=cmd_compute)
    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", required=True, choices=SUITES + ("all",))
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--scale", choices=("small", "full"), default="small")
    v.add_argument("-o", "--output", default="-")
    v.set_defaults(func=cmd_verify)
    e = sub.add_parser("explain", help="list the generator monomials of a trace job")
    e.add_argument("job")
    e.add_argument("-o", "--output", default="-")
    e.set_defaults(func=cmd_explain)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"validation error at {exc.path or '/'}: {exc.message}", file=sys.stderr)
        return EXIT_INVALID
    except (PoleError, ShapeError) as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_POLE
    except InvariantError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except BetheError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_POLE


if __name__ == "__main__":
    sys.exit(main())
