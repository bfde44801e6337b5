"""Command-line interface.

Exit codes: 0 success, 1 unexpected error, 2 contract violation (bad input,
unstable form, missing primes), 3 resource cap exceeded.

With ``--json`` every command prints one envelope
``{"version": ..., "command": ..., "seed": ..., "result": ...}``.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .errors import ContractError, ResourceLimitError
from .forms import Form, TransformRecord, parse_form

SCHEMA_VERSION = 1
DEFAULT_SEED = 20240229


# ---------------------------------------------------------------------------
# records <-> JSON


def render_form(F: Form) -> dict:
    return {"n_vars": F.n_vars, "degree": F.degree, "text": F.to_text()}


def read_form(obj: dict) -> Form:
    F = parse_form(obj["text"], obj["n_vars"])
    if F.degree != obj["degree"] and not F.is_zero():
        raise ContractError("degree field does not match the form")
    return Form(obj["n_vars"], obj["degree"], F.terms)


def render_record(G: Form, rec: TransformRecord) -> dict:
    return {
        "form": render_form(G),
        "matrix": [list(r) for r in rec.matrix],
        "scale_exp": {str(q): e for q, e in sorted(rec.scale.items())},
        "prime": rec.prime,
        "primes_touched": sorted(rec.scale),
    }


def read_record(obj: dict) -> tuple[Form, TransformRecord]:
    scale = {int(q): int(e) for q, e in obj["scale_exp"].items()}
    return read_form(obj["form"]), TransformRecord(obj["matrix"], scale, obj["prime"])


def envelope(command: str, seed: int, result) -> dict:
    return {"version": SCHEMA_VERSION, "tool_version": __version__, "command": command, "seed": seed, "result": result}


# ---------------------------------------------------------------------------
# commands


def _read_input(args) -> Form:
    if args.form is not None:
        text = args.form
    elif args.file and args.file != "-":
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = sys.stdin.read()
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    text = " ".join(ln for ln in lines if ln)
    return parse_form(text, args.n_vars)


def _primes_arg(text: str | None):
    if text is None:
        return None
    try:
        return sorted({int(t) for t in text.split(",") if t.strip()})
    except ValueError as exc:
        raise ContractError(f"bad prime list {text!r}") from exc


def cmd_weights(args):
    from .weights import minimal_complete_set, n2_complete_set

    if args.raw:
        if args.n != 2:
            raise ContractError("--raw is available for n = 2 only")
        vecs = n2_complete_set(args.d)
    else:
        vecs = list(minimal_complete_set(args.n, args.d).vectors)
    lines = ["[" + ",".join(str(a) for a in v) + "]" for v in vecs]
    return {"n": args.n, "d": args.d, "raw": args.raw, "vectors": [list(v) for v in vecs]}, "\n".join(lines)


def cmd_minimize(args):
    from .binary import minimize_binary
    from .cubic_surface import minimize_cubic_surface
    from .plane import minimize_plane_curve

    F = _read_input(args)
    p = args.p
    if F.n_vars == 2:
        G, rec = minimize_binary(F, p)
    elif F.n_vars == 3:
        G, rec = minimize_plane_curve(F, p, strategy=args.strategy, seed=args.seed)
    elif F.n_vars == 4:
        if F.degree != 3:
            raise ContractError("quaternary forms must be cubic")
        G, rec = minimize_cubic_surface(F, p, seed=args.seed)
    else:
        raise ContractError("binary, ternary or quaternary cubic input expected")
    out = render_record(G, rec)
    out["e"] = rec.scale.get(p, 0)
    text = f"form: {G}\nmatrix: {list(map(list, rec.matrix))}\ne: {out['e']}"
    return out, text


def cmd_minimize_global(args):
    from .globalmin import minimize_global

    F = _read_input(args)
    G, rec = minimize_global(F, _primes_arg(args.primes), strategy=args.strategy, seed=args.seed)
    out = render_record(G, rec)
    text = f"form: {G}\nmatrix: {list(map(list, rec.matrix))}\nscale: {out['scale_exp']}"
    return out, text


def cmd_detect_primes(args):
    from .globalmin import candidate_primes

    F = _read_input(args)
    primes = sorted(candidate_primes(F, args.seed))
    return {"primes": primes}, ",".join(map(str, primes))


def cmd_reduce(args):
    from .reduction import adhoc_reduce

    F = _read_input(args)
    G, M = adhoc_reduce(F)
    out = render_record(G, TransformRecord(M))
    return out, f"form: {G}\nmatrix: {list(map(list, M))}"


def cmd_invariants(args):
    from .invariants import invariant_pair

    F = _read_input(args)
    tag, (a, b) = invariant_pair(F)
    names = tag.split(",")
    return {"tag": tag, "values": [str(a), str(b)]}, f"{names[0]} = {a}\n{names[1]} = {b}"


def cmd_oracle_minimize(args):
    from .oracle import oracle_minimize

    F = _read_input(args)
    G, rec = oracle_minimize(F, args.p, max_lattices=args.max_lattices, threads=args.threads)
    out = render_record(G, rec)
    out["e"] = rec.scale.get(args.p, 0)
    return out, f"form: {G}\nmatrix: {list(map(list, rec.matrix))}\ne: {out['e']}"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hypmin", description="Minimize and reduce integral models of hypersurfaces.")
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def with_input(p):
        p.add_argument("--file", help="file with the form (default: stdin)")
        p.add_argument("--form", help="the form as a string")
        p.add_argument("--n-vars", type=int, default=None, help="number of variables if not evident")
        return p

    w = sub.add_parser("weights", help="minimal complete set of weight vectors")
    w.add_argument("--n", type=int, required=True)
    w.add_argument("--d", type=int, required=True)
    w.add_argument("--raw", action="store_true", help="n = 2: the unminimized Farey-type set")
    w.set_defaults(func=cmd_weights)

    m = with_input(sub.add_parser("minimize", help="minimize at one prime"))
    m.add_argument("--p", type=int, required=True)
    m.add_argument("--strategy", choices=("dfs", "bfs", "best"), default="dfs")
    m.set_defaults(func=cmd_minimize)

    g = with_input(sub.add_parser("minimize-global", help="minimize at all candidate primes and reduce"))
    g.add_argument("--primes", help="comma-separated primes (required for cubic surfaces)")
    g.add_argument("--strategy", choices=("dfs", "bfs", "best"), default="dfs")
    g.set_defaults(func=cmd_minimize_global)

    d = with_input(sub.add_parser("detect-primes", help="candidate primes of non-minimality"))
    d.set_defaults(func=cmd_detect_primes)

    r = with_input(sub.add_parser("reduce", help="unimodular coefficient reduction"))
    r.set_defaults(func=cmd_reduce)

    i = with_input(sub.add_parser("invariants", help="invariant pair of a plane curve"))
    i.set_defaults(func=cmd_invariants)

    o = with_input(sub.add_parser("oracle-minimize", help="brute-force minimization at one prime"))
    o.add_argument("--p", type=int, required=True)
    o.add_argument("--max-lattices", type=int, default=10**6)
    o.add_argument("--threads", type=int, default=1)
    o.set_defaults(func=cmd_oracle_minimize)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result, text = args.func(args)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ContractError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(envelope(args.command, args.seed, result), sort_keys=True))
    else:
        print(text)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
