"""Command line front end: ``algvar <subcommand> ...``.

Exit codes: 0 when every check passes, 1 when a check fails, 2 on usage or
input errors.  Output is deterministic for fixed arguments and seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .groebner import Budget
from .identities import DELTA, SYSTEMS, check, delta_novikov, is_metabelian, system
from .linalg import CaseSplitError
from .parsing import ParseError, parse_scalar
from .scalars import ScalarError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DEFAULT_SEED = 20240601


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None


def _load_algebra(ref: str):
    """A file path or a catalog id such as G05^a, G12^-1 or A07."""
    from .catalog import formats, get

    if os.path.exists(ref):
        text = _read(ref)
        try:
            return formats.parse_algebra(text)
        except ParseError as exc:
            raise InputError(f"{ref}: {exc}") from None
    try:
        return get(ref)
    except (KeyError, ValueError, ParseError):
        raise InputError(f"{ref}: no such file or catalog id") from None


def _load(path: str, parser, **kw):
    text = _read(path)
    try:
        return parser(text, **kw)
    except ParseError as exc:
        raise InputError(f"{path}: {exc}") from None


def _budget(args):
    return Budget(max_pairs=args.budget) if args.budget else None


def _emit(args, payload: dict, text: str):
    if args.report == "json":
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print(text.rstrip("\n"))


def _matrix_json(m):
    return [[str(x) for x in row] for row in m]


# ---------------------------------------------------------------------------
# subcommands


def _identity(name: str, delta: str | None):
    key = name.replace("-", "_")
    if key not in SYSTEMS:
        raise InputError(f"unknown identity {name!r}; known: {', '.join(s.replace('_', '-') for s in SYSTEMS)}")
    if key != "delta_novikov":
        return system(key)
    if delta is None or delta == "symbolic":
        return delta_novikov("symbolic")
    try:
        return delta_novikov(parse_scalar(delta))
    except ParseError as exc:
        raise InputError(f"--delta: {exc}") from None


def cmd_check(args) -> int:
    A = _load_algebra(args.file)
    sys_ = _identity(args.identity, args.delta)
    if sys_.name == "metabelian_lie":
        from .identities import NotLieError

        try:
            holds = is_metabelian(A)
            detail = "holds" if holds else "fails: [[L,L],[L,L]] != 0"
        except NotLieError as exc:
            holds, detail = False, f"fails: {exc}"
    else:
        v = check(A, sys_)
        holds, detail = v.holds, v.describe()
    payload = {"identity": str(sys_), "holds": holds, "detail": detail}
    _emit(args, payload, f"{sys_}: {detail}")
    return EXIT_OK if holds else EXIT_FAIL


def cmd_derive(args) -> int:
    from .invariants import derivations

    A = _load_algebra(args.file)
    res = derivations(A, generic=bool(A.params))
    n = A.dim
    lines = [f"dim Der = {res.dimension}", f"orbit dimension = {n * n - res.dimension}"]
    if res.excluded:
        lines.append("generic value; excluded where " + ", ".join(f"{p} = 0" for p in res.excluded))
    for k, D in enumerate(res.basis, 1):
        lines.append(f"D{k} = " + "[" + ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in D) + "]")
    payload = {
        "der_dim": res.dimension,
        "orbit_dimension": n * n - res.dimension,
        "excluded": [str(p) for p in res.excluded],
        "basis": [_matrix_json(D) for D in res.basis],
    }
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_profile(args) -> int:
    from .invariants import profile

    A = _load_algebra(args.file)
    p = profile(A, generic=bool(A.params))
    d = {k: (str(v) if v is not None and not isinstance(v, (int, bool)) else v) for k, v in p.as_dict().items()}
    _emit(args, d, "\n".join(f"{k} = {v}" for k, v in d.items()))
    return EXIT_OK


def cmd_iso(args) -> int:
    from .invariants import find_isomorphism, non_isomorphism_certificate, profile

    A, B = _load_algebra(args.a), _load_algebra(args.b)
    if A.params or B.params:
        raise InputError("isomorphism search needs algebras without free parameters")
    if A.dim != B.dim:
        _emit(args, {"isomorphic": False, "detail": "dimensions differ"}, "not isomorphic: dimensions differ")
        return EXIT_FAIL
    pa, pb = profile(A), profile(B)
    if pa != pb:
        diff = ", ".join(pa.differences(pb))
        _emit(args, {"isomorphic": False, "detail": f"profiles differ in {diff}"}, f"not isomorphic: profiles differ in {diff}")
        return EXIT_FAIL
    res = find_isomorphism(A, B, budget=_budget(args), seed=args.seed)
    if res is not None:
        text = f"isomorphic ({res.structure} basis change)\ng = {_render(res.g)}\nchange_basis(A, g) == B verified"
        _emit(args, {"isomorphic": True, "structure": res.structure, "certificate": {"g": _matrix_json(res.g)}}, text)
        return EXIT_OK
    cert = non_isomorphism_certificate(A, B, budget=_budget(args))
    if cert is not None:
        payload = {"isomorphic": False, "detail": "isomorphism equations are inconsistent", "certificate": cert.to_json()}
        _emit(args, payload, f"not isomorphic: the isomorphism equations generate the unit ideal ({len(cert.polys)} generators, certificate verified)")
        return EXIT_FAIL
    _emit(args, {"isomorphic": None, "detail": "undecided within budget"}, "undecided: no isomorphism found and no certificate within budget")
    return EXIT_FAIL


def _render(m):
    from .catalog.formats import render_matrix

    return render_matrix(m)


def cmd_degenerate(args) -> int:
    from .catalog import formats
    from .geometry import verify_degeneration

    A, B = _load_algebra(args.source), _load_algebra(args.target)
    w = _load(args.witness, formats.parse_witness)
    if len(w.basis) != A.dim or A.dim != B.dim:
        raise InputError("witness, source and target dimensions differ")
    v = verify_degeneration(A, B, w)
    payload = {"verified": v.verified, "detail": v.reason, "certificate": {"witness": formats.render_witness(w)}}
    if v.limit is not None:
        payload["limit"] = v.limit.table()
    text = f"degeneration {'verified' if v.verified else 'not verified'}: {v.reason}"
    if v.limit is not None:
        text += f"\nlimit: {v.limit.table()}"
    _emit(args, payload, text)
    return EXIT_OK if v.verified else EXIT_FAIL


def cmd_nondegenerate(args) -> int:
    from .catalog import formats
    from .geometry import verify_nondegeneration

    A, B = _load_algebra(args.source), _load_algebra(args.target)
    R = _load(args.closed_set, formats.parse_closed_set, dim=A.dim)
    v = verify_nondegeneration(A, B, R, budget=_budget(args), seed=args.seed)
    payload = v.to_json()
    lines = [
        f"non-degeneration {v.status}",
        f"source satisfies conditions: {v.source_satisfies}",
        f"Borel-stable: {v.borel_stable}",
    ]
    if v.refutation is not None:
        lines.append(f"refutation: {v.refutation.status} ({v.refutation.detail})")
        for c in v.refutation.certificates:
            lines.append(f"  cell {list(c.permutation)}: 1 in ideal of {len(c.polys)} generators, certificate {'verified' if c.verify() else 'INVALID'}")
    if v.detail:
        lines.append(v.detail)
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if v.status == "verified" else EXIT_FAIL


def cmd_catalog(args) -> int:
    from .catalog import ENTRIES, formats, ids

    if args.action == "list":
        kinds = (args.kind,) if args.kind else ("lie", "assoc", "anti", "delta")
        rows = [(i, ENTRIES[i]) for k in kinds for i in ids(k)]
        payload = [{"id": i, "kind": e.kind, "table": e.algebra.table()} for i, e in rows]
        _emit(args, payload, "\n".join(f"{i:<8} {e.kind:<6} {e.algebra.table()}" for i, e in rows))
        return EXIT_OK
    if not args.id:
        raise InputError("catalog show needs an id")
    key = args.id
    if key not in ENTRIES:
        raise InputError(f"unknown catalog id {key!r}")
    e = ENTRIES[key]
    lines = [f"# {e.id} ({e.kind}), {e.source_ref}", formats.render_algebra(e.algebra).rstrip("\n")]
    payload = {"id": e.id, "kind": e.kind, "source": e.source_ref, "algebra": formats.render_algebra(e.algebra)}
    if e.lie is not None:
        lines.append(f"# commutator type {e.lie_id}, cocycle {e.cocycle}")
        payload.update(lie=e.lie_id, cocycle=str(e.cocycle))
        if e.rescaling is not None:
            lines.append(f"# table basis: {e.rescaling_note}")
            payload["rescaling"] = e.rescaling_note
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_theorem(args) -> int:
    from .catalog.verify import verify_theorem

    r = verify_theorem(args.name, budget=_budget(args), seed=args.seed)
    if args.report == "json":
        print(json.dumps(r.to_json(), indent=2))
    else:
        print(r.to_text().rstrip("\n"))
    return EXIT_OK if r.ok else EXIT_FAIL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    from .catalog.verify import THEOREMS

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized search")
    common.add_argument("--budget", type=int, default=None, help="maximum S-pairs per Groebner computation")
    common.add_argument("--report", choices=("text", "json"), default="text")

    p = argparse.ArgumentParser(prog="algvar", description="Exact verification for small nonassociative algebras.")
    p.add_argument("--version", action="version", version=f"algvar {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="check an identity system on an algebra")
    s.add_argument("file")
    s.add_argument("--identity", default="delta-novikov")
    s.add_argument("--delta", default=None, help=f"delta value, or 'symbolic' (parameter {DELTA})")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("derive", parents=[common], help="derivation algebra and orbit dimension")
    s.add_argument("file")
    s.set_defaults(func=cmd_derive)

    s = sub.add_parser("profile", parents=[common], help="isomorphism invariants")
    s.add_argument("file")
    s.set_defaults(func=cmd_profile)

    s = sub.add_parser("iso", parents=[common], help="search for an isomorphism")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(func=cmd_iso)

    s = sub.add_parser("degenerate", parents=[common], help="verify a degeneration witness")
    s.add_argument("source")
    s.add_argument("target")
    s.add_argument("--witness", required=True)
    s.set_defaults(func=cmd_degenerate)

    s = sub.add_parser("nondegenerate", parents=[common], help="refute a degeneration with closed conditions")
    s.add_argument("source")
    s.add_argument("target")
    s.add_argument("--closed-set", required=True, dest="closed_set")
    s.set_defaults(func=cmd_nondegenerate)

    s = sub.add_parser("catalog", parents=[common], help="list or show catalog algebras")
    s.add_argument("action", choices=("list", "show"))
    s.add_argument("id", nargs="?")
    s.add_argument("--kind", choices=("lie", "assoc", "anti", "delta"))
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("theorem", parents=[common], help="run a verification battery")
    s.add_argument("name", choices=THEOREMS)
    s.set_defaults(func=cmd_theorem)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, CaseSplitError, ScalarError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
