"""Command-line front end: ``cubic-lattices <subcommand> [input] [options]``.

Exit codes: 0 YES or computed, 1 NO, 2 UNDECIDED, 64 usage error,
65 malformed input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Any

from . import catalog
from .classify import (
    NO,
    UNDECIDED,
    YES,
    ClassifyError,
    DecisionReport,
    GenusSearchBudget,
    LocalGenusData,
    _jsonable,
    decide_A,
    decide_A0,
    decide_local_rootless,
    decide_T,
    invariant_summary,
)
from .forms import FiniteQuadraticForm, FormError, bilinear_form, discriminant_form
from .lattice import GluingData, IntLattice, LatticeError, glue, loads
from .padic import LocalError, jordan_decompose, jordan_symbol
from .sampling import random_even_positive
from .shortvec import NotPositiveDefinite, roots, short_vectors

EXIT_OK, EXIT_NO, EXIT_UNDECIDED, EXIT_USAGE, EXIT_DATAERR = 0, 1, 2, 64, 65
_VERDICT_EXIT = {YES: EXIT_OK, NO: EXIT_NO, UNDECIDED: EXIT_UNDECIDED}


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("input", nargs="?", help="file with a Gram matrix, or - for stdin")
    common.add_argument("--catalog", help="catalog name, NAME(k), diag:a,b,... or a +-sum")
    common.add_argument("--gram", help="Gram matrix given inline as JSON")
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--seed", type=int, default=None)

    p = _Parser(prog="cubic-lattices", description="Lattice invariants and cubic fourfold lattice decisions")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    a = sub.add_parser("analyze", parents=[common], help="invariants of a lattice")
    a.add_argument("--prime", type=int, help="restrict local data to one prime")
    s = sub.add_parser("shortvec", parents=[common], help="vectors up to a norm bound")
    s.add_argument("--bound", type=int, required=True)
    sub.add_parser("roots", parents=[common], help="norm-2 vectors")
    sub.add_parser("glue", parents=[common], help="overlattice from gluing data (JSON)")
    sub.add_parser("decide-a0", parents=[common], help="is S a primitive algebraic lattice")
    sub.add_parser("decide-a", parents=[common], help="is A a full algebraic lattice")
    t = sub.add_parser("decide-t", parents=[common], help="is T a transcendental lattice")
    t.add_argument("--budget", help="e.g. rank=5,candidates=200000,seconds=30,diag=40")
    t.add_argument("--certificate", help="file with a K Gram matrix or an embedding matrix")
    sub.add_parser("genus-local", parents=[common], help="local rootless-genus criterion")
    c = sub.add_parser("catalog", parents=[common], help="list or show catalog lattices")
    c.add_argument("--random", type=int, metavar="RANK", help="print a random even positive-definite Gram matrix")
    return p


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(str(exc)) from exc


def _raw_input(args) -> str | None:
    given = [x for x in (args.input, args.catalog, args.gram) if x is not None]
    if len(given) > 1:
        raise UsageError("give exactly one of INPUT, --catalog, --gram")
    if args.gram is not None:
        return args.gram
    if args.input is not None:
        return _read_text(args.input)
    return None


def _lattice(args) -> IntLattice:
    if args.catalog is not None and args.input is None and args.gram is None:
        return catalog.lookup(args.catalog)
    text = _raw_input(args)
    if text is None:
        raise UsageError("an input lattice is required")
    return loads(text)


def parse_budget(spec: str | None) -> GenusSearchBudget:
    if not spec:
        return GenusSearchBudget()
    keys = {"rank": "max_rank", "det": "max_det", "diag": "max_diag",
            "candidates": "max_candidates", "seconds": "seconds"}
    kwargs: dict[str, Any] = {}
    for item in spec.split(","):
        key, _, value = item.partition("=")
        if key.strip() not in keys or not value:
            raise UsageError(f"bad budget entry {item!r}")
        conv = float if key.strip() == "seconds" else int
        try:
            kwargs[keys[key.strip()]] = conv(value)
        except ValueError as exc:
            raise UsageError(f"bad budget entry {item!r}") from exc
    try:
        return GenusSearchBudget(**kwargs)
    except ClassifyError as exc:
        raise UsageError(str(exc)) from exc


# ---------------------------------------------------------------------------
# subcommands; each returns (exit code, JSON document, text lines)


def cmd_analyze(args):
    lat = _lattice(args)
    doc = invariant_summary(lat)
    form = discriminant_form(lat) if lat.is_even else bilinear_form(lat)
    primes = [args.prime] if args.prime else form.primes()
    doc["jordan"] = {str(p): jordan_symbol(jordan_decompose(lat, p), p) for p in primes}
    if args.prime and lat.is_even:
        doc["local"] = {k: v for k, v in doc["local"].items() if k == str(args.prime)}
    lines = [
        f"rank: {lat.rank}",
        f"signature: {tuple(doc['signature'])}",
        f"det: {doc['det']}",
        f"parity: {'even' if lat.is_even else 'odd'}",
        f"invariant factors: {doc['factors']}",
        f"l(A): {doc['l']}",
    ]
    if lat.is_even:
        lines.append(f"q: {doc['q']}")
        lines.append(f"signature mod 8: {doc['signature_mod8']}")
        for p, loc in doc["local"].items():
            lines.append(f"p={p}: t={loc['t']} v={loc['v']} theta={loc['theta']}")
    lines += [f"jordan {s}" for s in doc["jordan"].values()]
    return EXIT_OK, doc, lines


def _vector_doc(pairs):
    return [{"v": list(v), "norm": n} for v, n in pairs]


def cmd_shortvec(args):
    lat = _lattice(args)
    vecs = short_vectors(lat, args.bound)
    doc = {"bound": args.bound, "count": len(vecs), "vectors": _vector_doc(vecs)}
    return EXIT_OK, doc, [f"{len(vecs)} vectors of norm <= {args.bound}"] + [f"{list(v)} {n}" for v, n in vecs]


def cmd_roots(args):
    lat = _lattice(args)
    rts = roots(lat)
    doc = {"count": len(rts), "roots": [list(v) for v in rts]}
    return EXIT_OK, doc, [f"{len(rts)} roots"] + [str(list(v)) for v in rts]


def cmd_glue(args):
    text = _raw_input(args)
    if text is None:
        raise UsageError("glue needs a JSON input with left, right, generators, images")
    try:
        obj = json.loads(text)
        data = GluingData(IntLattice(obj["left"]), IntLattice(obj["right"]),
                          obj.get("generators", []), obj.get("images", []))
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise InputError(f"bad gluing data: {exc}") from exc
    res = glue(data)
    doc = {"gram": res.lattice.matrix, "index": res.index, "det": res.lattice.det,
           "signature": list(res.lattice.signature), "even": res.lattice.is_even,
           "left_embedding": res.left_embedding, "right_embedding": res.right_embedding}
    return EXIT_OK, doc, [f"index {res.index}, det {res.lattice.det}"] + [" ".join(map(str, r)) for r in res.lattice.gram]


def _report(rep: DecisionReport):
    lines = [f"verdict: {rep.verdict}"]
    if rep.condition:
        lines.append(f"condition: {rep.condition}")
    if rep.reason:
        lines.append(f"reason: {rep.reason}")
    for k, v in rep.certificates.items():
        lines.append(f"{k}: {json.dumps(_jsonable(v), sort_keys=True)}")
    return _VERDICT_EXIT[rep.verdict], rep.to_json(), lines


def cmd_decide_a0(args):
    return _report(decide_A0(_lattice(args)))


def cmd_decide_a(args):
    return _report(decide_A(_lattice(args)))


def cmd_decide_t(args):
    lat = _lattice(args)
    cert = None
    if args.certificate:
        try:
            cert = json.loads(_read_text(args.certificate))
        except json.JSONDecodeError as exc:
            raise InputError(f"certificate is not JSON: {exc}") from exc
    return _report(decide_T(lat, parse_budget(args.budget), cert))


def cmd_genus_local(args):
    text = None if args.catalog else _raw_input(args)
    data = None
    if text is not None and text.strip().startswith("{"):
        obj = json.loads(text)
        if "t_plus" in obj:
            try:
                data = LocalGenusData(int(obj["t_plus"]), int(obj["t_minus"]),
                                      FiniteQuadraticForm.from_json(obj["form"]))
            except (KeyError, TypeError) as exc:
                raise InputError(f"bad genus data: {exc}") from exc
    if data is None:
        lat = catalog.lookup(args.catalog) if args.catalog else loads(text) if text else None
        if lat is None:
            raise UsageError("an input lattice is required")
        if not lat.is_even:
            raise InputError("genus-local needs an even lattice")
        data = LocalGenusData.from_lattice(lat)
    return _report(decide_local_rootless(data))


def cmd_catalog(args):
    if args.random is not None:
        rng = random.Random(args.seed)
        if args.random < 1:
            raise UsageError("rank must be positive")
        lat = random_even_positive(rng, args.random)
        return EXIT_OK, lat.to_json(), [" ".join(map(str, r)) for r in lat.gram]
    if args.catalog:
        lat = catalog.lookup(args.catalog)
        doc = {"name": args.catalog, "gram": lat.matrix}
        return EXIT_OK, doc, [" ".join(map(str, r)) for r in lat.gram]
    doc = {name: {"rank": lat.rank, "signature": list(lat.signature), "det": lat.det}
           for name, lat in catalog.NAMED.items()}
    return EXIT_OK, doc, [f"{k}: rank {v['rank']}, signature {tuple(v['signature'])}, det {v['det']}"
                          for k, v in doc.items()]


COMMANDS = {
    "analyze": cmd_analyze, "shortvec": cmd_shortvec, "roots": cmd_roots, "glue": cmd_glue,
    "decide-a0": cmd_decide_a0, "decide-a": cmd_decide_a, "decide-t": cmd_decide_t,
    "genus-local": cmd_genus_local, "catalog": cmd_catalog,
}


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        code, doc, lines = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return EXIT_USAGE
    except (InputError, LatticeError, FormError, LocalError, ClassifyError, NotPositiveDefinite,
            ValueError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=err)
        return EXIT_DATAERR
    if args.json:
        out.write(json.dumps(_jsonable(doc), sort_keys=True, indent=2) + "\n")
    else:
        out.write("\n".join(lines) + "\n")
    return code


def main() -> None:
    sys.exit(run())
