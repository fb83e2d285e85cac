"""Command line front end.  Every command prints one JSON document.

Exit codes: 0 success (including Inconclusive verdicts), 2 invalid input,
3 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import List, Optional, Sequence, Tuple

from .classify import CONFIGS, classify, h_membership
from .congruence import (
    DEFAULT_MAX_NODES,
    farey_quotient,
    n_s_structure,
    relation_search_full,
    sl2_mod_order,
)
from .criteria import TwistCollection
from .errors import BudgetExceeded, InvalidInput, TwistlabError
from .euclid import euclid_reduce
from .homology import TwistPower, curve_from_vector
from .pingpong import FreenessCertificate, pingpong_certificate, procedure_run
from .words import word_to_json

EXIT_OK, EXIT_INVALID, EXIT_BUDGET = 0, 2, 3
_PAIR = re.compile(r"^-?\d+,-?\d+$")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InvalidInput(message)


def _pair(text: str) -> Tuple[int, int]:
    a, b = text.split(",")
    return int(a), int(b)


def _items_from_json(obj, s: int) -> List[TwistPower]:
    if isinstance(obj, dict):
        if "powers" not in obj:
            raise InvalidInput('expected {"powers": [...]} or a list of curves')
        obj = obj["powers"]
    if not isinstance(obj, list):
        raise InvalidInput("curve input must be a JSON list")
    out = []
    for entry in obj:
        if isinstance(entry, dict):
            out.append(TwistPower.from_json(entry))
        elif isinstance(entry, list) and len(entry) == 2:
            out.append(TwistPower(curve_from_vector(entry), s))
        else:
            raise InvalidInput(f"cannot read curve {entry!r}")
    return out


def _load_items(args, pairs: Sequence[str], stdin) -> List[TwistPower]:
    s = args.s if args.s is not None else 1
    if s < 1:
        raise InvalidInput("--s must be positive")
    if pairs:
        return [TwistPower(curve_from_vector(_pair(p)), s) for p in pairs]
    text = args.curves
    if text is None and stdin is not None:
        text = stdin.read()
    if not text or not text.strip():
        raise InvalidInput("no curves given (use a,b arguments, --curves JSON or stdin)")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"bad JSON: {exc}") from None
    return _items_from_json(obj, s)


def _collection(items) -> TwistCollection:
    return TwistCollection(tuple(items))


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="twistlab", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_curves(name, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--s", type=int, default=None, help="exponent for curves given without one")
        sp.add_argument("--curves", help="JSON list of [a,b] or {\"powers\": [...]}")
        return sp

    with_curves("classify", "isomorphism type of the generated subgroup").add_argument(
        "--max-steps", type=int, default=None)
    with_curves("reduce", "Euclidean reduction of at most three uniform twist powers")
    with_curves("pingpong", "ping pong freeness certificate")
    with_curves("procedure", "ping pong with Hurwitz moves and slides").add_argument(
        "--max-steps", type=int, default=None)
    rel = with_curves("relations", "breadth-first search for a relation")
    rel.add_argument("--depth", type=int, default=6)
    rel.add_argument("--max-nodes", type=int, default=DEFAULT_MAX_NODES)
    rel.add_argument("--backend", choices=["python", "cython"], default=None)

    hs = sub.add_parser("hset", help="parity membership for the normalized pair configurations")
    hs.add_argument("--config", choices=CONFIGS, required=True)
    hs.add_argument("--vector", required=True, help="a,b")
    for name in ("farey", "ns", "order"):
        sp = sub.add_parser(name)
        sp.add_argument("--s", type=int, required=True)
    return p


def _dispatch(args, pairs, stdin):
    cmd = args.command
    if cmd == "hset":
        v = curve_from_vector(_pair(args.vector))
        return {"config": args.config, "vector": v.to_json(),
                "member": h_membership(args.config, v)}
    if cmd == "farey":
        return farey_quotient(args.s).to_json()
    if cmd == "ns":
        g = n_s_structure(args.s)
        out = g.to_json()
        if "curves" in g.witness:
            out["curves"] = g.witness["curves"]
        return out
    if cmd == "order":
        return {"s": args.s, "order": sl2_mod_order(args.s)}

    items = _load_items(args, pairs, stdin)
    if cmd == "classify":
        return classify(items, max_steps=args.max_steps).to_json()
    if cmd == "reduce":
        final, tr = euclid_reduce(items)
        return {"final": final.to_json(), "transcript": tr.to_json(), "verified": tr.verify()}
    c = _collection(items)
    if cmd == "pingpong":
        cert = pingpong_certificate(c)
        if isinstance(cert, FreenessCertificate):
            return {"tag": "Free", "rank": cert.rank, "certificate": cert.to_json()}
        return {"tag": "NotApplicable", **cert.to_json()}
    if cmd == "procedure":
        if args.max_steps is not None and args.max_steps < 1:
            raise InvalidInput("--max-steps must be at least 1")
        return procedure_run(c, max_steps=args.max_steps).to_json()
    if cmd == "relations":
        if args.depth < 1:
            raise InvalidInput("--depth must be at least 1")
        res = relation_search_full(list(c), args.depth, args.max_nodes, args.backend)
        return {"depth": args.depth, "nodes": res.nodes,
                "relation": None if res.relation is None else word_to_json(res.relation)}
    raise InvalidInput(f"unknown command {cmd}")


def run_command(argv: Sequence[str], stdin=None) -> Tuple[int, str, str]:
    """Run one invocation; returns (exit code, stdout text, stderr text)."""
    # a,b pairs may start with '-', which argparse would take for an option,
    # so positional pairs are pulled out and option values glued with '='
    pairs, rest = [], []
    for tok in argv:
        if _PAIR.match(tok):
            if rest and rest[-1].startswith("--") and rest[-1] != "--" and "=" not in rest[-1]:
                rest[-1] = f"{rest[-1]}={tok}"
            else:
                pairs.append(tok)
        else:
            if tok != "--":
                rest.append(tok)
    try:
        args = _build_parser().parse_args(rest)
        if pairs and args.command in ("hset", "farey", "ns", "order"):
            raise InvalidInput(f"{args.command} takes no curve arguments")
        result = _dispatch(args, pairs, stdin)
    except SystemExit as exc:  # --help
        return int(exc.code or 0), "", ""
    except BudgetExceeded as exc:
        return EXIT_BUDGET, "", f"budget exceeded: {exc}\n"
    except (TwistlabError, ValueError) as exc:
        return EXIT_INVALID, "", f"{type(exc).__name__}: {exc}\n"
    return EXIT_OK, json.dumps(result, sort_keys=True) + "\n", ""


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    stdin = None if sys.stdin is None or sys.stdin.isatty() else sys.stdin
    code, out, err = run_command(argv, stdin)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
