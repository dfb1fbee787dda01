"""Command-line interface.

Exit status: 0 when the object is verified or the command succeeded, 1 when
the object is rejected (a witness is printed), 2 for unreadable input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .dirichlet import (
    Avalanche,
    FiringError,
    avalanche_from_certificate,
    certificate_for,
    dirichlet_witness,
    enumerate_dc,
    is_certificate,
    omega,
    omega_inv,
    parse_configuration,
    stabilize,
)
from .errors import NotInFamily
from .graph import Graph, GraphError, RootSetError, parse_graph, validate_roots
from .multiparking import BurningCertificate, burning_sequence, enumerate_mp, mp_violation, parse_values
from .oracle import cross_check, run_suite
from .traversal import CHOICE_FUNCTIONS, enumerate_dt, fibers, parse_traversal, phi, psi, validate_traversal


class InputError(Exception):
    pass


class Rejected(Exception):
    def __init__(self, message: str, payload: dict):
        super().__init__(message)
        self.payload = payload


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None


def _graph(args) -> Graph:
    if not args.graph:
        raise InputError("--graph is required")
    try:
        return parse_graph(Path(args.graph).read_text())
    except OSError as exc:
        raise InputError(f"cannot read graph file: {exc}") from None


def _roots(args, G: Graph, implied=None) -> frozenset[int]:
    if args.roots is None:
        if implied is None:
            raise InputError("--roots is required")
        roots = implied
    else:
        roots = frozenset(_ints(args.roots))
        if implied is not None and roots != implied:
            raise InputError(f"--roots {sorted(roots)} disagree with the payload roots {sorted(implied)}")
    return validate_roots(G, roots)


def _zeta(args):
    try:
        return CHOICE_FUNCTIONS[args.zeta]
    except KeyError:
        raise InputError(f"unknown choice function {args.zeta!r}; known: {', '.join(CHOICE_FUNCTIONS)}") from None


def _sized(G: Graph, obj, what: str):
    if len(obj) != G.n:
        raise InputError(f"{what} has {len(obj)} entries but the graph has {G.n} vertices")
    return obj


def _values(args, G):
    if args.values is None:
        raise InputError("--values is required")
    return _sized(G, parse_values(args.values), "function")


def _config(args, G):
    if args.config is None:
        raise InputError("--config is required")
    return _sized(G, parse_configuration(args.config), "configuration")


def _traversal(args):
    if args.traversal is None:
        raise InputError("--traversal is required")
    return parse_traversal(args.traversal)


# -- commands -----------------------------------------------------------------


def cmd_check_mp(args) -> dict:
    G = _graph(args)
    f = _values(args, G)
    if args.roots is not None and frozenset(_ints(args.roots)) != f.roots:
        raise InputError(f"--roots {args.roots} disagree with the inf entries of --values")
    res = burning_sequence(G, f)
    if isinstance(res, BurningCertificate):
        return {
            "text": "multiparking function; burning order " + ",".join(map(str, res.order)),
            "burning_order": list(res.order),
        }
    stuck = mp_violation(G, f) or res.remaining
    raise Rejected(
        f"not a multiparking function; U = {{{','.join(map(str, sorted(stuck)))}}} has no root or well-behaved vertex",
        {"witness_U": sorted(stuck), "burnt": list(res.removed)},
    )


def cmd_check_dc(args) -> dict:
    G = _graph(args)
    mu = _config(args, G)
    _roots(args, G, mu.roots)
    witness = dirichlet_witness(G, mu)
    if witness is None:
        order = certificate_for(G, mu)
        return {"text": "Dirichlet configuration; certificate " + ",".join(map(str, order)), "certificate": list(order)}
    kind, detail = witness
    if kind == "unstable":
        raise Rejected(f"not stable; ready vertices {sorted(detail)}", {"reason": kind, "ready": sorted(detail)})
    raise Rejected(f"not recurrent; mu + chi stabilizes to {detail}", {"reason": kind, "reached": str(detail)})


def _reject_family(exc: NotInFamily):
    w = exc.witness
    if isinstance(w, frozenset):
        payload = {"witness_U": sorted(w)}
    elif isinstance(w, tuple):
        payload = {"reason": w[0], "detail": sorted(w[1]) if isinstance(w[1], frozenset) else str(w[1])}
    else:
        payload = {"witness": str(w)}
    raise Rejected(str(exc), payload) from None


def cmd_omega(args) -> dict:
    G = _graph(args)
    f = _values(args, G)
    _roots(args, G, f.roots)
    try:
        mu = omega(G, f)
    except NotInFamily as exc:
        _reject_family(exc)
    return {"text": str(mu), "configuration": str(mu)}


def cmd_omega_inv(args) -> dict:
    G = _graph(args)
    mu = _config(args, G)
    _roots(args, G, mu.roots)
    try:
        f = omega_inv(G, mu)
    except NotInFamily as exc:
        _reject_family(exc)
    return {"text": str(f), "values": str(f)}


def cmd_psi(args) -> dict:
    G = _graph(args)
    R = _roots(args, G)
    try:
        f = psi(G, R, _traversal(args), _zeta(args))
    except NotInFamily as exc:
        raise Rejected(f"not a descending R-traversal: {exc}", {"violation": str(exc.witness)}) from None
    return {"text": str(f), "values": str(f)}


def cmd_phi(args) -> dict:
    G = _graph(args)
    f = _values(args, G)
    R = _roots(args, G, f.roots)
    bad = mp_violation(G, f)
    if bad is not None:
        raise Rejected(
            f"not a multiparking function; U = {{{','.join(map(str, sorted(bad)))}}} has no root or well-behaved vertex",
            {"witness_U": sorted(bad)},
        )
    t = phi(G, R, f, _zeta(args))
    return {"text": str(t), "traversal": str(t)}


def cmd_validate_dt(args) -> dict:
    G = _graph(args)
    R = _roots(args, G)
    t = _traversal(args)
    bad = validate_traversal(G, R, t, _zeta(args))
    if bad is not None:
        raise Rejected(str(bad), {"position": bad.position, "condition": bad.condition, "message": bad.message})
    return {"text": "descending R-traversal", "valid": True}


def _avalanche_payload(av: Avalanche) -> dict:
    lines = [str(av.initial)]
    for s in av.steps:
        label = ("roots " if s.roots else "fire ") + ",".join(map(str, s.vertices))
        lines.append(f"  --{label}--> {s.result}")
    return {"text": "\n".join(lines), "avalanche": av.to_dict()}


def cmd_avalanche(args) -> dict:
    G = _graph(args)
    mu = _config(args, G)
    _roots(args, G, mu.roots)
    if args.order:
        order = _ints(args.order)
        if sorted(order) != list(G.vertices):
            raise InputError(f"--order must be a permutation of 1..{G.n}")
    else:
        try:
            order = certificate_for(G, mu)
        except NotInFamily as exc:
            _reject_family(exc)
    if not is_certificate(G, mu, order):
        raise Rejected(f"{','.join(map(str, order))} is not a Dirichlet certificate for {mu}", {"order": list(order)})
    return _avalanche_payload(avalanche_from_certificate(G, mu, order))


def cmd_stabilize(args) -> dict:
    G = _graph(args)
    mu = _config(args, G)
    _roots(args, G, mu.roots)
    _, av = stabilize(G, mu)
    return _avalanche_payload(av)


def cmd_enumerate(args) -> dict:
    G = _graph(args)
    R = _roots(args, G)
    if args.family == "mp":
        items = sorted(str(f) for f in enumerate_mp(G, R))
    elif args.family == "dc":
        items = sorted(str(mu) for mu in enumerate_dc(G, R))
    elif args.fibers:
        groups = fibers(G, R, _zeta(args))
        out = {str(f): sorted(str(t) for t in ts) for f, ts in sorted(groups.items(), key=lambda kv: str(kv[0]))}
        text = "\n".join(f"{f}:\n" + "\n".join(f"  {t}" for t in ts) for f, ts in out.items())
        return {"text": text, "fibers": out, "count": len(out)}
    else:
        items = sorted(str(t) for t in enumerate_dt(G, R, _zeta(args)))
    return {"text": "\n".join(items), "items": items, "count": len(items)}


def cmd_crosscheck(args) -> dict:
    zeta = _zeta(args)
    if args.suite is not None:
        if not 1 <= args.suite <= 6:
            raise InputError("--suite must be between 1 and 6")
        reports = run_suite(args.suite, zeta, jobs=args.jobs)
    else:
        G = _graph(args)
        reports = [cross_check(G, _roots(args, G), zeta)]
    failed = [r for r in reports if not r.passed]
    text = "\n".join(str(r) for r in reports)
    text += f"\n{len(reports) - len(failed)}/{len(reports)} passed"
    payload = {"text": text, "reports": [r.to_dict() for r in reports]}
    if failed:
        raise Rejected(f"{len(failed)} cross-check(s) failed", payload)
    return payload


COMMANDS = {
    "check-mp": (cmd_check_mp, "verify a multiparking function (prints a burning order)"),
    "check-dc": (cmd_check_dc, "verify a Dirichlet configuration (prints a certificate)"),
    "omega": (cmd_omega, "multiparking function -> Dirichlet configuration"),
    "omega-inv": (cmd_omega_inv, "Dirichlet configuration -> multiparking function"),
    "psi": (cmd_psi, "descending R-traversal -> multiparking function"),
    "phi": (cmd_phi, "multiparking function -> canonical descending R-traversal"),
    "validate-dt": (cmd_validate_dt, "check a descending R-traversal"),
    "avalanche": (cmd_avalanche, "replay a Dirichlet certificate as an avalanche"),
    "stabilize": (cmd_stabilize, "stabilize a configuration and print the trace"),
    "enumerate": (cmd_enumerate, "list every member of a family"),
    "crosscheck": (cmd_crosscheck, "exhaustive consistency checks"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", help="graph file ('n <count>' then 'e <u> <v>' lines)")
    common.add_argument("--roots", help="comma-separated root vertices, e.g. 1,4")
    common.add_argument("--zeta", default="std", help="choice function (only 'std')")
    common.add_argument("--format", choices=("human", "json"), default="human")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="multipark", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_)
        if name in ("check-mp", "omega", "phi"):
            p.add_argument("--values", help="vertex function, e.g. inf,1,1,inf")
        if name in ("check-dc", "omega-inv", "avalanche", "stabilize"):
            p.add_argument("--config", help="configuration, e.g. -inf,1,1,-inf")
        if name in ("psi", "validate-dt"):
            p.add_argument("--traversal", help="e.g. v1,e4,e1,v4,e5,v3,e3,v2,e2")
        if name == "avalanche":
            p.add_argument("--order", help="firing order (default: a certificate derived by burning)")
        if name == "enumerate":
            p.add_argument("family", choices=("mp", "dc", "dt"))
            p.add_argument("--fibers", action="store_true", help="with 'dt': group traversals by psi")
        if name == "crosscheck":
            p.add_argument("--suite", type=int, help="check every graph on up to N vertices instead of --graph")
            p.add_argument("--jobs", type=int, default=1)
    return parser


_PAYLOAD_OPTIONS = ("--config", "--values", "--order", "--traversal", "--roots")


def _glue_payloads(argv: list[str]) -> list[str]:
    # argparse reads "-inf,1,1" as an option; rewrite to "--config=-inf,1,1"
    out = []
    i = 0
    while i < len(argv):
        if argv[i] in _PAYLOAD_OPTIONS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(_glue_payloads(list(sys.argv[1:] if argv is None else argv)))
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    handler = COMMANDS[args.command][0]
    status, ok = 0, True
    try:
        payload = handler(args)
    except Rejected as exc:
        status, ok = 1, False
        payload = dict(exc.payload)
        payload["text"] = str(exc) if "text" not in payload else payload["text"] + "\n" + str(exc)
        payload["error"] = str(exc)
    except (InputError, GraphError, RootSetError, ValueError, FiringError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        doc = {"command": args.command, "ok": ok}
        doc.update({k: v for k, v in payload.items() if k != "text"})
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print(payload["text"])
    return status


if __name__ == "__main__":
    sys.exit(main())
