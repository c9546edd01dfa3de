"""``liegraph`` command line tool.  JSON goes to stdout (or ``--out``).

Exit status: 0 on success, 1 when an input fails validation, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from liegraph.exactq import format_rational
from liegraph.graph_complex import (
    VARIANTS,
    GraphVector,
    cocycle_basis,
    delta,
    delta_sharp,
    vector_from_json,
    vector_to_json,
)
from liegraph.graphs import (
    InvalidGraph,
    automorphism_count,
    enumerate_trivalent,
    graph_from_json,
    graph_to_json,
    has_self_loop,
    is_connected,
    to_dot,
)

__all__ = ["main", "run", "build_parser"]


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="liegraph", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def out(sp):
        sp.add_argument("--out", type=Path, help="write output here instead of stdout")
        return sp

    sp = out(sub.add_parser("enumerate", help="connected/disconnected trivalent graphs"))
    sp.add_argument("--order", type=int, required=True)
    sp.add_argument("--connected", action="store_true")
    sp.add_argument("--no-self-loops", action="store_true")

    out(sub.add_parser("aut", help="automorphism count")).add_argument("--in", dest="inp", required=True)

    for name, text in (("delta", "differential of a graph or vector"), ("cocycle-check", "is the input closed")):
        sp = out(sub.add_parser(name, help=text))
        sp.add_argument("--in", dest="inp", required=True)
        sp.add_argument("--sharp", action="store_true", help="use the self-loop-free quotient")

    sp = out(sub.add_parser("cohomology", help="degree-0 cohomology basis"))
    sp.add_argument("--order", type=int, required=True)
    sp.add_argument("--variant", choices=["full", "quotient", "self-loop-only"], default="full")

    sp = out(sub.add_parser("cs-series", help="generating-series cocycle of one order"))
    sp.add_argument("--order", type=int, required=True)
    sp.add_argument("--no-self-loops", action="store_true")

    sp = out(sub.add_parser("census", help="perfect-matching census"))
    sp.add_argument("--order", type=int, required=True)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--allow-order-3", action="store_true")

    sp = out(sub.add_parser("weight", help="Lie factor of a closed graph"))
    sp.add_argument("--graph", required=True)
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--xi", help="rank-2 tensor JSON for self-loops (default: zero)")

    out(sub.add_parser("lie-check", help="Killing/Casimir/IHX checks")).add_argument(
        "--algebra", required=True
    )

    out(sub.add_parser("export-dot", help="Graphviz export")).add_argument(
        "--in", dest="inp", required=True
    )
    return p


def _load(path: str):
    return json.loads(Path(path).read_text(encoding="utf-8"))


def _algebra(name: str):
    from liegraph.lie import algebra_from_json, builtin

    try:
        return builtin(name)
    except KeyError:
        return algebra_from_json(_load(name))


def _cmd_enumerate(a):
    rows = []
    for t in enumerate_trivalent(a.order, connected=a.connected, allow_self_loops=not a.no_self_loops):
        rows.append(
            {
                "graph": graph_to_json(t),
                "aut": automorphism_count(t),
                "connected": is_connected(t),
                "self_loops": has_self_loop(t),
            }
        )
    return rows


def _cmd_aut(a):
    return {"aut": automorphism_count(graph_from_json(_load(a.inp)).topology)}


def _apply(a, v: GraphVector) -> GraphVector:
    return delta_sharp(v) if a.sharp else delta(v)


def _cmd_delta(a):
    return vector_to_json(_apply(a, vector_from_json(_load(a.inp))))


def _cmd_cocycle(a):
    image = _apply(a, vector_from_json(_load(a.inp)))
    return {"cocycle": not image, "image": vector_to_json(image)}


def _cmd_cohomology(a):
    variant = a.variant.replace("-", "_")
    assert variant in VARIANTS
    vecs = cocycle_basis(a.order, variant)
    return {
        "order": a.order,
        "degree": 0,
        "variant": a.variant,
        "dimension": len(vecs),
        "basis": [vector_to_json(v) for v in vecs],
    }


def _cmd_cs(a):
    from liegraph.series import cs_cocycle

    v = cs_cocycle(a.order, include_self_loops=not a.no_self_loops)
    image = delta_sharp(v) if a.no_self_loops else delta(v)
    return {
        "order": a.order,
        "self_loops": not a.no_self_loops,
        "cocycle": not image,
        "vector": vector_to_json(v),
    }


def _cmd_census(a):
    from liegraph.series import census_to_json, pairing_census

    r = pairing_census(a.order, workers=max(1, a.workers), allow_order_3=a.allow_order_3)
    out = census_to_json(r)
    out["identity_holds"] = r.identity_holds
    return out


def _cmd_weight(a):
    from liegraph.lie import Tensor, graph_weight, tensor_from_json

    g = _algebra(a.algebra)
    graph = graph_from_json(_load(a.graph))
    xi = tensor_from_json(_load(a.xi), g.dim) if a.xi else Tensor.zero(2, g.dim)
    return {"value": format_rational(graph_weight(g, graph, xi))}


def _cmd_lie(a):
    from liegraph import lie

    g = _algebra(a.algebra)
    C = lie.casimir(g)
    return {
        "dim": g.dim,
        "basis": list(g.basis_labels),
        "killing": [[format_rational(x) for x in row] for row in g.killing_matrix],
        "casimir": [[format_rational(x) for x in row] for row in g.casimir_matrix],
        "casimir_annihilated": lie.bracket_map(g, C).is_zero(),
        "ihx": lie.ihx_check(g),
        "bracket_kernel_dim": lie.bracket_kernel_dim(g),
        "antisymmetric_kernel_dim": len(lie.antisymmetric_kernel(g)),
    }


def _cmd_dot(a):
    return to_dot(graph_from_json(_load(a.inp)))


COMMANDS = {
    "enumerate": _cmd_enumerate,
    "aut": _cmd_aut,
    "delta": _cmd_delta,
    "cocycle-check": _cmd_cocycle,
    "cohomology": _cmd_cohomology,
    "cs-series": _cmd_cs,
    "census": _cmd_census,
    "weight": _cmd_weight,
    "lie-check": _cmd_lie,
    "export-dot": _cmd_dot,
}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        a = build_parser().parse_args(argv)
    except _UsageError as exc:
        stderr.write(str(exc))
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    from liegraph.lie import InvalidAlgebra

    try:
        result = COMMANDS[a.command](a)
    except InvalidGraph as exc:
        _diag(stderr, "invalid graph", [v.to_json() for v in exc.violations])
        return 1
    except (InvalidAlgebra, ValueError, KeyError, TypeError) as exc:
        _diag(stderr, "invalid input", [{"message": str(exc)}])
        return 1
    except (OSError, json.JSONDecodeError) as exc:
        _diag(stderr, "cannot read input", [{"message": str(exc)}])
        return 1
    text = result if isinstance(result, str) else json.dumps(result, indent=2) + "\n"
    if a.out:
        a.out.write_text(text, encoding="utf-8")
    else:
        stdout.write(text)
    return 0


def _diag(stream, kind, items):
    stream.write(json.dumps({"error": kind, "violations": items}) + "\n")


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
