"""Command line interface: ``extutte {me,verify,k4-demo,tree,rankpoly,maxwell}``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import activities, circuits, data, suites
from .errors import ExtutteError
from .exterior import dual, from_matrix
from .matroid import rank_poly
from .ported import big_m, m_e, m_empty, ported_from_json
from .ring import ZERO, as_poly, render


def load_ported(path):
    """A ported extensor from a network file or a JSON description."""
    text = Path(path).read_text(encoding="utf-8")
    if str(path).endswith(".json") or text.lstrip().startswith("{"):
        return ported_from_json(json.loads(text))
    return circuits.incidence_extensor(circuits.parse_network(text))


def _coord_arg(text):
    return tuple(s for s in text.split(",") if s.strip()) if text else ()


def cmd_me(args, out):
    n = load_ported(args.file)
    me = m_e(n)
    if args.coord is not None:
        values = [me.coord(_coord_arg(c)) if not me.is_zero() else ZERO for c in args.coord]
        if args.json:
            payload = {",".join(_coord_arg(c)): v.to_json() for c, v in zip(args.coord, values)}
            out.write(json.dumps(payload, sort_keys=True) + "\n")
        else:
            for v in values:
                out.write(render(v) + "\n")
        return 0
    if args.json:
        out.write(json.dumps(me.to_json(), sort_keys=True) + "\n")
    else:
        for key in me.support():
            out.write(f"[{' '.join(key)}] = {render(me.coord(key))}\n")
        if me.is_zero():
            out.write("0\n")
    return 0


def cmd_verify(args, out):
    kinds = list(suites.SUITES) if args.kind == "all" else [args.kind]
    status = 0
    for kind in kinds:
        fn = suites.SUITES[kind]
        kwargs = {"seed": args.seed}
        if args.random is not None:
            kwargs["count"] = args.random
        if args.max_size is not None:
            kwargs["max_size"] = args.max_size
        res = fn(**kwargs)
        out.write(res.summary() + "\n")
        if not res.ok:
            status = 2
            out.write("counterexample: " + res.failures[0] + "\n")
    return status


def _cell(p):
    text = render(p)
    if text.startswith("1 "):
        return text[2:]
    if text.startswith("-1 "):
        return "-" + text[3:]
    return text


def _table(header, rows):
    cells = [[str(h) for h in header]] + [[_cell(x) for x in row] for row in rows]
    widths = [max(len(r[j]) for r in cells) for j in range(len(header))]
    lines = []
    for i, row in enumerate(cells):
        lines.append("  ".join(c.rjust(w) for c, w in zip(row, widths)))
        if i == 0:
            lines.append("  ".join("-" * w for w in widths))
    return lines


def k4_demo_lines():
    n = data.k4_extensor()
    o = data.k4_orientation()
    lines = ["K4 network (ports p1, p2, p3; resistors e1..e4)", ""]
    lines.append(data.K4_NET.rstrip())
    lines.append("")
    from_file = circuits.incidence_extensor(circuits.parse_network(data.K4_NET))
    lines.append("incidence extensor of the file equals N: " + str(from_file.tensor == n.tensor))
    lines.append("")
    lines.append("N (rows are oriented cuts):")
    lines += _table(data.K4_GROUND, data.K4_N)
    perp = dual(n.tensor, o)
    lines.append("")
    lines.append("canonical dual, eps(p1 p2 p3 e1 e2 e3 e4) = +1:")
    lines += _table(data.K4_GROUND, data.K4_N_PERP)
    lines.append("dual(N) equals this matrix's extensor: " + str(perp == from_matrix(data.K4_N_PERP, data.K4_GROUND)))
    lines.append("")
    space = n.space
    header = space.iota + space.upsilon + n.nonports
    k = len(n.ports)
    block = []
    for row in data.K4_N:
        block.append(row[:k] + [0] * k + [x * n.g(e) for x, e in zip(row[k:], n.nonports)])
    for row in data.K4_N_PERP:
        block.append([0] * k + row[:k] + [x * n.r(e) for x, e in zip(row[k:], n.nonports)])
    lines.append("M(N) block matrix:")
    lines += _table(header, [[as_poly(x) for x in r] for r in block])
    lines.append("its maximal minors equal M(N): " + str(from_matrix(block, header) == big_m(n, o)))
    lines.append("")
    me = m_e(n, o)
    lines.append("Pluecker coordinates of M_E(N):")
    for key in data.K4_COORDS:
        lines.append(f"  [{' '.join(key)}] = {render(me.coord(key))}")
    lines.append("")
    lines.append("signed forest contributions to [v1 i1 v3]:")
    for c in circuits.signed_forest_contributions(n, ("v1", "i1", "v3"), o):
        sign = "+" if c.sign > 0 else "-"
        lines.append(f"  A={{{','.join(c.subset)}}}  sign {sign}  weight {render(c.weight)}  minor {' * '.join(c.key)}")
    lines.append("")
    lines.append("M_0 of the six two-port oriented matroids:")
    for name, rows, _ in data.TWO_PORT_TABLE:
        value = m_empty(data.two_port_extensor(rows), None)
        terms = " + ".join(f"{render(value.coord(k))}*{k[0]}{k[1]}" for k in value.support())
        note = "  (printed with the opposite sign in the original table)" if name == data.TWO_PORT_MISPRINT else ""
        lines.append(f"  {name}: {terms}{note}")
    return lines


def cmd_k4_demo(args, out):
    out.write("\n".join(k4_demo_lines()) + "\n")
    return 0


def cmd_tree(args, out):
    n = load_ported(args.file)
    order = None
    if args.order:
        order = n.ports + _coord_arg(args.order)
        if set(order) != set(n.ground) or len(order) != len(n.ground):
            raise ExtutteError("--order must list every non-port exactly once")
    tree = activities.build_tree(n, order)
    out.write((activities.tree_to_json(tree) if args.json else activities.tree_to_text(tree)) + "\n")
    return 0


def cmd_rankpoly(args, out):
    n = load_ported(args.file)
    r = rank_poly(n)
    out.write((json.dumps(r.to_json(), sort_keys=True) if args.json else render(r)) + "\n")
    return 0


def cmd_maxwell(args, out):
    net = circuits.parse_network(Path(args.file).read_text(encoding="utf-8"))
    m = circuits.maxwell_rho21(net, args.p1, args.p2)
    if args.json:
        payload = {k: render(getattr(m, k)) for k in m._fields}
        payload["agree"] = m.agree
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        out.write(f"rho21 = ({render(m.numerator)}) / ({render(m.denominator)})\n")
        out.write(f"forests: ({render(m.forest_numerator)}) / ({render(m.forest_denominator)})\n")
        out.write(f"agree: {m.agree}\n")
    return 0 if m.agree else 2


def build_parser():
    parser = argparse.ArgumentParser(prog="extutte", description="Ported extensors and Tutte functions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("me", help="Pluecker coordinates of M_E(N)")
    p.add_argument("file", help="network file or ported-extensor JSON")
    p.add_argument("--coord", action="append", help="comma-separated copies, e.g. v1,i1,v3 (repeatable)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_me)

    p = sub.add_parser("verify", help="run a randomized property suite")
    p.add_argument("kind", choices=sorted(suites.SUITES) + ["all"])
    p.add_argument("--random", type=int, default=None, help="number of random instances")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-size", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("k4-demo", help="walk through the K4 example")
    p.set_defaults(func=cmd_k4_demo)

    p = sub.add_parser("tree", help="print a computation tree with activities")
    p.add_argument("file")
    p.add_argument("--order", help="comma-separated non-port order (smallest first)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("rankpoly", help="the ported corank-nullity polynomial")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_rankpoly)

    p = sub.add_parser("maxwell", help="transfer resistance of a two-port network")
    p.add_argument("file")
    p.add_argument("--p1")
    p.add_argument("--p2")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_maxwell)
    return parser


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except (ExtutteError, OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
