"""Command line driver: ``slgentle [--json] COMMAND FILE``.

Exit codes: 0 success, 1 validation or verdict failure, 2 parse error,
3 unsupported operation, 4 undecided.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .algebra import NotGentle, dimension
from .galois import pi_band, pi_sequence
from .lgformat import InputDocument, ParseError, is_symbolic, parse, parse_word
from .nodal import check_nodal
from .quiver import (
    Arrow, NotLocallyGentle, Quiver, QuiverError, Relation, classify_vertex,
    is_gentle, locally_gentle_violations,
)
from .reps import BandParameter, Undecided, band_module, check_rep, is_indecomposable, string_module
from .surface import build_surface, labeled_tiling, split
from .words import check_word, enumerate_bands, enumerate_strings
from .zembyk import excision

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_UNSUPPORTED, EXIT_UNDECIDED = 0, 1, 2, 3, 4

GREEK = {
    "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta", "iota",
    "kappa", "lambda", "mu", "nu", "xi", "pi", "rho", "sigma", "tau", "upsilon",
    "phi", "chi", "psi", "omega",
}


class CliFailure(Exception):
    def __init__(self, code: int, msg: str, payload=None):
        super().__init__(msg)
        self.code = code
        self.payload = payload


def tex_name(name: str) -> str:
    """``alpha`` -> ``\\alpha``; other names pass through."""
    return "\\" + name if name in GREEK else name


# reports; each returns (payload, text lines, exit code)


def _load_pair(doc: InputDocument):
    try:
        return doc.pair()
    except NotLocallyGentle as exc:
        raise CliFailure(EXIT_FAIL, "not locally gentle", {
            "violations": [_violation(v) for v in exc.violations]}) from None
    except QuiverError as exc:
        raise CliFailure(EXIT_FAIL, str(exc)) from None


def _violation(v) -> dict:
    return {"code": v.code, "where": v.where, "detail": v.detail}


def cmd_validate(doc, args):
    q = Quiver(doc.vertices, tuple(Arrow(a, t, h) for a, t, h, _ in doc.arrows))
    try:
        viol = locally_gentle_violations(q, [Relation(b, a) for b, a in doc.relations])
    except QuiverError as exc:
        raise CliFailure(EXIT_FAIL, str(exc)) from None
    if viol:
        return ({"valid": False, "gentle": None, "violations": [_violation(v) for v in viol]},
                ["not locally gentle"] + [f"  {v}" for v in viol], EXIT_FAIL)
    pair = doc.pair()
    g = is_gentle(pair)
    dim = dimension(pair)
    return ({"valid": True, "gentle": g, "dimension": None if math.isinf(dim) else dim,
             "violations": []},
            ["locally gentle: yes", f"gentle: {'yes' if g else 'no'}",
             f"dimension: {'infinite' if math.isinf(dim) else dim}"], EXIT_OK)


def cmd_classify(doc, args):
    pair = _load_pair(doc)
    rows, lines = [], []
    for v in pair.quiver.vertices:
        c = classify_vertex(pair, v)
        rows.append({"vertex": v, "kind": c.kind, "a": c.a, "b": c.b, "c": c.c, "d": c.d})
        wit = " ".join(f"{k}={getattr(c, k)}" for k in "abcd" if getattr(c, k))
        lines.append(f"{v}: {c.kind}" + (f" ({wit})" if wit else ""))
    return {"vertices": rows}, lines, EXIT_OK


def _arrow_row(a) -> dict:
    return {"name": a.name, "tail": a.tail, "head": a.head}


def cmd_excise(doc, args):
    pair = _load_pair(doc)
    ex = excision(pair)
    comps, lines = [], []
    for i, c in enumerate(ex.components):
        comps.append({"class": c.cls, "vertices": list(c.quiver.vertices),
                      "arrows": [_arrow_row(a) for a in c.quiver.arrows]})
        arrows = ", ".join(f"{a.name}: {a.tail}->{a.head}" for a in c.quiver.arrows)
        lines.append(f"component {i}: {c.cls} vertices {' '.join(c.quiver.vertices)}"
                     + (f" arrows {arrows}" if arrows else ""))
    vmap = {v: list(ws) for v, ws in ex.vertex_map.items()}
    return {"components": comps, "vertex_map": vmap}, lines, EXIT_OK


def _thread_row(t) -> dict:
    return {"arrows": list(t.arrows), "cyclic": t.cyclic,
            "anchor": list(t.anchor) if t.anchor else None}


def _thread_text(t) -> str:
    if t.is_empty:
        return f"empty at {t.anchor[0]}/{t.anchor[1]}"
    return ("cyclic " if t.cyclic else "") + "(" + ",".join(t.arrows) + ")"


def cmd_surface(doc, args):
    pair = _load_pair(doc)
    s = build_surface(pair)
    walks = [[f"{k}{i}" for k, i in w] for w in s.boundary_walks]
    payload = {
        "arcs": list(s.arcs),
        "fans": [_thread_row(t) for t in s.v_fans],
        "faces": [_thread_row(t) for t in s.faces],
        "euler_characteristic": s.euler_characteristic,
        "genus": s.genus,
        "boundary_components": s.boundary_components,
        "punctures_V": s.punctures_V,
        "punctures_Vstar": s.punctures_Vstar,
        "boundary_walks": walks,
        "components": [
            {"arcs": list(c.arcs), "euler_characteristic": c.euler_characteristic,
             "genus": c.genus, "boundary_components": c.boundary_components,
             "punctures_V": c.punctures_V, "punctures_Vstar": c.punctures_Vstar}
            for c in s.components
        ],
    }
    lines = [f"V{i}: {_thread_text(t)}" for i, t in enumerate(s.v_fans)]
    lines += [f"F{i}: {_thread_text(t)}" for i, t in enumerate(s.faces)]
    lines.append(f"euler characteristic {s.euler_characteristic}, genus {s.genus}, "
                 f"boundary components {s.boundary_components}, "
                 f"punctures {s.punctures_V} + {s.punctures_Vstar}")
    lines += [f"boundary: {' '.join(w)}" for w in walks]
    return payload, lines, EXIT_OK


def cmd_split(doc, args):
    pair = _load_pair(doc)
    pieces, lines = [], []
    for i, p in enumerate(split(pair)):
        q = p.pair.quiver
        pieces.append({"class": p.cls, "arcs": list(q.vertices),
                       "arrows": [_arrow_row(a) for a in q.arrows]})
        lines.append(f"piece {i}: {p.cls} arcs {' '.join(q.vertices)}"
                     + (f" arrows {','.join(a.name for a in q.arrows)}" if q.arrows else ""))
    return {"pieces": pieces}, lines, EXIT_OK


def cmd_strings(doc, args):
    pair = _load_pair(doc)
    ws = [str(w) for w in enumerate_strings(pair, args.max_len)]
    return {"max_len": args.max_len, "count": len(ws), "strings": ws}, ws, EXIT_OK


def cmd_bands(doc, args):
    pair = _load_pair(doc)
    ws = [str(w) for w in enumerate_bands(pair, args.max_period)]
    return {"max_period": args.max_period, "count": len(ws), "bands": ws}, ws, EXIT_OK


def _word(pair, text):
    w = parse_word(text)
    try:
        check_word(pair, w)
    except ValueError as exc:
        raise CliFailure(EXIT_FAIL, f"inadmissible word: {exc}") from None
    return w


def cmd_pi(doc, args):
    pair = _load_pair(doc)
    w = _word(pair, args.word)
    sigma = doc.sigma()
    pis = [str(x) for x in pi_sequence(w, sigma, pair)]
    payload = {"word": str(w), "pi": pis, "band_pi": None}
    lines = [f"pi_{i} = {x}" for i, x in enumerate(pis)]
    if w.is_band:
        payload["band_pi"] = str(pi_band(w, sigma, pair))
        lines.append(f"pi_C = {payload['band_pi']}")
    return payload, lines, EXIT_OK


def _read_matrix(path, field):
    rows = []
    with open(path) as fh:
        for no, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                rows.append([field.parse(tok) for tok in line.split()])
            except ValueError as exc:
                raise ParseError(no, str(exc)) from None
    if not rows or any(len(r) != len(rows) for r in rows):
        raise ParseError(0, "band matrix must be square and non-empty")
    return BandParameter(len(rows), rows)


def cmd_module(doc, args):
    pair = _load_pair(doc)
    field = doc.finite_field()
    if field is None:
        raise CliFailure(EXIT_UNSUPPORTED, "module construction needs a field line")
    w = _word(pair, args.word)
    sigma = doc.sigma()
    if w.is_band:
        V = _read_matrix(args.band_matrix, field) if args.band_matrix else BandParameter(1, [[1]])
        try:
            rep = band_module(pair, sigma, field, w, V)
        except ValueError as exc:
            raise CliFailure(EXIT_FAIL, str(exc)) from None
    else:
        rep = string_module(pair, sigma, field, w)
    report = check_rep(rep, pair)
    payload = {
        "word": str(w),
        "field": [field.p, field.n, list(field.modulus)],
        "dims": dict(rep.dims),
        "total_dim": rep.total_dim,
        "maps": {a: {"frob": k, "matrix": [[field.format(int(c)) for c in row] for row in M]}
                 for a, (M, k) in rep.maps.items()},
        "check_rep": report.ok,
        "failures": list(report.failures),
        "indecomposable": None,
    }
    lines = [f"dims: {' '.join(f'{v}:{d}' for v, d in rep.dims.items())}",
             f"total dimension {rep.total_dim}"]
    for a, (M, k) in rep.maps.items():
        rows = "; ".join(" ".join(field.format(int(c)) for c in row) for row in M)
        lines.append(f"{a} (frob {k}): [{rows}]")
    lines.append(f"check_rep: {'ok' if report.ok else 'FAILED'}")
    lines += [f"  {f}" for f in report.failures]
    code = EXIT_OK if report.ok else EXIT_FAIL
    if args.indecomposable:
        try:
            ind = is_indecomposable(rep, pair)
        except Undecided as exc:
            raise CliFailure(EXIT_UNDECIDED, str(exc), payload) from None
        payload["indecomposable"] = ind
        lines.append(f"indecomposable: {'yes' if ind else 'no'}")
    return payload, lines, code


def cmd_nodal(doc, args):
    pair = _load_pair(doc)
    try:
        rep = check_nodal(pair, doc.sigma(), doc.finite_field())
    except NotGentle:
        raise CliFailure(EXIT_UNSUPPORTED, "nodal check needs a gentle pair") from None
    payload = {
        "verdict": rep.verdict,
        "injective": rep.injective,
        "rad_equal": rep.rad_equal,
        "rad_dims": list(rep.rad_dims),
        "dims": list(rep.dims),
        "tensor_lengths": dict(rep.tensor_lengths),
        "hereditary_assumed": rep.hereditary_assumed,
    }
    lines = [
        f"injective: {rep.injective}",
        f"radicals equal: {rep.rad_equal} (dims {rep.rad_dims[0]}, {rep.rad_dims[1]})",
        "tensor lengths: " + " ".join(f"{v}:{n}" for v, n in rep.tensor_lengths.items()),
        "heredity of the target: assumed",
        f"verdict: {rep.verdict}",
    ]
    return payload, lines, EXIT_OK if rep.verdict else EXIT_FAIL


def _dot_id(prefix, name):
    return json.dumps(f"{prefix}:{name}")


def render_dot(pair, ex) -> str:
    """Quiver and excision; relations drawn as dashed edges between arrow midpoints."""
    out = ["digraph quiver {", "  rankdir=LR;", "  subgraph cluster_quiver {",
           '    label="quiver";']
    q = pair.quiver
    for v in q.vertices:
        out.append(f"    {_dot_id('q', v)} [label={json.dumps(v)}];")
    for a in q.arrows:
        mid = _dot_id("qa", a.name)
        out.append(f"    {mid} [shape=point];")
        out.append(f"    {_dot_id('q', a.tail)} -> {mid} [arrowhead=none];")
        out.append(f"    {mid} -> {_dot_id('q', a.head)} [label={json.dumps(a.name)}];")
    for r in pair.sorted_relations():
        out.append(f"    {_dot_id('qa', r.inner)} -> {_dot_id('qa', r.outer)} "
                   f"[style=dashed, arrowhead=none, constraint=false];")
    out += ["  }", "  subgraph cluster_excision {", '    label="excision";']
    for v in ex.quiver.vertices:
        out.append(f"    {_dot_id('x', v)} [label={json.dumps(v)}];")
    for a in ex.quiver.arrows:
        out.append(f"    {_dot_id('x', a.tail)} -> {_dot_id('x', a.head)} "
                   f"[label={json.dumps(a.name)}];")
    out += ["  }", "}"]
    return "\n".join(out) + "\n"


def cmd_dot(doc, args):
    pair = _load_pair(doc)
    text = render_dot(pair, excision(pair))
    return {"dot": text}, text.rstrip("\n").split("\n"), EXIT_OK


def render_tikz(surface) -> str:
    """Fans on a circle, each arc drawn between the fans at its two ends."""
    n = len(surface.v_fans)
    out = ["\\begin{tikzpicture}"]
    for i in range(n):
        ang = 90 - 360 * i / max(n, 1)
        style = "fill=black" if surface.v_fans[i].cyclic else "draw"
        out.append(f"  \\node[circle,{style},inner sep=1.5pt,label={ang:.1f}:$V_{{{i}}}$] "
                   f"(V{i}) at ({ang:.1f}:3) {{}};")
    ends = {}
    for i, slots in enumerate(surface.fan_slots):
        for v, e in slots:
            ends[(v, e)] = i
    for v in surface.arcs:
        a, b = ends[(v, 0)], ends[(v, 1)]
        lab = f"$\\tau_{{{tex_name(v)}}}$"
        if a == b:
            out.append(f"  \\draw (V{a}) to[loop,looseness=8] node[auto] {{{lab}}} (V{a});")
        else:
            out.append(f"  \\draw (V{a}) to[bend left=10] node[auto] {{{lab}}} (V{b});")
    out.append("\\end{tikzpicture}")
    return "\n".join(out) + "\n"


def cmd_tiling(doc, args):
    pair = _load_pair(doc)
    sigma = doc.sigma()
    t = labeled_tiling(pair, sigma)
    rows, lines = [], [f"R*: {' '.join(v for v in pair.quiver.vertices if v in t.rstar)}"]
    for fid, f in t.faces.items():
        label = str(t.face_label[fid]) if fid in t.face_label else None
        rows.append({"id": fid, "parent": f.parent, "kind": f.kind,
                     "sides": [[v, part] for v, part in f.sides],
                     "arrow": f.arrow, "label": label})
        sides = " ".join(f"{v}({part})" for v, part in f.sides)
        lines.append(f"{fid}: sides {sides}" + (f" arrow {f.arrow} label {label}" if f.arrow else ""))
    payload = {"rstar": [v for v in pair.quiver.vertices if v in t.rstar],
               "faces": rows, "symbolic": is_symbolic(sigma), "tikz": None}
    if args.tikz:
        payload["tikz"] = render_tikz(t.surface)
        lines += payload["tikz"].rstrip("\n").split("\n")
    return payload, lines, EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "classify": cmd_classify,
    "excise": cmd_excise,
    "surface": cmd_surface,
    "split": cmd_split,
    "strings": cmd_strings,
    "bands": cmd_bands,
    "pi": cmd_pi,
    "module": cmd_module,
    "nodal": cmd_nodal,
    "dot": cmd_dot,
    "tiling": cmd_tiling,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    common.add_argument("file", help="input .lg file")
    p = argparse.ArgumentParser(prog="slgentle",
                                description="Computations with locally gentle pairs.")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("validate", "classify", "excise", "surface", "split", "nodal", "dot"):
        sub.add_parser(name, parents=[common])
    sub.add_parser("strings", parents=[common]).add_argument("--max-len", type=int, default=4)
    sub.add_parser("bands", parents=[common]).add_argument("--max-period", type=int, default=4)
    sub.add_parser("pi", parents=[common]).add_argument("--word", required=True)
    m = sub.add_parser("module", parents=[common])
    m.add_argument("--word", required=True)
    m.add_argument("--band-matrix", help="file with one matrix row per line")
    m.add_argument("--indecomposable", action="store_true",
                   help="also decide indecomposability")
    sub.add_parser("tiling", parents=[common]).add_argument("--tikz", action="store_true")
    return p


def run(argv=None) -> tuple[int, str, str]:
    """Run a command; returns (exit code, stdout text, stderr text)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), "", ""
    use_json = args.json
    payload, lines, code, err = None, [], EXIT_OK, ""
    try:
        try:
            with open(args.file) as fh:
                text = fh.read()
        except OSError as exc:
            raise CliFailure(EXIT_PARSE, f"cannot read {args.file}: {exc.strerror}") from None
        doc = parse(text)
        payload, lines, code = COMMANDS[args.command](doc, args)
    except ParseError as exc:
        code, err = EXIT_PARSE, f"parse error: {exc}"
        payload = {"line": exc.line}
    except CliFailure as exc:
        code, err, payload = exc.code, str(exc), exc.payload
    if use_json:
        doc = {"command": args.command, "exit_code": code, "ok": code == EXIT_OK}
        if err:
            doc["error"] = err
        doc["result"] = payload
        return code, json.dumps(doc, indent=2) + "\n", ""
    out = "\n".join(lines) + "\n" if lines else ""
    return code, out, (err + "\n" if err else "")


def main(argv=None) -> int:
    code, out, err = run(argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
