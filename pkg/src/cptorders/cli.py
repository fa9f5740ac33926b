"""Command-line front end and the text file formats.

Poset files::

    # comment
    elements: a b c
    a < b
    b < c

Model files::

    tree: 0-1 1-2
    path a: 0 2
    path b: 1 1

Exit codes: 0 success, 1 input error, 2 inconclusive (search budget
exhausted, or no local rewrite exists for the given model), 3 verification
failure.
"""
from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

from .cpt import CptModel, HostTree, realizes
from .errors import BudgetExceeded, CptError, NoLocalRewrite, NotDuallyCptSuspicion, ParseError
from .modular import ModuleTree, module_tree
from .normalize import normalize
from .oracle import SearchBudget, classify, enumerate_posets
from .poset import Poset, make_poset
from .synthesize import build_associated_representation

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_VERIFY = 0, 1, 2, 3


def _content(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_poset(text: str) -> Poset:
    elements = None
    pairs = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = _content(raw)
        if not line:
            continue
        if line.startswith("elements:"):
            if elements is not None:
                raise ParseError("duplicate elements line", no, 1)
            elements = line[len("elements:"):].split()
            continue
        if elements is None:
            raise ParseError("relations before the elements line", no, 1)
        parts = line.split("<")
        if len(parts) != 2 or not all(p.split() for p in parts):
            raise ParseError(f"expected 'x < y', got {line!r}", no, raw.find(line) + 1)
        x, y = parts[0].split(), parts[1].split()
        if len(x) != 1 or len(y) != 1:
            raise ParseError(f"expected single identifiers in {line!r}", no, raw.find(line) + 1)
        for name in (x[0], y[0]):
            if name not in elements:
                raise ParseError(f"unknown element {name!r}", no, raw.find(name) + 1)
        pairs.append((x[0], y[0]))
    if elements is None:
        raise ParseError("missing elements line")
    if len(set(elements)) != len(elements):
        raise ParseError("duplicate element names")
    try:
        return make_poset(elements, pairs)
    except CptError as exc:
        raise ParseError(str(exc)) from exc


def format_poset(p: Poset) -> str:
    lines = ["elements: " + " ".join(p.elements)]
    lines += [f"{x} < {y}" for x, y in p.covers()]
    return "\n".join(lines) + "\n"


def _int(tok: str, no: int, raw: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"vertex {tok!r} is not an integer", no, raw.find(tok) + 1) from None


def parse_model(text: str) -> CptModel:
    edges, vertices, paths = [], [], {}
    seen_tree = False
    for no, raw in enumerate(text.splitlines(), 1):
        line = _content(raw)
        if not line:
            continue
        if line.startswith("tree:"):
            if seen_tree:
                raise ParseError("duplicate tree line", no, 1)
            seen_tree = True
            for tok in line[len("tree:"):].split():
                if "-" in tok:
                    u, _, v = tok.partition("-")
                    e = (_int(u, no, raw), _int(v, no, raw))
                    if e[0] == e[1] or tuple(sorted(e)) in {tuple(sorted(f)) for f in edges}:
                        raise ParseError(f"loop or repeated edge {tok!r}", no, raw.find(tok) + 1)
                    edges.append(e)
                else:
                    vertices.append(_int(tok, no, raw))
            continue
        if line.startswith("path "):
            head, sep, rest = line[len("path "):].partition(":")
            name, ends = head.strip(), rest.split()
            if not sep or not name or len(name.split()) != 1 or len(ends) != 2:
                raise ParseError(f"expected 'path x: u v', got {line!r}", no, 1)
            if name in paths:
                raise ParseError(f"duplicate path for {name!r}", no, 1)
            paths[name] = (_int(ends[0], no, raw), _int(ends[1], no, raw))
            continue
        raise ParseError(f"unrecognised line {line!r}", no, 1)
    if not seen_tree:
        raise ParseError("missing tree line")
    try:
        tree = HostTree.from_edges(edges, vertices)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    for name, (u, v) in paths.items():
        for w in (u, v):
            if w not in tree:
                raise ParseError(f"path of {name!r} uses unknown vertex {w}")
    return CptModel(tree, paths)


def format_model(m: CptModel) -> str:
    edges = m.tree.edges
    toks = [f"{u}-{v}" for u, v in edges] if edges else [str(v) for v in m.tree.vertices]
    lines = ["tree: " + " ".join(toks)]
    lines += [f"path {x}: {u} {v}" for x, (u, v) in sorted(m.paths.items())]
    return "\n".join(lines) + "\n"


def poset_dot(p: Poset) -> str:
    lines = ["digraph hasse {", "  rankdir=BT;"]
    lines += [f'  "{x}";' for x in p.elements]
    lines += [f'  "{x}" -> "{y}";' for x, y in p.covers()]
    return "\n".join(lines + ["}"]) + "\n"


def model_dot(m: CptModel) -> str:
    ends: dict[int, list[str]] = {}
    for x, (u, v) in sorted(m.paths.items()):
        ends.setdefault(u, []).append(x)
        if v != u:
            ends.setdefault(v, []).append(x)
    lines = ["graph host {"]
    for v in m.tree.vertices:
        label = f"{v}" + (": " + " ".join(ends[v]) if v in ends else "")
        lines.append(f'  {v} [label="{label}"];')
    lines += [f"  {u} -- {v};" for u, v in m.tree.edges]
    lines += [f"  // path {x}: {' '.join(map(str, m.vertex_list(x)))}" for x in sorted(m.paths)]
    return "\n".join(lines + ["}"]) + "\n"


def module_tree_dot(t: ModuleTree) -> str:
    lines = ["digraph modules {"]
    ids = {}
    for i, node in enumerate(t.nodes()):
        ids[id(node)] = i
        label = node.kind or "leaf"
        lines.append(f'  n{i} [label="{label} {{{" ".join(sorted(node.elements))}}}"];')
    for node in t.nodes():
        lines += [f"  n{ids[id(node)]} -> n{ids[id(c)]};" for c in node.children]
    return "\n".join(lines + ["}"]) + "\n"


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def cmd_classify(args) -> int:
    p = parse_poset(_read(args.poset))
    c = classify(p, SearchBudget(args.max_tree, args.expansions))
    print(f"CI {_yes(c.is_ci)}, CPT {_yes(c.is_cpt)}, dually {_yes(c.is_dually_cpt)}, "
          f"strongly {_yes(c.is_strongly_cpt)}")
    if args.emit_models:
        out = Path(args.emit_models)
        out.mkdir(parents=True, exist_ok=True)
        if c.model:
            (out / "model.txt").write_text(format_model(c.model))
        if c.dual_model:
            (out / "dual-model.txt").write_text(format_model(c.dual_model))
    return EXIT_OK


def cmd_mdtree(args) -> int:
    t = module_tree(parse_poset(_read(args.poset)))
    sys.stdout.write(module_tree_dot(t) if args.dot else t.render() + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    p = parse_poset(_read(args.poset))
    report = realizes(parse_model(_read(args.model)), p)
    print(report.describe())
    return EXIT_OK if report.ok else EXIT_VERIFY


def cmd_normalize(args) -> int:
    p = parse_poset(_read(args.poset))
    model = parse_model(_read(args.model))
    if not realizes(model, p).ok:
        print("input model does not realize the poset", file=sys.stderr)
        return EXIT_INPUT
    result = normalize(model, p)
    _write(format_model(result.model), args.output)
    for m in sorted(sorted(f) for f in result.flagged):
        print("flagged: " + " ".join(m), file=sys.stderr)
    for m in sorted(sorted(f) for f in result.unresolved):
        print("unresolved: " + " ".join(m), file=sys.stderr)
    return EXIT_OK


def cmd_synthesize(args) -> int:
    p = parse_poset(_read(args.poset))
    mp = parse_model(_read(args.model))
    mpd = None if args.dual_model == "-" else parse_model(_read(args.dual_model))
    q = parse_poset(_read(args.target))
    budget = SearchBudget(args.max_tree, args.expansions)
    model = build_associated_representation(p, mp, mpd, q, budget)
    _write(format_model(model), args.output)
    return EXIT_OK


def cmd_dot(args) -> int:
    text = _read(args.file)
    is_model = any(_content(line).startswith("tree:") for line in text.splitlines())
    sys.stdout.write(model_dot(parse_model(text)) if is_model else poset_dot(parse_poset(text)))
    return EXIT_OK


def cmd_atlas(args) -> int:
    if args.n < 0:
        raise ParseError("n must be non-negative")
    budget = SearchBudget(args.max_tree, args.expansions)
    rows = []
    posets = enumerate_posets(args.n) if args.n > 0 else []
    for i, p in enumerate(posets):
        c = classify(p, budget)
        rel = " ".join(f"{x}<{y}" for x, y in p.covers())
        rows.append([i, len(p), rel, *(int(f) for f in c.flags())])
    header = ["index", "size", "covers", "ci", "cpt", "dually_cpt", "strongly_cpt"]
    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    finally:
        if args.out:
            fh.close()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cptorders",
                                 description="Containment orders of paths in trees.")
    sub = ap.add_subparsers(dest="command", required=True)

    def budget(sp):
        sp.add_argument("--max-tree", type=int, default=None, help="largest host tree searched")
        sp.add_argument("--expansions", type=int, default=None, help="search node budget")

    sp = sub.add_parser("classify", help="CI / CPT / dually / strongly flags")
    sp.add_argument("poset")
    budget(sp)
    sp.add_argument("--emit-models", metavar="DIR")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("mdtree", help="modular decomposition tree")
    sp.add_argument("poset")
    sp.add_argument("--dot", action="store_true")
    sp.set_defaults(func=cmd_mdtree)

    sp = sub.add_parser("verify", help="check that a model realizes a poset")
    sp.add_argument("poset")
    sp.add_argument("model")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("normalize", help="normalize a model")
    sp.add_argument("poset")
    sp.add_argument("model")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_normalize)

    sp = sub.add_parser("synthesize", help="model of an associated poset")
    sp.add_argument("poset")
    sp.add_argument("model")
    sp.add_argument("dual_model", help="model of the dual, or '-' to search for one")
    sp.add_argument("target")
    sp.add_argument("-o", "--output")
    budget(sp)
    sp.set_defaults(func=cmd_synthesize)

    sp = sub.add_parser("dot", help="DOT export of a poset or model file")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_dot)

    sp = sub.add_parser("atlas", help="classification table of all posets of size n")
    sp.add_argument("n", type=int)
    sp.add_argument("--out")
    budget(sp)
    sp.set_defaults(func=cmd_atlas)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (BudgetExceeded, NoLocalRewrite) as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except NotDuallyCptSuspicion as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except CptError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
