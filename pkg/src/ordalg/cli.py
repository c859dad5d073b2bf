"""Command-line front end: ``ordalg <command> [files] [options]``.

Every command builds a JSON-ready result; ``--format text`` prints the same
content as indented ``key: value`` lines.  Exit codes: 0 success, 1 domain
error, 2 usage or parse error, 3 budget or cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Callable, Sequence
from typing import Any

from . import deduction, gaps, io, lines, linear_bases, poset, quotient, relation, universal
from .errors import CycleError, NotAChainError, OrdAlgError, ParseError, UsageError
from .poset import Poset
from .relation import RelationStructure

Result = dict[str, Any]


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit 2 itself; keep one error path
        raise UsageError(f"{self.prog}: {message}")


def _names(text: str) -> list[str]:
    return [x for x in text.split(",") if x]


def _sorted(names) -> list[str]:
    return sorted(names)


def _pairs(s: RelationStructure) -> list[list[str]]:
    return [[a, b] for a, b in s.sorted_pairs()]


def _gap_json(p: Poset, g: gaps.Gap, with_kind: bool = True) -> Result:
    out: Result = {"token": g.token, "initial": _sorted(g.initial), "final": _sorted(g.final)}
    if with_kind:
        k = gaps.classify_gap(p, g)
        out.update(
            kind=k.kind.value,
            narrow=k.narrow,
            disjunctive=k.disjunctive,
            initial_tight=k.initial_tight,
            final_tight=k.final_tight,
            neutral=_sorted(k.neutral),
        )
    return out


# ---- loading ---------------------------------------------------------------------


class Context:
    def __init__(self, args: argparse.Namespace) -> None:
        self.args = args
        self.warnings: list[str] = []
        self.exit_code = 0  # commands returning a partial result may raise it

    @property
    def budget(self) -> int:
        return self.args.budget if self.args.budget is not None else universal.default_budget()

    def load(self, path: str) -> io.RelationFile:
        rf = io.parse(path)
        self.warnings.extend(f"{path}: {w}" for w in rf.warnings)
        return rf

    def structure(self, path: str) -> RelationStructure:
        rf = self.load(path)
        s = deduction.close(rf.structure) if self.args.close else rf.structure
        self._check_kind(rf, s)
        return s

    def order(self, path: str) -> Poset:
        rf = self.load(path)
        s = rf.structure
        if self.args.close:
            p = Poset.from_structure(s, close=True)
        else:
            p = Poset.from_structure(s)
        self._check_kind(rf, p)
        return p

    def _check_kind(self, rf: io.RelationFile, s: RelationStructure) -> None:
        if rf.kind is None or rf.kind == "raw":
            return
        if not s.is_transitive():
            raise ParseError(f"declared kind {rf.kind} but the relation is not transitive", rf.kind_line or 1, 1, rf.path)
        refl = s.reflexive_mask()
        if rf.kind == "poset" and refl:
            raise ParseError("declared kind poset but some element is reflexive", rf.kind_line or 1, 1, rf.path)
        if rf.kind == "preorder" and refl != s.full_mask:
            raise ParseError("declared kind preorder but some element is not reflexive", rf.kind_line or 1, 1, rf.path)


# ---- commands -------------------------------------------------------------------


def cmd_analyze(ctx: Context) -> Result:
    s = ctx.structure(ctx.args.file)
    kern, residue = relation.kernel(s)
    out: Result = {
        "elements": list(s.elements),
        "pair_count": s.pair_count,
        "components": [list(c.elements) for c in relation.connected_components(s)],
        "kernel": list(kern.elements),
        "residue": _sorted(residue),
        "transitive": s.is_transitive(),
    }
    if not out["transitive"]:
        out["transitivity_witness"] = list(s.transitivity_witness())
        return out
    out["taxon"] = deduction.classify(s).value
    if s.reflexive_mask():
        return out
    p = Poset.from_rows(s.elements, s.rows)
    ex = poset.extremes(p)
    out["order"] = {
        "covers": _pairs(Poset.from_rows(p.elements, p.cover_rows)),
        "maxima": _sorted(ex.maxima),
        "minima": _sorted(ex.minima),
        "supremum": ex.supremum,
        "infimum": ex.infimum,
        "ramified": poset.is_ramified(p),
        "linear_extension": p.linear_extension_names(),
        "complete_lines": len(lines.line_masks(p)),
        "complete_transversals": len(lines.transversal_masks(p)),
        "blocks": [_sorted(b) for b in gaps.block_decomposition(p)],
    }
    if len(p) <= gaps.DEFAULT_GAP_CAP:
        out["order"]["gap_count"] = gaps.count_gaps(p)
    return out


def cmd_closure(ctx: Context) -> Result:
    s = ctx.load(ctx.args.file).structure
    closed, trace = deduction.deductive_closure(s)
    stages = []
    for prev, cur in zip(trace.stages, trace.stages[1:]):
        added = sorted(cur - prev)
        if added:
            stages.append([list(x) for x in added])
    return {"pairs": _pairs(closed), "stage_count": trace.stage_count, "added_by_stage": stages}


def cmd_classify(ctx: Context) -> Result:
    s = ctx.structure(ctx.args.file)
    return {"taxon": deduction.classify(s).value}


def cmd_quotient(ctx: Context) -> Result:
    s = ctx.structure(ctx.args.file)
    pre = quotient.Preorder.of(s, reflexivize=True)
    q = quotient.quotient(pre)
    return {
        "reflexivized": q.reflexivized,
        "classes": [_sorted(c) for c in q.classes],
        "class_order": _pairs(q.class_order),
        "projection": dict(sorted(q.projection.items())),
        "strict_part": _pairs(quotient.strict_part(pre)),
    }


def cmd_gaps(ctx: Context) -> Result:
    p = ctx.order(ctx.args.file)
    found = gaps.enumerate_gaps(p, ctx.args.cap)
    return {"count": len(found), "gaps": [_gap_json(p, g) for g in found]}


def cmd_gap_order(ctx: Context) -> Result:
    p = ctx.order(ctx.args.file)
    go = gaps.gap_order(p, ctx.args.cap)
    tokens = [g.token for g in gaps.enumerate_gaps(p, ctx.args.cap)]
    return {"gaps": tokens, "pairs": _pairs(go), "covers": _pairs(Poset.from_rows(go.elements, go.cover_rows))}


def cmd_fill(ctx: Context) -> Result:
    p = ctx.order(ctx.args.file)
    tokens, names = ctx.args.gap or [], ctx.args.name or []
    if len(tokens) != len(names):
        raise UsageError("give one --name per --gap")
    for nm in names:
        relation.check_token(nm)
    q = gaps.fill_simultaneous(p, [gaps.Gap.from_token(t) for t in tokens], names)
    return {"elements": list(q.elements), "pairs": _pairs(q), "covers": [list(c) for c in q.covers()]}


def cmd_phi(ctx: Context) -> Result:
    tower = universal.phi_tower(ctx.args.steps, ctx.budget, ctx.args.seed_name)
    out: Result = {
        "sizes": tower.sizes,
        "complete": tower.complete,
        "budget": tower.budget,
        "budget_report": tower.budget_report,
        "next_size_at_least": tower.next_size_at_least,
    }
    if ctx.args.details:
        out["stages"] = [
            {
                "level": st.level,
                "size": st.size,
                "new": [
                    {"name": nm, "gap": g.token if (g := st.provenance[nm]) is not None else None}
                    for nm in st.new_elements()
                ],
            }
            for st in tower.stages
        ]
    if not tower.complete:
        ctx.warnings.append(tower.budget_report or "budget exceeded")
        ctx.exit_code = 3
    return out


def cmd_universal(ctx: Context) -> Result:
    rep = universal.universality_report(ctx.args.max_size, ctx.budget, ctx.args.max_materialized, ctx.args.seed_name)
    return {
        "by_size": [
            {
                "n": r.n,
                "posets": r.posets,
                "embedded": r.embedded,
                "failures": r.failures,
                "max_stage": r.max_stage,
                "symbolic_images": r.symbolic_images,
            }
            for r in rep.sizes
        ],
        "stage_sizes": rep.stage_sizes,
        "tower_complete": rep.tower_complete,
        "conjectured_sizes": rep.conjectured,
        "all_embedded": rep.all_embedded,
    }


def cmd_chains(ctx: Context) -> Result:
    p = ctx.order(ctx.args.file)
    out: Result = {"complete_lines": [list(line.chain) for line in lines.complete_lines(p)]}
    a = ctx.args
    if a.half_ray is not None:
        ch = _names(a.half_ray)
        out["half_ray"] = {"chain": ch, "initial": lines.half_ray(p, ch, "initial"), "final": lines.half_ray(p, ch, "final")}
    if a.crossing_index is not None:
        ch = _names(a.crossing_index)
        out["crossing_index"] = {"chain": ch, "index": lines.crossing_index(p, ch)}
    if a.passes is not None:
        g = gaps.Gap.from_token(a.passes)
        reports = []
        for line in lines.complete_lines(p):
            r = lines.line_passes_gap(p, line, g)
            reports.append({"line": list(line.chain), "passes": r.passes, "criterion_agrees": r.criterion_agrees})
        out["passes"] = {"gap": g.token, "lines": reports}
    return out


def cmd_transversals(ctx: Context) -> Result:
    p = ctx.order(ctx.args.file)
    ts = lines.complete_transversals(p)
    out: Result = {
        "complete_transversals": [_sorted(t.antichain) for t in ts],
        "every_line_meets_every_transversal": lines.problem13_search(p),
    }
    a = ctx.args
    if a.partition is not None:
        part = lines.transversal_partition(p, _names(a.partition))
        out["partition"] = {"class0": _sorted(part.class0), "class1": _sorted(part.class1), "class2": _sorted(part.class2)}
    if a.cross is not None:
        if a.line is None:
            raise UsageError("--cross needs --line")
        hit = lines.transversal_crosses_line(p, _names(a.cross), _names(a.line))
        if isinstance(hit, lines.Point):
            out["cross"] = {"point": hit.element}
        else:
            out["cross"] = {"prefix": list(hit.prefix), "suffix": list(hit.suffix)}
    return out


def cmd_bases(ctx: Context) -> Result:
    s = ctx.structure(ctx.args.file)
    found = deduction.bases(s, ctx.args.mode, ctx.args.cap)
    return {"mode": ctx.args.mode, "count": len(found), "bases": [_pairs(b) for b in found]}


def cmd_linear_bases(ctx: Context) -> Result:
    p = ctx.order(ctx.args.file)
    fam = linear_bases.basis_family(p, ctx.args.mode, ctx.args.cap)
    out: Result = {
        "lines": [list(line.chain) for line in lines.complete_lines(p)],
        "mode": ctx.args.mode,
        "bases": [list(b.line_indices) for b in fam.bases],
        "case": fam.case,
    }
    if fam.line_count <= linear_bases.FAMILY_CASE_LIMIT:
        out["final_section"] = linear_bases.basis_final_section_check(p)
    return out


def cmd_decompose(ctx: Context) -> Result:
    p = ctx.order(ctx.args.file)
    return {
        "components": [list(c.elements) for c in relation.connected_components(p)],
        "disjunctive_gaps": [g.token for g in gaps.disjunctive_chain(p)],
        "blocks": [_sorted(b) for b in gaps.block_decomposition(p)],
    }


def cmd_confuse(ctx: Context) -> Result:
    structures = [ctx.structure(f) for f in ctx.args.files]
    all_orders = all(s.reflexive_mask() == 0 and s.is_transitive() for s in structures)
    if all_orders:
        ok, cycle = deduction.confusion_is_order(structures)
        if not ok:
            raise CycleError(cycle)
    merged = deduction.confuse(structures)
    return {"elements": list(merged.elements), "pairs": _pairs(merged), "is_order": all_orders}


def cmd_embed(ctx: Context) -> Result:
    target = ctx.order(ctx.args.target)
    if ctx.args.host is not None:
        host = ctx.order(ctx.args.host)
        image = universal.find_embedding(target, host)
        return {"found": image is not None, "image": dict(sorted(image.items())) if image else None}
    order = _names(ctx.args.well_order) if ctx.args.well_order else None
    emb = universal.embed_via_psi(target, order, ctx.budget, ctx.args.max_materialized, ctx.args.seed_name)
    return {
        "found": True,
        "well_order": list(emb.well_order),
        "materialized": emb.materialized,
        "image": {
            k: {"name": h.name, "stage": h.stage, "symbolic": h.symbolic, "gap": h.gap.token if h.gap else None}
            for k, h in sorted(emb.image.items())
        },
    }


def cmd_glue(ctx: Context) -> Result:
    chains = []
    for f in ctx.args.files:
        p = ctx.order(f)
        if not p.is_chain_mask(p.full_mask):
            raise NotAChainError(f"{f} is not a total order")
        chains.append(p.linear_extension_names())
    classes = [_names(c) for c in ctx.args.classes or []]
    named = {x for c in classes for x in c}
    classes += [[x] for ch in chains for x in ch if x not in named]
    glued = linear_bases.glue_orders(chains, classes)
    return {"elements": list(glued.elements), "pairs": _pairs(glued), "covers": [list(c) for c in glued.covers()]}


def cmd_dot(ctx: Context) -> Result:
    return {"dot": io.export_dot(ctx.order(ctx.args.file))}


# ---- parser and dispatch --------------------------------------------------------------


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--budget", type=_positive, default=None, help="element budget for the tower (default: $ORDALG_BUDGET or 50000)")
    common.add_argument("--close", action="store_true", help="close the input transitively before validating it")
    common.add_argument("--seed-name", default=universal.DEFAULT_SEED_NAME, help="name of the tower seed and prefix of stage elements")

    parser = _Parser(prog="ordalg", description="Ordinal algebra on finite orders.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, func: Callable[[Context], Result], help_text: str, file: bool = True) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        if file:
            sp.add_argument("file")
        sp.set_defaults(func=func)
        return sp

    add("analyze", cmd_analyze, "summary of a structure and, for orders, their main invariants")
    add("closure", cmd_closure, "deductive closure with the pairs added at each round")
    add("classify", cmd_classify, "taxon of a transitive structure")
    add("quotient", cmd_quotient, "classes, class order and strict part of a preorder")
    sp = add("gaps", cmd_gaps, "all gaps with their kinds")
    sp.add_argument("--cap", type=_positive, default=gaps.DEFAULT_GAP_CAP)
    sp = add("gap-order", cmd_gap_order, "natural order between gaps")
    sp.add_argument("--cap", type=_positive, default=gaps.DEFAULT_GAP_CAP)
    sp = add("fill", cmd_fill, "fill gaps (given as tokens like 'a,b|c') with new elements")
    sp.add_argument("--gap", action="append")
    sp.add_argument("--name", action="append")
    sp = add("phi", cmd_phi, "sizes of the tower grown from one element", file=False)
    sp.add_argument("--steps", type=_positive, required=True)
    sp.add_argument("--details", action="store_true", help="list the new elements of each stage with their gaps")
    sp = add("universal", cmd_universal, "embed every labeled order of each size into the tower", file=False)
    sp.add_argument("--max-size", type=_positive, required=True)
    sp.add_argument("--max-materialized", type=_positive, default=None)
    sp = add("chains", cmd_chains, "complete lines, half-rays, crossing index, passing through a gap")
    sp.add_argument("--half-ray", metavar="CHAIN")
    sp.add_argument("--crossing-index", metavar="CHAIN")
    sp.add_argument("--passes", metavar="GAP")
    sp = add("transversals", cmd_transversals, "complete transversals, partitions and crossings with lines")
    sp.add_argument("--partition", metavar="T")
    sp.add_argument("--cross", metavar="T")
    sp.add_argument("--line", metavar="L")
    sp = add("bases", cmd_bases, "bases of a transitive structure")
    sp.add_argument("--mode", choices=("irreducible", "absolute", "all"), default="irreducible")
    sp.add_argument("--cap", type=_positive, default=deduction.DEFAULT_BASES_CAP)
    sp = add("linear-bases", cmd_linear_bases, "linear bases of an order")
    sp.add_argument("--mode", choices=("irreducible", "absolute", "all"), default="irreducible")
    sp.add_argument("--cap", type=_positive, default=linear_bases.DEFAULT_LINE_CAP)
    add("decompose", cmd_decompose, "connected components, disjunctive gaps and blocks")
    sp = add("confuse", cmd_confuse, "union of several structures, then closure", file=False)
    sp.add_argument("files", nargs="+")
    sp = add("embed", cmd_embed, "embed an order into a host file or into the tower", file=False)
    sp.add_argument("target")
    sp.add_argument("--host")
    sp.add_argument("--well-order", metavar="LIST")
    sp.add_argument("--max-materialized", type=_positive, default=None)
    sp = add("glue", cmd_glue, "glue disjoint chains along classes", file=False)
    sp.add_argument("files", nargs="+")
    sp.add_argument("--class", dest="classes", action="append", metavar="LIST", help="comma-separated class; unlisted elements stay alone")
    add("dot", cmd_dot, "Graphviz drawing of the covering pairs")
    return parser


def _text(value: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    if isinstance(value, dict):
        out = []
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and any(isinstance(x, (dict, list)) for x in (v.values() if isinstance(v, dict) else v)):
                out.append(f"{pad}{k}:")
                out.extend(_text(v, indent + 1))
            else:
                out.append(f"{pad}{k}: {_scalar(v)}")
        return out
    if isinstance(value, list):
        out = []
        for v in value:
            if isinstance(v, dict):
                lines_ = _text(v, indent + 1)
                out.append(f"{pad}- " + lines_[0].lstrip())
                out.extend(lines_[1:])
            else:
                out.append(f"{pad}- {_scalar(v)}")
        return out
    return [f"{pad}{_scalar(value)}"]


def _scalar(v: Any) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_scalar(x)}" for k, x in v.items()) + "}"
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _input_of(args: argparse.Namespace) -> Result:
    skip = {"func", "command", "format"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _wants_json(argv: Sequence[str]) -> bool:
    argv = list(argv)
    for i, tok in enumerate(argv):
        if tok == "--format=json" or (tok == "--format" and i + 1 < len(argv) and argv[i + 1] == "json"):
            return True
    return False


def _error_json(exc: OrdAlgError) -> Result:
    err: Result = {"kind": exc.kind, "message": str(exc)}
    if isinstance(exc, CycleError):
        err["cycle"] = exc.cycle
    if isinstance(exc, ParseError):
        err.update(line=exc.line, column=exc.column)
    if hasattr(exc, "witness"):
        err["witness"] = list(exc.witness)
    if getattr(exc, "measured", None) is not None:
        err["limit"], err["measured"] = exc.limit, exc.measured
    return err


def main(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = sys.argv[1:] if argv is None else list(argv)
    fmt = "json" if _wants_json(argv) else "text"
    args = ctx = None
    try:
        args = build_parser().parse_args(argv)
        ctx = Context(args)
        result = args.func(ctx)
        code = ctx.exit_code
        report = {"command": args.command, "input": _input_of(args), "result": result, "warnings": ctx.warnings}
    except OrdAlgError as exc:
        code = exc.exit_code
        report = {
            "command": getattr(args, "command", None),
            "input": _input_of(args) if args is not None else {},
            "result": None,
            "warnings": ctx.warnings if ctx is not None else [],
            "error": _error_json(exc),
        }
        print(f"ordalg: {exc.kind}: {exc}", file=stderr)
    if fmt == "json":
        stdout.write(json.dumps(report, indent=2) + "\n")
        return code
    if report["result"] is not None:
        if report["command"] == "dot":
            stdout.write(report["result"]["dot"])
        else:
            stdout.write("\n".join(_text(report["result"])) + "\n")
    for w in report["warnings"]:
        print(f"warning: {w}", file=stderr)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
