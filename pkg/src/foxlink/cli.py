"""
Command-line surface. Every verb prints one JSON document to stdout with
sorted keys, so identical inputs give byte-identical output; diagnostics
go to stderr. Exit codes: 0 on success, 1 when a mathematical check
fails, 2 when the input cannot be read.
"""
from __future__ import annotations

import json
import random
import sys

import click

from .bracket import DEFAULT_CROSSING_CAP, check_tri_identity, jones
from .coloring import LawViolation, bridge_count, col_group, tri
from .diagram import (
    Diagram,
    DiagramError,
    braid_closure,
    components,
    is_planar,
    parse_pd,
    render_pd,
)
from .fixtures import check_entry, load_fixtures
from .rational import (
    MoveSpec,
    apply_move,
    move_search,
    move_sites,
    numerator_closure,
    parse_conway,
    rational_tangle_diagram,
    untwist,
)
from .symplectic import BoundarySpace, reduce_mod_trivial, tangle_image_lagrangian
from .tait import graph_to_diagram, is_alternating, parse_signed_graph

DEFAULT_SEED = 20260815


def _emit(obj):
    click.echo(json.dumps(obj, indent=2, sort_keys=True))


def _input_options(fn):
    for option in reversed(
        (
            click.option("--pd", "pd_path", type=click.Path(), default=None,
                         help="file holding planar diagram code"),
            click.option("--pd-text", default=None, help="planar diagram code inline"),
            click.option("--braid", default=None, help="braid word, closed by tracing"),
            click.option("--conway", default=None, help="rational tangle notation C(...)"),
            click.option("--graph", "graph_path", type=click.Path(), default=None,
                         help="file holding a signed plane graph"),
        )
    ):
        fn = option(fn)
    return fn


def _load_diagram(pd_path, pd_text_arg, braid, conway, graph_path, close_conway) -> Diagram:
    sources = [s for s in (pd_path, pd_text_arg, braid, conway, graph_path) if s is not None]
    if len(sources) != 1:
        raise click.UsageError("give exactly one of --pd, --pd-text, --braid, --conway, --graph")
    try:
        if pd_path is not None:
            with open(pd_path) as fh:
                text = fh.read()
            if not text.strip():
                raise DiagramError(f"{pd_path} is empty")
            return parse_pd(text)
        if pd_text_arg is not None:
            return parse_pd(pd_text_arg)
        if braid is not None:
            return braid_closure(braid)
        if conway is not None:
            tangle = rational_tangle_diagram(parse_conway(conway))
            return numerator_closure(tangle) if close_conway else tangle
        with open(graph_path) as fh:
            return graph_to_diagram(parse_signed_graph(fh.read()))
    except (DiagramError, ValueError, OSError) as err:
        raise click.UsageError(str(err))


@click.group()
def main():
    """Exact knot and tangle invariants: colorings, brackets, moves."""


@main.command("parse")
@_input_options
def parse_cmd(pd_path, pd_text, braid, conway, graph_path):
    """Read a diagram from any supported format and echo its structure."""
    d = _load_diagram(pd_path, pd_text, braid, conway, graph_path, close_conway=True)
    _emit(
        {
            "boundary": list(d.boundary),
            "classical": d.is_classical,
            "components": components(d),
            "crossings": len(d.crossings),
            "free_loops": d.free_loops,
            "pd": render_pd(d),
            "planar": is_planar(d),
        }
    )


@main.command("invariants")
@_input_options
@click.option("--k", "moduli", default="3", show_default=True,
              help="comma-separated coloring moduli")
@click.option("--max-bracket", default=12, show_default=True,
              help="largest crossing count for which Jones is evaluated")
def invariants(pd_path, pd_text, braid, conway, graph_path, moduli, max_bracket):
    """Coloring counts, Jones data, and the identity checks tying them."""
    d = _load_diagram(pd_path, pd_text, braid, conway, graph_path, close_conway=True)
    try:
        ks = sorted({int(v) for v in moduli.split(",") if v.strip()})
    except ValueError:
        raise click.UsageError(f"cannot read moduli list {moduli!r}")
    if any(k < 2 for k in ks):
        raise click.UsageError("coloring moduli must be at least 2")
    report = {
        "components": components(d),
        "crossings": len(d.crossings),
        "free_loops": d.free_loops,
        "tri": tri(d),
        "col": {},
        "divisors": {},
    }
    for k in ks:
        space = col_group(d, k)
        report["col"][str(k)] = space.size
        report["divisors"][str(k)] = list(space.divisors)
    closed_classical = d.is_classical and not d.is_tangle
    try:
        if d.crossings and d.is_classical:
            bridges = bridge_count(d)
            report["bridges"] = bridges
            report["bridge_bound_ok"] = all(
                len(col_group(d, k).divisors) <= bridges for k in (2, 3, 5)
            )
            if not report["bridge_bound_ok"]:
                raise LawViolation(f"coloring dimension beats the bridge count on {render_pd(d)}")
        if closed_classical and len(d.crossings) <= min(max_bracket, DEFAULT_CROSSING_CAP):
            report["jones"] = str(jones(d))
            identity = check_tri_identity(d)
            report["identity"] = {
                "f_one_minus_one": identity["f_one_minus_one"],
                "norm_squared": identity["norm_squared"],
                "ok": True,
            }
        else:
            report["jones"] = None
            report["jones_skipped"] = (
                "diagram is open or virtual" if not closed_classical
                else f"crossing count {len(d.crossings)} above --max-bracket {max_bracket}"
            )
    except LawViolation as err:
        raise click.ClickException(str(err))
    _emit(report)


@main.group()
def tangle():
    """Boundary-coloring structure of tangles."""


def _subspace_rows(s):
    if s.p <= 9:
        return ["".join(str(x) for x in row) for row in s.rows]
    return [" ".join(str(x) for x in row) for row in s.rows]


@tangle.command("lagrangian")
@_input_options
@click.option("--p", "prime", default=3, show_default=True, help="prime modulus")
def tangle_lagrangian(pd_path, pd_text, braid, conway, graph_path, prime):
    """Paint the boundary colorings of a tangle and check the Lagrangian law."""
    d = _load_diagram(pd_path, pd_text, braid, conway, graph_path, close_conway=False)
    try:
        image, verdict = tangle_image_lagrangian(d, prime)
    except (DiagramError, ValueError) as err:
        raise click.UsageError(str(err))
    except RuntimeError as err:
        raise click.ClickException(str(err))
    sp = BoundarySpace(len(d.boundary) // 2, prime)
    report = {
        "p": prime,
        "strand_pairs": sp.n,
        "dim": image.dim,
        "lagrangian": verdict,
        "classical": d.is_classical and is_planar(d),
        "image": _subspace_rows(image),
    }
    if verdict:
        report["reduced"] = _subspace_rows(reduce_mod_trivial(sp, image))
    _emit(report)


@main.group()
def moves():
    """Twist-region substitutions preserving coloring counts."""


def _parse_kind(text: str) -> tuple:
    head, _, tail = text.partition(":")
    try:
        if head == "n":
            return ("n", int(tail))
        if head == "pq":
            p, _, q = tail.partition("/")
            return ("pq", int(p), int(q))
    except ValueError:
        pass
    raise click.UsageError(f"cannot read move kind {text!r}; use n:3 or pq:5/2")


@moves.command("apply")
@_input_options
@click.option("--kind", required=True, help="n:K or pq:P/Q")
@click.option("--site", default=None,
              help="pair of arc labels e,f on a common face; omit to list candidates")
def moves_apply(pd_path, pd_text, braid, conway, graph_path, kind, site):
    """Perform one move at a marked site and report the coloring checks."""
    d = _load_diagram(pd_path, pd_text, braid, conway, graph_path, close_conway=True)
    parsed_kind = _parse_kind(kind)
    if site is None:
        _emit({"sites": [list(s) for s in move_sites(d)]})
        return
    try:
        labels = tuple(int(v) for v in site.split(","))
        spec = MoveSpec(parsed_kind, labels)
    except ValueError as err:
        raise click.UsageError(str(err))
    modulus = abs(spec.kind[1])
    try:
        after = apply_move(d, spec)
    except DiagramError as err:
        raise click.UsageError(str(err))
    preserved = {}
    for k in {modulus, 3} - {0, 1}:
        preserved[str(k)] = col_group(d, k).size == col_group(after, k).size
    if not all(preserved.values()):
        raise click.ClickException(f"move changed a coloring count: {preserved}")
    _emit(
        {
            "after": render_pd(after),
            "before": render_pd(d),
            "col_preserved": preserved,
            "crossings_after": len(after.crossings),
            "crossings_before": len(d.crossings),
            "kind": list(spec.kind),
            "site": list(spec.site),
        }
    )


@moves.command("search")
@_input_options
@click.option("--kinds", default="n:3", show_default=True,
              help="comma-separated move kinds, e.g. n:3,pq:5/2")
@click.option("--depth", default=3, show_default=True)
@click.option("--max-states", default=4000, show_default=True)
def moves_search(pd_path, pd_text, braid, conway, graph_path, kinds, depth, max_states):
    """Breadth-first hunt for a move sequence trivializing the diagram."""
    d = _load_diagram(pd_path, pd_text, braid, conway, graph_path, close_conway=True)
    kind_list = [_parse_kind(v) for v in kinds.split(",") if v.strip()]
    try:
        path = move_search(d, kind_list, depth, max_states=max_states)
    except ValueError as err:
        raise click.UsageError(str(err))
    report = {"found": path is not None, "depth": depth, "kinds": [list(k) for k in kind_list]}
    if path is not None:
        replay = untwist(d)
        for spec in path:
            replay = untwist(apply_move(replay, spec))
        if replay.crossings:
            raise click.ClickException("replayed certificate still has crossings")
        report["path"] = [{"kind": list(m.kind), "site": list(m.site)} for m in path]
        report["final"] = render_pd(replay)
        report["final_crossings"] = 0
        report["final_components"] = components(replay)
    _emit(report)


@main.group()
def tait():
    """Signed plane graphs and their medial diagrams."""


@tait.command("convert")
@click.argument("graph_file", type=click.Path(exists=True))
def tait_convert(graph_file):
    """Turn a signed plane graph file into a link diagram."""
    try:
        with open(graph_file) as fh:
            g = parse_signed_graph(fh.read())
        d = graph_to_diagram(g)
    except (DiagramError, OSError) as err:
        raise click.UsageError(str(err))
    _emit(
        {
            "alternating": is_alternating(d),
            "components": components(d),
            "connected": g.is_connected,
            "crossings": len(d.crossings),
            "edges": g.nedges,
            "monosigned": g.monosigned,
            "pd": render_pd(d),
            "planar": is_planar(d),
            "tri": tri(d),
        }
    )


@main.group()
def table():
    """Batch runs over fixture tables."""


@table.command("run")
@click.option("--table", "table_path", type=click.Path(exists=True), default=None,
              help="fixture file; the packaged table when omitted")
@click.option("--seed", default=DEFAULT_SEED, show_default=True,
              help="seed for the Reidemeister fuzzing walks")
@click.option("--fuzz-steps", default=6, show_default=True)
def table_run(table_path, seed, fuzz_steps):
    """Check every table entry: expectations, identities, laws, fuzzing."""
    try:
        entries = load_fixtures(table_path)
    except (DiagramError, OSError) as err:
        raise click.UsageError(str(err))
    rng = random.Random(seed)
    reports, failures = [], []
    for entry in entries:
        try:
            reports.append(check_entry(entry, rng=rng, fuzz_steps=fuzz_steps))
        except (DiagramError, LawViolation, ValueError) as err:
            failures.append({"name": entry.name, "error": str(err)})
            reports.append({"name": entry.name, "failed": True})
    _emit(
        {
            "entries": reports,
            "failures": failures,
            "passed": len(entries) - len(failures),
            "seed": seed,
            "total": len(entries),
        }
    )
    if failures:
        sys.exit(1)


if __name__ == "__main__":
    main()
