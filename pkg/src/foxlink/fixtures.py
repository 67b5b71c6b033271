"""
The shipped knot and link table and the batch checks that run over it.

Each fixture is one line of plain text naming a diagram source (planar
diagram code, closed braid word, rational tangle closure, or signed plane
graph) together with exact expected invariants. The expectations were
computed with this package's own pipeline and cross-checked along two
independent routes: the coloring counts against the squared Jones norm at
the sixth root of unity, and, for the two-bridge closures, against
determinant arithmetic (col_k = k^2 exactly when the prime k divides the
fraction numerator). check_entry replays every stored value, the
tri/Jones/Kauffman identity, the quadruple law at each crossing, the
power-of-three law, the bridge bound, and optionally a randomized
Reidemeister walk that the invariants must survive.
"""
from __future__ import annotations

from dataclasses import dataclass
from importlib.resources import files

from .bracket import check_tri_identity
from .coloring import bridge_count, check_quadruple, col_group, tri
from .diagram import (
    REIDEMEISTER_MOVES,
    Diagram,
    DiagramError,
    apply_reidemeister,
    braid_closure,
    components,
    find_reidemeister_sites,
    parse_pd,
)
from .rational import numerator_closure, parse_conway, rational_tangle_diagram
from .tait import graph_to_diagram, parse_signed_graph

__all__ = [
    "FixtureEntry",
    "build_diagram",
    "check_entry",
    "fuzz_reidemeister",
    "load_fixtures",
    "parse_fixture_line",
]

_KINDS = ("pd", "braid", "conway", "graph")


@dataclass(frozen=True)
class FixtureEntry:
    """One table line: a named diagram source plus exact expected values."""

    name: str
    kind: str
    payload: str
    expect: tuple[tuple[str, int], ...]

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise DiagramError(f"fixture {self.name!r} has unknown kind {self.kind!r}")
        for key, value in self.expect:
            if key not in ("crossings", "components", "tri") and not (
                key.startswith("col_") and key[4:].isdigit()
            ):
                raise DiagramError(f"fixture {self.name!r} expects unknown key {key!r}")
            if value < 0:
                raise DiagramError(f"fixture {self.name!r}: negative expectation {key}")


def parse_fixture_line(line: str) -> FixtureEntry | None:
    """One entry per line, `name | kind | payload | k=v ...`; None on blanks."""
    body = line.split("#", 1)[0].strip()
    if not body:
        return None
    parts = [p.strip() for p in body.split("|")]
    if len(parts) != 4:
        raise DiagramError(f"fixture line needs 4 fields, got {len(parts)}: {line!r}")
    name, kind, payload, tail = parts
    expect = []
    for item in tail.split():
        key, _, value = item.partition("=")
        if not value or not value.lstrip("-").isdigit():
            raise DiagramError(f"fixture {name!r}: bad expectation {item!r}")
        expect.append((key, int(value)))
    return FixtureEntry(name, kind, payload, tuple(expect))


def load_fixtures(path=None) -> list[FixtureEntry]:
    """Read a fixture table; defaults to the table shipped in the package."""
    if path is None:
        text = files("foxlink.data").joinpath("fixtures.txt").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    entries = []
    seen = set()
    for line in text.splitlines():
        entry = parse_fixture_line(line)
        if entry is None:
            continue
        if entry.name in seen:
            raise DiagramError(f"fixture name {entry.name!r} repeated")
        seen.add(entry.name)
        entries.append(entry)
    return entries


def build_diagram(entry: FixtureEntry) -> Diagram:
    if entry.kind == "pd":
        return parse_pd(entry.payload, name=entry.name)
    if entry.kind == "braid":
        return braid_closure(entry.payload, name=entry.name)
    if entry.kind == "conway":
        tangle = rational_tangle_diagram(parse_conway(entry.payload))
        return numerator_closure(tangle, name=entry.name)
    graph = parse_signed_graph(entry.payload.replace(";", "\n"))
    return graph_to_diagram(graph, name=entry.name)


def fuzz_reidemeister(d: Diagram, rng, steps: int = 6, primes=(3, 5)) -> int:
    """
    Take a random walk of Reidemeister moves and insist the coloring
    counts stay put at every step. Growing moves are favored on even
    steps so walks do not just shrivel. Returns how many moves landed
    (sites can run dry on small diagrams).
    """
    reference = {k: col_group(d, k).size for k in primes}
    applied = 0
    for _ in range(steps):
        options = [
            (move, site)
            for move in REIDEMEISTER_MOVES
            for site in find_reidemeister_sites(d, move)
        ]
        if not options:
            break
        growing = [o for o in options if o[0].endswith("+")]
        pool = growing if growing and applied % 2 == 0 else options
        move, site = rng.choice(pool)
        d = apply_reidemeister(d, move, site)
        applied += 1
        for k, want in reference.items():
            got = col_group(d, k).size
            if got != want:
                raise DiagramError(
                    f"{move} changed col_{k} from {want} to {got} on {d.name!r}"
                )
    return applied


def check_entry(entry: FixtureEntry, rng=None, fuzz_steps: int = 6) -> dict:
    """
    Build one fixture and run the whole battery. Returns the report the
    CLI prints; raises on the first violated check.
    """
    d = build_diagram(entry)
    report = {
        "name": entry.name,
        "crossings": len(d.crossings),
        "components": components(d),
        "tri": tri(d),
    }
    for key, want in entry.expect:
        if key == "crossings":
            got = report["crossings"]
        elif key == "components":
            got = report["components"]
        elif key == "tri":
            got = report["tri"]
        else:
            got = col_group(d, int(key[4:])).size
            report[key] = got
        if got != want:
            raise DiagramError(f"{entry.name}: {key} is {got}, expected {want}")
    identity = check_tri_identity(d)
    report["norm_squared"] = identity["norm_squared"]
    report["f_one_minus_one"] = identity["f_one_minus_one"]
    for ci in range(len(d.crossings)):
        check_quadruple(d, ci)
    if d.crossings:
        bridges = bridge_count(d)
        report["bridges"] = bridges
        for k in (2, 3, 5):
            dim = len(col_group(d, k).divisors)
            if dim > bridges:
                raise DiagramError(
                    f"{entry.name}: col_{k} dimension {dim} beats bridge count {bridges}"
                )
    if rng is not None:
        report["reidemeister_moves"] = fuzz_reidemeister(d, rng, steps=fuzz_steps)
    return report
