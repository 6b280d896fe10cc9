"""Vertex-colored graphs for a pair of homomorphisms (g, h).

A coloring assigns a codomain word C(v) to every vertex, with the base
colored by the identity.  The edge condition g(x) = C(v) h(x) C(w)^-1
on each positive edge v -x-> w makes the colors telescope along paths:
C(v) = g(p)^-1 h(p) for any path p from the base, so every based-loop
label is equalized by g and h.  If additionally the color map is
injective and the graph folded, the represented subgroup embeds into
the core graph of any intermediate subgroup of the equalizer, which
bounds those subgroups' ranks from below (compression).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import NamedTuple

from .graphs import (
    LabeledGraph,
    SubgroupHandle,
    fold_with_map,
    graph_to_dot,
    is_folded,
    trace,
)
from .words import Alphabet, Homomorphism, Word, format_word, parse_word


class ColorConflictError(ValueError):
    """Folding tried to identify two vertices with different colors."""


class CertificationError(RuntimeError):
    """The edge-condition route and direct image computation disagree;
    this signals an implementation bug, not bad input."""


class EdgeViolation(NamedTuple):
    edge: tuple[int, int, str]
    left: Word   # g(x)
    right: Word  # C(v) h(x) C(w)^-1


class ColoredGraph:
    """LabeledGraph plus a vertex color map tied to a pair (g, h).

    Construction validates structure only (shared alphabets, a color for
    every vertex, identity color at the base); whether the edge condition
    actually holds is reported by check_edge_condition, so that broken
    colorings remain representable for diagnosis.
    """

    __slots__ = ("graph", "g", "h", "colors")

    def __init__(self, graph: LabeledGraph, g: Homomorphism, h: Homomorphism,
                 colors: dict[int, Word]):
        if g.domain != graph.alphabet or h.domain != graph.alphabet:
            raise ValueError("g and h must have the graph alphabet as domain")
        if g.codomain != h.codomain:
            raise ValueError("g and h must share a codomain")
        colors = dict(colors)
        missing = graph.vertices - colors.keys()
        if missing:
            raise ValueError(f"missing color on vertices {sorted(missing)}")
        extra = colors.keys() - graph.vertices
        if extra:
            raise ValueError(f"colors given for unknown vertices {sorted(extra)}")
        for v, color in colors.items():
            if color.alphabet != g.codomain:
                raise ValueError(f"color of vertex {v} is not a codomain word")
        if not colors[graph.base].is_identity():
            raise ValueError("the base vertex must be colored by the identity")
        self.graph = graph
        self.g = g
        self.h = h
        self.colors = colors

    def __repr__(self) -> str:
        return f"ColoredGraph(|V|={len(self.graph.vertices)}, |E+|={len(self.graph.edges)})"


def check_edge_condition(cg: ColoredGraph) -> list[EdgeViolation]:
    """Violations of g(x) = C(v) h(x) C(w)^-1 over all positive edges;
    empty iff the coloring is consistent with (g, h).  The reverse
    orientation follows formally and is not re-checked per edge."""
    names = cg.graph.alphabet.names
    out = []
    for src, dst, lab in sorted(cg.graph.edges):
        left = cg.g.images[lab]
        right = cg.colors[src] * cg.h.images[lab] * ~cg.colors[dst]
        if left != right:
            out.append(EdgeViolation((src, dst, names[lab]), left, right))
    return out


def color_of_path(cg: ColoredGraph, path_word: Word) -> Word:
    """Telescoped color g(p)^-1 h(p) of a path p from the base; equals
    the stored color of the endpoint whenever the edge condition holds."""
    if trace(cg.graph, path_word) is None:
        raise ValueError(f"{path_word!r} does not trace a path from the base")
    return ~cg.g(path_word) * cg.h(path_word)


def colors_injective(cg: ColoredGraph) -> bool:
    """True iff no two vertices share a color (reduced-word equality)."""
    return len({color.letters for color in cg.colors.values()}) == len(cg.colors)


@dataclass
class EqualizerCertificate:
    """Witness that a subgroup lies in the equalizer of (g, h).

    Every basis word is re-verified by direct image computation in the
    codomain, independently of the edge-condition machinery; when
    colors_injective holds the certificate additionally asserts that any
    finitely generated intermediate subgroup has rank >= rank.
    """

    subgroup: SubgroupHandle
    rank: int
    colors_injective: bool
    basis_checked: list[tuple[Word, Word, Word]]


def certify_equalizer_subgroup(cg: ColoredGraph) -> EqualizerCertificate:
    """Certificate for the based-loop subgroup of a folded colored graph.

    Refuses unfolded graphs and edge-condition violations; then checks
    g(w) = h(w) for every spanning-tree basis word by substitution."""
    if not is_folded(cg.graph):
        raise ValueError("certificates are only issued for folded graphs")
    violations = check_edge_condition(cg)
    if violations:
        raise ValueError(
            f"edge condition fails on {len(violations)} edge(s), e.g. {violations[0]}")
    handle = SubgroupHandle(cg.graph)
    checked = []
    for word in handle.basis():
        gw = cg.g(word)
        hw = cg.h(word)
        if gw != hw:
            raise CertificationError(
                f"basis word {word} has g(w) = {gw} but h(w) = {hw}")
        checked.append((word, gw, hw))
    return EqualizerCertificate(
        subgroup=handle,
        rank=handle.rank,
        colors_injective=colors_injective(cg),
        basis_checked=checked,
    )


def fold_colored(cg: ColoredGraph) -> ColoredGraph:
    """Fold the underlying graph, carrying colors along.

    Vertices may only be identified when their colors already agree as
    reduced words; a conflict means the input coloring was inconsistent
    with (g, h).  When the edge condition held before folding it still
    holds afterwards."""
    folded, vertex_map = fold_with_map(cg.graph)
    new_colors: dict[int, Word] = {}
    for v, color in cg.colors.items():
        rep = vertex_map[v]
        held = new_colors.get(rep)
        if held is None:
            new_colors[rep] = color
        elif held != color:
            raise ColorConflictError(
                f"vertex {v} folds onto {rep} but colors differ: "
                f"{format_word(color)} vs {format_word(held)}")
    return ColoredGraph(folded, cg.g, cg.h, new_colors)


def colored_to_json(cg: ColoredGraph) -> str:
    """Graph JSON extended with per-vertex colors and the g/h image maps.
    The codomain alphabet is included so the file round-trips."""
    names = cg.graph.alphabet.names
    edges = sorted(cg.graph.edges, key=lambda e: (e[0], names[e[2]], e[1]))
    payload = {
        "alphabet": list(names),
        "codomain": list(cg.g.codomain.names),
        "base": cg.graph.base,
        "vertices": [{"id": v, "color": format_word(cg.colors[v])}
                     for v in sorted(cg.graph.vertices)],
        "edges": [{"from": src, "to": dst, "label": names[lab]}
                  for src, dst, lab in edges],
        "g": cg.g.as_dict(),
        "h": cg.h.as_dict(),
    }
    return json.dumps(payload, indent=2) + "\n"


def colored_from_json(text: str) -> ColoredGraph:
    payload = json.loads(text)
    alphabet = Alphabet(payload["alphabet"])
    codomain = Alphabet(payload["codomain"])
    graph = LabeledGraph(alphabet, base=payload["base"])
    colors: dict[int, Word] = {}
    for vertex in payload["vertices"]:
        graph.add_vertex(vertex["id"])
        colors[vertex["id"]] = parse_word(vertex["color"], codomain)
    for edge in payload["edges"]:
        graph.add_edge(edge["from"], edge["to"], edge["label"])
    g = Homomorphism(alphabet, codomain, payload["g"])
    h = Homomorphism(alphabet, codomain, payload["h"])
    return ColoredGraph(graph, g, h, colors)


def colored_to_dot(cg: ColoredGraph) -> str:
    """DOT export with each vertex annotated by its color word."""
    labels = {v: f"{v}: {format_word(cg.colors[v])}" for v in cg.graph.vertices}
    return graph_to_dot(cg.graph, vertex_labels=labels)
