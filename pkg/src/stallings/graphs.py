"""Labeled-graph machinery for free-group subgroups.

A LabeledGraph stores positively oriented generator-labeled edges;
traversing an edge against its direction reads the inverse letter.  A
folded, connected, based graph represents the subgroup of based-loop
labels, with rank 1 - |V| + |E+|.  Folding repeatedly identifies edge
pairs that share a vertex and a label, in either direction, and never
changes the represented subgroup.
"""

from __future__ import annotations

import json
from collections import deque
from typing import Optional, Union

from .words import Alphabet, Word

DEFAULT_MAX_VERTICES = 10**6


class GraphSizeError(RuntimeError):
    """Raised when a construction would exceed the vertex cap."""


class LabeledGraph:
    """Mutable directed graph with integer vertices, generator-labeled
    edges stored as (src, dst, label index) triples, and a base vertex."""

    __slots__ = ("alphabet", "base", "vertices", "edges", "max_vertices", "_next_id")

    def __init__(self, alphabet: Alphabet, base: int = 0,
                 max_vertices: int = DEFAULT_MAX_VERTICES):
        self.alphabet = alphabet
        self.base = base
        self.vertices: set[int] = {base}
        self.edges: set[tuple[int, int, int]] = set()
        self.max_vertices = max_vertices
        self._next_id = base + 1

    def add_vertex(self, v: Optional[int] = None) -> int:
        """Add (or re-use) a vertex; fresh ids are consecutive integers."""
        if v is None:
            v = self._next_id
        if v not in self.vertices:
            if len(self.vertices) >= self.max_vertices:
                raise GraphSizeError(f"vertex cap {self.max_vertices} exceeded")
            self.vertices.add(v)
        self._next_id = max(self._next_id, v + 1)
        return v

    def add_edge(self, src: int, dst: int, label: Union[int, str]) -> None:
        lab = self.alphabet.index(label) if isinstance(label, str) else label
        if not 0 <= lab < len(self.alphabet):
            raise ValueError(f"label index {lab} out of range")
        if src not in self.vertices or dst not in self.vertices:
            raise ValueError(f"edge ({src}, {dst}) has a missing endpoint")
        self.edges.add((src, dst, lab))

    def copy(self) -> "LabeledGraph":
        out = LabeledGraph(self.alphabet, base=self.base, max_vertices=self.max_vertices)
        out.vertices = set(self.vertices)
        out.edges = set(self.edges)
        out._next_id = self._next_id
        return out

    def __repr__(self) -> str:
        return (f"LabeledGraph(|V|={len(self.vertices)}, |E+|={len(self.edges)}, "
                f"base={self.base})")


def is_folded(graph: LabeledGraph) -> bool:
    """No vertex carries two outgoing, or two incoming, edges with the
    same label."""
    seen_out: set[tuple[int, int]] = set()
    seen_in: set[tuple[int, int]] = set()
    for src, dst, lab in graph.edges:
        if (src, lab) in seen_out or (dst, lab) in seen_in:
            return False
        seen_out.add((src, lab))
        seen_in.add((dst, lab))
    return True


def is_connected(graph: LabeledGraph) -> bool:
    seen = {graph.base}
    adjacency: dict[int, list[int]] = {v: [] for v in graph.vertices}
    for src, dst, _ in graph.edges:
        adjacency[src].append(dst)
        adjacency[dst].append(src)
    queue = deque([graph.base])
    while queue:
        v = queue.popleft()
        for u in adjacency[v]:
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return len(seen) == len(graph.vertices)


def fold_with_map(graph: LabeledGraph) -> tuple[LabeledGraph, dict[int, int]]:
    """Fold the graph; returns (folded graph, original -> surviving id map).

    Worklist algorithm: every positive edge claims one outgoing slot at
    its source and one incoming slot at its target, keyed by signed
    label.  A second claim on an occupied slot forces a vertex union,
    resolved through a disjoint-set structure where the smaller id
    survives; merging two slot tables can cascade further unions.  Slot
    values may go stale after unions and are re-resolved on every read.
    """
    parent = {v: v for v in graph.vertices}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tables: dict[int, dict[int, int]] = {v: {} for v in graph.vertices}
    merges: list[tuple[int, int]] = []

    def claim(u: int, code: int, v: int) -> None:
        slot = tables[u]
        held = slot.get(code)
        if held is None:
            slot[code] = v
        else:
            held = find(held)
            if held != v:
                merges.append((held, v))

    for src, dst, lab in sorted(graph.edges):
        claim(find(src), lab + 1, find(dst))
        claim(find(dst), -(lab + 1), find(src))
        while merges:
            a, b = merges.pop()
            a, b = find(a), find(b)
            if a == b:
                continue
            if b < a:
                a, b = b, a
            parent[b] = a
            moved = tables.pop(b)
            slot = tables[a]
            for code, nbr in moved.items():
                held = slot.get(code)
                if held is None:
                    slot[code] = nbr
                else:
                    held, nbr = find(held), find(nbr)
                    if held != nbr:
                        merges.append((held, nbr))

    vertex_map = {v: find(v) for v in graph.vertices}
    folded = LabeledGraph(graph.alphabet, base=vertex_map[graph.base],
                          max_vertices=graph.max_vertices)
    for v in graph.vertices:
        folded.add_vertex(vertex_map[v])
    for src, dst, lab in graph.edges:
        folded.add_edge(vertex_map[src], vertex_map[dst], lab)
    return folded, vertex_map


def fold(graph: LabeledGraph) -> LabeledGraph:
    """Folded form of the graph; represents the same subgroup."""
    return fold_with_map(graph)[0]


def core(graph: LabeledGraph) -> LabeledGraph:
    """Trim degree-one vertices away from the base until none remain.

    A loop counts twice toward its vertex's degree, so a vertex whose
    only incident edge is a loop is never trimmed.  The base vertex is
    kept even at degree <= 1.
    """
    degree = dict.fromkeys(graph.vertices, 0)
    incident: dict[int, list[tuple[int, int, int]]] = {v: [] for v in graph.vertices}
    for edge in graph.edges:
        src, dst, _ = edge
        degree[src] += 1
        degree[dst] += 1
        incident[src].append(edge)
        if dst != src:
            incident[dst].append(edge)
    dead_vertices: set[int] = set()
    dead_edges: set[tuple[int, int, int]] = set()
    queue = deque(v for v in sorted(graph.vertices) if v != graph.base and degree[v] <= 1)
    while queue:
        v = queue.popleft()
        if v in dead_vertices or degree[v] > 1:
            continue
        dead_vertices.add(v)
        for edge in incident[v]:
            if edge in dead_edges:
                continue
            dead_edges.add(edge)
            src, dst, _ = edge
            degree[src] -= 1
            degree[dst] -= 1
            for u in (src, dst):
                if u != v and u != graph.base and u not in dead_vertices and degree[u] <= 1:
                    queue.append(u)
    out = LabeledGraph(graph.alphabet, base=graph.base, max_vertices=graph.max_vertices)
    for v in graph.vertices:
        if v not in dead_vertices:
            out.add_vertex(v)
    for src, dst, lab in graph.edges:
        if (src, dst, lab) not in dead_edges:
            out.add_edge(src, dst, lab)
    return out


def rank(graph: LabeledGraph) -> int:
    """First Betti number 1 - |V| + |E+| of a connected graph."""
    if not is_connected(graph):
        raise ValueError("rank is defined for connected graphs only")
    return 1 - len(graph.vertices) + len(graph.edges)


def transitions(graph: LabeledGraph) -> dict[tuple[int, int], int]:
    """(vertex, signed label code) -> neighbor; codes are +-(index + 1).
    Unambiguous exactly when the graph is folded."""
    trans: dict[tuple[int, int], int] = {}
    for src, dst, lab in graph.edges:
        trans[(src, lab + 1)] = dst
        trans[(dst, -(lab + 1))] = src
    return trans


def trace(graph: LabeledGraph, word: Word, start: Optional[int] = None) -> Optional[int]:
    """Endpoint of the path spelling word from start (default the base),
    or None when some step has no unique continuation."""
    if word.alphabet != graph.alphabet:
        raise ValueError("word is not over the graph alphabet")
    outgoing: dict[tuple[int, int], list[int]] = {}
    incoming: dict[tuple[int, int], list[int]] = {}
    for src, dst, lab in graph.edges:
        outgoing.setdefault((src, lab), []).append(dst)
        incoming.setdefault((dst, lab), []).append(src)
    v = graph.base if start is None else start
    if v not in graph.vertices:
        raise ValueError(f"start vertex {v} is not in the graph")
    for idx, sign in word.letters:
        nexts = outgoing.get((v, idx), ()) if sign > 0 else incoming.get((v, idx), ())
        if len(nexts) != 1:
            return None
        v = nexts[0]
    return v


def add_path(graph: LabeledGraph, start: int, word: Word) -> int:
    """Append a path spelling word from start, re-using a step whenever
    the next letter already has a unique continuation; returns the
    endpoint."""
    if word.alphabet != graph.alphabet:
        raise ValueError("word is not over the graph alphabet")
    if start not in graph.vertices:
        raise ValueError(f"start vertex {start} is not in the graph")
    cur = start
    for idx, sign in word.letters:
        if sign > 0:
            matches = [e for e in graph.edges if e[0] == cur and e[2] == idx]
        else:
            matches = [e for e in graph.edges if e[1] == cur and e[2] == idx]
        if len(matches) == 1:
            cur = matches[0][1] if sign > 0 else matches[0][0]
            continue
        nxt = graph.add_vertex()
        if sign > 0:
            graph.add_edge(cur, nxt, idx)
        else:
            graph.add_edge(nxt, cur, idx)
        cur = nxt
    return cur


def wedge_of_loops(alphabet: Alphabet, generators, max_vertices: int = DEFAULT_MAX_VERTICES) -> LabeledGraph:
    """Fresh loop at the base per generator word; identity words are skipped."""
    graph = LabeledGraph(alphabet, base=0, max_vertices=max_vertices)
    for word in generators:
        if word.alphabet != alphabet:
            raise ValueError("generator is not over the given alphabet")
        letters = word.letters
        cur = graph.base
        for pos, (idx, sign) in enumerate(letters):
            nxt = graph.base if pos == len(letters) - 1 else graph.add_vertex()
            if sign > 0:
                graph.add_edge(cur, nxt, idx)
            else:
                graph.add_edge(nxt, cur, idx)
            cur = nxt
    return graph


def _bfs_tree(graph: LabeledGraph):
    """Breadth-first spanning tree from the base of a folded graph, with
    children visited in (generator index, +1 before -1) order."""
    trans = transitions(graph)
    codes = [c for lab in range(len(graph.alphabet)) for c in (lab + 1, -(lab + 1))]
    disc = {graph.base: 0}
    order = [graph.base]
    parent: dict[int, tuple[int, int]] = {}
    i = 0
    while i < len(order):
        u = order[i]
        i += 1
        for code in codes:
            v = trans.get((u, code))
            if v is None or v in disc:
                continue
            disc[v] = len(order)
            parent[v] = (u, code)
            order.append(v)
    tree_edges = set()
    for v, (u, code) in parent.items():
        tree_edges.add((u, v, code - 1) if code > 0 else (v, u, -code - 1))
    return trans, disc, order, parent, tree_edges


def _tree_path_letters(disc, parent, base):
    paths: dict[int, list[tuple[int, int]]] = {base: []}
    for v in sorted(disc, key=disc.get):
        if v == base:
            continue
        u, code = parent[v]
        paths[v] = paths[u] + [(abs(code) - 1, 1 if code > 0 else -1)]
    return paths


def spanning_paths(graph: LabeledGraph) -> dict[int, Word]:
    """Breadth-first tree path word from the base to every vertex of a
    folded connected graph."""
    _, disc, _, parent, _ = _bfs_tree(graph)
    if len(disc) != len(graph.vertices):
        raise ValueError("spanning paths require a connected graph")
    letters = _tree_path_letters(disc, parent, graph.base)
    return {v: Word._from_reduced(graph.alphabet, tuple(ls)) for v, ls in letters.items()}


def canonical_form(graph: LabeledGraph):
    """Relabeling-invariant description of a folded, connected, based
    graph: transition rows listed in breadth-first discovery order."""
    trans, disc, order, _, _ = _bfs_tree(graph)
    if len(disc) != len(graph.vertices):
        raise ValueError("canonical form requires a connected graph")
    codes = [c for lab in range(len(graph.alphabet)) for c in (lab + 1, -(lab + 1))]
    rows = []
    for u in order:
        rows.append(tuple((code, disc[trans[(u, code)]])
                          for code in codes if (u, code) in trans))
    return tuple(rows)


def pointed_isomorphic(graph1: LabeledGraph, graph2: LabeledGraph) -> bool:
    """Base- and label-preserving isomorphism test for folded, connected
    graphs, decided by comparing canonical breadth-first forms."""
    if graph1.alphabet != graph2.alphabet:
        return False
    if len(graph1.vertices) != len(graph2.vertices) or len(graph1.edges) != len(graph2.edges):
        return False
    return canonical_form(graph1) == canonical_form(graph2)


class SubgroupHandle:
    """Folded core graph standing for a finitely generated subgroup.

    rank is cached at construction and equals 1 - |V| + |E+| of the
    core graph; the handle is not meant to be mutated afterwards.
    """

    __slots__ = ("graph", "rank", "_trans")

    def __init__(self, graph: LabeledGraph):
        if not is_folded(graph):
            raise ValueError("subgroup handle requires a folded graph")
        graph = core(graph)
        self.graph = graph
        self.rank = rank(graph)
        self._trans = transitions(graph)

    def contains(self, word: Word) -> bool:
        """True iff the word labels a based loop of the core graph."""
        if word.alphabet != self.graph.alphabet:
            raise ValueError("word is not over the subgroup's alphabet")
        v = self.graph.base
        trans = self._trans
        for idx, sign in word.letters:
            v = trans.get((v, idx + 1 if sign > 0 else -(idx + 1)))
            if v is None:
                return False
        return v == self.graph.base

    def basis(self) -> list[Word]:
        """Spanning-tree basis: one word per non-tree positive edge
        (u, x, v), namely path(base->u) * x * path(base->v)^-1.  The
        list length equals the rank."""
        graph = self.graph
        _, disc, _, parent, tree_edges = _bfs_tree(graph)
        if len(disc) != len(graph.vertices):
            raise ValueError("basis requires a connected graph")
        paths = _tree_path_letters(disc, parent, graph.base)
        non_tree = sorted(
            (e for e in graph.edges if e not in tree_edges),
            key=lambda e: (disc[e[0]], e[2], disc[e[1]]),
        )
        out = []
        for src, dst, lab in non_tree:
            letters = (paths[src] + [(lab, 1)]
                       + [(idx, -sign) for idx, sign in reversed(paths[dst])])
            out.append(Word(graph.alphabet, letters))
        return out

    def __repr__(self) -> str:
        return f"SubgroupHandle(rank={self.rank}, |V|={len(self.graph.vertices)})"


def graph_from_generators(alphabet: Alphabet, generators,
                          max_vertices: int = DEFAULT_MAX_VERTICES) -> SubgroupHandle:
    """Handle for the subgroup generated by the given words: wedge of
    loops at the base, folded and cored."""
    return SubgroupHandle(fold(wedge_of_loops(alphabet, generators, max_vertices)))


def _sorted_edges(graph: LabeledGraph):
    names = graph.alphabet.names
    return sorted(graph.edges, key=lambda e: (e[0], names[e[2]], e[1]))


def graph_to_json(graph: LabeledGraph) -> str:
    """Byte-deterministic JSON export (vertices by id, edges by
    (from, label, to))."""
    names = graph.alphabet.names
    payload = {
        "alphabet": list(names),
        "base": graph.base,
        "vertices": [{"id": v} for v in sorted(graph.vertices)],
        "edges": [{"from": src, "to": dst, "label": names[lab]}
                  for src, dst, lab in _sorted_edges(graph)],
    }
    return json.dumps(payload, indent=2) + "\n"


def graph_from_json(text: str) -> LabeledGraph:
    payload = json.loads(text)
    alphabet = Alphabet(payload["alphabet"])
    graph = LabeledGraph(alphabet, base=payload["base"])
    for vertex in payload["vertices"]:
        graph.add_vertex(vertex["id"])
    for edge in payload["edges"]:
        graph.add_edge(edge["from"], edge["to"], edge["label"])
    return graph


def graph_to_dot(graph: LabeledGraph, vertex_labels: Optional[dict[int, str]] = None) -> str:
    """DOT export; the base vertex is double-circled.  Deterministic for
    a given graph."""
    names = graph.alphabet.names
    lines = ["digraph stallings {"]
    for v in sorted(graph.vertices):
        shape = "doublecircle" if v == graph.base else "circle"
        attrs = f"shape={shape}"
        if vertex_labels is not None and v in vertex_labels:
            attrs += f', label="{vertex_labels[v]}"'
        lines.append(f'  "{v}" [{attrs}];')
    for src, dst, lab in _sorted_edges(graph):
        lines.append(f'  "{src}" -> "{dst}" [label="{names[lab]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
