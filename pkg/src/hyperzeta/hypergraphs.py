"""Hypergraphs, multigraphs, morphisms, and the incidence-bipartite construction.

Both ``Hypergraph`` and ``Graph`` expose the same small incidence protocol
(``vertices``, ``edge_ids``, ``edge_members``), so morphism, isomorphism and
quotient machinery is written once and shared.  Vertices of the bipartite
incidence graph B_H carry ``v:``/``e:`` prefixes so that a hypergraph vertex
and a hyperedge with the same name never collide.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass


V_PREFIX = "v:"
E_PREFIX = "e:"


def v_node(name: str) -> str:
    return V_PREFIX + name


def e_node(name: str) -> str:
    return E_PREFIX + name


def node_name(node: str) -> str:
    return node.split(":", 1)[1]


class Hypergraph:
    """Finite hypergraph: ordered vertices and an ordered multiset of edges.

    Edges carry unique ids so repeated member sets stay distinguishable.
    Every vertex must lie in at least one edge (the edges cover the vertices).
    """

    __slots__ = ("vertices", "edges", "_members", "_vertex_edges")

    def __init__(self, vertices, edges):
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        seen = set()
        normalized = []
        members_map = {}
        for edge_id, members in edges:
            if edge_id in seen:
                raise ValueError(f"duplicate edge id {edge_id!r}")
            seen.add(edge_id)
            member_set = tuple(sorted(set(members)))
            if not member_set:
                raise ValueError(f"edge {edge_id!r} is empty")
            for v in member_set:
                if v not in self.vertices:
                    raise ValueError(f"edge {edge_id!r} mentions unknown vertex {v!r}")
            normalized.append((edge_id, member_set))
            members_map[edge_id] = member_set
        covered = {v for _, ms in normalized for v in ms}
        if covered != set(self.vertices):
            missing = sorted(set(self.vertices) - covered)
            raise ValueError(f"vertices not covered by any edge: {missing}")
        self.edges = tuple(normalized)
        self._members = members_map
        incidence: dict[str, list[str]] = {v: [] for v in self.vertices}
        for edge_id, member_set in normalized:
            for v in member_set:
                incidence[v].append(edge_id)
        self._vertex_edges = {v: tuple(es) for v, es in incidence.items()}

    @property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(e for e, _ in self.edges)

    def edge_members(self, edge_id: str) -> tuple[str, ...]:
        return self._members[edge_id]

    def vertex_edges(self, v: str) -> tuple[str, ...]:
        return self._vertex_edges[v]

    def degree(self, v: str) -> int:
        return len(self._vertex_edges[v])

    def incidence_count(self) -> int:
        return sum(len(ms) for _, ms in self.edges)

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        seen = {self.vertices[0]}
        queue = deque(seen)
        while queue:
            v = queue.popleft()
            for e in self._vertex_edges[v]:
                for w in self._members[e]:
                    if w not in seen:
                        seen.add(w)
                        queue.append(w)
        return len(seen) == len(self.vertices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __repr__(self) -> str:
        return f"Hypergraph({len(self.vertices)} vertices, {len(self.edges)} edges)"

    def to_json(self):
        return {
            "vertices": list(self.vertices),
            "edges": [{"id": e, "members": list(ms)} for e, ms in self.edges],
        }

    @staticmethod
    def from_json(data) -> Hypergraph:
        return Hypergraph(
            data["vertices"], [(e["id"], e["members"]) for e in data["edges"]]
        )


@dataclass(frozen=True)
class DirectedEdge:
    """One orientation of a graph edge; ``index ^ 1`` is the inverse."""

    index: int
    edge_id: str
    forward: bool
    tail: str  # i(d): initial vertex
    head: str  # t(d): terminal vertex


class Graph:
    """Finite multigraph with an arbitrary but fixed orientation per edge.

    Directed edges are indexed (e_0, forward), (e_0, backward), (e_1, forward),
    ... so that ``d ^ 1`` inverts, and the involution is fixed-point-free.
    """

    __slots__ = ("vertices", "edges", "directed", "_vertex_edges", "_members")

    def __init__(self, vertices, edges):
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        seen = set()
        normalized = []
        for edge_id, endpoints in edges:
            if edge_id in seen:
                raise ValueError(f"duplicate edge id {edge_id!r}")
            seen.add(edge_id)
            a, b = endpoints
            if a not in self.vertices or b not in self.vertices:
                raise ValueError(f"edge {edge_id!r} has undeclared endpoint")
            normalized.append((edge_id, (a, b)))
        self.edges = tuple(normalized)
        directed = []
        for edge_id, (a, b) in normalized:
            directed.append(DirectedEdge(len(directed), edge_id, True, a, b))
            directed.append(DirectedEdge(len(directed), edge_id, False, b, a))
        self.directed = tuple(directed)
        incident: dict[str, list[str]] = {v: [] for v in self.vertices}
        members = {}
        for edge_id, (a, b) in normalized:
            incident[a].append(edge_id)
            if b != a:
                incident[b].append(edge_id)
            members[edge_id] = tuple(sorted((a, b)))
        self._vertex_edges = {v: tuple(es) for v, es in incident.items()}
        self._members = members

    @property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(e for e, _ in self.edges)

    def edge_members(self, edge_id: str) -> tuple[str, ...]:
        return self._members[edge_id]

    def endpoints(self, edge_id: str) -> tuple[str, str]:
        for e, pair in self.edges:
            if e == edge_id:
                return pair
        raise KeyError(edge_id)

    def vertex_edges(self, v: str) -> tuple[str, ...]:
        return self._vertex_edges[v]

    def degree(self, v: str) -> int:
        # a loop contributes 2 to the degree of its vertex
        return sum(2 if a == b == v else 1 for _, (a, b) in self.edges if v in (a, b))

    def inverse(self, d: int) -> int:
        return d ^ 1

    def directed_count(self) -> int:
        return len(self.directed)

    def successors(self, d: int) -> list[int]:
        """Directed edges b with t(d) = i(b), b != d^{-1} (feeds-into relation)."""
        head = self.directed[d].head
        return [
            b.index
            for b in self.directed
            if b.tail == head and b.index != (d ^ 1)
        ]

    def edge_adjacency(self) -> list[list[int]]:
        """The 0/1 matrix W1 on directed edges."""
        n = len(self.directed)
        w = [[0] * n for _ in range(n)]
        for d in range(n):
            for b in self.successors(d):
                w[d][b] = 1
        return w

    def adjacency_matrix(self) -> list[list[int]]:
        idx = {v: i for i, v in enumerate(self.vertices)}
        n = len(self.vertices)
        a = [[0] * n for _ in range(n)]
        for _, (x, y) in self.edges:
            a[idx[x]][idx[y]] += 1
            a[idx[y]][idx[x]] += 1
        return a

    def degree_matrix(self) -> list[list[int]]:
        n = len(self.vertices)
        d = [[0] * n for _ in range(n)]
        for i, v in enumerate(self.vertices):
            d[i][i] = self.degree(v)
        return d

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        for _, (a, b) in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        seen = {self.vertices[0]}
        queue = deque(seen)
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == len(self.vertices)

    def cycle_rank(self) -> int:
        return len(self.edges) - len(self.vertices) + 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __repr__(self) -> str:
        return f"Graph({len(self.vertices)} vertices, {len(self.edges)} edges)"

    def to_json(self):
        return {
            "vertices": list(self.vertices),
            "edges": [{"id": e, "members": list(pair)} for e, pair in self.edges],
        }

    @staticmethod
    def from_json(data) -> Graph:
        return Graph(
            data["vertices"], [(e["id"], tuple(e["members"])) for e in data["edges"]]
        )


@dataclass(frozen=True)
class BipartiteTag:
    """A graph together with its two-sided vertex colouring."""

    graph: Graph
    side_map: dict  # vertex -> "V" | "E"

    def check(self) -> None:
        for _, (a, b) in self.graph.edges:
            if self.side_map[a] == self.side_map[b]:
                raise ValueError(f"edge ({a},{b}) joins two {self.side_map[a]}-side vertices")


def incidence_edge_id(vertex: str, edge: str) -> str:
    return f"{vertex}~{edge}"


def incidence_graph(h: Hypergraph) -> BipartiteTag:
    """The bipartite graph B_H on V(H) + E(H), one edge per incidence pair.

    Incidence edges are oriented from the V side to the E side.
    """
    vertices = [v_node(v) for v in h.vertices] + [e_node(e) for e in h.edge_ids]
    edges = []
    for edge_id, members in h.edges:
        for v in members:
            edges.append((incidence_edge_id(v, edge_id), (v_node(v), e_node(edge_id))))
    graph = Graph(vertices, edges)
    side_map = {v_node(v): "V" for v in h.vertices}
    side_map.update({e_node(e): "E" for e in h.edge_ids})
    return BipartiteTag(graph, side_map)


class HypergraphMorphism:
    """Incidence-preserving pair of maps between incidence structures.

    Works uniformly for hypergraphs and graphs (any objects exposing
    ``vertices`` / ``edge_ids`` / ``edge_members``).
    """

    __slots__ = ("source", "target", "vertex_map", "edge_map")

    def __init__(self, source, target, vertex_map, edge_map, check: bool = True):
        self.source = source
        self.target = target
        self.vertex_map = dict(vertex_map)
        self.edge_map = dict(edge_map)
        if check:
            self.validate()

    def validate(self) -> None:
        for v in self.source.vertices:
            if self.vertex_map.get(v) not in self.target.vertices:
                raise ValueError(f"vertex {v!r} not mapped into the target")
        for e in self.source.edge_ids:
            if self.edge_map.get(e) not in set(self.target.edge_ids):
                raise ValueError(f"edge {e!r} not mapped into the target")
        for e in self.source.edge_ids:
            image_members = set(self.target.edge_members(self.edge_map[e]))
            for v in self.source.edge_members(e):
                if self.vertex_map[v] not in image_members:
                    raise ValueError(
                        f"incidence not preserved: {v!r} in {e!r} but image misses it"
                    )

    def is_bijective(self) -> bool:
        return (
            len(set(self.vertex_map.values())) == len(self.target.vertices)
            and len(self.vertex_map) == len(self.source.vertices)
            and len(set(self.edge_map.values())) == len(self.target.edge_ids)
            and len(self.edge_map) == len(self.source.edge_ids)
        )

    def is_automorphism(self) -> bool:
        """Bijective and member-set preserving (image edge = image of members)."""
        if self.source is not self.target and (
            self.source.vertices != self.target.vertices
            or tuple(self.source.edge_ids) != tuple(self.target.edge_ids)
        ):
            return False
        if not self.is_bijective():
            return False
        for e in self.source.edge_ids:
            image = tuple(sorted(self.vertex_map[v] for v in self.source.edge_members(e)))
            if image != tuple(sorted(self.target.edge_members(self.edge_map[e]))):
                return False
        return True

    def compose(self, inner: HypergraphMorphism) -> HypergraphMorphism:
        """self after inner."""
        return HypergraphMorphism(
            inner.source,
            self.target,
            {v: self.vertex_map[w] for v, w in inner.vertex_map.items()},
            {e: self.edge_map[f] for e, f in inner.edge_map.items()},
            check=False,
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, HypergraphMorphism):
            return NotImplemented
        return self.vertex_map == other.vertex_map and self.edge_map == other.edge_map

    def __repr__(self) -> str:
        return f"HypergraphMorphism({self.vertex_map}, {self.edge_map})"

    @staticmethod
    def identity(h) -> HypergraphMorphism:
        return HypergraphMorphism(
            h, h, {v: v for v in h.vertices}, {e: e for e in h.edge_ids}, check=False
        )


def induced_morphism(phi: HypergraphMorphism) -> HypergraphMorphism:
    """Apply the functor B: a hypergraph morphism induces a morphism of the
    incidence graphs, v:a -> v:phi_V(a), e:x -> e:phi_E(x), incidences along."""
    phi.validate()
    b1 = incidence_graph(phi.source).graph
    b2 = incidence_graph(phi.target).graph
    vmap = {}
    for v in phi.source.vertices:
        vmap[v_node(v)] = v_node(phi.vertex_map[v])
    for e in phi.source.edge_ids:
        vmap[e_node(e)] = e_node(phi.edge_map[e])
    emap = {}
    for e in phi.source.edge_ids:
        for v in phi.source.edge_members(e):
            emap[incidence_edge_id(v, e)] = incidence_edge_id(
                phi.vertex_map[v], phi.edge_map[e]
            )
    return HypergraphMorphism(b1, b2, vmap, emap)


def _refine_candidates(h1, h2):
    """Per-vertex and per-edge candidate lists from degree/size signatures."""

    def vertex_sig(h, v):
        return tuple(sorted(len(h.edge_members(e)) for e in h.vertex_edges(v)))

    def edge_sig(h, e):
        return (
            len(h.edge_members(e)),
            tuple(sorted(h.degree(v) for v in h.edge_members(e))),
        )

    vcands = {}
    for v in h1.vertices:
        cands = [w for w in h2.vertices if vertex_sig(h1, v) == vertex_sig(h2, w)]
        if v in cands:
            # prefer the identity assignment, so h vs h yields the identity witness
            cands.remove(v)
            cands.insert(0, v)
        vcands[v] = cands
    ecands = {
        e: [f for f in h2.edge_ids if edge_sig(h1, e) == edge_sig(h2, f)]
        for e in h1.edge_ids
    }
    return vcands, ecands


def is_isomorphic(h1, h2) -> HypergraphMorphism | None:
    """Exhaustive backtracking search for an isomorphism; None if there is none."""
    if len(h1.vertices) != len(h2.vertices) or len(h1.edge_ids) != len(h2.edge_ids):
        return None
    vcands, ecands = _refine_candidates(h1, h2)
    if any(not c for c in vcands.values()) or any(not c for c in ecands.values()):
        return None
    vorder = sorted(h1.vertices, key=lambda v: len(vcands[v]))
    vmap: dict[str, str] = {}
    used: set[str] = set()

    def edges_consistent() -> dict[str, str] | None:
        # all vertices are mapped: greedily match member multisets
        emap: dict[str, str] = {}
        taken: set[str] = set()
        want = {}
        for f in h2.edge_ids:
            want.setdefault(tuple(sorted(h2.edge_members(f))), []).append(f)
        for e in h1.edge_ids:
            image = tuple(sorted(vmap[v] for v in h1.edge_members(e)))
            pool = [f for f in want.get(image, []) if f not in taken]
            if not pool:
                return None
            pick = e if e in pool else pool[0]
            emap[e] = pick
            taken.add(pick)
        return emap

    def extend(k: int) -> HypergraphMorphism | None:
        if k == len(vorder):
            emap = edges_consistent()
            if emap is None:
                return None
            return HypergraphMorphism(h1, h2, dict(vmap), emap, check=False)
        v = vorder[k]
        for w in vcands[v]:
            if w in used:
                continue
            vmap[v] = w
            used.add(w)
            found = extend(k + 1)
            if found is not None:
                return found
            del vmap[v]
            used.remove(w)
        return None

    witness = extend(0)
    if witness is not None:
        witness.validate()
        assert witness.is_bijective()
    return witness
