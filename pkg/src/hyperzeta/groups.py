"""Finite groups acting on hypergraphs: closure, freeness, quotients, deck groups.

Groups are explicit multiplication tables over an ordered element list, which
keeps the exponent, inverses and conjugacy classes directly computable at the
scales this library targets.  Elements act on the left: ``(gh)(v) = g(h(v))``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import gcd

from .hypergraphs import (
    Graph,
    Hypergraph,
    HypergraphMorphism,
    e_node,
    incidence_edge_id,
    v_node,
)


class FiniteGroup:
    """A finite group given by its multiplication table."""

    __slots__ = ("elements", "mul_table", "identity_index", "inverse_table", "_index")

    def __init__(self, elements, mul_table):
        self.elements = tuple(elements)
        self.mul_table = tuple(tuple(row) for row in mul_table)
        n = len(self.elements)
        if len(self.mul_table) != n or any(len(r) != n for r in self.mul_table):
            raise ValueError("multiplication table shape mismatch")
        self._index = {g: i for i, g in enumerate(self.elements)}
        identity = None
        for i in range(n):
            if all(self.mul_table[i][j] == j and self.mul_table[j][i] == j for j in range(n)):
                identity = i
                break
        if identity is None:
            raise ValueError("no identity element")
        self.identity_index = identity
        inverses = []
        for i in range(n):
            inv = next((j for j in range(n) if self.mul_table[i][j] == identity), None)
            if inv is None or self.mul_table[inv][i] != identity:
                raise ValueError(f"element {self.elements[i]!r} has no inverse")
            inverses.append(inv)
        self.inverse_table = tuple(inverses)
        # full associativity is cubic; cap it so large closure tables stay usable
        if n <= 64:
            for a in range(n):
                for b in range(n):
                    for c in range(n):
                        if (
                            self.mul_table[self.mul_table[a][b]][c]
                            != self.mul_table[a][self.mul_table[b][c]]
                        ):
                            raise ValueError("multiplication table is not associative")

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def identity(self):
        return self.elements[self.identity_index]

    def index(self, g) -> int:
        return self._index[g]

    def mul(self, g, h):
        return self.elements[self.mul_table[self._index[g]][self._index[h]]]

    def inverse(self, g):
        return self.elements[self.inverse_table[self._index[g]]]

    def element_order(self, g) -> int:
        k = 1
        x = g
        while x != self.identity:
            x = self.mul(x, g)
            k += 1
        return k

    def exponent(self) -> int:
        exp = 1
        for g in self.elements:
            o = self.element_order(g)
            exp = exp * o // gcd(exp, o)
        return exp

    def is_cyclic(self) -> bool:
        return self.cyclic_generator() is not None

    def cyclic_generator(self):
        for g in self.elements:
            if self.element_order(g) == len(self.elements):
                return g
        return None

    def power(self, g, k: int):
        result = self.identity
        x = g
        k %= self.element_order(g)
        for _ in range(k):
            result = self.mul(result, x)
        return result

    def conjugacy_classes(self) -> list[tuple]:
        """Conjugacy classes as sorted tuples, identity class first."""
        remaining = set(self.elements)
        classes = []
        for g in self.elements:
            if g not in remaining:
                continue
            cls = {self.mul(self.mul(h, g), self.inverse(h)) for h in self.elements}
            classes.append(tuple(sorted(cls, key=self._index.get)))
            remaining -= cls
        return classes

    def conjugacy_class_of(self, g) -> tuple:
        for cls in self.conjugacy_classes():
            if g in cls:
                return cls
        raise KeyError(g)

    @staticmethod
    def trivial() -> FiniteGroup:
        return FiniteGroup(["id"], [[0]])

    @staticmethod
    def cyclic(n: int, name: str = "g") -> FiniteGroup:
        elements = ["id"] + [f"{name}^{k}" if k > 1 else name for k in range(1, n)]
        table = [[(i + j) % n for j in range(n)] for i in range(n)]
        return FiniteGroup(elements, table)

    def __repr__(self) -> str:
        return f"FiniteGroup({list(self.elements)})"


@dataclass
class Automorphism:
    """A named automorphism of an incidence structure (vertex + edge permutation)."""

    name: str
    vertex_perm: dict
    edge_perm: dict

    def key(self) -> tuple:
        return (
            tuple(sorted(self.vertex_perm.items())),
            tuple(sorted(self.edge_perm.items())),
        )


class HypergraphAction:
    """A finite group acting on a hypergraph (or graph) by automorphisms."""

    __slots__ = ("group", "structure", "vertex_perms", "edge_perms")

    def __init__(self, group: FiniteGroup, structure, vertex_perms, edge_perms, check=True):
        self.group = group
        self.structure = structure
        self.vertex_perms = {g: dict(p) for g, p in vertex_perms.items()}
        self.edge_perms = {g: dict(p) for g, p in edge_perms.items()}
        if check:
            self.validate()

    def validate(self) -> None:
        for g in self.group.elements:
            morph = self.as_morphism(g)
            if not morph.is_automorphism():
                raise ValueError(f"element {g!r} does not act as an automorphism")
        for g in self.group.elements:
            for h in self.group.elements:
                gh = self.group.mul(g, h)
                for v in self.structure.vertices:
                    if self.vertex_perms[gh][v] != self.vertex_perms[g][self.vertex_perms[h][v]]:
                        raise ValueError("action is not a homomorphism on vertices")
                for e in self.structure.edge_ids:
                    if self.edge_perms[gh][e] != self.edge_perms[g][self.edge_perms[h][e]]:
                        raise ValueError("action is not a homomorphism on edges")

    def as_morphism(self, g) -> HypergraphMorphism:
        return HypergraphMorphism(
            self.structure,
            self.structure,
            self.vertex_perms[g],
            self.edge_perms[g],
            check=False,
        )

    def apply_vertex(self, g, v):
        return self.vertex_perms[g][v]

    def apply_edge(self, g, e):
        return self.edge_perms[g][e]

    def vertex_orbit(self, v) -> tuple:
        return tuple(sorted({self.vertex_perms[g][v] for g in self.group.elements}))

    def edge_orbit(self, e) -> tuple:
        return tuple(sorted({self.edge_perms[g][e] for g in self.group.elements}))


DEFAULT_CLOSURE_CAP = 10_000


def closure_from_generators(
    structure, generators: list[Automorphism], cap: int = DEFAULT_CLOSURE_CAP
) -> HypergraphAction:
    """Generate the full group from automorphism generators, with its table.

    Elements are keyed by the permutation pair they induce; names are the
    shortest generator words found (identity is named ``id``).
    """
    for gen in generators:
        morph = HypergraphMorphism(
            structure, structure, gen.vertex_perm, gen.edge_perm, check=False
        )
        if not morph.is_automorphism():
            raise ValueError(f"generator {gen.name!r} is not an automorphism")

    ident = Automorphism(
        "id",
        {v: v for v in structure.vertices},
        {e: e for e in structure.edge_ids},
    )
    found: dict[tuple, Automorphism] = {ident.key(): ident}
    order: list[Automorphism] = [ident]
    queue = deque([ident])
    while queue:
        current = queue.popleft()
        for gen in generators:
            vperm = {v: gen.vertex_perm[current.vertex_perm[v]] for v in structure.vertices}
            eperm = {e: gen.edge_perm[current.edge_perm[e]] for e in structure.edge_ids}
            name = gen.name if current.name == "id" else gen.name + "." + current.name
            candidate = Automorphism(name, vperm, eperm)
            key = candidate.key()
            if key not in found:
                if len(found) >= cap:
                    raise ValueError(f"group closure exceeded cap of {cap} elements")
                found[key] = candidate
                order.append(candidate)
                queue.append(candidate)

    names = [a.name for a in order]
    index_by_key = {a.key(): i for i, a in enumerate(order)}
    table = []
    for a in order:
        row = []
        for b in order:
            vperm = {v: a.vertex_perm[b.vertex_perm[v]] for v in structure.vertices}
            eperm = {e: a.edge_perm[b.edge_perm[e]] for e in structure.edge_ids}
            row.append(index_by_key[(tuple(sorted(vperm.items())), tuple(sorted(eperm.items())))])
        table.append(row)
    group = FiniteGroup(names, table)
    return HypergraphAction(
        group,
        structure,
        {a.name: a.vertex_perm for a in order},
        {a.name: a.edge_perm for a in order},
    )


@dataclass
class FreenessReport:
    free: bool
    witness: tuple | None = None  # ("fixed-vertex", g, v) | ("fixed-edge", g, e) | ("incidence", g, v, e)


def is_free_action(action: HypergraphAction) -> FreenessReport:
    """Free means: no nonidentity element fixes a vertex or an edge, and no
    edge ever contains both v and g(v) for nonidentity g."""
    h = action.structure
    ident = action.group.identity
    for g in action.group.elements:
        if g == ident:
            continue
        for v in h.vertices:
            if action.vertex_perms[g][v] == v:
                return FreenessReport(False, ("fixed-vertex", g, v))
        for e in h.edge_ids:
            if action.edge_perms[g][e] == e:
                return FreenessReport(False, ("fixed-edge", g, e))
        for e in h.edge_ids:
            members = set(h.edge_members(e))
            for v in h.edge_members(e):
                if action.vertex_perms[g][v] in members:
                    return FreenessReport(False, ("incidence", g, v, e))
    return FreenessReport(True)


def quotient(action: HypergraphAction) -> tuple[Hypergraph, HypergraphMorphism]:
    """The quotient hypergraph H/G and the projection morphism.

    Vertices and edges are orbits, named by their least member; an orbit
    edge's member set is the set of member orbits of any representative.
    """
    h = action.structure
    vertex_orbit_of = {}
    vertex_orbits = []
    for v in h.vertices:
        if v in vertex_orbit_of:
            continue
        orbit = action.vertex_orbit(v)
        name = orbit[0]
        vertex_orbits.append(name)
        for w in orbit:
            vertex_orbit_of[w] = name
    edge_orbit_of = {}
    edge_orbits = []
    for e in h.edge_ids:
        if e in edge_orbit_of:
            continue
        orbit = action.edge_orbit(e)
        name = orbit[0]
        members = tuple(sorted({vertex_orbit_of[v] for v in h.edge_members(e)}))
        # the member-orbit set must not depend on the representative
        for rep in orbit:
            rep_members = tuple(sorted({vertex_orbit_of[v] for v in h.edge_members(rep)}))
            assert rep_members == members, "orbit edge member set depends on representative"
        edge_orbits.append((name, members))
        for f in orbit:
            edge_orbit_of[f] = name
    quotient_h = Hypergraph(vertex_orbits, edge_orbits)
    projection = HypergraphMorphism(h, quotient_h, vertex_orbit_of, edge_orbit_of)
    return quotient_h, projection


def quotient_graph(action: HypergraphAction) -> tuple[Graph, HypergraphMorphism]:
    """Quotient of a graph action, as a graph (orbit edges keep two endpoints)."""
    g = action.structure
    vertex_orbit_of = {}
    vertex_orbits = []
    for v in g.vertices:
        if v in vertex_orbit_of:
            continue
        orbit = action.vertex_orbit(v)
        name = orbit[0]
        vertex_orbits.append(name)
        for w in orbit:
            vertex_orbit_of[w] = name
    edge_orbit_of = {}
    edge_list = []
    for e in g.edge_ids:
        if e in edge_orbit_of:
            continue
        orbit = action.edge_orbit(e)
        name = orbit[0]
        a, b = g.edge_members(e)
        edge_list.append((name, (vertex_orbit_of[a], vertex_orbit_of[b])))
        for f in orbit:
            edge_orbit_of[f] = name
    quotient_g = Graph(vertex_orbits, edge_list)
    projection = HypergraphMorphism(g, quotient_g, vertex_orbit_of, edge_orbit_of)
    return quotient_g, projection


def induced_action_on_incidence(action: HypergraphAction) -> HypergraphAction:
    """Push the action through the functor B onto the incidence graph."""
    from .hypergraphs import incidence_graph

    b = incidence_graph(action.structure).graph
    vperms = {}
    eperms = {}
    for g in action.group.elements:
        vperm = {}
        for v in action.structure.vertices:
            vperm[v_node(v)] = v_node(action.vertex_perms[g][v])
        for e in action.structure.edge_ids:
            vperm[e_node(e)] = e_node(action.edge_perms[g][e])
        eperm = {}
        for e in action.structure.edge_ids:
            for v in action.structure.edge_members(e):
                eperm[incidence_edge_id(v, e)] = incidence_edge_id(
                    action.vertex_perms[g][v], action.edge_perms[g][e]
                )
        vperms[g] = vperm
        eperms[g] = eperm
    return HypergraphAction(action.group, b, vperms, eperms)


DEFAULT_DECK_CAP = 2_000_000


def deck_group(structure, projection: HypergraphMorphism, cap: int = DEFAULT_DECK_CAP) -> list[HypergraphMorphism]:
    """All automorphisms s of the source with projection o s = projection.

    Exhaustive backtracking; candidates for each vertex/edge are restricted to
    its projection fiber, so fibers of size |G| keep the search shallow.
    """
    vertex_fiber: dict[str, list[str]] = {}
    for v in structure.vertices:
        vertex_fiber.setdefault(projection.vertex_map[v], []).append(v)
    edge_fiber: dict[str, list[str]] = {}
    for e in structure.edge_ids:
        edge_fiber.setdefault(projection.edge_map[e], []).append(e)

    space = 1
    for fiber in vertex_fiber.values():
        space *= len(fiber)
        if space > cap:
            raise ValueError(f"deck group search space exceeds cap {cap}")

    edge_of_members: dict[tuple, list[str]] = {}
    for e in structure.edge_ids:
        edge_of_members.setdefault(tuple(sorted(structure.edge_members(e))), []).append(e)

    results: list[HypergraphMorphism] = []
    vorder = list(structure.vertices)
    vmap: dict[str, str] = {}
    used: set[str] = set()

    edge_order = list(structure.edge_ids)

    def match_edges(k: int, emap: dict[str, str], taken: set[str]) -> None:
        if k == len(edge_order):
            results.append(
                HypergraphMorphism(structure, structure, dict(vmap), dict(emap), check=False)
            )
            return
        e = edge_order[k]
        image_members = tuple(sorted(vmap[v] for v in structure.edge_members(e)))
        for f in edge_of_members.get(image_members, []):
            if f in taken or projection.edge_map[f] != projection.edge_map[e]:
                continue
            emap[e] = f
            taken.add(f)
            match_edges(k + 1, emap, taken)
            del emap[e]
            taken.remove(f)

    def extend(k: int) -> None:
        if k == len(vorder):
            match_edges(0, {}, set())
            return
        v = vorder[k]
        for w in vertex_fiber[projection.vertex_map[v]]:
            if w in used:
                continue
            vmap[v] = w
            used.add(w)
            extend(k + 1)
            del vmap[v]
            used.remove(w)

    extend(0)
    return [m for m in results if m.is_automorphism()]


@dataclass
class GaloisReport:
    """Outcome of checking the three free-Galois-covering conditions."""

    free: FreenessReport
    quotient_ok: bool
    covering_local_iso: bool
    deck_order: int | None
    group_order: int
    deck_matches_group: bool | None
    notes: list[str] = field(default_factory=list)

    @property
    def all_pass(self) -> bool:
        return (
            self.free.free
            and self.quotient_ok
            and self.covering_local_iso
            and self.deck_matches_group is True
        )


def covering_is_local_iso(structure, projection: HypergraphMorphism) -> bool:
    """Check that the projection restricts to a bijection on neighbourhoods:
    for y over x, incident edges of y biject onto incident edges of x, and the
    members of each incident edge biject onto the members of its image."""
    target = projection.target
    for y in structure.vertices:
        x = projection.vertex_map[y]
        y_edges = structure.vertex_edges(y)
        images = [projection.edge_map[e] for e in y_edges]
        if sorted(images) != sorted(target.vertex_edges(x)):
            return False
        for e in y_edges:
            members = structure.edge_members(e)
            mapped = sorted(projection.vertex_map[v] for v in members)
            if mapped != sorted(target.edge_members(projection.edge_map[e])):
                return False
    return True


def verify_galois(action: HypergraphAction, deck_cap: int = DEFAULT_DECK_CAP) -> GaloisReport:
    """Check freeness, quotient/covering structure, and the deck-group condition."""
    free = is_free_action(action)
    notes: list[str] = []
    quotient_ok = False
    local_iso = False
    deck_order = None
    deck_matches = None
    try:
        q, projection = quotient(action)
        quotient_ok = True
        local_iso = covering_is_local_iso(action.structure, projection)
        try:
            deck = deck_group(action.structure, projection, cap=deck_cap)
            deck_order = len(deck)
            image = {
                tuple(sorted(action.vertex_perms[g].items())) for g in action.group.elements
            }
            deck_keys = {tuple(sorted(m.vertex_map.items())) for m in deck}
            contained = image <= deck_keys
            deck_matches = contained and deck_order == len(action.group)
            if not contained:
                notes.append("action image not contained in deck group")
        except ValueError as exc:
            notes.append(str(exc))
    except ValueError as exc:
        notes.append(str(exc))
    if not free.free:
        notes.append(f"not free: witness {free.witness}")
    return GaloisReport(
        free=free,
        quotient_ok=quotient_ok,
        covering_local_iso=local_iso,
        deck_order=deck_order,
        group_order=len(action.group),
        deck_matches_group=deck_matches,
        notes=notes,
    )
