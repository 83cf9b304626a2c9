"""
Topological prismatoids: a pure complex homeomorphic to a cylinder whose two
boundary spheres (the bases) are induced and contain every vertex.

The width of a prismatoid is kept up to date through per-facet labels
holding the dual distance to the facets incident to ``base_plus`` and the
number of shortest paths achieving it.
"""
import heapq
import logging
import math
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from itertools import count as count_up

import networkx as nx
from django.conf import settings

from .complex_core import (
    FreshVertexSource,
    are_isomorphic,
    boundary_components,
    dual_neighbors,
    euler_characteristic,
    face_key,
    format_face,
    induced,
    is_dual_connected,
    sort_faces,
    vertex_links_ok,
)
from .exceptions import (
    BaseNotInduced,
    BasesOverlap,
    DualDisconnected,
    EulerMismatch,
    NotAPermutation,
    NotPseudomanifold,
    VertexOutsideBases,
    WrongBoundaryCount,
)

logger = logging.getLogger(__name__)

PATH_MASK = (1 << 64) - 1
PLUS, MINUS = "plus", "minus"


class Prismatoid:
    """A complex together with its two bases and maintained width labels.

    Use :func:`validate_prismatoid` to build one from untrusted input; the
    constructor trusts its arguments and takes ownership of ``complex_``.
    """

    def __init__(self, complex_, base_plus, base_minus, fresh=None):
        self.complex = complex_
        self.base_plus = set(base_plus)
        self.base_minus = set(base_minus)
        self.fresh = fresh if fresh is not None else FreshVertexSource()
        self.ridge_index = None
        self.recompute_width_labels()

    def copy(self):
        clone = Prismatoid.__new__(Prismatoid)
        clone.complex = self.complex.copy()
        clone.base_plus = set(self.base_plus)
        clone.base_minus = set(self.base_minus)
        clone.fresh = self.fresh.copy()
        clone.distance = dict(self.distance)
        clone.paths = dict(self.paths)
        clone.sources = set(self.sources)
        clone.sinks = set(self.sinks)
        clone.ridge_index = self.ridge_index.copy() if self.ridge_index is not None else None
        return clone

    def __eq__(self, other):
        if not isinstance(other, Prismatoid):
            return NotImplemented
        return (
            self.complex == other.complex
            and self.base_plus == other.base_plus
            and self.base_minus == other.base_minus
        )

    __hash__ = None

    def __repr__(self):
        return f"<Prismatoid d={self.d} vertices={self.vertex_count} facets={self.facet_count} width={self.width}>"

    @property
    def d(self):
        """Facet size; the complex has dimension ``d - 1``."""
        return self.complex.dim + 1

    @property
    def facets(self):
        return self.complex.facets

    @property
    def facet_count(self):
        return self.complex.facet_count

    @property
    def vertex_count(self):
        return len(self.complex.vertices)

    def base(self, side):
        return self.base_plus if side == PLUS else self.base_minus

    def side_of(self, vertex):
        if vertex in self.base_plus:
            return PLUS
        if vertex in self.base_minus:
            return MINUS
        return None

    def touches(self, facet, side):
        """Whether ``facet`` is incident to a base, i.e. contains a facet of it."""
        return len(facet & self.base(side)) == self.d - 1

    # width labels

    def recompute_width_labels(self):
        self.sources = {f for f in self.complex.facets if self.touches(f, PLUS)}
        self.sinks = {f for f in self.complex.facets if self.touches(f, MINUS)}
        self.distance, self.paths = bfs_width_labels(self.complex, self.sources)

    @property
    def width_labels(self):
        return {f: (self.distance[f], self.paths[f]) for f in self.distance}

    @property
    def width(self):
        return min((self.distance[f] for f in self.sinks), default=math.inf) + 2

    def labels_match_bfs(self):
        distance, paths = bfs_width_labels(self.complex, self.sources)
        return distance == self.distance and paths == self.paths

    def update_width_labels(self, removed=(), inserted=()):
        """Repair labels after ``removed`` facets were replaced by ``inserted`` ones."""
        complex_ = self.complex
        distance, paths = self.distance, self.paths
        inserted = set(inserted)
        for f in removed:
            distance.pop(f, None)
            paths.pop(f, None)
            self.sources.discard(f)
            self.sinks.discard(f)
        for f in inserted:
            distance[f] = math.inf
            paths[f] = 0
            if self.touches(f, PLUS):
                self.sources.add(f)
            if self.touches(f, MINUS):
                self.sinks.add(f)
        if not inserted and not removed:
            return

        border = set()
        for f in inserted:
            border.update(g for g in dual_neighbors(complex_, f) if g not in inserted)

        # heap entries are (distance, tick, facet); ties need no canonical order
        tick = count_up()

        # labels that lost every parent become unreachable, cascading outward
        previous = {}
        invalid = set()
        heap = [(distance[g], next(tick), g) for g in border if 0 < distance[g] < math.inf]
        heapq.heapify(heap)
        while heap:
            dist, _, g = heapq.heappop(heap)
            if g in invalid:
                continue
            neighbors = dual_neighbors(complex_, g)
            if any(distance[h] == dist - 1 for h in neighbors):
                continue
            previous[g] = (dist, paths[g])
            invalid.add(g)
            distance[g] = math.inf
            paths[g] = 0
            for h in neighbors:
                if distance[h] == dist + 1:
                    heapq.heappush(heap, (dist + 1, next(tick), h))

        # relax from the invalidated and inserted facets
        seeds = invalid | inserted
        heap = []
        for g in seeds:
            if g in self.sources:
                best = 0
            else:
                best = min((distance[h] + 1 for h in dual_neighbors(complex_, g)), default=math.inf)
            if best < distance[g]:
                distance[g] = best
                heapq.heappush(heap, (best, next(tick), g))
        settled = set()
        while heap:
            dist, _, g = heapq.heappop(heap)
            if g in settled or dist != distance[g]:
                continue
            settled.add(g)
            for h in dual_neighbors(complex_, g):
                if dist + 1 < distance[h]:
                    if h not in seeds and h not in previous:
                        previous[h] = (distance[h], paths[h])
                    distance[h] = dist + 1
                    heapq.heappush(heap, (dist + 1, next(tick), h))

        # recount shortest paths wherever a parent may have changed
        dirty = seeds | border | set(previous)
        for g, (old, _) in previous.items():
            # children of the old distance lost g as a parent
            if old != distance[g] and old < math.inf:
                dirty.update(h for h in dual_neighbors(complex_, g) if distance[h] == old + 1)
        heap = [(distance[g], next(tick), g) for g in dirty if distance[g] < math.inf]
        heapq.heapify(heap)
        done = set()
        while heap:
            dist, _, g = heapq.heappop(heap)
            if g in done:
                continue
            done.add(g)
            neighbors = dual_neighbors(complex_, g)
            if dist == 0:
                count = 1
            else:
                count = sum(paths[h] for h in neighbors if distance[h] == dist - 1) & PATH_MASK
            before = None if g in inserted else previous.get(g, (dist, paths[g]))
            paths[g] = count
            if before != (dist, count):
                for h in neighbors:
                    if dist < distance[h] < math.inf and h not in done:
                        heapq.heappush(heap, (distance[h], next(tick), h))

    def label_snapshot(self):
        """Copy of the width labels, for :meth:`restore_labels` after an undone flip."""
        return dict(self.distance), dict(self.paths), set(self.sources), set(self.sinks)

    def restore_labels(self, snapshot):
        """Put back labels taken by :meth:`label_snapshot`; the snapshot is consumed."""
        self.distance, self.paths, self.sources, self.sinks = snapshot


def bfs_width_labels(complex_, sources):
    """Full breadth-first recomputation of (distance, path count) labels."""
    distance = {f: math.inf for f in complex_.facets}
    paths = {f: 0 for f in distance}
    queue = deque()
    for f in sort_faces(sources):
        distance[f] = 0
        paths[f] = 1
        queue.append(f)
    while queue:
        f = queue.popleft()
        dist, count = distance[f], paths[f]
        for g in dual_neighbors(complex_, f):
            if distance[g] == math.inf:
                distance[g] = dist + 1
                paths[g] = count
                queue.append(g)
            elif distance[g] == dist + 1:
                paths[g] = (paths[g] + count) & PATH_MASK
    return distance, paths


def width(prismatoid):
    return prismatoid.width


def update_width_labels(prismatoid, changed_facets):
    """Repair labels given the facets a flip removed or inserted."""
    current = prismatoid.complex.facets
    changed = [frozenset(f) for f in changed_facets]
    removed = [f for f in changed if f not in current]
    inserted = [f for f in changed if f in current]
    prismatoid.update_width_labels(removed, inserted)


def validate_prismatoid(complex_, base_plus, base_minus, fresh=None):
    """Check the computable conditions of a topological prismatoid and wrap it."""
    base_plus, base_minus = set(base_plus), set(base_minus)
    overlap = base_plus & base_minus
    if overlap:
        raise BasesOverlap(f"vertices {sorted(overlap)} lie in both bases")
    vertices = complex_.vertices
    outside = vertices - base_plus - base_minus
    if outside:
        raise VertexOutsideBases(f"vertices {sorted(outside)} lie in no base")
    unused = (base_plus | base_minus) - vertices
    if unused:
        raise VertexOutsideBases(f"base tokens {sorted(unused)} are not vertices")
    for f in complex_.facets:
        if f <= base_plus or f <= base_minus:
            raise BaseNotInduced(f"facet {format_face(f)} lies inside one base")

    components = boundary_components(complex_)
    found = sorted(sorted(c.vertices) for c in components)
    expected = sorted([sorted(base_plus), sorted(base_minus)])
    if found != expected:
        raise WrongBoundaryCount(
            f"boundary has {len(components)} components; their vertex sets must be the two bases"
        )
    for component in components:
        if induced(complex_, component.vertices) != component:
            raise BaseNotInduced(
                f"base on {{{', '.join(sorted(component.vertices))}}} is not an induced subcomplex"
            )
    if not is_dual_connected(complex_):
        raise DualDisconnected("the dual graph is disconnected")
    expected_chi = 1 + (-1) ** (complex_.dim - 1)
    chi = euler_characteristic(complex_)
    if chi != expected_chi:
        raise EulerMismatch(f"Euler characteristic {chi}, expected {expected_chi}")
    if not vertex_links_ok(complex_):
        raise NotPseudomanifold("some vertex link is neither a path nor a cycle")
    prismatoid = Prismatoid(complex_, base_plus, base_minus, fresh=fresh)
    logger.debug("validated %r", prismatoid)
    return prismatoid


def base_facets(prismatoid):
    """Facets of the two base complexes as ``(plus, minus)`` sorted lists."""
    plus = sort_faces(f & prismatoid.base_plus for f in prismatoid.sources)
    minus = sort_faces(f & prismatoid.base_minus for f in prismatoid.sinks)
    return plus, minus


def prismatoid_isomorphic(first, second):
    return are_isomorphic(
        first.complex,
        second.complex,
        respect_bases=(
            (first.base_plus, first.base_minus),
            (second.base_plus, second.base_minus),
        ),
    )


# incidence patterns

@dataclass
class IncidencePattern:
    graph: nx.DiGraph
    reduced: nx.DiGraph
    two_cycles: list

    def arcs(self, reduced=True):
        graph = self.reduced if reduced else self.graph
        return sorted(graph.edges)


def incidence_pattern(prismatoid):
    graph = nx.DiGraph()
    for v in prismatoid.base_plus:
        graph.add_node(v, side=PLUS)
    for w in prismatoid.base_minus:
        graph.add_node(w, side=MINUS)
    for f in prismatoid.sources:
        for v in f & prismatoid.base_plus:
            for w in f & prismatoid.base_minus:
                graph.add_edge(v, w)
    for f in prismatoid.sinks:
        for v in f & prismatoid.base_plus:
            for w in f & prismatoid.base_minus:
                graph.add_edge(w, v)
    keep = [node for node in graph if graph.in_degree(node) > 0]
    reduced = graph.subgraph(keep).copy()
    two_cycles = sorted(
        (v, w)
        for v, w in reduced.edges
        if prismatoid.side_of(v) == PLUS and reduced.has_edge(w, v)
    )
    return IncidencePattern(graph=graph, reduced=reduced, two_cycles=two_cycles)


@dataclass
class Certificate:
    width: float
    d: int

    kind = "dstep"

    @property
    def non_dstep(self):
        return self.width > self.d


@dataclass
class PatternCertificate(Certificate):
    pattern: IncidencePattern = None
    kind = "pattern"


@dataclass
class WidthCertificate(Certificate):
    kind = "width"


@dataclass
class DStep(Certificate):
    kind = "dstep"


def certify_non_dstep(prismatoid):
    """Certify a prismatoid as non-d-step, by its incidence pattern if possible."""
    pattern = incidence_pattern(prismatoid)
    value = prismatoid.width
    if pattern.reduced.number_of_nodes() and not pattern.two_cycles:
        return PatternCertificate(width=value, d=prismatoid.d, pattern=pattern)
    if value > prismatoid.d:
        return WidthCertificate(width=value, d=prismatoid.d)
    return DStep(width=value, d=prismatoid.d)


# layers

def layer_of(prismatoid, facet):
    return len(facet & prismatoid.base_plus), len(facet & prismatoid.base_minus)


def facets_by_layer(prismatoid):
    """Facets grouped by how many vertices they take from ``base_plus``, heaviest first."""
    d = prismatoid.d
    layers = {k: [] for k in range(d - 1, 0, -1)}
    for f in prismatoid.facets:
        layers.setdefault(len(f & prismatoid.base_plus), []).append(f)
    return [sort_faces(layers[k]) for k in sorted(layers, reverse=True)]


def layer_vector(prismatoid):
    return tuple(len(layer) for layer in facets_by_layer(prismatoid))


def excess(prismatoid):
    value = prismatoid.width
    if value == math.inf:
        return math.inf
    return Fraction(value - prismatoid.d, prismatoid.vertex_count - prismatoid.d)


# shellings

@dataclass
class ShellingReport:
    order: list
    direction: str
    ridge_counts: list = field(default_factory=list)
    verdict: bool = False
    failed_step: int = None


class _ShellingState:
    """Faces covered so far by a partial prismatoid shelling."""

    def __init__(self, prismatoid, direction):
        self.complex = prismatoid.complex
        self.d = prismatoid.d
        self.base = prismatoid.base(direction)
        self.placed = set()
        self.covered = Counter()

    def glued(self, facet):
        """Vertices whose removal leaves a ridge already in the shelled part."""
        result = set()
        for vertex in facet:
            if facet - {vertex} <= self.base:
                result.add(vertex)
        for vertex, other in self.complex.adjacent_facets(facet):
            if other in self.placed:
                result.add(vertex)
        return frozenset(result)

    def fits(self, facet):
        """Number of glued ridges if adding ``facet`` is a valid step, else None."""
        glued = self.glued(facet)
        if not 1 <= len(glued) <= self.d - 1:
            return None
        rest = face_key(facet - glued)
        for size in range(len(rest)):
            for sub in combinations(rest, size):
                g = glued.union(sub)
                if g <= self.base or g in self.covered:
                    return None
        return len(glued)

    def add(self, facet):
        self.placed.add(facet)
        members = face_key(facet)
        for size in range(1, len(members) + 1):
            for sub in combinations(members, size):
                self.covered[frozenset(sub)] += 1

    def remove(self, facet):
        self.placed.discard(facet)
        members = face_key(facet)
        for size in range(1, len(members) + 1):
            for sub in combinations(members, size):
                key = frozenset(sub)
                self.covered[key] -= 1
                if not self.covered[key]:
                    del self.covered[key]


def check_shelling(prismatoid, order, direction=PLUS):
    order = [frozenset(f) for f in order]
    if len(order) != len(set(order)) or set(order) != prismatoid.facets:
        raise NotAPermutation("order must list every facet exactly once")
    state = _ShellingState(prismatoid, direction)
    report = ShellingReport(order=order, direction=direction)
    for step, facet in enumerate(order, start=1):
        count = state.fits(facet)
        report.ridge_counts.append(len(state.glued(facet)) if count is None else count)
        if count is None:
            report.failed_step = step
            return report
        state.add(facet)
    report.verdict = True
    return report


def find_group_monotone_shelling(prismatoid, groups, direction=PLUS, node_limit=None):
    """Backtracking search for a shelling that exhausts each group before the next."""
    if node_limit is None:
        node_limit = settings.WORKBENCH["SHELLING_NODE_LIMIT"]
    groups = [list(g) for g in groups]
    group_of = []
    for index, group in enumerate(groups):
        group_of.extend([index] * len(group))
    total = len(group_of)
    state = _ShellingState(prismatoid, direction)
    order = []

    def candidates():
        group = groups[group_of[len(order)]]
        scored = []
        for f in group:
            if f in state.placed:
                continue
            count = state.fits(f)
            if count is not None:
                scored.append((-count, face_key(f), f))
        scored.sort(reverse=True)
        return [f for _, _, f in scored]

    if total == 0:
        return ShellingReport(order=[], direction=direction, verdict=True)
    frames = [candidates()]
    nodes = 0
    while frames:
        frame = frames[-1]
        if not frame:
            frames.pop()
            if order:
                state.remove(order.pop())
            continue
        nodes += 1
        if nodes > node_limit:
            logger.warning("shelling search gave up after %d nodes", node_limit)
            return None
        facet = frame.pop()
        state.add(facet)
        order.append(facet)
        if len(order) == total:
            return check_shelling(prismatoid, order, direction)
        frames.append(candidates())
    return None


def find_layer_monotone_shelling(prismatoid, node_limit=None):
    """A shelling monotone on layers, from either base, or None."""
    layers = facets_by_layer(prismatoid)
    for direction, groups in ((PLUS, layers), (MINUS, layers[::-1])):
        report = find_group_monotone_shelling(prismatoid, groups, direction, node_limit)
        if report is not None and report.verdict:
            return report
    return None
