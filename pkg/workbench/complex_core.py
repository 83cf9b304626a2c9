"""
Pure simplicial complexes stored as a face -> neighborhood map.

Every face of the complex (the empty face included) is a key of the map;
its value is a ``Counter`` recording, for each vertex of the face's star,
how many facets contain both the face and that vertex. The set of keys of
the counter is the neighborhood of the face, and the multiplicities let
facet insertion and removal update the map in time proportional to the
number of subfaces touched.
"""
import heapq
import logging
import math
from collections import Counter
from itertools import combinations, permutations

import networkx as nx
from networkx.algorithms import isomorphism

from .exceptions import (
    Empty,
    MixedDimension,
    NonBijective,
    NotAFace,
    NotAFacet,
    NotAVertex,
    NotPseudomanifold,
    UnknownFacet,
    VertexClash,
)

logger = logging.getLogger(__name__)

EMPTY_FACE = frozenset()


def face(tokens):
    """Build a face from an iterable of vertex tokens."""
    return frozenset(tokens)


def face_key(f):
    """Canonical sorted tuple of a face."""
    return tuple(sorted(f))


def format_face(f):
    tokens = face_key(f)
    if all(len(t) == 1 for t in tokens):
        return "".join(tokens)
    return " ".join(tokens)


def sort_faces(faces):
    return sorted(faces, key=face_key)


class FreshVertexSource:
    """Deterministic generator of vertex tokens unused by a complex.

    Tokens look like ``<prefix><n>``. Tokens handed back with
    :meth:`release` are reused smallest-first before new ones are minted.
    """

    def __init__(self, prefix="_x"):
        self.prefix = prefix
        self._counter = 0
        self._pool = []

    def owns(self, token):
        rest = token[len(self.prefix):]
        return token.startswith(self.prefix) and rest.isdigit()

    def take(self, avoid=()):
        avoid = set(avoid)
        skipped = []
        token = None
        while self._pool:
            candidate = heapq.heappop(self._pool)
            if candidate in avoid:
                skipped.append(candidate)
                continue
            token = candidate
            break
        for candidate in skipped:
            heapq.heappush(self._pool, candidate)
        while token is None:
            candidate = f"{self.prefix}{self._counter}"
            self._counter += 1
            if candidate not in avoid:
                token = candidate
        return token

    def peek(self, avoid=()):
        """The token :meth:`take` would return, without consuming it."""
        return self.copy().take(avoid)

    def claim(self, token):
        """Mark ``token`` as used, whether it was pooled or not yet minted."""
        if token in self._pool:
            self._pool.remove(token)
            heapq.heapify(self._pool)
        elif self.owns(token):
            self._counter = max(self._counter, int(token[len(self.prefix):]) + 1)

    def release(self, token):
        if self.owns(token) and token not in self._pool:
            heapq.heappush(self._pool, token)

    def copy(self):
        clone = FreshVertexSource(self.prefix)
        clone._counter = self._counter
        clone._pool = list(self._pool)
        return clone


class SimplicialComplex:
    """A simplicial complex given by its maximal faces.

    Instances are owned values: the mutating methods (:meth:`add_facet`,
    :meth:`remove_facet`) are meant for the flip machinery working on an
    exclusively owned copy.
    """

    def __init__(self, maximal_faces=(), ground_set=()):
        self._faces = {}
        self._facets = set()
        for f in maximal_faces:
            self.add_facet(f)
        self.reserve = set(ground_set) - self.vertices

    # storage

    def add_facet(self, facet):
        facet = frozenset(facet)
        if facet in self._facets:
            return
        self._facets.add(facet)
        members = face_key(facet)
        faces = self._faces
        for size in range(len(members) + 1):
            for sub in combinations(members, size):
                key = frozenset(sub)
                nb = faces.get(key)
                if nb is None:
                    faces[key] = Counter(members)
                else:
                    nb.update(members)

    def remove_facet(self, facet):
        facet = frozenset(facet)
        if facet not in self._facets:
            raise NotAFacet(f"{format_face(facet)} is not a facet")
        self._facets.remove(facet)
        members = face_key(facet)
        faces = self._faces
        for size in range(len(members) + 1):
            for sub in combinations(members, size):
                key = frozenset(sub)
                nb = faces[key]
                for vertex in members:
                    left = nb[vertex] - 1
                    if left:
                        nb[vertex] = left
                    else:
                        del nb[vertex]
                if not nb:
                    del faces[key]

    def copy(self):
        clone = SimplicialComplex.__new__(SimplicialComplex)
        clone._faces = {key: nb.copy() for key, nb in self._faces.items()}
        clone._facets = set(self._facets)
        clone.reserve = set(self.reserve)
        return clone

    # queries

    @property
    def facets(self):
        return frozenset(self._facets)

    @property
    def facet_count(self):
        return len(self._facets)

    @property
    def vertices(self):
        return frozenset(self._faces.get(EMPTY_FACE, ()))

    @property
    def ground_set(self):
        return self.vertices | self.reserve

    @property
    def dim(self):
        if not self._facets:
            return -1
        return max(len(f) for f in self._facets) - 1

    @property
    def is_pure(self):
        return len({len(f) for f in self._facets}) <= 1

    def is_facet(self, f):
        return frozenset(f) in self._facets

    def __contains__(self, f):
        return frozenset(f) in self._faces

    def __len__(self):
        """Number of nonempty faces."""
        return len(self._faces) - (1 if EMPTY_FACE in self._faces else 0)

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self._faces == other._faces

    __hash__ = None

    def __repr__(self):
        return f"<SimplicialComplex dim={self.dim} vertices={len(self.vertices)} facets={len(self._facets)}>"

    def faces(self, size=None):
        if size is None:
            return iter(self._faces)
        return (f for f in self._faces if len(f) == size)

    def neighborhood(self, f):
        nb = self._faces.get(frozenset(f))
        if nb is None:
            return None
        return frozenset(nb)

    def neighborhood_size(self, f):
        nb = self._faces.get(frozenset(f))
        return 0 if nb is None else len(nb)

    def star_count(self, f):
        """Number of facets containing the face ``f``."""
        f = frozenset(f)
        nb = self._faces.get(f)
        if nb is None:
            return 0
        if not f:
            return len(self._facets)
        return nb[next(iter(f))]

    def facets_containing(self, f):
        f = frozenset(f)
        if f not in self._faces:
            raise NotAFace(f"{format_face(f)} is not a face")
        nb = self._faces[f]
        # every facet through f lies inside its neighborhood
        if len(nb) <= 12:
            extra = face_key(frozenset(nb) - f)
            found = []
            for size in range(len(extra) + 1):
                for sub in combinations(extra, size):
                    candidate = f.union(sub)
                    if candidate in self._facets:
                        found.append(candidate)
            return found
        return [g for g in self._facets if f <= g]

    def adjacent_facets(self, facet):
        """Facets sharing a ridge with ``facet``, as (dropped vertex, facet) pairs."""
        result = []
        for vertex in facet:
            ridge = facet - {vertex}
            for other in self._faces[ridge]:
                if other not in facet:
                    result.append((vertex, ridge | {other}))
        return result

    def hasse_neighbors(self, f):
        """Maximal proper subfaces and minimal proper superfaces of ``f``."""
        f = frozenset(f)
        nb = self._faces.get(f)
        if nb is None:
            raise NotAFace(f"{format_face(f)} is not a face")
        subfaces = [f - {v} for v in face_key(f)]
        superfaces = [f | {w} for w in sorted(nb) if w not in f]
        return subfaces, superfaces

    def fresh_labels(self, count, prefix="_w"):
        source = FreshVertexSource(prefix)
        taken = set(self.ground_set)
        labels = []
        for _ in range(count):
            token = source.take(avoid=taken)
            taken.add(token)
            labels.append(token)
        return labels


def _from_faces(candidates, ground_set=()):
    """Complex generated by arbitrary faces, keeping only the maximal ones."""
    result = SimplicialComplex(ground_set=())
    for f in sorted(set(candidates), key=lambda g: (-len(g), face_key(g))):
        if f not in result:
            result.add_facet(f)
    result.reserve = set(ground_set) - result.vertices
    return result


def build_complex(facets, ground_set=()):
    """Pure complex from a list of facets (duplicates are merged)."""
    facets = [frozenset(f) for f in facets]
    if not facets:
        raise Empty("a complex needs at least one facet")
    sizes = {len(f) for f in facets}
    if len(sizes) > 1:
        raise MixedDimension(f"facets have sizes {sorted(sizes)}")
    return SimplicialComplex(facets, ground_set=ground_set)


def face_neighborhood(complex_, f):
    return complex_.neighborhood(f)


def hasse_neighbors(complex_, f):
    return complex_.hasse_neighbors(f)


def subcomplex(complex_, mode, arg):
    """Star, link or deletion of a face, or the subcomplex induced by a vertex set."""
    arg = frozenset(arg)
    if mode == "induced":
        return _from_faces((g & arg for g in complex_._facets), complex_.ground_set)
    if arg not in complex_:
        raise NotAFace(f"{format_face(arg)} is not a face")
    if mode == "star":
        return _from_faces(complex_.facets_containing(arg), complex_.ground_set)
    if mode == "link":
        return _from_faces((g - arg for g in complex_.facets_containing(arg)), complex_.ground_set)
    if mode == "deletion":
        return _from_faces((g - arg for g in complex_._facets), complex_.ground_set)
    raise ValueError(f"unknown subcomplex mode {mode!r}")


def star(complex_, f):
    return subcomplex(complex_, "star", f)


def link(complex_, f):
    return subcomplex(complex_, "link", f)


def deletion(complex_, f):
    return subcomplex(complex_, "deletion", f)


def induced(complex_, vertices):
    return subcomplex(complex_, "induced", vertices)


def f_vector(complex_):
    counts = Counter(len(f) for f in complex_.faces())
    return tuple(counts[size] for size in range(1, complex_.dim + 2))


def euler_characteristic(complex_):
    return sum((-1) ** i * count for i, count in enumerate(f_vector(complex_)))


def ridge_multiplicities(complex_):
    """Map each ridge (face of size dim) to the number of facets containing it."""
    size = complex_.dim
    return {r: complex_.star_count(r) for r in complex_.faces(size)}


def boundary_ridges(complex_):
    result = []
    for ridge, count in ridge_multiplicities(complex_).items():
        if count >= 3:
            raise NotPseudomanifold(f"ridge {format_face(ridge)} lies in {count} facets")
        if count == 1:
            result.append(ridge)
    return result


def is_closed_pseudomanifold(complex_):
    return complex_.dim >= 1 and all(c == 2 for c in ridge_multiplicities(complex_).values())


def boundary_components(complex_):
    """Connected components of the boundary complex, sorted by smallest vertex."""
    ridges = boundary_ridges(complex_)
    if not ridges:
        return []
    graph = nx.Graph()
    for ridge in ridges:
        graph.add_node(("ridge", ridge))
        for vertex in ridge:
            graph.add_edge(("ridge", ridge), ("face", ridge - {vertex}))
    components = []
    for nodes in nx.connected_components(graph):
        members = [node[1] for node in nodes if node[0] == "ridge"]
        components.append(build_complex(members))
    components.sort(key=lambda c: min(c.vertices))
    return components


def dual_graph(complex_):
    """Graph on facets with an edge for every ridge shared by two facets."""
    graph = nx.Graph()
    graph.add_nodes_from(complex_._facets)
    size = complex_.dim
    for ridge in complex_.faces(size):
        nb = complex_._faces[ridge]
        owners = [ridge | {v} for v in nb if v not in ridge]
        for a, b in combinations(owners, 2):
            graph.add_edge(a, b)
    return graph


def dual_neighbors(complex_, facet):
    """Facets sharing an interior ridge with ``facet``."""
    return [other for _, other in complex_.adjacent_facets(facet)]


def dual_distance(complex_, sources, targets, graph=None):
    sources = {frozenset(f) for f in sources}
    targets = {frozenset(f) for f in targets}
    for f in sources | targets:
        if f not in complex_._facets:
            raise UnknownFacet(f"{format_face(f)} is not a facet")
    if not sources or not targets:
        return math.inf
    if graph is None:
        graph = dual_graph(complex_)
    lengths = nx.multi_source_dijkstra_path_length(graph, sources)
    return min((lengths[t] for t in targets if t in lengths), default=math.inf)


def dual_diameter(complex_, graph=None):
    if graph is None:
        graph = dual_graph(complex_)
    if graph.number_of_nodes() <= 1:
        return 0
    if not nx.is_connected(graph):
        return math.inf
    return nx.diameter(graph)


def is_dual_connected(complex_):
    graph = dual_graph(complex_)
    return graph.number_of_nodes() > 0 and nx.is_connected(graph)


def looks_like_sphere(complex_):
    """Computable necessary conditions for a simplicial sphere."""
    return (
        is_closed_pseudomanifold(complex_)
        and is_dual_connected(complex_)
        and euler_characteristic(complex_) == 1 + (-1) ** complex_.dim
    )


def vertex_links_ok(complex_):
    """In dimension <= 2, every vertex link must be a path or a cycle (or 1-2 points)."""
    if complex_.dim > 2:
        return True
    for vertex in complex_.vertices:
        lk = link(complex_, {vertex})
        if complex_.dim <= 1:
            if not 1 <= len(lk.vertices) <= 2 or lk.dim != 0:
                return False
            continue
        if lk.dim != 1 or not lk.is_pure:
            return False
        graph = nx.Graph(tuple(edge) for edge in lk.facets)
        if not nx.is_connected(graph) or max(d for _, d in graph.degree) > 2:
            return False
    return True


def relabel(complex_, mapping):
    mapped = [frozenset(mapping.get(v, v) for v in f) for f in complex_._facets]
    if any(len(g) != len(f) for g, f in zip(mapped, complex_._facets)):
        raise NonBijective("relabeling identifies two vertices of a face")
    return SimplicialComplex(mapped)


def join(first, second):
    clash = first.vertices & second.vertices
    if clash:
        raise VertexClash(f"shared vertices {sorted(clash)}")
    return SimplicialComplex(f | g for f in first._facets for g in second._facets)


def suspension(complex_, labels=None):
    w1, w2 = labels or complex_.fresh_labels(2)
    if {w1, w2} & complex_.vertices or w1 == w2:
        raise VertexClash(f"suspension labels {w1}, {w2} clash")
    return join(complex_, SimplicialComplex([{w1}, {w2}]))


def iterated_suspension(complex_, times):
    result = complex_
    for _ in range(times):
        result = suspension(result)
    return result


def one_point_suspension(complex_, vertex, labels=None):
    if vertex not in complex_.vertices:
        raise NotAVertex(f"{vertex} is not a vertex")
    w1, w2 = labels or complex_.fresh_labels(2)
    if {w1, w2} & complex_.vertices or w1 == w2:
        raise VertexClash(f"suspension labels {w1}, {w2} clash")
    pair = frozenset((w1, w2))
    facets = []
    for f in complex_._facets:
        if vertex in f:
            facets.append((f - {vertex}) | pair)
        else:
            facets.append(f | {w1})
            facets.append(f | {w2})
    return SimplicialComplex(facets)


def connected_sum(first, second, first_facet, second_facet, mapping):
    """Glue two equidimensional complexes along a pair of removed facets.

    ``mapping`` sends each vertex of ``first_facet`` to the vertex of
    ``second_facet`` it is identified with.
    """
    first_facet, second_facet = frozenset(first_facet), frozenset(second_facet)
    if first.dim != second.dim:
        raise MixedDimension("connected sum needs complexes of equal dimension")
    if first_facet not in first._facets:
        raise NotAFacet(f"{format_face(first_facet)} is not a facet of the first complex")
    if second_facet not in second._facets:
        raise NotAFacet(f"{format_face(second_facet)} is not a facet of the second complex")
    if set(mapping) != first_facet or set(mapping.values()) != second_facet:
        raise NonBijective("gluing map must be a bijection between the two facets")
    clash = first.vertices & second.vertices
    if clash:
        raise VertexClash(f"shared vertices {sorted(clash)}")
    facets = [frozenset(mapping.get(v, v) for v in f) for f in first._facets if f != first_facet]
    facets.extend(f for f in second._facets if f != second_facet)
    return SimplicialComplex(facets)


def hirsch_excess(diameter, vertex_count, dim_plus_one):
    """Excess l/(n-d) - 1 of a (d-1)-sphere with n vertices and diameter l."""
    return diameter / (vertex_count - dim_plus_one) - 1


def asymptotic_diameter_bound(n, d, d0, l0):
    """Lower bound on sphere diameters obtained by suspensions and connected sums
    from a (d0-1)-sphere on 2*d0 vertices of diameter l0."""
    return ((n - d) // d) * ((d // d0) * (l0 - d0) + d - 1)


# isomorphism

def _signatures(complex_):
    return {v: (complex_.star_count({v}), complex_.neighborhood_size({v})) for v in complex_.vertices}


def _incidence_graph(complex_, sides=None):
    sides = sides or {}
    signature = _signatures(complex_)
    graph = nx.Graph()
    for v, sig in signature.items():
        graph.add_node(("v", v), label=f"v|{sig}|{sides.get(v, '')}")
    for f in complex_._facets:
        sig = tuple(sorted((signature[v], sides.get(v, "")) for v in f))
        node = ("f", face_key(f))
        graph.add_node(node, label=f"f|{sig}")
        for v in f:
            graph.add_edge(node, ("v", v))
    return graph


def are_isomorphic(first, second, respect_bases=None):
    """Vertex bijection carrying the facets of ``first`` onto those of ``second``.

    ``respect_bases`` is an optional pair ``((plus1, minus1), (plus2, minus2))``;
    when given the bijection must map bases onto bases, possibly swapping them.
    Returns ``None`` when no such bijection exists.
    """
    if f_vector(first) != f_vector(second):
        return None
    if sorted(_signatures(first).values()) != sorted(_signatures(second).values()):
        return None
    if respect_bases is None:
        options = [({}, {})]
    else:
        (plus1, minus1), (plus2, minus2) = respect_bases
        left = {**{v: "A" for v in plus1}, **{v: "B" for v in minus1}}
        options = [
            (left, {**{v: "A" for v in plus2}, **{v: "B" for v in minus2}}),
            (left, {**{v: "B" for v in plus2}, **{v: "A" for v in minus2}}),
        ]
    for sides1, sides2 in options:
        g1 = _incidence_graph(first, sides1)
        g2 = _incidence_graph(second, sides2)
        if nx.weisfeiler_lehman_graph_hash(g1, node_attr="label") != nx.weisfeiler_lehman_graph_hash(
            g2, node_attr="label"
        ):
            continue
        matcher = isomorphism.GraphMatcher(
            g1, g2, node_match=lambda a, b: a["label"] == b["label"]
        )
        mapping = next(matcher.isomorphisms_iter(), None)
        if mapping is not None:
            return {a[1]: b[1] for a, b in mapping.items() if a[0] == "v"}
    return None


def brute_force_isomorphism(first, second):
    """Exhaustive search over vertex permutations; only for tiny complexes."""
    v1, v2 = sorted(first.vertices), sorted(second.vertices)
    if len(v1) != len(v2) or first.facet_count != second.facet_count:
        return None
    target = second.facets
    for image in permutations(v2):
        mapping = dict(zip(v1, image))
        if all(frozenset(mapping[v] for v in f) in target for f in first._facets):
            return mapping
    return None
