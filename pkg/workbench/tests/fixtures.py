"""Shared complexes, corpus access and independent oracles for the tests."""
import math
from functools import lru_cache

import networkx as nx
from django.conf import settings

from workbench.complex_core import build_complex, dual_graph, face
from workbench.flips import Flip
from workbench.formats import parse_file, read_text
from workbench.prismatoid import MINUS, PLUS, PATH_MASK, validate_prismatoid

CORPUS = (1039, 1963, 2669, 3513)

ANN6_FACETS = ["12a", "2ab", "23b", "3bc", "31c", "1ca"]
PLUS_BASE = set("123")
MINUS_BASE = set("abc")

ANN6_TEXT = """PRISMATOID v1
# six-vertex annulus
dim 2
base+ 1 2 3
base- a b c
facet 1 2 a
facet 2 a b
facet 2 3 b
facet 3 b c
facet 3 1 c
facet 1 c a
"""


def faces_of(*words):
    """``faces_of("12a", "2ab")`` with one-character tokens."""
    return [face(word) for word in words]


def ann6_complex():
    return build_complex(faces_of(*ANN6_FACETS))


def ann6():
    return validate_prismatoid(ann6_complex(), PLUS_BASE, MINUS_BASE)


def tetrahedron_boundary():
    return build_complex(faces_of("123", "124", "134", "234"))


def triangle_boundary(a="1", b="2", c="3"):
    return build_complex([{a, b}, {b, c}, {c, a}])


def square():
    return build_complex(faces_of("12", "23", "34", "41"))


def corpus_path(number):
    return settings.WORKBENCH["DATA_DIR"] / f"p{number}.prism"


@lru_cache(maxsize=None)
def _corpus(number):
    return parse_file(corpus_path(number))


def corpus(number):
    """A private copy of bundled prismatoid ``number``."""
    return _corpus(number).copy()


def corpus_order(number):
    return read_text(corpus_path(number).read_text()).facets


def bfs_oracle(prismatoid):
    """Distance and shortest-path labels recomputed with networkx from scratch."""
    d = prismatoid.d
    facets = prismatoid.complex.facets
    sources = [f for f in facets if len(f & prismatoid.base_plus) == d - 1]
    graph = dual_graph(prismatoid.complex)
    lengths = nx.multi_source_dijkstra_path_length(graph, set(sources)) if sources else {}
    distance = {f: lengths.get(f, math.inf) for f in facets}
    paths = {}
    for f in sorted(facets, key=lambda g: distance[g]):
        if distance[f] == 0:
            paths[f] = 1
        elif distance[f] == math.inf:
            paths[f] = 0
        else:
            paths[f] = sum(paths[g] for g in graph[f] if distance[g] == distance[f] - 1) & PATH_MASK
    return distance, paths


def oracle_width(prismatoid):
    distance, _ = bfs_oracle(prismatoid)
    d = prismatoid.d
    sinks = [f for f in prismatoid.facets if len(f & prismatoid.base_minus) == d - 1]
    return min((distance[f] for f in sinks), default=math.inf) + 2


def brute_force_flips(prismatoid, fresh):
    """Every flip (f, l, v) allowed by the definition, found face by face.

    For a face ``f`` the link must be ``∂l * v``, so ``l ∪ {v}`` is the
    vertex set of the link; each choice of ``v`` in it (or none) is tried.
    """
    complex_ = prismatoid.complex
    d = prismatoid.d
    opposite = {PLUS: prismatoid.base_minus, MINUS: prismatoid.base_plus}
    found = set()
    for f in list(complex_.faces()):
        if not f:
            continue
        lk = {g - f for g in complex_.facets if f <= g}
        lk_vertices = frozenset().union(*lk)
        if len(lk) == 1 and len(f) == d - 1:
            (v,) = lk_vertices
            side = prismatoid.side_of(v)
            if f <= opposite[side]:
                found.add(Flip(f=f, l=frozenset({fresh}), v=v))
            continue
        for v in [None, *sorted(lk_vertices)]:
            l = lk_vertices - {v}
            if not l or l in complex_:
                continue
            if v is None:
                if len(f) + len(l) != d + 1:
                    continue
                if not (l & prismatoid.base_plus and l & prismatoid.base_minus):
                    continue
                boundary_of_l = {l - {x} for x in l}
            else:
                if len(f) + len(l) != d:
                    continue
                if not (f | l) <= opposite[prismatoid.side_of(v)]:
                    continue
                boundary_of_l = {(l - {x}) | {v} for x in l}
            if lk == boundary_of_l:
                found.add(Flip(f=f, l=l, v=v))
    return found
