"""
Strong d-step construction: turns a (d-1)-prismatoid with n > 2d vertices
into a d-prismatoid with n+1 vertices and larger width, and iterates until
both bases are simplex boundaries, at which point adding the two base
simplices yields a sphere whose diameter is at least the final width.

The sphere covering a base is built combinatorially: two pull cones of the
base at different vertices are glued along the base whenever their only
common faces are the faces of the base.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from django.conf import settings

from .complex_core import (
    SimplicialComplex,
    build_complex,
    boundary_ridges,
    dual_diameter,
    dual_distance,
    dual_graph,
    euler_characteristic,
    is_closed_pseudomanifold,
    is_dual_connected,
    one_point_suspension,
    sort_faces,
)
from .exceptions import (
    ConstructionError,
    DegenerateCone,
    EulerMismatch,
    NoValidPair,
    NotAVertex,
    NotPseudomanifold,
    NotSimplexBases,
    PreconditionFailed,
    WidthRegression,
)
from .prismatoid import (
    MINUS,
    PLUS,
    base_facets,
    find_group_monotone_shelling,
    find_layer_monotone_shelling,
    validate_prismatoid,
)

logger = logging.getLogger(__name__)


def pull_cone(base, vertex):
    """Cone from ``vertex`` over the facets of ``base`` that avoid it."""
    if vertex not in base.vertices:
        raise NotAVertex(f"{vertex} is not a vertex of the base")
    if not is_closed_pseudomanifold(base):
        raise PreconditionFailed("pull cones need a closed pseudomanifold")
    facets = [f | {vertex} for f in base.facets if vertex not in f]
    if len(facets) <= 1:
        raise DegenerateCone(f"pulling {vertex} gives a single simplex")
    cone = SimplicialComplex(facets)
    if SimplicialComplex(boundary_ridges(cone)) != base:
        raise DegenerateCone(f"the cone at {vertex} does not have the base as boundary")
    return cone


@dataclass
class CoveringSphere:
    sphere: SimplicialComplex
    first: SimplicialComplex
    second: SimplicialComplex
    base: SimplicialComplex
    apexes: tuple


def covering_sphere(base):
    """A sphere of one more dimension on the same vertices, split by ``base`` into two balls."""
    if not is_closed_pseudomanifold(base):
        raise PreconditionFailed("the base must be a closed pseudomanifold")
    if len(base.vertices) < base.dim + 3:
        raise PreconditionFailed("a simplex boundary has no covering sphere without new vertices")
    base_faces = set(base.faces())
    expected_chi = 1 + (-1) ** (base.dim + 1)
    for v1, v2 in combinations(sorted(base.vertices), 2):
        try:
            first, second = pull_cone(base, v1), pull_cone(base, v2)
        except DegenerateCone:
            continue
        if set(first.faces()) & set(second.faces()) != base_faces:
            continue
        sphere = SimplicialComplex(list(first.facets) + list(second.facets))
        if (
            sphere.vertices == base.vertices
            and is_closed_pseudomanifold(sphere)
            and is_dual_connected(sphere)
            and euler_characteristic(sphere) == expected_chi
        ):
            logger.info("covering sphere from pull pair (%s, %s)", v1, v2)
            return CoveringSphere(sphere=sphere, first=first, second=second, base=base, apexes=(v1, v2))
    logger.warning("no pull pair covers the base on %d vertices", len(base.vertices))
    raise NoValidPair("no vertex pair yields a covering sphere")


@dataclass
class StepCertificate:
    step: int
    chosen: str
    apexes: tuple
    contraction: str
    labels: tuple
    before: tuple
    after: tuple
    facet_counts: tuple
    shelling: object = None

    @property
    def shelling_verdict(self):
        return None if self.shelling is None else self.shelling.verdict


def _suspension_labels(prismatoid, step):
    labels = (f"_s{step}1", f"_s{step}2")
    if set(labels) & prismatoid.complex.ground_set:
        labels = tuple(prismatoid.complex.fresh_labels(2, prefix="_s"))
    return labels


def slack(prismatoid, side):
    """Vertices of a base beyond those of a simplex boundary of its dimension."""
    return len(prismatoid.base(side)) - prismatoid.d


def dstep_step(prismatoid, step=1, shelling=None, node_limit=None):
    """One strong d-step: ``(new prismatoid, certificate)``.

    When ``shelling`` (a report for ``prismatoid``) is given, a shelling of
    the result is assembled from it and recorded in the certificate.
    """
    d = prismatoid.d
    n = prismatoid.vertex_count
    if n <= 2 * d:
        raise PreconditionFailed(f"need more than {2 * d} vertices, got {n}")
    plus_slack, minus_slack = slack(prismatoid, PLUS), slack(prismatoid, MINUS)
    if max(plus_slack, minus_slack) <= 0:
        raise PreconditionFailed("both bases are simplex boundaries")
    chosen = PLUS if plus_slack >= minus_slack else MINUS
    other = MINUS if chosen == PLUS else PLUS

    plus_facets, minus_facets = base_facets(prismatoid)
    chosen_base = build_complex(plus_facets if chosen == PLUS else minus_facets)
    other_base = build_complex(minus_facets if chosen == PLUS else plus_facets)
    cover = covering_sphere(chosen_base)
    v1, v2 = _suspension_labels(prismatoid, step)
    v = min(prismatoid.base(other))

    facets = prismatoid.complex.facets
    lifted = [f | {v1} for f in facets] + [f | {v2} for f in facets]
    lifted += [g | {v1} for g in cover.first.facets] + [g | {v2} for g in cover.second.facets]
    if len(lifted) != 2 * len(facets) + cover.sphere.facet_count:
        raise ConstructionError("lifted complex has the wrong number of facets")

    star = [f for f in facets if v in f]
    merged = [f for f in lifted if v not in f]
    merged += [(f - {v}) | {v1, v2} for f in star]
    if len(merged) != len(lifted) - len(star):
        raise ConstructionError("contracted complex has the wrong number of facets")

    new_chosen = set(prismatoid.base(chosen))
    new_other = (set(prismatoid.base(other)) - {v}) | {v1, v2}
    complex_ = SimplicialComplex(merged)
    if chosen == PLUS:
        result = validate_prismatoid(complex_, new_chosen, new_other)
    else:
        result = validate_prismatoid(complex_, new_other, new_chosen)

    new_plus, new_minus = base_facets(result)
    if build_complex(new_plus if chosen == PLUS else new_minus) != cover.sphere:
        raise ConstructionError("the covered base is not the covering sphere")
    if build_complex(new_minus if chosen == PLUS else new_plus) != one_point_suspension(
        other_base, v, labels=(v1, v2)
    ):
        raise ConstructionError("the other base is not the one-point suspension")
    if result.vertex_count != n + 1:
        raise ConstructionError(f"expected {n + 1} vertices, got {result.vertex_count}")
    if result.width < prismatoid.width + 1:
        raise WidthRegression(f"width went from {prismatoid.width} to {result.width}")

    certificate = StepCertificate(
        step=step,
        chosen=chosen,
        apexes=cover.apexes,
        contraction=v,
        labels=(v1, v2),
        before=(n, d - 1, prismatoid.width),
        after=(result.vertex_count, result.d - 1, result.width),
        facet_counts=(len(facets), len(lifted), len(merged)),
    )
    if shelling is not None:
        certificate.shelling = transfer_shelling(result, cover, shelling, chosen, v, (v1, v2), node_limit)
    logger.info(
        "step %d: %s base covered, %d -> %d vertices, width %s -> %s",
        step, chosen, n, result.vertex_count, prismatoid.width, result.width,
    )
    return result, certificate


def transfer_shelling(result, cover, previous, chosen, contraction, labels, node_limit=None):
    """Shelling of the new prismatoid: both cone halves, then the old order doubled."""
    v1, v2 = labels
    order = previous.order if previous.direction == chosen else previous.order[::-1]
    groups = [
        sort_faces(g | {v1} for g in cover.first.facets),
        sort_faces(g | {v2} for g in cover.second.facets),
    ]
    for f in order:
        if contraction in f:
            groups.append([(f - {contraction}) | {v1, v2}])
        else:
            groups.append([f | {v1}, f | {v2}])
    report = find_group_monotone_shelling(result, groups, chosen, node_limit)
    if report is None:
        logger.warning("no shelling found following the transferred order")
    return report


@dataclass
class SphereCertificate:
    sphere: SimplicialComplex
    dim: int
    vertex_count: int
    plus_facet: frozenset
    minus_facet: frozenset
    distance: float
    diameter: float = None
    steps: list = field(default_factory=list)
    widths: list = field(default_factory=list)

    @property
    def facet_size(self):
        return self.dim + 1

    @property
    def non_hirsch(self):
        return self.distance > self.vertex_count - self.facet_size

    @property
    def excess(self):
        return Fraction(self.distance, self.vertex_count - self.facet_size) - 1


def build_nonhirsch_sphere(prismatoid, shell=False, measure_diameter=True, node_limit=None):
    """Iterate strong d-steps and close the terminal prismatoid into a sphere."""
    current = prismatoid
    widths = [current.width]
    steps = []
    shelling = None
    if shell:
        if node_limit is None:
            node_limit = settings.WORKBENCH["SHELLING_NODE_LIMIT"]
        shelling = find_layer_monotone_shelling(current, node_limit)
    rounds = current.vertex_count - 2 * current.d
    for step in range(1, rounds + 1):
        current, certificate = dstep_step(current, step, shelling, node_limit)
        shelling = certificate.shelling if shell else None
        steps.append(certificate)
        widths.append(current.width)

    if len(current.base_plus) != current.d or len(current.base_minus) != current.d:
        raise NotSimplexBases("the terminal prismatoid does not have simplex bases")
    plus_facet, minus_facet = frozenset(current.base_plus), frozenset(current.base_minus)
    sphere = current.complex.copy()
    sphere.add_facet(plus_facet)
    sphere.add_facet(minus_facet)
    if not is_closed_pseudomanifold(sphere):
        raise NotPseudomanifold("the closed-up complex has a ridge outside exactly two facets")
    expected_chi = 1 + (-1) ** sphere.dim
    if euler_characteristic(sphere) != expected_chi:
        raise EulerMismatch(f"Euler characteristic {euler_characteristic(sphere)}, expected {expected_chi}")

    graph = dual_graph(sphere)
    certificate = SphereCertificate(
        sphere=sphere,
        dim=sphere.dim,
        vertex_count=len(sphere.vertices),
        plus_facet=plus_facet,
        minus_facet=minus_facet,
        distance=dual_distance(sphere, [plus_facet], [minus_facet], graph=graph),
        diameter=dual_diameter(sphere, graph=graph) if measure_diameter else None,
        steps=steps,
        widths=widths,
    )
    logger.info(
        "sphere: N=%d D=%d distance=%s diameter=%s non_hirsch=%s",
        certificate.vertex_count, certificate.facet_size, certificate.distance,
        certificate.diameter, certificate.non_hirsch,
    )
    return certificate
