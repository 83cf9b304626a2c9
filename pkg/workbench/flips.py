"""
Flips on topological prismatoids.

A flip ``(f, l, v)`` replaces the star of ``f``, which must equal
``f * ∂l * v``, by ``l * ∂f * v``. Interior flips have no ``v``; boundary
flips carry the vertex ``v`` of the other base and may insert (``l`` is a
new vertex) or delete (``f`` is a single vertex) a vertex. Every flip is
determined by its support ``f ∪ l ∪ v``, which is the neighborhood of a
ridge, so sampling distinct ridge neighborhoods uniformly samples flips
uniformly.
"""
import logging
from collections import Counter
from dataclasses import dataclass
from functools import reduce

from django.conf import settings

from .complex_core import SimplicialComplex, face_key, format_face
from .exceptions import BadSupportSize, InvalidFlip, NoValidFlips
from .prismatoid import MINUS, PLUS

logger = logging.getLogger(__name__)

INTERIOR = "interior"
BOUNDARY = "boundary"


def _tokens(f):
    return ",".join(face_key(f))


@dataclass(frozen=True)
class Flip:
    f: frozenset
    l: frozenset
    v: str = None

    @property
    def kind(self):
        return INTERIOR if self.v is None else BOUNDARY

    @property
    def support(self):
        extra = {self.v} if self.v is not None else set()
        return self.f | self.l | extra

    def inverse(self):
        return Flip(f=self.l, l=self.f, v=self.v)

    def trace_line(self):
        return (
            f"flip {self.kind} f={_tokens(self.f)} l={_tokens(self.l)} "
            f"v={self.v if self.v is not None else '-'} support={_tokens(self.support)}"
        )

    def __str__(self):
        v = f" v={self.v}" if self.v is not None else ""
        return f"{self.kind} f={format_face(self.f)} l={format_face(self.l)}{v}"


def inserted_vertex(prismatoid, flip):
    """The vertex a boundary flip adds, or None."""
    if flip.v is None or len(flip.l) != 1:
        return None
    (w,) = flip.l
    return None if w in prismatoid.complex.vertices else w


def removed_vertex(prismatoid, flip):
    """The vertex a boundary flip deletes, or None."""
    if flip.v is None or len(flip.f) != 1:
        return None
    (w,) = flip.f
    return w if prismatoid.complex.star_count(flip.f) == len(flip.l) else None


class RidgeNeighborhoodIndex:
    """Ridge -> neighborhood map plus the pool of distinct neighborhoods."""

    def __init__(self, complex_=None):
        self.ridges = {}
        self._pool = []
        self._position = {}
        self._count = Counter()
        if complex_ is not None:
            for ridge in sorted(complex_.faces(complex_.dim), key=face_key):
                self._add(ridge, complex_.neighborhood(ridge))

    def copy(self):
        clone = RidgeNeighborhoodIndex()
        clone.ridges = dict(self.ridges)
        clone._pool = list(self._pool)
        clone._position = dict(self._position)
        clone._count = Counter(self._count)
        return clone

    def __eq__(self, other):
        if not isinstance(other, RidgeNeighborhoodIndex):
            return NotImplemented
        return self.ridges == other.ridges and set(self._pool) == set(other._pool)

    __hash__ = None

    def __len__(self):
        return len(self._pool)

    def _add(self, ridge, nb):
        self.ridges[ridge] = nb
        self._count[nb] += 1
        if self._count[nb] == 1:
            self._position[nb] = len(self._pool)
            self._pool.append(nb)

    def _drop(self, ridge):
        nb = self.ridges.pop(ridge)
        self._count[nb] -= 1
        if self._count[nb]:
            return
        del self._count[nb]
        index = self._position.pop(nb)
        last = self._pool.pop()
        if last != nb:
            self._pool[index] = last
            self._position[last] = index

    def refresh(self, complex_, ridges):
        # pool slots must not depend on set iteration order
        for ridge in sorted(ridges, key=face_key):
            if ridge in self.ridges:
                self._drop(ridge)
            if ridge in complex_:
                self._add(ridge, complex_.neighborhood(ridge))

    def neighborhoods(self):
        return sorted(self._pool, key=face_key)

    def __contains__(self, nb):
        return nb in self._count

    def sample(self, rng):
        return self._pool[rng.randrange(len(self._pool))]


def ridge_index(prismatoid):
    """The prismatoid's ridge index, built on first use."""
    if prismatoid.ridge_index is None:
        prismatoid.ridge_index = RidgeNeighborhoodIndex(prismatoid.complex)
    return prismatoid.ridge_index


def _fresh_token(prismatoid):
    avoid = prismatoid.complex.ground_set | prismatoid.base_plus | prismatoid.base_minus
    return prismatoid.fresh.peek(avoid)


def derive_flip_from_support(prismatoid, support, fresh=None):
    """Recover the flip supported on ``support``, or None if no facet lies inside it."""
    u = frozenset(support)
    d = prismatoid.d
    complex_ = prismatoid.complex
    expected = d if fresh is not None else d + 1
    if len(u) != expected:
        raise BadSupportSize(f"support {format_face(u)} has {len(u)} vertices, expected {expected}")
    if fresh is not None:
        inside = [u] if complex_.is_facet(u) else []
    else:
        inside = [u - {x} for x in u if complex_.is_facet(u - {x})]
    if not inside:
        return None
    core = reduce(frozenset.intersection, inside)
    plus, minus = u & prismatoid.base_plus, u & prismatoid.base_minus
    v = None
    if len(plus) == 1 and len(minus) != 1:
        (v,) = plus
    elif len(minus) == 1 and len(plus) != 1:
        (v,) = minus
    if v is not None and v not in core:
        v = None
    f = core - {v} if v is not None else core
    l = frozenset({fresh}) if fresh is not None else u - core
    return Flip(f=f, l=l, v=v)


def is_valid_flip(prismatoid, flip):
    """Validity of ``flip`` on ``prismatoid`` as ``(ok, reason)``."""
    complex_ = prismatoid.complex
    d = prismatoid.d
    f, l, v = flip.f, flip.l, flip.v
    new_vertex = inserted_vertex(prismatoid, flip)
    extra = frozenset({v}) if v is not None else frozenset()
    if f & l or (v is not None and v in f | l) or not f or not l:
        return False, "f, l and v must be nonempty and disjoint"
    index = ridge_index(prismatoid)
    if new_vertex is not None:
        if new_vertex in prismatoid.base_plus | prismatoid.base_minus:
            return False, "inserted vertex already belongs to a base"
        nb_support = f | extra
        nb_size = d
    else:
        nb_support = flip.support
        nb_size = d + 1
    if nb_support not in index:
        return False, "support is not the neighborhood of a ridge"
    if complex_.neighborhood_size(f) != nb_size or complex_.neighborhood(f) != nb_support:
        return False, "neighborhood of f has the wrong size"
    if l in complex_:
        return False, "l is a face"
    if f not in complex_:
        return False, "f is not a face"
    star = {f | (l - {x}) | extra for x in l}
    if set(complex_.facets_containing(f)) != star:
        return False, "link of f is not the boundary of l joined with v"
    if v is None:
        if len(f) + len(l) != d + 1:
            return False, "interior flips need |f| + |l| = d + 1"
        if not (l & prismatoid.base_plus and l & prismatoid.base_minus):
            return False, "l must meet both bases"
    else:
        if len(f) + len(l) != d:
            return False, "boundary flips need |f| + |l| = d"
        side = prismatoid.side_of(v)
        if side is None:
            return False, "v is not a vertex"
        opposite = prismatoid.base(MINUS if side == PLUS else PLUS)
        if not (f | l) - {new_vertex} <= opposite:
            return False, "f and l must lie in the base opposite to v"
    return True, ""


def apply_flip(prismatoid, flip, check=None, validate=True):
    """Apply ``flip`` in place and return its inverse.

    ``validate=False`` skips the validity test for flips that come straight
    from :func:`sample_flip` or are the inverse of one just applied.
    """
    if validate:
        ok, reason = is_valid_flip(prismatoid, flip)
        if not ok:
            raise InvalidFlip(f"{flip}: {reason}")
    removed, inserted = _rewrite(prismatoid, flip)
    prismatoid.update_width_labels(removed, inserted)
    logger.debug("applied %s", flip)
    _check(prismatoid, check)
    return flip.inverse()


def revert_flip(prismatoid, inverse, snapshot, check=None):
    """Undo the flip that returned ``inverse``, restoring the labels held in ``snapshot``.

    ``snapshot`` must come from ``prismatoid.label_snapshot()`` taken right
    before the flip was applied.
    """
    _rewrite(prismatoid, inverse)
    prismatoid.restore_labels(snapshot)
    logger.debug("reverted with %s", inverse)
    _check(prismatoid, check)


def _check(prismatoid, check):
    if check is None:
        check = settings.WORKBENCH["CHECK_INVARIANTS"]
    if check:
        check_flip_invariants(prismatoid)


def _rewrite(prismatoid, flip):
    """Swap the facets, bases and ridge index; returns ``(removed, inserted)`` facets."""
    complex_ = prismatoid.complex
    new_vertex = inserted_vertex(prismatoid, flip)
    old_vertex = removed_vertex(prismatoid, flip)
    extra = frozenset({flip.v}) if flip.v is not None else frozenset()
    removed = [flip.f | (flip.l - {x}) | extra for x in face_key(flip.l)]
    inserted = [flip.l | (flip.f - {y}) | extra for y in face_key(flip.f)]
    for facet in removed:
        complex_.remove_facet(facet)
    for facet in inserted:
        complex_.add_facet(facet)

    if new_vertex is not None:
        side = prismatoid.side_of(flip.v)
        prismatoid.base(MINUS if side == PLUS else PLUS).add(new_vertex)
        prismatoid.fresh.claim(new_vertex)
        complex_.reserve.discard(new_vertex)
    if old_vertex is not None:
        prismatoid.base_plus.discard(old_vertex)
        prismatoid.base_minus.discard(old_vertex)
        if prismatoid.fresh.owns(old_vertex):
            prismatoid.fresh.release(old_vertex)
        else:
            complex_.reserve.add(old_vertex)

    touched = set()
    for facet in removed + inserted:
        touched.update(facet - {x} for x in facet)
    ridge_index(prismatoid).refresh(complex_, touched)
    return removed, inserted


def check_flip_invariants(prismatoid):
    """Compare incrementally maintained structures with a rebuild."""
    rebuilt = SimplicialComplex(prismatoid.complex.facets)
    if rebuilt != prismatoid.complex:
        raise AssertionError("face map differs from a rebuild")
    if RidgeNeighborhoodIndex(rebuilt) != ridge_index(prismatoid):
        raise AssertionError("ridge index differs from a rebuild")
    if not prismatoid.labels_match_bfs():
        raise AssertionError("width labels differ from breadth-first search")


def insertion_flips(prismatoid):
    """The vertex-inserting flips, one per facet incident to a base."""
    token = _fresh_token(prismatoid)
    result = []
    for facet in sorted(prismatoid.sources | prismatoid.sinks, key=face_key):
        flip = derive_flip_from_support(prismatoid, facet, fresh=token)
        if flip is not None and is_valid_flip(prismatoid, flip)[0]:
            result.append(flip)
    return result


def enumerate_flips(prismatoid):
    """All valid flips, one per flip-defining ridge neighborhood."""
    d = prismatoid.d
    token = _fresh_token(prismatoid)
    result = []
    for nb in ridge_index(prismatoid).neighborhoods():
        if len(nb) == d + 1:
            flip = derive_flip_from_support(prismatoid, nb)
        elif len(nb) == d:
            flip = derive_flip_from_support(prismatoid, nb, fresh=token)
        else:
            continue
        if flip is not None and is_valid_flip(prismatoid, flip)[0]:
            result.append(flip)
    return result


def sample_flip(prismatoid, rng, retry_cap=None):
    """Uniformly random valid flip by rejection sampling over ridge neighborhoods."""
    if retry_cap is None:
        retry_cap = settings.WORKBENCH["SAMPLE_RETRY_CAP"]
    index = ridge_index(prismatoid)
    d = prismatoid.d
    for _ in range(retry_cap):
        nb = index.sample(rng)
        fresh = _fresh_token(prismatoid) if len(nb) == d else None
        flip = derive_flip_from_support(prismatoid, nb, fresh=fresh)
        if flip is not None and is_valid_flip(prismatoid, flip)[0]:
            return flip
    flips = enumerate_flips(prismatoid)
    if not flips:
        raise NoValidFlips("no valid flip exists")
    logger.debug("rejection sampling exhausted %d draws; picked from enumeration", retry_cap)
    return rng.choice(flips)
