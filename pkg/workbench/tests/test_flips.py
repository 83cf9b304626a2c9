import math
import random
from collections import Counter
from unittest import skipUnless

from django.conf import settings
from django.test import SimpleTestCase, tag

from workbench.complex_core import build_complex, face
from workbench.exceptions import BadSupportSize, InvalidFlip
from workbench.flips import (
    BOUNDARY,
    INTERIOR,
    Flip,
    RidgeNeighborhoodIndex,
    apply_flip,
    check_flip_invariants,
    derive_flip_from_support,
    enumerate_flips,
    insertion_flips,
    is_valid_flip,
    ridge_index,
    sample_flip,
)
from workbench.prismatoid import validate_prismatoid

from .fixtures import CORPUS, ann6, brute_force_flips, corpus, corpus_order, faces_of


def fresh_token(prismatoid):
    avoid = prismatoid.complex.ground_set | prismatoid.base_plus | prismatoid.base_minus
    return prismatoid.fresh.peek(avoid)


class DeriveTest(SimpleTestCase):
    def test_interior_support(self):
        flip = derive_flip_from_support(ann6(), set("12ab"))
        self.assertEqual(flip, Flip(f=frozenset("2a"), l=frozenset("1b")))
        self.assertEqual(flip.kind, INTERIOR)

    def test_insertion_support(self):
        flip = derive_flip_from_support(ann6(), set("12a"), fresh="w")
        self.assertEqual(flip, Flip(f=frozenset("12"), l=frozenset("w"), v="a"))
        self.assertEqual(flip.kind, BOUNDARY)

    def test_support_without_facet(self):
        self.assertIsNone(derive_flip_from_support(ann6(), set("12bc")))

    def test_bad_size(self):
        with self.assertRaises(BadSupportSize):
            derive_flip_from_support(ann6(), set("12"))
        with self.assertRaises(BadSupportSize):
            derive_flip_from_support(ann6(), set("12ab"), fresh="w")


class ValidityTest(SimpleTestCase):
    def test_valid_interior(self):
        self.assertEqual(is_valid_flip(ann6(), Flip(f=frozenset("2a"), l=frozenset("1b"))), (True, ""))

    def test_overlapping_parts(self):
        ok, reason = is_valid_flip(ann6(), Flip(f=frozenset("12"), l=frozenset("2b")))
        self.assertFalse(ok)
        self.assertIn("disjoint", reason)

    def test_support_must_be_a_ridge_neighborhood(self):
        ok, reason = is_valid_flip(ann6(), Flip(f=frozenset("12"), l=frozenset("3b")))
        self.assertFalse(ok)
        self.assertIn("neighborhood", reason)

    def test_invalid_flip_raises(self):
        prismatoid = ann6()
        with self.assertRaises(InvalidFlip):
            apply_flip(prismatoid, Flip(f=frozenset("12"), l=frozenset("3b")))
        self.assertEqual(prismatoid, ann6())


class ApplyTest(SimpleTestCase):
    def test_interior_flip(self):
        prismatoid = ann6()
        inverse = apply_flip(prismatoid, Flip(f=frozenset("2a"), l=frozenset("1b")), check=True)
        self.assertEqual(prismatoid.facets, set(faces_of("12b", "1ab", "23b", "3bc", "31c", "1ca")))
        self.assertEqual(inverse, Flip(f=frozenset("1b"), l=frozenset("2a")))
        apply_flip(prismatoid, inverse, check=True)
        self.assertEqual(prismatoid, ann6())

    def test_insertion_then_deletion(self):
        prismatoid = ann6()
        insertion = derive_flip_from_support(prismatoid, set("12a"), fresh="w")
        apply_flip(prismatoid, insertion, check=True)
        self.assertEqual(prismatoid.facets, set(faces_of("1wa", "2wa", "2ab", "23b", "3bc", "31c", "1ca")))
        self.assertIn("w", prismatoid.base_plus)
        self.assertEqual(prismatoid.width, 3)

        deletion = derive_flip_from_support(prismatoid, set("w12a"))
        self.assertEqual(deletion, insertion.inverse())
        apply_flip(prismatoid, deletion, check=True)
        self.assertEqual(prismatoid, ann6())
        self.assertNotIn("w", prismatoid.complex.vertices)

    def test_checks_are_on_by_default_in_tests(self):
        self.assertTrue(settings.WORKBENCH["CHECK_INVARIANTS"])
        prismatoid = ann6()
        # 3bc is not recounted by this flip, so only the oracle notices
        prismatoid.paths[face("3bc")] = 99
        with self.assertRaisesMessage(AssertionError, "breadth-first"):
            apply_flip(prismatoid, Flip(f=frozenset("2a"), l=frozenset("1b")))

    def test_random_walk_keeps_invariants(self):
        for number in CORPUS:
            prismatoid = corpus(number)
            rng = random.Random(number)
            for step in range(1, 301):
                before = prismatoid.copy()
                inverse = apply_flip(prismatoid, sample_flip(prismatoid, rng))
                check_flip_invariants(prismatoid)
                if step % 25 == 0:
                    undone = prismatoid.copy()
                    apply_flip(undone, inverse)
                    self.assertEqual(undone, before)
                if step % 50 == 0:
                    validate_prismatoid(
                        prismatoid.complex.copy(), prismatoid.base_plus, prismatoid.base_minus
                    )

    def test_inserted_tokens_are_fresh(self):
        prismatoid = corpus(1963)
        rng = random.Random(3)
        for _ in range(20):
            flip = rng.choice(insertion_flips(prismatoid))
            (token,) = flip.l
            self.assertNotIn(token, prismatoid.complex.ground_set)
            apply_flip(prismatoid, flip)
            self.assertIn(token, prismatoid.complex.vertices)
        self.assertEqual(prismatoid.vertex_count, 34)


class EnumerateTest(SimpleTestCase):
    def test_annulus(self):
        prismatoid = ann6()
        flips = enumerate_flips(prismatoid)
        self.assertEqual(len(flips), 12)
        self.assertEqual(len(ridge_index(prismatoid)), 12)
        interior = {f.support for f in flips if f.kind == INTERIOR}
        self.assertEqual(interior, set(faces_of("12ab", "23ab", "23bc", "13bc", "13ac", "12ac")))
        self.assertEqual(len(insertion_flips(prismatoid)), 6)

    def test_matches_brute_force(self):
        for prismatoid in [ann6()] + [corpus(number) for number in CORPUS]:
            expected = brute_force_flips(prismatoid, fresh_token(prismatoid))
            self.assertEqual(set(enumerate_flips(prismatoid)), expected)

    def test_matches_brute_force_after_walk(self):
        prismatoid = corpus(2669)
        rng = random.Random(11)
        for _ in range(100):
            apply_flip(prismatoid, sample_flip(prismatoid, rng))
        expected = brute_force_flips(prismatoid, fresh_token(prismatoid))
        self.assertEqual(set(enumerate_flips(prismatoid)), expected)


class SampleTest(SimpleTestCase):
    def test_every_flip_is_drawn(self):
        prismatoid = ann6()
        rng = random.Random(2024)
        counts = Counter(sample_flip(prismatoid, rng) for _ in range(600))
        self.assertEqual(set(counts), set(enumerate_flips(prismatoid)))

    def test_seeded_sampling_is_deterministic(self):
        first, second = corpus(1039), corpus(1039)
        rng1, rng2 = random.Random(5), random.Random(5)
        for _ in range(50):
            flip = sample_flip(first, rng1)
            self.assertEqual(flip, sample_flip(second, rng2))
            apply_flip(first, flip)
            apply_flip(second, flip)
        self.assertEqual(first, second)


class RidgeIndexTest(SimpleTestCase):
    def draws(self, index, count=40):
        rng = random.Random(0)
        return [index.sample(rng) for _ in range(count)]

    def test_pool_ignores_facet_insertion_order(self):
        order = corpus_order(1963)
        first = RidgeNeighborhoodIndex(build_complex(order))
        second = RidgeNeighborhoodIndex(build_complex(order[::-1]))
        self.assertEqual(self.draws(first), self.draws(second))

    def test_refresh_ignores_ridge_order(self):
        start = corpus(1963)
        changed = start.copy()
        apply_flip(changed, sample_flip(changed, random.Random(4)))
        touched = sorted({f - {x} for f in start.facets ^ changed.facets for x in f}, key=sorted)
        forward = ridge_index(start).copy()
        forward.refresh(changed.complex, touched)
        backward = ridge_index(start).copy()
        backward.refresh(changed.complex, touched[::-1])
        self.assertEqual(self.draws(forward), self.draws(backward))
        self.assertEqual(self.draws(forward), self.draws(ridge_index(changed)))


@tag("slow")
@skipUnless(settings.WORKBENCH["SLOW_TESTS"], "set WORKBENCH_SLOW_TESTS=1")
class FlipStatisticsTest(SimpleTestCase):
    def test_uniform_on_annulus(self):
        prismatoid = ann6()
        flips = enumerate_flips(prismatoid)
        rng = random.Random(2024)
        draws = 100_000
        counts = Counter(sample_flip(prismatoid, rng) for _ in range(draws))
        self.assertEqual(set(counts), set(flips))
        p = 1 / len(flips)
        sigma = math.sqrt(draws * p * (1 - p))
        for flip in flips:
            self.assertLess(abs(counts[flip] - draws * p), 3 * sigma, str(flip))

    def test_involution_on_every_table(self):
        for number in CORPUS:
            prismatoid = corpus(number)
            rng = random.Random(number)
            for trial in range(1000):
                before = prismatoid.copy()
                flip = sample_flip(prismatoid, rng)
                apply_flip(prismatoid, apply_flip(prismatoid, flip))
                self.assertEqual(prismatoid, before, f"#{number} trial {trial}: {flip}")
                apply_flip(prismatoid, flip)


class TraceLineTest(SimpleTestCase):
    def test_interior(self):
        flip = Flip(f=frozenset("2a"), l=frozenset("1b"))
        self.assertEqual(flip.trace_line(), "flip interior f=2,a l=1,b v=- support=1,2,a,b")

    def test_boundary(self):
        flip = Flip(f=frozenset("12"), l=frozenset({"_x0"}), v="a")
        self.assertEqual(flip.trace_line(), "flip boundary f=1,2 l=_x0 v=a support=1,2,_x0,a")
