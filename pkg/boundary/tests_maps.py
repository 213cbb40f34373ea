from collections import Counter
from fractions import Fraction
import random

from django.test import SimpleTestCase

from boundary.domain import BoundaryPrefix
from boundary.exceptions import IncompatiblePair, InsufficientDepth
from boundary.services.boundary_map_service import BoundaryMapService
from boundary.services.boundary_service import BoundaryService
from free_group.domain import ReducedWord, alphabet
from free_group.exceptions import InvalidParameter
from free_group.services.sampling_service import SamplingService
from free_group.services.word_service import WordService


class KMapTests(SimpleTestCase):
    def test_bijection_on_reduced_triples(self):
        for rank in (2, 3):
            letters = alphabet(rank)
            for a in letters:
                for b in letters:
                    middles = [s for s in letters if s != a.inverse() and s != b.inverse()]
                    images = [BoundaryMapService.k_map(a, s, b, rank) for s in middles]
                    self.assertEqual(sorted(images), sorted(middles))
                    for s, t in zip(middles, images):
                        self.assertNotIn(t, (a.inverse(), s, b.inverse()))
                        self.assertEqual(BoundaryMapService.k_map(a, t, b, rank, step=-1), s)


class OmegaTests(SimpleTestCase):
    def test_changes_exactly_coordinate_n(self):
        rng = random.Random(30)
        for _ in range(200):
            n = rng.randint(6, 10)
            p = BoundaryPrefix(SamplingService.random_word(rng, 2, n + 4))
            q = BoundaryMapService.omega(p, n)
            diff = [i for i in range(1, p.depth + 1) if p.coordinate(i) != q.coordinate(i)]
            self.assertEqual(diff, [n])
            self.assertEqual(BoundaryService.boundary_metric(p, q), Fraction(1, n))
            self.assertEqual(BoundaryMapService.omega_inverse(q, n), p)

    def test_permutes_prefixes(self):
        prefixes = list(BoundaryService.depth_prefixes(2, 7))
        images = [BoundaryMapService.omega(p, 6) for p in prefixes]
        self.assertEqual(set(images), set(prefixes))

    def test_witness(self):
        rng = random.Random(31)
        for _ in range(100):
            n = rng.randint(6, 10)
            p = BoundaryPrefix(SamplingService.random_word(rng, 2, n + 4))
            g = BoundaryMapService.omega_witness(p, n)
            self.assertEqual(BoundaryService.boundary_action(g, p)[0], BoundaryMapService.omega(p, n))
            self.assertEqual(BoundaryService.radon_nikodym(g, p), 1)

    def test_small_index_rejected(self):
        p = BoundaryPrefix(SamplingService.random_word(random.Random(1), 2, 9))
        with self.assertRaises(InvalidParameter):
            BoundaryMapService.boundary_map(p, 5, 'omega')

    def test_depth_required(self):
        p = BoundaryPrefix(SamplingService.random_word(random.Random(2), 2, 6))
        with self.assertRaises(InsufficientDepth):
            BoundaryMapService.omega(p, 6)


class PsiTests(SimpleTestCase):
    def test_distance_to_shifted_omega(self):
        # first disagreement sits at coordinate n-1
        rng = random.Random(32)
        for _ in range(200):
            n = rng.randint(6, 10)
            p = BoundaryPrefix(SamplingService.random_word(rng, 2, n + 4))
            psi_omega = BoundaryMapService.boundary_map(p, n, 'psi_omega')
            shifted = BoundaryService.shift(BoundaryService.shift(BoundaryMapService.omega(p, n)))
            self.assertEqual(psi_omega.depth, p.depth)
            self.assertEqual(BoundaryService.boundary_metric(psi_omega, shifted), Fraction(1, n - 1))

    def test_shift_witness(self):
        rng = random.Random(33)
        for _ in range(200):
            n = rng.randint(6, 10)
            p = BoundaryPrefix(SamplingService.random_word(rng, 2, n + 4))
            g = BoundaryMapService.shift_witness(p, n)
            omega = BoundaryMapService.omega(p, n)
            self.assertEqual(BoundaryService.boundary_action(g, omega)[0], BoundaryMapService.psi_omega(p, n))
            shifted = BoundaryService.shift(BoundaryService.shift(omega))
            self.assertEqual(BoundaryService.boundary_action(g, p)[0], shifted)

    def test_psi_composes_with_omega(self):
        rng = random.Random(34)
        for _ in range(100):
            n = rng.randint(6, 9)
            p = BoundaryPrefix(SamplingService.random_word(rng, 3, n + 3))
            eta = BoundaryMapService.omega(p, n)
            self.assertEqual(BoundaryMapService.psi(eta, n), BoundaryMapService.psi_omega(p, n))
            g2 = BoundaryMapService.psi_witness(eta, n)
            self.assertEqual(BoundaryService.boundary_action(g2, eta)[0], BoundaryMapService.psi(eta, n))

    def test_fiber_sizes(self):
        fibers = Counter(
            BoundaryMapService.psi_omega(p, 6) for p in BoundaryService.depth_prefixes(2, 7)
        )
        self.assertLessEqual(max(fibers.values()), 9)


def compatible_pair(rng, rank, depth, m):
    p = BoundaryPrefix(SamplingService.random_word(rng, rank, depth))
    last = p.coordinate(m)
    while True:
        head = SamplingService.random_word(rng, rank, m - 1)
        if m == 1 or head.letters[-1] != last.inverse():
            break
    q = BoundaryPrefix(ReducedWord(rank, head.letters + p.word.letters[m - 1:]))
    return p, q


class InnerAutomorphismTests(SimpleTestCase):
    def test_identity_for_equal_prefixes(self):
        p = BoundaryPrefix(SamplingService.random_word(random.Random(3), 2, 6))
        beta = BoundaryMapService.build_inner_automorphism(p, p, 4)
        self.assertTrue(beta.is_identity)
        self.assertTrue(all(k == v for k, v in beta.table().items()))

    def test_maps_p_to_q(self):
        rng = random.Random(35)
        for _ in range(100):
            m = rng.randint(1, 6)
            p, q = compatible_pair(rng, 2, 7, m)
            beta = BoundaryMapService.build_inner_automorphism(p, q, m)
            self.assertEqual(beta.apply(p), q)
            self.assertEqual(beta.apply(q), p)

    def test_table_is_last_letter_preserving_bijection(self):
        rng = random.Random(36)
        p, q = compatible_pair(rng, 2, 6, 4)
        table = BoundaryMapService.build_inner_automorphism(p, q, 4).table()
        self.assertEqual(sorted(table.values(), key=lambda w: w.sort_key()), list(WordService.sphere(2, 4)))
        for source, image in table.items():
            self.assertEqual(source.letters[-1], image.letters[-1])

    def test_depends_on_first_m_letters(self):
        rng = random.Random(37)
        p, q = compatible_pair(rng, 2, 8, 4)
        beta = BoundaryMapService.build_inner_automorphism(p, q, 4)
        for _ in range(50):
            x = BoundaryPrefix(SamplingService.random_extension(rng, p.head(4), 8))
            y = BoundaryPrefix(SamplingService.random_extension(rng, p.head(4), 8))
            self.assertEqual(beta.apply(x).head(4), beta.apply(y).head(4))
            self.assertEqual(beta.apply(x).word.letters[4:], x.word.letters[4:])

    def test_incompatible(self):
        p = BoundaryPrefix(ReducedWord(2, tuple(alphabet(2)[i] for i in (0, 2, 0, 2))))
        q = BoundaryPrefix(ReducedWord(2, tuple(alphabet(2)[i] for i in (0, 2, 2, 2))))
        with self.assertRaises(IncompatiblePair):
            BoundaryMapService.build_inner_automorphism(p, q, 2)
