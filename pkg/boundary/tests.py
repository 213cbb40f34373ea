from fractions import Fraction
import random

from django.test import SimpleTestCase

from boundary.domain import AnnulusSet, BoundaryPrefix
from boundary.exceptions import EvenRadiusRequired, InsufficientDepth
from boundary.formats import format_annulus, parse_annulus, parse_prefix
from boundary.services.boundary_service import BoundaryService
from free_group.domain import Letter, ReducedWord
from free_group.exceptions import SpecParseError
from free_group.formats import parse_word
from free_group.services.sampling_service import SamplingService
from free_group.services.word_service import WordService

a1, A1 = Letter(1, 1), Letter(1, -1)
a2, A2 = Letter(2, 1), Letter(2, -1)


def prefix(text, rank=2):
    return parse_prefix(text, rank)


def word(text, rank=2):
    return parse_word(text, rank)


class CylinderMeasureTests(SimpleTestCase):
    def test_values(self):
        self.assertEqual(BoundaryService.cylinder_measure(word("a1")), Fraction(1, 4))
        self.assertEqual(BoundaryService.cylinder_measure(word("a1a2")), Fraction(1, 12))
        self.assertEqual(BoundaryService.cylinder_measure(word("e")), 1)

    def test_additive_over_children(self):
        for rank in (2, 3):
            for w in WordService.ball(rank, 3):
                if w.is_identity:
                    continue
                total = sum(BoundaryService.cylinder_measure(c) for c in WordService.children(w))
                self.assertEqual(total, BoundaryService.cylinder_measure(w))

    def test_depth_sums_are_one(self):
        for rank, max_depth in ((2, 8), (3, 6)):
            for depth in range(1, max_depth + 1):
                total = sum(BoundaryService.cylinder_measure(w) for w in WordService.sphere(rank, depth))
                self.assertEqual(total, 1)


class AnnulusTests(SimpleTestCase):
    def test_measure(self):
        annulus = AnnulusSet(word("a1"), a2)
        self.assertEqual(BoundaryService.annulus_measure(annulus), Fraction(1, 6))
        self.assertEqual(
            BoundaryService.annulus_measure(annulus) + BoundaryService.cylinder_measure(word("a1a2")),
            BoundaryService.cylinder_measure(word("a1")),
        )

    def test_membership_matches_horofunction(self):
        rng = random.Random(21)
        for _ in range(500):
            p = BoundaryPrefix(SamplingService.random_word(rng, 2, 8))
            n = rng.randint(1, 4)
            if rng.random() < 0.5:
                g = SamplingService.random_extension(rng, p.head(rng.randint(0, n + 1)), 2 * n)
            else:
                g = SamplingService.random_word(rng, 2, 2 * n)
            in_set = BoundaryService.in_annulus(p, BoundaryService.annulus_of(g))
            self.assertEqual(in_set, BoundaryService.horofunction(p, g) == 0)

    def test_text_format(self):
        annulus = parse_annulus("a1a2!a1", 2)
        self.assertEqual(annulus.stem, word("a1a2"))
        self.assertEqual(annulus.excluded_child, a1)
        self.assertEqual(format_annulus(annulus), "a1a2!a1")
        with self.assertRaises(SpecParseError) as ctx:
            parse_annulus("a1a2!A2", 2)
        self.assertEqual(ctx.exception.position, 5)


class BoundaryActionTests(SimpleTestCase):
    def test_identity(self):
        p = prefix("a1a2a1")
        self.assertEqual(BoundaryService.boundary_action(word("e"), p), (p, 0))

    def test_cancelling_letter(self):
        out, k = BoundaryService.boundary_action(word("A1"), prefix("a1a2a1"))
        self.assertEqual(out, prefix("a2a1"))
        self.assertEqual(k, 1)

    def test_no_cancellation(self):
        out, k = BoundaryService.boundary_action(word("a2"), prefix("a1a2"))
        self.assertEqual(out, prefix("a2a1a2"))
        self.assertEqual(k, 0)

    def test_cancellation_past_depth(self):
        with self.assertRaises(InsufficientDepth):
            BoundaryService.boundary_action(word("a1A2A1"), prefix("a1a2"))

    def test_radon_nikodym(self):
        self.assertEqual(BoundaryService.radon_nikodym(word("A1"), prefix("a1a2")), 3)
        self.assertEqual(BoundaryService.radon_nikodym(word("a2"), prefix("a1a2")), Fraction(1, 3))

    def test_cocycle(self):
        rng = random.Random(8)
        for _ in range(500):
            p = BoundaryPrefix(SamplingService.random_word(rng, 2, 12))
            g = SamplingService.random_word_upto(rng, 2, 4)
            h = SamplingService.random_word_upto(rng, 2, 4)
            hp, _ = BoundaryService.boundary_action(h, p)
            self.assertEqual(
                BoundaryService.radon_nikodym(WordService.product(g, h), p),
                BoundaryService.radon_nikodym(g, hp) * BoundaryService.radon_nikodym(h, p),
            )

    def test_depends_on_initial_segment_only(self):
        rng = random.Random(9)
        for _ in range(200):
            g = SamplingService.random_word_upto(rng, 2, 4)
            head = SamplingService.random_word(rng, 2, len(g) + 1)
            p = BoundaryPrefix(SamplingService.random_extension(rng, head, 9))
            q = BoundaryPrefix(SamplingService.random_extension(rng, head, 9))
            (gp, kp), (gq, kq) = BoundaryService.boundary_action(g, p), BoundaryService.boundary_action(g, q)
            self.assertEqual(kp, kq)
            keep = len(g) - kp + 1
            self.assertEqual(gp.head(keep), gq.head(keep))


class HorofunctionTests(SimpleTestCase):
    def test_values(self):
        p = prefix("a1a2a2")
        self.assertEqual(BoundaryService.horofunction(p, word("e")), 0)
        self.assertEqual(BoundaryService.horofunction(p, word("a1a2")), -2)
        self.assertEqual(BoundaryService.horofunction(p, word("a2")), 1)

    def test_requires_depth(self):
        with self.assertRaises(InsufficientDepth):
            BoundaryService.horofunction(prefix("a1"), word("a1a2"))

    def test_matches_radon_nikodym(self):
        rng = random.Random(10)
        for _ in range(300):
            p = BoundaryPrefix(SamplingService.random_word(rng, 3, 8))
            g = SamplingService.random_extension(rng, p.head(rng.randint(0, 3)), rng.randint(3, 7))
            rn = BoundaryService.radon_nikodym(WordService.invert(g), p)
            h = BoundaryService.horofunction(p, g)
            self.assertEqual(rn, Fraction(5) ** (-h))


class HorosphereTests(SimpleTestCase):
    def test_radius_one(self):
        p = prefix("a1a2")
        self.assertEqual(BoundaryService.horosphere_elements(p, 1), [word("a1a1"), word("a1A2")])

    def test_counts(self):
        rng = random.Random(12)
        for rank in (2, 3):
            for n in range(1, 5):
                p = BoundaryPrefix(SamplingService.random_word(rng, rank, n + 1))
                self.assertEqual(
                    len(BoundaryService.horosphere_elements(p, n)),
                    (2 * rank - 2) * (2 * rank - 1) ** (n - 1),
                )
                self.assertEqual(len(BoundaryService.horoball_elements(p, n)), (2 * rank - 1) ** n)

    def test_exhaustive_membership(self):
        rng = random.Random(14)
        for n in range(1, 4):
            p = BoundaryPrefix(SamplingService.random_word(rng, 2, 2 * n + 1))
            elements = set(BoundaryService.horosphere_elements(p, n))
            for g in WordService.words_with_prefix(p.head(n), 2 * n):
                self.assertEqual(g in elements, BoundaryService.horofunction(p, g) == 0)
            for h in elements:
                self.assertEqual(BoundaryService.radon_nikodym(WordService.invert(h), p), 1)

    def test_odd_length_rejected(self):
        with self.assertRaises(EvenRadiusRequired):
            BoundaryService.horosphere_at_length(prefix("a1a2a1"), 3)
        self.assertEqual(len(BoundaryService.horosphere_at_length(prefix("a1a2a1"), 4)), 6)

    def test_needs_depth(self):
        with self.assertRaises(InsufficientDepth):
            BoundaryService.horosphere_elements(prefix("a1a2"), 2)


class FolnerSetTests(SimpleTestCase):
    def test_counts_and_ratio(self):
        rng = random.Random(15)
        for rank in (2, 3):
            for n in range(1, 5):
                p = BoundaryPrefix(SamplingService.random_word(rng, rank, n + 2))
                ball = BoundaryService.folner_set(p, n, 'ball', n + 2)
                sphere = BoundaryService.folner_set(p, n, 'sphere', n + 2)
                self.assertEqual(len(ball), (2 * rank - 1) ** n)
                self.assertEqual(len(sphere), (2 * rank - 2) * (2 * rank - 1) ** (n - 1))
                self.assertEqual(Fraction(len(sphere), len(ball)), Fraction(2 * rank - 2, 2 * rank - 1))
                self.assertTrue(set(sphere) <= set(ball))
                self.assertIn(p, ball)

    def test_nesting(self):
        rng = random.Random(16)
        depth = 5
        for _ in range(200):
            p = BoundaryPrefix(SamplingService.random_word(rng, 2, depth))
            q = BoundaryPrefix(SamplingService.random_extension(rng, p.head(rng.randint(0, depth)), depth))
            n = rng.randint(1, depth - 1)
            m = rng.randint(1, n)
            big = set(BoundaryService.folner_set(p, n, 'ball', depth))
            small = set(BoundaryService.folner_set(q, m, 'ball', depth))
            if big & small:
                self.assertTrue(small <= big)


class MetricAndShiftTests(SimpleTestCase):
    def test_metric(self):
        self.assertEqual(BoundaryService.boundary_metric(prefix("a1a2"), prefix("a2a2")), 1)
        self.assertEqual(BoundaryService.boundary_metric(prefix("a1a2a1"), prefix("a1a2A2")), Fraction(1, 3))
        with self.assertRaises(InsufficientDepth):
            BoundaryService.boundary_metric(prefix("a1a2"), prefix("a1a2a1"))

    def test_shift(self):
        self.assertEqual(BoundaryService.shift(prefix("a1a2a1")), prefix("a2a1"))
        with self.assertRaises(InsufficientDepth):
            BoundaryService.shift(prefix("a1"))

    def test_shift_agrees_with_action(self):
        rng = random.Random(17)
        for _ in range(200):
            p = BoundaryPrefix(SamplingService.random_word(rng, 2, 6))
            first = ReducedWord(2, p.word.letters[:1])
            self.assertEqual(BoundaryService.shift(p), BoundaryService.boundary_action(WordService.invert(first), p)[0])
            self.assertEqual(BoundaryService.radon_nikodym(WordService.invert(first), p), 3)
            twice = BoundaryService.shift(BoundaryService.shift(p))
            self.assertEqual(twice, BoundaryService.boundary_action(WordService.invert(p.head(2)), p)[0])
