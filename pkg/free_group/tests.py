import random

from django.test import SimpleTestCase
from hypothesis import given, settings as hypothesis_settings, strategies as st

from free_group.domain import Letter, ReducedWord, alphabet
from free_group.exceptions import InvalidLetter, RankMismatch, SpecParseError
from free_group.formats import format_word, parse_letters, parse_word
from free_group.services.sampling_service import SamplingService
from free_group.services.word_service import WordService

a1, A1 = Letter(1, 1), Letter(1, -1)
a2, A2 = Letter(2, 1), Letter(2, -1)


def naive_reduce(letters, rank):
    """Rescan until no adjacent inverse pair remains."""
    letters = list(letters)
    changed = True
    while changed:
        changed = False
        for i in range(len(letters) - 1):
            if letters[i] == letters[i + 1].inverse():
                del letters[i:i + 2]
                changed = True
                break
    return ReducedWord(rank, tuple(letters))


class LetterTests(SimpleTestCase):
    def test_inverse_is_involution(self):
        for letter in alphabet(3):
            self.assertEqual(letter.inverse().inverse(), letter)
            self.assertEqual(letter.inverse().index, letter.index)

    def test_canonical_order(self):
        self.assertEqual(sorted([A2, a2, A1, a1]), [a1, A1, a2, A2])
        self.assertEqual(alphabet(2), (a1, A1, a2, A2))

    def test_invalid_sign(self):
        with self.assertRaises(InvalidLetter):
            Letter(1, 0)


class ReduceTests(SimpleTestCase):
    def test_full_cancellation(self):
        self.assertTrue(WordService.reduce([a1, A1], 2).is_identity)

    def test_inner_cancellation(self):
        self.assertEqual(WordService.reduce([a1, a2, A2, a1], 2), ReducedWord(2, (a1, a1)))

    def test_agrees_with_naive_oracle(self):
        rng = random.Random(11)
        for _ in range(1000):
            seq = SamplingService.random_letters(rng, 2, rng.randint(0, 20))
            self.assertEqual(WordService.reduce(seq, 2), naive_reduce(seq, 2))

    def test_idempotent(self):
        rng = random.Random(3)
        for _ in range(200):
            w = SamplingService.random_word_upto(rng, 3, 12)
            self.assertEqual(WordService.reduce(w.letters, 3), w)

    def test_rank_mismatch(self):
        with self.assertRaises(RankMismatch):
            WordService.reduce([Letter(3, 1)], 2)
        with self.assertRaises(RankMismatch):
            WordService.reduce([ReducedWord(3, (a1,))], 2)

    def test_constructor_rejects_unreduced(self):
        with self.assertRaises(InvalidLetter):
            ReducedWord(2, (a1, A1))


class MultiplyTests(SimpleTestCase):
    def test_inverse_pair(self):
        w, k = WordService.multiply(ReducedWord(2, (a1, a2)), ReducedWord(2, (A2, A1)))
        self.assertTrue(w.is_identity)
        self.assertEqual(k, 2)

    def test_partial_cancellation(self):
        w, k = WordService.multiply(ReducedWord(2, (a1, a2)), ReducedWord(2, (A2, a1)))
        self.assertEqual(w, ReducedWord(2, (a1, a1)))
        self.assertEqual(k, 1)

    def test_length_formula_and_inverse(self):
        rng = random.Random(5)
        for _ in range(300):
            u = SamplingService.random_word_upto(rng, 2, 10)
            v = SamplingService.random_word_upto(rng, 2, 10)
            w, k = WordService.multiply(u, v)
            self.assertEqual(len(w), len(u) + len(v) - 2 * k)
            self.assertTrue(WordService.multiply(u, WordService.invert(u))[0].is_identity)

    def test_rank_mismatch(self):
        with self.assertRaises(RankMismatch):
            WordService.multiply(ReducedWord(2, (a1,)), ReducedWord(3, (a1,)))

    def test_triangle_inequality(self):
        rng = random.Random(7)
        for _ in range(1000):
            g1, g2, g3 = (SamplingService.random_word_upto(rng, 2, 8) for _ in range(3))
            self.assertLessEqual(
                WordService.distance(g1, g3),
                WordService.distance(g1, g2) + WordService.distance(g2, g3),
            )
            self.assertEqual(WordService.distance(g1, g2), WordService.distance(g2, g1))
            self.assertEqual(WordService.distance(g1, g1), 0)


class SphereTests(SimpleTestCase):
    def test_small_counts(self):
        self.assertEqual(len(list(WordService.sphere(2, 1))), 4)
        self.assertEqual(len(list(WordService.sphere(2, 3))), 36)
        self.assertEqual(WordService.sphere_size(2, 0), 1)

    def test_sizes_match_enumeration(self):
        for rank in (2, 3):
            for n in range(0, 6 if rank == 3 else 9):
                self.assertEqual(
                    sum(1 for _ in WordService.sphere(rank, n)), WordService.sphere_size(rank, n)
                )

    def test_size_recurrence(self):
        for rank in (2, 3, 4):
            self.assertEqual(WordService.sphere_size(rank, 1), 2 * rank)
            for n in range(1, 10):
                self.assertEqual(
                    WordService.sphere_size(rank, n + 1), (2 * rank - 1) * WordService.sphere_size(rank, n)
                )

    def test_matches_filtered_raw_strings(self):
        for n in range(0, 6):
            expected = set()
            for raw in WordService.raw_strings(2, n):
                w = WordService.reduce(raw, 2)
                if len(w) == n:
                    expected.add(w)
            words = list(WordService.sphere(2, n))
            self.assertEqual(len(words), len(set(words)))
            self.assertEqual(set(words), expected)

    def test_lexicographic_order(self):
        words = list(WordService.sphere(2, 4))
        self.assertEqual(words, sorted(words, key=lambda w: w.sort_key()))

    def test_ball_and_prefix(self):
        self.assertEqual(sum(1 for _ in WordService.ball(2, 3)), WordService.ball_size(2, 3))
        prefix = ReducedWord(2, (a1, a2))
        words = list(WordService.words_with_prefix(prefix, 4))
        self.assertEqual(len(words), 9)
        self.assertTrue(all(w.letters[:2] == prefix.letters for w in words))


class EvenSubgroupTests(SimpleTestCase):
    def test_membership(self):
        self.assertTrue(WordService.in_even_subgroup(ReducedWord.identity(2)))
        self.assertFalse(WordService.in_even_subgroup(ReducedWord(2, (a1,))))

    def test_odd_times_odd_is_even(self):
        rng = random.Random(13)
        for _ in range(100):
            u = SamplingService.random_word(rng, 2, 2 * rng.randint(0, 5) + 1)
            v = SamplingService.random_word(rng, 2, 2 * rng.randint(0, 5) + 1)
            self.assertTrue(WordService.in_even_subgroup(WordService.product(u, v)))

    @hypothesis_settings(max_examples=200, deadline=None)
    @given(st.lists(st.sampled_from(alphabet(2)), max_size=16),
           st.lists(st.sampled_from(alphabet(2)), max_size=16))
    def test_parity_is_homomorphism(self, left, right):
        u, v = WordService.reduce(left, 2), WordService.reduce(right, 2)
        w, _ = WordService.multiply(u, v)
        self.assertEqual(len(w) % 2, (len(u) + len(v)) % 2)


class WordSyntaxTests(SimpleTestCase):
    def test_format(self):
        self.assertEqual(format_word(ReducedWord(2, (a1, A2, a1))), "a1A2a1")
        self.assertEqual(format_word(ReducedWord.identity(2)), "e")

    def test_parse(self):
        self.assertEqual(parse_word("a1A2a1", 2), ReducedWord(2, (a1, A2, a1)))
        self.assertTrue(parse_word("e", 2).is_identity)
        self.assertEqual(parse_letters("a1A1", 2), [a1, A1])

    def test_parse_errors_carry_position(self):
        with self.assertRaises(SpecParseError) as ctx:
            parse_word("a1x2", 2)
        self.assertEqual(ctx.exception.position, 2)
        with self.assertRaises(SpecParseError) as ctx:
            parse_word("a1a3", 2)
        self.assertEqual(ctx.exception.position, 2)
        with self.assertRaises(SpecParseError) as ctx:
            parse_word("a2a1A1", 2)
        self.assertEqual(ctx.exception.position, 4)
