from fractions import Fraction
import random

from django.test import SimpleTestCase

from actions.domain import FiniteAction
from actions.exceptions import InvalidAction
from actions.formats import (
    format_action, parse_action, parse_action_spec, parse_observable, parse_observable_spec,
)
from actions.services.action_builder_service import ActionBuilderService
from actions.services.action_service import ActionService
from actions.services.observable_service import ObservableService
from actions.union_find import UnionFind
from free_group.domain import Letter, ReducedWord
from free_group.exceptions import InvalidParameter, SpecParseError
from free_group.services.sampling_service import SamplingService
from free_group.services.word_service import WordService


def cycle_action(n):
    """a1 rotates n points, a2 is the identity."""
    return ActionBuilderService.from_permutations(None, [[(x + 1) % n for x in range(n)], list(range(n))])


class ValidateTests(SimpleTestCase):
    def test_uniform_permutations_ok(self):
        rng = random.Random(60)
        maps = [rng.sample(range(7), 7) for _ in range(3)]
        action = FiniteAction(3, (Fraction(1, 7),) * 7, tuple(tuple(t) for t in maps))
        self.assertTrue(ActionService.validate(action).ok)

    def test_weight_violation(self):
        action = FiniteAction(2, (Fraction(1, 3), Fraction(2, 3)), ((1, 0), (0, 1)))
        report = ActionService.validate(action)
        self.assertFalse(report.ok)
        self.assertEqual((report.generator, report.point), (1, 0))

    def test_two_point_swap(self):
        self.assertTrue(ActionService.validate(ActionBuilderService.two_point_swap()).ok)

    def test_rejects_non_bijection(self):
        with self.assertRaises(InvalidAction) as ctx:
            ActionBuilderService.from_permutations(None, [[0, 1, 2], [1, 1, 0]])
        self.assertEqual(ctx.exception.generator, 2)
        self.assertEqual(ctx.exception.point, 1)


class ApplyWordTests(SimpleTestCase):
    def test_identity_word(self):
        action = ActionBuilderService.sanov_mod(3)
        e = ReducedWord.identity(2)
        self.assertEqual([ActionService.apply_word(action, e, x) for x in range(9)], list(range(9)))

    def test_letter_convention(self):
        action = ActionBuilderService.sanov_mod(5)
        # a1 sends (1, 1) to (3, 1); A1 undoes it
        self.assertEqual(ActionService.apply_word(action, ReducedWord(2, (Letter(1, 1),)), 6), 16)
        self.assertEqual(ActionService.apply_word(action, ReducedWord(2, (Letter(1, -1),)), 16), 6)

    def test_inverse_and_composition(self):
        rng = random.Random(61)
        action = ActionBuilderService.random_action(30, seed=4, blocks=3)
        for _ in range(500):
            u = SamplingService.random_word_upto(rng, 2, 8)
            v = SamplingService.random_word_upto(rng, 2, 8)
            x = rng.randrange(action.size)
            y = ActionService.apply_word(action, u, x)
            self.assertEqual(ActionService.apply_word(action, WordService.invert(u), y), x)
            self.assertEqual(
                ActionService.apply_word(action, WordService.product(u, v), x),
                ActionService.apply_word(action, u, ActionService.apply_word(action, v, x)),
            )


class EvenOrbitTests(SimpleTestCase):
    def test_swap_swap(self):
        self.assertEqual(ActionService.even_orbits(ActionBuilderService.two_point_swap()), [[0], [1]])

    def test_identity_generators(self):
        action = ActionBuilderService.from_permutations(None, [[0, 1, 2], [0, 1, 2]])
        self.assertEqual(ActionService.even_orbits(action), [[0], [1], [2]])

    def test_even_words_stay_in_orbit(self):
        rng = random.Random(62)
        action = ActionBuilderService.random_action(40, seed=9)
        labels = ActionService.orbit_labels(action)
        for _ in range(500):
            w = SamplingService.random_word(rng, 2, 2 * rng.randint(0, 5))
            x = rng.randrange(action.size)
            self.assertEqual(labels[ActionService.apply_word(action, w, x)], labels[x])

    def test_other_generating_family(self):
        action = ActionBuilderService.random_action(25, seed=3, rank=3)
        uf = UnionFind(action.size)
        for i in range(1, 4):
            for j in range(1, 4):
                for sign in (1, -1):
                    first = action.letter_map(Letter(i, 1))
                    second = action.letter_map(Letter(j, sign))
                    for x in range(action.size):
                        uf.union(x, first[second[x]])
        self.assertEqual(uf.groups(), ActionService.even_orbits(action))

    def test_sanov_origin_is_fixed(self):
        action = ActionBuilderService.sanov_mod(5)
        self.assertIn([0], ActionService.even_orbits(action))
        self.assertGreaterEqual(ActionService.orbit_count(action), 2)

    def test_point_orbit(self):
        action = ActionBuilderService.random_action(30, seed=4)
        labels = ActionService.orbit_labels(action)
        for x in range(action.size):
            orbit = ActionService.point_orbit(action, x)
            self.assertIn(x, orbit)
            self.assertEqual(sorted(orbit), [y for y in range(action.size) if labels[y] == labels[x]])
        self.assertEqual(ActionService.point_orbit(ActionBuilderService.sanov_mod(5), 0), [0])
        self.assertEqual(ActionService.point_orbit(action, action.size), [])


class CondExpTests(SimpleTestCase):
    def test_transitive_gives_mean(self):
        action = cycle_action(7)
        f = ObservableService.random_observable(random.Random(63), action)
        mean = ObservableService.integral(action, f)
        self.assertEqual(ActionService.cond_exp_even(action, f).values, (mean,) * 7)

    def test_swap_swap_is_identity(self):
        action = ActionBuilderService.two_point_swap()
        f = ObservableService.indicator(action, 0)
        self.assertEqual(ActionService.cond_exp_even(action, f), f)

    def test_projection_properties(self):
        rng = random.Random(64)
        for seed in range(100):
            action = ActionBuilderService.random_action(rng.randint(2, 12), seed=seed, blocks=2)
            f = ObservableService.random_observable(rng, action)
            once = ActionService.cond_exp_even(action, f)
            self.assertEqual(ActionService.cond_exp_even(action, once), once)
            self.assertEqual(ObservableService.integral(action, once), ObservableService.integral(action, f))

    def test_invariant_observable_is_constant_on_even_words(self):
        rng = random.Random(65)
        action = ActionBuilderService.random_action(20, seed=1)
        f = ActionService.cond_exp_even(action, ObservableService.random_observable(rng, action))
        for _ in range(200):
            w = SamplingService.random_word(rng, 2, 2 * rng.randint(1, 4))
            x = rng.randrange(action.size)
            self.assertEqual(f[ActionService.apply_word(action, w, x)], f[x])


class BuilderTests(SimpleTestCase):
    def test_sanov_valid(self):
        action = ActionBuilderService.sanov_mod(3)
        self.assertTrue(ActionService.validate(action).ok)
        self.assertTrue(action.is_uniform)

    def test_sanov_rejects_even(self):
        with self.assertRaises(InvalidParameter):
            ActionBuilderService.sanov_mod(4)

    def test_random_blocks_preserve_lambda(self):
        action = ActionBuilderService.random_action(17, seed=2, rank=3, blocks=4)
        self.assertTrue(ActionService.validate(action).ok)
        self.assertEqual(sum(action.weights), 1)


class ActionFormatTests(SimpleTestCase):
    def test_round_trip(self):
        action = ActionBuilderService.random_action(6, seed=5, blocks=2)
        self.assertEqual(parse_action(format_action(action)), action)

    def test_uniform_when_lambda_omitted(self):
        action = parse_action("rank 2 points 2\ngen 1: 1 0\ngen 2: 0 1\n")
        self.assertEqual(action.weights, (Fraction(1, 2), Fraction(1, 2)))

    def test_errors(self):
        with self.assertRaises(SpecParseError) as ctx:
            parse_action("rank 2 points 2\ngen 1: 1 0\ngen 3: 0 1\n")
        self.assertEqual(ctx.exception.position, len("rank 2 points 2\ngen 1: 1 0\n"))
        with self.assertRaises(InvalidAction):
            parse_action("rank 2 points 2\ngen 1: 1 1\ngen 2: 0 1\n")

    def test_observable(self):
        action = ActionBuilderService.two_point_swap()
        f = parse_observable("obs 0 1/2\nobs 1 -3\n", action)
        self.assertEqual(f.values, (Fraction(1, 2), Fraction(-3)))
        with self.assertRaises(SpecParseError):
            parse_observable("obs 0 1\n", action)

    def test_action_spec(self):
        self.assertEqual(parse_action_spec("sanov:5").size, 25)
        self.assertEqual(parse_action_spec("swap").size, 2)
        with self.assertRaises(SpecParseError) as ctx:
            parse_action_spec("sanov:x")
        self.assertEqual(ctx.exception.position, 6)
        with self.assertRaises(SpecParseError):
            parse_action_spec("sanov:4")

    def test_observable_spec(self):
        action = ActionBuilderService.sanov_mod(3)
        f = parse_observable_spec("centered-indicator:1", action)
        self.assertEqual(ActionService.cond_exp_even(action, f), ObservableService.constant(action, 0))
        self.assertEqual(parse_observable_spec("indicator:2", action)[2], 1)
        self.assertTrue(parse_observable_spec("indicator:2", action, approximate=True).approximate)
        with self.assertRaises(SpecParseError) as ctx:
            parse_observable_spec("indicator:99", action)
        self.assertEqual(ctx.exception.position, len("indicator:"))
