from fractions import Fraction
import logging
import random

from actions.domain import FiniteAction
from actions.exceptions import InvalidAction
from actions.services.action_service import ActionService
from free_group.exceptions import InvalidParameter

logger = logging.getLogger(__name__)


class ActionBuilderService:
    """Constructors for test actions."""

    @staticmethod
    def from_permutations(weights, maps):
        """
        Build and validate an action. `weights` may be None for uniform lambda.

        Raises:
            InvalidAction naming the offending generator and point
        """
        maps = tuple(tuple(int(y) for y in table) for table in maps)
        size = len(maps[0]) if maps else 0
        if weights is None:
            weights = (Fraction(1, size),) * size
        action = FiniteAction(len(maps), tuple(Fraction(w) for w in weights), maps)
        report = ActionService.validate(action)
        if not report.ok:
            raise InvalidAction(str(report), report.generator, report.point)
        return action

    @staticmethod
    def sanov_mod(n):
        """
        a1 -> [[1,2],[0,1]] and a2 -> [[1,0],[2,1]] on (Z/N)^2, uniform lambda.

        The point (i, j) is stored as i*N + j.
        """
        if n < 3 or n % 2 == 0:
            raise InvalidParameter(f"sanov_mod needs odd N >= 3, got {n}")
        first, second = [], []
        for i in range(n):
            for j in range(n):
                first.append(((i + 2 * j) % n) * n + j)
                second.append(i * n + (2 * i + j) % n)
        logger.info(f"Built sanov_mod({n}) on {n * n} points")
        return ActionBuilderService.from_permutations(None, (first, second))

    @staticmethod
    def two_point_swap(rank=2):
        """Every generator swaps the two points; F acts ergodically, F^2 trivially."""
        return ActionBuilderService.from_permutations(None, [(1, 0)] * rank)

    @staticmethod
    def random_action(n, seed, rank=2, blocks=1):
        """
        Random permutations of n points. With blocks > 1 the points are cut
        into contiguous blocks of random (block-constant) weight and each
        generator permutes within blocks, so lambda is preserved.
        """
        if n < 1 or blocks < 1 or blocks > n:
            raise InvalidParameter(f"random_action needs 1 <= blocks <= n, got n={n}, blocks={blocks}")
        rng = random.Random(seed)
        bounds = [round(k * n / blocks) for k in range(blocks + 1)]
        raw = [rng.randint(1, 5) for _ in range(blocks)]
        total = sum(raw[k] * (bounds[k + 1] - bounds[k]) for k in range(blocks))
        weights = []
        for k in range(blocks):
            weights.extend([Fraction(raw[k], total)] * (bounds[k + 1] - bounds[k]))
        maps = []
        for _ in range(rank):
            table = list(range(n))
            for k in range(blocks):
                part = table[bounds[k]:bounds[k + 1]]
                rng.shuffle(part)
                table[bounds[k]:bounds[k + 1]] = part
            maps.append(table)
        return ActionBuilderService.from_permutations(weights, maps)
