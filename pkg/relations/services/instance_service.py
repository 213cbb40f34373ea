from fractions import Fraction
import logging
import random

from django.conf import settings

from boundary.services.boundary_service import BoundaryService
from free_group.exceptions import InvalidParameter
from relations.domain import BoundaryInstance, FiniteRelation, FolnerFamily, TieBreak
from relations.exceptions import InvalidRelation
from relations.services.relation_service import RelationService

logger = logging.getLogger(__name__)

DEFAULT_RANDOM_INSTANCE = {
    'classes': (2, 12),
    'class_size': (1, 20),
    'n_max': 4,
}


class InstanceService:
    """Builders for boundary and random relation instances."""

    @staticmethod
    def boundary_instance(rank, depth, n0):
        """
        Depth-L prefixes with uniform weight, related when they agree at every
        coordinate > n0, with F_n(xi) the ball and sphere Folner sets of index
        n <= n0 at resolution L.
        """
        if n0 < 1 or depth < n0 + 1:
            raise InvalidParameter(f"boundary instance needs 1 <= n0 < L, got n0={n0}, L={depth}")
        prefixes = tuple(BoundaryService.depth_prefixes(rank, depth))
        index = {p: b for b, p in enumerate(prefixes)}
        class_ids = {}
        classes = tuple(class_ids.setdefault(p.word.letters[n0:], len(class_ids)) for p in prefixes)
        weight = Fraction(1, len(prefixes))
        relation = FiniteRelation(classes, (weight,) * len(prefixes), tuple(str(p) for p in prefixes))
        families = {}
        for kind in ('ball', 'sphere'):
            families[kind] = FolnerFamily(tuple(
                tuple(
                    frozenset(index[q] for q in BoundaryService.folner_set(p, n, kind, depth))
                    for p in prefixes
                )
                for n in range(1, n0 + 1)
            ))
        logger.info(f"Built boundary instance r={rank} L={depth} n0={n0}: {len(prefixes)} points, {len(class_ids)} classes")
        return BoundaryInstance(relation, families['ball'], families['sphere'], prefixes)

    @staticmethod
    def inner_automorphism_from_table(instance, permutation):
        """Lift a prefix permutation (e.g. from build_inner_automorphism) to the instance."""
        if permutation.rank != instance.prefixes[0].rank:
            raise InvalidRelation("permutation rank differs from the instance")
        table = []
        for p in instance.prefixes:
            image = permutation.apply(p)
            if image not in instance.index:
                raise InvalidRelation(f"image of {p} is not a prefix of the instance")
            table.append(instance.index[image])
        return RelationService.inner_automorphism(instance.relation, table)

    @staticmethod
    def random_instance(seed, max_points=None, centered=None):
        """
        A seeded random relation and Folner family. Class count, class sizes
        and n_max come from LAB_RANDOM_INSTANCE. When `centered` is None it is
        drawn at random; a centered family has b in F_n(b) for all (b, n).
        """
        params = {**DEFAULT_RANDOM_INSTANCE, **getattr(settings, 'LAB_RANDOM_INSTANCE', {})}
        rng = random.Random(seed)
        if centered is None:
            centered = rng.random() < 0.5
        sizes = [rng.randint(*params['class_size']) for _ in range(rng.randint(*params['classes']))]
        if max_points is not None:
            sizes = InstanceService._fit(sizes, max_points)
        classes = tuple(k for k, size in enumerate(sizes) for _ in range(size))
        raw = [rng.randint(1, 6) for _ in sizes]
        total = sum(r * size for r, size in zip(raw, sizes))
        weights = tuple(Fraction(raw[k], total) for k in classes)
        relation = FiniteRelation(classes, weights)
        levels = []
        for _ in range(params['n_max']):
            level = []
            for b in range(relation.size):
                members = relation.class_of(b)
                chosen = set(rng.sample(members, rng.randint(1, len(members))))
                if centered:
                    chosen.add(b)
                level.append(frozenset(chosen))
            levels.append(tuple(level))
        return relation, FolnerFamily(tuple(levels))

    @staticmethod
    def _fit(sizes, max_points):
        fitted, total = [], 0
        for size in sizes:
            size = min(size, max_points - total)
            if size <= 0:
                break
            fitted.append(size)
            total += size
        return fitted

    @staticmethod
    def random_covering_input(rng, relation, family):
        """Random (Y, rho, T) for covering_select."""
        Y = [b for b in range(relation.size) if rng.random() < 0.6] or [0]
        rho = {y: rng.randint(1, family.n_max) for y in Y}
        labels = list(range(relation.size))
        rng.shuffle(labels)
        return Y, rho, TieBreak(tuple(labels))
