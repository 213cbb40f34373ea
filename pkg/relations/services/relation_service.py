from fractions import Fraction
import logging

from relations.domain import InnerAutomorphism
from relations.exceptions import InvalidRelation

logger = logging.getLogger(__name__)


class RelationService:
    """Validation, averages and invariance defects of Folner families on finite relations."""

    @staticmethod
    def validate(relation, family=None):
        """
        Raise InvalidRelation unless nu is class-constant with total mass 1
        and every F_n(b) is a nonempty subset of class(b).
        """
        for b in range(relation.size):
            if relation.weights[b] < 0:
                raise InvalidRelation("negative weight", b)
            first = relation.class_of(b)[0]
            if relation.weights[b] != relation.weights[first]:
                raise InvalidRelation("nu is not constant on the class", b)
        if sum(relation.weights, Fraction(0)) != 1:
            raise InvalidRelation("nu does not sum to 1")
        if family is None:
            return True
        for n in range(1, family.n_max + 1):
            level = family.sets[n - 1]
            if len(level) != relation.size:
                raise InvalidRelation(f"F_{n} is not defined on every element")
            for b, members in enumerate(level):
                if not members:
                    raise InvalidRelation(f"F_{n}(b) is empty", b)
                if not members <= set(relation.class_of(b)):
                    raise InvalidRelation(f"F_{n}(b) leaves the class of b", b)
        return True

    @staticmethod
    def inner_automorphism(relation, table):
        """Wrap a table as an inner automorphism: a bijection preserving every class."""
        table = tuple(table)
        if sorted(table) != list(range(relation.size)):
            raise InvalidRelation("automorphism table is not a bijection")
        for b, image in enumerate(table):
            if relation.classes[image] != relation.classes[b]:
                raise InvalidRelation("automorphism leaves the class", b)
        return InnerAutomorphism(table)

    @staticmethod
    def identity_automorphism(relation):
        return InnerAutomorphism(tuple(range(relation.size)))

    @staticmethod
    def random_inner_automorphism(rng, relation):
        table = list(range(relation.size))
        for members in relation.members.values():
            shuffled = list(members)
            rng.shuffle(shuffled)
            for b, image in zip(members, shuffled):
                table[b] = image
        return InnerAutomorphism(tuple(table))

    @staticmethod
    def invariant_cond_exp(relation, f):
        """E[f | R]: the nu-weighted mean of f over each class."""
        values = [None] * relation.size
        for members in relation.members.values():
            mass = relation.measure(members)
            mean = sum((relation.weights[b] * f[b] for b in members), Fraction(0)) / mass
            for b in members:
                values[b] = mean
        return tuple(values)

    @staticmethod
    def relation_average(family, f, n):
        """A_n[F; f](b) = |F_n(b)|^-1 sum of f over F_n(b)."""
        return tuple(
            sum((Fraction(f[c]) for c in members), Fraction(0)) / len(members)
            for members in family.sets[n - 1]
        )

    @staticmethod
    def folner_defect(family, phi, n):
        """|F_n(b) symmetric-difference phi(F_n(b))| / |F_n(b)| per b."""
        return tuple(
            Fraction(len(members ^ phi.image(members)), len(members))
            for members in family.sets[n - 1]
        )

    @staticmethod
    def coboundary_gap(family, f, phi, n):
        """
        Pairs (|A_n[F; f - f o phi](b)|, 2 ||f||_inf defect(b, n)); the first
        never exceeds the second.
        """
        coboundary = [Fraction(f[b]) - Fraction(f[phi(b)]) for b in range(len(f))]
        averages = RelationService.relation_average(family, coboundary, n)
        sup = max((abs(Fraction(v)) for v in f), default=Fraction(0))
        defects = RelationService.folner_defect(family, phi, n)
        return tuple((abs(a), 2 * sup * d) for a, d in zip(averages, defects))

    @staticmethod
    def doubling_constant(relation, family):
        """
        The least C_d: max over (b, n) of
        |union of F_m(b') over m <= n with F_m(b') meeting F_n(b)| / |F_n(b)|.
        """
        # reach[c]: union of every F_m(b'), m <= n, that contains c
        reach = {}
        best = Fraction(1)
        for level in family.sets:
            for members in level:
                for c in members:
                    reach.setdefault(c, set()).update(members)
            for members in level:
                union = set().union(*(reach[c] for c in members))
                best = max(best, Fraction(len(union), len(members)))
        logger.debug(f"Doubling constant {best} over {relation.size} elements")
        return best
