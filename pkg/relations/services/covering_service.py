from fractions import Fraction
import logging
import random

from relations.domain import CoveringReport, MaximalCheck, NonShrinking
from relations.services.relation_service import RelationService

logger = logging.getLogger(__name__)


class CoveringService:
    """The disjoint-subfamily covering selection and the maximal inequality built on it."""

    @staticmethod
    def _beats(y, other, chosen, rho, tie_break):
        """y dominates `other`: disjoint sets, larger rho, or equal rho and larger T."""
        if not chosen[y] & chosen[other]:
            return True
        if rho[y] != rho[other]:
            return rho[y] > rho[other]
        return tie_break[y] > tie_break[other]

    @staticmethod
    def covering_select(relation, family, Y, rho, tie_break):
        """
        Z subset of Y whose sets F_rho(z)(z) are pairwise disjoint and cover
        Y~ = union of F_rho(y)(y) up to the doubling constant.

        Each round keeps the maximal set M of the remaining Y' (every y in M
        beats every other y' in Y'), adds M to Z, and drops from Y' every
        element whose set meets a set of M.
        """
        chosen = {y: family.get(rho[y], y) for y in Y}
        owners = {}
        for y, members in chosen.items():
            for c in members:
                owners.setdefault(c, set()).add(y)
        # y' with a disjoint set never blocks y
        rivals = {y: set().union(*(owners[c] for c in members)) - {y} for y, members in chosen.items()}
        remaining = set(Y)
        selected = set()
        rounds = 0
        while remaining:
            maximal = {
                y for y in remaining
                if all(CoveringService._beats(y, other, chosen, rho, tie_break)
                       for other in rivals[y] & remaining)
            }
            selected |= maximal
            covered = set().union(*(chosen[z] for z in maximal))
            remaining = {y for y in remaining - maximal if not chosen[y] & covered}
            rounds += 1
        logger.debug(f"Covering selected {len(selected)} of {len(chosen)} in {rounds} rounds")
        return tuple(sorted(selected))

    @staticmethod
    def covering_report(relation, family, Y, rho, tie_break, doubling=None):
        """Run covering_select and check disjointness and C_d nu(Z~) >= nu(Y~)."""
        if doubling is None:
            doubling = RelationService.doubling_constant(relation, family)
        Z = CoveringService.covering_select(relation, family, Y, rho, tie_break)
        seen = set()
        disjoint = True
        for z in Z:
            members = family.get(rho[z], z)
            if seen & members:
                disjoint = False
            seen |= members
        selected_mass = relation.measure(seen)
        covered_mass = relation.measure(set().union(*(family.get(rho[y], y) for y in Y)))
        return CoveringReport(
            Z, disjoint, doubling * selected_mass >= covered_mass, selected_mass, covered_mass, doubling,
        )

    @staticmethod
    def non_shrinking(relation, family, trials=100, seed=0):
        """
        C_s = 1 certified when b is in F_n(b) for every (b, n); otherwise the
        minimum of nu(union F_rho(y)(y)) / nu(Y) over sampled (Y, rho), an
        estimate only.
        """
        if family.is_centered:
            return NonShrinking(Fraction(1), True, trials)
        rng = random.Random(seed)
        best = None
        for _ in range(trials):
            Y = [b for b in range(relation.size) if rng.random() < 0.5] or [rng.randrange(relation.size)]
            mass = relation.measure(Y)
            if not mass:
                continue
            union = set().union(*(family.get(rng.randint(1, family.n_max), y) for y in Y))
            ratio = relation.measure(union) / mass
            best = ratio if best is None else min(best, ratio)
        return NonShrinking(best, False, trials)

    @staticmethod
    def maximal_function(family, f, n):
        """M_n[F; f](b) = max over 1 <= i <= n of A_i[F; |f|](b)."""
        absolute = [abs(Fraction(v)) for v in f]
        levels = [RelationService.relation_average(family, absolute, i) for i in range(1, n + 1)]
        return tuple(max(column) for column in zip(*levels))

    @staticmethod
    def maximal_check(relation, family, f, t, n, doubling=None, non_shrinking=None):
        """
        nu(D_{n,t}) for D_{n,t} = {M_n[F; f] > t} against (C_d / C_s) ||f||_1 / t.

        `passed` checks the weak-type bound only when C_s is certified.
        """
        t = Fraction(t)
        if doubling is None:
            doubling = RelationService.doubling_constant(relation, family)
        if non_shrinking is None:
            non_shrinking = CoveringService.non_shrinking(relation, family)
        maximal = CoveringService.maximal_function(family, f, n)
        mass = relation.measure(b for b, value in enumerate(maximal) if value > t)
        l1 = sum((w * abs(Fraction(v)) for w, v in zip(relation.weights, f)), Fraction(0))
        if not non_shrinking.value:
            return MaximalCheck(mass, None, False, non_shrinking.certified)
        bound = doubling / non_shrinking.value * l1 / t
        return MaximalCheck(mass, bound, mass <= bound, non_shrinking.certified)
