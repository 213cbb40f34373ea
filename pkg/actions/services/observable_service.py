from fractions import Fraction

from actions.domain import Observable
from densities.numerics import lq_norm_of
from free_group.exceptions import InvalidParameter


class ObservableService:
    """Observables on a finite action and their lambda-norms."""

    @staticmethod
    def constant(action, c, approximate=False):
        value = float(c) if approximate else Fraction(c)
        return Observable((value,) * action.size, approximate)

    @staticmethod
    def indicator(action, x, approximate=False):
        if not 0 <= x < action.size:
            raise InvalidParameter(f"point {x} outside 0..{action.size - 1}")
        one, zero = (1.0, 0.0) if approximate else (Fraction(1), Fraction(0))
        return Observable(tuple(one if y == x else zero for y in range(action.size)), approximate)

    @staticmethod
    def integral(action, f):
        if f.approximate:
            return sum(float(w) * v for w, v in zip(action.weights, f))
        return sum((w * v for w, v in zip(action.weights, f)), Fraction(0))

    @staticmethod
    def centered(action, f):
        """f minus its lambda-mean."""
        mean = ObservableService.integral(action, f)
        return Observable(tuple(v - mean for v in f), f.approximate)

    @staticmethod
    def difference(f, g):
        return Observable(tuple(a - b for a, b in zip(f, g)), f.approximate or g.approximate)

    @staticmethod
    def absolute(f):
        return Observable(tuple(abs(v) for v in f), f.approximate)

    @staticmethod
    def sup_norm(f):
        return max((abs(v) for v in f), default=Fraction(0))

    @staticmethod
    def l1_norm(action, f):
        return ObservableService.integral(action, ObservableService.absolute(f))

    @staticmethod
    def lp_norm(action, f, p):
        """||f||_p against lambda; exact when the root is rational."""
        return lq_norm_of(zip(f, action.weights), p)

    @staticmethod
    def random_observable(rng, action, low=-5, high=5, approximate=False):
        values = [rng.randint(low, high) for _ in range(action.size)]
        if approximate:
            return Observable.approx(values)
        return Observable.exact(values)
