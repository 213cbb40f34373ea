"""
Transfer-operator recursion for sums over spheres of F_r acting on X.

Channel t at length l is

    W_l^t(z) = sum of f(u^-1 z) over u in S_l(e) with first letter t,

which satisfies W_1^t(z) = f(t^-1 z) and

    W_l^t(z) = S_(l-1)(t^-1 z) - W_(l-1)^(t^-1)(t^-1 z),

with S_l = sum over t of W_l^t the full sphere sum. Cost per length is
O((2r) N) gathers; spheres are never enumerated.

Exact mode runs on Python ints in object arrays (f scaled by the lcm of its
denominators); float mode runs on float64.
"""
from fractions import Fraction
from math import lcm
import logging

import numpy as np

from free_group.domain import alphabet

logger = logging.getLogger(__name__)


class TransferOperator:
    def __init__(self, action, f):
        self.action = action
        self.approximate = f.approximate
        self.letters = alphabet(action.rank)
        self.gather = action.letter_arrays
        if self.approximate:
            self.scale = 1
            base = np.asarray([float(v) for v in f], dtype=np.float64)
        else:
            values = [Fraction(v) for v in f]
            self.scale = lcm(*(v.denominator for v in values)) if values else 1
            base = np.empty(action.size, dtype=object)
            base[:] = [int(v * self.scale) for v in values]
        self._sums = [base]
        self._channels = [{t: self._zeros() for t in self.letters}]

    def _zeros(self):
        if self.approximate:
            return np.zeros(self.action.size, dtype=np.float64)
        out = np.empty(self.action.size, dtype=object)
        out[:] = [0] * self.action.size
        return out

    def extend_to(self, length):
        while len(self._sums) <= length:
            prev_sum, prev = self._sums[-1], self._channels[-1]
            level = {}
            for t in self.letters:
                inverse = t.inverse()
                level[t] = (prev_sum - prev[inverse])[self.gather[inverse]]
            total = self._zeros()
            for t in self.letters:
                total = total + level[t]
            self._channels.append(level)
            self._sums.append(total)
        return self

    def channel(self, length, t):
        self.extend_to(length)
        return self._channels[length][t]

    def sphere_sum(self, length):
        """Raw S_l over all points (scaled in exact mode)."""
        self.extend_to(length)
        return self._sums[length]

    def sector_sum(self, length, forbidden=None):
        """Raw sum over u in S_l(e) whose first letter is not `forbidden`."""
        self.extend_to(length)
        if length == 0 or forbidden is None:
            return self._sums[length]
        return self._sums[length] - self.channel(length, forbidden)

    def channel_sum(self, length, first_letters):
        """Raw sum over u in S_l(e) whose first letter lies in `first_letters`."""
        self.extend_to(length)
        total = self._zeros()
        for t in first_letters:
            total = total + self.channel(length, t)
        return total

    def pull(self, raw, word):
        """raw(w^-1 x) as an array over x."""
        index = np.arange(self.action.size)
        for letter in word.letters:
            index = self.gather[letter.inverse()][index]
        return raw[index]

    def value(self, raw, divisor):
        """Convert one raw entry divided by `divisor` to the output number type."""
        if self.approximate:
            return float(raw) / float(divisor)
        return Fraction(int(raw), self.scale * divisor)

    def values(self, raw, divisor):
        return tuple(self.value(v, divisor) for v in raw)
