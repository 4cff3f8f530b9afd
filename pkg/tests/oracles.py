"""Independent hand-enumeration oracles used by several test modules.

Everything here is plain Python over exact rational probabilities, sharing
no code with the arrayized engine it checks.
"""

import itertools
import math
from fractions import Fraction


def binom_pmf(n, k, p):
    """Exact binomial probability for rational p."""
    p = Fraction(p)
    return Fraction(math.comb(n, k)) * p**k * (1 - p) ** (n - k)


def hand_risk(truth, estimator_fn, loss_fn, design):
    """Full-enumeration expected loss with exact dataset probabilities.

    Walks every one of the (N+1)^k count tuples; impossible datasets carry
    an exact zero and drop out, which is the point of keeping Fractions.
    """
    n = design.shots_per_axis
    total = 0.0
    for counts in itertools.product(range(n + 1), repeat=design.naxes):
        prob = Fraction(1)
        for w, c in enumerate(counts):
            p = Fraction(1 + Fraction(truth[w]).limit_denominator(10**9), 2)
            prob *= binom_pmf(n, c, p)
        if prob == 0:
            continue
        f = tuple((2 * c - n) / n for c in counts)
        total += float(prob) * loss_fn(truth, estimator_fn(f))
    return total


def hand_hs(truth, estimate):
    return 0.5 * sum((a - b) ** 2 for a, b in zip(truth, estimate))


def hand_cls(f):
    norm_sq = sum(x * x for x in f)
    if norm_sq < 1.0:
        return f
    norm = math.sqrt(norm_sq)
    return tuple(x / norm for x in f)


def make_hand_hedged(h):
    def hand_hedged(f):
        norm_sq = sum(x * x for x in f)
        if norm_sq < 1.0:
            return f
        scale = math.sqrt(1.0 - h) / math.sqrt(norm_sq)
        return tuple(scale * x for x in f)

    return hand_hedged
