"""Binomial log-likelihood kernels shared by the three detectors.

The ratios themselves come from nltk's Punkt trainer; this module checks the
counts and clamps the cases nltk cannot take a logarithm of.
"""
import math

from nltk.tokenize.punkt import PunktTrainer

from models import CountTable

P_MIN = 1e-12
P_MAX = 1.0 - 1e-12

# Alternative-hypothesis probability that an abbreviation type carries its period
ABBREV_ALTERNATIVE = 0.99


def _clamp(p: float) -> float:
    return min(max(p, P_MIN), P_MAX)


def log_likelihood(k: int, n: int, p: float) -> float:
    """k·ln(p) + (n−k)·ln(1−p), with p clamped away from 0 and 1."""
    if not 0 <= k <= n:
        raise ValueError(f"log_likelihood requires 0 <= k <= n, got k={k}, n={n}")
    if math.isnan(p) or not 0.0 <= p <= 1.0:
        raise ValueError(f"log_likelihood requires a probability, got p={p}")
    p = _clamp(p)
    return k * math.log(p) + (n - k) * math.log(1.0 - p)


def pair_llr(c1: int, c2: int, c12: int, n: int) -> float:
    """Dunning's ratio for "the second event depends on the first".

    c1 and c2 are the marginal counts, c12 the joint count, n the sample size.
    """
    if n <= 0:
        raise ValueError("pair_llr requires n > 0")
    if min(c1, c2, c12) < 0 or c12 > c1 or c12 > c2 or c1 > n or c2 > n:
        raise ValueError(f"pair_llr counts inconsistent: c1={c1}, c2={c2}, c12={c12}, n={n}")
    if c2 - c12 > n - c1:
        raise ValueError(f"pair_llr counts inconsistent: c2-c12={c2 - c12} exceeds n-c1={n - c1}")
    if c1 == 0:
        # no first events: both hypotheses reduce to p = c2/n
        return 0.0
    return PunktTrainer._col_log_likelihood(c1, c2, c12, n)


def abbrev_llr(key: str, counts: CountTable) -> float:
    kp = counts.c_with_period[key + "."]
    if kp < 1:
        raise ValueError(f"{key!r} never occurs with a final period")
    n = kp + counts.c_without_period[key]
    p0 = counts.n_periods / counts.n_tokens
    if 0.0 < p0 < 1.0:
        return PunktTrainer._dunning_log_likelihood(n, counts.n_periods, kp, counts.n_tokens)
    return 2.0 * (log_likelihood(kp, n, ABBREV_ALTERNATIVE) - log_likelihood(kp, n, p0))


def abbrev_score(key: str, counts: CountTable) -> float:
    """Scaled log-likelihood that a period-stripped type is an abbreviation.

    The raw ratio is damped by type length, boosted by internal periods and
    penalized once per occurrence without a period.
    """
    llr = abbrev_llr(key, counts)
    length = len(key.replace(".", ""))
    if length == 0:
        raise ValueError("abbreviation key has no characters besides periods")
    f_periods = key.count(".") + 1
    f_length = math.exp(-length)
    f_penalty = float(length) ** (-counts.c_without_period[key])
    return llr * f_periods * f_length * f_penalty
