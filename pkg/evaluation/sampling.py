from fractions import Fraction
from typing import List
import math


def sample_for_annotation(n_sentences: int, fraction: float) -> List[int]:
    """Evenly spaced, deterministic selection of ceil(n·fraction) sentence indices."""
    if not 0 < fraction <= 1:
        raise ValueError(f"sample fraction must lie in (0, 1], got {fraction}")
    step = Fraction(str(fraction))
    return [i for i in range(n_sentences) if math.ceil((i + 1) * step) > math.ceil(i * step)]
