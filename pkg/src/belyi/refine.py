"""Monodromy of R∘β from the monodromy of β.

A sheet of R∘β over 0 is a pair (j, k): the R-sheet k, a point z_k of
R⁻¹(0), and the β-sheet j over z_k, reached from β's base point 0 along
the segment [0, z_k]. Segments at the arguments of R⁻¹(0) miss every
cut, so the loop [0, z_k]·δ·[z_k', 0] reads off β's monodromy from the
crossing word of the lifted path δ alone. Index (j, k) is 6j + k.
"""
import logging
from typing import Sequence

from ..errors import InvalidTripleError
from ..models.belyi import MonodromyTriple
from .permutations import inverse, validate_triple
from .rmap import DEGREE, Word, lifting_data

logger = logging.getLogger(__name__)


def act_word(word: Word, sheet: int, perms: Sequence[Sequence[int]], inverses: Sequence[Sequence[int]]) -> int:
    """Follow ``sheet`` through the base loops of ``word``, first letter first."""
    for letter in word:
        table = perms[letter - 1] if letter > 0 else inverses[-letter - 1]
        sheet = table[sheet]
    return sheet


def refine(t: MonodromyTriple) -> MonodromyTriple:
    ok, errors = validate_triple(t)
    if not ok:
        raise InvalidTripleError("; ".join(errors))
    r_perms, words = lifting_data()
    perms = t.permutations
    inverses = [inverse(p) for p in perms]
    refined = []
    for c in range(3):
        images = [0] * (DEGREE * t.degree)
        for j in range(t.degree):
            for k in range(DEGREE):
                target = act_word(words[(c, k)], j, perms, inverses)
                images[DEGREE * j + k] = DEGREE * target + r_perms[c][k]
        refined.append(tuple(images))
    logger.debug("refined degree %d to %d", t.degree, DEGREE * t.degree)
    return MonodromyTriple(degree=DEGREE * t.degree, s1=refined[0], sw=refined[1], sw2=refined[2])


def refine_times(t: MonodromyTriple, times: int) -> MonodromyTriple:
    if times < 0:
        raise ValueError(f"refinement count must be nonnegative, got {times}")
    for _ in range(times):
        t = refine(t)
    return t
