"""Reduced words in the generators and limit-set sampling."""
import logging
from typing import List, Tuple

from ..errors import UnverifiedConfigurationError, WordLimitExceeded
from ..geometry.circles import circle_apply
from ..geometry.moebius import mob_apply, mob_compose, mob_identity, mob_inverse
from ..models.schottky import LimitEntry, LimitSample, ReducedWord, SchottkyConfiguration
from ..models.sphere import GeneralizedCircle, MoebiusMap
from ..utils.numeric_utils import GEOMETRIC_TOL
from .construction import verify_classical

logger = logging.getLogger(__name__)

DEFAULT_WORD_CAP = 1_000_000


def letter_order(g: int) -> List[int]:
    """Generators before inverses: 1, ..., g, −1, ..., −g."""
    return list(range(1, g + 1)) + [-j for j in range(1, g + 1)]


def word_count(g: int, max_len: int) -> int:
    """1 + Σ_{k=1..max_len} 2g(2g−1)^{k−1}."""
    return 1 + sum(2 * g * (2 * g - 1) ** (k - 1) for k in range(1, max_len + 1))


def word_label(word: ReducedWord) -> str:
    """Generators as a, b, c, ...; inverses upper case; identity as 'e'."""
    if word.is_identity:
        return "e"
    chars = []
    for letter in word.letters:
        ch = chr(ord("a") + abs(letter) - 1)
        chars.append(ch if letter > 0 else ch.upper())
    return "".join(chars)


def generator_map(cfg: SchottkyConfiguration, letter: int) -> MoebiusMap:
    m = cfg.pairings[abs(letter) - 1].map
    return m if letter > 0 else mob_inverse(m)


def word_map(cfg: SchottkyConfiguration, word: ReducedWord) -> MoebiusMap:
    """(l1, ..., lk) ↦ A_{l1}∘...∘A_{lk}."""
    return mob_compose(mob_identity(), *(generator_map(cfg, l) for l in word.letters))


def letter_disk(cfg: SchottkyConfiguration, letter: int) -> GeneralizedCircle:
    """Boundary of D(letter): C'_j for +j, C_j for −j."""
    pairing = cfg.pairings[abs(letter) - 1]
    return pairing.c_prime if letter > 0 else pairing.c


def image_disk(cfg: SchottkyConfiguration, word: ReducedWord) -> GeneralizedCircle:
    """Boundary of the disk prefix(D(last letter)), prefix = all letters but the last."""
    if word.is_identity:
        raise ValueError("the empty word has no image disk")
    prefix = ReducedWord(letters=word.letters[:-1])
    return circle_apply(word_map(cfg, prefix), letter_disk(cfg, word.letters[-1]))


def enumerate_words(
    cfg: SchottkyConfiguration, max_len: int, cap: int = DEFAULT_WORD_CAP
) -> List[Tuple[ReducedWord, MoebiusMap]]:
    """All reduced words up to ``max_len``, length-major and lexicographic."""
    if max_len < 0:
        raise ValueError(f"max_len must be nonnegative, got {max_len}")
    total = word_count(cfg.g, max_len)
    if total > cap:
        raise WordLimitExceeded(f"{total} words exceed the cap of {cap}")

    letters = letter_order(cfg.g)
    generators = {l: generator_map(cfg, l) for l in letters}
    result = [(ReducedWord(), mob_identity())]
    layer = [((), mob_identity())]
    for length in range(1, max_len + 1):
        next_layer = []
        for prefix, m in layer:
            for l in letters:
                if prefix and prefix[-1] == -l:
                    continue
                next_layer.append((prefix + (l,), mob_compose(m, generators[l])))
        result.extend((ReducedWord(letters=w), m) for w, m in next_layer)
        layer = next_layer
        logger.debug("enumerated %d words of length %d", len(next_layer), length)
    return result


def limit_points(
    cfg: SchottkyConfiguration, max_len: int, tol: float = GEOMETRIC_TOL,
    cap: int = DEFAULT_WORD_CAP,
) -> LimitSample:
    """One point per reduced word of length ``max_len``.

    The point is w(center of D(last letter)); its recorded radius is the
    radius of the image disk of w.
    """
    if not verify_classical(cfg, tol).passed:
        raise UnverifiedConfigurationError("configuration fails verify_classical")
    if max_len == 0:
        return LimitSample()
    entries = []
    for word, m in enumerate_words(cfg, max_len, cap):
        if len(word) != max_len:
            continue
        last = word.letters[-1]
        point = mob_apply(m, letter_disk(cfg, last).center)
        disk = image_disk(cfg, word)
        entries.append(LimitEntry(word=word, point=point, radius=disk.radius))
    return LimitSample(entries=entries)
