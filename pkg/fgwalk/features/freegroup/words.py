# fgwalk/features/freegroup/words.py
"""
Words in the free group F_r, closed-form word counts and brute-force
enumeration oracles.

Letters are signed generator indices: +g stands for a_g and -g for A_g.
"""
import string
from typing import Iterator, List, Sequence, Tuple

from ...core.config import BRUTE_FORCE_LIMIT, logger
from ...core.errors import GuardExceededError, PreconditionError
from .model import FreeRank, letter_of_vertex

Word = Tuple[int, ...]


def alphabet(r: int) -> List[int]:
    """Letters in G_r vertex order a_1..a_r, A_r..A_1."""
    FreeRank(r)
    return [letter_of_vertex(v, r) for v in range(2 * r)]


def is_reduced(word: Sequence[int]) -> bool:
    return all(word[i] != -word[i + 1] for i in range(len(word) - 1))


def is_cyclically_reduced(word: Sequence[int]) -> bool:
    if not is_reduced(word):
        return False
    return len(word) < 2 or word[-1] != -word[0]


def reduce_word(word: Sequence[int]) -> Word:
    """Free reduction (cancel adjacent x x^-1 pairs)."""
    stack: List[int] = []
    for letter in word:
        if stack and stack[-1] == -letter:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


def abelianization(word: Sequence[int], r: int) -> Tuple[int, ...]:
    """Total exponent vector (e_1(w), ..., e_r(w))."""
    e = [0] * r
    for letter in word:
        e[abs(letter) - 1] += 1 if letter > 0 else -1
    return tuple(e)


def format_word(word: Sequence[int]) -> str:
    """
    Letters a, b, c, ... for generators and upper case for inverses.

    Examples:
        >>> format_word((1, -2))
        'aB'
    """
    if any(abs(letter) > 26 for letter in word):
        return " ".join(str(letter) for letter in word)
    return "".join(
        (
            string.ascii_lowercase[letter - 1]
            if letter > 0
            else string.ascii_uppercase[-letter - 1]
        )
        for letter in word
    )


def parse_word(text: str) -> Word:
    out = []
    for ch in text.strip():
        if ch in string.ascii_lowercase:
            out.append(string.ascii_lowercase.index(ch) + 1)
        elif ch in string.ascii_uppercase:
            out.append(-(string.ascii_uppercase.index(ch) + 1))
        else:
            raise PreconditionError(f"invalid letter '{ch}' in word '{text}'")
    return tuple(out)


def count_cyclically_reduced(r: int, m: int) -> int:
    """
    Number of cyclically reduced words of length m in F_r:
    (2r-1)^m + 1 + (r-1)(1 + (-1)^m).
    """
    FreeRank(r)
    if m < 1:
        raise PreconditionError(f"word length must be >= 1, got {m}")
    return (2 * r - 1) ** m + 1 + (r - 1) * (1 + (-1) ** m)


def count_reduced(r: int, m: int) -> int:
    """Number of reduced words of length m >= 1: 2r(2r-1)^(m-1)."""
    FreeRank(r)
    if m < 1:
        raise PreconditionError(f"word length must be >= 1, got {m}")
    return 2 * r * (2 * r - 1) ** (m - 1)


def _check_guard(r: int, m: int):
    size = (2 * r) ** m
    if size > BRUTE_FORCE_LIMIT:
        raise GuardExceededError(
            f"brute force over words of length {m} in F_{r}", size, BRUTE_FORCE_LIMIT
        )


def iter_reduced_words(r: int, m: int) -> Iterator[Word]:
    """Reduced words of length m in lexicographic order of the vertex ordering."""
    letters = alphabet(r)

    def extend(prefix: List[int]):
        if len(prefix) == m:
            yield tuple(prefix)
            return
        for letter in letters:
            if prefix and prefix[-1] == -letter:
                continue
            prefix.append(letter)
            yield from extend(prefix)
            prefix.pop()

    return extend([])


def brute_force_cyclic_words(r: int, m: int) -> List[Word]:
    """
    All cyclically reduced words of length m, listed in lexicographic order
    (letters ordered as the vertices of G_r).

    Raises:
        GuardExceededError: if (2r)^m exceeds the brute-force guard.
    """
    FreeRank(r)
    if m < 1:
        raise PreconditionError(f"word length must be >= 1, got {m}")
    _check_guard(r, m)
    words = [w for w in iter_reduced_words(r, m) if is_cyclically_reduced(w)]
    logger.debug(f"brute_force_cyclic_words(r={r}, m={m}): {len(words)} words")
    return words


def brute_force_reduced_count(r: int, m: int) -> int:
    FreeRank(r)
    _check_guard(r, m)
    return sum(1 for _ in iter_reduced_words(r, m))
