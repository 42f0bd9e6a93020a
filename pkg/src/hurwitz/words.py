"""Exact combinatorics of two-letter words.

Words over the alphabet {a, b} are packed into integers, most significant
bit first, with b = 1; enumeration is lexicographic with a < b. All counts
are exact (Python integers), and the two inequality predicates evaluate
with exact rationals, so they are meaningful as strict inequalities.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import PreconditionError, ResourceError, ValidationError

ENUMERATION_CAP = 10**7


def binomial(m, k):
    """Exact binomial coefficient with the convention 0 for k < 0 or k > m."""
    if m < 0:
        raise ValidationError(f"binomial requires m >= 0, got m={m}")
    if k < 0 or k > m:
        return 0
    return comb(m, k)


def count_words_with_ab(m, k, s):
    """Number of words with m-k letters a, k letters b and exactly s subwords ab.

    Equals binomial(m-k, s) * binomial(k, s).
    """
    if not 0 <= k <= m:
        raise ValidationError(f"need 0 <= k <= m, got m={m}, k={k}")
    if s < 0:
        raise ValidationError(f"need s >= 0, got s={s}")
    return binomial(m - k, s) * binomial(k, s)


def count_sparse_words(m, k, L):
    """Number of fully alternating words whose a-runs all exceed L.

    Counts words a^{i_1} b a^{i_2} ... a^{i_k} b a^{i_{k+1}} with i_nu > L
    for nu <= k and i_{k+1} >= L; equals the count of maximally alternating
    words of length m - (k+1)L, and 0 whenever m - (k+1)L < 2k.
    """
    if m < 0 or k < 0 or L < 0:
        raise ValidationError(f"need m, k, L >= 0, got ({m}, {k}, {L})")
    reduced = m - (k + 1) * L
    if reduced < 2 * k:
        return 0
    return count_words_with_ab(reduced, k, k)


@dataclass(frozen=True)
class Word:
    """A two-letter word packed into an integer, first letter at the top bit."""

    bits: int
    length: int

    def letters(self):
        return "".join(
            "b" if (self.bits >> (self.length - 1 - j)) & 1 else "a"
            for j in range(self.length)
        )

    @classmethod
    def from_string(cls, text):
        if any(c not in "ab" for c in text):
            raise ValidationError(f"word must use letters a and b only: {text!r}")
        bits = 0
        for c in text:
            bits = (bits << 1) | (1 if c == "b" else 0)
        return cls(bits=bits, length=len(text))

    def __str__(self):
        return self.letters()


def count_ab_subwords(word):
    """Number of positions where letter a is immediately followed by letter b."""
    v, m = word.bits, word.length
    if m < 2:
        return 0
    # an ab at letter positions (j, j+1) is a 1-bit with a 0 just above it
    mask = (1 << (m - 1)) - 1
    return (v & ~(v >> 1) & mask).bit_count()


def enumerate_words(m, k):
    """Yield every word with m-k letters a and k letters b, lexicographically.

    Raises when binomial(m, k) exceeds the enumeration cap. Successive
    bit patterns are generated with Gosper's hack; increasing numeric
    order of the packed word is exactly lexicographic order with a < b.
    """
    if not 0 <= k <= m:
        raise ValidationError(f"need 0 <= k <= m, got m={m}, k={k}")
    total = binomial(m, k)
    if total > ENUMERATION_CAP:
        raise ResourceError(
            f"enumeration of {total} words exceeds the cap of {ENUMERATION_CAP}"
        )
    if k == 0:
        yield Word(bits=0, length=m)
        return
    v = (1 << k) - 1
    limit = 1 << m
    while v < limit:
        yield Word(bits=v, length=m)
        low = v & -v
        carry = v + low
        v = (((carry ^ v) >> 2) // low) | carry


def sparse_run_profile(word):
    """Run lengths (i_1, ..., i_{k+1}) if the word alternates maximally, else None.

    A maximally alternating word has no leading b, no subword bb, and
    reads a^{i_1} b a^{i_2} ... a^{i_k} b a^{i_{k+1}} with every i_nu > 0
    for nu <= k; the trailing run may be empty.
    """
    text = word.letters()
    if not text:
        return (0,)
    runs = []
    current = 0
    for c in text:
        if c == "a":
            current += 1
        else:
            if current == 0:
                return None
            runs.append(current)
            current = 0
    runs.append(current)
    return tuple(runs)


def matches_sparse_pattern(word, L):
    """Whether the word lies in the class counted by count_sparse_words."""
    profile = sparse_run_profile(word)
    if profile is None:
        return False
    *inner, trailing = profile
    return all(i > L for i in inner) and trailing >= L


def _exact(x):
    """Exact rational value of a float or int parameter."""
    return Fraction(x)


def letter_drop_bound_holds(epsilon, L, m, k):
    """Exact check that binomial(m-L, k) >= (1 - epsilon) * binomial(m, k).

    Preconditions: 0 < epsilon < 1, L >= 1 and m >= L * (1 + k/epsilon);
    under them the inequality is guaranteed, so the return value is a
    consistency check rather than new information.
    """
    eps = _exact(epsilon)
    if not 0 < eps < 1:
        raise PreconditionError(f"need 0 < epsilon < 1, got {epsilon}")
    if L < 1 or k < 0 or m < 0:
        raise PreconditionError(f"need L >= 1 and m, k >= 0, got ({L}, {m}, {k})")
    if m < L * (1 + Fraction(k) / eps):
        raise PreconditionError(
            f"need m >= L*(1 + k/epsilon) = {float(L * (1 + Fraction(k) / eps)):.3f}, got m={m}"
        )
    return binomial(m - L, k) >= (1 - eps) * binomial(m, k)


def alternation_dominance_holds(epsilon, S, m, k):
    """Exact check that the first S word-class counts are dominated by the S-th.

    Verifies sum_{s<S} binomial(m-k, s) binomial(k, s)
    < epsilon * binomial(m-k, S) * binomial(k, S) under the preconditions
    0 < epsilon < 1 <= S, m > S^3/epsilon + 2S - 1 and k, m-k >= S.
    """
    eps = _exact(epsilon)
    if not 0 < eps < 1:
        raise PreconditionError(f"need 0 < epsilon < 1, got {epsilon}")
    if S < 1:
        raise PreconditionError(f"need S >= 1, got {S}")
    if m <= Fraction(S**3) / eps + 2 * S - 1:
        raise PreconditionError(
            f"need m > S^3/epsilon + 2S - 1 = {float(Fraction(S**3) / eps + 2 * S - 1):.3f}, "
            f"got m={m}"
        )
    if k < S or m - k < S:
        raise PreconditionError(f"need k and m-k >= S, got m={m}, k={k}, S={S}")
    left = sum(binomial(m - k, s) * binomial(k, s) for s in range(S))
    right = eps * binomial(m - k, S) * binomial(k, S)
    return left < right
