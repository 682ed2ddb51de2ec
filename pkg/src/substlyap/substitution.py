"""Constant-length substitution rules and their combinatorics.

A substitution maps every letter of a finite alphabet to a word of one
common length L >= 2. This module parses and validates rules, checks
primitivity, classifies columns of binary rules, generates fixed-point
prefixes, and estimates pair-correlation frequencies by direct counting.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .errors import (
    LengthMismatch,
    NotAFixedSeed,
    NotBinary,
    NotPrimitive,
    RuleSyntaxError,
    UnknownLetter,
)

# column classification tags for binary rules
BIJECTIVE = "Bijective"
HAS_COINCIDENCE = "HasCoincidence"
DEGENERATE = "Degenerate"

_RULE_RE = re.compile(r"^\s*(\S)\s*->\s*(\S+)\s*$")


@dataclass(frozen=True)
class Substitution:
    """A validated constant-length substitution.

    alphabet : ordered tuple of single-character letters (d >= 2)
    images   : image word of each letter, aligned with ``alphabet``
    """

    alphabet: tuple[str, ...]
    images: tuple[str, ...]

    def __post_init__(self):
        if len(self.alphabet) < 2:
            raise RuleSyntaxError("alphabet needs at least two letters")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise RuleSyntaxError("duplicate letters in alphabet")
        if any(len(a) != 1 for a in self.alphabet):
            raise RuleSyntaxError("letters must be single characters")
        if len(self.images) != len(self.alphabet):
            raise RuleSyntaxError("every letter needs exactly one image word")
        lengths = {len(w) for w in self.images}
        if len(lengths) != 1:
            raise LengthMismatch(f"image lengths differ: {sorted(lengths)}")
        (length,) = lengths
        if length < 2:
            raise LengthMismatch(f"common image length must be >= 2, got {length}")
        letters = set(self.alphabet)
        for a, w in zip(self.alphabet, self.images):
            for ch in w:
                if ch not in letters:
                    raise UnknownLetter(f"image of {a!r} uses undeclared symbol {ch!r}")

    @property
    def size(self) -> int:
        """Number of letters d."""
        return len(self.alphabet)

    @property
    def length(self) -> int:
        """Common image length L."""
        return len(self.images[0])

    @property
    def rules(self) -> dict[str, str]:
        return dict(zip(self.alphabet, self.images))

    def index(self, letter: str) -> int:
        try:
            return self.alphabet.index(letter)
        except ValueError:
            raise UnknownLetter(f"{letter!r} is not in the alphabet") from None

    def image(self, letter: str) -> str:
        return self.images[self.index(letter)]

    def apply(self, word: str) -> str:
        """Substitute every letter of ``word``."""
        return "".join(self.image(ch) for ch in word)

    def matrix(self) -> np.ndarray:
        """Substitution matrix M, M[a, b] = number of a's in the image of b."""
        d = self.size
        M = np.zeros((d, d), dtype=np.int64)
        for b, w in enumerate(self.images):
            for ch in w:
                M[self.index(ch), b] += 1
        return M

    def relabeled(self, mapping: Mapping[str, str]) -> "Substitution":
        """Apply a letter bijection to both sides of every rule."""
        new_images = {mapping[a]: "".join(mapping[ch] for ch in w) for a, w in self.rules.items()}
        return Substitution(self.alphabet, tuple(new_images[a] for a in self.alphabet))

    def __str__(self) -> str:
        return ";".join(f"{a}->{w}" for a, w in zip(self.alphabet, self.images))


@dataclass(frozen=True)
class ColumnPartition:
    """The four index sets splitting the columns of a binary rule.

    coincident_a / coincident_b hold positions where both images carry the
    first / second letter; bijective_id holds positions where the images
    read (a, b) and bijective_swap positions where they read (b, a).
    """

    coincident_a: frozenset[int]
    coincident_b: frozenset[int]
    bijective_id: frozenset[int]
    bijective_swap: frozenset[int]

    @property
    def length(self) -> int:
        return (
            len(self.coincident_a)
            + len(self.coincident_b)
            + len(self.bijective_id)
            + len(self.bijective_swap)
        )

    @property
    def coincidences(self) -> frozenset[int]:
        return self.coincident_a | self.coincident_b


@dataclass(frozen=True)
class CorrelationTable:
    """Empirical pair-correlation frequencies from a fixed-point prefix.

    Counts are kept as exact integers; ``frequency`` divides by the window
    on demand. The displacement convention: counts[(a, b, z)] is the number
    of window positions i with prefix[i] == a and prefix[i + z] == b.
    """

    counts: Mapping[tuple[str, str, int], int] = field(repr=False)
    window: int = 0

    def frequency(self, alpha: str, beta: str, z: int) -> float:
        return self.counts.get((alpha, beta, z), 0) / self.window

    @property
    def entries(self) -> dict[tuple[str, str, int], float]:
        return {key: c / self.window for key, c in self.counts.items()}


def parse(text: str) -> Substitution:
    """Parse rule text like ``"a->ab;b->ba"`` or its JSON form.

    The JSON form is ``{"rules": {"a": "ab", "b": "ba"}}`` with the
    alphabet inferred from key order.
    """
    stripped = text.strip()
    if not stripped:
        raise RuleSyntaxError("empty rule string")
    if stripped.startswith("{"):
        try:
            doc = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise RuleSyntaxError(f"bad JSON rule document: {exc}") from exc
        rules = doc.get("rules") if isinstance(doc, dict) else None
        if not isinstance(rules, dict) or not rules:
            raise RuleSyntaxError('JSON form must look like {"rules": {"a": "ab", ...}}')
        pairs = [(str(k), str(v)) for k, v in rules.items()]
    else:
        pairs = []
        for clause in stripped.split(";"):
            m = _RULE_RE.match(clause)
            if not m:
                raise RuleSyntaxError(f"cannot parse rule clause {clause.strip()!r}")
            pairs.append((m.group(1), m.group(2)))
    letters = [a for a, _ in pairs]
    if len(set(letters)) != len(letters):
        raise RuleSyntaxError("duplicate rule for a letter")
    return Substitution(tuple(letters), tuple(w for _, w in pairs))


def is_primitive(s: Substitution) -> bool:
    """True iff some power of the substitution matrix is strictly positive.

    By Wielandt's bound it suffices to look at powers up to (d-1)^2 + 1;
    the check runs in the boolean semiring so large powers cannot overflow.
    """
    d = s.size
    reach = s.matrix() > 0
    step = reach.copy()
    for _ in range((d - 1) ** 2 + 1):
        if reach.all():
            return True
        step = (step.astype(np.int8) @ reach.astype(np.int8)) > 0
        if step.all():
            return True
    return False


def column_partition(s: Substitution) -> ColumnPartition:
    """Split column positions of a binary rule into the four standard sets."""
    if s.size != 2:
        raise NotBinary(f"column partition needs a binary alphabet, got d={s.size}")
    a, b = s.alphabet
    wa, wb = s.images
    ca, cb, pa, pb = set(), set(), set(), set()
    for i, (x, y) in enumerate(zip(wa, wb)):
        if x == y == a:
            ca.add(i)
        elif x == y == b:
            cb.add(i)
        elif (x, y) == (a, b):
            pa.add(i)
        else:
            pb.add(i)
    return ColumnPartition(frozenset(ca), frozenset(cb), frozenset(pa), frozenset(pb))


def classify_columns(s: Substitution) -> str:
    """One of BIJECTIVE, HAS_COINCIDENCE, DEGENERATE for a binary rule."""
    cp = column_partition(s)
    n_coincident = len(cp.coincidences)
    if n_coincident == s.length:
        return DEGENERATE
    if n_coincident == 0:
        return BIJECTIVE
    return HAS_COINCIDENCE


def _seed_letters(seed) -> tuple[str, str]:
    if isinstance(seed, str):
        if "|" in seed:
            left, _, right = seed.partition("|")
        elif len(seed) == 2:
            left, right = seed[0], seed[1]
        else:
            raise RuleSyntaxError(f"seed must look like 'a|b', got {seed!r}")
    else:
        left, right = seed
    if len(left) != 1 or len(right) != 1:
        raise RuleSyntaxError(f"seed letters must be single characters, got {seed!r}")
    return left, right


def _fixing_power(s: Substitution, letter: str) -> int | None:
    """Smallest p <= d with s^p(letter) starting in letter, else None.

    Only the leading letter needs tracking: the first letter of s^p(x) is
    the p-fold iterate of x under x -> first letter of its image.
    """
    current = letter
    for p in range(1, s.size + 1):
        current = s.image(current)[0]
        if current == letter:
            return p
    return None


def fixed_point_prefix(s: Substitution, seed, n: int) -> str:
    """Apply the rule n times to the right seed letter.

    The result is the length-L^n prefix of a one-sided fixed point of
    (a power of) the substitution, provided the right seed letter starts
    its own image under some power, which is validated first.
    """
    left, right = _seed_letters(seed)
    s.index(left)
    if _fixing_power(s, right) is None:
        raise NotAFixedSeed(f"no power up to {s.size} maps {right!r} to a word starting with it")
    word = right
    for _ in range(n):
        word = s.apply(word)
    return word


def find_legal_seed(s: Substitution) -> str:
    """First two-letter seed 'x|y' legal for a bi-infinite fixed point.

    Candidates are the two-letter factors of s^k(alpha) for k <= d + 2,
    filtered to seeds whose right letter starts its own image under some
    power; ties break lexicographically, so the result is deterministic.
    """
    if not is_primitive(s):
        raise NotPrimitive("legal-seed search assumes primitivity")
    factors: set[str] = set()
    for letter in s.alphabet:
        word = letter
        for _ in range(s.size + 2):
            word = s.apply(word)
            factors.update(word[i : i + 2] for i in range(len(word) - 1))
    for pair in sorted(factors):
        if _fixing_power(s, pair[1]) is not None:
            return f"{pair[0]}|{pair[1]}"
    raise NotAFixedSeed("no legal two-letter seed found")


def _prefix_of_length(s: Substitution, letter: str, min_len: int) -> str:
    """Fixed-point prefix starting at ``letter`` of length >= min_len."""
    p = _fixing_power(s, letter)
    if p is None:
        raise NotAFixedSeed(f"{letter!r} does not start its own image under any power")
    word = letter
    while len(word) < min_len:
        for _ in range(p):
            word = s.apply(word)
    return word


def correlation_estimate(s: Substitution, window: int, max_z: int) -> CorrelationTable:
    """Count pair frequencies on a fixed-point prefix.

    For z >= 0 all window positions i in [0, window) are paired with
    i + z inside a prefix of length window + max_z; negative displacements
    are filled in by the counting symmetry count(a, b, z) = count(b, a, -z),
    which makes that symmetry exact by construction.
    """
    if not is_primitive(s):
        raise NotPrimitive("correlation frequencies need a primitive rule")
    if window < s.length**2:
        raise ValueError(f"window must be at least L^2 = {s.length ** 2}")
    seed = find_legal_seed(s)
    prefix = _prefix_of_length(s, seed[-1], window + max_z)
    code_of = {a: i for i, a in enumerate(s.alphabet)}
    codes = np.array([code_of[ch] for ch in prefix[: window + max_z]], dtype=np.int8)
    counts: dict[tuple[str, str, int], int] = {}
    for z in range(max_z + 1):
        head = codes[:window]
        shifted = codes[z : z + window]
        for a in s.alphabet:
            for b in s.alphabet:
                c = int(np.count_nonzero((head == code_of[a]) & (shifted == code_of[b])))
                counts[(a, b, z)] = c
                if z > 0:
                    counts[(b, a, -z)] = c
    return CorrelationTable(counts=counts, window=window)


def periodicity_hint(s: Substitution, prefix_len: int = 4096, max_period: int = 64) -> int | None:
    """Smallest period p <= max_period of a long fixed-point prefix, if any.

    A hit is only a heuristic warning sign; it certifies nothing about the
    hull. Returns None when no small period fits.
    """
    if not is_primitive(s):
        return None
    seed = find_legal_seed(s)
    prefix = _prefix_of_length(s, seed[-1], prefix_len)[:prefix_len]
    for p in range(1, max_period + 1):
        if all(prefix[i] == prefix[i - p] for i in range(p, len(prefix))):
            return p
    return None
