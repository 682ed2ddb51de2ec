"""Digit matrices, the Fourier matrix B(k), and the algebra they generate.

B(k) collects the relative positions of letters inside the substituted
words: entry (a, b) is a 0/1-coefficient polynomial in u = exp(2 pi i k)
supported on the positions where letter a occurs in the image of b.
B(0) is the substitution matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import NoSuchSymmetry
from .polynomial import IntPolynomial
from .substitution import Substitution

IDA_TM_TYPE = "TMtype"
IDA_PD_TYPE = "PDtype"
IDA_FULL = "Full"
IDA_OTHER = "Other"


@dataclass(frozen=True)
class TrigMatrix:
    """Square matrix of integer polynomials in u = exp(2 pi i k).

    Entries are exact; evaluation at a frequency is the only floating
    point step, which keeps determinant and partition identities exact
    at the coefficient level.
    """

    entries: tuple[tuple[IntPolynomial, ...], ...]

    def __post_init__(self):
        d = len(self.entries)
        if any(len(row) != d for row in self.entries):
            raise ValueError("TrigMatrix must be square")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[IntPolynomial]]) -> "TrigMatrix":
        return cls(tuple(tuple(row) for row in rows))

    @property
    def dim(self) -> int:
        return len(self.entries)

    def evaluate(self, k: float) -> np.ndarray:
        """Complex d x d matrix at u = exp(2 pi i k); 1-periodic in k."""
        u = np.exp(2j * np.pi * float(k))
        return np.array([[p(u) for p in row] for row in self.entries], dtype=complex)

    def evaluate_many(self, ks: np.ndarray) -> np.ndarray:
        """Stacked evaluation, shape (len(ks), d, d)."""
        ks = np.asarray(ks, dtype=float)
        u = np.exp(2j * np.pi * ks)
        d = self.dim
        out = np.zeros((ks.size, d, d), dtype=complex)
        for a in range(d):
            for b in range(d):
                p = self.entries[a][b]
                if not p.is_zero:
                    out[:, a, b] = p(u)
        return out

    def det_polynomial(self) -> IntPolynomial:
        """Exact determinant by cofactor expansion (dimensions here are tiny)."""
        d = self.dim
        if d == 1:
            return self.entries[0][0]
        if d == 2:
            (a, b), (c, e) = self.entries
            return a * e - b * c
        total = IntPolynomial.zero()
        for j in range(d):
            minor = TrigMatrix(tuple(row[:j] + row[j + 1 :] for row in self.entries[1:]))
            term = self.entries[0][j] * minor.det_polynomial()
            total = total + (term if j % 2 == 0 else -term)
        return total

    def scaled(self, factor: int) -> "TrigMatrix":
        return TrigMatrix(tuple(tuple(p * factor for p in row) for row in self.entries))


@dataclass(frozen=True)
class IdaDescription:
    """Dimension, orthonormal basis, and type tag of the generated algebra."""

    dimension: int
    basis: tuple[np.ndarray, ...]
    type_tag: str


def digit_matrices(s: Substitution) -> list[np.ndarray]:
    """One 0/1 matrix per column position x: entry (a, b) is 1 iff the
    image of b carries letter a at position x. Their sum is B(0)."""
    d, L = s.size, s.length
    mats = [np.zeros((d, d), dtype=np.int64) for _ in range(L)]
    for b, w in enumerate(s.images):
        for x, ch in enumerate(w):
            mats[x][s.index(ch), b] = 1
    return mats


def fourier_matrix(s: Substitution) -> TrigMatrix:
    """B(k) with exact polynomial entries, built column by column."""
    d = s.size
    support: dict[tuple[int, int], list[int]] = {}
    for b, w in enumerate(s.images):
        for x, ch in enumerate(w):
            support.setdefault((s.index(ch), b), []).append(x)
    rows = [
        [IntPolynomial.from_support(support.get((a, b), ())) for b in range(d)]
        for a in range(d)
    ]
    return TrigMatrix.from_rows(rows)


def kronecker_lift(B: TrigMatrix, k: float) -> np.ndarray:
    """B(k) tensor conj(B(k)), the d^2 x d^2 matrix driving pair correlations."""
    Bk = B.evaluate(k)
    return np.kron(Bk, np.conj(Bk))


def algebra_dimension(
    generators: Iterable[np.ndarray], tol: float = 1e-9
) -> tuple[int, tuple[np.ndarray, ...]]:
    """Dimension and orthonormal basis of the complex algebra generated by
    the matrices (span of all nonempty products, closed by iterated rank
    extension until stable).

    Rank decisions use singular values of unit-normalized, vectorized
    matrices against ``tol``.
    """
    gens = [np.asarray(g, dtype=complex) for g in generators]
    if not gens:
        return 0, ()
    d = gens[0].shape[0]

    def orthonormal_rows(stack: np.ndarray) -> np.ndarray:
        norms = np.linalg.norm(stack, axis=1)
        stack = stack[norms > tol] / norms[norms > tol, None]
        if stack.size == 0:
            return np.zeros((0, d * d), dtype=complex)
        _, sv, vh = np.linalg.svd(stack, full_matrices=False)
        return vh[sv > tol]

    basis = orthonormal_rows(np.array([g.flatten() for g in gens]))
    while True:
        mats = [v.reshape(d, d) for v in basis]
        prods = [(m1 @ m2).flatten() for m1, m2 in product(mats, mats)]
        new_basis = orthonormal_rows(np.vstack([basis, np.array(prods)]))
        if new_basis.shape[0] == basis.shape[0]:
            basis = new_basis
            break
        basis = new_basis
    return basis.shape[0], tuple(v.reshape(d, d) for v in basis)


def ida(s: Substitution, tol: float = 1e-9) -> IdaDescription:
    """The inflation displacement algebra: the complex matrix algebra
    generated by the digit matrices (equivalently by the family B(k)).

    For binary non-degenerate rules the dimension is 2 (Thue-Morse type,
    bijective) or 3 (period-doubling type, with coincidence).
    """
    dim, basis = algebra_dimension(digit_matrices(s), tol=tol)
    d = s.size
    if dim == d * d:
        tag = IDA_FULL
    elif d == 2 and dim == 2:
        tag = IDA_TM_TYPE
    elif d == 2 and dim == 3:
        tag = IDA_PD_TYPE
    else:
        tag = IDA_OTHER
    return IdaDescription(dimension=dim, basis=basis, type_tag=tag)


def ida_from_samples(
    s: Substitution, ks: Sequence[float] | None = None, tol: float = 1e-9
) -> int:
    """Dimension of the algebra generated by sampled B(k) evaluations.

    For generic samples this coincides with the digit-matrix algebra;
    used as a consistency check, not a proof.
    """
    B = fourier_matrix(s)
    if ks is None:
        rng = np.random.default_rng(171717)
        ks = rng.uniform(size=5)
    dim, _ = algebra_dimension([B.evaluate(k) for k in ks], tol=tol)
    return dim


def _validated_pairing(s: Substitution, pairing: Mapping[str, str]) -> dict[str, str]:
    full: dict[str, str] = {}
    for a, b in pairing.items():
        full[a] = b
        full[b] = a
    if set(full) != set(s.alphabet):
        raise NoSuchSymmetry("pairing must involve every letter exactly once")
    if any(full[a] == a for a in full):
        raise NoSuchSymmetry("pairing must be fixed-point free")
    if any(full[full[a]] != a for a in full):
        raise NoSuchSymmetry("pairing must be an involution")
    swapped = s.relabeled(full)
    if swapped.rules != s.rules:
        raise NoSuchSymmetry("substitution does not commute with the letter swap")
    return full


def symmetry_reduce(s: Substitution, pairing: Mapping[str, str]) -> tuple[TrigMatrix, TrigMatrix]:
    """Block-diagonalize B(k) along a letter-swap symmetry.

    The swap splits C^d into the symmetric span of s_j = e_{r_j} + e_{paired(r_j)}
    and the antisymmetric span of d_j = e_{r_j} - e_{paired(r_j)}, both
    B(k)-invariant whenever the substitution commutes with the swap, with
    r_1, ..., r_m the pair representatives in alphabet order. Returns the
    exact polynomial blocks, symmetric first. The symmetric block is
    expressed in the basis (s_1, s_1 - s_2, ..., s_1 - s_m), which turns
    kernel directions into explicit zero columns; the antisymmetric block
    uses the plain d_j basis.

    Because images of (anti)symmetric vectors are again (anti)symmetric,
    their coordinates can be read off from the representative rows, so
    every entry stays an exact integer polynomial.
    """
    if s.size % 2 != 0:
        raise NoSuchSymmetry("pairing needs an even alphabet")
    full = _validated_pairing(s, pairing)
    reps: list[str] = []
    seen: set[str] = set()
    for a in s.alphabet:
        if a not in seen:
            reps.append(a)
            seen.update((a, full[a]))
    m = len(reps)
    B = fourier_matrix(s)

    def entry(a: str, b: str) -> IntPolynomial:
        return B.entries[s.index(a)][s.index(b)]

    # coordinates of B s_j in the s-basis and of B d_j in the d-basis
    sym_cols = [[entry(ri, rj) + entry(ri, full[rj]) for ri in reps] for rj in reps]
    anti_cols = [[entry(ri, rj) - entry(ri, full[rj]) for ri in reps] for rj in reps]

    def to_f_coords(c: list[IntPolynomial]) -> list[IntPolynomial]:
        # f_1 = s_1, f_j = s_1 - s_j: alpha_j = -c_j (j >= 2), alpha_1 = sum c_i
        head = c[0]
        for cj in c[1:]:
            head = head + cj
        return [head] + [-cj for cj in c[1:]]

    f_cols = [to_f_coords(sym_cols[0])]
    for j in range(1, m):
        diff = [sym_cols[0][i] - sym_cols[j][i] for i in range(m)]
        f_cols.append(to_f_coords(diff))

    sym_block = TrigMatrix.from_rows([[f_cols[j][i] for j in range(m)] for i in range(m)])
    anti_block = TrigMatrix.from_rows([[anti_cols[j][i] for j in range(m)] for i in range(m)])
    return sym_block, anti_block
