"""Log-Mahler measures of integer polynomials, two independent ways.

The root route applies Jensen's formula, m(f) = log|lead(f)| plus the sum
of log|root| over roots outside the unit circle, with roots from companion
matrix eigenvalues. The quadrature route integrates log|f| over the unit
circle on uniform trapezoid nodes; unit-circle zeros make the plain sum
converge only like (log N)/N, so their local log-singularities (which
integrate to zero exactly) are subtracted first. Circle zeros are located
by one-dimensional bisection on |f|^2 of the squarefree factors, which
keeps the two routes independent of each other.

Also here: the position polynomials of a binary column partition and the
exact Kronecker certificate for vanishing Mahler measure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ZeroPolynomial
from .polynomial import IntPolynomial
from .substitution import ColumnPartition, Substitution, column_partition

METHOD_ROOTS = "Roots"
METHOD_QUADRATURE = "Quadrature"

#: quadrature nodes within this distance of a located circle zero are
#: recomputed from the deflated polynomial
_NEAR_ZERO_RADIUS = 1e-3
#: node values below this trigger the half-width node shift fallback
_NODE_FLOOR = 1e-14


class PartitionPolynomials(NamedTuple):
    """0/1 polynomials supported on the four column classes."""

    coincident_a: IntPolynomial
    coincident_b: IntPolynomial
    identity: IntPolynomial
    swap: IntPolynomial


@dataclass(frozen=True)
class MahlerResult:
    value: float
    roots: tuple[complex, ...]
    method: str
    is_zero_certified: bool


def partition_polynomials(cp: ColumnPartition) -> PartitionPolynomials:
    """Indicator polynomials of the four column classes.

    Their sum is the unit-coefficient polynomial 1 + u + ... + u^(L-1),
    an exact identity at the coefficient level.
    """
    return PartitionPolynomials(
        coincident_a=IntPolynomial.from_support(cp.coincident_a),
        coincident_b=IntPolynomial.from_support(cp.coincident_b),
        identity=IntPolynomial.from_support(cp.bijective_id),
        swap=IntPolynomial.from_support(cp.bijective_swap),
    )


def column_difference(source: Substitution | ColumnPartition) -> IntPolynomial:
    """Identity-column polynomial minus swap-column polynomial.

    This difference is the multiplier of the common invariant vector
    (1, -1) of every binary Fourier matrix, and its log-Mahler measure is
    the whole story for the closed-form exponents. Zero iff the rule is
    degenerate.
    """
    cp = source if isinstance(source, ColumnPartition) else column_partition(source)
    pp = partition_polynomials(cp)
    return pp.identity - pp.swap


def norm_bounds(f: IntPolynomial) -> tuple[float, float]:
    """Coefficient 1-norm and 2-norm.

    By Parseval the 2-norm equals the L2 norm of f on the unit circle, so
    exp(m(f)) <= l2 <= l1 with the first inequality strict unless |f| is
    constant on the circle and the second strict unless f is a monomial.
    """
    if f.is_zero:
        raise ZeroPolynomial("norms of the zero polynomial are degenerate")
    l1 = float(sum(abs(c) for c in f.coeffs))
    l2 = math.sqrt(float(sum(c * c for c in f.coeffs)))
    return l1, l2


def kronecker_certify(f: IntPolynomial) -> bool:
    """Exact test whether f = +-u^j times a product of cyclotomic polynomials.

    By Kronecker's theorem this is equivalent to m(f) = 0 for integer
    polynomials. Decided without floating point: strip the monomial
    factor, reject unless both extreme coefficients are units, then divide
    the squarefree part by gcd(., u^n - 1) for every candidate order n
    (phi(n) <= deg forces n <= 2 deg^2). Repeated cyclotomic factors are
    handled by the squarefree reduction.
    """
    if f.is_zero:
        raise ZeroPolynomial("the zero polynomial has no Mahler measure")
    _, f0 = f.monomial_split()
    if f0.degree == 0:
        return abs(f0.coeffs[0]) == 1
    if abs(f0.leading) != 1 or abs(f0.coeffs[0]) != 1:
        return False
    _, factors = f0.squarefree_decomposition()
    g = IntPolynomial.one()
    for h, _ in factors:
        g = g * h
    bound = 2 * g.degree * g.degree + 1
    for n in range(1, bound + 1):
        if g.degree == 0:
            break
        cyc = IntPolynomial.monomial(n, 1) - IntPolynomial.one()
        common = g.gcd(cyc)
        if common.degree > 0:
            g = g.exact_div(common)
    return g.degree == 0 and abs(g.coeffs[0]) == 1


def mahler_roots(f: IntPolynomial) -> MahlerResult:
    """Log-Mahler measure via Jensen's formula on the roots.

    Roots come from companion-matrix eigenvalues of the squarefree factors
    (so multiple roots never degrade the eigenproblem), each polished by
    one Newton step. The standard leading-coefficient form of Jensen's
    formula is used: m(f) = log|a_n| + sum log max(1, |root|).
    """
    if f.is_zero:
        raise ZeroPolynomial("the zero polynomial has no Mahler measure")
    unit, factors = f.squarefree_decomposition()
    total = math.log(abs(unit))
    roots: list[complex] = []
    for h, mult in factors:
        shift, h0 = h.monomial_split()
        roots.extend([0j] * (shift * mult))
        if h0.degree == 0:
            total += mult * math.log(abs(h0.coeffs[0]))
            continue
        hc = np.array(h0.coeffs[::-1], dtype=float)
        r = np.roots(hc)
        dh = np.polyder(hc)
        denom = np.polyval(dh, r)
        ok = np.abs(denom) > 1e-30
        r[ok] = r[ok] - np.polyval(hc, r[ok]) / denom[ok]
        total += mult * (math.log(abs(h0.leading)) + float(np.sum(np.log(np.maximum(1.0, np.abs(r))))))
        roots.extend(list(r) * mult)
    return MahlerResult(
        value=total,
        roots=tuple(roots),
        method=METHOD_ROOTS,
        is_zero_certified=kronecker_certify(f),
    )


def _autocorrelation_slope(coeffs: tuple[int, ...]):
    """Derivative of |f(e^{2 pi i k})|^2 as an exact trig polynomial in k."""
    a = np.array(coeffs, dtype=float)
    n = len(a)
    c = np.correlate(a, a, mode="full")
    ms = np.arange(1, n)
    cm = c[n:]

    def slope(k):
        k = np.asarray(k, dtype=float)
        return -4 * np.pi * np.sum(
            ms[:, None] * cm[:, None] * np.sin(2 * np.pi * np.outer(ms, k)), axis=0
        ).reshape(k.shape)

    return slope


def _circle_zeros_squarefree(h: IntPolynomial) -> list[float]:
    """Unit-circle zeros of a squarefree integer polynomial, as k in [0, 1).

    Grid-scan |h|^2 for small local minima, then bisect its derivative;
    simple zeros give a sign change that pins k to near machine precision.
    """
    deg = h.degree
    if deg <= 0:
        return []
    slope = _autocorrelation_slope(h.coeffs)
    grid = max(2048, 64 * deg)
    k = np.arange(grid) / grid
    F = np.abs(h.on_circle(k)) ** 2
    scale = max(1.0, float(F.max()))
    zeros: list[float] = []
    for j in range(grid):
        if not (F[j] <= F[(j - 1) % grid] and F[j] <= F[(j + 1) % grid] and F[j] < 1e-3 * scale):
            continue
        lo, hi = k[j] - 1.0 / grid, k[j] + 1.0 / grid
        if not (slope(lo) < 0 < slope(hi)):
            lo, hi = k[j] - 2.0 / grid, k[j] + 2.0 / grid
            if not (slope(lo) < 0 < slope(hi)):
                continue
        for _ in range(70):
            mid = 0.5 * (lo + hi)
            if slope(mid) < 0:
                lo = mid
            else:
                hi = mid
        t = (0.5 * (lo + hi)) % 1.0
        if abs(h.on_circle(t)) ** 2 < 1e-16 * scale:
            zeros.append(float(t))
    return zeros


def circle_zeros(f: IntPolynomial) -> list[tuple[float, int]]:
    """Unit-circle zeros of f as (k, multiplicity) pairs, k in [0, 1).

    Multiplicities come exactly from the squarefree decomposition; only
    the location of simple zeros is numerical.
    """
    _, factors = f.squarefree_decomposition()
    out: list[tuple[float, int]] = []
    for h, mult in factors:
        out.extend((t, mult) for t in _circle_zeros_squarefree(h))
    return sorted(out)


def _wrapped_distance(k: np.ndarray, t: float) -> np.ndarray:
    return np.abs(((k - t + 0.5) % 1.0) - 0.5)


def mahler_quadrature(f: IntPolynomial, nodes: int = 1 << 16) -> MahlerResult:
    """Log-Mahler measure as the unit-circle average of log|f|.

    Uniform trapezoid nodes carry the smooth part. For each unit-circle
    zero at t with multiplicity p the singular factor p*log|u - e^{2 pi i t}|^2
    is subtracted before summation and added back as its exact integral,
    which is zero; nodes within a small window of a zero evaluate the
    deflated polynomial instead of forming a 0/0 ratio. Any remaining
    near-zero node (an unlocated singularity) is shifted by half a node
    width, the integrable-singularity fallback.
    """
    if f.is_zero:
        raise ZeroPolynomial("the zero polynomial has no Mahler measure")
    if nodes < 2:
        raise ValueError("need at least 2 quadrature nodes")
    zeros = circle_zeros(f)
    k = np.arange(nodes) / nodes
    absf = np.abs(f.on_circle(k))
    g = 2.0 * np.log(np.maximum(absf, 1e-300))
    near = np.zeros(nodes, dtype=bool)
    overlap = np.zeros(nodes, dtype=np.int8)
    close_masks = []
    for t, p in zeros:
        gap = 4.0 * np.sin(np.pi * (k - t)) ** 2
        g -= p * np.log(np.maximum(gap, 1e-300))
        close = _wrapped_distance(k, t) < _NEAR_ZERO_RADIUS
        close_masks.append(close)
        near |= close
        overlap += close
    for (t, p), close in zip(zeros, close_masks):
        # nodes near exactly this zero: evaluate the deflated polynomial
        mask = close & (overlap == 1)
        if not mask.any():
            continue
        q = _deflate(f.coeffs, t, p)
        kj = k[mask]
        val = 2.0 * np.log(np.abs(np.polyval(q, np.exp(2j * np.pi * kj))))
        for t2, p2 in zeros:
            if t2 != t:
                val -= p2 * np.log(4.0 * np.sin(np.pi * (kj - t2)) ** 2)
        g[mask] = val
    for j in np.nonzero(near & (overlap >= 2))[0]:
        g[j] = _deflated_log(f, zeros, float(k[j]))
    stray = (~near) & (absf < _NODE_FLOOR)
    if stray.any():
        shifted = k[stray] + 0.5 / nodes
        g_shifted = 2.0 * np.log(np.abs(f.on_circle(shifted)))
        for t, p in zeros:
            g_shifted -= p * np.log(4.0 * np.sin(np.pi * (shifted - t)) ** 2)
        g[stray] = g_shifted
    return MahlerResult(
        value=0.5 * float(np.mean(g)),
        roots=(),
        method=METHOD_QUADRATURE,
        is_zero_certified=kronecker_certify(f),
    )


def _deflate(coeffs: tuple[int, ...], t: float, power: int) -> np.ndarray:
    """Coefficients (highest first) of f / (u - e^{2 pi i t})^power by
    synthetic division; remainders are dropped (they are ~eps by construction)."""
    q = np.array(coeffs[::-1], dtype=complex)
    xi = np.exp(2j * np.pi * t)
    for _ in range(power):
        out = np.empty(len(q) - 1, dtype=complex)
        acc = 0j
        for i in range(len(q) - 1):
            acc = q[i] + xi * acc
            out[i] = acc
        q = out
    return q


def _deflated_log(f: IntPolynomial, zeros: list[tuple[float, int]], kj: float) -> float:
    """log(|f|^2 / prod |u - zero|^2p) at a node close to several circle
    zeros at once (rare: distinct zeros closer than twice the window)."""
    q = np.array(f.coeffs[::-1], dtype=complex)
    acc = 0.0
    for t, p in zeros:
        if float(_wrapped_distance(np.asarray(kj), t)) < _NEAR_ZERO_RADIUS:
            q = _deflate(tuple(q[::-1]), t, p)
        else:
            acc -= p * math.log(4.0 * math.sin(math.pi * (kj - t)) ** 2)
    u = np.exp(2j * np.pi * kj)
    return 2.0 * math.log(abs(complex(np.polyval(q, u)))) + acc
