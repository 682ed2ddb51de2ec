"""Lyapunov exponents of Fourier-matrix cocycles, three ways.

Closed form: for a binary non-degenerate rule of length L the exponents
are log sqrt(L) and log sqrt(L) - m(column difference), with m the
log-Mahler measure. Numerically, the outward cocycle is iterated along
orbits of k -> L k mod 1 and its extremal growth rates estimated; the
eigenvalues of the substitution matrix give the inward-iteration
exponents directly.

Numerical design notes. Orbits are kept in exact fixed-point arithmetic
(Python integers with n log2(L) + 64 bits), because the double-precision
x2 map degenerates to the fixed point 0 within ~52 steps. Growth rates
are accumulated by stacked QR flag tracking, which has no dynamic-range
ceiling; plain norm renormalization silently clips spread excursions
beyond log(1/eps) ~ 36. The spread between the extreme rates is the
absolute value of a mean-zero random walk when the true exponents
coincide, so the estimator extrapolates its second moment from two
checkpoints, E[W(m)^2] = spread^2 m^2 + s^2 m, and snaps spreads below a
detection floor to zero: binary constant-length rules leave a wide gap
between spread 0 (Kronecker cases) and the smallest positive Mahler
measures (~0.16 and up) reachable here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateSubstitution,
    ResampleExhausted,
    SingularFamily,
    ZeroPolynomial,
)
from .fourier import TrigMatrix, fourier_matrix
from .mahler import column_difference, mahler_roots
from .polynomial import IntPolynomial
from .substitution import Substitution

METHOD_CLOSED_FORM = "ClosedForm"
METHOD_COCYCLE = "Cocycle"
METHOD_BIRKHOFF = "Birkhoff"
METHOD_INWARD = "InwardEigen"

_MAX_RESAMPLES = 20


@dataclass(frozen=True)
class CocycleConfig:
    """Sampling plan for the numeric cocycle and Birkhoff estimators."""

    iters: int = 2000
    samples: int = 100
    seed: int = 0
    det_floor: float = 1e-13
    burn_in: int = 0
    spread_floor: float = 0.05

    def __post_init__(self):
        if self.iters < 1:
            raise ValueError("iters must be >= 1")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.det_floor <= 0:
            raise ValueError("det_floor must be positive")
        if self.burn_in < 0:
            raise ValueError("burn_in must be >= 0")


@dataclass(frozen=True)
class ExponentPair:
    chi_min: float
    chi_max: float
    method: str
    stderr: float
    samples: int
    iters: int


def closed_form_exponents(s: Substitution) -> ExponentPair:
    """Exact exponents of a binary non-degenerate rule.

    chi_max = log sqrt(L) and chi_min = log sqrt(L) - m, where m is the
    log-Mahler measure of the column difference polynomial; m is reported
    as exactly zero when the Kronecker certificate holds.
    """
    diff = column_difference(s)
    if diff.is_zero:
        raise DegenerateSubstitution(
            "identical images: det B(k) vanishes identically, exponents undefined"
        )
    result = mahler_roots(diff)
    m = 0.0 if result.is_zero_certified else result.value
    half_log_L = 0.5 * math.log(s.length)
    return ExponentPair(
        chi_min=half_log_L - m,
        chi_max=half_log_L,
        method=METHOD_CLOSED_FORM,
        stderr=0.0,
        samples=0,
        iters=0,
    )


class _ExactOrbits:
    """Exact orbits of k -> L k mod 1 for a batch of starting points.

    Each point is a dyadic rational with enough random bits that every
    iterate retains at least 53 significant bits below the float window.
    """

    def __init__(self, L: int, total_steps: int, draws: list[bytes]):
        self.L = L
        self.width = int(math.ceil(total_steps * math.log2(max(L, 2)))) + 64
        self.mask = (1 << self.width) - 1
        self.points = [int.from_bytes(d, "big") & self.mask for d in draws]
        self._shift = self.width - 53

    @classmethod
    def bytes_needed(cls, L: int, total_steps: int) -> int:
        width = int(math.ceil(total_steps * math.log2(max(L, 2)))) + 64
        return (width + 7) // 8

    def floats(self) -> np.ndarray:
        return np.array([float(x >> self._shift) / 2.0**53 for x in self.points])

    def step(self) -> None:
        L, mask = self.L, self.mask
        self.points = [(x * L) & mask for x in self.points]

    def advance(self, steps: int) -> None:
        if steps <= 0:
            return
        mult = pow(self.L, steps, self.mask + 1)
        self.points = [(x * mult) & self.mask for x in self.points]


def _orbit_draws(L: int, total_steps: int, seed: int, sample_ids: list[int], attempts: list[int]) -> list[bytes]:
    nbytes = _ExactOrbits.bytes_needed(L, total_steps)
    return [
        np.random.default_rng([seed, s, a]).bytes(nbytes)
        for s, a in zip(sample_ids, attempts)
    ]


def _qr_flag_rates(
    B: TrigMatrix, L: int, cfg: CocycleConfig
) -> tuple[np.ndarray, np.ndarray, int]:
    """Per-sample accumulated log flag growth at the checkpoint and at the end.

    Returns (r_ck, r_n, ck) with shapes (samples, d). Samples whose orbit
    hits |det B| < det_floor are redrawn from their own stream, at most
    _MAX_RESAMPLES times each.
    """
    d = B.dim
    n, S = cfg.iters, cfg.samples
    ck = max(1, n // 4)
    total = n + cfg.burn_in
    r_ck = np.zeros((S, d))
    r_n = np.zeros((S, d))
    pending = list(range(S))
    attempts = [0] * S
    while pending:
        if max(attempts[s] for s in pending) > _MAX_RESAMPLES:
            raise ResampleExhausted(
                f"{len(pending)} orbit(s) kept hitting |det| < {cfg.det_floor:g}"
            )
        orbits = _ExactOrbits(
            L, total, _orbit_draws(L, total, cfg.seed, pending, [attempts[s] for s in pending])
        )
        orbits.advance(cfg.burn_in)
        S_act = len(pending)
        Q = np.broadcast_to(np.eye(d, dtype=complex), (S_act, d, d)).copy()
        r = np.zeros((S_act, d))
        bad = np.zeros(S_act, dtype=bool)
        r_at_ck = np.zeros((S_act, d))
        for m in range(n):
            ks = orbits.floats()
            Bk = B.evaluate_many(ks)
            bad |= np.abs(np.linalg.det(Bk)) < cfg.det_floor
            Q, R = np.linalg.qr(np.transpose(Bk, (0, 2, 1)) @ Q)
            diag = np.abs(np.diagonal(R, axis1=1, axis2=2))
            r += np.log(np.maximum(diag, 1e-300))
            orbits.step()
            if m + 1 == ck:
                r_at_ck = r.copy()
        still_pending = []
        for i, s in enumerate(pending):
            if bad[i]:
                attempts[s] += 1
                still_pending.append(s)
            else:
                r_ck[s] = r_at_ck[i]
                r_n[s] = r[i]
        pending = still_pending
    return r_ck, r_n, ck


def _pair_from_rates(
    r_ck: np.ndarray, r_n: np.ndarray, ck: int, n: int, L: int, spread_floor: float
) -> tuple[float, float]:
    """Extremal exponents from flag rates of one subset of samples."""

    def estimate(rates_ck: np.ndarray, rates_n: np.ndarray) -> tuple[float, float]:
        w_n = (rates_n[:, 0] - rates_n[:, -1]) / n
        mid = float(np.mean(rates_n[:, 0] + rates_n[:, -1])) / (2 * n)
        if n >= 4 * ck and ck >= 1 and n > ck:
            w_ck = (rates_ck[:, 0] - rates_ck[:, -1]) / ck
            spread_sq = (4.0 * float(np.mean(w_n**2)) - float(np.mean(w_ck**2))) / 3.0
        else:
            spread_sq = float(np.mean(w_n**2))
        spread = math.sqrt(max(0.0, spread_sq))
        if spread < spread_floor:
            spread = 0.0
        half_log_L = 0.5 * math.log(L)
        return half_log_L - (mid + spread / 2), half_log_L - (mid - spread / 2)

    return estimate(r_ck, r_n)


def cocycle_exponents(B: TrigMatrix, L: int, cfg: CocycleConfig) -> ExponentPair:
    """Extremal Lyapunov exponents of the outward cocycle, numerically.

    For each sampled k the forward products B(k) B(Lk) ... are tracked by
    stacked QR and the extreme flag growth rates debiased as described in
    the module docstring; chi = log sqrt(L) minus a growth rate, matching
    the inverse-product definition of the outward iteration. The standard
    error is a leave-one-out jackknife over samples.
    """
    if B.det_polynomial().is_zero:
        raise SingularFamily("det B(k) vanishes identically; outward cocycle undefined")
    if L < 2:
        raise ValueError("inflation multiplier L must be >= 2")
    r_ck, r_n, ck = _qr_flag_rates(B, L, cfg)
    n, S = cfg.iters, cfg.samples
    chi_min, chi_max = _pair_from_rates(r_ck, r_n, ck, n, L, cfg.spread_floor)
    if S > 1:
        keep = np.arange(S)
        jk = np.array(
            [
                _pair_from_rates(r_ck[keep != s], r_n[keep != s], ck, n, L, cfg.spread_floor)
                for s in range(S)
            ]
        )
        scale = (S - 1) / S
        se_min = math.sqrt(scale * float(np.sum((jk[:, 0] - jk[:, 0].mean()) ** 2)))
        se_max = math.sqrt(scale * float(np.sum((jk[:, 1] - jk[:, 1].mean()) ** 2)))
        stderr = max(se_min, se_max)
    else:
        stderr = float("nan")
    return ExponentPair(
        chi_min=chi_min,
        chi_max=chi_max,
        method=METHOD_COCYCLE,
        stderr=stderr,
        samples=S,
        iters=n,
    )


def birkhoff_mahler(f: IntPolynomial, L: int, cfg: CocycleConfig) -> float:
    """Birkhoff average of log|f| along orbits of the times-L map.

    Converges to the log-Mahler measure m(f) for almost every start;
    orbits hitting |f| < det_floor are redrawn like in the cocycle.
    """
    if f.is_zero:
        raise ZeroPolynomial("Birkhoff average of log|0| is undefined")
    n, S = cfg.iters, cfg.samples
    total_steps = n + cfg.burn_in
    values = np.zeros(S)
    pending = list(range(S))
    attempts = [0] * S
    while pending:
        if max(attempts[s] for s in pending) > _MAX_RESAMPLES:
            raise ResampleExhausted(
                f"{len(pending)} orbit(s) kept hitting |f| < {cfg.det_floor:g}"
            )
        orbits = _ExactOrbits(
            L, total_steps, _orbit_draws(L, total_steps, cfg.seed, pending, [attempts[s] for s in pending])
        )
        orbits.advance(cfg.burn_in)
        acc = np.zeros(len(pending))
        bad = np.zeros(len(pending), dtype=bool)
        for _ in range(n):
            vals = np.abs(f.on_circle(orbits.floats()))
            bad |= vals < cfg.det_floor
            acc += np.log(np.maximum(vals, 1e-300))
            orbits.step()
        still = []
        for i, s in enumerate(pending):
            if bad[i]:
                attempts[s] += 1
                still.append(s)
            else:
                values[s] = acc[i] / n
        pending = still
    return float(np.mean(values))


def inward_exponents(s: Substitution) -> list[float]:
    """Inward-iteration exponents log|eig(M)| - log sqrt(L), sorted descending.

    B(k/L^n) tends to the substitution matrix, so the inward cocycle grows
    like its powers; zero eigenvalues give -inf. These exponents may hit 0
    or -inf, which is exactly why the outward iteration carries the
    spectral information instead.
    """
    eigs = np.linalg.eigvals(s.matrix().astype(float))
    half_log_L = 0.5 * math.log(s.length)
    out = []
    for lam in eigs:
        mod = abs(lam)
        out.append(float("-inf") if mod < 1e-12 else math.log(mod) - half_log_L)
    return sorted(out, reverse=True)


def invariant_subspace_check(
    B: TrigMatrix, diff: IntPolynomial, k: float, tol: float = 1e-12
) -> bool:
    """Verify B(k) (1, -1)^T = diff(u) (1, -1)^T at one frequency."""
    if B.dim != 2:
        raise ValueError("invariant subspace check is a binary-rule identity")
    Bk = B.evaluate(k)
    v = np.array([1.0, -1.0])
    expected = diff.on_circle(k) * v
    return bool(np.max(np.abs(Bk @ v - expected)) <= tol)


def cocycle_trace(
    B: TrigMatrix, L: int, k0: float | None, n: int, seed: int = 0
) -> dict[str, np.ndarray]:
    """Running averages along one orbit, the raw material for plots.

    Returns arrays of length n: running Birkhoff average of log|det B|,
    and running chi_min / chi_max estimates from the flag rates (raw,
    without the spread debias, since this is a convergence trace).
    """
    if B.det_polynomial().is_zero:
        raise SingularFamily("det B(k) vanishes identically; trace undefined")
    d = B.dim
    orbits = _ExactOrbits(L, n, _orbit_draws(L, n, seed, [0], [0]))
    if k0 is not None:
        # start at the given float but pad seeded random bits below its
        # precision: the bare double is dyadic and its exact orbit would
        # collapse onto 0 within ~53 / log2(L) steps
        head = int((float(k0) % 1.0) * 2.0**53) << (orbits.width - 53)
        tail = orbits.points[0] & ((1 << (orbits.width - 53)) - 1)
        orbits.points = [head | tail]
    Q = np.eye(d, dtype=complex)[None, :, :]
    r = np.zeros(d)
    acc_det = 0.0
    det_avg = np.empty(n)
    chi_min = np.empty(n)
    chi_max = np.empty(n)
    half_log_L = 0.5 * math.log(L)
    for m in range(n):
        k = orbits.floats()
        Bk = B.evaluate_many(k)
        acc_det += math.log(max(abs(complex(np.linalg.det(Bk[0]))), 1e-300))
        Q, R = np.linalg.qr(np.transpose(Bk, (0, 2, 1)) @ Q)
        r += np.log(np.maximum(np.abs(np.diagonal(R[0])), 1e-300))
        det_avg[m] = acc_det / (m + 1)
        chi_min[m] = half_log_L - r[0] / (m + 1)
        chi_max[m] = half_log_L - r[-1] / (m + 1)
        orbits.step()
    return {"det_average": det_avg, "chi_min": chi_min, "chi_max": chi_max}
