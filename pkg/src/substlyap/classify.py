"""Spectral verdicts for substitution rules, and the exhaustive scan.

A positive minimal Lyapunov exponent of the outward cocycle rules out an
absolutely continuous diffraction component. The classifier combines the
closed-form exponents with column combinatorics (Dekking's coincidence
criterion for the pure point side, the bijective case for the singular
continuous side) and optionally cross-checks against the numeric cocycle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Mapping

import numpy as np

from .errors import NotBinary, NotPrimitive, SingularFamily
from .fourier import IdaDescription, TrigMatrix, fourier_matrix, ida, symmetry_reduce
from .lyapunov import (
    METHOD_COCYCLE,
    CocycleConfig,
    ExponentPair,
    closed_form_exponents,
    cocycle_exponents,
)
from .mahler import MahlerResult, column_difference, mahler_roots
from .polynomial import IntPolynomial
from .substitution import (
    BIJECTIVE,
    DEGENERATE,
    HAS_COINCIDENCE,
    ColumnPartition,
    Substitution,
    classify_columns,
    column_partition,
    is_primitive,
    periodicity_hint,
)

NO_AC_COMPONENT = "NoACComponent"
PURE_POINT_BY_COINCIDENCE = "PurePointByCoincidence"
SINGULAR_CONTINUOUS_BIJECTIVE = "SingularContinuousBijective"
PERIODIC_DEGENERATE = "PeriodicDegenerate"
INCONCLUSIVE = "Inconclusive"

_CAVEAT_DEGENERATE = "method inapplicable, det B == 0 identically; hull is periodic"
_CAVEAT_HEIGHT = (
    "pure point by Dekking's coincidence criterion assumes height 1; height not computed"
)
_CAVEAT_BIJECTIVE = (
    "bijective binary rules are known to carry singular continuous diffraction; "
    "the exponent certificate here only excludes the absolutely continuous part"
)
_CAVEAT_ORBIT = (
    "numeric exponents use exact fixed-point orbit arithmetic with per-sample "
    "QR flag tracking; spread below the detection floor is reported as zero"
)


@dataclass(frozen=True)
class BlockReport:
    """Numeric exponents of one symmetry block (or of the full matrix)."""

    name: str
    dimension: int
    exponents: ExponentPair | None
    unitary_scaled: bool
    skipped_reason: str | None = None


@dataclass(frozen=True)
class SpectralReport:
    substitution: dict[str, str]
    length: int
    partition: ColumnPartition | None
    ida: IdaDescription | None
    column_difference: tuple[int, ...]
    mahler: MahlerResult | None
    exponents_closed: ExponentPair | None
    exponents_numeric: ExponentPair | None
    verdict: str
    annotations: tuple[str, ...]
    caveats: tuple[str, ...]
    config: CocycleConfig | None
    blocks: tuple[BlockReport, ...] = ()

    def to_dict(self) -> dict:
        """JSON-ready dictionary with deterministic key order."""

        def pair(p: ExponentPair | None):
            if p is None:
                return None
            return {
                "chi_min": p.chi_min,
                "chi_max": p.chi_max,
                "method": p.method,
                "stderr": p.stderr,
                "samples": p.samples,
                "iters": p.iters,
            }

        doc = {
            "substitution": dict(self.substitution),
            "length": self.length,
            "partition": None,
            "ida": None,
            "column_difference": list(self.column_difference),
            "mahler": None,
            "exponents_closed": pair(self.exponents_closed),
            "exponents_numeric": pair(self.exponents_numeric),
            "verdict": self.verdict,
            "annotations": list(self.annotations),
            "caveats": list(self.caveats),
            "config": None,
            "blocks": [
                {
                    "name": b.name,
                    "dimension": b.dimension,
                    "exponents": pair(b.exponents),
                    "unitary_scaled": b.unitary_scaled,
                    "skipped_reason": b.skipped_reason,
                }
                for b in self.blocks
            ],
        }
        if self.partition is not None:
            doc["partition"] = {
                "coincident_a": sorted(self.partition.coincident_a),
                "coincident_b": sorted(self.partition.coincident_b),
                "bijective_id": sorted(self.partition.bijective_id),
                "bijective_swap": sorted(self.partition.bijective_swap),
            }
        if self.ida is not None:
            doc["ida"] = {"dimension": self.ida.dimension, "type": self.ida.type_tag}
        if self.mahler is not None:
            doc["mahler"] = {
                "value": self.mahler.value,
                "method": self.mahler.method,
                "is_zero_certified": self.mahler.is_zero_certified,
                "roots": [[z.real, z.imag] for z in self.mahler.roots],
            }
        if self.config is not None:
            doc["config"] = {
                "iters": self.config.iters,
                "samples": self.config.samples,
                "seed": self.config.seed,
                "det_floor": self.config.det_floor,
                "burn_in": self.config.burn_in,
                "spread_floor": self.config.spread_floor,
            }
        return doc


def classify(s: Substitution, cfg: CocycleConfig | None = None) -> SpectralReport:
    """Spectral verdict for a primitive binary rule.

    Degenerate rules short-circuit to PeriodicDegenerate. Otherwise the
    closed-form exponents decide: positive chi_min certifies the absence
    of an absolutely continuous diffraction component, annotated with the
    coincidence / bijective subcase. Passing a config attaches numeric
    cocycle exponents; disagreement beyond 3 standard errors downgrades
    the verdict to Inconclusive.
    """
    if s.size != 2:
        raise NotBinary("classify handles binary rules; larger alphabets go to classify_nary")
    if not is_primitive(s):
        raise NotPrimitive("classification needs a primitive rule")
    column_type = classify_columns(s)
    cp = column_partition(s)
    diff = column_difference(cp)
    caveats: list[str] = []
    annotations: list[str] = []
    if column_type == DEGENERATE:
        return SpectralReport(
            substitution=s.rules,
            length=s.length,
            partition=cp,
            ida=ida(s),
            column_difference=diff.coeffs,
            mahler=None,
            exponents_closed=None,
            exponents_numeric=None,
            verdict=PERIODIC_DEGENERATE,
            annotations=(),
            caveats=(_CAVEAT_DEGENERATE,),
            config=cfg,
        )
    closed = closed_form_exponents(s)
    mres = mahler_roots(diff)
    if column_type == HAS_COINCIDENCE:
        annotations.append(PURE_POINT_BY_COINCIDENCE)
        caveats.append(_CAVEAT_HEIGHT)
    else:
        annotations.append(SINGULAR_CONTINUOUS_BIJECTIVE)
        caveats.append(_CAVEAT_BIJECTIVE)
    period = periodicity_hint(s)
    if period is not None:
        caveats.append(
            f"fixed-point prefix repeats with period {period}; the hull may be periodic "
            "(heuristic scan, not a certificate)"
        )
    verdict = NO_AC_COMPONENT if closed.chi_min > 0 else INCONCLUSIVE
    numeric: ExponentPair | None = None
    if cfg is not None:
        numeric = cocycle_exponents(fourier_matrix(s), s.length, cfg)
        caveats.append(_CAVEAT_ORBIT)
        tol = 3.0 * numeric.stderr
        if (
            abs(numeric.chi_min - closed.chi_min) > tol
            or abs(numeric.chi_max - closed.chi_max) > tol
        ):
            verdict = INCONCLUSIVE
            caveats.append(
                "numeric and closed-form exponents disagree beyond 3 standard errors"
            )
    return SpectralReport(
        substitution=s.rules,
        length=s.length,
        partition=cp,
        ida=ida(s),
        column_difference=diff.coeffs,
        mahler=mres,
        exponents_closed=closed,
        exponents_numeric=numeric,
        verdict=verdict,
        annotations=tuple(annotations),
        caveats=tuple(caveats),
        config=cfg,
    )


def _scaled_unitary(block: TrigMatrix, L: int, n_checks: int = 32, tol: float = 1e-12) -> bool:
    rng = np.random.default_rng(424242)
    eye = np.eye(block.dim)
    for k in rng.uniform(size=n_checks):
        Bk = block.evaluate(k)
        if np.linalg.norm(Bk @ Bk.conj().T / L - eye) > tol:
            return False
    return True


def classify_nary(
    s: Substitution,
    pairing: Mapping[str, str] | None,
    cfg: CocycleConfig,
) -> SpectralReport:
    """Numeric-only verdict for rules on more than two letters.

    With a valid letter pairing the Fourier matrix splits into symmetry
    blocks; each block whose determinant is not identically zero gets
    cocycle exponents (identically singular blocks are skipped with a
    caveat). Without a pairing the full matrix is iterated when possible.
    The verdict is NoACComponent only if every invertible block has
    chi_min more than 3 standard errors above zero; no closed form is
    claimed for d > 2.
    """
    if s.size <= 2:
        raise ValueError("classify_nary expects more than two letters")
    if not is_primitive(s):
        raise NotPrimitive("classification needs a primitive rule")
    caveats: list[str] = [_CAVEAT_ORBIT]
    blocks: list[BlockReport] = []
    named: list[tuple[str, TrigMatrix]] = []
    if pairing is not None:
        sym, anti = symmetry_reduce(s, pairing)
        named = [("symmetric", sym), ("antisymmetric", anti)]
    else:
        named = [("full", fourier_matrix(s))]
    ran_any = False
    all_positive = True
    for name, block in named:
        if block.det_polynomial().is_zero:
            blocks.append(
                BlockReport(
                    name=name,
                    dimension=block.dim,
                    exponents=None,
                    unitary_scaled=False,
                    skipped_reason="determinant vanishes identically",
                )
            )
            caveats.append(f"{name} block skipped: det == 0 identically")
            continue
        pair = cocycle_exponents(block, s.length, cfg)
        unitary = _scaled_unitary(block, s.length)
        if unitary:
            caveats.append(
                f"{name} block over sqrt(L) is unitary: cocycle norms are constant and "
                "both exponents vanish, consistent with an absolutely continuous component"
            )
        blocks.append(
            BlockReport(name=name, dimension=block.dim, exponents=pair, unitary_scaled=unitary)
        )
        ran_any = True
        if not (pair.chi_min > 3.0 * pair.stderr if np.isfinite(pair.stderr) else pair.chi_min > 0):
            all_positive = False
    if not ran_any:
        raise SingularFamily("no block with det not identically zero")
    caveats.append("closed-form exponents are not available for alphabets larger than two")
    verdict = NO_AC_COMPONENT if all_positive else INCONCLUSIVE
    return SpectralReport(
        substitution=s.rules,
        length=s.length,
        partition=None,
        ida=ida(s),
        column_difference=(),
        mahler=None,
        exponents_closed=None,
        exponents_numeric=None,
        verdict=verdict,
        annotations=(),
        caveats=tuple(caveats),
        config=cfg,
        blocks=tuple(blocks),
    )


@dataclass(frozen=True)
class ScanRow:
    rules: dict[str, str]
    column_type: str
    partition_sizes: tuple[int, int, int, int]
    column_difference: tuple[int, ...]
    mahler_value: float
    mahler_zero_certified: bool
    chi_min: float
    chi_max: float
    verdict: str


@dataclass(frozen=True)
class ScanResult:
    length: int
    rows: tuple[ScanRow, ...]
    total_enumerated: int
    primitive_nondegenerate: int
    min_chi_min: float
    all_chi_min_positive: bool


def scan(length: int) -> ScanResult:
    """Closed-form exponents for every primitive non-degenerate binary rule
    of the given length.

    Rules are enumerated over both image words (4^L pairs), letter-swap
    duplicates are canonicalized away after verifying both representatives
    agree, and each surviving rule gets its partition, Mahler measure, and
    exponents. The aggregate records the minimum chi_min over the scan.
    """
    if not 2 <= length <= 6:
        raise ValueError("scan length must be between 2 and 6")
    alphabet = ("a", "b")
    swap = {"a": "b", "b": "a"}
    rows: list[ScanRow] = []
    seen = 0
    kept = 0
    min_chi = math.inf
    for wa in product(alphabet, repeat=length):
        for wb in product(alphabet, repeat=length):
            seen += 1
            image_a, image_b = "".join(wa), "".join(wb)
            mirror_a = "".join(swap[c] for c in image_b)
            mirror_b = "".join(swap[c] for c in image_a)
            if (mirror_a, mirror_b) < (image_a, image_b):
                continue  # the letter-swapped twin is canonical
            s = Substitution(alphabet, (image_a, image_b))
            if not is_primitive(s) or classify_columns(s) == DEGENERATE:
                continue
            kept += 1
            cp = column_partition(s)
            diff = column_difference(cp)
            mres = mahler_roots(diff)
            m = 0.0 if mres.is_zero_certified else mres.value
            closed = closed_form_exponents(s)
            twin = Substitution(alphabet, (mirror_a, mirror_b))
            twin_closed = closed_form_exponents(twin)
            if abs(twin_closed.chi_min - closed.chi_min) > 1e-12:
                raise AssertionError("letter-swap twins disagree on chi_min")
            min_chi = min(min_chi, closed.chi_min)
            rows.append(
                ScanRow(
                    rules=s.rules,
                    column_type=classify_columns(s),
                    partition_sizes=(
                        len(cp.coincident_a),
                        len(cp.coincident_b),
                        len(cp.bijective_id),
                        len(cp.bijective_swap),
                    ),
                    column_difference=diff.coeffs,
                    mahler_value=m,
                    mahler_zero_certified=mres.is_zero_certified,
                    chi_min=closed.chi_min,
                    chi_max=closed.chi_max,
                    verdict=NO_AC_COMPONENT if closed.chi_min > 0 else INCONCLUSIVE,
                )
            )
    return ScanResult(
        length=length,
        rows=tuple(rows),
        total_enumerated=seen,
        primitive_nondegenerate=kept,
        min_chi_min=min_chi,
        all_chi_min_positive=bool(rows) and min_chi > 0,
    )
