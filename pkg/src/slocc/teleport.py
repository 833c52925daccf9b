"""Conditional teleportation with a pair of identical particles as the resource.

A third, distinguishable particle ``d`` sits in region L' with spinor
``a|up> + b|down>``.  The identical pair is ``|psi0 up, psi0 down>`` with
``psi0 = (|L> + |R>)/sqrt(2)``.  Lucy makes a Bell measurement on d and
the particle in L; Rob corrects the particle in R.  When Lucy finds zero
or two particles in L the run is rejected.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .algebra import (ATOL, DOWN, UP, PSI0, SingleParticleState, SpatialWavefunction, Statistics,
                      overlap_two, product_state)
from .errors import DomainError

CLASSICAL_THRESHOLD = 2 / 3
SQRT2 = np.sqrt(2)


class BellState(enum.Enum):
    """Bell states of (d, identical particle in L); d is the first factor, index 0 = up."""

    PSI_PLUS = "PsiPlus"
    PSI_MINUS = "PsiMinus"
    PHI_PLUS = "PhiPlus"
    PHI_MINUS = "PhiMinus"

    @property
    def vector(self) -> np.ndarray:
        return _BELL_VECTORS[self]

    @property
    def is_psi(self) -> bool:
        return self in (BellState.PSI_PLUS, BellState.PSI_MINUS)

    @property
    def sign(self) -> int:
        return 1 if self in (BellState.PSI_PLUS, BellState.PHI_PLUS) else -1


_BELL_VECTORS = {
    BellState.PSI_PLUS: np.array([0, 1, 1, 0]) / SQRT2,
    BellState.PSI_MINUS: np.array([0, 1, -1, 0]) / SQRT2,
    BellState.PHI_PLUS: np.array([1, 0, 0, 1]) / SQRT2,
    BellState.PHI_MINUS: np.array([1, 0, 0, -1]) / SQRT2,
}


class Outcome(enum.Enum):
    """What Lucy reports to Rob."""

    PSI_PLUS = "PsiPlus"
    PSI_MINUS = "PsiMinus"
    PHI_PLUS = "PhiPlus"
    PHI_MINUS = "PhiMinus"
    ZERO_IN_L = "ZeroInL"
    TWO_IN_L = "TwoInL"

    @property
    def rejected(self) -> bool:
        return self in (Outcome.ZERO_IN_L, Outcome.TWO_IN_L)

    @property
    def bell(self) -> Optional[BellState]:
        return None if self.rejected else BellState(self.value)


OUTCOMES = tuple(Outcome)

_I = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)

# Rob's unitary for each Bell outcome, keyed by (Psi-type?, sign relative to eta).
# iY is sigma_y with the -i of the Phi^(-eta) branch absorbed.
CORRECTIONS = {
    (True, 1): ("identity", _I),
    (True, -1): ("sigma_z", _Z),
    (False, 1): ("sigma_x", _X),
    (False, -1): ("i*sigma_y", 1j * _Y),
}


@dataclass(frozen=True)
class InputSpinor:
    a: complex
    b: complex
    tol: float = field(default=ATOL, compare=False, repr=False)

    def __post_init__(self):
        a, b = complex(self.a), complex(self.b)
        n = abs(a) ** 2 + abs(b) ** 2
        if abs(n - 1) > self.tol:
            raise DomainError(f"|a|^2 + |b|^2 = {n!r}, expected 1")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.a, self.b])


@dataclass(frozen=True)
class Branch:
    """One term of the expanded three-particle state.

    ``coefficient * residual`` is the amplitude vector of the branch, so
    ``abs(coefficient)**2`` is its probability.  ``residual`` is the
    normalized state left on the identical particle outside the Bell pair
    (in L for ``sector == "LL"``, in R for ``"LR"``); for ``"RR"`` it is
    the untouched spinor of d in L'.
    """

    sector: str
    outcome: Outcome
    bell: Optional[BellState]
    coefficient: complex
    residual: SingleParticleState

    @property
    def probability(self) -> float:
        return abs(self.coefficient) ** 2

    @property
    def amplitude(self) -> np.ndarray:
        return self.coefficient * self.residual.vector


def _bell_overlaps(bell: BellState, s: np.ndarray) -> np.ndarray:
    """``<B| s, sigma>`` for sigma = up, down (d carries spinor ``s``)."""
    bv = bell.vector.reshape(2, 2)  # [d spin, particle spin]
    return np.array([np.vdot(bv[:, k], s) for k in range(2)])


def _split(w: np.ndarray, phase: complex, region: str, regions) -> tuple[complex, SingleParticleState]:
    n = float(np.linalg.norm(w))
    if n == 0:
        return 0j, SingleParticleState(regions, np.zeros((len(regions), 2)))
    coeff = phase * n
    spinor = w / coeff
    return coeff, SingleParticleState.spinor_at(region, spinor[0], spinor[1], regions)


def expand_protocol(spinor: InputSpinor, statistics, mode: SpatialWavefunction = PSI0) -> list[Branch]:
    """Rewrite ``|s>_d |mode up, mode down>`` in Lucy's measurement basis.

    Returns nine branches: four Bell branches with two identical particles
    in L (residual in L), one branch with none in L and four Bell branches
    with one particle in each region (residual in R).

    The L-sector coefficients follow the wedge product rule
    ``|s>_d|p1, p2> = (|s>|p1>) x |p2> + |p1> x (|s>|p2>)`` divided by the
    two particles in L, then renormalized so that the sector keeps its
    weight ``|<L up, L down|Psi0>|^2``.
    """
    statistics = Statistics.parse(statistics)
    eta = statistics.eta
    extra = [r for r in mode.regions if r not in ("L", "R") and abs(mode.amplitude(r)) > 0]
    if extra:
        raise DomainError(f"mode support must be within L, R; found {extra}")
    regions = ("L", "R")
    pair = product_state(mode, mode, statistics, regions)
    basis = SingleParticleState.basis
    s = spinor.vector

    c_ll = overlap_two((basis("L", UP, regions), basis("L", DOWN, regions)), pair)
    c_rr = overlap_two((basis("R", UP, regions), basis("R", DOWN, regions)), pair)
    lr = np.array([[overlap_two((basis("L", sl, regions), basis("R", sr, regions)), pair)
                    for sr in (UP, DOWN)] for sl in (UP, DOWN)])

    branches: list[Branch] = []

    raw = {}
    for bell in BellState:
        up, down = _bell_overlaps(bell, s)
        # (s L up) x L down + eta (s L down) x L up, halved for two particles in L
        raw[bell] = c_ll / 2 * np.array([eta * down, up])
    total = sum(float(np.sum(np.abs(w) ** 2)) for w in raw.values())
    renorm = abs(c_ll) / np.sqrt(total) if total > 0 else 0.0
    for bell, w in raw.items():
        coeff, res = _split(renorm * w, 1, "L", regions)
        branches.append(Branch("LL", Outcome.TWO_IN_L, bell, coeff, res))

    branches.append(Branch("RR", Outcome.ZERO_IN_L, None, c_rr,
                           SingleParticleState.spinor_at("L'", s[0], s[1], ("L'",))))

    for bell in BellState:
        ov = _bell_overlaps(bell, s)
        # d pairs with the particle in L; the particle in R is the residual
        w = ov @ lr
        phase = eta if bell.is_psi else 1
        coeff, res = _split(w, phase, "R", regions)
        branches.append(Branch("LR", Outcome(bell.value), bell, coeff, res))
    return branches


def outcome_probabilities(branches: list[Branch]) -> dict[Outcome, float]:
    probs = {o: 0.0 for o in OUTCOMES}
    for br in branches:
        probs[br.outcome] += br.probability
    return probs


def correction_for(outcome: Outcome, statistics) -> tuple[str, np.ndarray]:
    if outcome.rejected:
        raise DomainError(f"no correction for rejected outcome {outcome.value}")
    bell = outcome.bell
    eta = Statistics.parse(statistics).eta
    return CORRECTIONS[(bell.is_psi, bell.sign * eta)]


def apply_correction(outcome: Outcome, statistics, residual) -> np.ndarray:
    """Rob's operation on the (up, down) spinor he holds in R."""
    if isinstance(residual, SingleParticleState):
        residual = residual.spinor("R")
    _, u = correction_for(outcome, statistics)
    return u @ np.asarray(residual, dtype=complex)


def fidelity(target, actual, atol: float = 1e-10) -> float:
    t = target.vector if isinstance(target, InputSpinor) else np.asarray(target, dtype=complex)
    v = np.asarray(actual, dtype=complex)
    for name, x in (("target", t), ("actual", v)):
        if abs(np.vdot(x, x).real - 1) > atol:
            raise DomainError(f"{name} spinor is not normalized")
    return float(min(1.0, abs(np.vdot(t, v)) ** 2))


@dataclass(frozen=True)
class OutcomeReport:
    outcome: Outcome
    probability: float
    correction: Optional[str]
    fidelity: float
    corrected: Optional[tuple[complex, complex]] = None


@dataclass
class TeleportationReport:
    statistics: Statistics
    input: InputSpinor
    success_probability: float
    per_outcome: list[OutcomeReport]
    conditional_fidelity: float
    total_fidelity: float
    classical_threshold: float = CLASSICAL_THRESHOLD
    trials: int = 0
    seed: Optional[int] = None
    counts: Optional[dict[Outcome, int]] = None

    @property
    def empirical_success_rate(self) -> Optional[float]:
        if not self.counts:
            return None
        accepted = sum(n for o, n in self.counts.items() if not o.rejected)
        return accepted / self.trials

    @property
    def empirical_total_fidelity(self) -> Optional[float]:
        if not self.counts:
            return None
        by_outcome = {r.outcome: r.fidelity for r in self.per_outcome}
        return sum(n * by_outcome[o] for o, n in self.counts.items()) / self.trials

    def beats_classical(self) -> bool:
        return self.conditional_fidelity > self.classical_threshold and self.total_fidelity > self.classical_threshold

    def to_dict(self) -> dict:
        out = {
            "statistics": self.statistics.name.lower(),
            "input": {"a": [self.input.a.real, self.input.a.imag], "b": [self.input.b.real, self.input.b.imag]},
            "analytic": {
                "success_probability": self.success_probability,
                "conditional_fidelity": self.conditional_fidelity,
                "total_fidelity": self.total_fidelity,
                "classical_threshold": self.classical_threshold,
                "beats_classical": self.beats_classical(),
                "per_outcome": [
                    {"outcome": r.outcome.value, "probability": r.probability, "correction": r.correction,
                     "fidelity": r.fidelity}
                    for r in self.per_outcome
                ],
            },
        }
        if self.counts:
            out["monte_carlo"] = {
                "trials": self.trials,
                "seed": self.seed,
                "counts": {o.value: self.counts[o] for o in OUTCOMES},
                "frequencies": {o.value: self.counts[o] / self.trials for o in OUTCOMES},
                "success_rate": self.empirical_success_rate,
                "total_fidelity": self.empirical_total_fidelity,
            }
        return out


def analyze(spinor: InputSpinor, statistics, mode: SpatialWavefunction = PSI0) -> tuple[list[Branch], list[OutcomeReport]]:
    statistics = Statistics.parse(statistics)
    branches = expand_protocol(spinor, statistics, mode)
    probs = outcome_probabilities(branches)
    reports = []
    for outcome in OUTCOMES:
        if outcome.rejected:
            reports.append(OutcomeReport(outcome, probs[outcome], None, CLASSICAL_THRESHOLD))
            continue
        br = next(b for b in branches if b.sector == "LR" and b.outcome is outcome)
        name, _ = correction_for(outcome, statistics)
        out = apply_correction(outcome, statistics, br.residual)
        reports.append(OutcomeReport(outcome, probs[outcome], name, fidelity(spinor, out), (complex(out[0]), complex(out[1]))))
    return branches, reports


CHUNK = 10_000


def sample_outcomes(probabilities, trials: int, seed: int) -> np.ndarray:
    """Counts per outcome for ``trials`` draws.

    The draws are split into chunks of ``CHUNK`` trials, each with its own
    PCG64 stream spawned from ``SeedSequence(seed)``; chunks are
    independent and their counts add, so the result does not depend on
    evaluation order.
    """
    if trials < 1:
        raise DomainError("trials must be >= 1")
    p = np.asarray(probabilities, dtype=float)
    p = p / p.sum()
    n_chunks = -(-trials // CHUNK)
    counts = np.zeros(len(p), dtype=np.int64)
    for i, child in enumerate(np.random.SeedSequence(seed).spawn(n_chunks)):
        size = min(CHUNK, trials - i * CHUNK)
        counts += np.random.Generator(np.random.PCG64(child)).multinomial(size, p)
    return counts


def analytic_report(spinor: InputSpinor, statistics, mode: SpatialWavefunction = PSI0) -> TeleportationReport:
    """Exact branch probabilities and fidelities; rejected runs score the classical threshold."""
    statistics = Statistics.parse(statistics)
    _, reports = analyze(spinor, statistics, mode)
    accepted = [r for r in reports if not r.outcome.rejected]
    success = sum(r.probability for r in accepted)
    conditional = sum(r.probability * r.fidelity for r in accepted) / success if success > 0 else 0.0
    total = sum(r.probability * r.fidelity for r in reports)
    return TeleportationReport(statistics, spinor, success, reports, conditional, total)


def run_protocol(spinor: InputSpinor, statistics, trials: int, seed: int,
                 mode: SpatialWavefunction = PSI0) -> TeleportationReport:
    """Analytic report plus seeded Monte Carlo outcome counts."""
    if trials < 1:
        raise DomainError("trials must be >= 1")
    report = analytic_report(spinor, statistics, mode)
    c = sample_outcomes([r.probability for r in report.per_outcome], trials, seed)
    report.trials = trials
    report.seed = seed
    report.counts = {r.outcome: int(n) for r, n in zip(report.per_outcome, c)}
    return report
