"""Operational (sLOCC) entanglement of two identical particles.

The pipeline is: trace one particle out over a spin basis localized in one
region, keep only the part of the remaining one-particle state living in
the other region, and take the von Neumann entropy of what is left.  The
same quantity is obtained from the concurrence of the state projected
onto the one-particle-per-region subspace.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence, Union

import numpy as np

from .algebra import (ATOL, DOWN, SPINS, UP, SingleParticleState, Statistics, TwoParticleState,
                      norm, overlap_two, partial_overlap, wedge)
from .errors import DomainError, ProjectionFailedError, UndefinedEntanglementError, ZeroProbabilityError

# Conditioning weights at or below this are treated as an impossible event.
ZERO_WEIGHT = 1e-24


@dataclass(frozen=True)
class DensityMatrix:
    """Unit-trace Hermitian matrix plus the trace it had before normalization."""

    basis: tuple
    matrix: np.ndarray
    weight: float = 1.0
    atol: float = field(default=ATOL, compare=False, repr=False)

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        n = len(self.basis)
        if m.shape != (n, n):
            raise DomainError(f"matrix shape {m.shape} does not match {n} basis labels")
        if not np.allclose(m, m.conj().T, rtol=0, atol=self.atol):
            raise DomainError("density matrix is not Hermitian")
        if abs(np.trace(m).real - 1.0) > self.atol:
            raise DomainError(f"density matrix trace {np.trace(m).real!r} != 1")
        m.setflags(write=False)
        object.__setattr__(self, "basis", tuple(self.basis))
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "weight", float(self.weight))

    @classmethod
    def from_unnormalized(cls, basis: Sequence, matrix, zero_error=ZeroProbabilityError) -> "DensityMatrix":
        m = np.asarray(matrix, dtype=complex)
        m = (m + m.conj().T) / 2
        w = float(np.trace(m).real)
        if w <= ZERO_WEIGHT:
            raise zero_error("conditioning event has zero probability")
        return cls(tuple(basis), m / w, w)

    @property
    def unnormalized(self) -> np.ndarray:
        return self.weight * self.matrix

    def eigenvalues(self) -> np.ndarray:
        return hermitian_eigenvalues(self.matrix)


def _local_basis(region: str, regions: tuple[str, ...], spin_basis) -> list[SingleParticleState]:
    if region not in regions:
        raise DomainError(f"region {region!r} not in alphabet {regions}")
    u = np.eye(2, dtype=complex) if spin_basis is None else np.asarray(spin_basis, dtype=complex)
    if u.shape != (2, 2) or not np.allclose(u.conj().T @ u, np.eye(2), atol=1e-10):
        raise DomainError("spin_basis must be a 2x2 unitary (columns are basis spinors)")
    return [SingleParticleState.spinor_at(region, u[0, k], u[1, k], regions) for k in range(2)]


def localized_partial_trace(state: TwoParticleState, region: str, spin_basis=None) -> DensityMatrix:
    """Trace one particle out over a spin basis localized in ``region``.

    The result lives on the full one-particle space; ``.unnormalized`` is
    the sum over the local basis of ``|<region s|Psi>><<region s|Psi>|``.
    ``spin_basis`` (columns) rotates the local basis and must not change
    the result.
    """
    regions = state.regions
    vecs = [partial_overlap(bra, state).vector for bra in _local_basis(region, regions, spin_basis)]
    rho = sum(np.outer(v, v.conj()) for v in vecs)
    basis = tuple((r, s) for r in regions for s in SPINS)
    return DensityMatrix.from_unnormalized(basis, rho)


def condition_on_region(rho: DensityMatrix, region: str) -> DensityMatrix:
    """Project a one-particle matrix onto ``region`` and renormalize (spin-only result).

    ``weight`` of the result is the trace before renormalization, i.e. the
    probability of finding one particle in each of the two regions.
    """
    idx = [i for i, (r, _) in enumerate(rho.basis) if r == region]
    if len(idx) != 2:
        raise DomainError(f"region {region!r} not in basis")
    block = rho.unnormalized[np.ix_(idx, idx)]
    spins = tuple(rho.basis[i][1] for i in idx)
    return DensityMatrix.from_unnormalized(spins, block, zero_error=UndefinedEntanglementError)


def hermitian_eigenvalues(m) -> np.ndarray:
    """Ascending eigenvalues of a small Hermitian matrix; closed form for 2x2."""
    m = np.asarray(m, dtype=complex)
    if m.shape == (1, 1):
        return np.array([m[0, 0].real])
    if m.shape == (2, 2):
        a, d = m[0, 0].real, m[1, 1].real
        mean = (a + d) / 2
        rad = np.hypot((a - d) / 2, abs(m[0, 1]))
        return np.array([mean - rad, mean + rad])
    return np.linalg.eigvalsh(m)


def _xlog2x(x: float) -> float:
    return 0.0 if x <= 0 else x * np.log2(x)


def binary_entropy(x: float) -> float:
    return -_xlog2x(x) - _xlog2x(1 - x)


def von_neumann_entropy(rho: Union[DensityMatrix, np.ndarray], atol: float = ATOL) -> float:
    """Entropy in bits, ``-sum lambda log2 lambda`` with ``0 log 0 = 0``."""
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    if not np.allclose(m, m.conj().T, rtol=0, atol=atol):
        raise DomainError("matrix is not Hermitian")
    if abs(np.trace(m).real - 1) > atol:
        raise DomainError("matrix is not normalized")
    lam = hermitian_eigenvalues(m)
    if lam.min() < -atol:
        raise DomainError(f"matrix is not positive semidefinite (eigenvalue {lam.min()!r})")
    lam = np.clip(lam, 0.0, None)
    return float(max(0.0, -sum(_xlog2x(x) for x in lam)))


def _check_probability(name: str, p: float) -> float:
    p = float(p)
    if not -ATOL <= p <= 1 + ATOL:
        raise DomainError(f"{name}={p!r} is not a probability")
    return min(max(p, 0.0), 1.0)


def operational_entanglement(p_l: float, p_l_prime: float, p_r: float, p_r_prime: float) -> float:
    """Closed-form entropy of the conditioned spin state from the four detection probabilities."""
    p_l, p_l_prime, p_r, p_r_prime = (
        _check_probability(n, p) for n, p in
        (("P_L", p_l), ("P'_L", p_l_prime), ("P_R", p_r), ("P'_R", p_r_prime)))
    down = p_l * p_r_prime
    up = p_l_prime * p_r
    total = down + up
    if total <= ZERO_WEIGHT:
        raise UndefinedEntanglementError("P_L P'_R + P'_L P_R = 0: no particle pair across L and R")
    return binary_entropy(down / total)


def entanglement_lr(state: TwoParticleState, left: str = "L", right: str = "R") -> float:
    """Matrix route: entropy of the partial trace over ``left`` conditioned on ``right``."""
    return von_neumann_entropy(condition_on_region(localized_partial_trace(state, left), right))


@dataclass(frozen=True)
class ProjectedLRState:
    """Normalized state after projecting onto one particle in each region.

    ``amplitudes[i, j]`` multiplies ``|left s_i, right s_j>`` with spin index
    0 = up, 1 = down.
    """

    amplitudes: np.ndarray
    probability: float
    statistics: Statistics
    left: str = "L"
    right: str = "R"

    def __post_init__(self):
        a = np.array(self.amplitudes, dtype=complex).reshape(2, 2)
        a.setflags(write=False)
        object.__setattr__(self, "amplitudes", a)

    def amplitude(self, spin_left, spin_right) -> complex:
        return complex(self.amplitudes[spin_left.index, spin_right.index])

    def computational(self) -> np.ndarray:
        """``(a00, a01, a10, a11)`` with down -> 0 and up -> 1 on each side (left qubit first)."""
        a = self.amplitudes
        return np.array([a[1, 1], a[1, 0], a[0, 1], a[0, 0]])

    @property
    def relative_phase(self) -> Optional[float]:
        """Phase gamma in ``|L up, R down> + eta e^{i gamma} |L down, R up>``; None if a term vanishes."""
        a, b = self.amplitudes[0, 1], self.amplitudes[1, 0]
        if abs(a) < ATOL or abs(b) < ATOL:
            return None
        return float(np.angle(b / (self.statistics.eta * a)))

    def reduced(self, keep: str) -> DensityMatrix:
        """Spin state of the particle in region ``keep`` after tracing out the other one."""
        a = self.amplitudes
        if keep == self.right:
            m = a.T @ a.conj()
        elif keep == self.left:
            m = a @ a.conj().T
        else:
            raise DomainError(f"region {keep!r} is not {self.left!r} or {self.right!r}")
        return DensityMatrix(SPINS, m)

    def to_state(self, regions: Sequence[str] = ("L", "R")) -> TwoParticleState:
        terms = []
        for s in SPINS:
            for t in SPINS:
                c = self.amplitudes[s.index, t.index]
                terms.append((c, SingleParticleState.basis(self.left, s, regions),
                              SingleParticleState.basis(self.right, t, regions)))
        return TwoParticleState(self.statistics, terms)


def project_lr(state: TwoParticleState, left: str = "L", right: str = "R",
               atol: float = 1e-10) -> ProjectedLRState:
    """Project onto ``span{|left s, right t>}`` and renormalize."""
    regions = state.regions
    if left == right or left not in regions or right not in regions:
        raise DomainError(f"need two distinct regions from {regions}, got {left!r}, {right!r}")
    if abs(norm(state) - 1) > atol:
        raise DomainError("state must be normalized")
    amps = np.zeros((2, 2), dtype=complex)
    for s in SPINS:
        bl = SingleParticleState.basis(left, s, regions)
        for t in SPINS:
            br = SingleParticleState.basis(right, t, regions)
            amps[s.index, t.index] = overlap_two((bl, br), state)
    prob = float(np.sum(np.abs(amps) ** 2))
    if prob <= ZERO_WEIGHT:
        raise ProjectionFailedError("no component with one particle in each region")
    return ProjectedLRState(amps / np.sqrt(prob), prob, state.statistics, left, right)


def concurrence_pure(amplitudes: Union[ProjectedLRState, Sequence[complex]], atol: float = 1e-10) -> float:
    """``2 |a00 a11 - a01 a10|`` for a normalized two-qubit pure state."""
    if isinstance(amplitudes, ProjectedLRState):
        amplitudes = amplitudes.computational()
    a = np.asarray(amplitudes, dtype=complex).reshape(-1)
    if a.shape != (4,):
        raise DomainError("need four amplitudes")
    if abs(np.vdot(a, a).real - 1) > atol:
        raise DomainError("amplitudes are not normalized")
    return float(2 * abs(a[0] * a[3] - a[1] * a[2]))


def entanglement_of_formation(concurrence: float, atol: float = ATOL) -> float:
    c = float(concurrence)
    if not -atol <= c <= 1 + atol:
        raise DomainError(f"concurrence {c!r} outside [0, 1]")
    c = min(max(c, 0.0), 1.0)
    return binary_entropy((1 + np.sqrt(1 - c * c)) / 2)


class ModeDecomposition(NamedTuple):
    c_ll: complex
    c_rr: complex
    resource: Optional[ProjectedLRState]

    def completeness(self) -> float:
        p = self.resource.probability if self.resource is not None else 0.0
        return abs(self.c_ll) ** 2 + abs(self.c_rr) ** 2 + p


def decompose_modes(state: TwoParticleState) -> ModeDecomposition:
    """Split ``|psi up, psi' down>`` into both-in-L, both-in-R and one-in-each parts.

    ``resource`` is None when the one-in-each part vanishes.
    """
    for _, a, b in state.terms:
        extra = (a.support() | b.support()) - {"L", "R"}
        if extra:
            raise DomainError(f"state has support outside L, R: {sorted(extra)}")
    regions = state.regions
    lu, ld = (SingleParticleState.basis("L", s, regions) for s in (UP, DOWN))
    ru, rd = (SingleParticleState.basis("R", s, regions) for s in (UP, DOWN))
    c_ll = overlap_two((lu, ld), state)
    c_rr = overlap_two((ru, rd), state)
    try:
        resource = project_lr(state)
    except ProjectionFailedError:
        resource = None
    return ModeDecomposition(c_ll, c_rr, resource)


def recompose(decomposition: ModeDecomposition, statistics, regions=("L", "R")) -> TwoParticleState:
    """Rebuild ``c_LL|L up, L down> + c_RR|R up, R down> + sqrt(P_LR)|Psi_LR>``."""
    b = SingleParticleState.basis
    out = (wedge(b("L", UP, regions), b("L", DOWN, regions), statistics, decomposition.c_ll)
           + wedge(b("R", UP, regions), b("R", DOWN, regions), statistics, decomposition.c_rr))
    if decomposition.resource is not None:
        out = out + np.sqrt(decomposition.resource.probability) * decomposition.resource.to_state(regions)
    return out
