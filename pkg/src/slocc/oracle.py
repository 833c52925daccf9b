"""Brute-force labeled-tensor oracle.

Every no-label pair is embedded as an explicitly (anti)symmetrized vector

    |phi, chi>  ->  (phi (x) chi + eta chi (x) phi) / sqrt(2)

in the labeled two-slot space.  With the 1/sqrt(2) factor the ordinary
tensor inner product equals the symmetrized no-label inner product:
``<E(a1,a2)|E(b1,b2)> = (2<a1|b1><a2|b2> + 2 eta <a1|b2><a2|b1>)/2``.
Removing one particle costs a factor sqrt(2) (the particle can sit in
either slot), so ``<phi'|Psi> = sqrt(2) (<phi'| (x) 1) E(Psi)``.

Only raw coefficient arrays are read from the states; none of the
no-label algebra is called.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import SPINS
from .entanglement import DensityMatrix
from .errors import UndefinedEntanglementError

SQRT2 = np.sqrt(2)


@dataclass(frozen=True)
class EmbeddedState:
    """Vector in the labeled space; ``vector[i, j]`` is slot 1 in basis state i, slot 2 in j.

    One-particle basis index is ``2 * region_index + spin_index`` (spin 0 = up).
    """

    vector: np.ndarray
    eta: int
    regions: tuple[str, ...]

    def swap(self) -> np.ndarray:
        return self.vector.T

    def is_exchange_symmetric(self, atol: float = 1e-12) -> bool:
        return bool(np.allclose(self.swap(), self.eta * self.vector, rtol=0, atol=atol))

    def norm_squared(self) -> float:
        return float(np.vdot(self.vector, self.vector).real)

    def index(self, region: str, spin: int) -> int:
        return 2 * self.regions.index(region) + spin


def _sym(p: np.ndarray, q: np.ndarray, eta: int) -> np.ndarray:
    return (np.outer(p, q) + eta * np.outer(q, p)) / SQRT2


def embed(state) -> EmbeddedState:
    eta = int(state.statistics)
    regions = tuple(state.regions)
    dim = 2 * len(regions)
    v = np.zeros((dim, dim), dtype=complex)
    for c, a, b in state.terms:
        v += c * _sym(np.asarray(a.coeffs).reshape(-1), np.asarray(b.coeffs).reshape(-1), eta)
    return EmbeddedState(v, eta, regions)


def embed_pair(p, q, eta: int) -> np.ndarray:
    return _sym(np.asarray(p.coeffs).reshape(-1), np.asarray(q.coeffs).reshape(-1), eta)


def oracle_overlap(bra, ket) -> complex:
    """``<bra|ket>`` where bra is a pair of one-particle states or a two-particle state."""
    k = embed(ket)
    if isinstance(bra, tuple):
        b = embed_pair(bra[0], bra[1], k.eta)
    else:
        b = embed(bra).vector
    return complex(np.vdot(b, k.vector))


def oracle_partial_overlap(bra, embedded: EmbeddedState) -> np.ndarray:
    p = np.asarray(bra.coeffs).reshape(-1)
    return SQRT2 * (p.conj() @ embedded.vector)


def oracle_partial_trace(embedded: EmbeddedState, region: str, spin_basis=None) -> np.ndarray:
    """Unnormalized one-particle matrix ``2 * sum_s (<region s| (x) 1) |v><v| (|region s> (x) 1)``."""
    u = np.eye(2) if spin_basis is None else np.asarray(spin_basis)
    dim = embedded.vector.shape[0]
    rho = np.zeros((dim, dim), dtype=complex)
    for k in range(2):
        p = np.zeros(dim, dtype=complex)
        p[embedded.index(region, 0)] = u[0, k]
        p[embedded.index(region, 1)] = u[1, k]
        w = SQRT2 * (p.conj() @ embedded.vector)
        rho += np.outer(w, w.conj())
    return rho


def oracle_reduced_matrix(embedded: EmbeddedState, trace_region: str, condition_region: str) -> DensityMatrix:
    """Trace over ``trace_region``, keep the ``condition_region`` spin block, normalize."""
    rho = oracle_partial_trace(embedded, trace_region)
    idx = [embedded.index(condition_region, s) for s in (0, 1)]
    block = rho[np.ix_(idx, idx)]
    w = float(np.trace(block).real)
    if w <= 1e-24:
        raise UndefinedEntanglementError("zero weight in conditioning region")
    return DensityMatrix(SPINS, block / w, w)


def oracle_entropy(matrix) -> float:
    lam = np.linalg.eigvalsh(np.asarray(matrix))
    lam = lam[lam > 0]
    return float(-np.sum(lam * np.log2(lam)))


def oracle_project_lr(embedded: EmbeddedState, left: str = "L", right: str = "R") -> tuple[np.ndarray, float]:
    """Amplitudes ``<left s, right t|Psi>`` (unnormalized) and their total weight."""
    dim = embedded.vector.shape[0]
    amps = np.zeros((2, 2), dtype=complex)
    for s in (0, 1):
        for t in (0, 1):
            p = np.zeros(dim)
            q = np.zeros(dim)
            p[embedded.index(left, s)] = 1
            q[embedded.index(right, t)] = 1
            amps[s, t] = np.vdot(_sym(p, q, embedded.eta), embedded.vector)
    return amps, float(np.sum(np.abs(amps) ** 2))


_SYSY = np.kron(np.array([[0, -1j], [1j, 0]]), np.array([[0, -1j], [1j, 0]]))


def oracle_concurrence(amplitudes) -> float:
    """Wootters spin-flip form ``|<psi| sigma_y (x) sigma_y |psi*>|`` for a normalized pure state."""
    psi = np.asarray(amplitudes, dtype=complex).reshape(-1)
    return float(abs(psi @ _SYSY @ psi))


def oracle_entanglement_lr(embedded: EmbeddedState, left: str = "L", right: str = "R") -> float:
    return oracle_entropy(oracle_reduced_matrix(embedded, left, right).matrix)


# Bell vectors over (d spin, particle spin), index 0 = up.
_BELL = {
    "PsiPlus": np.array([[0, 1], [1, 0]]) / SQRT2,
    "PsiMinus": np.array([[0, 1], [-1, 0]]) / SQRT2,
    "PhiPlus": np.array([[1, 0], [0, 1]]) / SQRT2,
    "PhiMinus": np.array([[1, 0], [0, -1]]) / SQRT2,
}


def teleport_vector(a: complex, b: complex, eta: int, l: complex = 1 / SQRT2, r: complex = 1 / SQRT2) -> np.ndarray:
    """Three-particle vector ``[d spin, slot 1, slot 2]`` for ``|s>_d (x) E(|psi up, psi down>)``."""
    up = np.array([l, 0, r, 0], dtype=complex)
    down = np.array([0, l, 0, r], dtype=complex)
    pair = _sym(up, down, eta)
    return np.array([a, b], dtype=complex)[:, None, None] * pair[None]


def oracle_teleport_branches(a: complex, b: complex, eta: int, l: complex = 1 / SQRT2,
                             r: complex = 1 / SQRT2) -> dict[tuple, np.ndarray]:
    """Amplitude vector of every measurement branch.

    Keys are ``(sector, bell)``: for ``"LL"``/``"LR"`` the value is the
    (up, down) spinor of the other identical particle in L/R after Lucy
    projects (d, a particle in L) onto ``bell``; for ``("RR", None)`` it is
    the spinor of d.  The labeled slot-1 projection is scaled by
    ``sqrt(2 / n_L)``, ``n_L`` being the number of identical particles in L,
    so that squared norms are branch probabilities.
    """
    v = teleport_vector(a, b, eta, l, r)
    li, ri = (0, 1), (2, 3)
    out: dict[tuple, np.ndarray] = {}
    for name, bell in _BELL.items():
        ll = v[:, li, :][:, :, li]  # [d, slot1 spin at L, slot2 spin at L]
        lr = v[:, li, :][:, :, ri]
        out[("LL", name)] = np.sqrt(2 / 2) * np.einsum("ds,dst->t", bell.conj(), ll)
        out[("LR", name)] = np.sqrt(2 / 1) * np.einsum("ds,dst->t", bell.conj(), lr)
    rr_pair = _sym(np.array([0, 0, 1, 0]), np.array([0, 0, 0, 1]), eta)
    out[("RR", None)] = np.array([np.vdot(rr_pair, v[k]) for k in (0, 1)])
    return out


def oracle_outcome_probabilities(branches: dict[tuple, np.ndarray]) -> dict[str, float]:
    probs = {"ZeroInL": 0.0, "TwoInL": 0.0}
    for (sector, bell), w in branches.items():
        p = float(np.sum(np.abs(w) ** 2))
        if sector == "LL":
            probs["TwoInL"] += p
        elif sector == "RR":
            probs["ZeroInL"] += p
        else:
            probs[bell] = probs.get(bell, 0.0) + p
    return probs

