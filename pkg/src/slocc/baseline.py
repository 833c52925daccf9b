"""Localized measurements on an entangled pair of distinguishable particles.

Particles A and B carry labels, so the state is an ordinary tensor
product vector

    a |psi up>_A |psi' down>_B + b |psi down>_A |psi' up>_B

and finding A in region X and B in region Y leaves the spins in the same
Bell-like state for every (X, Y).  Only the probability of the branch
depends on the spatial modes.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .algebra import ATOL, SpatialWavefunction
from .entanglement import concurrence_pure
from .errors import DomainError


@dataclass(frozen=True)
class LabeledPairState:
    a: complex
    b: complex
    psi: SpatialWavefunction
    psi_prime: SpatialWavefunction
    tol: float = field(default=ATOL, compare=False, repr=False)

    def __post_init__(self):
        a, b = complex(self.a), complex(self.b)
        if abs(abs(a) ** 2 + abs(b) ** 2 - 1) > self.tol:
            raise DomainError("|a|^2 + |b|^2 must be 1")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def regions(self) -> tuple[str, ...]:
        return tuple(dict.fromkeys(self.psi.regions + self.psi_prime.regions))

    def tensor(self) -> np.ndarray:
        """Amplitudes ``[region_A, spin_A, region_B, spin_B]`` (spin 0 = up)."""
        regions = self.regions
        psi = np.array([self.psi.amplitude(r) for r in regions])
        psi_p = np.array([self.psi_prime.amplitude(r) for r in regions])
        spins = np.zeros((2, 2), dtype=complex)
        spins[0, 1] = self.a
        spins[1, 0] = self.b
        return np.einsum("x,y,st->xsyt", psi, psi_p, spins)


@dataclass(frozen=True)
class LabeledBranch:
    modes: tuple[str, str]
    probability: float
    amplitudes: Optional[np.ndarray]  # (a00, a01, a10, a11), down -> 0, A first

    @property
    def concurrence(self) -> Optional[float]:
        return None if self.amplitudes is None else concurrence_pure(self.amplitudes)


def decompose_outcomes(state: LabeledPairState, regions=("L", "R")) -> list[LabeledBranch]:
    """Branches for A found in X and B found in Y, X, Y in ``regions``."""
    t = state.tensor()
    order = state.regions
    out = []
    for x in regions:
        for y in regions:
            if x not in order or y not in order:
                raise DomainError(f"unknown region in {(x, y)}")
            block = t[order.index(x), :, order.index(y), :]
            p = float(np.sum(np.abs(block) ** 2))
            if p == 0:
                out.append(LabeledBranch((x, y), 0.0, None))
                continue
            blk = block / np.sqrt(p)
            amps = np.array([blk[1, 1], blk[1, 0], blk[0, 1], blk[0, 0]])
            out.append(LabeledBranch((x, y), p, amps))
    return out


def concurrence_spread(branches: list[LabeledBranch]) -> float:
    cs = [b.concurrence for b in branches if b.concurrence is not None]
    return float(max(cs) - min(cs)) if cs else 0.0
