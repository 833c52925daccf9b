"""Random inputs for property and equivalence checks."""
from __future__ import annotations

import numpy as np

from .algebra import DEFAULT_REGIONS, SingleParticleState, Statistics, TwoParticleState, mode_state


def random_complex(rng: np.random.Generator, size=None):
    return rng.normal(size=size) + 1j * rng.normal(size=size)


def random_single(rng: np.random.Generator, regions=DEFAULT_REGIONS, normalize: bool = True) -> SingleParticleState:
    c = random_complex(rng, (len(regions), 2))
    if normalize:
        c /= np.linalg.norm(c)
    return SingleParticleState(regions, c)


def random_two_particle(rng: np.random.Generator, statistics, regions=DEFAULT_REGIONS,
                        max_terms: int = 3, normalize: bool = True) -> TwoParticleState:
    statistics = Statistics.parse(statistics)
    while True:
        n = int(rng.integers(1, max_terms + 1))
        terms = [(complex(random_complex(rng)), random_single(rng, regions), random_single(rng, regions))
                 for _ in range(n)]
        state = TwoParticleState(statistics, terms)
        if state.norm() > 1e-3:
            return state.normalized() if normalize else state


def random_modes(rng: np.random.Generator) -> tuple[complex, complex, complex, complex]:
    """``(l, r, l', r')`` with ``|l|^2 + |r|^2 = |l'|^2 + |r'|^2 = 1`` and random phases."""
    th, thp = rng.uniform(0, np.pi / 2, size=2)
    ph = np.exp(1j * rng.uniform(0, 2 * np.pi, size=4))
    return (np.cos(th) * ph[0], np.sin(th) * ph[1], np.cos(thp) * ph[2], np.sin(thp) * ph[3])


def random_mode_state(rng: np.random.Generator, statistics) -> tuple[TwoParticleState, tuple]:
    modes = random_modes(rng)
    return mode_state(*modes, statistics), modes


def random_spinor(rng: np.random.Generator) -> np.ndarray:
    s = random_complex(rng, 2)
    return s / np.linalg.norm(s)


def bloch_grid(n: int) -> list[tuple[complex, complex]]:
    """``n`` spinors spread evenly over the Bloch sphere (Fibonacci lattice)."""
    golden = np.pi * (3 - np.sqrt(5))
    out = []
    for k in range(n):
        theta = np.arccos(1 - 2 * (k + 0.5) / n)
        phi = golden * k
        out.append((complex(np.cos(theta / 2)), complex(np.exp(1j * phi) * np.sin(theta / 2))))
    return out
