"""No-label states of two identical particles.

Two-particle states are formal linear combinations of unordered pairs
``|phi, chi>`` of one-particle states.  Swapping the two entries multiplies
the pair by the exchange sign ``eta`` (+1 bosons, -1 fermions); inner
products are the symmetrized ones

    <a1, a2 | b1, b2> = <a1|b1><a2|b2> + eta <a1|b2><a2|b1>
    <a | b1, b2>      = <a|b1> |b2> + eta <a|b2> |b1>

No particle labels appear anywhere in this module.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

from .errors import ConsistencyError, DomainError

ATOL = 1e-12
PRUNE = 1e-15
DEFAULT_REGIONS: tuple[str, ...] = ("L", "R")


class Statistics(enum.IntEnum):
    BOSON = 1
    FERMION = -1

    @property
    def eta(self) -> int:
        return int(self)

    @classmethod
    def parse(cls, value: Union[str, int, "Statistics"]) -> "Statistics":
        if isinstance(value, Statistics):
            return value
        if isinstance(value, str):
            key = value.strip().lower()
            aliases = {"boson": cls.BOSON, "bosons": cls.BOSON, "+1": cls.BOSON, "1": cls.BOSON,
                       "fermion": cls.FERMION, "fermions": cls.FERMION, "-1": cls.FERMION}
            if key not in aliases:
                raise DomainError(f"unknown statistics {value!r}")
            return aliases[key]
        if value in (1, -1):
            return cls(value)
        raise DomainError(f"exchange sign must be +1 or -1, got {value!r}")


class Pseudospin(enum.Enum):
    UP = "up"
    DOWN = "down"

    @property
    def index(self) -> int:
        return 0 if self is Pseudospin.UP else 1

    @property
    def arrow(self) -> str:
        return "↑" if self is Pseudospin.UP else "↓"


UP = Pseudospin.UP
DOWN = Pseudospin.DOWN
SPINS = (UP, DOWN)


def _spin(value) -> Pseudospin:
    if isinstance(value, Pseudospin):
        return value
    return Pseudospin(str(value).lower())


@dataclass(frozen=True)
class SpatialWavefunction:
    """Amplitudes of a one-particle spatial mode over a finite set of regions."""

    amplitudes: Mapping[str, complex]
    tol: float = field(default=ATOL, compare=False, repr=False)

    def __post_init__(self):
        amps = {str(k): complex(v) for k, v in dict(self.amplitudes).items()}
        if not amps:
            raise DomainError("a wavefunction needs at least one region")
        total = sum(abs(v) ** 2 for v in amps.values())
        if abs(total - 1.0) > self.tol:
            raise DomainError(f"wavefunction norm^2 = {total!r}, expected 1")
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_angle(cls, theta: float, phase: float = 0.0,
                   regions: tuple[str, str] = DEFAULT_REGIONS) -> "SpatialWavefunction":
        """``cos(theta)|L> + exp(i phase) sin(theta)|R>``."""
        left, right = regions
        return cls({left: np.cos(theta), right: np.exp(1j * phase) * np.sin(theta)})

    @property
    def regions(self) -> tuple[str, ...]:
        return tuple(self.amplitudes)

    def amplitude(self, region: str) -> complex:
        return self.amplitudes.get(region, 0j)

    def probability(self, region: str) -> float:
        return abs(self.amplitude(region)) ** 2

    def with_spin(self, spin, regions: Sequence[str] | None = None) -> "SingleParticleState":
        regions = tuple(regions) if regions is not None else self.regions
        missing = set(self.regions) - set(regions)
        if any(abs(self.amplitudes[r]) > 0 for r in missing):
            raise DomainError(f"regions {sorted(missing)} not in alphabet {regions}")
        coeffs = np.zeros((len(regions), 2), dtype=complex)
        s = _spin(spin).index
        for i, r in enumerate(regions):
            coeffs[i, s] = self.amplitude(r)
        return SingleParticleState(regions, coeffs)


PSI0 = SpatialWavefunction({"L": 1 / np.sqrt(2), "R": 1 / np.sqrt(2)})


class SingleParticleState:
    """Complex vector over the (region x pseudospin) basis.

    ``coeffs[i, s]`` is the amplitude on region ``regions[i]`` with spin
    index ``s`` (0 = up, 1 = down).  Instances are immutable.
    """

    __slots__ = ("regions", "coeffs")

    def __init__(self, regions: Sequence[str], coeffs):
        regions = tuple(regions)
        arr = np.array(coeffs, dtype=complex).reshape(len(regions), 2)
        arr.setflags(write=False)
        object.__setattr__(self, "regions", regions)
        object.__setattr__(self, "coeffs", arr)

    def __setattr__(self, name, value):
        raise AttributeError("SingleParticleState is immutable")

    @classmethod
    def basis(cls, region: str, spin, regions: Sequence[str] = DEFAULT_REGIONS) -> "SingleParticleState":
        regions = tuple(regions)
        if region not in regions:
            raise DomainError(f"region {region!r} not in alphabet {regions}")
        coeffs = np.zeros((len(regions), 2), dtype=complex)
        coeffs[regions.index(region), _spin(spin).index] = 1.0
        return cls(regions, coeffs)

    @classmethod
    def from_dict(cls, amplitudes: Mapping[tuple[str, object], complex],
                  regions: Sequence[str] = DEFAULT_REGIONS) -> "SingleParticleState":
        regions = tuple(regions)
        coeffs = np.zeros((len(regions), 2), dtype=complex)
        for (region, spin), value in amplitudes.items():
            if region not in regions:
                raise DomainError(f"region {region!r} not in alphabet {regions}")
            coeffs[regions.index(region), _spin(spin).index] += value
        return cls(regions, coeffs)

    @classmethod
    def spinor_at(cls, region: str, up: complex, down: complex,
                  regions: Sequence[str] = DEFAULT_REGIONS) -> "SingleParticleState":
        return cls.from_dict({(region, UP): up, (region, DOWN): down}, regions)

    @property
    def vector(self) -> np.ndarray:
        return self.coeffs.reshape(-1)

    def amplitude(self, region: str, spin) -> complex:
        return complex(self.coeffs[self.regions.index(region), _spin(spin).index])

    def spinor(self, region: str) -> np.ndarray:
        """The (up, down) components on ``region``."""
        if region not in self.regions:
            raise DomainError(f"region {region!r} not in alphabet {self.regions}")
        return np.array(self.coeffs[self.regions.index(region)])

    def support(self, tol: float = PRUNE) -> set[str]:
        return {r for r, row in zip(self.regions, self.coeffs) if np.any(np.abs(row) > tol)}

    def inner(self, other: "SingleParticleState") -> complex:
        """``<self|other>``, antilinear in ``self``."""
        _check_alphabet(self.regions, other.regions)
        return complex(np.vdot(self.coeffs, other.coeffs))

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def normalized(self) -> "SingleParticleState":
        n = self.norm()
        if n == 0:
            raise DomainError("cannot normalize the zero state")
        return SingleParticleState(self.regions, self.coeffs / n)

    def __add__(self, other: "SingleParticleState") -> "SingleParticleState":
        _check_alphabet(self.regions, other.regions)
        return SingleParticleState(self.regions, self.coeffs + other.coeffs)

    def __sub__(self, other: "SingleParticleState") -> "SingleParticleState":
        return self + (-1) * other

    def __mul__(self, scalar: complex) -> "SingleParticleState":
        return SingleParticleState(self.regions, complex(scalar) * self.coeffs)

    __rmul__ = __mul__

    def __neg__(self) -> "SingleParticleState":
        return (-1) * self

    def isclose(self, other: "SingleParticleState", atol: float = ATOL) -> bool:
        return self.regions == other.regions and bool(np.allclose(self.coeffs, other.coeffs, rtol=0, atol=atol))

    def __eq__(self, other):
        if not isinstance(other, SingleParticleState):
            return NotImplemented
        return self.isclose(other)

    __hash__ = None

    def _key(self) -> tuple:
        flat = np.round(self.vector, 12) + 0.0  # folds -0.0 into 0.0
        return tuple(x for z in flat for x in (z.real, z.imag))

    def __repr__(self):
        parts = []
        for r, row in zip(self.regions, self.coeffs):
            for s in SPINS:
                c = row[s.index]
                if abs(c) > PRUNE:
                    parts.append(f"({c:.6g})|{r}{s.arrow}>")
        return " + ".join(parts) if parts else "0"


def _check_alphabet(a: tuple[str, ...], b: tuple[str, ...]) -> None:
    if a != b:
        raise DomainError(f"region alphabets differ: {a} vs {b}")


Term = tuple[complex, SingleParticleState, SingleParticleState]


class TwoParticleState:
    """Linear combination of unordered pairs with a fixed exchange sign.

    Terms are stored canonically: within each pair the entries are ordered
    by their basis expansion (absorbing ``eta`` on a swap), equal pairs are
    merged, fermionic pairs of linearly dependent states are dropped and
    coefficients below ``PRUNE`` are pruned.
    """

    __slots__ = ("statistics", "regions", "terms")

    def __init__(self, statistics, terms: Iterable[Term]):
        statistics = Statistics.parse(statistics)
        terms = list(terms)
        regions = terms[0][1].regions if terms else DEFAULT_REGIONS
        object.__setattr__(self, "statistics", statistics)
        object.__setattr__(self, "regions", regions)
        object.__setattr__(self, "terms", tuple(_canonicalize(terms, statistics, regions)))

    def __setattr__(self, name, value):
        raise AttributeError("TwoParticleState is immutable")

    @property
    def eta(self) -> int:
        return self.statistics.eta

    def _compatible(self, other: "TwoParticleState") -> None:
        if self.statistics != other.statistics:
            raise DomainError("cannot combine states of different statistics")
        if self.terms and other.terms:
            _check_alphabet(self.regions, other.regions)

    def __add__(self, other: "TwoParticleState") -> "TwoParticleState":
        self._compatible(other)
        return TwoParticleState(self.statistics, self.terms + other.terms)

    def __sub__(self, other: "TwoParticleState") -> "TwoParticleState":
        return self + (-1) * other

    def __mul__(self, scalar: complex) -> "TwoParticleState":
        return TwoParticleState(self.statistics, [(complex(scalar) * c, a, b) for c, a, b in self.terms])

    __rmul__ = __mul__

    def __neg__(self) -> "TwoParticleState":
        return (-1) * self

    def norm(self) -> float:
        return norm(self)

    def normalized(self) -> "TwoParticleState":
        n = norm(self)
        if n == 0:
            raise DomainError("cannot normalize the zero state")
        return (1 / n) * self

    def isclose(self, other: "TwoParticleState", atol: float = ATOL) -> bool:
        self._compatible(other)
        return norm(self - other) <= atol

    def __eq__(self, other):
        if not isinstance(other, TwoParticleState):
            return NotImplemented
        try:
            return self.isclose(other)
        except DomainError:
            return False

    __hash__ = None

    def __repr__(self):
        name = self.statistics.name.lower()
        body = " + ".join(f"({c:.6g})|{a!r}, {b!r}|" for c, a, b in self.terms) or "0"
        return f"TwoParticleState[{name}]({body})"


def _dependent(a: SingleParticleState, b: SingleParticleState) -> bool:
    ab = abs(a.inner(b)) ** 2
    return ab >= a.inner(a).real * b.inner(b).real * (1 - ATOL)


def _canonicalize(terms: list[Term], statistics: Statistics, regions) -> list[Term]:
    eta = statistics.eta
    merged: dict[tuple, list] = {}
    for coeff, a, b in terms:
        _check_alphabet(a.regions, regions)
        _check_alphabet(b.regions, regions)
        coeff = complex(coeff)
        ka, kb = a._key(), b._key()
        if ka > kb:
            a, b, ka, kb = b, a, kb, ka
            coeff *= eta
        if eta == -1 and _dependent(a, b):
            continue
        slot = merged.setdefault((ka, kb), [0j, a, b])
        slot[0] += coeff
    out = [(c, a, b) for (c, a, b) in (merged[k] for k in sorted(merged)) if abs(c) > PRUNE]
    return out


def wedge(phi: SingleParticleState, chi: SingleParticleState, statistics,
          coeff: complex = 1.0) -> TwoParticleState:
    """The two-particle state ``coeff |phi, chi>``."""
    return TwoParticleState(statistics, [(coeff, phi, chi)])


def product_state(psi: SpatialWavefunction, psi_prime: SpatialWavefunction, statistics,
                  regions: Sequence[str] | None = None) -> TwoParticleState:
    """``|psi up, psi' down>`` for two independently prepared particles."""
    if regions is None:
        regions = tuple(dict.fromkeys(psi.regions + psi_prime.regions))
    return wedge(psi.with_spin(UP, regions), psi_prime.with_spin(DOWN, regions), statistics)


def mode_state(l: complex, r: complex, l_prime: complex, r_prime: complex, statistics,
               tol: float = ATOL) -> TwoParticleState:
    """Opposite-spin pair with ``psi = l|L> + r|R>``, ``psi' = l'|L> + r'|R>``."""
    psi = SpatialWavefunction({"L": l, "R": r}, tol=tol)
    psi_prime = SpatialWavefunction({"L": l_prime, "R": r_prime}, tol=tol)
    return product_state(psi, psi_prime, statistics, DEFAULT_REGIONS)


BraPair = tuple[SingleParticleState, SingleParticleState]


def _pair_amplitude(bra: BraPair, a: SingleParticleState, b: SingleParticleState, eta: int) -> complex:
    p, q = bra
    return p.inner(a) * q.inner(b) + eta * p.inner(b) * q.inner(a)


def overlap_two(bra: Union[BraPair, TwoParticleState], ket: TwoParticleState) -> complex:
    """Two-particle amplitude ``<bra|ket>``.

    ``bra`` is either a pair of one-particle states or a full
    :class:`TwoParticleState` (whose coefficients are conjugated).
    """
    eta = ket.eta
    if isinstance(bra, TwoParticleState):
        if bra.statistics != ket.statistics:
            raise DomainError("inner product between states of different statistics is not defined")
        bra_terms = bra.terms
    else:
        p, q = bra
        bra_terms = ((1.0, p, q),)
    total = 0j
    for cb, p, q in bra_terms:
        if ket.terms:
            _check_alphabet(p.regions, ket.regions)
        for ck, a, b in ket.terms:
            total += np.conj(cb) * ck * _pair_amplitude((p, q), a, b, eta)
    return complex(total)


def partial_overlap(bra: SingleParticleState, ket: TwoParticleState) -> SingleParticleState:
    """Dimension-reducing product ``<bra|ket>``; returns an unnormalized one-particle state."""
    eta = ket.eta
    out = np.zeros((len(bra.regions), 2), dtype=complex)
    for c, a, b in ket.terms:
        _check_alphabet(bra.regions, a.regions)
        out += c * (bra.inner(a) * b.coeffs + eta * bra.inner(b) * a.coeffs)
    return SingleParticleState(bra.regions, out)


def norm(state: TwoParticleState, atol: float = ATOL) -> float:
    value = overlap_two(state, state)
    scale = max(1.0, abs(value))
    if abs(value.imag) > atol * scale:
        raise ConsistencyError(f"self-overlap has imaginary part {value.imag!r}")
    if value.real < -atol * scale:
        raise ConsistencyError(f"negative squared norm {value.real!r}")
    return float(np.sqrt(max(value.real, 0.0)))
