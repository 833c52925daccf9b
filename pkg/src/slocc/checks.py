"""Randomized equivalence between the no-label pipeline and the tensor oracle."""
from __future__ import annotations

from collections import defaultdict

import numpy as np

from . import oracle
from .algebra import Statistics, TwoParticleState, overlap_two, partial_overlap
from .entanglement import (concurrence_pure, condition_on_region, entanglement_lr, entanglement_of_formation,
                           localized_partial_trace, operational_entanglement, project_lr)
from .sampling import random_mode_state, random_single, random_spinor, random_two_particle
from .teleport import InputSpinor, expand_protocol

DEFAULT_TOLERANCE = 1e-10

QUANTITIES = (
    "inner_product",
    "partial_overlap",
    "partial_trace",
    "reduced_matrix",
    "projection",
    "entropy_closed_form",
    "entropy_oracle",
    "concurrence",
    "eq7_identity",
    "teleport_branches",
    "adversarial_fermion",
)


def _dev(x, y) -> float:
    return float(np.max(np.abs(np.asarray(x) - np.asarray(y)))) if np.size(x) else 0.0


def _adversarial_fermion_state(rng: np.random.Generator) -> TwoParticleState:
    """Fermion pairs that nearly or exactly vanish: repeated, rescaled and near-colinear entries."""
    a = random_single(rng)
    b = random_single(rng)
    eps = 10.0 ** rng.uniform(-8, -2)
    phase = np.exp(1j * rng.uniform(0, 2 * np.pi))
    terms = [
        (1.0, a, phase * a),
        (1.0, a, a + eps * b),
        (rng.normal(), b, a),
        (rng.normal(), a, b),
    ]
    return TwoParticleState(Statistics.FERMION, terms)


def run_suite(cases: int = 1000, seed: int = 0, fault: float = 0.0) -> dict[str, float]:
    """Maximum absolute deviation per quantity over ``cases`` random draws per statistics.

    ``fault`` is added to the teleportation deviation; it exists so the
    failure path can be exercised.
    """
    rng = np.random.default_rng(seed)
    worst: dict[str, float] = defaultdict(float)

    def record(name, value):
        worst[name] = max(worst[name], float(value))

    for stats in (Statistics.BOSON, Statistics.FERMION):
        for _ in range(cases):
            # generic states on {L, R}
            ket = random_two_particle(rng, stats)
            bra_state = random_two_particle(rng, stats, normalize=False)
            pair = (random_single(rng), random_single(rng))
            record("inner_product", abs(overlap_two(pair, ket) - oracle.oracle_overlap(pair, ket)))
            record("inner_product", abs(overlap_two(bra_state, ket) - oracle.oracle_overlap(bra_state, ket)))
            emb = oracle.embed(ket)
            phi = random_single(rng)
            record("partial_overlap", _dev(partial_overlap(phi, ket).vector, oracle.oracle_partial_overlap(phi, emb)))
            rho = localized_partial_trace(ket, "L")
            record("partial_trace", _dev(rho.unnormalized, oracle.oracle_partial_trace(emb, "L")))

            # opposite-spin product states built from peaked modes
            state, (l, r, lp, rp) = random_mode_state(rng, stats)
            emb = oracle.embed(state)
            cond = condition_on_region(localized_partial_trace(state, "L"), "R")
            ocond = oracle.oracle_reduced_matrix(emb, "L", "R")
            record("reduced_matrix", max(_dev(cond.matrix, ocond.matrix), abs(cond.weight - ocond.weight)))
            proj = project_lr(state)
            oamps, oprob = oracle.oracle_project_lr(emb)
            record("projection", max(_dev(proj.amplitudes * np.sqrt(proj.probability), oamps),
                                     abs(proj.probability - oprob)))
            e_matrix = entanglement_lr(state)
            e_closed = operational_entanglement(abs(l) ** 2, abs(lp) ** 2, abs(r) ** 2, abs(rp) ** 2)
            record("entropy_closed_form", abs(e_matrix - e_closed))
            record("entropy_oracle", abs(e_matrix - oracle.oracle_entanglement_lr(emb)))
            c = concurrence_pure(proj)
            record("concurrence", abs(c - oracle.oracle_concurrence(oamps / np.sqrt(oprob))))
            record("eq7_identity", abs(e_closed - entanglement_of_formation(c)))

            # teleportation branches
            a, b = random_spinor(rng)
            expected = oracle.oracle_teleport_branches(a, b, int(stats))
            for br in expand_protocol(InputSpinor(a, b), stats):
                key = (br.sector, br.bell.value if br.bell else None)
                region = "R" if br.sector == "LR" else br.residual.regions[0]
                got = br.coefficient * br.residual.spinor(region)
                record("teleport_branches", _dev(got, expected[key]) + fault)

            adv = _adversarial_fermion_state(rng)
            pair = (random_single(rng), random_single(rng))
            record("adversarial_fermion", abs(overlap_two(pair, adv) - oracle.oracle_overlap(pair, adv)))
            record("adversarial_fermion", abs(overlap_two(adv, adv) - oracle.oracle_overlap(adv, adv)))
            if not oracle.embed(adv).is_exchange_symmetric():
                record("adversarial_fermion", 1.0)

    return {q: worst[q] for q in QUANTITIES}


def passed(deviations: dict[str, float], tolerance: float = DEFAULT_TOLERANCE) -> bool:
    return all(v <= tolerance for v in deviations.values())

