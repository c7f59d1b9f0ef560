"""Teleportation-style masking in the three-sector Ising alphabet.

Alice holds a payload particle (register 0) and one half of a maximally
entangled channel (register 1); Bob holds the other half (register 2).
A cyclic-permutation encoding rewrites the joint state so that Alice's
pair is supported entirely on three mutually orthogonal phase-pattern
states built from the cube root of unity.  Projecting onto any of them
succeeds with probability exactly 1/3 and leaves Bob a phase-twisted
copy of the payload, fixed up by a diagonal correction.

After the encoding both of Alice's registers are maximally mixed for
every input, so the payload lives only in the correlations until the
measurement outcome is announced.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .anyons import ISING_ALPHABET
from .qstate import (
    BasisKet,
    DensityMatrix,
    StateVector,
    basis_state,
    hs_distance,
    inner,
    partial_trace,
    product_basis,
    tensor,
)

OMEGA = complex(-0.5, math.sqrt(3.0) / 2.0)

_OMEGA_POWERS = (complex(1.0, 0.0), OMEGA, OMEGA.conjugate())

DEFAULT_TOL = 1e-12


def omega_power(k: int) -> complex:
    """omega^k for omega = exp(2*pi*i/3)."""
    return _OMEGA_POWERS[k % 3]


def _as_unit_coeffs(coeffs: Sequence[complex]) -> np.ndarray:
    arr = np.asarray(coeffs, dtype=complex)
    if arr.shape != (3,):
        raise ValueError(f"expected 3 coefficients, got shape {arr.shape}")
    total = float(np.sum(np.abs(arr) ** 2))
    if abs(total - 1.0) > 1e-12:
        raise ValueError(f"coefficients must have unit norm, got |coeffs|^2 = {total}")
    return arr


def payload_state(coeffs: Sequence[complex]) -> StateVector:
    """The single-register state alpha|1> + beta|eps> + gamma|sigma>."""
    coeffs = _as_unit_coeffs(coeffs)
    return StateVector(
        {BasisKet((label,)): coeffs[i] for i, label in enumerate(ISING_ALPHABET)}
    )


def build_channel() -> StateVector:
    """The shared channel (|11> + |eps eps> + |sigma sigma>) / sqrt(3)."""
    amp = 1.0 / math.sqrt(3.0)
    return StateVector(
        {BasisKet((label, label)): amp for label in ISING_ALPHABET}
    )


def build_joint(coeffs: Sequence[complex]) -> StateVector:
    """Payload on register 0 tensored with the channel on registers 1, 2."""
    return tensor(payload_state(coeffs), build_channel())


def permutation_encode(state: StateVector) -> StateVector:
    """Cyclic-permutation encoding of a 3-register state.

    Basis kets map as |x, y, z> -> |z, y + x, x> (sector indices mod 3):
    register 1 advances by the payload sector and the payload swaps onto
    Bob's slot.  This is a permutation of basis kets, hence unitary.  On
    a joint payload-plus-channel state it leaves Alice's pair supported
    on the three phase-pattern states and maximally mixed registerwise.
    """
    if state.n_registers != 3:
        raise ValueError(f"encoding needs 3 registers, got {state.n_registers}")
    if state.tagged:
        raise ValueError("encoding is defined for untagged states")
    idx = {label: i for i, label in enumerate(ISING_ALPHABET)}
    out: dict[BasisKet, complex] = {}
    for ket, amp in state.items():
        x, y, z = (idx[label] for label in ket.labels)
        image = BasisKet(
            (
                ISING_ALPHABET[z],
                ISING_ALPHABET[(y + x) % 3],
                ISING_ALPHABET[x],
            )
        )
        out[image] = out.get(image, 0j) + amp
    return StateVector(out)


def alice_projector_states() -> tuple[StateVector, StateVector, StateVector]:
    """The three phase-pattern states on Alice's pair (unnormalized, norm 3).

    State i has amplitude omega^((i-1)(y-x)) on |x, y>; they are pairwise
    orthogonal because the omega powers sum to zero.
    """
    states = []
    for i in (1, 2, 3):
        amps = {
            BasisKet((ISING_ALPHABET[x], ISING_ALPHABET[y])): omega_power((i - 1) * (y - x))
            for x in range(3)
            for y in range(3)
        }
        states.append(StateVector(amps))
    return tuple(states)


def alice_measure(encoded: StateVector, outcome: int) -> tuple[float, StateVector]:
    """Project registers 0, 1 onto the normalized phase-pattern state.

    Returns the outcome probability and Bob's normalized conditional
    state on register 2.
    """
    if outcome not in (1, 2, 3):
        raise ValueError(f"outcome must be 1, 2, or 3, got {outcome}")
    if encoded.n_registers != 3:
        raise ValueError(f"measurement needs 3 registers, got {encoded.n_registers}")
    idx = {label: i for i, label in enumerate(ISING_ALPHABET)}
    bob = np.zeros(3, dtype=complex)
    for ket, amp in encoded.items():
        x, y, z = (idx[label] for label in ket.labels)
        # conjugate of the projector amplitude omega^((outcome-1)(y-x)), over norm 3
        bob[z] += omega_power(-(outcome - 1) * (y - x)) * amp / 3.0
    probability = float(np.sum(np.abs(bob) ** 2))
    if probability < 1e-15:
        raise ValueError(f"outcome {outcome} has zero probability on this state")
    bob /= math.sqrt(probability)
    return probability, StateVector(
        {BasisKet((label,)): bob[i] for i, label in enumerate(ISING_ALPHABET)}
    )


def correct(bob_state: StateVector, outcome: int) -> StateVector:
    """Bob's diagonal fix-up: multiply sector k by omega^((outcome-1)k)."""
    if outcome not in (1, 2, 3):
        raise ValueError(f"outcome must be 1, 2, or 3, got {outcome}")
    idx = {label: i for i, label in enumerate(ISING_ALPHABET)}
    return StateVector(
        {
            ket: amp * omega_power((outcome - 1) * idx[ket.labels[0]])
            for ket, amp in bob_state.items()
        }
    )


@dataclass(frozen=True)
class TeleportOutcome:
    outcome: int
    probability: float
    bob_state: StateVector
    corrected_state: StateVector
    fidelity: float

    def record(self) -> dict:
        return {
            "outcome": self.outcome,
            "probability": self.probability,
            "fidelity": self.fidelity,
            "correction": ("identity", "diag(1,w,w2)", "diag(1,w2,w)")[self.outcome - 1],
        }


@dataclass(frozen=True)
class TeleportRun:
    """Full pipeline record: channel, encoding, all three outcomes."""

    coeffs: tuple[complex, ...]
    joint: StateVector
    encoded: StateVector
    outcomes: tuple[TeleportOutcome, ...]
    probability_sum: float
    alice_marginal_deviations: tuple[float, float]
    held_marginal_deviation: float
    tol: float
    verdict: bool

    def record(self) -> dict:
        return {
            "input": [[z.real, z.imag] for z in self.coeffs],
            "outcomes": [o.record() for o in self.outcomes],
            "probability_sum": self.probability_sum,
            "alice_marginal_deviations": list(self.alice_marginal_deviations),
            "held_marginal_deviation_info": self.held_marginal_deviation,
            "tol": self.tol,
            "verdict": "pass" if self.verdict else "fail",
        }


def run_teleport(coeffs: Sequence[complex], tol: float = DEFAULT_TOL) -> TeleportRun:
    """Run the whole protocol and check its invariants.

    Gated checks: the three outcome probabilities are each 1/3, they sum
    to one, every post-correction fidelity to the payload is 1, and both
    of Alice's registers are maximally mixed before the measurement.
    Bob's pre-measurement marginal carries the input populations; its
    distance from I/3 is reported for information only.
    """
    coeffs = _as_unit_coeffs(coeffs)
    joint = build_joint(coeffs)
    encoded = permutation_encode(joint)
    payload = payload_state(coeffs)

    basis = product_basis(ISING_ALPHABET, 1)
    mixed = DensityMatrix.maximally_mixed(basis)
    alice_devs = tuple(
        hs_distance(partial_trace(encoded, {party}, basis), mixed) for party in (0, 1)
    )
    held_dev = hs_distance(partial_trace(encoded, {2}, basis), mixed)

    outcomes = []
    for i in (1, 2, 3):
        probability, bob = alice_measure(encoded, i)
        corrected = correct(bob, i)
        fidelity = abs(inner(payload, corrected)) ** 2
        outcomes.append(
            TeleportOutcome(
                outcome=i,
                probability=probability,
                bob_state=bob,
                corrected_state=corrected,
                fidelity=fidelity,
            )
        )
    probability_sum = sum(o.probability for o in outcomes)
    verdict = (
        abs(probability_sum - 1.0) <= tol
        and all(abs(o.probability - 1.0 / 3.0) <= tol for o in outcomes)
        and all(abs(o.fidelity - 1.0) <= tol for o in outcomes)
        and max(alice_devs) <= tol
    )
    return TeleportRun(
        coeffs=tuple(complex(z) for z in coeffs),
        joint=joint,
        encoded=encoded,
        outcomes=tuple(outcomes),
        probability_sum=probability_sum,
        alice_marginal_deviations=alice_devs,
        held_marginal_deviation=held_dev,
        tol=tol,
        verdict=verdict,
    )
