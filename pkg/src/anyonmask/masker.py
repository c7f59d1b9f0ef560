"""Tripartite Latin-square masking: encoder, verifier, negative control.

The encoder maps a length-d coefficient vector onto a three-register
state (1/sqrt(d)) * sum_jk coeffs[j] |A[j][k], B[j][k], C[j][k]>.  When
every row of A is a permutation and B, C are mutually orthogonal Latin
squares, all three single-party marginals equal I/d for every input: the
information lives only in the correlations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .anyons import AnyonModel, abelian_c0, ising_like
from .latin import (
    SchemeTriple,
    cyclic_triple,
    standard_squares_d4,
    validate_triple,
)
from .qstate import (
    BasisKet,
    DensityMatrix,
    StateVector,
    hs_distance,
    partial_trace,
    product_basis,
)

DEFAULT_TOL = 1e-12


@dataclass(frozen=True)
class MaskingScheme:
    """A validated (A, B, C) triple bound to a model alphabet."""

    model: AnyonModel
    triple: SchemeTriple

    def __post_init__(self) -> None:
        if self.triple.d != self.model.d:
            raise ValueError(
                f"triple order {self.triple.d} does not match the "
                f"{self.model.name} alphabet size {self.model.d}"
            )
        report = validate_triple(self.triple)
        if not report.ok:
            raise ValueError(f"invalid scheme triple: {', '.join(report.violations)}")

    @property
    def d(self) -> int:
        return self.model.d

    @property
    def normalization(self) -> float:
        return 1.0 / math.sqrt(self.d)


def abelian_standard_scheme() -> MaskingScheme:
    return MaskingScheme(model=abelian_c0(), triple=standard_squares_d4())


def ising_cyclic_scheme(c: int = 1) -> MaskingScheme:
    return MaskingScheme(model=ising_like(c), triple=cyclic_triple(3))


def encode_basis(scheme: MaskingScheme, j: int) -> StateVector:
    """The j-th encoder row (1/sqrt(d)) * sum_k |A[j][k], B[j][k], C[j][k]>."""
    if not 0 <= j < scheme.d:
        raise ValueError(f"row index {j} out of range for order {scheme.d}")
    alphabet = scheme.model.alphabet
    a, b, c = scheme.triple.a, scheme.triple.b, scheme.triple.c
    amp = scheme.normalization
    return StateVector(
        {
            BasisKet((alphabet[a.cells[j][k]], alphabet[b.cells[j][k]], alphabet[c.cells[j][k]])): amp
            for k in range(scheme.d)
        }
    )


def encode(scheme: MaskingScheme, coeffs: Sequence[complex]) -> StateVector:
    """Encode a unit coefficient vector; the result has norm 1."""
    coeffs = np.asarray(coeffs, dtype=complex)
    if coeffs.shape != (scheme.d,):
        raise ValueError(f"expected {scheme.d} coefficients, got shape {coeffs.shape}")
    total = float(np.sum(np.abs(coeffs) ** 2))
    if abs(total - 1.0) > 1e-12:
        raise ValueError(f"coefficients must have unit norm, got |coeffs|^2 = {total}")
    alphabet = scheme.model.alphabet
    a, b, c = scheme.triple.a, scheme.triple.b, scheme.triple.c
    amp = scheme.normalization
    out: dict[BasisKet, complex] = {}
    for j in range(scheme.d):
        weight = coeffs[j] * amp
        for k in range(scheme.d):
            ket = BasisKet(
                (alphabet[a.cells[j][k]], alphabet[b.cells[j][k]], alphabet[c.cells[j][k]])
            )
            out[ket] = out.get(ket, 0j) + weight
    return StateVector(out)


@dataclass(frozen=True)
class MaskingReport:
    """Per-party reduced states with their distances from I/d."""

    marginals: tuple[DensityMatrix, ...]
    deviations: tuple[float, ...]
    tol: float
    verdict: bool
    seed: Optional[int] = None
    pair_deviations: Optional[dict[str, float]] = None

    @property
    def worst_deviation(self) -> float:
        return max(self.deviations)

    def record(self) -> dict:
        rec = {
            "per_party_deviation": list(self.deviations),
            "tol": self.tol,
            "verdict": "pass" if self.verdict else "fail",
            "seed": self.seed,
        }
        if self.pair_deviations is not None:
            rec["pair_deviation_info"] = dict(sorted(self.pair_deviations.items()))
        return rec


def verify_masking(
    state: StateVector,
    alphabet: Sequence[str],
    tol: float = DEFAULT_TOL,
    seed: Optional[int] = None,
    include_pairs: bool = False,
) -> MaskingReport:
    """Check that each single-party marginal of a 3-register state is I/d.

    Two-party marginals are never part of the verdict; they can be
    attached for information with ``include_pairs``.
    """
    if state.n_registers != 3:
        raise ValueError(f"masking verification needs 3 registers, got {state.n_registers}")
    basis = product_basis(alphabet, 1)
    target = DensityMatrix.maximally_mixed(basis)
    marginals = tuple(partial_trace(state, {party}, basis) for party in range(3))
    deviations = tuple(hs_distance(rho, target) for rho in marginals)
    pair_devs = None
    if include_pairs:
        pair_basis = product_basis(alphabet, 2)
        pair_target = DensityMatrix.maximally_mixed(pair_basis)
        pair_devs = {
            f"{i}{j}": hs_distance(partial_trace(state, {i, j}, pair_basis), pair_target)
            for i, j in ((0, 1), (0, 2), (1, 2))
        }
    return MaskingReport(
        marginals=marginals,
        deviations=deviations,
        tol=tol,
        verdict=max(deviations) <= tol,
        seed=seed,
        pair_deviations=pair_devs,
    )


def random_unit_coeffs(d: int, rng: np.random.Generator) -> np.ndarray:
    """d independent standard complex Gaussians, normalized to the unit sphere."""
    raw = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return raw / np.linalg.norm(raw)


@dataclass(frozen=True)
class MaskingCampaignResult:
    trials: int
    seed: int
    tol: float
    worst_deviation: float
    per_party_worst: tuple[float, ...]
    failed_trials: int
    verdict: bool

    def record(self) -> dict:
        return {
            "trials": self.trials,
            "seed": self.seed,
            "tol": self.tol,
            "worst_deviation": self.worst_deviation,
            "per_party_worst": list(self.per_party_worst),
            "failed_trials": self.failed_trials,
            "verdict": "pass" if self.verdict else "fail",
        }


def run_masking_campaign(
    scheme: MaskingScheme,
    trials: int,
    seed: int,
    tol: float = DEFAULT_TOL,
) -> MaskingCampaignResult:
    """Encode `trials` seeded random unit inputs and verify each marginal set."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = np.random.default_rng(seed)
    alphabet = scheme.model.alphabet
    worst = 0.0
    per_party = [0.0, 0.0, 0.0]
    failed = 0
    for _ in range(trials):
        coeffs = random_unit_coeffs(scheme.d, rng)
        report = verify_masking(encode(scheme, coeffs), alphabet, tol=tol, seed=seed)
        worst = max(worst, report.worst_deviation)
        for party in range(3):
            per_party[party] = max(per_party[party], report.deviations[party])
        if not report.verdict:
            failed += 1
    return MaskingCampaignResult(
        trials=trials,
        seed=seed,
        tol=tol,
        worst_deviation=worst,
        per_party_worst=tuple(per_party),
        failed_trials=failed,
        verdict=failed == 0,
    )


def bipartite_encode(triple: SchemeTriple, alphabet: Sequence[str], coeffs: Sequence[complex]) -> StateVector:
    """Two-register analog |j> -> (1/sqrt(d)) sum_k |B[j][k], C[j][k]>."""
    coeffs = np.asarray(coeffs, dtype=complex)
    d = triple.d
    if coeffs.shape != (d,):
        raise ValueError(f"expected {d} coefficients, got shape {coeffs.shape}")
    amp = 1.0 / math.sqrt(d)
    out: dict[BasisKet, complex] = {}
    for j in range(d):
        for k in range(d):
            ket = BasisKet((alphabet[triple.b.cells[j][k]], alphabet[triple.c.cells[j][k]]))
            out[ket] = out.get(ket, 0j) + coeffs[j] * amp
    return StateVector(out)


@dataclass(frozen=True)
class BipartiteControlReport:
    """Witness that two-register encoding leaks input information."""

    model_name: str
    probe_names: tuple[str, ...]
    max_distance: float
    witness: tuple[str, str, int]  # probe, probe, party

    def record(self) -> dict:
        return {
            "model": self.model_name,
            "probes": list(self.probe_names),
            "max_marginal_distance": self.max_distance,
            "witness": {
                "probe_a": self.witness[0],
                "probe_b": self.witness[1],
                "party": self.witness[2],
            },
        }


def _control_probes(d: int) -> list[tuple[str, np.ndarray]]:
    probes: list[tuple[str, np.ndarray]] = []
    for j in range(d):
        vec = np.zeros(d, dtype=complex)
        vec[j] = 1.0
        probes.append((f"basis-{j}", vec))
    uniform = np.ones(d, dtype=complex) / math.sqrt(d)
    probes.append(("uniform", uniform))
    phased = np.array([1j**j for j in range(d)], dtype=complex) / math.sqrt(d)
    probes.append(("uniform-i", phased))
    return probes


def bipartite_control(model: AnyonModel, triple: Optional[SchemeTriple] = None) -> BipartiteControlReport:
    """Show that the two-register encoder cannot mask: some probes' marginals differ.

    The probe set is fixed (the d basis inputs plus uniform superpositions
    with phases 1 and i) so the counterexample is deterministic.
    """
    if triple is None:
        triple = standard_squares_d4() if model.kind == "abelian" else cyclic_triple(model.d)
    alphabet = model.alphabet
    basis = product_basis(alphabet, 1)
    probes = _control_probes(model.d)
    marginals = {
        name: tuple(partial_trace(bipartite_encode(triple, alphabet, vec), {p}, basis) for p in (0, 1))
        for name, vec in probes
    }
    best = 0.0
    witness = (probes[0][0], probes[0][0], 0)
    names = [name for name, _ in probes]
    for i, name_a in enumerate(names):
        for name_b in names[i:]:
            for party in (0, 1):
                dist = hs_distance(marginals[name_a][party], marginals[name_b][party])
                if dist > best:
                    best = dist
                    witness = (name_a, name_b, party)
    return BipartiteControlReport(
        model_name=model.name,
        probe_names=tuple(names),
        max_distance=best,
        witness=witness,
    )
