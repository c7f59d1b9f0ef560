"""Labeled exact linear algebra for small multi-register sector states.

States are finite complex superpositions over labeled basis kets.  A ket
holds an ordered tuple of register labels (one sector label per party)
and an optional fusion-channel tag.  The tag is a whole-system attribute,
never a register: kets that differ only in the tag are orthogonal, and
partial traces always sum the tag away.

Everything here is immutable after construction and all operations are
pure functions, so values can be shared freely across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

PRUNE_EPS = 1e-15


class BasisKet(NamedTuple):
    """One labeled basis ket: register labels plus an optional channel tag."""

    labels: tuple[str, ...]
    tag: str | None = None

    def __str__(self) -> str:
        body = "|" + " ".join(self.labels) + ">"
        return body if self.tag is None else body + "_" + self.tag


@dataclass(frozen=True)
class StateVector:
    """A finite map of basis kets to complex amplitudes.

    Amplitudes with magnitude below ``PRUNE_EPS`` are dropped on
    construction, so a stored amplitude is never an accumulated zero.
    """

    amplitudes: dict[BasisKet, complex]

    def __post_init__(self) -> None:
        pruned: dict[BasisKet, complex] = {}
        n_registers = None
        for ket, amp in self.amplitudes.items():
            if n_registers is None:
                n_registers = len(ket.labels)
            elif len(ket.labels) != n_registers:
                raise ValueError("all kets in a state must have the same register count")
            value = complex(amp)
            if abs(value) > PRUNE_EPS:
                pruned[ket] = value
        object.__setattr__(self, "amplitudes", pruned)

    def items(self):
        return self.amplitudes.items()

    def __len__(self) -> int:
        return len(self.amplitudes)

    @property
    def n_registers(self) -> int:
        for ket in self.amplitudes:
            return len(ket.labels)
        return 0

    @property
    def tagged(self) -> bool:
        return any(ket.tag is not None for ket in self.amplitudes)

    def amplitude(self, ket: BasisKet) -> complex:
        return self.amplitudes.get(ket, 0j)


def basis_state(labels: Sequence[str], tag: str | None = None, amp: complex = 1.0) -> StateVector:
    return StateVector({BasisKet(tuple(labels), tag): amp})


def scale(state: StateVector, z: complex) -> StateVector:
    return StateVector({ket: z * amp for ket, amp in state.items()})


def add(s1: StateVector, s2: StateVector) -> StateVector:
    out = dict(s1.amplitudes)
    for ket, amp in s2.items():
        out[ket] = out.get(ket, 0j) + amp
    return StateVector(out)


def norm(state: StateVector) -> float:
    return math.sqrt(sum(abs(a) ** 2 for a in state.amplitudes.values()))


def inner(s1: StateVector, s2: StateVector) -> complex:
    """<s1|s2>, conjugate-linear in the first argument."""
    if len(s2) < len(s1):
        return inner(s2, s1).conjugate()
    return sum(a1.conjugate() * s2.amplitude(ket) for ket, a1 in s1.items())


def tensor(s1: StateVector, s2: StateVector) -> StateVector:
    """Tensor product; register tuples concatenate and amplitudes multiply.

    The channel tag is a whole-system attribute, so at most one factor may
    carry tags.
    """
    if s1.tagged and s2.tagged:
        raise ValueError("cannot tensor two tagged states; the channel tag is system-wide")
    out: dict[BasisKet, complex] = {}
    for k1, a1 in s1.items():
        for k2, a2 in s2.items():
            out[BasisKet(k1.labels + k2.labels, k1.tag or k2.tag)] = a1 * a2
    return StateVector(out)


@dataclass(frozen=True)
class DensityMatrix:
    """A small Hermitian operator indexed by register-label tuples.

    The basis never carries channel tags; tags are traced out before a
    density matrix is formed.
    """

    basis: tuple[tuple[str, ...], ...]
    entries: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.entries, dtype=complex)
        if arr.shape != (len(self.basis), len(self.basis)):
            raise ValueError(f"entries shape {arr.shape} does not match basis size {len(self.basis)}")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def trace(self) -> float:
        return float(np.trace(self.entries).real)

    def hermiticity_defect(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T))) if self.dim else 0.0

    def positivity_floor(self) -> float:
        """Smallest principal minor; nonnegative (to tolerance) iff PSD on these sizes."""
        floor = math.inf
        for size in range(1, self.dim + 1):
            for rows in combinations(range(self.dim), size):
                minor = np.linalg.det(self.entries[np.ix_(rows, rows)]).real
                floor = min(floor, minor)
        return floor if self.dim else 0.0

    def validate(self, trace_target: float | None = 1.0, tol: float = 1e-12) -> list[str]:
        problems = []
        if self.hermiticity_defect() > tol:
            problems.append("not-hermitian")
        if trace_target is not None and abs(self.trace() - trace_target) > tol:
            problems.append("trace-off-target")
        if self.positivity_floor() < -1e-10:
            problems.append("not-positive-semidefinite")
        return problems

    @staticmethod
    def maximally_mixed(basis: Sequence[tuple[str, ...]]) -> "DensityMatrix":
        basis = tuple(tuple(b) for b in basis)
        d = len(basis)
        return DensityMatrix(basis, np.eye(d, dtype=complex) / d)


def product_basis(alphabet: Sequence[str], n_registers: int) -> tuple[tuple[str, ...], ...]:
    """All label tuples of the given length, in alphabet (row-major) order."""
    out: list[tuple[str, ...]] = [()]
    for _ in range(n_registers):
        out = [prefix + (a,) for prefix in out for a in alphabet]
    return tuple(out)


def partial_trace(
    state: StateVector,
    keep: Iterable[int],
    basis: Sequence[tuple[str, ...]] | None = None,
) -> DensityMatrix:
    """Reduced density matrix of ``state`` on the kept registers.

    Channel tags are always summed over, whatever ``keep`` says.  If no
    basis is supplied, the sorted set of kept label tuples present in the
    state is used; supply the full product basis when comparing against a
    fixed target such as the maximally mixed state.
    """
    kept = sorted(set(keep))
    n = state.n_registers
    if not kept:
        raise ValueError("keep must name at least one register")
    if kept[0] < 0 or (n and kept[-1] >= n):
        raise ValueError(f"keep indices {kept} out of range for {n} registers")
    traced = [i for i in range(n) if i not in kept]

    groups: dict[tuple, list[tuple[tuple[str, ...], complex]]] = {}
    for ket, amp in state.items():
        kept_labels = tuple(ket.labels[i] for i in kept)
        env = (tuple(ket.labels[i] for i in traced), ket.tag)
        groups.setdefault(env, []).append((kept_labels, amp))

    if basis is None:
        basis = tuple(sorted({kl for members in groups.values() for kl, _ in members}))
    else:
        basis = tuple(tuple(b) for b in basis)
    index = {b: i for i, b in enumerate(basis)}

    rho = np.zeros((len(basis), len(basis)), dtype=complex)
    for members in groups.values():
        for kb, ab in members:
            try:
                i = index[kb]
            except KeyError:
                raise ValueError(f"state label tuple {kb} missing from the supplied basis") from None
            for kc, ac in members:
                rho[i, index[kc]] += ab * ac.conjugate()
    return DensityMatrix(basis, rho)


def hs_distance(r1: DensityMatrix, r2: DensityMatrix) -> float:
    """Hilbert-Schmidt distance sqrt(sum |delta_ij|^2); zero iff entrywise equal."""
    if r1.basis != r2.basis:
        raise ValueError("density matrices are indexed by different bases")
    return float(np.linalg.norm(r1.entries - r2.entries))


def max_amplitude_diff(s1: StateVector, s2: StateVector) -> float:
    """Largest termwise amplitude difference between two states."""
    kets = set(s1.amplitudes) | set(s2.amplitudes)
    if not kets:
        return 0.0
    return max(abs(s1.amplitude(k) - s2.amplitude(k)) for k in kets)


def states_close(s1: StateVector, s2: StateVector, tol: float = 1e-12) -> bool:
    return max_amplitude_diff(s1, s2) <= tol
