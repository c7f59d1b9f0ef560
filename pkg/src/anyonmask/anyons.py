"""Sector algebras of the two Kitaev-model excitation families.

The Abelian model (Chern number c = 0) has four superselection sectors:
the vacuum ``1``, the two vortices ``e`` and ``m``, and the fermion
``eps``.  The Ising-type models have three sectors ``1``, ``eps``,
``sigma`` and are parameterized by an odd Chern number taken mod 16.

Every exchange phase in either model is a power of exp(i*pi/8), so
phases are stored internally as integer multiples of pi/8 ("eighths").
Phase products are then integer additions mod 16 and comparisons stay
exact; conversion to a complex number happens only at the edge.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Mapping

VAC = "1"
E = "e"
M = "m"
EPS = "eps"
SIGMA = "sigma"

ABELIAN_ALPHABET = (VAC, E, M, EPS)
ISING_ALPHABET = (VAC, EPS, SIGMA)


def phase_from_eighths(k: int) -> complex:
    """Return exp(i*pi*k/8) for integer k, reduced mod 16.

    Multiples of pi/2 are returned as exact unit complex numbers so that
    values like -1 and -i carry no floating-point dust.
    """
    k = k % 16
    if k == 0:
        return complex(1.0, 0.0)
    if k == 4:
        return complex(0.0, 1.0)
    if k == 8:
        return complex(-1.0, 0.0)
    if k == 12:
        return complex(0.0, -1.0)
    return cmath.exp(1j * (math.pi * k / 8))


class UnknownSectorError(ValueError):
    """A label outside the model's alphabet was used."""


class FusionChannelError(ValueError):
    """A channel that is not a fusion outcome of the given pair was used."""


@dataclass(frozen=True)
class FusionOutcome:
    """The channel multiset of a pairwise fusion (size 1 or 2 here)."""

    channels: tuple[str, ...]

    def __iter__(self):
        return iter(self.channels)

    def __contains__(self, label: str) -> bool:
        return label in self.channels

    def __len__(self) -> int:
        return len(self.channels)

    @property
    def is_split(self) -> bool:
        return len(self.channels) > 1


@dataclass(frozen=True)
class AnyonModel:
    """Immutable lookup tables for one sector algebra.

    Fields hold the fusion table, the exchange phases R(a, b; channel) as
    pi/8 multiples, the topological spins (same encoding), and the
    Frobenius-Schur indicators (+1 or -1 per sector).
    """

    name: str
    kind: str  # "abelian" or "ising"
    c: int
    alphabet: tuple[str, ...]
    fusion: Mapping[tuple[str, str], tuple[str, ...]]
    r_eighths: Mapping[tuple[str, str, str], int]
    theta_eighths: Mapping[str, int]
    kappa: Mapping[str, int]

    @property
    def d(self) -> int:
        return len(self.alphabet)

    def index(self, label: str) -> int:
        try:
            return self.alphabet.index(label)
        except ValueError:
            raise UnknownSectorError(
                f"label {label!r} is not in the {self.name} alphabet {self.alphabet}"
            ) from None

    def check_label(self, label: str) -> None:
        self.index(label)

    def theta(self, label: str) -> complex:
        self.check_label(label)
        return phase_from_eighths(self.theta_eighths[label])


@dataclass(frozen=True)
class ModelValidationReport:
    ok: bool
    violations: tuple[str, ...]


def abelian_c0() -> AnyonModel:
    """The c = 0 Abelian model: Z2 x Z2 fusion with the vortex/fermion phases."""
    enc = {VAC: 0, E: 1, M: 2, EPS: 3}
    dec = {v: k for k, v in enc.items()}
    fusion = {
        (a, b): (dec[enc[a] ^ enc[b]],)
        for a in ABELIAN_ALPHABET
        for b in ABELIAN_ALPHABET
    }
    r_eighths: dict[tuple[str, str, str], int] = {}
    for x in ABELIAN_ALPHABET:
        r_eighths[(VAC, x, x)] = 0
        r_eighths[(x, VAC, x)] = 0
    r_eighths.update(
        {
            (E, M, EPS): 0,
            (M, E, EPS): 8,
            (E, EPS, M): 0,
            (EPS, E, M): 8,
            (EPS, M, E): 0,
            (M, EPS, E): 8,
            (E, E, VAC): 0,
            (M, M, VAC): 0,
            (EPS, EPS, VAC): 8,
        }
    )
    theta = {x: 0 for x in ABELIAN_ALPHABET}
    kappa = {x: 1 for x in ABELIAN_ALPHABET}
    return AnyonModel(
        name="abelian-c0",
        kind="abelian",
        c=0,
        alphabet=ABELIAN_ALPHABET,
        fusion=fusion,
        r_eighths=r_eighths,
        theta_eighths=theta,
        kappa=kappa,
    )


def ising_like(c: int = 1) -> AnyonModel:
    """An Ising-type model with odd Chern number c (taken mod 16).

    The vortex data is theta_sigma = exp(i*pi*c/8) and
    kappa_sigma = (-1)^((c^2 - 1)/8); the exchange phases are
    R(sigma,sigma;1) = kappa * exp(-i*pi*c/8),
    R(sigma,sigma;eps) = kappa * exp(i*3*pi*c/8),
    R(eps,sigma;sigma) = R(sigma,eps;sigma) = -i^c, and R(eps,eps;1) = -1.
    """
    if c % 2 == 0:
        raise ValueError(f"Ising-type models require an odd Chern number, got {c}")
    c = c % 16
    kappa_sigma = (-1) ** (((c * c - 1) // 8) % 2)
    kappa_shift = 0 if kappa_sigma == 1 else 8
    fusion = {
        (VAC, VAC): (VAC,),
        (VAC, EPS): (EPS,),
        (EPS, VAC): (EPS,),
        (VAC, SIGMA): (SIGMA,),
        (SIGMA, VAC): (SIGMA,),
        (EPS, EPS): (VAC,),
        (EPS, SIGMA): (SIGMA,),
        (SIGMA, EPS): (SIGMA,),
        (SIGMA, SIGMA): (VAC, EPS),
    }
    r_eighths: dict[tuple[str, str, str], int] = {}
    for x in ISING_ALPHABET:
        r_eighths[(VAC, x, x)] = 0
        r_eighths[(x, VAC, x)] = 0
    r_eighths.update(
        {
            (EPS, EPS, VAC): 8,
            (SIGMA, SIGMA, VAC): (kappa_shift - c) % 16,
            (SIGMA, SIGMA, EPS): (kappa_shift + 3 * c) % 16,
            (EPS, SIGMA, SIGMA): (8 + 4 * c) % 16,
            (SIGMA, EPS, SIGMA): (8 + 4 * c) % 16,
        }
    )
    theta = {VAC: 0, EPS: 8, SIGMA: c % 16}
    kappa = {VAC: 1, EPS: 1, SIGMA: kappa_sigma}
    return AnyonModel(
        name=f"ising-c{c}",
        kind="ising",
        c=c,
        alphabet=ISING_ALPHABET,
        fusion=fusion,
        r_eighths=r_eighths,
        theta_eighths=theta,
        kappa=kappa,
    )


def fuse(model: AnyonModel, a: str, b: str) -> FusionOutcome:
    """Full channel multiset of a x b."""
    model.check_label(a)
    model.check_label(b)
    return FusionOutcome(model.fusion[(a, b)])


def unique_channel(model: AnyonModel, a: str, b: str) -> str:
    """The single fusion channel of a x b; error if the fusion splits."""
    outcome = fuse(model, a, b)
    if outcome.is_split:
        raise FusionChannelError(
            f"fusion {a} x {b} has {len(outcome)} channels; a channel must be chosen"
        )
    return outcome.channels[0]


def r_angle(model: AnyonModel, a: str, b: str, channel: str) -> int:
    """Exchange phase of a over b in the given channel, as a pi/8 multiple mod 16."""
    if channel not in fuse(model, a, b):
        raise FusionChannelError(
            f"{channel!r} is not a fusion channel of ({a}, {b})"
        )
    return model.r_eighths[(a, b, channel)] % 16


def r_phase(model: AnyonModel, a: str, b: str, channel: str) -> complex:
    """Unit complex exchange phase R(a, b; channel) for a counterclockwise swap."""
    return phase_from_eighths(r_angle(model, a, b, channel))


def monodromy_angle(model: AnyonModel, a: str, b: str, channel: str) -> int:
    """Full-circle phase of a around b in the channel, as a pi/8 multiple."""
    return (r_angle(model, b, a, channel) + r_angle(model, a, b, channel)) % 16


def monodromy(model: AnyonModel, a: str, b: str, channel: str) -> complex:
    return phase_from_eighths(monodromy_angle(model, a, b, channel))


def _flat_fuse(model: AnyonModel, labels: tuple[str, ...], extra: str) -> tuple[str, ...]:
    out: list[str] = []
    for x in labels:
        out.extend(model.fusion[(x, extra)])
    return tuple(sorted(out, key=model.index))


def validate_model(model: AnyonModel) -> ModelValidationReport:
    """Check every structural invariant of the model tables by name."""
    bad: list[str] = []
    alphabet = model.alphabet

    for a in alphabet:
        for b in alphabet:
            if tuple(sorted(model.fusion[(a, b)])) != tuple(sorted(model.fusion[(b, a)])):
                bad.append(f"fusion-commutativity:({a},{b})")
        if model.fusion[(VAC, a)] != (a,):
            bad.append(f"vacuum-unit:{a}")
        if VAC not in model.fusion[(a, a)]:
            bad.append(f"self-inverse:{a}")

    for (a, b, ch), k in model.r_eighths.items():
        if abs(abs(phase_from_eighths(k)) - 1.0) > 1e-15:
            bad.append(f"r-modulus:({a},{b};{ch})")
        if ch not in model.fusion[(a, b)]:
            bad.append(f"r-channel:({a},{b};{ch})")

    # associativity of the flattened channel multisets on all triples
    for a in alphabet:
        for b in alphabet:
            for c in alphabet:
                left: list[str] = []
                for ab in model.fusion[(a, b)]:
                    left.extend(model.fusion[(ab, c)])
                right: list[str] = []
                for bc in model.fusion[(b, c)]:
                    right.extend(model.fusion[(a, bc)])
                if sorted(left) != sorted(right):
                    bad.append(f"fusion-associativity:({a},{b},{c})")

    if model.kind == "abelian":
        for x in alphabet:
            if model.theta_eighths[x] != 0:
                bad.append(f"abelian-theta:{x}")
            if model.kappa[x] != 1:
                bad.append(f"abelian-kappa:{x}")
        nontrivial = [x for x in alphabet if x != VAC]
        for a in nontrivial:
            for b in nontrivial:
                if a == b:
                    continue
                ch = model.fusion[(a, b)][0]
                if monodromy_angle(model, a, b, ch) != 8:
                    bad.append(f"abelian-distinct-monodromy:({a},{b})")
    elif model.kind == "ising":
        c = model.c
        if model.theta_eighths[SIGMA] != c % 16:
            bad.append("theta-sigma")
        if model.theta_eighths[VAC] != 0 or model.theta_eighths[EPS] != 8:
            bad.append("theta-vacuum-or-fermion")
        if model.kappa[SIGMA] != (-1) ** (((c * c - 1) // 8) % 2):
            bad.append("kappa-sigma")
        if monodromy_angle(model, EPS, SIGMA, SIGMA) != 8:
            bad.append("ising-eps-sigma-monodromy")
    else:
        bad.append(f"unknown-kind:{model.kind}")

    return ModelValidationReport(ok=not bad, violations=tuple(bad))


def table_lines(model: AnyonModel) -> list[str]:
    """Flat text serialization (one line per fusion/R/theta/kappa entry)."""
    idx = model.index
    lines = [
        f"model {model.name} kind={model.kind} c={model.c}",
        "alphabet " + " ".join(model.alphabet),
    ]
    for a, b in sorted(model.fusion, key=lambda ab: (idx(ab[0]), idx(ab[1]))):
        lines.append(f"fuse {a} {b} -> " + " ".join(model.fusion[(a, b)]))
    for a, b, ch in sorted(model.r_eighths, key=lambda k: (idx(k[0]), idx(k[1]), idx(k[2]))):
        lines.append(f"r {a} {b} {ch} {model.r_eighths[(a, b, ch)] % 16}")
    for x in model.alphabet:
        lines.append(f"theta {x} {model.theta_eighths[x] % 16}")
    for x in model.alphabet:
        lines.append(f"kappa {x} {model.kappa[x]:+d}")
    return lines
