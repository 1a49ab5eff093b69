"""Conditional teleportation of an unknown single-rail qubit over a W network.

One party (Alice) shares a symmetric N-mode single-photon W state with N-1
others; m of them cooperate by measuring their modes and finding vacuum,
which concentrates the photon into a Bell-plus-vacuum mixture between
Alice and Bob.  Alice mixes the unknown qubit a|1> + b|0> with her share
on a splitter of angle theta and counts photons at both outputs.  Only the
events with exactly one photon at exactly one output herald a teleported
state; for the one-photon-at-d event Bob applies a pi phase shift.

Everything downstream of that story is computed twice: closed forms in the
model parameters (N, m, eta, theta), and a full Fock-space simulation of
the pipeline.  Averages over the unknown qubit use the uniform Bloch
measure; because every integrand here is a low-order polynomial in the
qubit amplitudes, the simulated averages are evaluated exactly by running
the pipeline on the four operator-basis elements |j><k| of the qubit and
contracting with precomputed Bloch moments (quadrature and Monte Carlo
paths exist as independent cross-checks).
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from .circuits import bell_splitter, generate_w, symmetric_angles
from .config import TOL
from .detection import DetectorModel, condition, povm_number, povm_onoff
from .fock import (
    DensityOperator,
    FockSpace,
    PureState,
    _embedded_unitary,
    apply_phase_shift,
    apply_two_mode_unitary,
    partial_trace,
    tensor,
)
from .optimize import bisect_root, golden_section_max


class BellEvent(Enum):
    """Detection pattern (photons at output c, photons at output d)."""

    D00 = (0, 0)
    D10 = (1, 0)
    D01 = (0, 1)
    D20 = (2, 0)
    D11 = (1, 1)
    D02 = (0, 2)

    @property
    def counts(self) -> tuple[int, int]:
        return self.value

    @property
    def advantageous(self) -> bool:
        return self in ADVANTAGEOUS


ADVANTAGEOUS = frozenset({BellEvent.D10, BellEvent.D01})
REJECTED = tuple(e for e in BellEvent if e not in ADVANTAGEOUS)


def bell_events() -> tuple[BellEvent, ...]:
    """All six distinguishable detection patterns for at most two photons."""
    return tuple(BellEvent)


def _as_event(event) -> BellEvent:
    if isinstance(event, BellEvent):
        return event
    try:
        return BellEvent[str(event)]
    except KeyError:
        raise ValueError(f"unknown detection event {event!r}") from None


_DETECTOR_KINDS = {
    "number": "number",
    "number-resolving": "number",
    "onoff": "onoff",
    "on-off": "onoff",
}
_EVENT_SETS = {
    "D10": (BellEvent.D10,),
    "D01": (BellEvent.D01,),
    "both": (BellEvent.D10, BellEvent.D01),
}


@dataclass(frozen=True)
class TeleportParams:
    """Network size, cooperation count, detector efficiency, splitter angle."""

    N: int
    m: int
    eta: float
    theta: float
    detector_kind: str = "number"
    event_set: str = "D10"

    def __post_init__(self) -> None:
        n, m = int(self.N), int(self.m)
        if n < 2:
            raise ValueError("the network needs at least two parties")
        if not 0 <= m <= n - 2:
            raise ValueError(f"cooperating count {m} outside [0, {n - 2}]")
        eta, theta = float(self.eta), float(self.theta)
        if not 0.0 < eta <= 1.0:
            raise ValueError(f"efficiency {eta} outside (0, 1]")
        if not 0.0 <= theta <= math.pi / 2 + 1e-12:
            raise ValueError(f"splitter angle {theta} outside [0, pi/2]")
        kind = _DETECTOR_KINDS.get(self.detector_kind)
        if kind is None:
            raise ValueError(f"unknown detector kind {self.detector_kind!r}")
        if self.event_set not in _EVENT_SETS:
            raise ValueError(f"unknown event set {self.event_set!r}")
        object.__setattr__(self, "N", n)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "eta", eta)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "detector_kind", kind)

    @property
    def events(self) -> tuple[BellEvent, ...]:
        return _EVENT_SETS[self.event_set]


@dataclass(frozen=True)
class UnknownQubit:
    """Single-rail qubit a|1> + b|0| with |a|^2 + |b|^2 = 1."""

    a: complex
    b: complex

    def __post_init__(self) -> None:
        a, b = complex(self.a), complex(self.b)
        if abs(abs(a) ** 2 + abs(b) ** 2 - 1.0) > TOL.norm:
            raise ValueError("qubit amplitudes are not normalized")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def from_bloch(cls, theta_i: float, phi_i: float) -> "UnknownQubit":
        return cls(
            math.cos(theta_i / 2.0) * np.exp(-1j * phi_i), math.sin(theta_i / 2.0)
        )

    def state(self) -> PureState:
        return PureState(FockSpace(1), {(1,): self.a, (0,): self.b})


@dataclass(frozen=True)
class TeleportReport:
    """Bloch-averaged fidelity and success probability at one parameter point."""

    params: TeleportParams
    avg_fidelity: float
    avg_probability: float
    R_theta: float
    Rprime_theta: float
    optimal: bool = False
    theta_star: float | None = None

    def __post_init__(self) -> None:
        if not -TOL.norm <= self.avg_fidelity <= 1.0 + TOL.norm:
            raise ValueError(f"average fidelity {self.avg_fidelity} outside [0, 1]")
        if not -TOL.norm <= self.avg_probability <= 1.0 + TOL.norm:
            raise ValueError(f"average probability {self.avg_probability} outside [0, 1]")
        if self.optimal and self.theta_star is None:
            raise ValueError("optimal report must carry the optimizing angle")


# ---------------------------------------------------------------------------
# Closed forms.
# ---------------------------------------------------------------------------


def vacuum_weight(n: int, m: int, eta: float, theta: float) -> float:
    """R(theta): weight of the background vacuum reaching Bob on the
    one-photon-at-c event, relative to eta/N."""
    return (n - eta * m - 2.0) * math.cos(theta) ** 2 + 1.0 - eta


def onoff_excess(eta: float, theta: float) -> float:
    """R'(theta) = 2 eta sin^2 cos^2: extra vacuum admitted when the c
    detector cannot tell one photon from two."""
    return 2.0 * eta * (math.sin(theta) * math.cos(theta)) ** 2


def _event_background(params: TeleportParams, event: BellEvent) -> float:
    # after Bob's correction the d-side event sees the complementary angle;
    # the on-off excess is symmetric under that swap
    angle = params.theta if event is BellEvent.D10 else params.theta + math.pi / 2
    r = vacuum_weight(params.N, params.m, params.eta, angle)
    if params.detector_kind == "onoff":
        r += onoff_excess(params.eta, params.theta)
    return r


def _closed_integrals(params: TeleportParams) -> tuple[float, float]:
    """(numerator, denominator) of the averaged fidelity: sums over events of
    the Bloch-averaged unnormalized fidelity and event probability, both in
    units of eta/(2N)."""
    s2 = math.sin(2.0 * params.theta)
    num = den = 0.0
    for event in params.events:
        r = _event_background(params, event)
        num += (2.0 + s2 + r) / 3.0
        den += 1.0 + r
    return num, den


def averaged_fidelity_probability(params: TeleportParams) -> TeleportReport:
    """Closed-form Bloch-averaged fidelity and success probability.

    Per accepted event e the fidelity is (1/3)[1 + (1 + sin 2theta)/(1+R_e)]
    and the probability (eta/2N)(1+R_e), with R_e the event's background
    weight; event combinations average with probability weights.
    """
    num, den = _closed_integrals(params)
    return TeleportReport(
        params=params,
        avg_fidelity=num / den,
        avg_probability=params.eta / (2.0 * params.N) * den,
        R_theta=vacuum_weight(params.N, params.m, params.eta, params.theta),
        Rprime_theta=(
            onoff_excess(params.eta, params.theta)
            if params.detector_kind == "onoff"
            else 0.0
        ),
    )


def _fbar(params: TeleportParams) -> float:
    num, den = _closed_integrals(params)
    return num / den


def event_probability_closed_form(
    event, qubit: UnknownQubit, params: TeleportParams
) -> float:
    """Probability of the given accepted event for a specific input qubit."""
    event = _as_event(event)
    if event not in ADVANTAGEOUS:
        raise ValueError(f"{event.name} does not herald a teleported state")
    c, s = math.cos(params.theta), math.sin(params.theta)
    amp1, amp0 = (qubit.a * c, qubit.b * s) if event is BellEvent.D10 else (
        qubit.a * s,
        qubit.b * c,
    )
    r = _event_background(params, event)
    return (
        params.eta
        / params.N
        * (abs(amp1) ** 2 + abs(amp0) ** 2 + abs(qubit.a) ** 2 * r)
    )


# ---------------------------------------------------------------------------
# Simulated pipeline.
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _conditional_resource_cached(n: int, m: int, eta: float) -> DensityOperator:
    rho = generate_w(symmetric_angles(n)).to_density()
    if m:
        vac = povm_number(0, DetectorModel(eta))
        rho = condition(rho, {2 + k: vac for k in range(m)})
    if rho.num_modes > 2:
        rho = partial_trace(rho, (0, 1))
    return rho


def conditional_resource(params: TeleportParams) -> DensityOperator:
    """Alice-Bob pair after the m cooperating parties all report vacuum.

    Built by running the preparation circuit and conditioning modes
    2..m+1 on the vacuum outcome (unnormalized; the trace is the heralding
    probability (N - eta m)/N).  Results are cached per (N, m, eta).
    """
    return _conditional_resource_cached(params.N, params.m, params.eta)


def conditional_resource_closed_form(params: TeleportParams) -> DensityOperator:
    """The same pair as an explicit Bell-plus-vacuum mixture:
    (2/N)|Psi+><Psi+| + ((N - eta m - 2)/N)|00><00|."""
    space = FockSpace(2)
    psi = np.zeros(space.dim, dtype=complex)
    psi[space.index[(1, 0)]] = 1.0 / math.sqrt(2.0)
    psi[space.index[(0, 1)]] = 1.0 / math.sqrt(2.0)
    mat = (2.0 / params.N) * np.outer(psi, psi.conj())
    vac = space.index[(0, 0)]
    mat[vac, vac] += (params.N - params.eta * params.m - 2.0) / params.N
    return DensityOperator(space, mat)


def _event_assignments(event: BellEvent, params: TeleportParams) -> dict:
    det = DetectorModel(params.eta)
    kc, kd = event.counts
    if params.detector_kind == "number":
        return {0: povm_number(kc, det), 1: povm_number(kd, det)}
    return {0: povm_onoff(kc > 0, det), 1: povm_onoff(kd > 0, det)}


def bob_state(event, qubit: UnknownQubit, params: TeleportParams) -> DensityOperator:
    """Bob's unnormalized state after an accepted event, fully simulated.

    Pipeline: qubit tensor resource -> splitter on (qubit, Alice) ->
    detector conditioning on both outputs -> Bob's pi correction for the
    one-photon-at-d event.  The trace is the event probability.
    """
    event = _as_event(event)
    if event not in ADVANTAGEOUS:
        raise ValueError(f"{event.name} does not herald a teleported state")
    probe = tensor(qubit.state().to_density(), conditional_resource(params))
    probe = apply_two_mode_unitary(probe, (0, 1), bell_splitter(params.theta))
    probe = condition(probe, _event_assignments(event, params))
    if event is BellEvent.D01:
        probe = apply_phase_shift(probe, 0, math.pi)
    return probe


def bob_state_closed_form(
    event, qubit: UnknownQubit, params: TeleportParams
) -> DensityOperator:
    """Bob's state as (eta/N)[|phi'><phi'| + |a|^2 R_e |0><0|] with
    |phi'> = a cos(theta)|1> + b sin(theta)|0> for the c event and the
    complementary angles (after Bob's correction) for the d event."""
    event = _as_event(event)
    if event not in ADVANTAGEOUS:
        raise ValueError(f"{event.name} does not herald a teleported state")
    c, s = math.cos(params.theta), math.sin(params.theta)
    amp1, amp0 = (qubit.a * c, qubit.b * s) if event is BellEvent.D10 else (
        qubit.a * s,
        qubit.b * c,
    )
    space = FockSpace(1)
    psi = np.zeros(space.dim, dtype=complex)
    psi[space.index[(1,)]] = amp1
    psi[space.index[(0,)]] = amp0
    mat = np.outer(psi, psi.conj())
    r = _event_background(params, event)
    vac = space.index[(0,)]
    mat[vac, vac] += abs(qubit.a) ** 2 * r
    return DensityOperator(space, params.eta / params.N * mat)


# ---------------------------------------------------------------------------
# Exact Bloch averaging of the simulated pipeline.
#
# The pipeline is linear in the input operator, so running it on the four
# qubit operator-basis elements |j><k| (j, k photons in the qubit mode)
# yields kernels from which any input's fidelity and probability follow,
# and their Bloch averages follow from fixed moments of the amplitudes.
# ---------------------------------------------------------------------------

_QUBIT_SPACE = FockSpace(1)
_RESOURCE_SPACE = FockSpace(2)
_JOINT_SPACE = FockSpace(3)


@lru_cache(maxsize=1)
def _joint_index_maps():
    joint, res = _JOINT_SPACE, _RESOURCE_SPACE
    tensor_maps = {}
    for j in (0, 1):
        for k in (0, 1):
            rows, cols, r_rows, r_cols = [], [], [], []
            for ib, tb in enumerate(res.basis):
                row = joint.index.get((j,) + tb)
                if row is None:
                    continue
                for jb, ub in enumerate(res.basis):
                    col = joint.index.get((k,) + ub)
                    if col is None:
                        continue
                    rows.append(row)
                    cols.append(col)
                    r_rows.append(ib)
                    r_cols.append(jb)
            tensor_maps[(j, k)] = tuple(np.array(a) for a in (rows, cols, r_rows, r_cols))
    groups: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for i, occ in enumerate(joint.basis):
        groups.setdefault((occ[0], occ[1]), []).append((i, occ[2]))
    pi, pj, pk, pl = [], [], [], []
    for members in groups.values():
        for i, ki in members:
            for jdx, kj in members:
                pi.append(i)
                pj.append(jdx)
                pk.append(ki)
                pl.append(kj)
    ptrace_map = tuple(np.array(a) for a in (pi, pj, pk, pl))
    return tensor_maps, ptrace_map


@lru_cache(maxsize=4096)
def _bell_unitary(theta: float) -> np.ndarray:
    u = _embedded_unitary(_JOINT_SPACE, (0, 1), bell_splitter(theta))
    u.setflags(write=False)
    return u


@lru_cache(maxsize=None)
def _event_weight_sqrt(eta: float, kind: str, kc: int, kd: int) -> np.ndarray:
    det = DetectorModel(eta)
    if kind == "number":
        ec = povm_number(kc, det).entries
        ed = povm_number(kd, det).entries
    else:
        ec = povm_onoff(kc > 0, det).entries
        ed = povm_onoff(kd > 0, det).entries
    w = np.sqrt([ec[occ[0]] * ed[occ[1]] for occ in _JOINT_SPACE.basis])
    w.setflags(write=False)
    return w


def _transported(params: TeleportParams) -> dict:
    """The four operator-basis inputs pushed through tensor + splitter."""
    resource = conditional_resource(params).matrix
    tensor_maps, _ = _joint_index_maps()
    u = _bell_unitary(params.theta)
    out = {}
    for jk, (rows, cols, r_rows, r_cols) in tensor_maps.items():
        t = np.zeros((_JOINT_SPACE.dim, _JOINT_SPACE.dim), dtype=complex)
        t[rows, cols] = resource[r_rows, r_cols]
        out[jk] = u @ t @ u.conj().T
    return out


def _condition_kernels(mats: dict, params: TeleportParams, event: BellEvent, flip: bool) -> dict:
    _, (pi, pj, pk, pl) = _joint_index_maps()
    kc, kd = event.counts
    sqw = _event_weight_sqrt(params.eta, params.detector_kind, kc, kd)
    out = {}
    for jk, m in mats.items():
        weighted = sqw[:, None] * m * sqw[None, :]
        k = np.zeros((3, 3), dtype=complex)
        np.add.at(k, (pk, pl), weighted[pi, pj])
        if flip:
            k[1, :] *= -1.0
            k[:, 1] *= -1.0
        out[jk] = k
    return out


def _bob_kernels(params: TeleportParams, event: BellEvent) -> dict:
    return _condition_kernels(
        _transported(params), params, event, flip=event is BellEvent.D01
    )


# Bloch moments of the amplitude monomials appearing in the fidelity:
# <|a|^4> = <|b|^4> = 1/3 and <|a|^2 |b|^2> = 1/6 (|a|^2 is uniform on [0, 1]).
def _event_integrals(kernels: dict) -> tuple[float, float]:
    k11, k10, k01, k00 = kernels[(1, 1)], kernels[(1, 0)], kernels[(0, 1)], kernels[(0, 0)]
    int_f = (k11[1, 1] + k00[0, 0]) / 3.0 + (
        k11[0, 0] + k00[1, 1] + k10[1, 0] + k01[0, 1]
    ) / 6.0
    int_p = (np.trace(k11) + np.trace(k00)) / 2.0
    return float(int_f.real), float(int_p.real)


def _sample_values(kernels: dict, a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Unnormalized fidelity and probability for arrays of qubit amplitudes."""
    coeffs = {
        (1, 1): np.abs(a) ** 2,
        (1, 0): a * b,
        (0, 1): np.conj(a) * b,
        (0, 0): b * b,
    }
    f = np.zeros(a.shape, dtype=complex)
    p = np.zeros(a.shape, dtype=complex)
    for jk, k in kernels.items():
        inner = (
            np.abs(a) ** 2 * k[1, 1]
            + np.conj(a) * b * k[1, 0]
            + a * b * k[0, 1]
            + b * b * k[0, 0]
        )
        f += coeffs[jk] * inner
        p += coeffs[jk] * np.trace(k)
    return f.real, p.real


def bloch_average(f, n_polar: int = 8, n_azimuth: int = 16) -> float:
    """Average a function of UnknownQubit over the uniform Bloch measure.

    Gauss-Legendre in cos(theta_i) crossed with a uniform azimuthal grid;
    exact (well beyond 1e-8) for the polynomial-in-amplitude integrands
    arising in this protocol.
    """
    xs, wx = np.polynomial.legendre.leggauss(n_polar)
    total = 0.0
    for x, w in zip(xs, wx):
        theta_i = math.acos(float(np.clip(x, -1.0, 1.0)))
        for k in range(n_azimuth):
            qubit = UnknownQubit.from_bloch(theta_i, 2.0 * math.pi * k / n_azimuth)
            total += w / 2.0 / n_azimuth * f(qubit)
    return total


def simulate_averaged(
    params: TeleportParams, method: str = "moments", n_polar: int = 8, n_azimuth: int = 16
) -> tuple[float, float]:
    """Bloch-averaged (fidelity, probability) of the simulated pipeline.

    method "moments" runs the pipeline on the qubit operator basis and
    contracts with exact Bloch moments; "quadrature" runs one full
    simulation per quadrature node.  The two routes share no averaging
    code and must agree to rounding.
    """
    if method == "moments":
        sum_f = sum_p = 0.0
        for event in params.events:
            int_f, int_p = _event_integrals(_bob_kernels(params, event))
            sum_f += int_f
            sum_p += int_p
        return float(sum_f / sum_p), float(sum_p)
    if method == "quadrature":
        xs, wx = np.polynomial.legendre.leggauss(n_polar)
        sum_f = sum_p = 0.0
        for x, w in zip(xs, wx):
            theta_i = math.acos(float(np.clip(x, -1.0, 1.0)))
            for k in range(n_azimuth):
                qubit = UnknownQubit.from_bloch(theta_i, 2.0 * math.pi * k / n_azimuth)
                target = qubit.state()
                weight = w / 2.0 / n_azimuth
                for event in params.events:
                    rho_b = bob_state(event, qubit, params)
                    sum_f += weight * float(
                        np.real(target.to_vector().conj() @ rho_b.matrix @ target.to_vector())
                    )
                    sum_p += weight * rho_b.trace()
        return float(sum_f / sum_p), float(sum_p)
    raise ValueError(f"unknown averaging method {method!r}")


@dataclass(frozen=True)
class MCResult:
    """Monte Carlo Bloch average with ratio-estimator standard errors."""

    avg_fidelity: float
    avg_probability: float
    stderr_fidelity: float
    stderr_probability: float
    n_samples: int


def mc_averaged(
    params: TeleportParams, n_samples: int = 1_000_000, seed: int = 0, chunks: int = 8
) -> MCResult:
    """Monte Carlo Bloch average of the simulated pipeline.

    Samples are drawn in fixed-size chunks from independently spawned
    substreams and accumulated in chunk order, so the result depends only
    on (seed, n_samples, chunks), never on execution schedule.
    """
    event_kernels = [_bob_kernels(params, e) for e in params.events]
    sizes = [
        n_samples // chunks + (1 if i < n_samples % chunks else 0) for i in range(chunks)
    ]
    sum_f = sum_p = sum_ff = sum_pp = sum_fp = 0.0
    for seq, size in zip(np.random.SeedSequence(seed).spawn(chunks), sizes):
        rng = np.random.default_rng(seq)
        x = rng.uniform(-1.0, 1.0, size)
        phi = rng.uniform(0.0, 2.0 * math.pi, size)
        a = np.sqrt((1.0 + x) / 2.0) * np.exp(-1j * phi)
        b = np.sqrt((1.0 - x) / 2.0)
        f = np.zeros(size)
        p = np.zeros(size)
        for kernels in event_kernels:
            df, dp = _sample_values(kernels, a, b)
            f += df
            p += dp
        sum_f += f.sum()
        sum_p += p.sum()
        sum_ff += (f * f).sum()
        sum_pp += (p * p).sum()
        sum_fp += (f * p).sum()
    mean_f, mean_p = sum_f / n_samples, sum_p / n_samples
    fbar = mean_f / mean_p
    var_p = max(sum_pp / n_samples - mean_p**2, 0.0)
    # ratio estimator: var(F - fbar P) drives the error of the quotient
    var_resid = max(
        sum_ff / n_samples
        - 2.0 * fbar * sum_fp / n_samples
        + fbar**2 * sum_pp / n_samples
        - (mean_f - fbar * mean_p) ** 2,
        0.0,
    )
    return MCResult(
        avg_fidelity=fbar,
        avg_probability=mean_p,
        stderr_fidelity=math.sqrt(var_resid / n_samples) / mean_p,
        stderr_probability=math.sqrt(var_p / n_samples),
        n_samples=n_samples,
    )


# ---------------------------------------------------------------------------
# Optimization and critical efficiencies.
# ---------------------------------------------------------------------------


def optimal_theta(n: int, m: int, eta: float, event="D10") -> float:
    """Fidelity-maximizing splitter angle for one accepted event with
    number-resolving detectors: cos(theta) = (2-eta)/hypot(2-eta, N-eta m-eta),
    mirrored about pi/4 for the d-side event."""
    TeleportParams(n, m, eta, 0.0)
    event = _as_event(event)
    if event not in ADVANTAGEOUS:
        raise ValueError(f"{event.name} does not herald a teleported state")
    theta = math.acos((2.0 - eta) / math.hypot(2.0 - eta, n - eta * m - eta))
    return theta if event is BellEvent.D10 else math.pi / 2.0 - theta


def max_fidelity_closed_form(n: int, m: int, eta: float) -> tuple[float, float]:
    """Optimal single-event fidelity and its success probability for
    number-resolving detectors."""
    TeleportParams(n, m, eta, 0.0)
    d = (2.0 - eta) ** 2 + (n - eta * m - eta) ** 2
    fmax = (1.0 + (n - eta * (m + 2.0) + 2.0) / ((2.0 - eta) * (n - eta * m - eta))) / 3.0
    popt = (
        eta
        * (2.0 - eta)
        / (2.0 * n)
        * (1.0 + (2.0 - eta) * (n - eta * m - 2.0) / d)
    )
    return fmax, popt


def max_fidelity(
    n: int, m: int, eta: float, detector_kind: str = "number", event_set: str = "D10"
) -> TeleportReport:
    """Fidelity maximized over the splitter angle, with the probability at
    the optimum.

    Number-resolving detectors admit closed forms (single events via the
    analytic optimal angle; combined events peak exactly at pi/4); the
    on-off variant is maximized numerically by golden-section search.
    """
    base = TeleportParams(n, m, eta, 0.0, detector_kind, event_set)
    if base.detector_kind == "number":
        if event_set == "both":
            theta_star = math.pi / 4.0
        else:
            theta_star = optimal_theta(n, m, eta, event=event_set)
        report = averaged_fidelity_probability(dataclasses.replace(base, theta=theta_star))
        if event_set != "both":
            # report the established closed forms rather than the generic ones
            fmax, popt = max_fidelity_closed_form(n, m, eta)
            report = dataclasses.replace(report, avg_fidelity=fmax, avg_probability=popt)
        return dataclasses.replace(report, optimal=True, theta_star=theta_star)
    theta_star, _ = golden_section_max(
        lambda th: _fbar(dataclasses.replace(base, theta=th)),
        0.0,
        math.pi / 2.0,
        tol=TOL.golden_section,
    )
    report = averaged_fidelity_probability(dataclasses.replace(base, theta=theta_star))
    return dataclasses.replace(report, optimal=True, theta_star=theta_star)


def critical_eta(n: int, m: int, detector_kind: str = "number") -> float:
    """Smallest detector efficiency whose optimized fidelity beats 2/3.

    Number-resolving detectors: closed form
    (N + m - sqrt((N-m-2)^2 + 4(m+1)))/(2(m+1)).  On-off detectors: root of
    the numerically maximized fidelity minus 2/3, by bisection.  Returns
    0.0 when the fidelity exceeds 2/3 at every positive efficiency.
    """
    TeleportParams(n, m, 1.0, 0.0)
    kind = _DETECTOR_KINDS.get(detector_kind)
    if kind is None:
        raise ValueError(f"unknown detector kind {detector_kind!r}")
    if kind == "number":
        return (n + m - math.sqrt((n - m - 2.0) ** 2 + 4.0 * (m + 1.0))) / (2.0 * (m + 1.0))

    def gap(eta: float) -> float:
        return max_fidelity(n, m, eta, "onoff", "D10").avg_fidelity - 2.0 / 3.0

    lo = 1e-9
    if gap(lo) >= 0.0:
        return 0.0
    if gap(1.0) <= 0.0:
        raise ValueError("fidelity never exceeds the classical bound")
    return bisect_root(gap, lo, 1.0, tol=TOL.bisection_onoff)


def critical_eta_bisection(n: int, m: int) -> float:
    """Independent root-finding check of the closed-form critical efficiency
    (number-resolving detectors)."""
    TeleportParams(n, m, 1.0, 0.0)

    def gap(eta: float) -> float:
        return max_fidelity_closed_form(n, m, eta)[0] - 2.0 / 3.0

    lo = 1e-12
    if gap(lo) >= 0.0:
        return 0.0
    return bisect_root(gap, lo, 1.0, tol=TOL.bisection)


def nonadvantageous_bound(
    n: int, m: int, eta: float, n_theta: int = 1000, n_phase: int = 64
) -> dict[BellEvent, float]:
    """Best Bloch-averaged fidelity each rejected event can reach.

    Sweeps the splitter angle on a grid and Bob's only available correction
    (a phase shift, sampled on {0, pi} plus a uniform grid) with
    number-resolving detectors.  Events with vanishing probability at a
    grid point contribute nothing there.
    """
    base = TeleportParams(n, m, eta, 0.0)
    phases = np.array(
        sorted({0.0, math.pi} | {2.0 * math.pi * k / n_phase for k in range(n_phase)})
    )
    rot = np.exp(-1j * phases)
    best = {event: 0.0 for event in REJECTED}
    for theta in np.linspace(0.0, math.pi / 2.0, n_theta):
        params = dataclasses.replace(base, theta=float(theta))
        mats = _transported(params)
        for event in REJECTED:
            kernels = _condition_kernels(mats, params, event, flip=False)
            k11, k10 = kernels[(1, 1)], kernels[(1, 0)]
            k01, k00 = kernels[(0, 1)], kernels[(0, 0)]
            int_p = float(np.real(np.trace(k11) + np.trace(k00))) / 2.0
            if int_p < 1e-14:
                continue
            # Bob's phase rotates only the two cross moments
            static = float(
                np.real(
                    (k11[1, 1] + k00[0, 0]) / 3.0 + (k11[0, 0] + k00[1, 1]) / 6.0
                )
            )
            swept = static + np.real(rot * k10[1, 0] + np.conj(rot) * k01[0, 1]) / 6.0
            best[event] = max(best[event], float(np.max(swept)) / int_p)
    return best
