"""Truncated multimode Fock space: states, operators, and exact linear-optics actions.

Conventions fixed here and used everywhere else in the package:

* Basis enumeration is graded lexicographic: ascending total photon number,
  then ascending lexicographic order on occupation tuples.
* A 2x2 mode-mixing matrix ``u`` acts on annihilation operators as
  ``(a_i', a_j')^T = u (a_i, a_j)^T``.  Single-photon amplitude vectors then
  transform by ``u`` itself, and creation operators by
  ``a_k^dag -> sum_l u[l, k] a_l^dag``.
* A phase shift ``phi`` at one mode maps ``a -> exp(-i phi) a``, i.e. the
  number state ``|n>`` picks up ``exp(-i phi n)``.

Operators are plain complex numpy matrices indexed by the canonical basis;
``number_matrix``, ``jx_matrix`` etc. build the ones needed elsewhere.
Truncation is by total photon number; overflow raises instead of silently
dropping amplitude.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .config import TOL

Occupation = tuple[int, ...]


def _occupations(num_modes: int, total: int, mode_cutoff: int):
    """Yield tuples of length num_modes summing to total, lexicographically."""
    if num_modes == 0:
        if total == 0:
            yield ()
        return
    for k in range(min(total, mode_cutoff) + 1):
        for rest in _occupations(num_modes - 1, total - k, mode_cutoff):
            yield (k,) + rest


@dataclass(frozen=True)
class FockSpace:
    """Truncated Fock space over ``num_modes`` optical modes.

    Truncation is by total photon number (``total_cutoff``) and per-mode
    occupation (``mode_cutoff``, defaulting to the total cutoff).  The
    default cutoff of 2 is sufficient for every state handled here: a W
    state carries one photon and the teleported qubit at most one more.

    ``num_modes = 0`` is the degenerate space left after measuring every
    mode; its only basis element is the empty tuple.
    """

    num_modes: int
    total_cutoff: int = 2
    mode_cutoff: int | None = None

    def __post_init__(self) -> None:
        if self.num_modes < 0:
            raise ValueError("num_modes must be non-negative")
        if self.total_cutoff < 0:
            raise ValueError("total_cutoff must be non-negative")
        if self.mode_cutoff is None:
            object.__setattr__(self, "mode_cutoff", self.total_cutoff)
        elif self.mode_cutoff < 0:
            raise ValueError("mode_cutoff must be non-negative")

    @cached_property
    def basis(self) -> tuple[Occupation, ...]:
        out: list[Occupation] = []
        for n in range(self.total_cutoff + 1):
            out.extend(_occupations(self.num_modes, n, self.mode_cutoff))
        return tuple(out)

    @cached_property
    def index(self) -> dict[Occupation, int]:
        return {occ: i for i, occ in enumerate(self.basis)}

    @property
    def dim(self) -> int:
        return len(self.basis)


def canonical_basis(
    num_modes: int, total_cutoff: int = 2, mode_cutoff: int | None = None
) -> list[Occupation]:
    """Ordered occupation tuples for the truncated space.

    The ordering is graded lexicographic (ascending total photon number,
    then lexicographic on counts), deterministic, and stable across runs.
    """
    if num_modes < 1:
        raise ValueError("num_modes must be at least 1")
    return list(FockSpace(num_modes, total_cutoff, mode_cutoff).basis)


@dataclass(frozen=True)
class PureState:
    """Sparse pure state: occupation tuple -> complex amplitude.

    The squared norm must equal 1 within tolerance unless the state is
    explicitly flagged as a post-selected (sub-unit norm) branch.
    """

    space: FockSpace
    amplitudes: dict[Occupation, complex]
    post_selected: bool = False

    def __post_init__(self) -> None:
        clean: dict[Occupation, complex] = {}
        for occ, amp in self.amplitudes.items():
            occ = tuple(int(n) for n in occ)
            if occ not in self.space.index:
                raise ValueError(f"occupation {occ} outside the truncated space")
            a = complex(amp)
            if a != 0:
                clean[occ] = clean.get(occ, 0.0) + a
        object.__setattr__(self, "amplitudes", clean)
        n2 = self.norm_sq
        if n2 <= 0.0 or n2 > 1.0 + TOL.norm:
            raise ValueError(f"squared norm {n2} outside (0, 1]")
        if not self.post_selected and abs(n2 - 1.0) > TOL.norm:
            raise ValueError("sub-unit norm requires the post_selected flag")

    @property
    def num_modes(self) -> int:
        return self.space.num_modes

    @cached_property
    def norm_sq(self) -> float:
        return float(sum(abs(a) ** 2 for a in self.amplitudes.values()))

    def to_vector(self) -> np.ndarray:
        v = np.zeros(self.space.dim, dtype=complex)
        for occ, amp in self.amplitudes.items():
            v[self.space.index[occ]] = amp
        return v

    def to_density(self) -> "DensityOperator":
        v = self.to_vector()
        return DensityOperator(
            self.space, np.outer(v, v.conj()), normalized=abs(self.norm_sq - 1.0) <= TOL.norm
        )


def fock_state(space: FockSpace, occ) -> PureState:
    """The number state |occ> as a PureState."""
    return PureState(space, {tuple(int(n) for n in occ): 1.0 + 0.0j})


def vacuum_state(space: FockSpace) -> PureState:
    return fock_state(space, (0,) * space.num_modes)


@dataclass(frozen=True)
class DensityOperator:
    """Hermitian PSD operator on a truncated Fock space, possibly unnormalized.

    Post-selected branches carry their event probability as the trace;
    ``normalized=True`` additionally asserts unit trace.  The matrix is
    validated on construction and frozen (read-only) afterwards.
    """

    space: FockSpace
    matrix: np.ndarray
    normalized: bool = False

    def __post_init__(self) -> None:
        m = np.array(self.matrix, dtype=complex)
        dim = self.space.dim
        if m.shape != (dim, dim):
            raise ValueError(f"matrix shape {m.shape} does not match space dimension {dim}")
        if np.max(np.abs(m - m.conj().T)) > TOL.hermiticity:
            raise ValueError("matrix is not Hermitian within tolerance")
        if dim > 0 and np.linalg.eigvalsh(m).min() < -TOL.positivity:
            raise ValueError("matrix is not positive semidefinite within tolerance")
        tr = m.trace()
        if tr.real > 1.0 + TOL.trace or tr.real < -TOL.trace:
            raise ValueError(f"trace {tr.real} outside [0, 1]")
        if self.normalized and abs(tr.real - 1.0) > TOL.trace:
            raise ValueError("normalized flag set but trace != 1")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def num_modes(self) -> int:
        return self.space.num_modes

    def trace(self) -> float:
        return float(self.matrix.trace().real)

    def normalized_copy(self) -> "DensityOperator":
        tr = self.trace()
        if tr <= 0.0:
            raise ValueError("cannot normalize a zero-trace operator")
        return DensityOperator(self.space, self.matrix / tr, normalized=True)


def _occupied_sectors(space: FockSpace, matrix: np.ndarray) -> int:
    """Largest total photon number carried with non-negligible weight.

    PSD operators have their support visible on the diagonal, so sectors
    whose diagonal entries all vanish contribute nothing.
    """
    top = 0
    for i, occ in enumerate(space.basis):
        if matrix[i, i].real > TOL.support:
            top = max(top, sum(occ))
    return top


# ---------------------------------------------------------------------------
# Raw-matrix engine.  The public operations below wrap these with validated
# DensityOperator construction; internal hot paths (which may push non-PSD
# operator-basis elements through the same circuits) use them directly.
# ---------------------------------------------------------------------------


def _tensor_raw(
    space_a: FockSpace, a: np.ndarray, space_b: FockSpace, b: np.ndarray
) -> tuple[FockSpace, np.ndarray]:
    space = FockSpace(
        space_a.num_modes + space_b.num_modes,
        max(space_a.total_cutoff, space_b.total_cutoff),
        max(space_a.mode_cutoff, space_b.mode_cutoff),
    )
    out = np.zeros((space.dim, space.dim), dtype=complex)
    index = space.index
    for ia, ta in enumerate(space_a.basis):
        for ib, tb in enumerate(space_b.basis):
            row = index.get(ta + tb)
            if row is None:
                continue
            for ja, ua in enumerate(space_a.basis):
                if a[ia, ja] == 0:
                    continue
                for jb, ub in enumerate(space_b.basis):
                    col = index.get(ua + ub)
                    if col is not None:
                        out[row, col] += a[ia, ja] * b[ib, jb]
    return space, out


def _ptrace_raw(
    space: FockSpace, matrix: np.ndarray, keep: tuple[int, ...]
) -> tuple[FockSpace, np.ndarray]:
    traced = tuple(m for m in range(space.num_modes) if m not in keep)
    out_space = FockSpace(len(keep), space.total_cutoff, space.mode_cutoff)
    groups: dict[Occupation, list[tuple[int, int]]] = {}
    for i, occ in enumerate(space.basis):
        kept = tuple(occ[m] for m in keep)
        rest = tuple(occ[m] for m in traced)
        groups.setdefault(rest, []).append((i, out_space.index[kept]))
    out = np.zeros((out_space.dim, out_space.dim), dtype=complex)
    for members in groups.values():
        for i, ki in members:
            for j, kj in members:
                out[ki, kj] += matrix[i, j]
    return out_space, out


def _check_two_mode_unitary(u) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2):
        raise ValueError("mode-mixing matrix must be 2x2")
    if np.max(np.abs(u.conj().T @ u - np.eye(2))) > TOL.unitarity:
        raise ValueError("mode-mixing matrix is not unitary within tolerance")
    return u


def _two_mode_blocks(u: np.ndarray, max_photons: int) -> list[np.ndarray]:
    """Number-conserving blocks of the two-mode Fock unitary induced by u.

    Block n maps the (n+1)-dimensional sector spanned by |k, n-k>, indexed
    by k = photons in the first mode.  Built by expanding the transformed
    creation-operator polynomial (a_1^dag)^k (a_2^dag)^(n-k).
    """
    blocks = []
    for n in range(max_photons + 1):
        block = np.zeros((n + 1, n + 1), dtype=complex)
        for k in range(n + 1):
            poly = np.zeros(n + 1, dtype=complex)  # poly[p]: coeff of x^p y^(n-p)
            for p in range(k + 1):
                c1 = math.comb(k, p) * u[0, 0] ** p * u[1, 0] ** (k - p)
                for q in range(n - k + 1):
                    c2 = math.comb(n - k, q) * u[0, 1] ** q * u[1, 1] ** (n - k - q)
                    poly[p + q] += c1 * c2
            norm_in = math.sqrt(math.factorial(k) * math.factorial(n - k))
            for p in range(n + 1):
                norm_out = math.sqrt(math.factorial(p) * math.factorial(n - p))
                block[p, k] = poly[p] * norm_out / norm_in
        blocks.append(block)
    return blocks


def _embedded_unitary(space: FockSpace, modes: tuple[int, int], u: np.ndarray) -> np.ndarray:
    """Full-space matrix of a two-mode unitary acting on the given mode pair."""
    i, j = modes
    blocks = _two_mode_blocks(u, min(space.total_cutoff, 2 * space.mode_cutoff))
    out = np.zeros((space.dim, space.dim), dtype=complex)
    for col, occ in enumerate(space.basis):
        n = occ[i] + occ[j]
        block = blocks[n]
        k = occ[i]
        for p in range(n + 1):
            amp = block[p, k]
            if amp == 0:
                continue
            target = list(occ)
            target[i] = p
            target[j] = n - p
            row = space.index.get(tuple(target))
            if row is None:
                # a target occupation can only be missing when the per-mode
                # cutoff is tighter than the total cutoff
                if abs(amp) > TOL.support:
                    raise ValueError("per-mode cutoff overflow in two-mode unitary")
                continue
            out[row, col] = amp
    return out


def _phase_vector(space: FockSpace, mode: int, phi: float) -> np.ndarray:
    counts = np.array([occ[mode] for occ in space.basis])
    return np.exp(-1j * phi * counts)


def _condition_raw(
    space: FockSpace, matrix: np.ndarray, weights: np.ndarray, keep: tuple[int, ...]
) -> tuple[FockSpace, np.ndarray]:
    sq = np.sqrt(weights)
    weighted = sq[:, None] * matrix * sq[None, :]
    if keep:
        return _ptrace_raw(space, weighted, keep)
    out_space = FockSpace(0, space.total_cutoff, space.mode_cutoff)
    return out_space, np.array([[weighted.trace()]])


# ---------------------------------------------------------------------------
# Public operations.
# ---------------------------------------------------------------------------


def tensor(a: DensityOperator, b: DensityOperator) -> DensityOperator:
    """Tensor product; modes of ``a`` come first.

    Raises if the combined photon support would exceed the total cutoff of
    the combined space — overflow is an error, never a silent truncation.
    """
    space = FockSpace(
        a.space.num_modes + b.space.num_modes,
        max(a.space.total_cutoff, b.space.total_cutoff),
        max(a.space.mode_cutoff, b.space.mode_cutoff),
    )
    if _occupied_sectors(a.space, a.matrix) + _occupied_sectors(b.space, b.matrix) > space.total_cutoff:
        raise ValueError("tensor product exceeds the total-photon cutoff")
    _, out = _tensor_raw(a.space, a.matrix, b.space, b.matrix)
    return DensityOperator(space, out, normalized=a.normalized and b.normalized)


def partial_trace(rho: DensityOperator, keep) -> DensityOperator:
    """Trace out all modes not listed in ``keep``.

    ``keep`` is an ordered sequence of distinct mode indices; the result's
    modes appear in that order (sets are sorted first).
    """
    if isinstance(keep, (set, frozenset)):
        keep = sorted(keep)
    keep = tuple(int(m) for m in keep)
    if not keep:
        raise ValueError("keep must name at least one mode")
    if len(set(keep)) != len(keep):
        raise ValueError("keep contains duplicate modes")
    if any(m < 0 or m >= rho.space.num_modes for m in keep):
        raise ValueError("keep indexes a mode outside the space")
    out_space, out = _ptrace_raw(rho.space, rho.matrix, keep)
    return DensityOperator(out_space, out, normalized=rho.normalized)


def apply_two_mode_unitary(state, modes: tuple[int, int], u):
    """Act with a 2x2 mode-mixing unitary on the given pair of modes.

    Works on PureState and DensityOperator alike and preserves norm/trace.
    The convention is fixed in the module docstring: ``u`` maps the pair of
    annihilation operators, so a single photon in mode i acquires amplitude
    u[l, i] on mode l.
    """
    i, j = int(modes[0]), int(modes[1])
    if i == j:
        raise ValueError("modes must be distinct")
    u = _check_two_mode_unitary(u)
    if isinstance(state, PureState):
        space = state.space
        if not (0 <= i < space.num_modes and 0 <= j < space.num_modes):
            raise ValueError("mode index out of range")
        blocks = _two_mode_blocks(u, min(space.total_cutoff, 2 * space.mode_cutoff))
        new: dict[Occupation, complex] = {}
        for occ, amp in state.amplitudes.items():
            n = occ[i] + occ[j]
            block = blocks[n]
            k = occ[i]
            for p in range(n + 1):
                coeff = block[p, k] * amp
                if coeff == 0:
                    continue
                target = list(occ)
                target[i] = p
                target[j] = n - p
                target = tuple(target)
                if target not in space.index:
                    if abs(coeff) > TOL.support:
                        raise ValueError("per-mode cutoff overflow in two-mode unitary")
                    continue
                new[target] = new.get(target, 0.0) + coeff
        return PureState(space, new, post_selected=state.post_selected)
    if isinstance(state, DensityOperator):
        space = state.space
        if not (0 <= i < space.num_modes and 0 <= j < space.num_modes):
            raise ValueError("mode index out of range")
        full = _embedded_unitary(space, (i, j), u)
        out = full @ state.matrix @ full.conj().T
        return DensityOperator(space, out, normalized=state.normalized)
    raise TypeError("state must be a PureState or DensityOperator")


def apply_phase_shift(state, mode: int, phi: float):
    """Phase shifter at one mode: |n> -> exp(-i phi n)|n>."""
    mode = int(mode)
    if isinstance(state, PureState):
        if not 0 <= mode < state.space.num_modes:
            raise ValueError("mode index out of range")
        new = {
            occ: amp * np.exp(-1j * phi * occ[mode]) for occ, amp in state.amplitudes.items()
        }
        return PureState(state.space, new, post_selected=state.post_selected)
    if isinstance(state, DensityOperator):
        if not 0 <= mode < state.space.num_modes:
            raise ValueError("mode index out of range")
        d = _phase_vector(state.space, mode, phi)
        out = d[:, None] * state.matrix * d.conj()[None, :]
        return DensityOperator(state.space, out, normalized=state.normalized)
    raise TypeError("state must be a PureState or DensityOperator")


def expectation(rho: DensityOperator, op: np.ndarray) -> complex:
    """tr(rho op); real within tolerance whenever op is Hermitian."""
    op = np.asarray(op, dtype=complex)
    if op.shape != rho.matrix.shape:
        raise ValueError("operator dimension does not match the state")
    return complex(np.einsum("ij,ji->", rho.matrix, op))


def overlap_fidelity(rho: DensityOperator, psi: PureState) -> float:
    """<psi|rho|psi> for a normalized pure target; rho may be unnormalized."""
    if psi.space.dim != rho.space.dim or psi.space.num_modes != rho.space.num_modes:
        raise ValueError("state dimensions do not match")
    if abs(psi.norm_sq - 1.0) > TOL.norm:
        raise ValueError("target state must be normalized")
    v = psi.to_vector()
    val = float(np.real(v.conj() @ rho.matrix @ v))
    if val < -TOL.positivity:
        raise ValueError("negative overlap beyond tolerance")
    return max(val, 0.0)


# ---------------------------------------------------------------------------
# Operator builders (plain matrices in the canonical basis).
# ---------------------------------------------------------------------------


def annihilation_matrix(space: FockSpace, mode: int) -> np.ndarray:
    out = np.zeros((space.dim, space.dim), dtype=complex)
    for col, occ in enumerate(space.basis):
        n = occ[mode]
        if n == 0:
            continue
        target = list(occ)
        target[mode] = n - 1
        out[space.index[tuple(target)], col] = math.sqrt(n)
    return out


def creation_matrix(space: FockSpace, mode: int) -> np.ndarray:
    return annihilation_matrix(space, mode).conj().T


def number_matrix(space: FockSpace, mode: int) -> np.ndarray:
    return np.diag(np.array([occ[mode] for occ in space.basis], dtype=complex))


def total_number_matrix(space: FockSpace) -> np.ndarray:
    return np.diag(np.array([sum(occ) for occ in space.basis], dtype=complex))


def _require_two_modes(space: FockSpace) -> None:
    if space.num_modes != 2:
        raise ValueError("J operators are defined on a two-mode space")


def jx_matrix(space: FockSpace) -> np.ndarray:
    """J_x = (a^dag b + a b^dag)/2.  Products are ordered annihilator-first
    so the truncated matrices compose exactly inside the cutoff space."""
    _require_two_modes(space)
    ab = creation_matrix(space, 0) @ annihilation_matrix(space, 1)
    return (ab + ab.conj().T) / 2.0


def jy_matrix(space: FockSpace) -> np.ndarray:
    """J_y = (a^dag b - a b^dag)/(2i)."""
    _require_two_modes(space)
    ab = creation_matrix(space, 0) @ annihilation_matrix(space, 1)
    return (ab - ab.conj().T) / 2.0j


def jz_matrix(space: FockSpace) -> np.ndarray:
    """J_z = (a^dag a - b^dag b)/2."""
    _require_two_modes(space)
    return (number_matrix(space, 0) - number_matrix(space, 1)) / 2.0
