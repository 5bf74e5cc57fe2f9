"""Operators on truncated Fock x qubit x second-boson spaces.

Everything is a dense complex matrix tied to the space it acts on.  The
factor ordering of composite spaces is fixed globally as

    photon (x) qubit (x) second boson,

and `tensor` refuses out-of-order compositions rather than silently
reordering.  All values are immutable after construction and all operations
are pure functions, so results can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
import scipy.linalg

HERMITICITY_RTOL = 1e-12

_FACTOR_RANK = {"photon": 0, "qubit": 1, "matter": 2}


@dataclass(frozen=True)
class Space:
    """Descriptor of a truncated tensor-product space.

    photon: Fock cutoff N (keeps |0>..|N-1>), or None when absent.
    qubit: whether the two-level factor is present.
    matter: cutoff M of the second bosonic mode, or None.
    """

    photon: int | None = None
    qubit: bool = False
    matter: int | None = None

    def __post_init__(self):
        if self.photon is None and not self.qubit and self.matter is None:
            raise ValueError("space needs at least one factor")
        for cut, name in ((self.photon, "photon"), (self.matter, "matter")):
            if cut is not None and (int(cut) != cut or cut < 2):
                raise ValueError(f"{name} cutoff must be an integer >= 2, got {cut!r}")

    @property
    def dim(self) -> int:
        d = 1
        for f in self._factors():
            d *= f[1]
        return d

    def _factors(self) -> list[tuple[str, int]]:
        out = []
        if self.photon is not None:
            out.append(("photon", self.photon))
        if self.qubit:
            out.append(("qubit", 2))
        if self.matter is not None:
            out.append(("matter", self.matter))
        return out


@dataclass(frozen=True)
class Operator:
    """Dense complex matrix together with its space descriptor."""

    space: Space
    mat: np.ndarray

    def __post_init__(self):
        m = np.array(self.mat, dtype=complex)
        if m.shape != (self.space.dim, self.space.dim):
            raise ValueError(
                f"matrix shape {m.shape} does not match space dimension {self.space.dim}"
            )
        m.flags.writeable = False
        object.__setattr__(self, "mat", m)

    def dag(self) -> "Operator":
        return Operator(self.space, self.mat.conj().T)

    def is_hermitian(self) -> bool:
        scale = max(np.abs(self.mat).max(), 1.0)
        return np.abs(self.mat - self.mat.conj().T).max() <= HERMITICITY_RTOL * scale

    def _check_space(self, other: "Operator"):
        if self.space != other.space:
            raise ValueError("operators live on different spaces")

    def __add__(self, other: "Operator") -> "Operator":
        self._check_space(other)
        return Operator(self.space, self.mat + other.mat)

    def __sub__(self, other: "Operator") -> "Operator":
        self._check_space(other)
        return Operator(self.space, self.mat - other.mat)

    def __neg__(self) -> "Operator":
        return Operator(self.space, -self.mat)

    def __mul__(self, scalar) -> "Operator":
        return Operator(self.space, self.mat * complex(scalar))

    __rmul__ = __mul__

    def __matmul__(self, other: "Operator") -> "Operator":
        self._check_space(other)
        return Operator(self.space, self.mat @ other.mat)


@dataclass(frozen=True)
class State:
    """Unit-norm vector on a space."""

    space: Space
    vec: np.ndarray

    def __post_init__(self):
        v = np.array(self.vec, dtype=complex).ravel()
        if v.shape != (self.space.dim,):
            raise ValueError(
                f"vector length {v.shape[0]} does not match space dimension {self.space.dim}"
            )
        if abs(np.linalg.norm(v) - 1.0) > 1e-10:
            raise ValueError("state vector must have unit norm")
        v.flags.writeable = False
        object.__setattr__(self, "vec", v)


def adjoint(A: Operator) -> Operator:
    return A.dag()


def identity(space: Space) -> Operator:
    return Operator(space, np.eye(space.dim, dtype=complex))


def _embed(block: np.ndarray, factor: str, space: Space) -> np.ndarray:
    """Kron the single-factor matrix into the full space, canonical order."""
    out = None
    for name, d in space._factors():
        piece = block if name == factor else np.eye(d, dtype=complex)
        out = piece if out is None else np.kron(out, piece)
    return out


def destroy(space: Space, mode: str = "photon") -> Operator:
    """Annihilation operator of one bosonic factor, identity-padded."""
    cutoff = {"photon": space.photon, "matter": space.matter}.get(mode)
    if cutoff is None:
        raise ValueError(f"space has no {mode!r} factor")
    a = np.diag(np.sqrt(np.arange(1, cutoff, dtype=float)), 1).astype(complex)
    return Operator(space, _embed(a, mode, space))


def create(space: Space, mode: str = "photon") -> Operator:
    return destroy(space, mode).dag()


_PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def pauli(axis: str, space: Space | None = None) -> Operator:
    """Pauli matrix, bare 2x2 by default or embedded into a composite space."""
    if axis not in _PAULI:
        raise ValueError(f"axis must be one of x, y, z, got {axis!r}")
    if space is None:
        return Operator(Space(qubit=True), _PAULI[axis])
    if not space.qubit:
        raise ValueError("space has no qubit factor")
    return Operator(space, _embed(_PAULI[axis], "qubit", space))


def _merge_spaces(sa: Space, sb: Space) -> Space:
    fa, fb = sa._factors(), sb._factors()
    names_a = {n for n, _ in fa}
    names_b = {n for n, _ in fb}
    if names_a & names_b:
        raise ValueError(f"factors {sorted(names_a & names_b)} present on both sides")
    if fa and fb and _FACTOR_RANK[fa[-1][0]] > _FACTOR_RANK[fb[0][0]]:
        raise ValueError(
            "tensor factors must be composed in photon (x) qubit (x) matter order"
        )
    return Space(
        photon=sa.photon if sa.photon is not None else sb.photon,
        qubit=sa.qubit or sb.qubit,
        matter=sa.matter if sa.matter is not None else sb.matter,
    )


def tensor(A: Operator, B: Operator) -> Operator:
    """Kronecker product; the combined descriptor keeps the canonical order."""
    return Operator(_merge_spaces(A.space, B.space), np.kron(A.mat, B.mat))


def hermitian_function(H: Operator, f: Callable[[np.ndarray], np.ndarray]) -> Operator:
    """f(H) through the spectral decomposition of a Hermitian H."""
    if not H.is_hermitian():
        raise ValueError("hermitian_function requires a Hermitian input")
    w, V = np.linalg.eigh(H.mat)
    return Operator(H.space, (V * f(w)) @ V.conj().T)


def displacement(alpha: complex, space: Space) -> Operator:
    """exp(alpha a+ - alpha* a) on a photon-only space."""
    if space.qubit or space.matter is not None:
        raise ValueError("displacement is defined on a photon-only space")
    a = destroy(space).mat
    return Operator(space, scipy.linalg.expm(alpha * a.conj().T - np.conj(alpha) * a))


def expectation(op: Operator, psi: State) -> complex:
    if op.space != psi.space:
        raise ValueError("operator and state live on different spaces")
    return complex(psi.vec.conj() @ (op.mat @ psi.vec))


def fock_state(space: Space, n: int, mode: str = "photon") -> State:
    """Number state |n> of one bosonic factor, vacuum/ground elsewhere."""
    cutoff = {"photon": space.photon, "matter": space.matter}.get(mode)
    if cutoff is None:
        raise ValueError(f"space has no {mode!r} factor")
    if not 0 <= n < cutoff:
        raise ValueError(f"level {n} outside the truncated range 0..{cutoff - 1}")
    factor_vecs = []
    for name, d in space._factors():
        v = np.zeros(d, dtype=complex)
        v[n if name == mode else 0] = 1.0
        factor_vecs.append(v)
    vec = factor_vecs[0]
    for v in factor_vecs[1:]:
        vec = np.kron(vec, v)
    return State(space, vec)
