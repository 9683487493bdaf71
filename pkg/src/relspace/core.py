"""Dense complex linear algebra over labeled tensor-product bases.

State vectors carry an ordered list of factor dimensions plus per-factor basis
labels (momentum values, energy values, or memory symbols).  Operators target
one or more factor slots.  Everything is dense and immutable: factor dimensions
are capped at 64, which keeps exact dense arithmetic cheap, and all operations
return new objects.  Time evolution uses a Hermitian eigendecomposition, so
propagators are unitary to rounding rather than to a series tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

MAX_FACTOR_DIM = 64
HERMITIAN_TOL = 1e-12


def _flat(values) -> np.ndarray:
    arr = np.asarray(values, dtype=np.complex128).reshape(-1).copy()
    arr.setflags(write=False)
    return arr


def _as_labels(shape: tuple[int, ...], labels) -> tuple[tuple, ...]:
    if labels is None:
        return tuple(tuple(range(n)) for n in shape)
    out = []
    for dim, lab in zip(shape, labels, strict=True):
        lab = tuple(lab)
        if len(lab) != dim:
            raise ValueError(f"factor of dimension {dim} got {len(lab)} labels")
        out.append(lab)
    return tuple(out)


@dataclass(frozen=True)
class StateVector:
    """Complex vector over a row-major flattened tensor-product basis.

    Attributes
    ----------
    amplitudes : ndarray
        Flat complex amplitudes, length prod(shape), read-only.
    shape : tuple of int
        Ordered factor dimensions (each between 1 and 64).
    labels : tuple of tuple
        One label per basis element of each factor.
    normalized : bool
        True when the norm is 1 within 1e-12.  Bare (continuous-convention)
        frame states are deliberately non-unit and carry False.
    """

    amplitudes: np.ndarray
    shape: tuple[int, ...]
    labels: tuple[tuple, ...] = field(repr=False)
    normalized: bool

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @property
    def tensor_form(self) -> np.ndarray:
        return self.amplitudes.reshape(self.shape)

    def factor_labels(self, slot: int) -> tuple:
        return self.labels[slot]


def make_state(amplitudes, shape, labels=None) -> StateVector:
    """Validate and freeze a state vector.

    Parameters
    ----------
    amplitudes : array-like
        Complex amplitudes, flat or already shaped like `shape`.
    shape : sequence of int
        Factor dimensions; the flat index is row-major over this list.
    labels : sequence of sequences, optional
        Physical basis labels per factor; defaults to integer indices.
    """
    shape = tuple(int(n) for n in shape)
    if not shape:
        raise ValueError("state needs at least one factor")
    for n in shape:
        if not 1 <= n <= MAX_FACTOR_DIM:
            raise ValueError(f"factor dimension {n} outside 1..{MAX_FACTOR_DIM}")
    arr = _flat(amplitudes)
    expected = int(np.prod(shape))
    if arr.size != expected:
        raise ValueError(f"got {arr.size} amplitudes for shape {shape} (need {expected})")
    nrm = float(np.linalg.norm(arr))
    if not np.isfinite(nrm):
        raise ValueError("non-finite amplitudes")
    return StateVector(arr, shape, _as_labels(shape, labels), abs(nrm - 1.0) <= 1e-12)


def norm(v: StateVector) -> float:
    return float(np.linalg.norm(v.amplitudes))


def normalize(v: StateVector) -> StateVector:
    n = norm(v)
    if n == 0.0:
        raise ValueError("cannot normalize the zero vector")
    return make_state(v.amplitudes / n, v.shape, v.labels)


def tensor(a: StateVector, b: StateVector) -> StateVector:
    """Tensor product: shapes and labels concatenate, amplitudes form the outer product."""
    return make_state(np.kron(a.amplitudes, b.amplitudes), a.shape + b.shape, a.labels + b.labels)


def inner(a: StateVector, b: StateVector) -> complex:
    """Inner product <a|b>, conjugate-linear in the first argument."""
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def condition(global_state: StateVector, slot: int, bra: StateVector) -> StateVector:
    """Partial inner product: contract one factor with a bra and drop that slot.

    Returns the unnormalized contraction Σ_i conj(bra_i)·Ψ[..., i, ...]; the
    remaining factors keep their order and labels.  Relational prefactors are
    applied by callers, never here.
    """
    nslots = len(global_state.shape)
    if not 0 <= slot < nslots:
        raise ValueError(f"slot {slot} out of range for {nslots} factors")
    if len(bra.shape) != 1 or bra.shape[0] != global_state.shape[slot]:
        raise ValueError("bra must be a single factor matching the targeted slot")
    if nslots == 1:
        return make_state([inner(bra, global_state)], (1,), ((0,),))
    reduced = np.tensordot(np.conj(bra.amplitudes), global_state.tensor_form, axes=([0], [slot]))
    keep = tuple(i for i in range(nslots) if i != slot)
    return make_state(
        reduced,
        tuple(global_state.shape[i] for i in keep),
        tuple(global_state.labels[i] for i in keep),
    )


@dataclass(frozen=True)
class LinearOperator:
    """Square matrix acting on one or more tensor slots of a state.

    `slots` are the targeted factor positions in order; `matrix` has dimension
    equal to the product of the targeted factor dimensions (row-major over the
    slot order).
    """

    matrix: np.ndarray
    slots: tuple[int, ...]

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def make_operator(matrix, slots) -> LinearOperator:
    mat = np.asarray(matrix, dtype=np.complex128).copy()
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError("operator matrix must be square")
    slots = tuple(int(s) for s in (slots if np.iterable(slots) else [slots]))
    if len(set(slots)) != len(slots):
        raise ValueError("operator slots must be distinct")
    mat.setflags(write=False)
    return LinearOperator(mat, slots)


def hermitian_defect(matrix: np.ndarray) -> float:
    return float(np.max(np.abs(matrix - matrix.conj().T)))


def apply_operator(op: LinearOperator, v: StateVector) -> StateVector:
    """Apply a (possibly multi-slot) operator, leaving all other factors alone."""
    nslots = len(v.shape)
    for s in op.slots:
        if not 0 <= s < nslots:
            raise ValueError(f"operator slot {s} out of range")
    sub = int(np.prod([v.shape[s] for s in op.slots]))
    if op.dim != sub:
        raise ValueError(f"operator dim {op.dim} does not match targeted factors ({sub})")
    rest = tuple(i for i in range(nslots) if i not in op.slots)
    perm = rest + op.slots
    moved = v.tensor_form.transpose(perm).reshape(-1, sub)
    out = moved @ op.matrix.T
    out = out.reshape([v.shape[i] for i in perm]).transpose(np.argsort(perm))
    return make_state(out, v.shape, v.labels)


def apply_operator_sum(terms, v: StateVector) -> StateVector:
    """Apply Σ_i term_i to v (each term embedded with identities elsewhere)."""
    terms = list(terms)
    if not terms:
        raise ValueError("empty operator sum")
    acc = np.zeros(v.dim, dtype=np.complex128)
    for op in terms:
        acc = acc + apply_operator(op, v).amplitudes
    return make_state(acc, v.shape, v.labels)


def residual_norm(terms, v: StateVector) -> float:
    """Norm of (Σ_i term_i)·v — the constraint-violation measure used everywhere."""
    return norm(apply_operator_sum(terms, v))


def hermitian_propagator(matrix: np.ndarray, t: float) -> np.ndarray:
    """Dense e^{−iHt} for Hermitian H via eigendecomposition (unitary to rounding)."""
    mat = np.asarray(matrix, dtype=np.complex128)
    defect = hermitian_defect(mat)
    if defect > HERMITIAN_TOL:
        raise ValueError(f"matrix is not Hermitian (defect {defect:.3e})")
    evals, vecs = np.linalg.eigh(mat)
    phases = np.exp(-1j * evals * float(t))
    return (vecs * phases) @ vecs.conj().T


def evolve(H: LinearOperator, t: float, v: StateVector) -> StateVector:
    """Evolve v by e^{−iHt} on H's slots.

    Parameters
    ----------
    H : LinearOperator
        Hermitian generator (defect ≤ 1e-12 enforced).
    t : float
        Evolution parameter; positive t applies the phase e^{−iλt} to each
        eigenvector of eigenvalue λ.
    v : StateVector
        State to evolve.
    """
    return apply_operator(make_operator(hermitian_propagator(H.matrix, t), H.slots), v)


def states_allclose(a: StateVector, b: StateVector, tol: float = 1e-12) -> bool:
    """Exact-phase comparison of two states (no global-phase freedom)."""
    return a.shape == b.shape and bool(np.max(np.abs(a.amplitudes - b.amplitudes)) <= tol)


def basis_state(dim: int, index: int, labels=None) -> StateVector:
    amps = np.zeros(dim, dtype=np.complex128)
    amps[index] = 1.0
    return make_state(amps, (dim,), None if labels is None else (labels,))
