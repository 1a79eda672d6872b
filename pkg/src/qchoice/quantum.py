"""Finite-dimensional event calculus over composite choice spaces.

The model works on a tensor product of two registers: a *choice* register
whose basis states index the options an agent can pick, and an
*inconclusive* register holding the fuzzy context (hesitation, framing,
everything not pinned down by the choice itself).  A prospect is a choice
index dressed with amplitudes over the inconclusive register; its
probability under a state ``rho`` splits into

* a diagonal part ``f`` — the classical, utility-like contribution, and
* an off-diagonal part ``q`` — the interference contribution,

with ``p = f + q`` holding identically.  The functions here build states,
projectors and prospect states, evaluate that split, renormalize families
of prospects, and damp interference with a decoherence knob.

Basis convention: the composite index of choice ``n`` with inconclusive
component ``alpha`` is ``n * b_dim + alpha`` (row-major, choice register
first).  ``tensor`` follows the same convention.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSetError, NormalizationError, ValidationError

#: Absolute tolerance for Hermitian symmetry of operators.
HERMITIAN_TOL = 1e-12
#: Absolute tolerance for unit trace of density operators.
TRACE_TOL = 1e-12
#: Most negative eigenvalue still accepted as "positive semi-definite".
PSD_EIGENVALUE_SLACK = -1e-10
#: Absolute tolerance for projector idempotence.
IDEMPOTENCE_TOL = 1e-10
#: Largest imaginary residue tolerated in a quantity that must be real.
IMAG_TOL = 1e-10
#: Internal consistency tolerance for the p = f + q identity.
IDENTITY_TOL = 1e-12
#: Default cap on composite dimension for the random generators.
DEFAULT_DIM_CAP = 64

_NORM_TOL = 1e-12


def _as_complex_vector(values, *, what: str) -> np.ndarray:
    arr = np.asarray(values, dtype=np.complex128)
    if arr.ndim != 1:
        raise ValidationError(f"{what} must be one-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise ValidationError(f"{what} must have at least one component")
    if not np.all(np.isfinite(arr.view(np.float64))):
        raise ValidationError(f"{what} contains non-finite entries")
    arr.setflags(write=False)
    return arr


def _as_operator_matrix(values, *, what: str) -> np.ndarray:
    arr = np.asarray(values, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValidationError(f"{what} must be a square matrix, got shape {arr.shape}")
    if arr.shape[0] == 0:
        raise ValidationError(f"{what} must have dimension at least 1")
    if not np.all(np.isfinite(arr.view(np.float64))):
        raise ValidationError(f"{what} contains non-finite entries")
    herm_defect = float(np.max(np.abs(arr - arr.conj().T)))
    if herm_defect > HERMITIAN_TOL:
        raise ValidationError(
            f"{what} is not Hermitian: max |A - A^dagger| = {herm_defect:.3e} "
            f"exceeds {HERMITIAN_TOL:.0e}"
        )
    arr.setflags(write=False)
    return arr


def _rng(seed: int | np.random.Generator) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


@dataclass(frozen=True)
class StateVector:
    """A vector in a finite-dimensional complex state space.

    Not required to be normalized at construction time; operations that
    need unit norm (``make_projector``, ``DensityOperator.from_pure``)
    check it themselves.
    """

    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        arr = _as_complex_vector(self.amplitudes, what="state vector")
        object.__setattr__(self, "amplitudes", arr)

    @property
    def dim(self) -> int:
        return int(self.amplitudes.size)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def is_normalized(self, tol: float = _NORM_TOL) -> bool:
        return abs(self.norm() - 1.0) <= tol

    def normalized(self) -> "StateVector":
        n = self.norm()
        if n == 0.0:
            raise NormalizationError("cannot normalize the zero vector")
        return StateVector(self.amplitudes / n)

    def overlap(self, other: "StateVector") -> complex:
        """Inner product ``<self|other>`` (conjugate-linear in self)."""
        if other.dim != self.dim:
            raise ValidationError(
                f"dimension mismatch in overlap: {self.dim} vs {other.dim}"
            )
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    @classmethod
    def basis_state(cls, dim: int, index: int) -> "StateVector":
        """Computational basis vector ``|index>`` in ``dim`` dimensions."""
        if dim < 1:
            raise ValidationError(f"dimension must be at least 1, got {dim}")
        if not 0 <= index < dim:
            raise ValidationError(f"basis index {index} out of range for dimension {dim}")
        amp = np.zeros(dim, dtype=np.complex128)
        amp[index] = 1.0
        return cls(amp)


@dataclass(frozen=True)
class DensityOperator:
    """A density operator: Hermitian, unit-trace, positive semi-definite.

    All three properties are checked at construction (Hermitian symmetry
    and trace to 1e-12, eigenvalues allowed down to -1e-10 to absorb
    rounding).
    """

    matrix: np.ndarray

    def __post_init__(self) -> None:
        arr = _as_operator_matrix(self.matrix, what="density operator")
        trace = complex(np.trace(arr))
        if abs(trace - 1.0) > TRACE_TOL:
            raise ValidationError(
                f"density operator trace must be 1, got {trace.real!r} "
                f"(defect {abs(trace - 1.0):.3e} exceeds {TRACE_TOL:.0e})"
            )
        eigmin = float(np.linalg.eigvalsh(arr)[0])
        if eigmin < PSD_EIGENVALUE_SLACK:
            raise ValidationError(
                f"density operator has negative eigenvalue {eigmin:.3e} "
                f"below slack {PSD_EIGENVALUE_SLACK:.0e}"
            )
        object.__setattr__(self, "matrix", arr)

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])

    def diagonal(self) -> np.ndarray:
        """Real diagonal (populations) of the operator."""
        return np.real(np.diag(self.matrix)).copy()

    @classmethod
    def from_pure(cls, state: StateVector) -> "DensityOperator":
        if not state.is_normalized():
            raise NormalizationError(
                f"pure density operator needs a unit vector; norm is {state.norm()!r}"
            )
        return cls(np.outer(state.amplitudes, state.amplitudes.conj()))

    @classmethod
    def maximally_mixed(cls, dim: int) -> "DensityOperator":
        if dim < 1:
            raise ValidationError(f"dimension must be at least 1, got {dim}")
        return cls(np.eye(dim, dtype=np.complex128) / dim)


@dataclass(frozen=True)
class EventOperator:
    """An event: an orthogonal projector or a POVM element.

    ``kind`` is ``"projector"`` (checked idempotent to 1e-10) or
    ``"povm-element"`` (only Hermitian and positive semi-definite,
    eigenvalues within [0, 1] up to slack).
    """

    matrix: np.ndarray
    kind: str = "projector"

    def __post_init__(self) -> None:
        if self.kind not in ("projector", "povm-element"):
            raise ValidationError(
                f"event kind must be 'projector' or 'povm-element', got {self.kind!r}"
            )
        arr = _as_operator_matrix(self.matrix, what="event operator")
        eigs = np.linalg.eigvalsh(arr)
        if float(eigs[0]) < PSD_EIGENVALUE_SLACK:
            raise ValidationError(
                f"event operator has negative eigenvalue {float(eigs[0]):.3e}"
            )
        if float(eigs[-1]) > 1.0 - PSD_EIGENVALUE_SLACK:
            raise ValidationError(
                f"event operator has eigenvalue {float(eigs[-1]):.6f} above 1"
            )
        if self.kind == "projector":
            defect = float(np.max(np.abs(arr @ arr - arr)))
            if defect > IDEMPOTENCE_TOL:
                raise ValidationError(
                    f"projector is not idempotent: max |P^2 - P| = {defect:.3e} "
                    f"exceeds {IDEMPOTENCE_TOL:.0e}"
                )
        object.__setattr__(self, "matrix", arr)

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])

    def expectation(self, rho: DensityOperator) -> float:
        """``Tr(rho A)`` — the probability of the event under ``rho``."""
        if rho.dim != self.dim:
            raise ValidationError(
                f"dimension mismatch: event is {self.dim}-dimensional, "
                f"state is {rho.dim}-dimensional"
            )
        value = complex(np.trace(rho.matrix @ self.matrix))
        if abs(value.imag) > IMAG_TOL:
            raise ValidationError(
                f"event expectation has imaginary part {value.imag:.3e}; "
                "operator inputs are inconsistent"
            )
        return float(value.real)


@dataclass(frozen=True)
class Prospect:
    """A choice option dressed with inconclusive-register amplitudes.

    ``choice_index`` picks the basis state of the choice register;
    ``b_coeffs`` are the (possibly unnormalized) amplitudes over the
    inconclusive register.  With normalized coefficients the prospect
    state is a unit vector and probabilities land in [0, 1].
    """

    choice_index: int
    b_coeffs: np.ndarray

    def __post_init__(self) -> None:
        if self.choice_index < 0:
            raise ValidationError(f"choice index must be >= 0, got {self.choice_index}")
        arr = _as_complex_vector(self.b_coeffs, what="inconclusive coefficients")
        object.__setattr__(self, "b_coeffs", arr)

    @property
    def b_dim(self) -> int:
        return int(self.b_coeffs.size)


@dataclass(frozen=True)
class ProbabilityTriple:
    """The probability of one prospect with its diagonal/off-diagonal split.

    ``p`` is the full event probability, ``f`` the diagonal (utility-like)
    part and ``q`` the interference part.  The defining identity
    ``p = f + q`` is enforced at construction to 1e-12.
    """

    p: float
    f: float
    q: float

    def __post_init__(self) -> None:
        for label, value in (("p", self.p), ("f", self.f), ("q", self.q)):
            if not np.isfinite(value):
                raise ValidationError(f"probability component {label} is not finite")
        defect = abs(self.p - (self.f + self.q))
        if defect > IDENTITY_TOL:
            raise ValidationError(
                f"probability split is inconsistent: |p - (f + q)| = {defect:.3e} "
                f"exceeds {IDENTITY_TOL:.0e}"
            )


def make_projector(state: StateVector) -> EventOperator:
    """Rank-one projector ``|state><state|`` onto a normalized state."""
    if not state.is_normalized():
        raise NormalizationError(
            f"projector needs a normalized state; norm is {state.norm()!r}"
        )
    return EventOperator(
        np.outer(state.amplitudes, state.amplitudes.conj()), kind="projector"
    )


def tensor(left: StateVector, right: StateVector) -> StateVector:
    """Tensor product; component ``(i, j)`` lands at index ``i * right.dim + j``."""
    return StateVector(np.kron(left.amplitudes, right.amplitudes))


def prospect_state(prospect: Prospect, n_dim: int, b_dim: int) -> StateVector:
    """Embed a prospect into the composite space ``n_dim * b_dim``.

    The result is ``|n> (x) sum_alpha b_alpha |alpha>``: the coefficients
    occupy the block of rows belonging to choice index ``n`` and every
    other entry is zero.  Not normalized unless ``b_coeffs`` is.
    """
    if n_dim < 1 or b_dim < 1:
        raise ValidationError(
            f"register dimensions must be at least 1, got ({n_dim}, {b_dim})"
        )
    if prospect.b_dim != b_dim:
        raise ValidationError(
            f"prospect carries {prospect.b_dim} inconclusive coefficients "
            f"but the register has dimension {b_dim}"
        )
    if prospect.choice_index >= n_dim:
        raise ValidationError(
            f"choice index {prospect.choice_index} out of range for "
            f"{n_dim} choice states"
        )
    amp = np.zeros(n_dim * b_dim, dtype=np.complex128)
    start = prospect.choice_index * b_dim
    amp[start : start + b_dim] = prospect.b_coeffs
    return StateVector(amp)


def prospect_projector(prospect: Prospect, n_dim: int, b_dim: int) -> EventOperator:
    """Event operator ``|pi_n><pi_n|`` of the embedded prospect state.

    Returned as a ``povm-element``: for unnormalized coefficients the
    operator is not idempotent, and the probability rule ``Tr(rho P)``
    applies either way.
    """
    state = prospect_state(prospect, n_dim, b_dim)
    return EventOperator(
        np.outer(state.amplitudes, state.amplitudes.conj()), kind="povm-element"
    )


def prospect_probability(
    rho: DensityOperator,
    prospect: Prospect,
    dims: tuple[int, int],
) -> ProbabilityTriple:
    """Probability of a prospect under ``rho``, split into ``f`` and ``q``.

    ``dims`` is ``(n_dim, b_dim)`` for the choice and inconclusive
    registers; their product must equal ``rho.dim``.

    ``f`` sums the diagonal contributions ``|b_alpha|^2 <n alpha|rho|n alpha>``,
    ``q`` the off-diagonal ones ``conj(b_alpha) b_beta <n alpha|rho|n beta>``
    for ``alpha != beta``, and ``p`` is evaluated separately as the full
    quadratic form ``<pi|rho|pi>``.  For a valid Hermitian state the
    off-diagonal sum is real; the complex sum is formed anyway and an
    imaginary residue above 1e-10 raises, which catches malformed
    operators early.  The identity ``p = f + q`` is asserted to 1e-12.
    """
    n_dim, b_dim = dims
    if n_dim * b_dim != rho.dim:
        raise ValidationError(
            f"register dimensions {dims} are inconsistent with a "
            f"{rho.dim}-dimensional state"
        )
    pi = prospect_state(prospect, n_dim, b_dim)

    # Full quadratic form through the complete matrix.
    p_c = complex(np.vdot(pi.amplitudes, rho.matrix @ pi.amplitudes))

    # Diagonal and off-diagonal sums over the block of choice index n.
    n = prospect.choice_index
    block = rho.matrix[n * b_dim : (n + 1) * b_dim, n * b_dim : (n + 1) * b_dim]
    b = prospect.b_coeffs
    weights = np.abs(b) ** 2
    f_c = complex(np.sum(weights * np.diag(block)))
    off_block = block - np.diag(np.diag(block))
    q_c = complex(np.conj(b) @ off_block @ b)

    for label, value in (("p", p_c), ("f", f_c), ("q", q_c)):
        if abs(value.imag) > IMAG_TOL:
            raise ValidationError(
                f"{label} has imaginary residue {value.imag:.3e} above "
                f"{IMAG_TOL:.0e}; the state or coefficients are inconsistent"
            )
    p, f, q = p_c.real, f_c.real, q_c.real
    if abs(p - (f + q)) > IDENTITY_TOL:
        raise ValidationError(
            f"internal identity violated: |p - (f + q)| = {abs(p - (f + q)):.3e}"
        )
    return ProbabilityTriple(p=p, f=f, q=q)


def normalize_prospect_set(
    triples: list[ProbabilityTriple] | tuple[ProbabilityTriple, ...],
) -> list[ProbabilityTriple]:
    """Renormalize a family of prospect probabilities into a distribution.

    ``p`` values are rescaled to sum to 1 and ``f`` values likewise; the
    interference parts are recomputed as ``q' = p' - f'``, which makes
    them sum to zero by construction (the alternation property: positive
    and negative interference across a complete family cancels).
    """
    if len(triples) == 0:
        raise ValidationError("cannot normalize an empty prospect family")
    slack = 1e-12
    for t in triples:
        if t.p < -slack or t.f < -slack:
            raise ValidationError(
                f"raw probabilities must be non-negative, got p={t.p!r}, f={t.f!r}"
            )
    p_total = sum(max(t.p, 0.0) for t in triples)
    f_total = sum(max(t.f, 0.0) for t in triples)
    if p_total <= 0.0 or f_total <= 0.0:
        raise DegenerateSetError(
            "prospect family is degenerate: total p and total f must be positive"
        )
    out = []
    for t in triples:
        p_n = max(t.p, 0.0) / p_total
        f_n = max(t.f, 0.0) / f_total
        out.append(ProbabilityTriple(p=p_n, f=f_n, q=p_n - f_n))
    return out


def sample_inconclusive(b_dim: int, seed: int | np.random.Generator) -> np.ndarray:
    """Draw random inconclusive amplitudes, uniform on the unit sphere.

    Components are independent standard complex Gaussians normalized to
    unit length, which makes the distribution invariant under unitary
    changes of basis.  Deterministic for a fixed integer seed.
    """
    if b_dim < 1:
        raise ValidationError(f"inconclusive dimension must be >= 1, got {b_dim}")
    rng = _rng(seed)
    while True:
        raw = rng.standard_normal(b_dim) + 1j * rng.standard_normal(b_dim)
        norm = np.linalg.norm(raw)
        if norm > 0.0:  # zero draw has probability zero, but stay safe
            return raw / norm


def decohere(
    rho: DensityOperator,
    damping: float,
    block_dims: tuple[int, int] | None = None,
) -> DensityOperator:
    """Damp every off-diagonal element of ``rho`` by ``1 - damping``.

    Equivalent to the convex mixture ``(1 - damping) * rho + damping *
    diag(rho)``, so the result stays a valid density operator for any
    ``damping`` in [0, 1].  Interference parts of prospect probabilities
    scale by exactly ``1 - damping``; at ``damping = 1`` only the
    classical diagonal survives.

    ``block_dims``, when given, is checked for consistency with the
    operator dimension; the damping itself is uniform across all
    off-diagonal entries, inside and between choice blocks alike.
    """
    if not 0.0 <= damping <= 1.0:
        raise ValidationError(f"damping must lie in [0, 1], got {damping!r}")
    if block_dims is not None:
        n_dim, b_dim = block_dims
        if n_dim < 1 or b_dim < 1 or n_dim * b_dim != rho.dim:
            raise ValidationError(
                f"block dimensions {block_dims} are inconsistent with a "
                f"{rho.dim}-dimensional operator"
            )
    damped = rho.matrix.copy()
    off_mask = ~np.eye(rho.dim, dtype=bool)
    damped[off_mask] *= 1.0 - damping
    return DensityOperator(damped)


def random_state_vector(dim: int, seed: int | np.random.Generator) -> StateVector:
    """Haar-random normalized state via normalized complex Gaussians."""
    if dim < 1:
        raise ValidationError(f"dimension must be at least 1, got {dim}")
    if dim > DEFAULT_DIM_CAP:
        raise ValidationError(
            f"dimension {dim} exceeds the cap of {DEFAULT_DIM_CAP}"
        )
    return StateVector(sample_inconclusive(dim, seed))


def random_density_operator(
    dim: int,
    seed: int | np.random.Generator,
    rank: int | None = None,
) -> DensityOperator:
    """Random full-rank (or ``rank``-limited) density operator.

    Built as ``G G^dagger`` from a complex Gaussian ``dim x rank`` matrix,
    symmetrized and trace-normalized — positive semi-definite by
    construction.
    """
    if dim < 1:
        raise ValidationError(f"dimension must be at least 1, got {dim}")
    if dim > DEFAULT_DIM_CAP:
        raise ValidationError(
            f"dimension {dim} exceeds the cap of {DEFAULT_DIM_CAP}"
        )
    if rank is None:
        rank = dim
    if not 1 <= rank <= dim:
        raise ValidationError(f"rank must lie in [1, {dim}], got {rank}")
    rng = _rng(seed)
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    m = g @ g.conj().T
    m = (m + m.conj().T) / 2.0
    return DensityOperator(m / np.trace(m).real)
