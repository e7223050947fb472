"""Dense Hermitian-operator primitives shared by every other module.

All operators are plain complex numpy arrays; the helpers here certify the
properties the physics relies on (Hermiticity, unit trace, positivity) and
report the measured residual instead of a bare pass/fail. Everything is
dense and eigh-based on purpose: the target systems are small (dim <= 128)
and a single well-tested Hermitian eigensolver is easier to trust than a
zoo of specialised routines.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .errors import NumericalError, ValidationError

log = logging.getLogger(__name__)

# Pauli matrices, index order (x, y, z).
SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)

# Lowering operator |g><e| in the basis (|e>, |g>).
SIGMA_MINUS = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)


@dataclass(frozen=True)
class Tolerances:
    """Default numerical tolerances for operator certification."""

    herm: float = 1e-10
    psd: float = 1e-10
    trace: float = 1e-9
    imag: float = 1e-9


DEFAULT_TOL = Tolerances()


def _as_matrix(a) -> np.ndarray:
    """Accept a bare ndarray or any wrapper exposing .mat."""
    return np.asarray(getattr(a, "mat", a), dtype=complex)


def _require_square(a: np.ndarray, name: str) -> np.ndarray:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"{name} must be a square matrix, got shape {a.shape}")
    return a


def hermiticity_defect(a) -> float:
    """Max-abs deviation of a from its conjugate transpose."""
    m = _as_matrix(a)
    _require_square(m, "operator")
    return float(np.abs(m - m.conj().T).max(initial=0.0))


def require_hermitian(a, tol: float = DEFAULT_TOL.herm, name: str = "operator") -> np.ndarray:
    """Return a as an ndarray after certifying Hermiticity within tol."""
    m = _as_matrix(a)
    defect = hermiticity_defect(m)
    if defect > tol:
        raise ValidationError(
            f"{name} is not Hermitian: defect {defect:.3e} exceeds tol {tol:.1e}"
        )
    return m


def dagger(a) -> np.ndarray:
    return _as_matrix(a).conj().T


def commutator(a, b) -> np.ndarray:
    """[a, b] = ab - ba. Dimensions must agree."""
    ma, mb = _as_matrix(a), _as_matrix(b)
    _require_square(ma, "a")
    _require_square(mb, "b")
    if ma.shape != mb.shape:
        raise ValidationError(f"dimension mismatch in commutator: {ma.shape} vs {mb.shape}")
    return ma @ mb - mb @ ma


@dataclass(frozen=True)
class HermitianOperator:
    """A certified Hermitian matrix plus its measured defect."""

    mat: np.ndarray
    herm_defect: float

    @classmethod
    def from_matrix(cls, mat, tol: Tolerances = DEFAULT_TOL) -> "HermitianOperator":
        m = _as_matrix(mat)
        _require_square(m, "operator")
        defect = hermiticity_defect(m)
        if defect > tol.herm:
            raise ValidationError(
                f"operator is not Hermitian: defect {defect:.3e} exceeds tol {tol.herm:.1e}"
            )
        return cls(mat=m, herm_defect=defect)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]


@dataclass(frozen=True)
class DensityMatrix:
    """A certified density matrix with its measured residuals.

    Validation clips nothing: the stored matrix is exactly what was passed
    in, and the residual fields record by how much it misses the ideal
    (Hermitian, unit trace, positive) properties.
    """

    mat: np.ndarray
    herm_defect: float
    trace_defect: float
    min_eig: float

    @classmethod
    def from_matrix(cls, mat, tol: Tolerances = DEFAULT_TOL) -> "DensityMatrix":
        m = _as_matrix(mat)
        _require_square(m, "state")
        herm = hermiticity_defect(m)
        if herm > tol.herm:
            raise ValidationError(
                f"state is not Hermitian: defect {herm:.3e} exceeds tol {tol.herm:.1e}"
            )
        tr = np.trace(m)
        trace_defect = float(abs(tr - 1.0))
        if trace_defect > tol.trace:
            raise ValidationError(
                f"state trace {tr:.12g} misses 1 by {trace_defect:.3e} (tol {tol.trace:.1e})"
            )
        evals = np.linalg.eigvalsh(0.5 * (m + m.conj().T))
        min_eig = float(evals[0])
        if min_eig < -tol.psd:
            raise ValidationError(
                f"state has negative eigenvalue {min_eig:.3e} below -{tol.psd:.1e}"
            )
        return cls(mat=m, herm_defect=herm, trace_defect=trace_defect, min_eig=min_eig)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]


@dataclass(frozen=True)
class Spectrum:
    """eigh output with a reconstruction certificate.

    eigenvalues ascending; eigenvectors[:, k] belongs to eigenvalues[k].
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    recon_error: float


def eigh(a, tol: Tolerances = DEFAULT_TOL) -> Spectrum:
    """Certified Hermitian eigendecomposition.

    The input must be Hermitian within tol.herm. The reconstruction
    error max|V diag(w) V^dag - A| is measured and must stay below
    1e-9 * max|A|; a breach is reported as a solver failure rather than
    silently returned.
    """
    m = require_hermitian(a, tol.herm)
    w, v = np.linalg.eigh(m)
    recon = v @ (w[:, None] * v.conj().T)
    scale = max(float(np.abs(m).max(initial=0.0)), 1.0)
    err = float(np.abs(recon - m).max(initial=0.0))
    if err > 1e-9 * scale:
        raise NumericalError(
            f"eigh reconstruction error {err:.3e} exceeds 1e-9 * scale ({scale:.3e})"
        )
    return Spectrum(eigenvalues=w, eigenvectors=v, recon_error=err)


def expm_herm(a, s: float = 1.0) -> np.ndarray:
    """exp(s * A) for Hermitian A, via the eigendecomposition."""
    spec = eigh(a)
    w, v = spec.eigenvalues, spec.eigenvectors
    return v @ (np.exp(s * w)[:, None] * v.conj().T)


def expectation(a, rho, imag_tol: float = DEFAULT_TOL.imag) -> float:
    """tr(A rho) for Hermitian A, returned as a real number.

    The imaginary residue of the trace is a cheap witness for a
    non-Hermitian operator or a corrupted state, so it is checked.
    """
    ma = _as_matrix(a)
    mr = _as_matrix(rho)
    _require_square(ma, "operator")
    if ma.shape != mr.shape:
        raise ValidationError(f"dimension mismatch: operator {ma.shape}, state {mr.shape}")
    val = complex(np.trace(ma @ mr))
    scale = max(abs(val), 1.0)
    if abs(val.imag) > imag_tol * scale:
        raise ValidationError(
            f"expectation has imaginary residue {val.imag:.3e} (tol {imag_tol:.1e}); "
            "operator or state is not Hermitian enough"
        )
    return val.real


def variance(a, rho, clip: float = 1e-10) -> float:
    """<A^2> - <A>^2 in the given state.

    Roundoff can push a mathematically zero variance slightly negative;
    values in [-clip, 0) are clipped to 0 and logged. Anything more
    negative means the inputs are broken and is a hard error.
    """
    ma = _as_matrix(a)
    mean = expectation(ma, rho)
    second = expectation(ma @ ma, rho)
    var = second - mean * mean
    if var < 0.0:
        if var >= -clip:
            log.debug("clipped tiny negative variance %.3e to 0", var)
            return 0.0
        raise NumericalError(
            f"variance {var:.3e} is negative beyond the clip threshold {clip:.1e}"
        )
    return float(var)


def geq_margin(a, b) -> float:
    """Smallest eigenvalue of a - b; >= 0 means a >= b in operator order."""
    ma = require_hermitian(a, name="a")
    mb = require_hermitian(b, name="b")
    if ma.shape != mb.shape:
        raise ValidationError(f"dimension mismatch: {ma.shape} vs {mb.shape}")
    return float(np.linalg.eigvalsh(ma - mb)[0])


def operator_geq(a, b, tol: float = DEFAULT_TOL.psd) -> bool:
    """Whether a - b is positive semidefinite up to -tol."""
    return geq_margin(a, b) >= -tol
