"""Dissipative dynamics and the co-evolving weak invariant.

The state obeys the completely positive master equation

    d rho / dt = -i [H, rho] - sum_n c_n (L_n^dag L_n rho + rho L_n^dag L_n
                                          - 2 L_n rho L_n^dag),

with nonnegative rates c_n, and a weak invariant I(t) obeys the adjoint
equation

    d I / dt = -i [H, I] + sum_n c_n (L_n^dag L_n I + I L_n^dag L_n
                                      - 2 L_n^dag I L_n),

so that tr(I(t) rho(t)) is constant while the spectrum of I(t) may move.
Along any such pair the second moment of the invariant can only grow,
at the rate

    d (Delta I)^2 / dt = 2 sum_n c_n < [L_n, I]^dag [L_n, I] >  >=  0,

and the entropy production is bounded below by 2 sum_n c_n <[L_n^dag, L_n]>
(with the alpha-escort average for the Renyi family). The integrator
checks all of this on the fly: conservation and positivity breaches abort
the run rather than producing quietly wrong series.

A caution on the invariant equation: integrated forward it is the inverse
of a contractive (unital, completely positive) flow, so components of I
outside the physically resolved subspace are amplified at rates up to
c_n * spread(spec(L_n))^2. For bounded generators (spin-sized L) this is
harmless and the matrix equation is integrated directly. For truncated
unbounded operators the amplification is catastrophic; callers in that
regime must supply the invariant in closed form via `invariant_path`
(see the oscillator model, whose invariant stays inside a closed operator
algebra with exact coefficient dynamics).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import NumericalError, ValidationError
from .operators import (
    DEFAULT_TOL,
    DensityMatrix,
    _as_matrix,
    require_hermitian,
)

log = logging.getLogger(__name__)

EVAL_FLOOR = 1e-15       # eigenvalues at or below this are treated as exact zeros in logs
C_TOL = 1e-12            # how negative a rate may be before it is an input error
CONSERVATION_TOL = 1e-7
POSITIVITY_FLOOR = -1e-8


@dataclass(frozen=True)
class LindbladGenerator:
    """Time-dependent generator data: H(t), jump operators L_n(t), rates c_n(t).

    All three are callables of time so that model builders can hand over
    closed-form schedules; constant pieces are just constant callables.
    Every evaluation certifies H Hermitian, shapes consistent, and rates
    nonnegative within C_TOL (tiny negative roundoff is clamped to 0).
    """

    dim: int
    hamiltonian: Callable[[float], np.ndarray]
    lindblads: tuple[Callable[[float], np.ndarray], ...]
    rates: tuple[Callable[[float], float], ...]

    def __post_init__(self):
        if len(self.lindblads) != len(self.rates):
            raise ValidationError(
                f"{len(self.lindblads)} jump operators but {len(self.rates)} rates"
            )

    def eval(self, t: float):
        h = require_hermitian(self.hamiltonian(t), name=f"H({t})")
        if h.shape != (self.dim, self.dim):
            raise ValidationError(f"H({t}) has shape {h.shape}, expected dim {self.dim}")
        ls, cs = [], []
        for k, (lf, cf) in enumerate(zip(self.lindblads, self.rates)):
            l_op = np.asarray(lf(t), dtype=complex)
            if l_op.shape != (self.dim, self.dim):
                raise ValidationError(
                    f"L_{k}({t}) has shape {l_op.shape}, expected dim {self.dim}"
                )
            c = float(cf(t))
            if c < -C_TOL:
                raise ValidationError(
                    f"rate c_{k}({t}) = {c:.6e} is negative beyond tolerance {C_TOL:.0e}"
                )
            ls.append(l_op)
            cs.append(max(c, 0.0))
        return h, ls, cs


def lindblad_rhs(gen: LindbladGenerator, rho, t: float) -> np.ndarray:
    """Right-hand side of the master equation at time t."""
    h, ls, cs = gen.eval(t)
    m = _as_matrix(rho)
    out = -1j * (h @ m - m @ h)
    for l_op, c in zip(ls, cs):
        if c == 0.0:
            continue
        ll = l_op.conj().T @ l_op
        out -= c * (ll @ m + m @ ll - 2.0 * l_op @ m @ l_op.conj().T)
    return out


def weak_invariant_rhs(gen: LindbladGenerator, i_op, t: float) -> np.ndarray:
    """Right-hand side of the invariant equation (note the adjoint jump term)."""
    h, ls, cs = gen.eval(t)
    m = _as_matrix(i_op)
    out = -1j * (h @ m - m @ h)
    for l_op, c in zip(ls, cs):
        if c == 0.0:
            continue
        ll = l_op.conj().T @ l_op
        out += c * (ll @ m + m @ ll - 2.0 * l_op.conj().T @ m @ l_op)
    return out


def fluctuation_growth_rate(gen: LindbladGenerator, i_op, rho, t: float) -> float:
    """2 sum_n c_n <[L_n, I]^dag [L_n, I]>, the variance growth rate.

    Each term is the second moment of a commutator, hence nonnegative up
    to roundoff; a value below -1e-12 means the inputs were inconsistent.
    """
    _, ls, cs = gen.eval(t)
    mi = _as_matrix(i_op)
    mr = _as_matrix(rho)
    rate = 0.0
    for l_op, c in zip(ls, cs):
        if c == 0.0:
            continue
        comm = l_op @ mi - mi @ l_op
        rate += 2.0 * c * float(np.trace(comm.conj().T @ comm @ mr).real)
    if rate < -1e-12:
        raise NumericalError(f"growth rate {rate:.3e} is negative; inputs inconsistent")
    return rate


# -- entropies ---------------------------------------------------------------

def _clipped_evals(rho) -> np.ndarray:
    m = _as_matrix(rho)
    defect = float(np.abs(m - m.conj().T).max(initial=0.0))
    if defect > 1e-8:
        raise ValidationError(f"entropy of a non-Hermitian state (defect {defect:.3e})")
    tr = float(np.trace(m).real)
    if abs(tr - 1.0) > 1e-6:
        raise ValidationError(f"entropy of a non-normalised state (trace {tr:.6g})")
    w = np.linalg.eigvalsh(0.5 * (m + m.conj().T))
    if w[0] < -1e-8:
        raise ValidationError(f"entropy of a non-positive state (min eigenvalue {w[0]:.3e})")
    return w


def _vn_from_evals(w: np.ndarray) -> float:
    pos = w[w > EVAL_FLOOR]
    return float(-np.sum(pos * np.log(pos)))


def _renyi_from_evals(w: np.ndarray, alpha: float) -> float:
    if alpha == 1.0:
        return _vn_from_evals(w)
    pos = np.clip(w, 0.0, None)
    return float(np.log(np.sum(pos ** alpha)) / (1.0 - alpha))


def vn_entropy(rho) -> float:
    """-tr(rho ln rho), with eigenvalues <= 1e-15 excluded (0 ln 0 = 0)."""
    return _vn_from_evals(_clipped_evals(rho))


def renyi_entropy(rho, alpha: float) -> float:
    """ln tr(rho^alpha) / (1 - alpha) for alpha > 0; alpha = 1 falls back to vn."""
    if alpha <= 0.0:
        raise ValidationError(f"Renyi order must be positive, got {alpha}")
    return _renyi_from_evals(_clipped_evals(rho), alpha)


def escort_density(rho, alpha: float) -> DensityMatrix:
    """rho^alpha / tr(rho^alpha), the escort state for alpha-averages."""
    if alpha <= 0.0:
        raise ValidationError(f"escort order must be positive, got {alpha}")
    m = _as_matrix(rho)
    defect = float(np.abs(m - m.conj().T).max(initial=0.0))
    if defect > 1e-8:
        raise ValidationError(f"escort of a non-Hermitian state (defect {defect:.3e})")
    if alpha == 1.0:
        return DensityMatrix.from_matrix(m)
    sym = 0.5 * (m + m.conj().T)
    w, v = np.linalg.eigh(sym)
    if w[0] < -1e-8:
        raise ValidationError(f"escort of a non-positive state (min eigenvalue {w[0]:.3e})")
    p = np.clip(w, 0.0, None) ** alpha
    z = float(np.sum(p))
    if z <= 0.0:
        raise NumericalError("escort normalisation vanished; state is numerically zero")
    p /= z
    out = v @ (p[:, None] * v.conj().T)
    return DensityMatrix(
        mat=out,
        herm_defect=float(np.abs(out - out.conj().T).max()),
        trace_defect=float(abs(np.trace(out) - 1.0)),
        min_eig=float(p.min()),
    )


def _bound_terms(gen: LindbladGenerator, weight, t: float) -> float:
    """2 sum_n c_n tr([L_n^dag, L_n] weight) for a given averaging state."""
    _, ls, cs = gen.eval(t)
    m = _as_matrix(weight)
    total = 0.0
    for l_op, c in zip(ls, cs):
        if c == 0.0:
            continue
        comm = l_op.conj().T @ l_op - l_op @ l_op.conj().T
        if np.abs(comm).max(initial=0.0) == 0.0:
            continue
        val = complex(np.trace(comm @ m))
        if abs(val.imag) > 1e-9 * max(abs(val), 1.0):
            raise NumericalError(f"entropy bound has imaginary residue {val.imag:.3e}")
        total += 2.0 * c * val.real
    return total


def entropy_rate_bound(gen: LindbladGenerator, rho, t: float) -> float:
    """Lower bound on dS/dt: 2 sum_n c_n <[L_n^dag, L_n]>.

    Identically zero when every jump operator is normal (in particular
    Hermitian), which is the self-adjoint-noise case.
    """
    return _bound_terms(gen, rho, t)


def renyi_rate_bound(gen: LindbladGenerator, rho, t: float, alpha: float) -> float:
    """Renyi-family version of the bound, averaged in the escort state."""
    return _bound_terms(gen, escort_density(rho, alpha), t)


# -- trajectory integration --------------------------------------------------

SERIES_KEYS = (
    "exp_I", "var_I", "growth_formula", "growth_fd",
    "S_vn", "S_renyi", "bound_vn", "bound_renyi", "trace_err", "min_eig",
)


@dataclass
class Trajectory:
    """Co-integrated (state, invariant) pair plus per-node diagnostics."""

    times: np.ndarray
    states: list[DensityMatrix]
    invariants: list[np.ndarray]
    series: dict[str, np.ndarray]
    alpha: float
    notes: dict[str, float] = field(default_factory=dict)


def _grid(t0: float, t1: float, dt: float) -> np.ndarray:
    if dt <= 0.0:
        raise ValidationError(f"dt must be positive, got {dt}")
    if t1 <= t0:
        raise ValidationError(f"need t1 > t0, got [{t0}, {t1}]")
    n = int(round((t1 - t0) / dt))
    if n < 2 or abs(t0 + n * dt - t1) > 1e-9 * max(1.0, abs(t1)):
        raise ValidationError(
            f"dt {dt} does not tile [{t0}, {t1}] into at least two whole steps"
        )
    return t0 + dt * np.arange(n + 1)


def _prods(ls, cs):
    return [(l_op, l_op.conj().T, l_op.conj().T @ l_op, c)
            for l_op, c in zip(ls, cs) if c > 0.0]


def _rho_rhs(h, prods, m):
    out = -1j * (h @ m - m @ h)
    for l_op, ldag, ll, c in prods:
        out -= c * (ll @ m + m @ ll - 2.0 * l_op @ m @ ldag)
    return out


def _inv_rhs(h, prods, m):
    out = -1j * (h @ m - m @ h)
    for l_op, ldag, ll, c in prods:
        out += c * (ll @ m + m @ ll - 2.0 * ldag @ m @ l_op)
    return out


def integrate(
    gen: LindbladGenerator,
    rho0,
    i0=None,
    t0: float = 0.0,
    t1: float = 0.5,
    dt: float = 1e-3,
    alpha: float = 2.0,
    *,
    invariant_path: Callable[[float], np.ndarray] | None = None,
    conservation_tol: float = CONSERVATION_TOL,
    positivity_floor: float = POSITIVITY_FLOOR,
) -> Trajectory:
    """Fixed-step joint integration of state and invariant.

    Classic fourth-order Runge-Kutta advances rho and (when `i0` is
    given) the invariant matrix through shared stages, so both see the
    generator at identical times. Alternatively `invariant_path` supplies
    I(t) in closed form and only rho is stepped; exactly one of the two
    must be provided.

    The state is re-Hermitized once per step ((rho + rho^dag)/2, the
    applied correction is tracked in notes); trace and positivity are
    monitored, never enforced. The run aborts with a NumericalError if
    tr(I rho) drifts beyond conservation_tol (relative to its initial
    size) or an eigenvalue of rho falls below positivity_floor.
    """
    if alpha <= 0.0:
        raise ValidationError(f"alpha must be positive, got {alpha}")
    if (i0 is None) == (invariant_path is None):
        raise ValidationError("provide exactly one of i0 or invariant_path")

    times = _grid(t0, t1, dt)
    n_nodes = times.size

    state = DensityMatrix.from_matrix(rho0)
    m = state.mat.copy()
    if i0 is not None:
        i_mat = require_hermitian(i0, name="I(t0)").copy()
    else:
        i_mat = require_hermitian(invariant_path(times[0]), name="invariant_path(t0)")

    states: list[DensityMatrix] = []
    invariants: list[np.ndarray] = []
    cols = {k: np.empty(n_nodes) for k in SERIES_KEYS}
    max_herm_fix = 0.0
    exp0 = None

    for idx, t in enumerate(times):
        h, ls, cs = gen.eval(t)
        prods = _prods(ls, cs)

        # node diagnostics
        sym = 0.5 * (m + m.conj().T)
        w, v = np.linalg.eigh(sym)
        min_eig = float(w[0])
        trace_err = float(abs(np.trace(m) - 1.0))
        if min_eig < positivity_floor:
            raise NumericalError(
                f"state lost positivity at t = {t:.6g}: min eigenvalue {min_eig:.3e} "
                f"below floor {positivity_floor:.1e}; reduce dt (positivity is "
                "monitored, not enforced)"
            )
        node_state = DensityMatrix(
            mat=m.copy(),
            herm_defect=float(np.abs(m - m.conj().T).max()),
            trace_defect=trace_err,
            min_eig=min_eig,
        )

        i2 = i_mat @ i_mat
        e_val = complex(np.trace(i_mat @ m))
        e2_val = complex(np.trace(i2 @ m))
        if abs(e_val.imag) > 1e-9 * max(abs(e_val), 1.0):
            raise NumericalError(
                f"<I> at t = {t:.6g} has imaginary residue {e_val.imag:.3e}"
            )
        exp_i = e_val.real
        var_i = e2_val.real - exp_i * exp_i
        if var_i < 0.0:
            if var_i < -1e-10:
                raise NumericalError(f"variance {var_i:.3e} negative at t = {t:.6g}")
            var_i = 0.0

        if exp0 is None:
            exp0 = exp_i
            cons_scale = abs(exp0) if abs(exp0) > 1e-12 else 1.0
        drift = abs(exp_i - exp0)
        if drift > conservation_tol * cons_scale:
            raise NumericalError(
                f"conservation breach at t = {t:.6g}: <I> drifted by {drift:.3e} "
                f"(allowed {conservation_tol * cons_scale:.3e}); the pair no longer "
                "solves the two evolution equations consistently"
            )

        rate = 0.0
        for l_op, _, _, c in prods:
            comm = l_op @ i_mat - i_mat @ l_op
            rate += 2.0 * c * float(np.trace(comm.conj().T @ comm @ m).real)

        escort_w = np.clip(w, 0.0, None) ** alpha
        escort_w /= escort_w.sum()
        escort = v @ (escort_w[:, None] * v.conj().T) if alpha != 1.0 else sym
        bound_vn = 0.0
        bound_renyi = 0.0
        for l_op, ldag, ll, c in prods:
            comm = ll - l_op @ ldag
            if np.abs(comm).max(initial=0.0) == 0.0:
                continue
            bound_vn += 2.0 * c * float(np.trace(comm @ sym).real)
            bound_renyi += 2.0 * c * float(np.trace(comm @ escort).real)

        cols["exp_I"][idx] = exp_i
        cols["var_I"][idx] = var_i
        cols["growth_formula"][idx] = rate
        cols["S_vn"][idx] = _vn_from_evals(w)
        cols["S_renyi"][idx] = _renyi_from_evals(w, alpha)
        cols["bound_vn"][idx] = bound_vn
        cols["bound_renyi"][idx] = bound_renyi
        cols["trace_err"][idx] = trace_err
        cols["min_eig"][idx] = min_eig
        states.append(node_state)
        invariants.append(i_mat.copy())

        if idx == n_nodes - 1:
            break

        # RK4 step with shared generator evaluations
        h2, ls2, cs2 = gen.eval(t + 0.5 * dt)
        prods2 = _prods(ls2, cs2)
        h3, ls3, cs3 = gen.eval(t + dt)
        prods3 = _prods(ls3, cs3)

        k1 = _rho_rhs(h, prods, m)
        k2 = _rho_rhs(h2, prods2, m + 0.5 * dt * k1)
        k3 = _rho_rhs(h2, prods2, m + 0.5 * dt * k2)
        k4 = _rho_rhs(h3, prods3, m + dt * k3)
        m = m + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        fix = float(np.abs(m - m.conj().T).max())
        max_herm_fix = max(max_herm_fix, fix)
        m = 0.5 * (m + m.conj().T)

        if i0 is not None:
            j1 = _inv_rhs(h, prods, i_mat)
            j2 = _inv_rhs(h2, prods2, i_mat + 0.5 * dt * j1)
            j3 = _inv_rhs(h2, prods2, i_mat + 0.5 * dt * j2)
            j4 = _inv_rhs(h3, prods3, i_mat + dt * j3)
            i_mat = i_mat + (dt / 6.0) * (j1 + 2.0 * j2 + 2.0 * j3 + j4)
            i_mat = 0.5 * (i_mat + i_mat.conj().T)
        else:
            i_mat = require_hermitian(
                invariant_path(times[idx + 1]), name="invariant_path"
            )

    cols["growth_fd"] = np.gradient(cols["var_I"], dt, edge_order=2)
    return Trajectory(
        times=times,
        states=states,
        invariants=invariants,
        series=cols,
        alpha=alpha,
        notes={"max_herm_correction": max_herm_fix},
    )
