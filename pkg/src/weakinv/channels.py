"""Completely positive trace-preserving maps in Kraus form.

A channel is a finite list of Kraus operators V_k acting as

    rho' = sum_k V_k rho V_k^dag,      sum_k V_k^dag V_k = 1.

The adjoint (Heisenberg-picture) map X -> sum_k V_k^dag X V_k is then
automatically unital, which is what makes the second-moment inequality

    adjoint(X^2) >= adjoint(X)^2        (Kadison)

hold for every Hermitian X. Channels carry their construction interval
(t_from, t_to) so that compositions can refuse to chain maps that do not
meet in time, and a certified bound on the trace-preservation residual so
first-order step channels can be honest about their O(dt^2) defect.

Kraus lists are never pruned on composition; at the dimensions this
package targets the growth is acceptable and pruning would silently
change the map.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .operators import DensityMatrix, Tolerances, DEFAULT_TOL, _as_matrix, require_hermitian

CPTP_TOL = 1e-9
TIME_MATCH_TOL = 1e-12


@dataclass(frozen=True)
class QuantumChannel:
    """Kraus representation of a CPTP map with a completeness certificate.

    tp_defect is the measured max-abs residual of sum V^dag V - 1;
    tp_tol is the bound it was certified against at construction.
    """

    kraus: tuple[np.ndarray, ...]
    t_from: float
    t_to: float
    tp_defect: float
    tp_tol: float

    @classmethod
    def from_kraus(
        cls,
        ops,
        t_from: float = 0.0,
        t_to: float = 0.0,
        tp_tol: float = CPTP_TOL,
    ) -> "QuantumChannel":
        mats = tuple(np.asarray(v, dtype=complex) for v in ops)
        if not mats:
            raise ValidationError("a channel needs at least one Kraus operator")
        dim = mats[0].shape[0]
        for v in mats:
            if v.ndim != 2 or v.shape != (dim, dim):
                raise ValidationError(
                    f"Kraus operators must all be {dim}x{dim}, got shape {v.shape}"
                )
        acc = np.zeros((dim, dim), dtype=complex)
        for v in mats:
            acc += v.conj().T @ v
        defect = float(np.abs(acc - np.eye(dim)).max())
        if defect > tp_tol:
            raise ValidationError(
                f"Kraus completeness residual {defect:.3e} exceeds tol {tp_tol:.1e}"
            )
        return cls(kraus=mats, t_from=float(t_from), t_to=float(t_to),
                   tp_defect=defect, tp_tol=float(tp_tol))

    @property
    def dim(self) -> int:
        return self.kraus[0].shape[0]


def apply(ch: QuantumChannel, rho, tol: Tolerances = DEFAULT_TOL) -> DensityMatrix:
    """Schroedinger-picture action rho -> sum V rho V^dag.

    The output is validated as a density matrix; a positivity failure
    there is the symptom of a non-CP input map, so the validation error
    is allowed to propagate.
    """
    m = _as_matrix(rho)
    if m.shape != (ch.dim, ch.dim):
        raise ValidationError(f"state shape {m.shape} does not match channel dim {ch.dim}")
    out = np.zeros_like(m)
    for v in ch.kraus:
        out += v @ m @ v.conj().T
    # Loosen the trace check by the channel's own certified defect.
    eff = Tolerances(herm=tol.herm, psd=tol.psd,
                     trace=max(tol.trace, 2.0 * ch.tp_tol), imag=tol.imag)
    return DensityMatrix.from_matrix(out, tol=eff)


def adjoint_apply(ch: QuantumChannel, x) -> np.ndarray:
    """Heisenberg-picture action X -> sum V^dag X V (unital for CPTP)."""
    m = np.asarray(_as_matrix(x), dtype=complex)
    if m.shape != (ch.dim, ch.dim):
        raise ValidationError(f"operator shape {m.shape} does not match channel dim {ch.dim}")
    out = np.zeros_like(m)
    for v in ch.kraus:
        out += v.conj().T @ m @ v
    return out


def kadison_gap(ch: QuantumChannel, i_op) -> np.ndarray:
    """adjoint(I^2) - adjoint(I)^2 for Hermitian I.

    Positive semidefinite for every channel with a unital adjoint; its
    expectation in the pre-step state is exactly the one-step variance
    growth of the invariant pair.
    """
    m = require_hermitian(i_op, name="invariant")
    fwd = adjoint_apply(ch, m)
    return adjoint_apply(ch, m @ m) - fwd @ fwd


def compose(later: QuantumChannel, earlier: QuantumChannel) -> QuantumChannel:
    """Channel for `earlier` followed by `later` (Kraus products W V).

    The two maps must meet in time: later.t_from == earlier.t_to.
    """
    if later.dim != earlier.dim:
        raise ValidationError(f"cannot compose dim {earlier.dim} into dim {later.dim}")
    if abs(later.t_from - earlier.t_to) > TIME_MATCH_TOL:
        raise ValidationError(
            f"time mismatch in composition: earlier ends at {earlier.t_to!r}, "
            f"later starts at {later.t_from!r}"
        )
    prods = tuple(w @ v for w in later.kraus for v in earlier.kraus)
    tol = earlier.tp_tol + later.tp_tol + earlier.tp_tol * later.tp_tol + 1e-12
    return QuantumChannel.from_kraus(
        prods, t_from=earlier.t_from, t_to=later.t_to, tp_tol=tol
    )


def lindblad_step_channel(gen, t: float, dt: float) -> QuantumChannel:
    """First-order Kraus factorisation of a short generator step.

    With jump operators L_n at rates c_n >= 0 and Hamiltonian H, the step
    over [t, t+dt] is

        V_0 = 1 - i dt H - dt sum_n c_n L_n^dag L_n,
        V_n = sqrt(2 c_n dt) L_n,

    which reproduces the generator to first order and leaves a
    trace-preservation residual of O(dt^2). The channel is certified
    against a dt^2 budget scaled by the operator norms, so large systems
    do not pass silently while small ones are held to ~10 dt^2.
    """
    if dt <= 0.0:
        raise ValidationError(f"step needs dt > 0, got {dt}")
    h, ls, cs = gen.eval(t)
    dim = h.shape[0]
    v0 = np.eye(dim, dtype=complex) - 1j * dt * h
    ops = []
    scale = float(np.abs(h).max(initial=0.0))
    for l_op, c in zip(ls, cs):
        ll = l_op.conj().T @ l_op
        v0 -= dt * c * ll
        scale = max(scale, float(c * np.abs(ll).max(initial=0.0)))
        if c > 0.0:
            ops.append(np.sqrt(2.0 * c * dt) * l_op)
    budget = 10.0 * dt * dt * max(1.0, scale) ** 2
    return QuantumChannel.from_kraus(
        [v0, *ops], t_from=t, t_to=t + dt, tp_tol=max(CPTP_TOL, budget)
    )


def random_channel(dim: int, n_kraus: int, seed: int) -> QuantumChannel:
    """Seeded Haar-style random CPTP map.

    A complex Gaussian (n_kraus*dim, dim) matrix is QR-orthonormalised
    into an isometry; its dim x dim row blocks are the Kraus operators,
    so completeness holds to machine precision by construction. The R
    phases are fixed to make the draw unambiguous for a given seed.
    """
    if dim < 1 or n_kraus < 1:
        raise ValidationError(f"need dim >= 1 and n_kraus >= 1, got {dim}, {n_kraus}")
    rng = np.random.default_rng(seed)
    g = rng.normal(size=(n_kraus * dim, dim)) + 1j * rng.normal(size=(n_kraus * dim, dim))
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    q = q * (d.conj() / np.abs(d))[None, :]
    ops = [q[k * dim:(k + 1) * dim, :] for k in range(n_kraus)]
    return QuantumChannel.from_kraus(ops, tp_tol=1e-12)
