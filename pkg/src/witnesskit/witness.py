"""Entanglement witnesses: the tangent-plane candidate built from a
(guess, entangled-state) pair, global minimization of an observable over
product states, the closed-form optimal witnesses for isotropic states,
and the CHSH operator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    TAU_EIG,
    DimensionMismatchError,
    hs_inner,
    hs_norm,
    require_hermitian,
)
from .states import (
    DensityMatrix,
    IsotropicParams,
    ProductEnsemble,
    gamma_operator,
)

# Sign-decision tolerance for witness checks; looser than the linear-algebra
# tolerances because sep_minimum comes from an iterative solver.
TAU_WIT = 1e-7


class SolverError(RuntimeError):
    """Product-state minimization did not converge; carries the best value."""

    def __init__(self, message, best_value, iterations):
        super().__init__(message)
        self.best_value = best_value
        self.iterations = iterations


@dataclass(frozen=True)
class SolverConfig:
    """Settings for the multistart alternating-eigenvector solver."""

    n_starts: int = 32
    max_iters: int = 500
    tol_conv: float = 1e-12
    seed: int = 0


@dataclass(frozen=True)
class WitnessCandidate:
    """Hyperplane operator through ``guess``, orthogonal to guess - target."""

    operator: np.ndarray
    guess: DensityMatrix
    target: DensityMatrix
    offset_c: float


@dataclass(frozen=True)
class WitnessReport:
    candidate: WitnessCandidate
    ent_expectation: float
    sep_minimum: float
    minimizer: ProductEnsemble
    is_witness: bool
    is_optimal: bool


def witness_candidate(guess: DensityMatrix, target: DensityMatrix) -> WitnessCandidate:
    """Build the normalized tangent-plane operator
    (guess - target - <guess, guess - target> 1) / ||guess - target||.

    Its expectation vanishes on ``guess`` and equals -||guess - target|| on
    ``target``; it is an entanglement witness exactly when ``guess`` is the
    nearest separable state.
    """
    if guess.dim != target.dim:
        raise DimensionMismatchError("guess and target dimensions differ")
    diff = guess.matrix - target.matrix
    norm = hs_norm(diff)
    if norm <= TAU_EIG:
        raise ValueError("guess equals target; witness direction is undefined")
    overlap = hs_inner(guess.matrix, diff).real
    op = (diff - overlap * np.eye(guess.dim)) / norm
    return WitnessCandidate(op, guess, target, offset_c=-overlap / norm)


def _random_unit(rng: np.random.Generator, d: int) -> np.ndarray:
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)


# Alternating eigenvector steps converge sublinearly along nearly flat
# valleys; once the per-step decrease drops below this, switch to a
# quasi-Newton polish of the product Rayleigh quotient.
_STALL_TOL = 1e-8
# Cap on consecutive alternating steps before a polish is attempted anyway.
_ALT_BURST = 60


def _polish(a4, d_a: int, d_b: int, psi, phi, tol: float):
    """Minimize <psi phi|a|psi phi> / (|psi|^2 |phi|^2) by BFGS with an
    analytic gradient, starting from the alternating solver's iterate."""
    from scipy.optimize import minimize

    def unpack(x):
        psi = x[:d_a] + 1j * x[d_a:2 * d_a]
        off = 2 * d_a
        phi = x[off:off + d_b] + 1j * x[off + d_b:]
        return psi, phi

    def fun_jac(x):
        psi, phi = unpack(x)
        ma = np.einsum("ikjl,k,l->ij", a4, phi.conj(), phi)
        npsi = np.vdot(psi, psi).real
        nphi = np.vdot(phi, phi).real
        h = npsi * nphi
        g = np.vdot(psi, ma @ psi).real
        f = g / h
        mb = np.einsum("ikjl,i,j->kl", a4, psi.conj(), psi)
        dpsi = (ma @ psi - f * nphi * psi) / h
        dphi = (mb @ phi - f * npsi * phi) / h
        grad = 2 * np.concatenate([dpsi.real, dpsi.imag, dphi.real, dphi.imag])
        return f, grad

    x0 = np.concatenate([psi.real, psi.imag, phi.real, phi.imag])
    res = minimize(fun_jac, x0, jac=True, method="BFGS",
                   options={"gtol": tol, "maxiter": 500})
    psi, phi = unpack(res.x)
    return psi / np.linalg.norm(psi), phi / np.linalg.norm(phi)


def min_over_separable(
    a,
    d_a: int,
    d_b: int,
    cfg: SolverConfig = SolverConfig(),
    extra_starts=(),
):
    """Global minimum of <psi x phi| a |psi x phi> over unit vectors.

    By linearity this is the minimum of <rho, a> over all separable rho,
    attained at a pure product state.  Multistart alternating optimization:
    for fixed phi the optimal psi is the minimal eigenvector of the
    contracted d_a x d_a operator, and symmetrically; each half-step solves
    its subproblem exactly, so the value is monotone non-increasing.

    Returns ``(value, (psi, phi))`` for the best start.  ``extra_starts`` may
    supply additional initial phi vectors (e.g. warm starts).
    """
    m = require_hermitian(a)
    if m.shape[0] != d_a * d_b:
        raise DimensionMismatchError(f"operator dim {m.shape[0]} != {d_a * d_b}")
    a4 = m.reshape(d_a, d_b, d_a, d_b)
    rng = np.random.default_rng(cfg.seed)
    starts = [np.asarray(p, dtype=complex) for p in extra_starts]
    starts += [_random_unit(rng, d_b) for _ in range(cfg.n_starts)]

    best = None
    for phi in starts:
        phi = phi / np.linalg.norm(phi)
        value, psi, phi, done = _alternate(a4, phi, cfg.max_iters, cfg.tol_conv)
        # crawling along a flat valley: polish, then let the alternating
        # steps confirm stationarity; repeat if the quasi-Newton line search
        # bailed out early
        for _ in range(5):
            if done:
                break
            psi, phi = _polish(a4, d_a, d_b, psi, phi, min(cfg.tol_conv, 1e-12))
            value, psi, phi, done = _alternate(a4, phi, cfg.max_iters, cfg.tol_conv)
        if not done:
            raise SolverError(
                f"alternating solver did not converge in {cfg.max_iters} iterations",
                best_value=min(value, best[0]) if best else value,
                iterations=cfg.max_iters,
            )
        if best is None or value < best[0]:
            best = (value, (psi, phi))
    return best


def _alternate(a4, phi, max_iters: int, tol_conv: float):
    """Alternating eigenvector descent; returns (value, psi, phi, converged).

    Stops early (converged=False) once the per-step decrease stalls below
    ``_STALL_TOL`` without reaching ``tol_conv``.
    """
    value = np.inf
    psi = None
    for _ in range(min(max_iters, _ALT_BURST)):
        ma = np.einsum("ikjl,k,l->ij", a4, phi.conj(), phi)
        w, v = np.linalg.eigh(ma)
        psi = v[:, 0]
        mb = np.einsum("ikjl,i,j->kl", a4, psi.conj(), psi)
        w, v = np.linalg.eigh(mb)
        phi = v[:, 0]
        new_value = w[0].real
        decrease = value - new_value
        value = new_value
        if decrease < tol_conv:
            return value, psi, phi, True
        if decrease < _STALL_TOL:
            return value, psi, phi, False
    return value, psi, phi, False


def verify_nearest_separable(
    guess: DensityMatrix,
    target: DensityMatrix,
    cfg: SolverConfig = SolverConfig(),
) -> WitnessReport:
    """Check a guess for the nearest separable state.

    The guess is certified (within solver confidence) exactly when the
    candidate operator is an entanglement witness: negative on the target
    and non-negative on every product state.
    """
    cand = witness_candidate(guess, target)
    ent = hs_inner(target.matrix, cand.operator).real
    sep_min, (psi, phi) = min_over_separable(cand.operator, target.d_a, target.d_b, cfg)
    is_witness = ent < -TAU_WIT and sep_min >= -TAU_WIT
    is_optimal = is_witness and abs(sep_min) <= TAU_WIT
    minimizer = ProductEnsemble(((1.0, psi, phi),))
    return WitnessReport(cand, ent, sep_min, minimizer, is_witness, is_optimal)


def optimal_witness_isotropic(d: int, alpha: float) -> np.ndarray:
    """Closed-form optimal witness for an entangled isotropic state:
    (d-1)/(d sqrt(d^2-1)) (1 - d/(2(d-1)) Gamma).

    The operator itself is alpha-independent; alpha only gates the entangled
    regime alpha > 1/(d+1).
    """
    p = IsotropicParams(d, alpha)
    if p.alpha <= p.threshold:
        raise ValueError(
            f"alpha = {alpha} is in the separable regime (threshold {p.threshold:.6g})"
        )
    gamma = gamma_operator(d)
    pref = (d - 1) / (d * np.sqrt(d**2 - 1))
    return pref * (np.eye(d * d) - d / (2 * (d - 1)) * gamma)


_PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def _dot_sigma(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    return v[0] * _PAULI[0] + v[1] * _PAULI[1] + v[2] * _PAULI[2]


def chsh_operator(a, a_p, b, b_p) -> np.ndarray:
    """CHSH operator a.sigma x (b+b').sigma + a'.sigma x (b-b').sigma for
    unit vectors in R^3; the inequality reads <rho, 2*1 - B> >= 0."""
    for v in (a, a_p, b, b_p):
        if abs(np.linalg.norm(np.asarray(v, dtype=float)) - 1) > TAU_EIG:
            raise ValueError("CHSH settings must be unit vectors")
    b = np.asarray(b, dtype=float)
    b_p = np.asarray(b_p, dtype=float)
    return np.kron(_dot_sigma(a), _dot_sigma(b + b_p)) + np.kron(
        _dot_sigma(a_p), _dot_sigma(b - b_p)
    )


def chsh_max_violation(rho: DensityMatrix, cfg: SolverConfig = SolverConfig()) -> float:
    """Numerically maximize Tr(rho B) over the four CHSH settings.

    Alice's vectors are eliminated analytically: for fixed b, b' the optima
    are a || T(b+b') and a' || T(b-b') where T is the correlation matrix
    T_ij = Tr(rho sigma^i x sigma^j), leaving a maximization over (b, b')
    done by multistart local search.
    """
    from scipy.optimize import minimize

    if rho.d_a != 2 or rho.d_b != 2:
        raise DimensionMismatchError("CHSH scan requires a two-qubit state")
    t = np.empty((3, 3))
    for i in range(3):
        for j in range(3):
            t[i, j] = hs_inner(np.kron(_PAULI[i], _PAULI[j]), rho.matrix).real

    def objective(x):
        b = x[:3]
        bp = x[3:]
        nb, nbp = np.linalg.norm(b), np.linalg.norm(bp)
        if nb < 1e-12 or nbp < 1e-12:
            return 0.0
        b, bp = b / nb, bp / nbp
        return -(np.linalg.norm(t @ (b + bp)) + np.linalg.norm(t @ (b - bp)))

    rng = np.random.default_rng(cfg.seed)
    best = 0.0
    for _ in range(max(cfg.n_starts, 1)):
        x0 = rng.standard_normal(6)
        res = minimize(objective, x0, method="Nelder-Mead",
                       options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 2000})
        best = max(best, -res.fun)
    return best
