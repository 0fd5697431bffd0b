"""Hilbert-Schmidt distance machinery: closed forms for isotropic states,
a conditional-gradient projection onto the separable set, the generalized
Bell inequality violation, and the distance-equals-violation equality check.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import DimensionMismatchError, hs_inner, hs_norm
from .states import DensityMatrix, IsotropicParams, ProductEnsemble
from .witness import SolverConfig, min_over_separable, witness_candidate

# Tolerance for the distance-equals-violation check; dominated by the
# numeric projection, not by the closed forms.
TAU_BNT = 5e-4


@dataclass(frozen=True)
class ProjectionConfig:
    """Settings for the conditional-gradient projection onto the separable
    set.  The inner linear subproblem reuses the product-state minimizer;
    its config here may be lighter than the standalone default because each
    call is warm-started from the previous vertex."""

    tol_gap: float = 1e-9
    max_outer_iters: int = 5000
    away_steps: bool = True
    prune_tol: float = 1e-12
    solver: SolverConfig = field(default_factory=lambda: SolverConfig(n_starts=8))


@dataclass(frozen=True)
class MeasureResult:
    distance: float
    nearest: ProductEnsemble
    gap_certificate: float
    iterations: int
    converged: bool = True


class ProjectionError(RuntimeError):
    """Projection ran out of iterations; carries the best result found."""

    def __init__(self, message, result: MeasureResult):
        super().__init__(message)
        self.result = result


@dataclass(frozen=True)
class BntReport:
    """Hilbert-Schmidt measure vs. maximal Bell-inequality violation."""

    d_value: float
    b_value: float
    discrepancy: float
    measure: MeasureResult


def hs_distance(r1: DensityMatrix, r2: DensityMatrix) -> float:
    """Hilbert-Schmidt distance ||r1 - r2||."""
    if r1.dim != r2.dim:
        raise DimensionMismatchError("state dimensions differ")
    return hs_norm(r1.matrix - r2.matrix)


def hs_measure_isotropic(d: int, alpha: float) -> float:
    """Closed-form distance of an entangled isotropic state to the separable
    set: sqrt(d^2-1)/d * (alpha - 1/(d+1)); the nearest separable state is
    the isotropic state at the threshold."""
    p = IsotropicParams(d, alpha)
    if p.alpha <= p.threshold:
        raise ValueError(
            f"alpha = {alpha} is in the separable regime (threshold {p.threshold:.6g})"
        )
    return np.sqrt(d**2 - 1) / d * (p.alpha - p.threshold)


def _atom_matrix(psi, phi):
    x = np.kron(psi, phi)
    return np.outer(x, x.conj())


def _reoptimize_weights(atoms, target_matrix, prune_tol):
    """Best convex combination of the given product atoms in HS norm.

    Solved as a nonnegative least-squares problem with a heavily weighted
    sum-to-one row; weights are renormalized afterwards so the result is an
    exact convex combination.
    """
    from scipy.optimize import nnls

    dim2 = target_matrix.size
    cols = []
    for psi, phi in atoms:
        v = _atom_matrix(psi, phi).ravel()
        cols.append(np.concatenate([v.real, v.imag]))
    a = np.column_stack(cols)
    b = np.concatenate([target_matrix.ravel().real, target_matrix.ravel().imag])
    penalty = 1e4
    a = np.vstack([a, penalty * np.ones((1, len(atoms)))])
    b = np.concatenate([b, [penalty]])
    w, _ = nnls(a, b)
    total = w.sum()
    if total <= 0:
        w = np.full(len(atoms), 1.0 / len(atoms))
    else:
        w = w / total
    keep = [k for k in range(len(atoms)) if w[k] > prune_tol]
    atoms = [atoms[k] for k in keep]
    w = w[keep]
    w = w / w.sum()
    return atoms, list(w)


def nearest_separable(
    target: DensityMatrix, cfg: ProjectionConfig = ProjectionConfig()
) -> MeasureResult:
    """Project a state onto the separable set by conditional gradient.

    The iterate is kept as an explicit convex combination of pure product
    states.  Each step minimizes the linearized objective over product
    states (exactly the witness-side solver), adds the resulting vertex,
    and re-optimizes the weights over the active atom set (a fully
    corrective step, which subsumes away-steps by zeroing useless atoms).
    The final linearization gap certifies suboptimality of the squared
    distance.
    """
    d_a, d_b = target.d_a, target.d_b
    if d_b == 1:
        raise ValueError("projection needs a bipartite state")

    # initial atom: product state most aligned with the target
    _, (psi, phi) = min_over_separable(-target.matrix, d_a, d_b, cfg.solver)
    atoms = [(psi, phi)]
    weights = [1.0]
    rho = _atom_matrix(psi, phi)

    gap = np.inf
    converged = False
    last_phi = phi
    for it in range(1, cfg.max_outer_iters + 1):
        grad = 2 * (rho - target.matrix)
        v_val, (v_psi, v_phi) = min_over_separable(
            grad, d_a, d_b, cfg.solver, extra_starts=(last_phi,)
        )
        last_phi = v_phi
        gap = hs_inner(rho, grad).real - v_val
        if gap < cfg.tol_gap:
            converged = True
            break

        atoms.append((v_psi, v_phi))
        if cfg.away_steps:
            atoms, weights = _reoptimize_weights(atoms, target.matrix, cfg.prune_tol)
        else:
            # plain conditional-gradient step with exact line search
            direction = _atom_matrix(v_psi, v_phi) - rho
            denom = hs_norm(direction) ** 2
            gamma = hs_inner(target.matrix - rho, direction).real / denom
            gamma = min(max(gamma, 0.0), 1.0)
            weights = [w * (1 - gamma) for w in weights] + [gamma]
            keep = [k for k, w in enumerate(weights) if w > cfg.prune_tol]
            atoms = [atoms[k] for k in keep]
            weights = [weights[k] for k in keep]
            total = sum(weights)
            weights = [w / total for w in weights]
        rho = sum(w * _atom_matrix(p, q) for w, (p, q) in zip(weights, atoms))

    ensemble = ProductEnsemble(tuple((w, p, q) for w, (p, q) in zip(weights, atoms)))
    result = MeasureResult(
        distance=hs_norm(rho - target.matrix),
        nearest=ensemble,
        gap_certificate=float(gap),
        iterations=it,
        converged=converged,
    )
    if not converged:
        raise ProjectionError(
            f"projection gap {gap:.3e} above tolerance {cfg.tol_gap:.1e} after "
            f"{cfg.max_outer_iters} iterations",
            result,
        )
    return result


def gbi_violation(
    target: DensityMatrix, witness_op, cfg: SolverConfig = SolverConfig()
) -> float:
    """Bell-inequality violation of ``target`` for a given witness:
    min over separable states of <rho, A> minus <target, A>.

    For the optimal witness this is the maximal violation, which equals the
    Hilbert-Schmidt measure.
    """
    sep_min, _ = min_over_separable(witness_op, target.d_a, target.d_b, cfg)
    return sep_min - hs_inner(target.matrix, witness_op).real


def bnt_check(
    target: DensityMatrix, cfg: ProjectionConfig = ProjectionConfig()
) -> BntReport:
    """Compare the numeric distance to the separable set with the maximal
    Bell-inequality violation of the witness built at the projection's
    nearest state; the two agree for a converged run."""
    mr = nearest_separable(target, cfg)
    nearest = mr.nearest.to_density()
    cand = witness_candidate(nearest, target)
    b = gbi_violation(target, cand.operator, cfg.solver)
    return BntReport(mr.distance, b, abs(mr.distance - b), mr)


def infinite_d_trend(alphas, d_max: int):
    """Tabulate (d, alpha, threshold, D) for d = 2..d_max.

    D is the closed-form distance in the entangled regime and 0 on or below
    the threshold; as d grows the threshold 1/(d+1) shrinks to zero and D
    approaches alpha.
    """
    if d_max < 2:
        raise ValueError(f"need d_max >= 2, got {d_max}")
    rows = []
    for d in range(2, d_max + 1):
        thr = 1.0 / (d + 1)
        for alpha in alphas:
            dist = hs_measure_isotropic(d, alpha) if alpha > thr else 0.0
            rows.append((d, float(alpha), thr, dist))
    return rows
