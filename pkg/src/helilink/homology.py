"""Pressure on cohomology and homology-constrained orbit statistics.

The per-edge integer labels realize classes in Z^b; adding ``t . labels`` to
the potential and minimizing the flow pressure over ``t`` picks out the
equilibrium state with vanishing winding cycle, which governs counting,
equidistribution and large deviations within a fixed class.

Counting windows on unit-roof fixtures are arithmetic: lengths and classes
of cycles live on a joint sublattice of R x Z^b.  The asymptotic prediction
is therefore evaluated in two forms; the continuum instantiation (window
integral, no lattice factors) and the effective one, which replaces the
window integral by a lattice sum weighted with the covolume of the joint
cycle lattice.  The effective form is the one compared against observed
counts.
"""

import itertools
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .symbolic import (ConvergenceError, MarkovMeasure, OrbitalMeasure,
                       PeriodicOrbit, SuspensionSystem, Window,
                       check_edge_function, equilibrium_state, logsumexp,
                       max_word_length, pressure_root, simple_cycles,
                       stable_sum, suspension_average, _word_block)


def orbit_homology(orbit: PeriodicOrbit) -> np.ndarray:
    """Integer class of the orbit (sum of edge labels around the word)."""
    return np.asarray(orbit.homology, dtype=np.int64)


# ---------------------------------------------------------------------------
# homological fullness
# ---------------------------------------------------------------------------

@dataclass
class FullnessReport:
    full: bool
    inconclusive: bool = False
    witness: Optional[list] = None          # b+1 winding vectors around 0
    separating: Optional[np.ndarray] = None


def _min_norm_in_hull(vectors: np.ndarray, iters: int = 2000) -> np.ndarray:
    """Point of minimum norm in the convex hull (Frank-Wolfe on ||x||^2)."""
    x = vectors.mean(axis=0)
    for k in range(iters):
        i = int(np.argmin(vectors @ x))
        d = vectors[i] - x
        dd = float(d @ d)
        if dd == 0.0:
            break
        gamma = min(1.0, max(0.0, -float(x @ d) / dd))
        if gamma == 0.0:
            break
        x = x + gamma * d
    return x


def homologically_full_check(sys: SuspensionSystem,
                             horizon: Optional[int] = None,
                             tol: float = 1e-9) -> FullnessReport:
    """Is 0 interior to the convex hull of cycle winding vectors?

    Winding vectors ``h(c)/length(c)`` of vertex-simple cycles convexly
    generate those of all cycles, so the scan is decisive once the horizon
    covers the vertex count; a smaller user horizon that fails to produce a
    witness is reported as inconclusive rather than false.
    """
    if sys.betti == 0:
        return FullnessReport(full=True, witness=[])
    cycles = simple_cycles(sys.shift)
    capped = horizon is not None and horizon < sys.shift.n_vertices
    if horizon is not None:
        cycles = [c for c in cycles if len(c) <= horizon]
    vecs = []
    for c in cycles:
        idx = list(c)
        vecs.append(sys.labels[idx].sum(axis=0) / sys.roof[idx].sum())
    vecs = np.array(vecs, dtype=float)
    b = sys.betti

    if vecs.size and np.linalg.matrix_rank(vecs, tol=tol) == b:
        for combo in itertools.combinations(range(len(vecs)), b + 1):
            pts = vecs[list(combo)]
            mat = np.vstack([pts.T, np.ones(b + 1)])
            rhs = np.concatenate([np.zeros(b), [1.0]])
            try:
                bary = np.linalg.solve(mat, rhs)
            except np.linalg.LinAlgError:
                continue
            if np.all(bary > 1e-7):
                return FullnessReport(full=True,
                                      witness=[pts[i] for i in range(b + 1)])

    if capped:
        return FullnessReport(full=False, inconclusive=True)
    # separating functional: direction of the min-norm hull point, or a
    # normal to the span when the winding set is rank deficient
    if vecs.size and np.linalg.matrix_rank(vecs, tol=tol) < b:
        _, _, vt = np.linalg.svd(vecs)
        return FullnessReport(full=False, separating=vt[-1])
    p = _min_norm_in_hull(vecs)
    norm = float(np.linalg.norm(p))
    if norm > tol:
        return FullnessReport(full=False, separating=p / norm)
    return FullnessReport(full=False, inconclusive=True)


# ---------------------------------------------------------------------------
# the pressure function on cohomology
# ---------------------------------------------------------------------------

@dataclass
class CohomologyPressure:
    """Convex pressure function ``t -> P(potential + t . labels)`` with its
    minimizer, minimum and Hessian."""

    sys: SuspensionSystem
    potential: np.ndarray
    b: int
    xi: np.ndarray
    beta_min: float
    hessian: np.ndarray
    grad_norm: float
    newton_trace: list = field(repr=False, default_factory=list)

    def beta(self, t) -> float:
        t = np.atleast_1d(np.asarray(t, dtype=float))
        q = self.potential + self.sys.labels @ t
        return pressure_root(self.sys.shift, q, self.sys.roof)

    def gradient(self, t) -> np.ndarray:
        t = np.atleast_1d(np.asarray(t, dtype=float))
        mu, _ = _twisted_equilibrium(self.sys, self.potential, t)
        return _winding_of_flow_measure(self.sys, mu)

    def equilibrium_at_minimum(self) -> MarkovMeasure:
        mu, _ = _twisted_equilibrium(self.sys, self.potential, self.xi)
        return mu


def _twisted_equilibrium(sys, potential, t):
    q = potential + sys.labels @ np.asarray(t, dtype=float)
    p = pressure_root(sys.shift, q, sys.roof)
    return equilibrium_state(sys.shift, q - p * sys.roof), p


def _winding_of_flow_measure(sys, mu: MarkovMeasure) -> np.ndarray:
    roof_avg = mu.edge_average(sys.roof)
    return np.array([mu.edge_average(sys.labels[:, i]) for i in range(sys.betti)]) / roof_avg


@dataclass
class WindingCycleReport:
    """Label averages of a measure, the homology direction it drifts in."""

    phi: np.ndarray
    kind: str

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.phi))


def winding_cycle(sys: SuspensionSystem, measure) -> WindingCycleReport:
    """Winding cycle of a flow equilibrium state or an orbital measure."""
    if isinstance(measure, MarkovMeasure):
        return WindingCycleReport(phi=_winding_of_flow_measure(sys, measure),
                                  kind="equilibrium")
    if isinstance(measure, OrbitalMeasure):
        terms = np.array([w * np.asarray(o.homology, dtype=float) / o.length
                          for o, w in zip(measure.orbits, measure.weights)])
        phi = (terms.sum(axis=0) if terms.size
               else np.zeros(sys.betti))
        return WindingCycleReport(phi=phi, kind="orbital")
    raise TypeError(f"no winding cycle for {type(measure)!r}")


def build_cohomology_pressure(sys: SuspensionSystem, potential=None,
                              grad_tol: float = 1e-9, fd_step: float = 1e-4,
                              max_iter: int = 100) -> CohomologyPressure:
    """Minimize the pressure function on cohomology by Newton iteration.

    The gradient is the winding cycle of the equilibrium state at ``t``
    (analytic identity); the Hessian comes from central finite differences
    of that gradient.  Requires a homologically full system.
    """
    if sys.betti == 0:
        raise ValueError("system carries no homology labels (betti = 0)")
    report = homologically_full_check(sys)
    if not report.full:
        raise ValueError("system is not homologically full; "
                         f"separating functional {report.separating}")
    q = sys.potential if potential is None else check_edge_function(sys.shift, potential)
    b = sys.betti

    def grad(t):
        mu, _ = _twisted_equilibrium(sys, q, t)
        return _winding_of_flow_measure(sys, mu)

    def beta(t):
        return pressure_root(sys.shift, q + sys.labels @ t, sys.roof)

    def hessian(t):
        h = np.empty((b, b))
        for i in range(b):
            step = np.zeros(b)
            step[i] = fd_step
            h[i] = (grad(t + step) - grad(t - step)) / (2 * fd_step)
        return 0.5 * (h + h.T)

    t = np.zeros(b)
    val = beta(t)
    trace = []
    for it in range(max_iter):
        g = grad(t)
        gnorm = float(np.linalg.norm(g))
        trace.append((t.copy(), val, gnorm))
        if gnorm < grad_tol:
            hess = hessian(t)
            return CohomologyPressure(sys=sys, potential=q, b=b, xi=t,
                                      beta_min=val, hessian=hess,
                                      grad_norm=gnorm, newton_trace=trace)
        hess = hessian(t)
        try:
            delta = np.linalg.solve(hess, g)
        except np.linalg.LinAlgError:
            delta = g
        # backtrack: beta is strictly convex, so the full step is usually fine
        scale = 1.0
        for _ in range(40):
            cand = t - scale * delta
            cand_val = beta(cand)
            if cand_val <= val + 1e-15:
                break
            scale *= 0.5
        t, val = t - scale * delta, cand_val
    raise ConvergenceError("Newton on the cohomology pressure did not converge",
                           trace=trace, residual=gnorm)


# ---------------------------------------------------------------------------
# counting in a homology class
# ---------------------------------------------------------------------------

def _window_blocks(sys: SuspensionSystem, potential, window: Window):
    """Arrays (lengths, weights, classes, words-by-block) inside the window."""
    q = sys.potential if potential is None else check_edge_function(sys.shift, potential)
    work = sys.with_potential(q)
    n_max = max_word_length(sys, window.hi)
    lengths, weights, homs, words = [], [], [], []
    for n in range(1, n_max + 1):
        wblock, lens, wts, hom = _word_block(work, n)
        keep = window.contains(lens)
        if np.any(keep):
            lengths.append(lens[keep])
            weights.append(wts[keep])
            homs.append(hom[keep])
            words.append(wblock[keep])
    if not lengths:
        b = sys.betti
        return (np.zeros(0), np.zeros(0), np.zeros((0, b), dtype=np.int64), [])
    return (np.concatenate(lengths), np.concatenate(weights),
            np.concatenate(homs), words)


def count_in_class(sys: SuspensionSystem, potential, alpha,
                   window: Window) -> float:
    """Exact weighted orbit count ``pi(T, alpha, window)``.

    Sum of ``exp(weight)`` over enumerated prime orbits whose class equals
    ``alpha`` and whose length lies in the window.
    """
    alpha = np.atleast_1d(np.asarray(alpha, dtype=np.int64))
    lengths, weights, homs, _ = _window_blocks(sys, potential, window)
    if lengths.size == 0:
        return 0.0
    mask = np.all(homs == alpha[None, :], axis=1)
    if not np.any(mask):
        return 0.0
    return float(np.exp(logsumexp(weights[mask])))


# --- joint (length, class) lattice of cycles -------------------------------

def _cycle_defect_vectors(sys: SuspensionSystem):
    """Integer generators of the joint cycle lattice, in units of
    ``(lattice_delta, 1)``; None when the length spectrum is non-lattice."""
    delta = sys.lattice_delta
    if delta == 0.0:
        return None
    shift = sys.shift
    height_l = np.full(shift.n_vertices, np.nan)
    height_h = np.zeros((shift.n_vertices, sys.betti), dtype=np.int64)
    height_l[0] = 0.0
    in_tree = np.zeros(shift.n_edges, dtype=bool)
    stack = [0]
    while stack:
        v = stack.pop()
        for e in shift.out_edges(v):
            w = int(shift.edge_dst[e])
            if np.isnan(height_l[w]):
                height_l[w] = height_l[v] + sys.roof[e]
                height_h[w] = height_h[v] + sys.labels[e]
                in_tree[e] = True
                stack.append(w)
    rows = []
    for e in range(shift.n_edges):
        if in_tree[e]:
            continue
        dl = height_l[shift.edge_src[e]] + sys.roof[e] - height_l[shift.edge_dst[e]]
        k = dl / delta
        if abs(k - round(k)) > 1e-6:
            raise ValueError("length defect incompatible with lattice step")
        dh = height_h[shift.edge_src[e]] + sys.labels[e] - height_h[shift.edge_dst[e]]
        rows.append([int(round(k))] + [int(x) for x in dh])
    return np.array(rows, dtype=np.int64)


def _hnf_rows(rows: np.ndarray):
    """Row-echelon basis over Z (Hermite-style) of the given integer rows."""
    work = [list(map(int, r)) for r in rows if any(r)]
    ncols = rows.shape[1]
    basis = []
    col = 0
    while col < ncols and work:
        pool = [r for r in work if r[col] != 0]
        if not pool:
            col += 1
            continue
        while len(pool) > 1:
            pool.sort(key=lambda r: abs(r[col]))
            piv = pool[0]
            for r in pool[1:]:
                k = r[col] // piv[col]
                for j in range(ncols):
                    r[j] -= k * piv[j]
            pool = [r for r in pool if r[col] != 0]
            work = [r for r in work if any(r)]
        piv = pool[0]
        if piv[col] < 0:
            piv[:] = [-x for x in piv]
        basis.append(list(piv))
        work = [r for r in work if r is not piv and any(r)]
        for r in work:
            if r[col] != 0:
                k = r[col] // piv[col]
                for j in range(ncols):
                    r[j] -= k * piv[j]
        work = [r for r in work if any(r)]
        col += 1
    return basis


def _lattice_membership(basis, vec) -> bool:
    v = list(map(int, vec))
    for row in basis:
        col = next(i for i, x in enumerate(row) if x != 0)
        if v[col] % row[col] != 0:
            return False
        k = v[col] // row[col]
        for j in range(len(v)):
            v[j] -= k * row[j]
    return all(x == 0 for x in v)


@dataclass
class ClassCountPrediction:
    """Asymptotic prediction for the weighted count in one class.

    ``continuum`` instantiates the window-integral asymptotic formula
    directly; ``predicted`` is the effective value used for comparison,
    equal to the continuum one on non-lattice systems and carrying the
    joint-lattice window sum and covolume otherwise.
    """

    alpha: tuple
    T: float
    window: Window
    predicted: float
    continuum: float
    observed: Optional[float] = None
    lattice: bool = False
    covolume: float = 1.0

    @property
    def ratio(self) -> Optional[float]:
        if self.observed is None or self.predicted == 0.0:
            return None
        return self.observed / self.predicted


def predict_in_class(cp: CohomologyPressure, alpha, window: Window,
                     T: float) -> ClassCountPrediction:
    """Evaluate the counting asymptotics for class ``alpha`` at time T."""
    sys = cp.sys
    alpha = np.atleast_1d(np.asarray(alpha, dtype=np.int64))
    b = cp.b
    beta = cp.beta_min
    det_h = float(np.linalg.det(cp.hessian))
    if det_h <= 0:
        raise ValueError("Hessian of the cohomology pressure is not positive")
    tilt = float(np.exp(-float(alpha @ cp.xi)))
    gauss = (2 * np.pi) ** (-b / 2.0) * det_h ** -0.5
    lo, hi = window.lo - T, window.hi - T
    if beta == 0.0:
        integral = hi - lo
    else:
        integral = (np.exp(beta * hi) - np.exp(beta * lo)) / beta
    continuum = gauss * integral * tilt * np.exp(beta * T) / T ** (1 + b / 2.0)

    defects = _cycle_defect_vectors(sys)
    if defects is None:
        return ClassCountPrediction(alpha=tuple(int(a) for a in alpha), T=T,
                                    window=window, predicted=continuum,
                                    continuum=continuum, lattice=False)
    basis = _hnf_rows(defects)
    if len(basis) != 1 + b:
        raise ValueError("joint cycle lattice is rank deficient; "
                         "classes are confined to a sublattice")
    delta = sys.lattice_delta
    covol_int = 1.0
    for row in basis:
        col = next(i for i, x in enumerate(row) if x != 0)
        covol_int *= abs(row[col])
    covol = covol_int * delta  # cell volume w.r.t. d(length) x counting(Z^b)

    k_lo = int(np.floor(window.lo / delta)) - 1
    k_hi = int(np.ceil(window.hi / delta)) + 1
    window_sum = 0.0
    for k in range(k_lo, k_hi + 1):
        x = k * delta
        if not window.contains(np.array([x]))[0]:
            continue
        if _lattice_membership(basis, [k] + [int(a) for a in alpha]):
            window_sum += float(np.exp(beta * (x - T)))
    predicted = gauss * tilt * covol * window_sum * np.exp(beta * T) / T ** (1 + b / 2.0)
    return ClassCountPrediction(alpha=tuple(int(a) for a in alpha), T=T,
                                window=window, predicted=predicted,
                                continuum=continuum, lattice=True,
                                covolume=covol)


def prediction_table(sys: SuspensionSystem, potential, alpha, T_grid,
                     window_offset=(-1.0, 0.0),
                     cp: Optional[CohomologyPressure] = None) -> list:
    """Observed-vs-predicted rows for CSV export (one per grid time)."""
    if cp is None:
        cp = build_cohomology_pressure(sys, potential)
    rows = []
    a, b = window_offset
    for T in T_grid:
        window = Window(T + a, T + b)
        pred = predict_in_class(cp, alpha, window, T)
        pred.observed = count_in_class(sys, potential, alpha, window)
        rows.append(pred)
    return rows


# ---------------------------------------------------------------------------
# equidistribution within a class and large deviations
# ---------------------------------------------------------------------------

@dataclass
class EquidistributionRow:
    T: float
    orbital: float
    reference: float
    abs_err: float
    n_orbits: int
    empty: bool


def _class_orbital_average(lengths, weights, values) -> float:
    """Weight-normalized mean of per-orbit values, stable accumulation."""
    log_norm = logsumexp(weights)
    terms = np.exp(weights - log_norm) * values
    return stable_sum(terms)


def equidistribute_in_class(sys: SuspensionSystem, potential, alpha, psi,
                            T_grid, window_offset=(-1.0, 0.0),
                            cp: Optional[CohomologyPressure] = None) -> list:
    """Weighted class-constrained orbital averages of ``psi`` against the
    equilibrium value at the cohomology-pressure minimizer."""
    psi = check_edge_function(sys.shift, psi)
    alpha = np.atleast_1d(np.asarray(alpha, dtype=np.int64))
    if sys.betti == 0:
        mu, _ = _twisted_equilibrium(sys, sys.potential if potential is None
                                     else potential, np.zeros(0))
        reference = suspension_average(mu, sys.roof, psi)
    else:
        if cp is None:
            cp = build_cohomology_pressure(sys, potential)
        reference = suspension_average(cp.equilibrium_at_minimum(), sys.roof, psi)
    q = sys.potential if potential is None else check_edge_function(sys.shift, potential)
    rows = []
    a, b = window_offset
    for T in T_grid:
        window = Window(T + a, T + b)
        lengths, weights, homs, words = _window_blocks(sys, q, window)
        mask = np.all(homs == alpha[None, :], axis=1) if lengths.size else \
            np.zeros(0, dtype=bool)
        if not np.any(mask):
            rows.append(EquidistributionRow(T=T, orbital=np.nan,
                                            reference=reference,
                                            abs_err=np.nan, n_orbits=0,
                                            empty=True))
            continue
        values = _per_orbit_averages(words, lengths, psi)[mask]
        orbital = _class_orbital_average(lengths[mask], weights[mask], values)
        rows.append(EquidistributionRow(T=T, orbital=orbital,
                                        reference=reference,
                                        abs_err=abs(orbital - reference),
                                        n_orbits=int(mask.sum()), empty=False))
    return rows


def _per_orbit_averages(word_blocks, lengths, psi) -> np.ndarray:
    sums = []
    for wblock in word_blocks:
        sums.append(psi[wblock].sum(axis=1))
    if not sums:
        return np.zeros(0)
    return np.concatenate(sums) / lengths


@dataclass
class LargeDeviationResult:
    T_grid: np.ndarray
    xi_mass: np.ndarray
    pi_mass: np.ndarray
    ratios: np.ndarray
    reference: float
    rate: Optional[float]
    exact_zero: bool


def large_deviation_ratio(sys: SuspensionSystem, potential, psi,
                          epsilon: float, T_grid, alpha=None,
                          window_offset=(-1.0, 0.0),
                          cp: Optional[CohomologyPressure] = None) -> LargeDeviationResult:
    """Mass ratio of orbits whose ``psi`` average strays by ``epsilon``.

    The deviating set plays the role of a compact set of measures away from
    the limit equilibrium state; the fitted slope of ``log(ratio)`` against
    T is the empirical decay rate (negative when deviations are
    exponentially rare).  With ``alpha=None`` the whole windowed family is
    used, otherwise only orbits in that class.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    psi = check_edge_function(sys.shift, psi)
    q = sys.potential if potential is None else check_edge_function(sys.shift, potential)
    if alpha is None:
        mu, _ = _twisted_equilibrium(sys, q, np.zeros(sys.betti))
        reference = suspension_average(mu, sys.roof, psi)
    else:
        if cp is None:
            cp = build_cohomology_pressure(sys, q)
        reference = suspension_average(cp.equilibrium_at_minimum(), sys.roof, psi)
        alpha = np.atleast_1d(np.asarray(alpha, dtype=np.int64))
    T_grid = np.asarray(T_grid, dtype=float)
    a, b = window_offset
    xi_mass = np.zeros(T_grid.size)
    pi_mass = np.zeros(T_grid.size)
    for k, T in enumerate(T_grid):
        window = Window(T + a, T + b)
        lengths, weights, homs, words = _window_blocks(sys, q, window)
        if lengths.size == 0:
            continue
        if alpha is not None:
            mask = np.all(homs == alpha[None, :], axis=1)
            lengths, weights = lengths[mask], weights[mask]
            words = [wb[m] for wb, m in _split_mask(words, mask, homs, alpha)]
        if lengths.size == 0:
            continue
        values = _per_orbit_averages(words, lengths, psi)
        pi_mass[k] = float(np.exp(logsumexp(weights)))
        deviating = np.abs(values - reference) >= epsilon
        if np.any(deviating):
            xi_mass[k] = float(np.exp(logsumexp(weights[deviating])))
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(pi_mass > 0, xi_mass / np.where(pi_mass > 0, pi_mass, 1.0), np.nan)
    good = (xi_mass > 0) & (pi_mass > 0)
    if np.count_nonzero(good) >= 2:
        rate = float(np.polyfit(T_grid[good], np.log(ratios[good]), 1)[0])
        exact_zero = False
    else:
        rate = None
        exact_zero = bool(np.all(xi_mass == 0))
    return LargeDeviationResult(T_grid=T_grid, xi_mass=xi_mass,
                                pi_mass=pi_mass, ratios=ratios,
                                reference=reference, rate=rate,
                                exact_zero=exact_zero)


def _split_mask(word_blocks, mask, homs, alpha):
    """Pair each word block with its slice of the global class mask."""
    out = []
    start = 0
    for wb in word_blocks:
        stop = start + wb.shape[0]
        out.append((wb, mask[start:stop]))
        start = stop
    return out
