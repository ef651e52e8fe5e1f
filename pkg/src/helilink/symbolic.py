"""Thermodynamic formalism on suspension flows over subshifts of finite type.

The dynamics is a directed graph (edge shift) with depth-1 locally constant
data: a strictly positive roof (time per edge crossing), a potential stored
as its integral over one crossing, and an integer homology label per edge.
Orbit-level quantities are plain sums of edge data around closed words.

Pressures come from the leading eigenvalue of the vertex-level weighted
transition operator; the flow pressure is the root ``s`` of
``P_shift(q - s * roof) = 0``, found by bracketed Newton iteration.
"""

from dataclasses import dataclass, field
from math import gcd
from typing import Optional, Sequence

import numpy as np

from ._kernels import enumerate_words_fixed_length


class ConvergenceError(RuntimeError):
    """An iterative solve did not reach its tolerance within budget."""

    def __init__(self, message, residual=None, bracket=None, trace=None):
        super().__init__(message)
        self.residual = residual
        self.bracket = bracket
        self.trace = trace


class EnumerationBudgetError(RuntimeError):
    """Orbit enumeration hit its cycle-count cap.

    ``frontier`` is the last fully enumerated word length and ``partial``
    the orbits collected up to it.
    """

    def __init__(self, message, frontier, partial):
        super().__init__(message)
        self.frontier = frontier
        self.partial = partial


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------

#: Edge functions are plain float arrays with one value per edge.
EdgeFunction = np.ndarray


class MarkovShift:
    """Edge shift of a finite directed graph.

    Construction validates that every vertex has an outgoing and an incoming
    edge and that the graph is strongly connected; the aperiodicity (mixing)
    flag is computed and stored.
    """

    def __init__(self, n_vertices: int, edges: Sequence[tuple]):
        if n_vertices < 1:
            raise ValueError("need at least one vertex")
        if not edges:
            raise ValueError("need at least one edge")
        self.n_vertices = int(n_vertices)
        self.edge_src = np.asarray([e[0] for e in edges], dtype=np.int64)
        self.edge_dst = np.asarray([e[1] for e in edges], dtype=np.int64)
        if self.edge_src.min() < 0 or self.edge_src.max() >= n_vertices \
                or self.edge_dst.min() < 0 or self.edge_dst.max() >= n_vertices:
            raise ValueError("edge endpoint out of range")
        self.n_edges = len(edges)

        out_lists = [[] for _ in range(n_vertices)]
        in_deg = np.zeros(n_vertices, dtype=int)
        for i in range(self.n_edges):
            out_lists[self.edge_src[i]].append(i)
            in_deg[self.edge_dst[i]] += 1
        if any(not lst for lst in out_lists) or np.any(in_deg == 0):
            raise ValueError("every vertex needs an outgoing and incoming edge")

        self.out_start = np.zeros(n_vertices + 1, dtype=np.int64)
        flat = []
        for v in range(n_vertices):
            flat.extend(sorted(out_lists[v]))
            self.out_start[v + 1] = len(flat)
        self.out_list = np.asarray(flat, dtype=np.int64)

        if not self._strongly_connected():
            raise ValueError("transition graph is not strongly connected")
        self.aperiodic = self._period() == 1
        self._word_cache: dict = {}

    def _reachable(self, reverse: bool) -> np.ndarray:
        src = self.edge_dst if reverse else self.edge_src
        dst = self.edge_src if reverse else self.edge_dst
        seen = np.zeros(self.n_vertices, dtype=bool)
        seen[0] = True
        stack = [0]
        while stack:
            v = stack.pop()
            for e in range(self.n_edges):
                if src[e] == v and not seen[dst[e]]:
                    seen[dst[e]] = True
                    stack.append(dst[e])
        return seen

    def _strongly_connected(self) -> bool:
        return bool(self._reachable(False).all() and self._reachable(True).all())

    def _period(self) -> int:
        # gcd of (dist[u] + 1 - dist[v]) over edges u -> v, dist via BFS
        dist = np.full(self.n_vertices, -1, dtype=int)
        dist[0] = 0
        queue = [0]
        while queue:
            v = queue.pop(0)
            for e in self.out_edges(v):
                w = self.edge_dst[e]
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue.append(w)
        g = 0
        for e in range(self.n_edges):
            g = gcd(g, abs(int(dist[self.edge_src[e]]) + 1 - int(dist[self.edge_dst[e]])))
        return g if g else 1

    def out_edges(self, v: int) -> np.ndarray:
        return self.out_list[self.out_start[v]:self.out_start[v + 1]]

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n_vertices, self.n_vertices), dtype=np.int64)
        np.add.at(a, (self.edge_src, self.edge_dst), 1)
        return a

    def words(self, n: int) -> np.ndarray:
        """Canonical prime closed words of length ``n`` (cached)."""
        if n not in self._word_cache:
            self._word_cache[n] = enumerate_words_fixed_length(
                n, self.edge_src, self.edge_dst, self.out_start, self.out_list)
        return self._word_cache[n]

    def __repr__(self):
        return (f"MarkovShift(vertices={self.n_vertices}, edges={self.n_edges}, "
                f"aperiodic={self.aperiodic})")


def check_edge_function(shift: MarkovShift, values, positive=False) -> np.ndarray:
    """Validate and coerce an edge function (one finite float per edge)."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.shape != (shift.n_edges,):
        raise ValueError(f"edge function needs shape ({shift.n_edges},), got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("edge function has non-finite entries")
    if positive and not np.all(arr > 0):
        raise ValueError("roof values must be strictly positive")
    return arr


class SuspensionSystem:
    """Suspension flow data: shift, roof, potential and homology labels.

    ``potential[e]`` is the integral of the flow potential over one crossing
    of edge ``e``; orbit integrals are plain sums around the word.  The
    lattice check (whether all cycle lengths lie in a discrete subgroup
    ``delta * Z``) is run at construction and stored in ``lattice_delta``
    (0.0 means no lattice, i.e. weak mixing at fixture level).
    """

    def __init__(self, shift: MarkovShift, roof, potential=None, labels=None,
                 name: str = ""):
        self.shift = shift
        self.roof = check_edge_function(shift, roof, positive=True)
        if potential is None:
            potential = np.zeros(shift.n_edges)
        self.potential = check_edge_function(shift, potential)
        if labels is None:
            labels = np.zeros((shift.n_edges, 0), dtype=np.int64)
        labels = np.asarray(labels, dtype=np.int64)
        if labels.ndim == 1:
            labels = labels[:, None]
        if labels.shape[0] != shift.n_edges:
            raise ValueError("labels need one integer vector per edge")
        self.labels = labels
        self.betti = labels.shape[1]
        self.name = name
        self.lattice_delta = lattice_delta(shift, self.roof)

    def with_potential(self, potential) -> "SuspensionSystem":
        out = SuspensionSystem.__new__(SuspensionSystem)
        out.shift = self.shift
        out.roof = self.roof
        out.potential = check_edge_function(self.shift, potential)
        out.labels = self.labels
        out.betti = self.betti
        out.name = self.name
        out.lattice_delta = self.lattice_delta
        return out

    def constant_potential(self, c: float) -> np.ndarray:
        """Edge integrals of the constant flow potential ``c``."""
        return c * self.roof

    def edge_indicator(self, e: int) -> np.ndarray:
        """Point-mass edge observable: one unit per crossing of edge ``e``."""
        out = np.zeros(self.shift.n_edges)
        out[e] = 1.0
        return out

    def __repr__(self):
        return (f"SuspensionSystem({self.name or 'unnamed'}, b={self.betti}, "
                f"lattice_delta={self.lattice_delta:g})")


def lattice_delta(shift: MarkovShift, roof: np.ndarray, tol: float = 1e-9) -> float:
    """Generator of the cycle-length group if discrete, else 0.0.

    Spanning-tree vertex heights reduce every cycle length to an integer
    combination of per-edge defects; a tolerant real gcd of the defects
    generates the group.
    """
    height = np.full(shift.n_vertices, np.nan)
    height[0] = 0.0
    in_tree = np.zeros(shift.n_edges, dtype=bool)
    stack = [0]
    while stack:
        v = stack.pop()
        for e in shift.out_edges(v):
            w = shift.edge_dst[e]
            if np.isnan(height[w]):
                height[w] = height[v] + roof[e]
                in_tree[e] = True
                stack.append(int(w))
    defects = [abs(height[shift.edge_src[e]] + roof[e] - height[shift.edge_dst[e]])
               for e in range(shift.n_edges) if not in_tree[e]]
    scale = max(defects) if defects else 0.0
    if scale <= tol:
        return 0.0
    g = 0.0
    for d in defects:
        a, b = max(g, d), min(g, d)
        while b > tol * scale:
            a, b = b, a % b
        g = a
    # a generator absurdly small next to the defects means the Euclid loop
    # was still descending: irrational ratios, no lattice
    return g if g > 1e-6 * scale else 0.0


@dataclass(frozen=True, order=True)
class PeriodicOrbit:
    """Prime periodic orbit in canonical form.

    ``word`` is the lexicographically minimal rotation of the cyclic edge
    word; ``length`` sums the roof, ``weight`` the potential and
    ``homology`` the labels around it.
    """

    length: float
    word: tuple
    weight: float = field(compare=False)
    homology: tuple = field(compare=False)

    @property
    def n(self) -> int:
        return len(self.word)

    def word_str(self) -> str:
        if max(self.word, default=0) < 10:
            return "".join(str(e) for e in self.word)
        return "-".join(str(e) for e in self.word)


@dataclass
class Window:
    """Length window, by default the half-open interval ``(lo, hi]``."""

    lo: float
    hi: float
    closed_lo: bool = False
    closed_hi: bool = True

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"window not well ordered: ({self.lo}, {self.hi})")

    def contains(self, x: np.ndarray) -> np.ndarray:
        lo_ok = x >= self.lo if self.closed_lo else x > self.lo
        hi_ok = x <= self.hi if self.closed_hi else x < self.hi
        return lo_ok & hi_ok

    @staticmethod
    def around(T: float, a: float = -1.0, b: float = 0.0) -> "Window":
        return Window(T + a, T + b)


@dataclass
class MarkovMeasure:
    """Gibbs/equilibrium state of a depth-1 potential on the edge shift.

    ``p_edge[e]`` is the probability of crossing edge ``e`` from its source
    vertex; ``stationary_edges`` is the invariant edge distribution.
    """

    shift: MarkovShift
    q: np.ndarray
    pressure: float
    right_vertex: np.ndarray
    left_vertex: np.ndarray
    stationary_vertices: np.ndarray
    p_edge: np.ndarray
    stationary_edges: np.ndarray
    entropy: float

    def edge_average(self, values) -> float:
        return float(self.stationary_edges @ np.asarray(values, dtype=float))

    def cylinder_measure(self, word) -> float:
        """Exact measure of the cylinder of edge words starting with ``word``."""
        w = list(word)
        for a, b in zip(w[:-1], w[1:]):
            if self.shift.edge_dst[a] != self.shift.edge_src[b]:
                raise ValueError("word is not a path in the shift graph")
        p = self.stationary_vertices[self.shift.edge_src[w[0]]]
        for e in w:
            p *= self.p_edge[e]
        return float(p)


@dataclass
class OrbitalMeasure:
    """Convex combination of per-orbit time averages."""

    orbits: list
    weights: np.ndarray
    normalized: bool = True

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=float)
        if np.any(self.weights < 0):
            raise ValueError("orbital weights must be nonnegative")
        if self.normalized and self.weights.size:
            s = self.weights.sum()
            if not np.isclose(s, 1.0, atol=1e-9):
                raise ValueError("normalized orbital measure needs unit mass")

    def integrate_edge_function(self, values) -> float:
        values = np.asarray(values, dtype=float)
        terms = np.array([w * sum(values[e] for e in o.word) / o.length
                          for o, w in zip(self.orbits, self.weights)])
        return stable_sum(terms)


def stable_sum(terms: np.ndarray) -> float:
    """Sum in ascending magnitude order (deterministic, documented)."""
    terms = np.asarray(terms, dtype=float)
    if terms.size == 0:
        return 0.0
    order = np.argsort(np.abs(terms), kind="stable")
    return float(np.sum(terms[order]))


def logsumexp(values: np.ndarray) -> float:
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        return -np.inf
    m = float(np.max(values))
    if not np.isfinite(m):
        return m
    return m + float(np.log(np.sum(np.exp(values - m))))


# ---------------------------------------------------------------------------
# pressure and equilibrium states
# ---------------------------------------------------------------------------

_EIG_TOL = 1e-13
_EIG_MAX_ITER = 50000


def _transfer_matrix(shift: MarkovShift, q: np.ndarray):
    """Vertex-level weighted transition matrix, max-shifted for stability."""
    m = float(np.max(q))
    mat = np.zeros((shift.n_vertices, shift.n_vertices))
    np.add.at(mat, (shift.edge_src, shift.edge_dst), np.exp(q - m))
    return mat, m


def _leading_pair(mat: np.ndarray, tol=_EIG_TOL):
    """Leading eigenvalue and positive right eigenvector by power iteration.

    The matrix is nonnegative and irreducible; iterating on ``mat + I``
    removes any periodicity.  Successive Rayleigh-quotient estimates must
    agree to ``tol``.
    """
    n = mat.shape[0]
    if n == 1:
        return float(mat[0, 0]), np.ones(1)
    shifted = mat + np.eye(n)
    v = np.full(n, 1.0 / np.sqrt(n))
    for _ in range(_EIG_MAX_ITER):
        w = shifted @ v
        v = w / np.linalg.norm(w)
        w = shifted @ v
        lam = float(v @ w)
        residual = float(np.max(np.abs(w - lam * v)))
        if residual < tol * max(1.0, abs(lam)):
            return lam - 1.0, v / v.sum()
    raise ConvergenceError("power iteration did not converge",
                           residual=residual)


def shift_pressure(shift: MarkovShift, q) -> float:
    """Topological pressure of the depth-1 potential ``q`` on the edge shift.

    Log of the spectral radius of the ``e^q``-weighted transition operator;
    equals ``sup_nu (entropy + int q dnu)`` over shift-invariant measures.
    """
    q = check_edge_function(shift, q)
    mat, m = _transfer_matrix(shift, q)
    lam, _ = _leading_pair(mat)
    return m + float(np.log(lam))


def equilibrium_state(shift: MarkovShift, q) -> MarkovMeasure:
    """Gibbs/equilibrium Markov measure of the depth-1 potential ``q``."""
    q = check_edge_function(shift, q)
    mat, m = _transfer_matrix(shift, q)
    lam, right = _leading_pair(mat)
    lam_l, left = _leading_pair(mat.T)
    p_edge = (np.exp(q - m) * right[shift.edge_dst]
              / (lam * right[shift.edge_src]))
    pi_v = left * right
    pi_v = pi_v / pi_v.sum()
    pi_e = pi_v[shift.edge_src] * p_edge
    with np.errstate(divide="ignore", invalid="ignore"):
        logs = np.where(p_edge > 0, np.log(np.where(p_edge > 0, p_edge, 1.0)), 0.0)
    entropy = -float(np.sum(pi_e * logs))
    return MarkovMeasure(shift=shift, q=q, pressure=m + float(np.log(lam)),
                         right_vertex=right, left_vertex=left,
                         stationary_vertices=pi_v, p_edge=p_edge,
                         stationary_edges=pi_e, entropy=entropy)


def pressure_root(shift: MarkovShift, q, roof, tol: float = 1e-12) -> float:
    """Unique ``s`` with ``shift_pressure(q - s * roof) = 0``.

    The map is strictly decreasing in ``s`` with slope in
    ``[-max(roof), -min(roof)]``, giving a closed-form bracket; a bracketed
    Newton iteration (slope from the equilibrium roof average) finishes.
    """
    q = check_edge_function(shift, q)
    roof = check_edge_function(shift, roof, positive=True)
    rmin, rmax = float(np.min(roof)), float(np.max(roof))
    p0 = shift_pressure(shift, q)
    pad = 1e-6 + abs(p0)
    if p0 >= 0:
        lo, hi = p0 / rmax - pad, p0 / rmin + pad
    else:
        lo, hi = p0 / rmin - pad, p0 / rmax + pad

    def f(s):
        return shift_pressure(shift, q - s * roof)

    flo, fhi = f(lo), f(hi)
    if not (flo > 0 > fhi):
        raise ConvergenceError(
            f"pressure root not bracketed in [{lo:g}, {hi:g}]",
            bracket=(lo, hi), residual=(flo, fhi))
    s = 0.5 * (lo + hi)
    for _ in range(200):
        val = f(s)
        if abs(val) < tol:
            return s
        if val > 0:
            lo = s
        else:
            hi = s
        mu = equilibrium_state(shift, q - s * roof)
        slope = -mu.edge_average(roof)
        step = s - val / slope
        s = step if lo < step < hi else 0.5 * (lo + hi)
    raise ConvergenceError("pressure root iteration exhausted",
                           bracket=(lo, hi), residual=val)


def flow_pressure(sys: SuspensionSystem, scale: float = 1.0,
                  potential=None, tol: float = 1e-12) -> float:
    """Pressure of the suspension flow for ``scale *`` the system potential.

    An explicit ``potential`` (edge integrals) overrides the system one.
    """
    q = sys.potential if potential is None else check_edge_function(sys.shift, potential)
    return pressure_root(sys.shift, scale * q, sys.roof, tol=tol)


def flow_equilibrium(sys: SuspensionSystem, potential=None):
    """Symbolic Gibbs measure of the flow equilibrium state.

    Returns ``(measure, pressure)`` where ``measure`` is the equilibrium
    state of ``q - P * roof``; flow averages of edge observables are
    ``measure.edge_average(psi) / measure.edge_average(roof)``.
    """
    q = sys.potential if potential is None else check_edge_function(sys.shift, potential)
    p = pressure_root(sys.shift, q, sys.roof)
    mu = equilibrium_state(sys.shift, q - p * sys.roof)
    return mu, p


def suspension_average(measure: MarkovMeasure, roof, psi) -> float:
    """Time average of the per-crossing observable ``psi`` under the flow."""
    return measure.edge_average(psi) / measure.edge_average(roof)


# ---------------------------------------------------------------------------
# periodic orbit enumeration and statistics
# ---------------------------------------------------------------------------

DEFAULT_BUDGET = 5_000_000


def _word_block(sys: SuspensionSystem, n: int):
    """Vectorized per-orbit data for all canonical prime words of length n."""
    words = sys.shift.words(n)
    if words.shape[0] == 0:
        empty = np.zeros(0)
        return words, empty, empty, np.zeros((0, sys.betti), dtype=np.int64)
    lengths = sys.roof[words].sum(axis=1)
    weights = sys.potential[words].sum(axis=1)
    hom = sys.labels[words].sum(axis=1)
    return words, lengths, weights, hom


def max_word_length(sys: SuspensionSystem, max_length: float) -> int:
    return int(np.floor(max_length / float(np.min(sys.roof)) + 1e-9))


def enumerate_orbits(sys: SuspensionSystem, max_length: float,
                     window: Optional[Window] = None,
                     budget: int = DEFAULT_BUDGET) -> list:
    """Prime periodic orbits with length in ``window`` (default: up to
    ``max_length``), canonical, deduplicated, sorted by (length, word).

    Raises :class:`EnumerationBudgetError` when the cumulative canonical
    cycle count passes ``budget``; the error carries the completed
    word-length frontier and the partial result.
    """
    n_max = max_word_length(sys, max_length)
    out = []
    total = 0
    for n in range(1, n_max + 1):
        words, lengths, weights, hom = _word_block(sys, n)
        total += words.shape[0]
        if total > budget:
            out.sort()
            raise EnumerationBudgetError(
                f"enumeration budget {budget} exceeded at word length {n}",
                frontier=n - 1, partial=out)
        keep = window.contains(lengths) if window is not None else lengths <= max_length
        for i in np.nonzero(keep)[0]:
            out.append(PeriodicOrbit(
                length=float(lengths[i]),
                word=tuple(int(x) for x in words[i]),
                weight=float(weights[i]),
                homology=tuple(int(x) for x in hom[i])))
    out.sort()
    return out


@dataclass
class OrbitStatistics:
    """Per-orbit averages of an observable plus the weighted window sum."""

    averages: np.ndarray
    pi: float
    log_pi: float
    measure: OrbitalMeasure


def orbit_statistics(orbits: list, psi=None) -> OrbitStatistics:
    """Per-orbit time averages of ``psi`` and the weighted sum ``pi``.

    ``pi`` accumulates ``exp(weight)`` over the orbits in log space; the
    orbital measure carries the normalized weights.
    """
    weights = np.array([o.weight for o in orbits], dtype=float)
    log_pi = logsumexp(weights)
    pi = float(np.exp(log_pi)) if np.isfinite(log_pi) else 0.0
    if psi is not None and orbits:
        psi = np.asarray(psi, dtype=float)
        averages = np.array([sum(psi[e] for e in o.word) / o.length for o in orbits])
    else:
        averages = np.zeros(len(orbits))
    if orbits:
        norm = np.exp(weights - log_pi)
    else:
        norm = weights
    measure = OrbitalMeasure(orbits=list(orbits), weights=norm,
                             normalized=bool(orbits))
    return OrbitStatistics(averages=averages, pi=pi, log_pi=log_pi,
                           measure=measure)


def growth_rate_estimate(sys: SuspensionSystem, potential=None,
                         T_grid=(), window_offset=(-1.0, 0.0),
                         budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """Finite-T growth exponents ``log(mass(T)) / T`` along ``T_grid``.

    ``mass(T)`` is the period-weighted window sum
    ``sum length(orbit) * exp(weight)`` over orbits with length in
    ``(T + a, T + b]``.  The period factor leaves the exponential growth
    rate unchanged and removes the ``log(T)/T`` lag of plain counts, so the
    estimates settle onto the flow pressure at desk-scale T.
    """
    T_grid = np.asarray(T_grid, dtype=float)
    if T_grid.size and np.any(np.diff(T_grid) <= 0):
        raise ValueError("T_grid must be increasing")
    q = sys.potential if potential is None else check_edge_function(sys.shift, potential)
    a, b = window_offset
    n_max = max_word_length(sys, float(T_grid.max()) + b if T_grid.size else 0.0)
    # gather per-length blocks once
    blocks = []
    total = 0
    work = sys.with_potential(q)
    for n in range(1, n_max + 1):
        _, lengths, weights, _ = _word_block(work, n)
        total += lengths.shape[0]
        if total > budget:
            raise EnumerationBudgetError(
                f"enumeration budget {budget} exceeded at word length {n}",
                frontier=n - 1, partial=None)
        blocks.append((lengths, weights))
    out = np.empty(T_grid.size)
    for k, T in enumerate(T_grid):
        win = Window(T + a, T + b)
        terms = []
        for lengths, weights in blocks:
            keep = win.contains(lengths)
            if np.any(keep):
                terms.append(weights[keep] + np.log(lengths[keep]))
        log_mass = logsumexp(np.concatenate(terms)) if terms else -np.inf
        out[k] = log_mass / T
    return out


# ---------------------------------------------------------------------------
# Gibbs cylinder bounds and negative-cohomology calibration
# ---------------------------------------------------------------------------

@dataclass
class GibbsBallReport:
    word_length: int
    n_cylinders: int
    max_ratio: float
    min_ratio: float
    fitted_constant: float


def _paths_of_length(shift: MarkovShift, L: int, cap: int, rng) -> list:
    """All edge paths of length L, or a seeded sample when too many."""
    total = int(np.sum(np.linalg.matrix_power(shift.adjacency(), L)))
    # exact enumeration when feasible
    if total <= cap:
        paths = []

        def extend(prefix, v):
            if len(prefix) == L:
                paths.append(tuple(prefix))
                return
            for e in shift.out_edges(v):
                prefix.append(int(e))
                extend(prefix, int(shift.edge_dst[e]))
                prefix.pop()

        for e in range(shift.n_edges):
            extend([int(e)], int(shift.edge_dst[e]))
        return [p for p in paths]
    paths = []
    for _ in range(cap):
        e = int(rng.integers(shift.n_edges))
        path = [e]
        for _ in range(L - 1):
            outs = shift.out_edges(shift.edge_dst[path[-1]])
            path.append(int(outs[rng.integers(len(outs))]))
        paths.append(tuple(path))
    return paths


def gibbs_ball_bound_check(shift: MarkovShift, q, word_length: int,
                           cap: int = 4096, seed: int = 0) -> GibbsBallReport:
    """Worst cylinder-measure to Gibbs-weight ratio at a fixed word length.

    In the symbolic model Bowen balls are cylinders; the report compares
    ``mu(cylinder)`` against ``exp(sum q - pressure * L)`` over all (or a
    seeded sample of) L-cylinders.  The max ratio plays the role of the
    Gibbs constant and must stay bounded as L grows.
    """
    q = check_edge_function(shift, q)
    mu = equilibrium_state(shift, q)
    rng = np.random.default_rng(seed)
    paths = _paths_of_length(shift, word_length, cap, rng)
    ratios = []
    for p in paths:
        qsum = float(np.sum(q[list(p)]))
        bound = np.exp(qsum - mu.pressure * word_length)
        ratios.append(mu.cylinder_measure(p) / bound)
    ratios = np.asarray(ratios)
    return GibbsBallReport(word_length=word_length, n_cylinders=len(paths),
                           max_ratio=float(ratios.max()),
                           min_ratio=float(ratios.min()),
                           fitted_constant=float(ratios.max()))


def simple_cycles(shift: MarkovShift) -> list:
    """All vertex-simple cycles as edge words (tiny graphs only)."""
    cycles = []
    n = shift.n_vertices

    def dfs(start, v, visited, path):
        for e in shift.out_edges(v):
            w = int(shift.edge_dst[e])
            if w == start:
                cycles.append(tuple(path + [int(e)]))
            elif w > start and w not in visited:
                dfs(start, w, visited | {w}, path + [int(e)])

    for s in range(n):
        dfs(s, s, {s}, [])
    return cycles


@dataclass
class NegativeCohomologyReport:
    epsilon: float
    transfer_bound: float
    pressure: float
    worst_cycle: tuple


def negative_cohomology_calibration(sys: SuspensionSystem,
                                    potential=None) -> NegativeCohomologyReport:
    """One-shot calibration of the normalized-potential decay rate.

    The maximum of ``(int_gamma phi - P * length) / length`` over all cycles
    is attained on a vertex-simple cycle (mediant inequality), so scanning
    those yields a global ``epsilon > 0`` with
    ``int_gamma phi - P * length <= -epsilon * length`` for every orbit.
    The reported transfer bound is the sup-norm of the log eigenvector
    (slack used by the orbit-level assertion).
    """
    q = sys.potential if potential is None else check_edge_function(sys.shift, potential)
    p = pressure_root(sys.shift, q, sys.roof)
    worst = None
    worst_mean = -np.inf
    for cyc in simple_cycles(sys.shift):
        idx = list(cyc)
        mean = (float(np.sum(q[idx])) - p * float(np.sum(sys.roof[idx]))) \
            / float(np.sum(sys.roof[idx]))
        if mean > worst_mean:
            worst_mean = mean
            worst = cyc
    mat, m = _transfer_matrix(sys.shift, q - p * sys.roof)
    _, right = _leading_pair(mat)
    vmax = float(np.max(np.abs(np.log(right))))
    return NegativeCohomologyReport(epsilon=-worst_mean, transfer_bound=vmax,
                                    pressure=p, worst_cycle=worst)


# ---------------------------------------------------------------------------
# block recoding
# ---------------------------------------------------------------------------

def block_recode(sys: SuspensionSystem, k: int = 2) -> SuspensionSystem:
    """Pass to the k-block edge shift.

    New edges are admissible k-paths; roof, potential and labels are
    inherited from the first edge of the block, so depth-k data on the
    original shift becomes depth-1 data here.  Pressures and orbit
    integrals are preserved.
    """
    if k < 2:
        return sys
    out = sys
    for _ in range(k - 1):
        out = _recode_once(out)
    return out


def _recode_once(sys: SuspensionSystem) -> SuspensionSystem:
    shift = sys.shift
    pairs = [(a, b) for a in range(shift.n_edges)
             for b in shift.out_edges(shift.edge_dst[a])]
    # new vertices = old edges, new edge (a, b) runs a -> b
    edges = [(a, int(b)) for a, b in pairs]
    new_shift = MarkovShift(shift.n_edges, edges)
    roof = np.array([sys.roof[a] for a, _ in pairs])
    pot = np.array([sys.potential[a] for a, _ in pairs])
    labels = np.array([sys.labels[a] for a, _ in pairs])
    return SuspensionSystem(new_shift, roof, pot, labels,
                            name=f"{sys.name}:2block" if sys.name else "2block")
