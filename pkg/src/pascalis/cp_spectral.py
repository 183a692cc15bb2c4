"""Completely positive decompositions, strong-CP span tests and PD certification.

Pascal tensors are realised as finite sums of symmetric outer powers through
Gauss-Laguerre moment matching: s! = sum_j w_j t_j^s is exact for s <= 2N-1,
so u_j = w_j^{1/m} (t_j^{i-1}/(i-1)!)_i reproduces every entry.  Generalized
Hilbert tensors use the shifted Gauss-Jacobi rule for the weight t^{c-1} on
[0, 1] in the same way.

The numeric probes at the bottom are corroboration only, never certificates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
import scipy.linalg
from scipy.special import roots_sh_jacobi

from .resultant import DEFAULT_MACAULAY_CAP, bareiss_det, macaulay_size, tensor_determinant
from .tensor_core import SymmetricTensor

DEFAULT_SEED = 0x5CA1AB1E
RANK_RTOL = 1e-10


class QuadratureError(ArithmeticError):
    pass


def _laguerre(n: int, t: float) -> tuple[float, float]:
    """L_n(t) and L_n'(t) by the three-term recurrence."""
    p0, p1 = 1.0, 1.0 - t
    if n == 0:
        return 1.0, 0.0
    for k in range(1, n):
        p0, p1 = p1, ((2 * k + 1 - t) * p1 - k * p0) / (k + 1)
    return p1, n * (p1 - p0) / t


def laguerre_nodes(N: int, max_iter: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Laguerre nodes and weights for the weight e^{-t} on (0, inf).

    Golub-Welsch eigenvalues seed a Newton polish on L_N; weights come from
    w = t / ((N+1) L_{N+1}(t))^2.
    """
    if N < 1:
        raise ValueError(f"need N >= 1, got {N}")
    diag = 2.0 * np.arange(N) + 1.0
    off = np.arange(1.0, N)
    guess = scipy.linalg.eigh_tridiagonal(diag, off, eigvals_only=True)
    nodes = np.empty(N)
    eps = np.finfo(float).eps
    for j, t in enumerate(guess):
        prev = np.inf
        for _ in range(max_iter):
            p, dp = _laguerre(N, t)
            step = p / dp
            t -= step
            if abs(step) <= 4 * eps * abs(t):
                break
            # rounding in p can leave Newton oscillating at the last few ulps
            if abs(step) >= abs(prev) and abs(step) <= 1e-12 * abs(t):
                break
            prev = step
        else:
            raise QuadratureError(f"Newton did not converge for Laguerre node {j} (N={N})")
        nodes[j] = t
    weights = np.array([t / ((N + 1) * _laguerre(N + 1, t)[0]) ** 2 for t in nodes])
    return nodes, weights


@dataclass
class CPDecomposition:
    order: int
    dim: int
    vectors: np.ndarray  # shape (r, n), row k is u^(k)
    nodes: np.ndarray = field(default_factory=lambda: np.empty(0))
    weights: np.ndarray = field(default_factory=lambda: np.empty(0))

    def __post_init__(self):
        self.vectors = np.atleast_2d(np.asarray(self.vectors, dtype=float))
        if self.vectors.shape[1] != self.dim or len(self.vectors) < 1:
            raise ValueError(f"vectors of shape {self.vectors.shape} do not fit dimension {self.dim}")
        if (self.vectors < 0).any():
            raise ValueError("CP generating vectors must be nonnegative")

    @property
    def rank(self) -> int:
        """Number of generating vectors r (not the CP rank)."""
        return len(self.vectors)

    def __add__(self, other: CPDecomposition) -> CPDecomposition:
        if (self.order, self.dim) != (other.order, other.dim):
            raise ValueError("cannot concatenate decompositions of different shape")
        return CPDecomposition(self.order, self.dim, np.vstack([self.vectors, other.vectors]))


def pascal_node_count(m: int, n: int) -> int:
    return -(-(m * (n - 1) + 1) // 2)


def cp_decompose_pascal(m: int, n: int) -> CPDecomposition:
    if m < 2 or n < 1:
        raise ValueError(f"need m >= 2, n >= 1 (got {m}, {n})")
    N = pascal_node_count(m, n)
    t, w = laguerre_nodes(N)
    powers = np.array([[tj**i / math.factorial(i) for i in range(n)] for tj in t])
    return CPDecomposition(m, n, w[:, None] ** (1.0 / m) * powers, t, w)


def cp_decompose_generalized_pascal(m: int, c: Sequence[float], nodes: int | None = None) -> CPDecomposition:
    """Laguerre realisation of a generalized Pascal tensor.

    Exact (to rounding) when every c_i is an integer; otherwise the moments
    t^s with fractional s are only approximated and the reconstruction error
    must be checked by the caller.
    """
    c = np.asarray(c, dtype=float)
    N = nodes or max(1, math.ceil((m * c.max() + 1) / 2))
    t, w = laguerre_nodes(N)
    gam = np.array([math.gamma(ci + 1) for ci in c])
    powers = t[:, None] ** c[None, :] / gam[None, :]
    return CPDecomposition(m, len(c), w[:, None] ** (1.0 / m) * powers, t, w)


def cp_decompose_hilbert(m: int, n: int, c=1) -> CPDecomposition:
    """1/(s + c) = int_0^1 t^s t^{c-1} dt, with s = sum(i_k - 1) <= m(n-1)."""
    c = float(Fraction(c))
    N = pascal_node_count(m, n)
    t, w = roots_sh_jacobi(N, c, c)
    powers = t[:, None] ** np.arange(n)[None, :]
    return CPDecomposition(m, n, w[:, None] ** (1.0 / m) * powers, t, w)


def reconstruct(cp: CPDecomposition) -> SymmetricTensor:
    u = cp.vectors

    def entry(idx):
        return float(np.prod(u[:, [i - 1 for i in idx]], axis=1).sum())

    return SymmetricTensor.from_function(cp.order, cp.dim, entry, "cp")


def reconstruction_error(cp: CPDecomposition, target: SymmetricTensor) -> float:
    """Largest relative entrywise error of the reconstruction against ``target``."""
    rec = reconstruct(cp)
    worst = 0.0
    for idx, v in target.items():
        ref = float(v)
        err = abs(rec.entries[idx] - ref)
        worst = max(worst, err / abs(ref) if ref else err)
    return worst


def slice_decomposition(cp: CPDecomposition, count: int = 2) -> CPDecomposition:
    """Generating vectors of the slice with the first ``count`` indices fixed to 1.

    Fixing indices turns u^{m} into u_1^count u^{m-count}, i.e. vectors
    v = u_1^{count/(m-count)} u.
    """
    k = cp.order - count
    if k < 1:
        raise ValueError(f"cannot fix {count} indices of an order-{cp.order} decomposition")
    u = cp.vectors
    return CPDecomposition(k, cp.dim, u[:, :1] ** (count / k) * u, cp.nodes, cp.weights)


def strong_cp_rank(cp: CPDecomposition, rtol: float = RANK_RTOL) -> tuple[int, bool]:
    """Numerical rank of the n x r generating matrix and whether it spans R^n."""
    _, r, _ = scipy.linalg.qr(cp.vectors.T, pivoting=True, mode="economic")
    d = np.abs(np.diag(r))
    if d.size == 0 or d[0] == 0:
        return 0, False
    rank = int((d >= rtol * d[0]).sum())
    return rank, rank == cp.dim


def matrix_pd_exact(M: Sequence[Sequence]) -> bool:
    """Sylvester criterion with exact leading principal minors."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("matrix must be square")
    if any(M[i][j] != M[j][i] for i in range(n) for j in range(i)):
        raise ValueError("matrix must be symmetric")
    return all(bareiss_det([list(row[:k]) for row in M[:k]]) > 0 for k in range(1, n + 1))


def leading_minors(M: Sequence[Sequence]) -> list:
    return [bareiss_det([list(row[:k]) for row in M[:k]]) for k in range(1, len(M) + 1)]


def tensor_as_matrix(t: SymmetricTensor) -> list[list]:
    if t.order != 2:
        raise ValueError("not a matrix")
    return [[t[(i, j)] for j in range(1, t.dim + 1)] for i in range(1, t.dim + 1)]


def _xm(arr: np.ndarray, X: np.ndarray, k: int) -> np.ndarray:
    """Contract the trailing k axes of ``arr`` with each row of X; batch first."""
    s, n = X.shape
    Xk = np.ones((s, 1))
    for _ in range(k):
        Xk = (Xk[:, :, None] * X[:, None, :]).reshape(s, -1)
    return Xk @ arr.reshape(-1, n**k).T


def min_sphere_search(
    t: SymmetricTensor,
    restarts: int = 16,
    steps: int = 2000,
    tol: float = 1e-14,
    seed: int = DEFAULT_SEED,
) -> tuple[float, np.ndarray]:
    """Best local minimum of A x^m on the unit sphere from random restarts.

    Riemannian gradient descent with Barzilai-Borwein steps and an Armijo
    backtrack; the result is a probe value, not a certificate.
    """
    m, n = t.order, t.dim
    arr = t.to_numpy()
    flat = arr.reshape(n, -1)
    rng = np.random.default_rng(seed)

    def value(x):
        return float(_xm(arr.reshape(-1), x[None, :], m)[0, 0])

    def grad(x):
        return m * _xm(flat, x[None, :], m - 1)[0]

    best_val, best_x = math.inf, None
    for _ in range(restarts):
        x = rng.standard_normal(n)
        x /= np.linalg.norm(x)
        fx = value(x)
        g = grad(x)
        g -= (g @ x) * x
        alpha = 1.0 / max(np.abs(arr).max() * m, 1.0)
        for _ in range(steps):
            if np.linalg.norm(g) < tol:
                break
            step = alpha
            while True:
                y = x - step * g
                y /= np.linalg.norm(y)
                fy = value(y)
                if fy <= fx - 1e-4 * step * (g @ g) or step < 1e-16:
                    break
                step /= 2
            gy = grad(y)
            gy -= (gy @ y) * y
            s, dg = y - x, gy - g
            denom = s @ dg
            alpha = abs((s @ s) / denom) if denom else step
            if abs(fx - fy) <= tol * max(1.0, abs(fx)) and np.linalg.norm(gy) < math.sqrt(tol):
                x, fx, g = y, fy, gy
                break
            x, fx, g = y, fy, gy
        if fx < best_val:
            best_val, best_x = fx, x.copy()
    return best_val, best_x


def odd_spsd_probe(
    t: SymmetricTensor, samples: int = 10_000, tol: float = 1e-12, seed: int = DEFAULT_SEED
) -> tuple[int, float]:
    """Count negative components of A x^{m-1} over random unit vectors.

    Returns (number of components below -tol * max|a|, smallest component seen).
    """
    if t.order % 2 == 0:
        raise ValueError("odd_spsd_probe is for odd order tensors")
    arr = t.to_numpy()
    n = t.dim
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((samples, n))
    X /= np.linalg.norm(X, axis=1, keepdims=True)
    G = _xm(arr.reshape(n, -1), X, t.order - 1)
    scale = np.abs(arr).max()
    return int((G < -tol * scale).sum()), float(G.min())


@dataclass
class PDVerdict:
    order: int
    dim: int
    family: str
    is_cp_constructed: bool = False
    det_nonzero: bool | None = None
    strong_cp: bool = False
    pd_concluded: bool | None = None
    cp_nodes: int = 0
    reconstruction_err: float | None = None
    rank: int = 0
    det_abs: int | Fraction | None = None
    probe_min: float | None = None
    notes: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        from .exact_arith import format_exact

        return {
            "order": self.order,
            "dim": self.dim,
            "family": self.family,
            "cp_nodes": self.cp_nodes,
            "reconstruction_err": {"probe": self.reconstruction_err},
            "rank": self.rank,
            "spans": self.strong_cp,
            "is_cp_constructed": self.is_cp_constructed,
            "det_nonzero": self.det_nonzero,
            "det_abs": None if self.det_abs is None else format_exact(self.det_abs),
            "pd_concluded": self.pd_concluded,
            "probe_min": {"probe": self.probe_min},
            "notes": list(self.notes),
        }


def pd_verdict(
    t: SymmetricTensor,
    cp: CPDecomposition | None = None,
    *,
    compute_det: bool = True,
    probe: bool = True,
    det_cap: int = DEFAULT_MACAULAY_CAP,
    cp_tol: float = 1e-8,
    seed: int = DEFAULT_SEED,
) -> PDVerdict:
    """Collect CP, determinant and span evidence; conclude PD for even order.

    Even order: PD follows from a verified CP decomposition together with a
    nonzero determinant or a spanning set of generating vectors.
    """
    m, n = t.order, t.dim
    v = PDVerdict(m, n, t.kind)
    if cp is None and t.kind == "pascal":
        cp = cp_decompose_pascal(m, n)
    if cp is not None:
        v.cp_nodes = cp.rank
        v.reconstruction_err = reconstruction_error(cp, t)
        v.is_cp_constructed = v.reconstruction_err <= cp_tol
        v.rank, v.strong_cp = strong_cp_rank(cp)
        if not v.is_cp_constructed:
            v.strong_cp = False
            v.notes.append(f"reconstruction error {v.reconstruction_err:.3g} exceeds {cp_tol:g}")
    else:
        v.notes.append("no finite CP decomposition constructed for this family")
    if compute_det and t.exact and n >= 2:
        if n == 2 or macaulay_size(m, n) <= det_cap:
            v.det_abs = tensor_determinant(t, cap=det_cap).absolute
            v.det_nonzero = v.det_abs != 0
        else:
            v.notes.append("determinant skipped: Macaulay matrix exceeds guard")
    if m % 2 == 0:
        if v.is_cp_constructed:
            v.pd_concluded = bool(v.det_nonzero) or v.strong_cp
        else:
            v.notes.append("PD left open: no verified CP decomposition")
        if probe:
            v.probe_min = min_sphere_search(t, seed=seed)[0]
    else:
        v.notes.append("odd order: PD not defined; evidence only")
        if probe:
            v.probe_min = odd_spsd_probe(t, seed=seed)[1]
    return v
