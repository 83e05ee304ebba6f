"""Finite-dimensional Hilbert modules over M_n(C) and the functional T.

A module is ``E = p (M_n)^k``: the ``kn x n`` complex matrices ``xi`` with
``p xi = xi``, for a projection ``p`` in ``M_k(M_n)``. It is a right module
under matrix multiplication with inner product ``<xi, eta> = xi^* eta``.
A frame is a finite family with ``eta = sum_i xi_i <xi_i, eta>`` on E, and

    T(E) = sum_i tr(<xi_i, xi_i>),     tr = Tr / n.

A bimodule additionally carries a left action ``a -> V (I_m (x) a) V^*``
for an isometry ``V`` with ``V V^* = p``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from .errors import AlgebraMismatch, InvalidRank, NotABimodule, NotAProjection

__all__ = [
    "ToyAlgebra",
    "ToyModule",
    "Frame",
    "PROJECTION_TOL",
    "haar_unitary",
    "random_projection",
    "random_bimodule",
    "identity_module",
    "frame_of",
    "inner",
    "gram_projection",
    "t_value",
    "tau_tr",
    "reconstruction_error",
    "resample_frame",
    "module_unitary",
    "transform_frame",
    "tensor_modules",
    "SweepRow",
    "SweepResult",
    "sweep",
    "random_sweep",
]

PROJECTION_TOL = 1e-10


@dataclass(frozen=True)
class ToyAlgebra:
    """M_n(C) with its unique normalized trace."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"matrix size must be >= 1, got {self.n}")

    def trace(self, a: np.ndarray) -> float:
        return float(np.trace(a).real) / self.n


def _blocks(X: np.ndarray, n: int) -> list[np.ndarray]:
    return [X[:, j * n:(j + 1) * n] for j in range(X.shape[1] // n)]


@dataclass(frozen=True, eq=False)
class ToyModule:
    algebra: ToyAlgebra
    k: int
    p: np.ndarray
    # isometry defining the left action, bimodules only
    left: np.ndarray | None = field(default=None)

    def __post_init__(self):
        N = self.k * self.algebra.n
        p = self.p
        if p.shape != (N, N):
            raise NotAProjection(f"expected a {N}x{N} matrix, got shape {p.shape}")
        herm = np.linalg.norm(p - p.conj().T)
        idem = np.linalg.norm(p @ p - p)
        if herm > PROJECTION_TOL or idem > PROJECTION_TOL:
            raise NotAProjection(f"not a projection: |p - p*| = {herm:.2e}, |p^2 - p| = {idem:.2e}")
        if self.left is not None:
            V = self.left
            n = self.algebra.n
            if V.shape[0] != N or V.shape[1] % n:
                raise NotABimodule(f"left isometry has shape {V.shape}")
            if np.linalg.norm(V @ V.conj().T - p) > 1e-9:
                raise NotABimodule("left action is not unital on the module")

    @property
    def n(self) -> int:
        return self.algebra.n

    @property
    def rank(self) -> int:
        return int(np.sum(np.linalg.eigvalsh(self.p) > 0.5))

    @property
    def multiplicity(self) -> int | None:
        return None if self.left is None else self.left.shape[1] // self.n

    def left_action(self, a: np.ndarray) -> np.ndarray:
        if self.left is None:
            raise NotABimodule("module has no left action")
        V = self.left
        return V @ np.kron(np.eye(self.multiplicity), a) @ V.conj().T


@dataclass(frozen=True, eq=False)
class Frame:
    module: ToyModule
    vectors: tuple[np.ndarray, ...]

    @property
    def stacked(self) -> np.ndarray:
        """The row of frame vectors, ``kn x rn``."""
        return np.hstack(self.vectors)

    def __len__(self):
        return len(self.vectors)

    def equals(self, other: "Frame") -> bool:
        return len(self) == len(other) and all(np.array_equal(a, b) for a, b in zip(self.vectors, other.vectors))


def haar_unitary(N: int, rng: np.random.Generator) -> np.ndarray:
    z = (rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def _symmetrize(p: np.ndarray) -> np.ndarray:
    return (p + p.conj().T) / 2


def random_projection(n: int, k: int, rank: int, seed=None) -> ToyModule:
    """The module q q^* (M_n)^k for a Haar-random isometry q of the given rank."""
    if not 1 <= rank <= k * n:
        raise InvalidRank(f"rank must be in 1..{k * n}, got {rank}")
    rng = _rng(seed)
    Q = haar_unitary(k * n, rng)[:, :rank]
    if rank == k * n:
        # the only full-rank projection; keep it exact
        return ToyModule(ToyAlgebra(n), k, np.eye(k * n, dtype=complex))
    return ToyModule(ToyAlgebra(n), k, _symmetrize(Q @ Q.conj().T))


def random_bimodule(n: int, k: int, multiplicity: int, seed=None) -> ToyModule:
    """A bimodule with left action ``a -> V (I_m (x) a) V^*``; T equals m."""
    if not 1 <= multiplicity <= k:
        raise InvalidRank(f"multiplicity must be in 1..{k}, got {multiplicity}")
    rng = _rng(seed)
    V = haar_unitary(k * n, rng)[:, : multiplicity * n]
    return ToyModule(ToyAlgebra(n), k, _symmetrize(V @ V.conj().T), V)


def identity_module(n: int) -> ToyModule:
    eye = np.eye(n, dtype=complex)
    return ToyModule(ToyAlgebra(n), 1, eye, eye)


def frame_of(M: ToyModule) -> Frame:
    """The k block columns of p; their Gram matrix is p itself."""
    return Frame(M, tuple(b.copy() for b in _blocks(M.p, M.n)))


def inner(xi: np.ndarray, eta: np.ndarray) -> np.ndarray:
    return xi.conj().T @ eta


def gram_projection(F: Frame) -> np.ndarray:
    X = F.stacked
    return X.conj().T @ X


def t_value(F: Frame) -> float:
    tr = F.module.algebra.trace
    return sum(tr(inner(xi, xi)) for xi in F.vectors)


def tau_tr(M: ToyModule) -> float:
    """(tau (x) Tr)(p)."""
    return float(np.trace(M.p).real) / M.n


def reconstruction_error(F: Frame) -> float:
    """Largest residual of ``eta = sum xi <xi, eta>`` over a spanning set of E."""
    M = F.module
    X = F.stacked
    worst = max(np.linalg.norm(M.p @ xi - xi) for xi in F.vectors)
    for eta in _blocks(M.p, M.n):
        worst = max(worst, np.linalg.norm(X @ (X.conj().T @ eta) - eta))
    return float(worst)


def resample_frame(F: Frame, seed=None, extra: int | None = None) -> Frame:
    """Another frame of the same module, ``r + extra`` vectors long.

    The new row is ``X W`` for a random co-isometry ``W`` with entries in
    M_n, so the reconstruction identity is preserved. Equal seeds give equal
    frames.
    """
    rng = _rng(seed)
    n, r = F.module.n, len(F)
    if extra is None:
        extra = int(rng.integers(0, 3))
    W = haar_unitary((r + extra) * n, rng)[: r * n, :]
    Y = F.stacked @ W
    return Frame(F.module, tuple(_blocks(Y, n)))


def module_unitary(M: ToyModule, seed=None) -> np.ndarray:
    """A random unitary of the corner p M_k(M_n) p (a module automorphism)."""
    rng = _rng(seed)
    w, v = np.linalg.eigh(M.p)
    Q = v[:, w > 0.5]
    S = haar_unitary(Q.shape[1], rng)
    return Q @ S @ Q.conj().T


def transform_frame(F: Frame, u: np.ndarray) -> Frame:
    return Frame(F.module, tuple(u @ xi for xi in F.vectors))


def _phi_blockwise(M: ToyModule, X: np.ndarray) -> np.ndarray:
    """Apply the left action of M to every n x n block of X."""
    n = M.n
    rows, cols = X.shape[0] // n, X.shape[1] // n
    return np.block([[M.left_action(X[i * n:(i + 1) * n, j * n:(j + 1) * n]) for j in range(cols)] for i in range(rows)])


def tensor_modules(F1: Frame, F2: Frame) -> Frame:
    """Frame ``{xi_i (x) eta_j}`` of the interior tensor product E1 (x)_A E2.

    Realized as ``phi(xi_i) eta_j`` with phi the left action of E2 applied
    blockwise, so ``<xi (x) eta, xi' (x) eta'> = <eta, phi(<xi, xi'>) eta'>``.
    """
    M1, M2 = F1.module, F2.module
    if M1.n != M2.n:
        raise AlgebraMismatch(f"modules over M_{M1.n} and M_{M2.n}")
    if M2.left is None:
        raise NotABimodule("the right-hand factor must be a bimodule")
    vectors = tuple(_phi_blockwise(M2, xi) @ eta for xi in F1.vectors for eta in F2.vectors)
    Y = np.hstack(vectors)
    p = _symmetrize(Y @ Y.conj().T)
    left = None
    if M1.left is not None:
        m1 = M1.multiplicity
        left = _phi_blockwise(M2, M1.left) @ np.kron(np.eye(m1), M2.left)
    return Frame(ToyModule(ToyAlgebra(M1.n), M1.k * M2.k, p, left), vectors)


# ---------------------------------------------------------------------------
# sweeps


@dataclass(frozen=True)
class SweepRow:
    module_id: int
    n: int
    k: int
    rank: int
    T: float
    resample_spread: float
    rank_deviation: float
    mult_deviation: float
    gram_idempotence: float
    reconstruction: float


@dataclass(frozen=True)
class SweepResult:
    rows: tuple[SweepRow, ...]

    @property
    def max_spread(self) -> float:
        return max(r.resample_spread for r in self.rows)

    @property
    def max_rank_deviation(self) -> float:
        return max(r.rank_deviation for r in self.rows)

    @property
    def max_mult_deviation(self) -> float:
        return max(r.mult_deviation for r in self.rows)

    @property
    def max_gram_idempotence(self) -> float:
        return max(r.gram_idempotence for r in self.rows)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["module_id", "n", "k", "rank", "T", "resample_spread", "mult_deviation"])
        for r in self.rows:
            w.writerow([r.module_id, r.n, r.k, r.rank, repr(r.T), f"{r.resample_spread:.3e}", f"{r.mult_deviation:.3e}"])
        return buf.getvalue()


def _trial(module_id: int, n: int, k: int, rank: int, rng: np.random.Generator, resamples: int) -> SweepRow:
    M = random_projection(n, k, rank, rng)
    F = frame_of(M)
    T = t_value(F)
    spread = 0.0
    G = F
    for _ in range(resamples):
        G = resample_frame(G, rng)
        spread = max(spread, abs(t_value(G) - T))
    spread = max(spread, abs(t_value(transform_frame(F, module_unitary(M, rng))) - T))
    m = int(rng.integers(1, 3))
    B = frame_of(random_bimodule(n, m + int(rng.integers(0, 2)), m, rng))
    mult = abs(t_value(tensor_modules(F, B)) - T * t_value(B))
    gram = gram_projection(G)
    return SweepRow(
        module_id,
        n,
        k,
        M.rank,
        T,
        spread,
        abs(T - M.rank / n),
        mult,
        float(np.linalg.norm(gram @ gram - gram)),
        reconstruction_error(G),
    )


def sweep(n: int, k: int, rank: int, trials: int, seed=0, resamples: int = 5) -> SweepResult:
    """Fixed-shape sweep: `trials` random modules of the given rank."""
    if not 1 <= rank <= k * n:
        raise InvalidRank(f"rank must be in 1..{k * n}, got {rank}")
    rng = np.random.default_rng(seed)
    return SweepResult(tuple(_trial(i, n, k, rank, rng, resamples) for i in range(trials)))


def random_sweep(modules: int = 50, seed=0, n_max: int = 4, k_max: int = 4, resamples: int = 5) -> SweepResult:
    """Sweep over random shapes ``n <= n_max``, ``k <= k_max`` and ranks."""
    rng = np.random.default_rng(seed)
    rows = []
    for i in range(modules):
        n = int(rng.integers(1, n_max + 1))
        k = int(rng.integers(1, k_max + 1))
        rank = int(rng.integers(1, k * n + 1))
        rows.append(_trial(i, n, k, rank, rng, resamples))
    return SweepResult(tuple(rows))
