"""Numerical strata of commuting unitary tuples.

A commuting tuple ``(U_1, ..., U_n)`` in ``U(m)`` is simultaneously
diagonalized; each joint eigenvector gives a row of eigenvalues, and the row's
binary sequence marks which coordinates differ from 1.  Counting rows per
sequence gives the stratum label.  All randomness is drawn from an explicit
seed.
"""
from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ClassificationError, DegeneracyError, DimensionError, SingularityError
from .poset import BinarySequence, IndexedPartition, pattern_matrix, partition_from_rows


@dataclass(frozen=True)
class Tolerances:
    unitary: float = 1e-8
    commute: float = 1e-8
    skew: float = 1e-8
    one: float = 1e-6
    margin: float = 0.1
    retries: int = 8

    def __post_init__(self):
        for name in ("unitary", "commute", "skew", "one", "margin"):
            if not getattr(self, name) > 0:
                raise ValueError(f"tolerance {name} must be strictly positive")
        if self.one <= 1e-14:
            raise ValueError("the eigenvalue-one tolerance must exceed the residual floor")

    def to_json(self) -> dict:
        return {
            "unitary": self.unitary, "commute": self.commute, "skew": self.skew,
            "one": self.one, "margin": self.margin, "retries": self.retries,
        }


DEFAULT_TOL = Tolerances()


def _max_abs(x: np.ndarray) -> float:
    return float(np.max(np.abs(x))) if x.size else 0.0


def commutator_residual(mats: np.ndarray) -> float:
    worst = 0.0
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            worst = max(worst, _max_abs(mats[i] @ mats[j] - mats[j] @ mats[i]))
    return worst


class _MatrixTuple:
    def __init__(self, matrices):
        mats = np.asarray(matrices, dtype=complex)
        if mats.ndim == 2:
            mats = mats[None]
        if mats.ndim != 3 or mats.shape[1] != mats.shape[2]:
            raise DimensionError(f"expected an (n, m, m) stack, got shape {mats.shape}")
        self.matrices = mats

    @property
    def n(self) -> int:
        return self.matrices.shape[0]

    @property
    def m(self) -> int:
        return self.matrices.shape[1]

    def __len__(self):
        return self.n

    def __getitem__(self, i):
        return self.matrices[i]

    def commutator_residual(self) -> float:
        return commutator_residual(self.matrices)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "matrices": [
                [[[float(z.real), float(z.imag)] for z in row] for row in mat] for mat in self.matrices
            ],
        }

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            obj = json.loads(obj)
        raw = np.asarray(obj["matrices"], dtype=float)
        if raw.ndim != 4 or raw.shape[-1] != 2:
            raise DimensionError("matrices must be nested as [n][m][m][re, im]")
        mats = raw[..., 0] + 1j * raw[..., 1]
        t = cls(mats)
        if (t.n, t.m) != (int(obj["n"]), int(obj["m"])):
            raise DimensionError(f"declared (n, m)=({obj['n']}, {obj['m']}) but got {(t.n, t.m)}")
        return t


class UnitaryTuple(_MatrixTuple):
    """``n`` commuting ``m x m`` unitary matrices."""

    def unitary_residual(self) -> float:
        eye = np.eye(self.m)
        return max((_max_abs(u.conj().T @ u - eye) for u in self.matrices), default=0.0)

    def validate(self, tol: Tolerances = DEFAULT_TOL) -> None:
        r = self.unitary_residual()
        if r > tol.unitary:
            raise ClassificationError(f"matrices are not unitary (residual {r:.3g})")
        c = self.commutator_residual()
        if c > tol.commute:
            raise ClassificationError(f"matrices do not commute (residual {c:.3g})")

    def conjugate(self, g: np.ndarray) -> "UnitaryTuple":
        """``g U_i g^-1`` for unitary ``g``."""
        return UnitaryTuple(g @ self.matrices @ g.conj().T)


class SkewHermitianTuple(_MatrixTuple):
    def skew_residual(self) -> float:
        return max((_max_abs(x.conj().T + x) for x in self.matrices), default=0.0)

    def validate(self, tol: Tolerances = DEFAULT_TOL) -> None:
        r = self.skew_residual()
        if r > tol.skew:
            raise ValueError(f"matrices are not skew-Hermitian (residual {r:.3g})")
        c = self.commutator_residual()
        if c > tol.commute:
            raise ValueError(f"matrices do not commute (residual {c:.3g})")


# -- generation -------------------------------------------------------------


def haar_unitary(m: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary: QR of a complex Gaussian with phases of R fixed."""
    z = (rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def _sample_phases(size, margin: float, rng: np.random.Generator) -> np.ndarray:
    """Uniform points of the circle with ``|z - 1| >= margin``."""
    theta0 = 2 * np.arcsin(min(margin, 2.0) / 2)
    theta = rng.uniform(theta0, 2 * np.pi - theta0, size=size)
    return np.exp(1j * theta)


def random_torus_rows(lam: IndexedPartition, rng: np.random.Generator, margin: float) -> np.ndarray:
    """``m x n`` eigenvalue matrix realising the pattern of ``lam``."""
    pattern = np.array(pattern_matrix(lam), dtype=bool).reshape(lam.m, lam.n)
    rows = np.ones(pattern.shape, dtype=complex)
    rows[pattern] = _sample_phases(int(pattern.sum()), margin, rng)
    return rows


def rows_to_tuple(rows: np.ndarray) -> UnitaryTuple:
    m, n = rows.shape
    mats = np.zeros((n, m, m), dtype=complex)
    idx = np.arange(m)
    for j in range(n):
        mats[j, idx, idx] = rows[:, j]
    return UnitaryTuple(mats)


def random_torus_tuple(lam: IndexedPartition, seed, tol: Tolerances = DEFAULT_TOL) -> UnitaryTuple:
    rng = np.random.default_rng(seed)
    return rows_to_tuple(random_torus_rows(lam, rng, tol.margin))


def random_commuting_tuple(lam: IndexedPartition, seed, tol: Tolerances = DEFAULT_TOL) -> UnitaryTuple:
    """Torus tuple in stratum ``lam`` conjugated by a Haar unitary."""
    rng = np.random.default_rng(seed)
    rows = random_torus_rows(lam, rng, tol.margin)
    return rows_to_tuple(rows).conjugate(haar_unitary(lam.m, rng))


# -- simultaneous diagonalization --------------------------------------------


def _gap_clusters(values: np.ndarray, gap: float) -> list[list[int]]:
    """Single-linkage clusters of sorted real ``values``."""
    clusters: list[list[int]] = []
    for i, v in enumerate(values):
        if clusters and v - values[clusters[-1][-1]] <= gap:
            clusters[-1].append(i)
        else:
            clusters.append([i])
    return clusters


def _components(k: int, linked: np.ndarray, clusters) -> list[list[int]]:
    parent = list(range(k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in clusters:
        for i in c[1:]:
            parent[find(i)] = find(c[0])
    for i, j in zip(*np.nonzero(linked)):
        parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(k):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def _offdiag(mats: np.ndarray) -> np.ndarray:
    k = mats.shape[-1]
    mag = np.max(np.abs(mats), axis=0) if len(mats) else np.zeros((k, k))
    mag[np.diag_indices(k)] = 0.0
    return mag


def _refine(mats: np.ndarray, rng: np.random.Generator, tol: Tolerances, depth: int) -> np.ndarray:
    """Unitary ``V`` with ``V^* M_i V`` diagonal for every ``M_i``."""
    k = mats.shape[-1]
    if k == 1 or len(mats) == 0:
        return np.eye(k, dtype=complex)
    if depth > tol.retries:
        raise DegeneracyError(
            f"could not separate a joint eigenspace of dimension {k} after {tol.retries} retries "
            f"(off-diagonal residual {_max_abs(_offdiag(mats)):.3g})"
        )
    a = rng.standard_normal(len(mats))
    b = rng.standard_normal(len(mats))
    herm = np.zeros((k, k), dtype=complex)
    for ai, bi, x in zip(a, b, mats):
        herm += ai * (x + x.conj().T) / 2 + bi * (x - x.conj().T) / 2j
    vals, vecs = np.linalg.eigh(herm)
    rotated = vecs.conj().T @ mats @ vecs
    linked = _offdiag(rotated) > tol.commute
    for group in _components(k, linked, _gap_clusters(vals, 10 * tol.one)):
        if len(group) == 1:
            continue
        sub = rotated[:, group][:, :, group]
        if _max_abs(_offdiag(sub)) <= tol.commute:
            continue
        vecs[:, group] = vecs[:, group] @ _refine(sub, rng, tol, depth + 1)
    return vecs


def simultaneous_diagonalize(t: UnitaryTuple, seed=0, tol: Tolerances = DEFAULT_TOL):
    """Return ``(h, rows, residual)`` with ``h^-1 U_i h`` diagonal.

    ``rows[k, i]`` is the ``k``-th diagonal entry of ``h^-1 U_i h``.
    """
    t.validate(tol)
    rng = np.random.default_rng(seed)
    h = _refine(t.matrices, rng, tol, 0)
    diag = h.conj().T @ t.matrices @ h
    residual = _max_abs(_offdiag(diag))
    if residual > tol.commute:
        raise DegeneracyError(f"diagonalization residual {residual:.3g} exceeds {tol.commute:.3g}")
    rows = np.diagonal(diag, axis1=1, axis2=2).T.copy()
    return h, rows, residual


# -- classification -----------------------------------------------------------


@dataclass
class StratumReport:
    partition: IndexedPartition
    conjugator: np.ndarray
    eigen_rows: np.ndarray
    residual: float
    tolerance_used: Tolerances
    ambiguous: list = field(default_factory=list)

    @property
    def warning(self) -> bool:
        return bool(self.ambiguous)

    def sequences(self, tol: Tolerances | None = None) -> list[BinarySequence]:
        return row_sequences(self.eigen_rows, (tol or self.tolerance_used).one)

    def to_json(self) -> dict:
        return {
            "partition": self.partition.to_json(),
            "conjugator": [[[float(z.real), float(z.imag)] for z in row] for row in self.conjugator],
            "eigen_rows": [[[float(z.real), float(z.imag)] for z in row] for row in self.eigen_rows],
            "residual": self.residual,
            "tolerances": self.tolerance_used.to_json(),
            "warning": self.warning,
            "ambiguous_entries": [list(map(int, e)) for e in self.ambiguous],
        }


def row_sequences(rows: np.ndarray, tol_one: float) -> list[BinarySequence]:
    far = np.abs(rows - 1) > tol_one
    return [tuple(int(b) for b in r) for r in far]


def classify(t: UnitaryTuple, seed=0, tol: Tolerances = DEFAULT_TOL) -> StratumReport:
    """Stratum of a commuting tuple, with a conjugator into the sorted torus form."""
    h, rows, residual = simultaneous_diagonalize(t, seed, tol)
    dist = np.abs(rows - 1)
    seqs = row_sequences(rows, tol.one)
    order = sorted(range(t.m), key=lambda k: seqs[k])
    h, rows, dist = h[:, order], rows[order], dist[order]
    band = (dist > tol.one) & (dist < 2 * tol.one)
    ambiguous = [tuple(e) for e in np.argwhere(band)]
    if ambiguous:
        warnings.warn(f"{len(ambiguous)} eigenvalue(s) within the ambiguity band near 1", stacklevel=2)
    lam = partition_from_rows([seqs[k] for k in order], t.n)
    return StratumReport(lam, h, rows, residual, tol, ambiguous)


# -- block decomposition --------------------------------------------------------


@dataclass
class BlockDecomposition:
    partition: IndexedPartition
    conjugator: np.ndarray
    blocks: dict  # binary sequence -> (|a|, lam_a, lam_a) array

    def singular_margins(self) -> dict:
        """Per block and coordinate, the smallest singular value of ``g_i - 1``."""
        out = {}
        for a, sub in self.blocks.items():
            k = sub.shape[-1]
            out[a] = [
                float(np.linalg.svd(g - np.eye(k), compute_uv=False).min()) if k else 0.0 for g in sub
            ]
        return out


def block_decompose(t: UnitaryTuple, seed=0, tol: Tolerances = DEFAULT_TOL) -> BlockDecomposition:
    """Split a tuple into per-sequence blocks, dropping coordinates where ``a(i) = 0``."""
    rep = classify(t, seed, tol)
    h = rep.conjugator
    inner = h.conj().T @ t.matrices @ h
    blocks = {}
    start = 0
    for a, p in rep.partition.items():
        sl = slice(start, start + p)
        keep = [i for i, bit in enumerate(a) if bit]
        blocks[a] = inner[keep][:, sl, sl].copy() if keep else np.zeros((0, p, p), dtype=complex)
        start += p
    return BlockDecomposition(rep.partition, h, blocks)


def shuffle(a: BinarySequence, sub: np.ndarray) -> np.ndarray:
    """Insert identities at the coordinates where ``a`` is 0."""
    n = len(a)
    k = sub.shape[-1]
    out = np.broadcast_to(np.eye(k, dtype=complex), (n, k, k)).copy()
    positions = [i for i, bit in enumerate(a) if bit]
    if len(positions) != len(sub):
        raise DimensionError(f"sequence {a} expects {len(positions)} matrices, got {len(sub)}")
    for j, i in enumerate(positions):
        out[i] = sub[j]
    return out


def reassemble(dec: BlockDecomposition) -> UnitaryTuple:
    """Inverse of :func:`block_decompose`: shuffle, block sum, conjugate back."""
    lam = dec.partition
    mats = np.zeros((lam.n, lam.m, lam.m), dtype=complex)
    start = 0
    for a, p in lam.items():
        if p:
            mats[:, start:start + p, start:start + p] = shuffle(a, dec.blocks[a])
        start += p
    h = dec.conjugator
    return UnitaryTuple(h @ mats @ h.conj().T)


# -- Cayley transform -------------------------------------------------------------


def cayley(x: SkewHermitianTuple) -> UnitaryTuple:
    """``(X - 1)(X + 1)^-1`` applied to every matrix."""
    eye = np.eye(x.m)
    out = np.empty_like(x.matrices)
    for i, mat in enumerate(x.matrices):
        # X - 1 and X + 1 commute, so the order of the factors is immaterial.
        out[i] = np.linalg.solve(mat + eye, mat - eye)
    return UnitaryTuple(out)


def _eig_distance_to_one(a: np.ndarray) -> tuple[float, np.ndarray]:
    vals = np.linalg.eigvals(a)
    d = np.abs(vals - 1)
    return float(d.min()) if d.size else np.inf, vals


def cayley_inv(a: UnitaryTuple, threshold: float = 1e-8) -> SkewHermitianTuple:
    """``(1 - A)^-1 (1 + A)``; refuses matrices with an eigenvalue near 1."""
    eye = np.eye(a.m)
    out = np.empty_like(a.matrices)
    for i, mat in enumerate(a.matrices):
        dist, vals = _eig_distance_to_one(mat)
        if dist < threshold:
            cluster = vals[np.abs(vals - 1) < max(threshold, 10 * dist)]
            raise SingularityError(
                f"matrix {i} has eigenvalues {np.round(cluster, 12).tolist()} within {threshold:g} of 1"
            )
        out[i] = np.linalg.solve(eye - mat, eye + mat)
    return SkewHermitianTuple(out)


def cayley_bound(x: SkewHermitianTuple) -> float:
    """Factor ``K`` with max-norm commutator growth ``<= K`` under :func:`cayley`."""
    eye = np.eye(x.m)
    norms = [np.linalg.norm(np.linalg.inv(mat + eye), 2) for mat in x.matrices]
    top = max(norms, default=1.0)
    return 4 * x.m * top ** 4


def cayley_inv_bound(a: UnitaryTuple) -> float:
    eye = np.eye(a.m)
    norms = [np.linalg.norm(np.linalg.inv(eye - mat), 2) for mat in a.matrices]
    top = max(norms, default=1.0)
    return 4 * a.m * top ** 4


def random_commuting_skew(m: int, n: int, seed, scale: float = 2.0) -> SkewHermitianTuple:
    """Commuting skew-Hermitian tuple ``g diag(i r) g^*`` with Gaussian ``r``."""
    rng = np.random.default_rng(seed)
    g = haar_unitary(m, rng)
    r = scale * rng.standard_normal((n, m))
    mats = np.stack([g @ np.diag(1j * ri) @ g.conj().T for ri in r])
    return SkewHermitianTuple(mats)


# -- degeneration ---------------------------------------------------------------------


def closure_probe(
    lam: IndexedPartition,
    path_steps: int,
    seed=0,
    entries: Sequence[tuple[int, int]] | None = None,
    tol: Tolerances = DEFAULT_TOL,
) -> list[IndexedPartition]:
    """Classify along a path that rotates chosen eigenvalues to 1.

    The entries (row, coordinate) are flowed one after another along the
    shorter arc of the circle; by the end of the path all of them equal 1.
    Defaults to every entry that is not 1.
    """
    rng = np.random.default_rng(seed)
    rows = random_torus_rows(lam, rng, tol.margin)
    g = haar_unitary(lam.m, rng)
    if entries is None:
        entries = [tuple(map(int, e)) for e in np.argwhere(np.abs(rows - 1) > tol.one)]
    angles = np.angle(rows)
    out = [lam]
    k = len(entries)
    for step in range(1, path_steps + 1):
        s = step / path_steps
        cur = rows.copy()
        for idx, (r, c) in enumerate(entries):
            local = min(max(s * k - idx, 0.0), 1.0)
            cur[r, c] = 1.0 if local >= 1.0 else np.exp(1j * angles[r, c] * (1 - local))
        out.append(classify(rows_to_tuple(cur).conjugate(g), seed, tol).partition)
    return out
