"""Dense exact linear algebra over F_p.

Everything is integer arithmetic on numpy arrays reduced mod p.  The
workhorse is :class:`Echelon`, an incremental reduced-row-echelon
accumulator: batches of rows are reduced against the current basis with
one matrix product (exact in float64 because p < 2^8 here and the inner
dimension is capped), then eliminated among themselves.  The stored
basis is the canonical RREF of the row space, so results do not depend
on how the rows were batched.
"""

from __future__ import annotations

import numpy as np

from .field import FpScalar, check_prime

_CHUNK = 1024
_PANEL = 32
# switch matmul to float64 BLAS above this many multiply-adds
_FLOAT_MATMUL_MIN = 1 << 20


def _as_rows(rows, p) -> np.ndarray:
    R = np.asarray(rows, dtype=np.int64)
    if R.ndim == 1:
        R = R[None, :]
    if R.ndim != 2:
        raise ValueError(f"expected a 2-d array of rows, got shape {R.shape}")
    return np.mod(R, p)


class Echelon:
    """Incremental canonical RREF of a row space over F_p."""

    __slots__ = ("p", "ncols", "_rows", "_pivots")

    def __init__(self, p: int, ncols: int):
        check_prime(p)
        self.p = int(p)
        self.ncols = int(ncols)
        self._rows = np.zeros((0, self.ncols), dtype=np.int64)
        self._pivots = np.zeros((0,), dtype=np.int64)

    @property
    def rank(self) -> int:
        return self._rows.shape[0]

    @property
    def rows(self) -> np.ndarray:
        """Current basis rows (do not mutate)."""
        return self._rows

    @property
    def pivots(self) -> np.ndarray:
        return self._pivots

    def copy(self) -> "Echelon":
        e = Echelon.__new__(Echelon)
        e.p = self.p
        e.ncols = self.ncols
        e._rows = self._rows.copy()
        e._pivots = self._pivots.copy()
        return e

    def _matmul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        # entries are reduced residues; products fit exactly in float64
        # ((p-1)^2 * inner_dim < 2^53 for any sane block size)
        if A.shape[0] * A.shape[1] * B.shape[1] >= _FLOAT_MATMUL_MIN:
            C = A.astype(np.float64) @ B.astype(np.float64)
            return C.astype(np.int64)
        return A @ B

    def reduce(self, rows) -> np.ndarray:
        """Remainders of the given rows modulo the current row space."""
        R = _as_rows(rows, self.p)
        if self.rank == 0 or R.shape[0] == 0:
            return R
        coef = R[:, self._pivots]
        return np.mod(R - self._matmul(coef, self._rows), self.p)

    def contains(self, row) -> bool:
        return not self.reduce(row).any()

    def add(self, rows, rank_cap: int | None = None) -> int:
        """Insert rows into the span; returns the number of new pivots.

        If rank_cap is given, stops as soon as the rank reaches it (used
        when the caller knows an a-priori bound on the span).
        """
        R0 = _as_rows(rows, self.p)
        added = 0
        for start in range(0, R0.shape[0], _CHUNK):
            if rank_cap is not None and self.rank >= rank_cap:
                break
            chunk = self.reduce(R0[start : start + _CHUNK])
            chunk = chunk[chunk.any(axis=1)]
            if chunk.shape[0] == 0:
                continue
            budget = None if rank_cap is None else rank_cap - self.rank
            new_rows, new_pivots = self._forward_eliminate(chunk, budget)
            if not new_pivots:
                continue
            NR = new_rows
            NP = np.array(new_pivots, dtype=np.int64)
            if self.rank:
                coef = self._rows[:, NP]
                self._rows = np.mod(self._rows - self._matmul(coef, NR), self.p)
            self._rows = np.vstack([self._rows, NR])
            self._pivots = np.concatenate([self._pivots, NP])
            added += len(new_pivots)
        return added

    def _forward_eliminate(self, active: np.ndarray, budget: int | None):
        """Mutually reduce a batch that is already reduced vs the basis.

        Pivots are taken from small row panels; once a panel is in RREF
        its pivot columns are cleared from the remaining rows with a
        single exact matrix product.  The result is the canonical RREF
        of the batch row space whatever the panel boundaries are.
        """
        p = self.p
        out_rows = np.zeros((0, active.shape[1]), dtype=np.int64)
        out_pivots: list[int] = []
        while True:
            active = active[active.any(axis=1)]
            if active.shape[0] == 0:
                break
            if budget is not None and len(out_pivots) >= budget:
                break
            panel = active[:_PANEL].copy()
            rest = active[_PANEL:]
            prows: list[np.ndarray] = []
            ppivots: list[int] = []
            while True:
                panel = panel[panel.any(axis=1)]
                if panel.shape[0] == 0:
                    break
                if budget is not None and len(out_pivots) + len(ppivots) >= budget:
                    break
                leads = (panel != 0).argmax(axis=1)
                i = int(np.argmin(leads))
                c = int(leads[i])
                row = panel[i] * pow(int(panel[i, c]), -1, p)
                row %= p
                factors = panel[:, c].copy()
                panel = np.mod(panel - factors[:, None] * row[None, :], p)
                if prows:
                    prev = np.array(prows, dtype=np.int64)
                    prev = np.mod(prev - prev[:, c : c + 1] * row[None, :], p)
                    prows = list(prev)
                prows.append(row)
                ppivots.append(c)
            if not ppivots:
                break
            PR = np.array(prows, dtype=np.int64)
            PP = np.array(ppivots, dtype=np.int64)
            if rest.shape[0]:
                rest = np.mod(rest - self._matmul(rest[:, PP], PR), p)
            if out_rows.shape[0]:
                out_rows = np.mod(out_rows - self._matmul(out_rows[:, PP], PR), p)
            out_rows = np.vstack([out_rows, PR])
            out_pivots.extend(ppivots)
            active = rest
        return out_rows, out_pivots

    def sorted_rows(self) -> np.ndarray:
        """Basis rows ordered by pivot column (canonical presentation)."""
        order = np.argsort(self._pivots, kind="stable")
        return self._rows[order]


def rref(mat, p) -> tuple[np.ndarray, np.ndarray]:
    """Canonical RREF rows and their pivot columns, pivots ascending."""
    M = _as_rows(mat, p)
    ech = Echelon(p, M.shape[1])
    ech.add(M)
    order = np.argsort(ech.pivots, kind="stable")
    return ech.rows[order], ech.pivots[order]


def rank_mod(mat, p) -> int:
    M = _as_rows(mat, p)
    ech = Echelon(p, M.shape[1])
    return ech.add(M)


def kernel_rows(mat, p) -> np.ndarray:
    """Canonical RREF basis of the right kernel, one vector per row."""
    M = _as_rows(mat, p)
    n = M.shape[1]
    R, piv = rref(M, p)
    free = sorted(set(range(n)) - set(int(j) for j in piv))
    if not free:
        return np.zeros((0, n), dtype=np.int64)
    K = np.zeros((len(free), n), dtype=np.int64)
    K[np.arange(len(free)), free] = 1
    if len(piv):
        K[:, piv] = np.mod(-R[:, free].T, p)
    ech = Echelon(p, n)
    ech.add(K)
    order = np.argsort(ech.pivots, kind="stable")
    return ech.rows[order]


class FpMatrix:
    """A dense matrix over F_p with exact rank and kernel."""

    __slots__ = ("p", "_a")

    def __init__(self, entries, p: int):
        check_prime(p)
        self.p = int(p)
        a = np.array(
            [[int(x) for x in row] for row in entries], dtype=np.int64
        )
        if a.ndim == 1:
            a = a.reshape(0, 0) if a.size == 0 else a[None, :]
        self._a = np.mod(a, self.p)

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def array(self) -> np.ndarray:
        return self._a.copy()

    def entry(self, i: int, j: int) -> FpScalar:
        return FpScalar(int(self._a[i, j]), self.p)

    def rank(self) -> int:
        return rank_mod(self._a, self.p)

    def kernel_basis(self) -> list[tuple[int, ...]]:
        """Echelonized basis of the right kernel as residue tuples."""
        K = kernel_rows(self._a, self.p)
        return [tuple(int(x) for x in row) for row in K]

    def __repr__(self):
        return f"FpMatrix({self.rows}x{self.cols}, p={self.p})"


def rank(M: FpMatrix) -> int:
    return M.rank()


def kernel_basis(M: FpMatrix) -> list[tuple[int, ...]]:
    return M.kernel_basis()
