"""Dense two-phase tableau simplex with Bland's anti-cycling rule.

Solves ``max c.x  s.t.  A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0`` (variables
listed in ``free`` are unrestricted). Floating point by default; ``exact=True``
pivots on Fractions in an object array and returns exact values.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np


class SimplexError(RuntimeError):
    pass


class Infeasible(SimplexError):
    pass


class Unbounded(SimplexError):
    pass


@dataclass
class LinearProgram:
    c: Sequence
    A_ub: Sequence[Sequence] = ()
    b_ub: Sequence = ()
    A_eq: Sequence[Sequence] = ()
    b_eq: Sequence = ()
    free: frozenset = frozenset()

    @property
    def n(self) -> int:
        return len(self.c)


@dataclass
class SimplexResult:
    value: object
    x: list
    iterations: int
    status: str = "optimal"
    basis: list = field(default_factory=list, repr=False)


def _array(rows, width, dtype):
    if dtype is object:
        out = np.empty((len(rows), width), dtype=object)
        for i, r in enumerate(rows):
            out[i] = [Fraction(v) for v in r]
        return out
    return np.asarray(rows, dtype=float).reshape(len(rows), width)


def simplex_solve(
    lp: LinearProgram,
    exact: bool = False,
    tol: float = 1e-9,
    max_iter: int = 50_000,
    pivot_tol: float = 1e-7,
    refresh_every: int = 50,
) -> SimplexResult:
    """Optimal value and primal solution of ``lp``.

    ``tol`` is the optimality tolerance on reduced costs; ``pivot_tol`` rejects
    tiny pivot elements. In floating point the tableau is rebuilt from the
    original rows and the current basis every ``refresh_every`` pivots and again
    before optimality is declared, so rounding drift cannot accumulate.
    """
    dtype = object if exact else float
    tol = 0 if exact else tol
    pivot_tol = 0 if exact else pivot_tol
    n = lp.n
    free = sorted(lp.free)
    # free variables x_j = x_j+ - x_j-; the minus parts go at the end
    split = {j: n + k for k, j in enumerate(free)}
    n_struct = n + len(free)

    def widen(row):
        row = list(row) + [0] * len(free)
        for j, jm in split.items():
            row[jm] = -row[j]
        return row

    rows, rhs, kinds = [], [], []
    for a, b in zip(lp.A_ub, lp.b_ub):
        rows.append(widen(a)), rhs.append(b), kinds.append("ub")
    for a, b in zip(lp.A_eq, lp.b_eq):
        rows.append(widen(a)), rhs.append(b), kinds.append("eq")
    m = len(rows)
    n_slack = kinds.count("ub")
    # artificial for every equality and every <= row with negative rhs
    needs_art = [k == "eq" or (Fraction(b) if exact else float(b)) < 0 for k, b in zip(kinds, rhs)]
    n_art = sum(needs_art)
    width = n_struct + n_slack + n_art + 1
    T = _array([[0] * width for _ in range(m)], width, dtype)
    basis = [0] * m
    s_col, a_col = n_struct, n_struct + n_slack
    zero = Fraction(0) if exact else 0.0
    for i in range(m):
        T[i, :n_struct] = _array([rows[i]], n_struct, dtype)[0]
        T[i, -1] = Fraction(rhs[i]) if exact else float(rhs[i])
        if kinds[i] == "ub":
            T[i, s_col] = 1
            slack = s_col
            s_col += 1
        else:
            slack = None
        if T[i, -1] < zero:
            T[i] = -T[i]
        if needs_art[i]:
            T[i, a_col] = 1
            basis[i] = a_col
            a_col += 1
        else:
            basis[i] = slack
    art_start = n_struct + n_slack
    # untouched copy of the rows, for rebuilding the tableau
    original = None if exact else T.copy()

    iterations = 0

    def refresh(z, cost):
        """Recompute tableau rows and the objective row from ``original``."""
        nonlocal T
        B = original[:, basis]
        try:
            T = np.linalg.solve(B, original)
        except np.linalg.LinAlgError:
            return
        z[:-1] = cost[basis] @ T[:, :-1] - cost
        z[-1] = cost[basis] @ T[:, -1]

    def run(z, cost):
        nonlocal iterations
        since = 0
        while True:
            if iterations >= max_iter:
                raise SimplexError(f"iteration cap {max_iter} reached (rows={len(basis)}, cols={z.shape[0] - 1})")
            if not exact and since >= refresh_every:
                refresh(z, cost)
                since = 0
            neg = np.nonzero(z[:-1] < -tol)[0] if not exact else [j for j in range(len(z) - 1) if z[j] < 0]
            if len(neg) == 0:
                if exact or since == 0:
                    return
                refresh(z, cost)
                since = 0
                continue
            j = int(neg[0])  # Bland: lowest-index improving column
            col = T[:, j]
            best, leave = None, None
            for i in range(len(basis)):
                if col[i] > pivot_tol:
                    r = T[i, -1] / col[i]
                    if best is None or r < best - tol or (abs(r - best) <= tol and basis[i] < basis[leave]):
                        best, leave = r, i
            if leave is None:
                raise Unbounded(f"column {j} is unbounded")
            pivot(leave, j, z)
            iterations += 1
            since += 1

    def pivot(i, j, z):
        T[i] = T[i] / T[i, j]
        for k in range(T.shape[0]):
            if k != i and T[k, j] != 0:
                T[k] = T[k] - T[k, j] * T[i]
        if z[j] != 0:
            z[:] = z - z[j] * T[i]
        basis[i] = j

    # phase 1: maximise -sum(artificials)
    if n_art:
        cost = np.zeros(width - 1)
        cost[art_start:] = -1
        z = _array([[0] * width], width, dtype)[0]
        z[art_start:-1] = 1
        for i in range(m):
            if basis[i] >= art_start:
                z[:] = z - T[i]
        run(z, cost)
        if z[-1] < (0 if exact else -1e-7):
            raise Infeasible(f"phase 1 optimum {z[-1]} < 0")
        # drive zero-level artificials out of the basis, dropping redundant rows
        i = 0
        while i < len(basis):
            if basis[i] >= art_start:
                cands = [j for j in range(art_start) if abs(T[i, j]) > pivot_tol]
                if cands:
                    pivot(i, cands[0], z)
                else:
                    T = np.delete(T, i, axis=0)
                    if original is not None:
                        original = np.delete(original, i, axis=0)
                    del basis[i]
                    continue
            i += 1
        T = np.delete(T, np.s_[art_start:-1], axis=1)
        if original is not None:
            original = np.delete(original, np.s_[art_start:-1], axis=1)

    # phase 2
    cvec = widen(list(lp.c)) + [0] * n_slack
    z = _array([[-v for v in cvec] + [0]], n_struct + n_slack + 1, dtype)[0]
    for i, b in enumerate(basis):
        if z[b] != 0:
            z[:] = z - z[b] * T[i]
    run(z, None if exact else np.asarray(cvec, dtype=float))

    values = [zero] * (n_struct + n_slack)
    for i, b in enumerate(basis):
        values[b] = T[i, -1]
    x = [values[j] - (values[split[j]] if j in split else 0) for j in range(n)]
    if not exact:
        x = [float(v) for v in x]
    return SimplexResult(z[-1] if exact else float(z[-1]), x, iterations, "optimal", list(basis))
