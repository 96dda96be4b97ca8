"""Sparse exact integer linear algebra.

The central routine is :func:`smith_normal_form`, a sparse elimination over
the integers.  Unimodular transforms are not materialised during the
elimination; instead every row and column operation is logged so that
``U @ b`` and ``V @ y`` can be replayed on vectors, and full matrices are
built only on request.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

# a 61-bit Mersenne prime; used only for rank lower bounds
RANK_PRIME = (1 << 61) - 1


class SparseIntMatrix:
    """Sparse matrix with arbitrary precision integer entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: dict[tuple[int, int], int] | None = None):
        self.rows = rows
        self.cols = cols
        self.entries: dict[tuple[int, int], int] = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry ({i}, {j}) outside {rows}x{cols}")
            if v:
                self.entries[i, j] = v

    @classmethod
    def from_dense(cls, dense) -> "SparseIntMatrix":
        dense = [list(map(int, row)) for row in dense]
        rows = len(dense)
        cols = len(dense[0]) if rows else 0
        return cls(rows, cols, {(i, j): v for i, row in enumerate(dense) for j, v in enumerate(row) if v})

    @classmethod
    def identity(cls, n: int) -> "SparseIntMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        return self.entries.get(ij, 0)

    def __eq__(self, other):
        if not isinstance(other, SparseIntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __repr__(self):
        return f"SparseIntMatrix({self.rows}x{self.cols}, nnz={self.nnz})"

    def is_zero(self) -> bool:
        return not self.entries

    def transpose(self) -> "SparseIntMatrix":
        return SparseIntMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def row_dicts(self) -> list[dict[int, int]]:
        out: list[dict[int, int]] = [{} for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def col_dicts(self) -> list[dict[int, int]]:
        out: list[dict[int, int]] = [{} for _ in range(self.cols)]
        for (i, j), v in self.entries.items():
            out[j][i] = v
        return out

    def __matmul__(self, other):
        if isinstance(other, SparseIntMatrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            other_rows = other.row_dicts()
            acc: dict[tuple[int, int], int] = {}
            for (i, k), a in self.entries.items():
                for j, b in other_rows[k].items():
                    acc[i, j] = acc.get((i, j), 0) + a * b
            return SparseIntMatrix(self.rows, other.cols, acc)
        vec = list(other)
        if len(vec) != self.cols:
            raise ValueError(f"vector of length {len(vec)} against {self.shape}")
        out = [0] * self.rows
        for (i, j), v in self.entries.items():
            if vec[j]:
                out[i] += v * vec[j]
        return out

    def reduce_mod(self, modulus: int) -> "SparseIntMatrix":
        return SparseIntMatrix(self.rows, self.cols, {ij: v % modulus for ij, v in self.entries.items()})

    def scale_rows(self, factors) -> "SparseIntMatrix":
        return SparseIntMatrix(self.rows, self.cols, {(i, j): factors[i] * v for (i, j), v in self.entries.items()})

    def scale_cols(self, factors) -> "SparseIntMatrix":
        return SparseIntMatrix(self.rows, self.cols, {(i, j): v * factors[j] for (i, j), v in self.entries.items()})

    def hstack(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.rows != other.rows:
            raise ValueError("row counts differ")
        entries = dict(self.entries)
        entries.update({(i, j + self.cols): v for (i, j), v in other.entries.items()})
        return SparseIntMatrix(self.rows, self.cols + other.cols, entries)

    def triplets(self) -> list[tuple[int, int, int]]:
        return sorted((i, j, v) for (i, j), v in self.entries.items())


# ------------------------------------------------------------------ Smith form

# operation codes in the transform log
_ADD, _NEG, _MIX = 0, 1, 2


@dataclass
class SmithForm:
    """Divisor chain of a matrix, with optional logged transforms.

    When transforms are kept, ``U @ A @ V`` equals the matrix with
    ``diagonal`` on its leading diagonal and zeros elsewhere.
    """

    rows: int
    cols: int
    diagonal: list[int]
    row_perm: list[int] | None = None
    col_perm: list[int] | None = None
    row_log: list[tuple] | None = field(default=None, repr=False)
    col_log: list[tuple] | None = field(default=None, repr=False)

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    @property
    def has_transforms(self) -> bool:
        return self.row_log is not None

    def invariant_factors(self) -> list[int]:
        return [x for x in self.diagonal if x != 1]

    def _need_transforms(self):
        if not self.has_transforms:
            raise ValueError("Smith form was computed without transforms")

    def apply_u(self, b) -> list[int]:
        """Return U @ b."""
        self._need_transforms()
        b = list(b)
        if len(b) != self.rows:
            raise ValueError("vector length does not match row count")
        mix_start = None
        for idx, op in enumerate(self.row_log):
            code = op[0]
            if code == _ADD:
                _, t, s, q = op
                if b[s]:
                    b[t] += q * b[s]
            elif code == _NEG:
                b[op[1]] = -b[op[1]]
            else:
                mix_start = idx
                break
        b = [b[i] for i in self.row_perm]
        if mix_start is not None:
            for _, i, j, a, c, e, f in self.row_log[mix_start:]:
                b[i], b[j] = a * b[i] + c * b[j], e * b[i] + f * b[j]
        return b

    def apply_v(self, y) -> list[int]:
        """Return V @ y."""
        self._need_transforms()
        y = list(y)
        if len(y) != self.cols:
            raise ValueError("vector length does not match column count")
        ops = self.col_log
        split = len(ops)
        while split and ops[split - 1][0] == _MIX:
            split -= 1
        for _, i, j, a, c, e, f in reversed(ops[split:]):
            # V_mix acting on (y_i, y_j) with matrix [[a, c], [e, f]]
            y[i], y[j] = a * y[i] + c * y[j], e * y[i] + f * y[j]
        x = [0] * self.cols
        for t, src in enumerate(self.col_perm):
            x[src] = y[t]
        for op in reversed(ops[:split]):
            if op[0] == _ADD:
                _, t, s, q = op
                # column op C_t += q C_s is V_op = I + q E_{s,t}
                if x[t]:
                    x[s] += q * x[t]
            else:
                x[op[1]] = -x[op[1]]
        return x

    def apply_v_inverse(self, x) -> list[int]:
        """Return V^{-1} @ x."""
        self._need_transforms()
        x = list(x)
        ops = self.col_log
        split = len(ops)
        while split and ops[split - 1][0] == _MIX:
            split -= 1
        for op in ops[:split]:
            if op[0] == _ADD:
                _, t, s, q = op
                if x[t]:
                    x[s] -= q * x[t]
            else:
                x[op[1]] = -x[op[1]]
        y = [x[src] for src in self.col_perm]
        for _, i, j, a, c, e, f in ops[split:]:
            det = a * f - c * e
            # inverse of a unimodular 2x2 block
            y[i], y[j] = det * (f * y[i] - c * y[j]), det * (-e * y[i] + a * y[j])
        return y

    def u_matrix(self) -> SparseIntMatrix:
        cols = [self.apply_u([int(i == k) for i in range(self.rows)]) for k in range(self.rows)]
        return SparseIntMatrix(self.rows, self.rows, {(i, k): v for k, c in enumerate(cols) for i, v in enumerate(c) if v})

    def v_matrix(self) -> SparseIntMatrix:
        cols = [self.apply_v([int(i == k) for i in range(self.cols)]) for k in range(self.cols)]
        return SparseIntMatrix(self.cols, self.cols, {(i, k): v for k, c in enumerate(cols) for i, v in enumerate(c) if v})

    def diagonal_matrix(self) -> SparseIntMatrix:
        return SparseIntMatrix(self.rows, self.cols, {(i, i): v for i, v in enumerate(self.diagonal)})


def _round_div(a: int, b: int) -> int:
    """Nearest-integer quotient, so that |a - q b| <= |b| / 2."""
    q, r = divmod(a, b)
    if 2 * abs(r) > abs(b):
        q += 1  # r shares the sign of b
    return q


class _Eliminator:
    """Working state for sparse integer elimination."""

    def __init__(self, A: SparseIntMatrix, log: bool):
        self.rows: dict[int, dict[int, int]] = {}
        self.cols: dict[int, set[int]] = {}
        for (i, j), v in A.entries.items():
            self.rows.setdefault(i, {})[j] = v
            self.cols.setdefault(j, set()).add(i)
        self.row_log = [] if log else None
        self.col_log = [] if log else None

    def _set(self, i, j, v):
        row = self.rows.setdefault(i, {})
        if v:
            row[j] = v
            self.cols.setdefault(j, set()).add(i)
        else:
            row.pop(j, None)
            col = self.cols.get(j)
            if col is not None:
                col.discard(i)
                if not col:
                    del self.cols[j]
            if not row:
                del self.rows[i]

    def row_add(self, t, s, q):
        """R_t += q R_s."""
        if not q:
            return
        target = self.rows.get(t, {})
        for j, v in list(self.rows[s].items()):
            self._set(t, j, target.get(j, 0) + q * v)
            target = self.rows.get(t, {})
        if self.row_log is not None:
            self.row_log.append((_ADD, t, s, q))

    def col_add(self, t, s, q):
        """C_t += q C_s."""
        if not q:
            return
        for i in list(self.cols[s]):
            v = self.rows[i][s]
            self._set(i, t, self.rows.get(i, {}).get(t, 0) + q * v)
        if self.col_log is not None:
            self.col_log.append((_ADD, t, s, q))

    def row_neg(self, i):
        for j in self.rows[i]:
            self.rows[i][j] = -self.rows[i][j]
        if self.row_log is not None:
            self.row_log.append((_NEG, i))

    def choose_pivot(self):
        best = None
        best_key = None
        for i, row in self.rows.items():
            rlen = len(row) - 1
            for j, v in row.items():
                key = (abs(v), rlen * (len(self.cols[j]) - 1))
                if best_key is None or key < best_key:
                    best_key, best = key, (i, j)
                    if key == (1, 0):
                        return best
        return best

    def reduce_pivot(self, i, j):
        """Clear row i and column j except at the pivot; returns final pivot position."""
        while True:
            p = self.rows[i][j]
            for r in list(self.cols[j]):
                if r != i:
                    self.row_add(r, i, -_round_div(self.rows[r][j], p))
            for c in list(self.rows[i]):
                if c != j:
                    self.col_add(c, j, -_round_div(self.rows[i][c], p))
            rest_col = [r for r in self.cols[j] if r != i]
            rest_row = [c for c in self.rows[i] if c != j]
            if not rest_col and not rest_row:
                return i, j
            # a remainder smaller than the pivot survived; move the pivot there
            cand = [(abs(self.rows[r][j]), r, j) for r in rest_col]
            cand += [(abs(self.rows[i][c]), i, c) for c in rest_row]
            _, i, j = min(cand)

    def remove(self, i, j):
        del self.rows[i]
        del self.cols[j]


def smith_normal_form(A: SparseIntMatrix, keep_transforms: bool = False) -> SmithForm:
    """Smith normal form of an integer matrix.

    The diagonal is returned as a divisor chain of positive integers.  With
    ``keep_transforms`` the elimination is logged so that U and V with
    ``U A V = D`` can be applied or materialised.
    """
    el = _Eliminator(A, keep_transforms)
    pivots: list[tuple[int, int, int]] = []
    while el.rows:
        i, j = el.choose_pivot()
        i, j = el.reduce_pivot(i, j)
        v = el.rows[i][j]
        if v < 0:
            el.row_neg(i)
            v = -v
        pivots.append((i, j, v))
        el.remove(i, j)

    diagonal = [v for _, _, v in pivots]
    form = SmithForm(A.rows, A.cols, diagonal)
    if keep_transforms:
        used_r = {i for i, _, _ in pivots}
        used_c = {j for _, j, _ in pivots}
        form.row_perm = [i for i, _, _ in pivots] + [i for i in range(A.rows) if i not in used_r]
        form.col_perm = [j for _, j, _ in pivots] + [j for j in range(A.cols) if j not in used_c]
        form.row_log = el.row_log
        form.col_log = el.col_log
    _normalize_chain(form)
    return form


def _normalize_chain(form: SmithForm):
    """Turn the diagonal into a divisor chain with 2x2 gcd/lcm moves."""
    diag = form.diagonal
    log = form.has_transforms
    # sort so units come first (permutation is folded into the perms)
    order = sorted(range(len(diag)), key=lambda t: (diag[t] != 1, diag[t]))
    if order != list(range(len(diag))):
        diag[:] = [diag[t] for t in order]
        if log:
            r = len(order)
            form.row_perm[:r] = [form.row_perm[t] for t in order]
            form.col_perm[:r] = [form.col_perm[t] for t in order]
    start = 0
    while start < len(diag) and diag[start] == 1:
        start += 1
    for a in range(start, len(diag)):
        for b in range(a + 1, len(diag)):
            x, y = diag[a], diag[b]
            if y % x == 0:
                continue
            g, s, t = _xgcd(x, y)
            diag[a], diag[b] = g, x // g * y
            if log:
                # U2 = [[s, t], [-y/g, x/g]], V2 = [[1, -t y/g], [1, s x/g]]
                form.row_log.append((_MIX, a, b, s, t, -y // g, x // g))
                form.col_log.append((_MIX, a, b, 1, -t * (y // g), 1, s * (x // g)))


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


# ------------------------------------------------------------------ rank


def rank_mod_prime(A: SparseIntMatrix, q: int = RANK_PRIME, stop_at: int | None = None) -> int:
    """Rank of A over F_q by sparse row echelon reduction.

    ``stop_at`` ends the reduction as soon as that rank is reached.
    """
    # reduce along the shorter side
    vectors = A.row_dicts() if A.cols <= A.rows else A.col_dicts()
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for vec in vectors:
        v = {k: x % q for k, x in vec.items() if x % q}
        while v:
            lead = min(v)
            piv = pivots.get(lead)
            if piv is None:
                inv = pow(v[lead], -1, q)
                pivots[lead] = {k: x * inv % q for k, x in v.items()}
                rank += 1
                break
            f = v[lead]
            for k, x in piv.items():
                nv = (v.get(k, 0) - f * x) % q
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
        if stop_at is not None and rank >= stop_at:
            break
    return rank


def integer_rank(A: SparseIntMatrix, upper_bound: int | None = None) -> int:
    """Exact rank over Q.

    Rank over F_q never exceeds rank over Q, so when an a priori upper bound
    is supplied and the modular rank meets it the answer is certified.
    Otherwise the rank is read off an exact Smith form.
    """
    if A.is_zero():
        return 0
    if upper_bound is not None:
        r = rank_mod_prime(A, stop_at=upper_bound)
        if r == upper_bound:
            return r
    return smith_normal_form(A).rank


# ------------------------------------------------------------------ solving


def solve_integer_system(A: SparseIntMatrix, b, form: SmithForm | None = None) -> list[int] | None:
    """An integer solution x of A x = b, or None when none exists."""
    if form is None or not form.has_transforms:
        form = smith_normal_form(A, keep_transforms=True)
    c = form.apply_u(b)
    y = [0] * A.cols
    for i, v in enumerate(c):
        if i < form.rank:
            q, r = divmod(v, form.diagonal[i])
            if r:
                return None
            y[i] = q
        elif v:
            return None
    return form.apply_v(y)


def image_order(form: SmithForm, z) -> int | None:
    """Smallest t >= 1 with t z in the column span of the matrix; None if no multiple is."""
    c = form.apply_u(z)
    order = 1
    for i, v in enumerate(c):
        if i < form.rank:
            dv = form.diagonal[i]
            need = dv // math.gcd(dv, v)
            order = order * need // math.gcd(order, need)
        elif v:
            return None
    return order
