"""The cochain complex AC for S^d composed with abelianization.

AC^k is free on strictly increasing k-tuples ``<n_1 ... n_k>`` with entries
in the open interval (0, d).  The differential inserts a new entry ``m``
between consecutive entries (with n_0 = 0 and n_{k+1} = d) weighted by a
signed binomial coefficient.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .arith import (
    binomial,
    decompose_a,
    j_set,
    membership_ab,
    p_factor,
    prime_power_decomposition,
    tilde_f,
    valuation,
)
from .linalg import SparseIntMatrix


class ComplexError(ValueError):
    """Malformed basis element, cochain or generator parameters."""


BasisElement = tuple[int, ...]


def check_element(d: int, element: Iterable[int], k: int | None = None) -> BasisElement:
    element = tuple(element)
    if k is not None and len(element) != k:
        raise ComplexError(f"{element} is not of length {k}")
    prev = 0
    for n in element:
        if not isinstance(n, int) or n <= prev or n >= d:
            raise ComplexError(f"{element} is not strictly increasing in (0, {d})")
        prev = n
    return element


def enumerate_basis(d: int, k: int) -> list[BasisElement]:
    """Strictly increasing k-tuples in (0, d), lexicographically."""
    if k < 0:
        raise ComplexError("negative degree")
    return list(itertools.combinations(range(1, d), k))


def basis_index(d: int, k: int) -> dict[BasisElement, int]:
    return {b: i for i, b in enumerate(enumerate_basis(d, k))}


# ------------------------------------------------------------------ cochains


@dataclass
class Cochain:
    """Sparse cochain of degree k in AC for a fixed d.

    With ``modulus`` set, coefficients are residues in [0, modulus).
    """

    d: int
    k: int
    coefficients: dict[BasisElement, int] = field(default_factory=dict)
    modulus: int | None = None

    def __post_init__(self):
        clean = {}
        for b, c in self.coefficients.items():
            b = check_element(self.d, b, self.k)
            if self.modulus is not None:
                c %= self.modulus
            if c:
                clean[b] = c
        self.coefficients = dict(sorted(clean.items()))

    @classmethod
    def from_vector(cls, d: int, k: int, vector, modulus: int | None = None) -> "Cochain":
        basis = enumerate_basis(d, k)
        if len(vector) != len(basis):
            raise ComplexError(f"vector length {len(vector)} != rank {len(basis)}")
        return cls(d, k, {b: int(c) for b, c in zip(basis, vector) if c}, modulus)

    def to_vector(self) -> list[int]:
        return [self.coefficients.get(b, 0) for b in enumerate_basis(self.d, self.k)]

    def is_zero(self) -> bool:
        return not self.coefficients

    def _compatible(self, other: "Cochain"):
        if (self.d, self.k, self.modulus) != (other.d, other.k, other.modulus):
            raise ComplexError("cochains live in different groups")

    def __add__(self, other: "Cochain") -> "Cochain":
        self._compatible(other)
        out = dict(self.coefficients)
        for b, c in other.coefficients.items():
            out[b] = out.get(b, 0) + c
        return Cochain(self.d, self.k, out, self.modulus)

    def __neg__(self) -> "Cochain":
        return Cochain(self.d, self.k, {b: -c for b, c in self.coefficients.items()}, self.modulus)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def __rmul__(self, scalar: int) -> "Cochain":
        return Cochain(self.d, self.k, {b: scalar * c for b, c in self.coefficients.items()}, self.modulus)

    def reduce(self, modulus: int) -> "Cochain":
        return Cochain(self.d, self.k, dict(self.coefficients), modulus)

    def __str__(self) -> str:
        return format_cochain(self.coefficients)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "k": self.k,
            "modulus": self.modulus,
            "terms": [[list(b), c] for b, c in self.coefficients.items()],
        }


def format_element(b: BasisElement) -> str:
    return "<" + " ".join(map(str, b)) + ">"


def format_cochain(coefficients: Mapping[BasisElement, int]) -> str:
    """Canonical text: ``2*<1> + 3*<2> - <1 2>``; ``0`` when empty."""
    out = ""
    for b, c in sorted(coefficients.items()):
        term = format_element(b) if abs(c) == 1 else f"{abs(c)}*{format_element(b)}"
        if not out:
            out = term if c > 0 else "-" + term
        else:
            out += (" + " if c > 0 else " - ") + term
    return out or "0"


# ------------------------------------------------------------------ differential


def _insertions(d: int, element: BasisElement):
    """Yield (j, gap, offset, new_element) for every insertion of m into gap j."""
    ext = (0,) + element + (d,)
    for j in range(1, len(ext)):
        lo, hi = ext[j - 1], ext[j]
        for m in range(lo + 1, hi):
            yield j, hi - lo, m - lo, element[: j - 1] + (m,) + element[j - 1 :]


def differential(d: int, k: int, element: Iterable[int]) -> Cochain:
    element = check_element(d, element, k)
    terms = {}
    for j, gap, off, new in _insertions(d, element):
        terms[new] = (-1) ** j * binomial(gap, off)
    return Cochain(d, k + 1, terms)


def apply_differential(z: Cochain) -> Cochain:
    """delta applied to an arbitrary cochain (reduced if z carries a modulus)."""
    out: dict[BasisElement, int] = {}
    for b, c in z.coefficients.items():
        for new, v in differential(z.d, z.k, b).coefficients.items():
            out[new] = out.get(new, 0) + c * v
    return Cochain(z.d, z.k + 1, out, z.modulus)


def _assemble(d: int, k: int, coefficient) -> SparseIntMatrix:
    cols = enumerate_basis(d, k)
    rows = basis_index(d, k + 1)
    entries = {}
    for c, element in enumerate(cols):
        for j, gap, off, new in _insertions(d, element):
            v = coefficient(j, gap, off)
            if v:
                entries[rows[new], c] = v
    return SparseIntMatrix(len(rows), len(cols), entries)


def differential_matrix(d: int, k: int) -> SparseIntMatrix:
    """Matrix of delta^k: columns index AC^k, rows index AC^{k+1}."""
    if k < 0:
        raise ComplexError("negative degree")
    return _assemble(d, k, lambda j, gap, off: (-1) ** j * binomial(gap, off))


def localized_differential_matrix(p: int, N: int, d: int, k: int) -> SparseIntMatrix:
    """Differential of AC_{p,N}: binomials replaced by their p-factors, reduced mod p^N.

    Entries that vanish mod p^N are dropped, so the sparsity pattern can be
    smaller than that of the integral differential.
    """
    q = p**N
    return _assemble(d, k, lambda j, gap, off: (-1) ** j * p_factor(p, gap, off) % q)


def phi_entries(p: int, N: int, d: int, k: int) -> list[int]:
    """Diagonal of phi^k: product of F~_{p,N} over the gaps of each basis element."""
    q = p**N
    out = []
    for element in enumerate_basis(d, k):
        ext = (0,) + element + (d,)
        v = 1
        for lo, hi in zip(ext, ext[1:]):
            v = v * tilde_f(p, N, hi - lo).value % q
        out.append(v)
    return out


def phi_matrix(p: int, N: int, d: int, k: int) -> SparseIntMatrix:
    diag = phi_entries(p, N, d, k)
    return SparseIntMatrix(len(diag), len(diag), {(i, i): v for i, v in enumerate(diag)})


# ------------------------------------------------------------------ handle


class ComplexHandle:
    """Lazily built, memoized differentials of AC for one d.

    ``matrix(k)`` is delta^k; degrees outside 0..d-2 give zero matrices of
    the right shape (delta^{-1} maps from the zero group).
    """

    def __init__(self, d: int, modulus: int | None = None):
        if d < 1:
            raise ComplexError("d must be positive")
        self.d = d
        self.modulus = modulus
        self._matrices: dict[int, SparseIntMatrix] = {}

    def dim(self, k: int) -> int:
        if k < 0 or k > self.d - 1:
            return 0
        return math.comb(self.d - 1, k)

    def matrix(self, k: int) -> SparseIntMatrix:
        cached = self._matrices.get(k)
        if cached is not None:
            return cached
        if 0 <= k <= self.d - 1:
            m = differential_matrix(self.d, k)
        else:
            m = SparseIntMatrix(self.dim(k + 1), self.dim(k))
        if self.modulus is not None:
            m = m.reduce_mod(self.modulus)
        self._matrices[k] = m
        return m

    def estimated_nnz(self, k: int) -> int:
        """Nonzeros of delta^k: each basis element has d-1-k insertions."""
        return self.dim(k) * max(self.d - 1 - k, 0)

    def __repr__(self):
        return f"ComplexHandle(d={self.d}, modulus={self.modulus})"


# ------------------------------------------------------------------ complements and u_m


def complement_element(d: int, marks: Iterable[int]) -> BasisElement:
    """The basis element on {1..d-1} minus ``marks`` (written <marks>^c)."""
    marks = check_element(d, marks)
    taken = set(marks)
    return tuple(n for n in range(1, d) if n not in taken)


def complement_cochain(d: int, terms: Mapping[tuple[int, ...], int]) -> Cochain:
    """Cochain given in complement notation; all marks must have one length."""
    lengths = {len(m) for m in terms}
    if len(lengths) != 1:
        raise ComplexError("complement terms of mixed length")
    k = d - 1 - lengths.pop()
    out: dict[BasisElement, int] = {}
    for marks, c in terms.items():
        b = complement_element(d, marks)
        out[b] = out.get(b, 0) + c
    return Cochain(d, k, out)


def u_cochain(d: int, m: int) -> Cochain:
    """u_m = (-1)^m <m>^c + <1>^c in degree d-2."""
    if d < 3 or not 2 <= m <= d - 1:
        raise ComplexError(f"u_m needs d >= 3 and 2 <= m <= d-1, got d={d}, m={m}")
    return complement_cochain(d, {(m,): (-1) ** m, (1,): 1})


# ------------------------------------------------------------------ generators


def _exact_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r:
        raise AssertionError(f"{a} is not divisible by {b}")
    return q


def h1_generator(d: int) -> Cochain:
    """Coefficients C(d,k)/p for d = p^l."""
    pp = prime_power_decomposition(d)
    if pp is None:
        raise ComplexError(f"{d} is not a prime power")
    return Cochain.from_vector(d, 1, [_exact_div(binomial(d, k), pp.p) for k in range(1, d)])


def h2_generator(d: int, p: int, n: int, m: int) -> Cochain:
    """Generator of the p-torsion of H^2 for d = p^n (p^m + 1)."""
    if m < 1 or n < 0 or d != p**n * (p**m + 1):
        raise ComplexError(f"{d} != {p}^{n}({p}^{m}+1)")
    pn = p**n
    terms: dict[BasisElement, int] = {}
    for k in range(1, pn):
        terms[(k, pn)] = -_exact_div(binomial(pn, k), p)
    big = p ** (n + m)
    for l in range(1, big):
        terms[(pn, pn + l)] = terms.get((pn, pn + l), 0) + _exact_div(binomial(big, l), p)
    return Cochain(d, 2, terms)


def h2_generators(d: int) -> dict[int, tuple[int, int, Cochain]]:
    """For each p in J_d, its decomposition (n, m) and generator.

    The decomposition is unique: p does not divide p^m + 1, so n = v_p(d)
    and then m is determined.
    """
    out = {}
    for p in sorted(j_set(d)):
        n, m = decompose_a(p, d)
        out[p] = (n, m, h2_generator(d, p, n, m))
    return out


def h1_modpn_generator(p: int, N: int, d: int) -> Cochain:
    """Generator of H^1(AC ⊗ Z/p^N) for d in A(p) or B(p)."""
    in_a, in_b = membership_ab(p, d)
    q = p**N
    if in_a:
        n = valuation(p, d)
        return Cochain(d, 1, {(p**n,): p ** (N - 1)}, q)
    if in_b:
        return h1_generator(d).reduce(q)
    raise ComplexError(f"{d} lies in neither A({p}) nor B({p})")


def binomial_row(d: int) -> list[int]:
    return [binomial(d, k) for k in range(1, d)]


def exterior_cross_effect_dims(d: int) -> list[int]:
    """Ranks of the exterior-power analogue of AC in degrees 0..d-1.

    Degree k corresponds to the (k+1)-st cross-effect of Λ^d evaluated on
    copies of Z; by inclusion-exclusion its rank is
    sum_j (-1)^{k+1-j} C(k+1, j) C(j, d).
    """
    if d < 1:
        raise ComplexError("d must be positive")
    dims = []
    for k in range(d):
        a = k + 1
        dims.append(sum((-1) ** (a - j) * math.comb(a, j) * math.comb(j, d) for j in range(a + 1)))
    return dims


__all__ = [
    "BasisElement",
    "Cochain",
    "ComplexError",
    "ComplexHandle",
    "apply_differential",
    "basis_index",
    "binomial_row",
    "check_element",
    "complement_cochain",
    "complement_element",
    "differential",
    "differential_matrix",
    "enumerate_basis",
    "exterior_cross_effect_dims",
    "format_cochain",
    "h1_generator",
    "h1_modpn_generator",
    "h2_generator",
    "h2_generators",
    "localized_differential_matrix",
    "phi_entries",
    "phi_matrix",
    "u_cochain",
]
