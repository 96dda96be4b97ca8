"""The extension 0 -> S^d -> E_d -> I -> 0 for d = p^l, as explicit matrices.

Morphisms of the free category on the generators ``_n[f]_m = id_n ⊕ f ⊕ id_m``
(f among tau, nabla, delta, epsilon, eta, antipode) are sent to block
matrices ``[[S^d(g), D_d(g)], [0, I(g)]]`` acting on ``S^d(Z^s) ⊕ Z^s``.
Relations of a bicommutative Hopf algebra are then checked as exact matrix
identities at bounded rank.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .arith import binomial, prime_power_decomposition

# arity (source, target) and underlying integer matrix of each generator
_GENERATORS: dict[str, tuple[int, int, tuple[tuple[int, ...], ...]]] = {
    "tau": (2, 2, ((0, 1), (1, 0))),
    "nabla": (2, 1, ((1, 1),)),
    "delta": (1, 2, ((1,), (1,))),
    "epsilon": (1, 0, ()),
    "eta": (0, 1, ((),)),
    "antipode": (1, 1, ((-1,),)),
}
KINDS = tuple(_GENERATORS)

# entries beyond this make int64 products unsafe; switch to Python ints
_INT64_SAFE = 1 << 62


class HopfError(ValueError):
    """Invalid generator, non-composable word or non-prime-power degree."""


@dataclass(frozen=True, order=True)
class GeneratorSpec:
    kind: str
    n: int = 0
    m: int = 0

    def __post_init__(self):
        if self.kind not in _GENERATORS:
            raise HopfError(f"unknown generator {self.kind!r}")
        if self.n < 0 or self.m < 0:
            raise HopfError("paddings must be nonnegative")

    @property
    def source(self) -> int:
        return self.n + _GENERATORS[self.kind][0] + self.m

    @property
    def target(self) -> int:
        return self.n + _GENERATORS[self.kind][1] + self.m

    def linear_map(self) -> np.ndarray:
        """I(g) as a target x source integer matrix."""
        s, t, core = _GENERATORS[self.kind]
        out = np.zeros((self.target, self.source), dtype=np.int64)
        for i in range(self.n):
            out[i, i] = 1
        for i, row in enumerate(core):
            for j, v in enumerate(row):
                out[self.n + i, self.n + j] = v
        for i in range(self.m):
            out[self.n + t + i, self.n + s + i] = 1
        return out

    def __str__(self):
        return f"_{self.n}[{self.kind}]_{self.m}"


def gen(kind: str, n: int = 0, m: int = 0) -> GeneratorSpec:
    return GeneratorSpec(kind, n, m)


# ------------------------------------------------------------------ symmetric powers


@lru_cache(maxsize=None)
def monomials(rank: int, d: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of degree d in ``rank`` variables, lexicographically descending."""
    if rank == 0:
        return ((),) if d == 0 else ()
    out = []
    for first in range(d, -1, -1):
        for rest in monomials(rank - 1, d - first):
            out.append((first,) + rest)
    return tuple(out)


def _monomial_index(rank: int, d: int) -> dict[tuple[int, ...], int]:
    return {a: i for i, a in enumerate(monomials(rank, d))}


def _poly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def _poly_pow(a: dict, k: int, rank: int) -> dict:
    out = {(0,) * rank: 1}
    for _ in range(k):
        out = _poly_mul(out, a)
    return out


def symmetric_power_of(matrix: np.ndarray, d: int) -> np.ndarray:
    """S^d of an integer linear map given as a target x source matrix."""
    t, s = matrix.shape
    rows = _monomial_index(t, d)
    cols = monomials(s, d)
    out = np.zeros((len(rows), len(cols)), dtype=object)
    images = []
    for i in range(s):
        form = {}
        for j in range(t):
            if matrix[j, i]:
                e = [0] * t
                e[j] = 1
                form[tuple(e)] = int(matrix[j, i])
        images.append(form)
    for c, alpha in enumerate(cols):
        poly = {(0,) * t: 1}
        for i, a in enumerate(alpha):
            if a:
                poly = _poly_mul(poly, _poly_pow(images[i], a, t))
        for e, v in poly.items():
            out[rows[e], c] = v
    return _narrow(out)


def symmetric_power_matrix(g: GeneratorSpec, d: int) -> np.ndarray:
    return _sym_cached(g, d)


@lru_cache(maxsize=4096)
def _sym_cached(g: GeneratorSpec, d: int) -> np.ndarray:
    return symmetric_power_of(g.linear_map(), d)


def _check_degree(d: int) -> int:
    pp = prime_power_decomposition(d)
    if pp is None:
        raise HopfError(f"{d} is not a prime power")
    return pp.p


def d_block(g: GeneratorSpec, d: int) -> np.ndarray:
    """D_d(g): I(source) -> S^d(target); nonzero only for antipode and delta."""
    p = _check_degree(d)
    rows = _monomial_index(g.target, d)
    out = np.zeros((len(rows), g.source), dtype=object)
    n = g.n
    if g.kind == "antipode":
        e = [0] * g.target
        e[n] = d
        out[rows[tuple(e)], n] = (1 + (-1) ** d) // p
    elif g.kind == "delta":
        for k in range(1, d):
            e = [0] * g.target
            e[n], e[n + 1] = k, d - k
            out[rows[tuple(e)], n] = binomial(d, k) // p
    return _narrow(out)


def ed_matrix(g: GeneratorSpec, d: int) -> np.ndarray:
    return _ed_cached(g, d)


@lru_cache(maxsize=4096)
def _ed_cached(g: GeneratorSpec, d: int) -> np.ndarray:
    _check_degree(d)
    sym = symmetric_power_matrix(g, d)
    top = np.concatenate([_obj(sym), _obj(d_block(g, d))], axis=1)
    bottom = np.concatenate([np.zeros((g.target, sym.shape[1]), dtype=object), _obj(g.linear_map())], axis=1)
    out = _narrow(np.concatenate([top, bottom], axis=0))
    out.setflags(write=False)
    return out


def ed_dim(rank: int, d: int) -> int:
    return len(monomials(rank, d)) + rank


def ed_legend(rank: int, d: int) -> list[str]:
    """Basis labels of E_d(rank): monomials then the generators of I."""
    def mono(a):
        parts = [f"e{i + 1}" + (f"^{x}" if x > 1 else "") for i, x in enumerate(a) if x]
        return "*".join(parts) or "1"

    return [mono(a) for a in monomials(rank, d)] + [f"e{i + 1}" for i in range(rank)]


def _obj(a: np.ndarray) -> np.ndarray:
    return a.astype(object)


def _narrow(a: np.ndarray) -> np.ndarray:
    """int64 when every entry fits comfortably, else an object array of Python ints."""
    if a.size == 0:
        return a.astype(np.int64)
    big = max(abs(int(x)) for x in a.flat)
    return a.astype(np.int64) if big < (1 << 31) else a.astype(object)


def _matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.dtype == np.int64 and b.dtype == np.int64 and a.size and b.size:
        bound = int(np.abs(a).max()) * int(np.abs(b).max()) * a.shape[1]
        if bound < _INT64_SAFE:
            return a @ b
    return _narrow(_obj(a) @ _obj(b))


# ------------------------------------------------------------------ words and relations

Word = tuple[GeneratorSpec, ...]  # applied left to right


def word_source(word: Word, default: int | None = None) -> int:
    if not word:
        if default is None:
            raise HopfError("empty word needs an explicit object")
        return default
    return word[0].source


def check_composable(word: Word):
    for a, b in zip(word, word[1:]):
        if a.target != b.source:
            raise HopfError(f"{a} ends at {a.target} but {b} starts at {b.source}")


def word_matrix(word: Word, d: int, rank: int | None = None) -> np.ndarray:
    """E_d of a word (first generator applied first); empty word is the identity on ``rank``."""
    check_composable(word)
    out = np.eye(ed_dim(word_source(word, rank), d), dtype=np.int64)
    for g in word:
        out = _matmul(ed_matrix(g, d), out)
    return out


def linear_word_matrix(word: Word, rank: int | None = None) -> np.ndarray:
    check_composable(word)
    out = np.eye(word_source(word, rank), dtype=np.int64)
    for g in word:
        out = g.linear_map() @ out
    return out


@dataclass(frozen=True)
class Relation:
    family: str
    lhs: Word
    rhs: Word
    rank: int  # common source object

    def objects(self) -> list[int]:
        seen = [self.rank]
        for w in (self.lhs, self.rhs):
            seen += [g.target for g in w]
        return seen

    def describe(self) -> str:
        def show(w):
            return " . ".join(str(g) for g in reversed(w)) or f"id_{self.rank}"

        return f"{self.family}: {show(self.lhs)} ~ {show(self.rhs)}"


def check_relation(d: int, rel: Relation) -> bool:
    """Both words have the same source and target and equal E_d matrices."""
    for w in (rel.lhs, rel.rhs):
        check_composable(w)
        if word_source(w, rel.rank) != rel.rank:
            raise HopfError(f"{rel.describe()} does not start at {rel.rank}")
    a = word_matrix(rel.lhs, d, rel.rank)
    b = word_matrix(rel.rhs, d, rel.rank)
    return a.shape == b.shape and bool(np.array_equal(_obj(a), _obj(b)))


def _block_braid(a: int, n: int, m: int) -> Word:
    """Moves a block of a strands past one strand: (x_1..x_a, y) -> (y, x_1..x_a)."""
    return tuple(gen("tau", n + i, m + a - 1 - i) for i in range(a - 1, -1, -1))


def _block_braid_rev(a: int, n: int, m: int) -> Word:
    """(y, x_1..x_a) -> (x_1..x_a, y)."""
    return tuple(gen("tau", n + i, m + a - 1 - i) for i in range(a))


def relation_instances(max_rank: int) -> list[Relation]:
    """Every relation instance whose intermediate objects have rank <= max_rank."""
    rels: list[Relation] = []

    def add(family, lhs, rhs, rank):
        r = Relation(family, tuple(lhs), tuple(rhs), rank)
        if max(r.objects()) <= max_rank:
            rels.append(r)

    arity = {k: (v[0], v[1]) for k, v in _GENERATORS.items()}
    pads = [(n, m) for n in range(max_rank + 1) for m in range(max_rank + 1 - n)]

    for (n, m), f1, f2 in itertools.product(pads, KINDS, KINDS):
        s1, t1 = arity[f1]
        s2, t2 = arity[f2]
        for a in range(max_rank + 1):
            lhs = (gen(f2, n + s1 + a, m), gen(f1, n, a + t2 + m))
            rhs = (gen(f1, n, a + s2 + m), gen(f2, n + t1 + a, m))
            add("monoidality", lhs, rhs, n + s1 + a + s2 + m)

    for n, m in pads:
        t = lambda i, j: gen("tau", i, j)  # noqa: E731
        add("symmetry involution", (t(n, m), t(n, m)), (), n + 2 + m)
        add("braid", (t(n, m + 1), t(n + 1, m), t(n, m + 1)), (t(n + 1, m), t(n, m + 1), t(n + 1, m)), n + 3 + m)
        for f in KINDS:
            s, tt = arity[f]
            # (f ⊕ id_1) then braid  ~  braid then (id_1 ⊕ f)
            add("symmetry naturality", (gen(f, n, m + 1),) + _block_braid(tt, n, m),
                _block_braid(s, n, m) + (gen(f, n + 1, m),), n + s + 1 + m)
            add("symmetry naturality", (gen(f, n + 1, m),) + _block_braid_rev(tt, n, m),
                _block_braid_rev(s, n, m) + (gen(f, n, m + 1),), n + s + 1 + m)

        nab, dl = (lambda i, j: gen("nabla", i, j)), (lambda i, j: gen("delta", i, j))
        eta, eps, anti = (lambda i, j: gen("eta", i, j)), (lambda i, j: gen("epsilon", i, j)), (lambda i, j: gen("antipode", i, j))
        r1 = n + 1 + m
        add("associativity", (nab(n, m + 1), nab(n, m)), (nab(n + 1, m), nab(n, m)), n + 3 + m)
        add("unit", (eta(n, m + 1), nab(n, m)), (), r1)
        add("unit", (eta(n + 1, m), nab(n, m)), (), r1)
        add("commutativity", (gen("tau", n, m), nab(n, m)), (nab(n, m),), n + 2 + m)
        add("coassociativity", (dl(n, m), dl(n, m + 1)), (dl(n, m), dl(n + 1, m)), r1)
        add("counit", (dl(n, m), eps(n, m + 1)), (), r1)
        add("counit", (dl(n, m), eps(n + 1, m)), (), r1)
        add("cocommutativity", (dl(n, m), gen("tau", n, m)), (dl(n, m),), r1)
        add("antipode", (dl(n, m), anti(n, m + 1), nab(n, m)), (eps(n, m), eta(n, m)), r1)
        add("antipode", (dl(n, m), anti(n + 1, m), nab(n, m)), (eps(n, m), eta(n, m)), r1)
        add("bialgebra", (nab(n, m), dl(n, m)),
            (dl(n, m + 1), dl(n + 2, m), gen("tau", n + 1, m + 1), nab(n, m + 2), nab(n + 1, m)), n + 2 + m)
        # alternate representative: the two multiplications in the other order
        add("bialgebra (alternate)", (nab(n, m), dl(n, m)),
            (dl(n, m + 1), dl(n + 2, m), gen("tau", n + 1, m + 1), nab(n + 2, m), nab(n, m + 1)), n + 2 + m)
        add("unit-counit", (eta(n, m), eps(n, m)), (), n + m)
        add("counit of product", (nab(n, m), eps(n, m)), (eps(n, m + 1), eps(n, m)), n + 2 + m)
        add("coproduct of unit", (eta(n, m), dl(n, m)), (eta(n, m), eta(n, m + 1)), n + m)
    return rels


@dataclass
class RelationReport:
    d: int
    max_rank: int
    checked: int
    families: dict[str, int]
    failure: str | None

    @property
    def passed(self) -> bool:
        return self.failure is None

    def to_json(self) -> dict:
        return {
            "theorem": "hopf-relations",
            "params": {"d": self.d, "rank": self.max_rank},
            "checked": self.checked,
            "families": self.families,
            "failure": self.failure,
            "verdict": "pass" if self.passed else "fail",
        }


def check_all_relations(d: int, max_rank: int = 4) -> RelationReport:
    _check_degree(d)
    families: dict[str, int] = {}
    checked = 0
    for rel in relation_instances(max_rank):
        # the underlying linear maps must agree, otherwise the instance is mis-generated
        lin_ok = np.array_equal(linear_word_matrix(rel.lhs, rel.rank), linear_word_matrix(rel.rhs, rel.rank))
        if not lin_ok or not check_relation(d, rel):
            return RelationReport(d, max_rank, checked, families, rel.describe())
        checked += 1
        families[rel.family] = families.get(rel.family, 0) + 1
    return RelationReport(d, max_rank, checked, families, None)


# ------------------------------------------------------------------ non-splitting


def _solve_affine(a: list[Fraction], b: list[Fraction]) -> tuple[str, Fraction | None]:
    """Solve a_r x + b_r = 0 for all r; returns (status, x)."""
    x = None
    for ar, br in zip(a, b):
        if ar == 0:
            if br != 0:
                return "inconsistent", None
            continue
        cand = -br / ar
        if x is not None and cand != x:
            return "inconsistent", None
        x = cand
    return ("unique", x) if x is not None else ("unconstrained", None)


def section_obstruction(d: int) -> dict:
    """Constraint on a section s(e) = (λ e^d, e) from E_d(Δ - id⊕η - η⊕id) s = 0.

    The unique rational solution is λ = -1/p, which is not an integer, so the
    extension has no natural section.  For p = 2 the GL-equivariant variant
    with the antipode gives 2v = -1 on the coefficient of e^d.
    """
    p = _check_degree(d)
    bar = (_obj(ed_matrix(gen("delta"), d)) - _obj(ed_matrix(gen("eta", 1, 0), d))
           - _obj(ed_matrix(gen("eta", 0, 1), d)))
    # columns: e^d then e
    a = [Fraction(int(x)) for x in bar[:, 0]]
    b = [Fraction(int(x)) for x in bar[:, 1]]
    status, lam = _solve_affine(a, b)
    out = {
        "d": d,
        "p": p,
        "status": status,
        "lambda": str(lam) if lam is not None else None,
        "expected": str(Fraction(-1, p)),
        "integral": lam is not None and lam.denominator == 1,
    }
    # equivariance under the antipode: (E(S) + 1) (v e^d, e) = 0
    anti = _obj(ed_matrix(gen("antipode"), d)) + np.eye(2, dtype=object)
    status_v, v = _solve_affine([Fraction(int(x)) for x in anti[:, 0]], [Fraction(int(x)) for x in anti[:, 1]])
    out["equivariant"] = {
        "status": status_v,
        "v": str(v) if v is not None else None,
        "integral": v is not None and v.denominator == 1,
    }
    out["certified"] = status == "unique" and lam == Fraction(-1, p) and not out["integral"]
    if p == 2:
        out["certified"] = out["certified"] and status_v == "unique" and v == Fraction(-1, 2)
    return out
