"""Cohomology of AC over the integers and over Z/p^N."""

from __future__ import annotations

import math
from functools import lru_cache

from .arith import valuation
from .complex import (
    Cochain,
    ComplexHandle,
    apply_differential,
    localized_differential_matrix,
)
from .groups import (
    ZERO,
    primary_decomposition,
    AbelianGroup,
    GradedGroup,
    group_tensor,
    group_tor,
    kunneth_product,
)
from .linalg import (
    SmithForm,
    SparseIntMatrix,
    image_order,
    integer_rank,
    smith_normal_form,
    solve_integer_system,
)

__all__ = [
    "AbelianGroup",
    "GradedGroup",
    "HomologyError",
    "SmithForm",
    "SparseIntMatrix",
    "class_order",
    "group_tensor",
    "group_tor",
    "homology_all",
    "homology_at",
    "homology_mod_pn",
    "kernel_lattice_mod",
    "kunneth_product",
    "smith_normal_form",
    "solve_integer_system",
]


class HomologyError(RuntimeError):
    """Internal inconsistency: complex law violated or two routes disagree."""


def _handle(h) -> ComplexHandle:
    return h if isinstance(h, ComplexHandle) else _cached_handle(h)


@lru_cache(maxsize=64)
def _cached_handle(d: int) -> ComplexHandle:
    return ComplexHandle(d)


def _smith(handle: ComplexHandle, k: int, transforms: bool = False) -> SmithForm:
    cache = handle.__dict__.setdefault("_smith", {})
    form = cache.get(k)
    if form is None or (transforms and not form.has_transforms):
        form = smith_normal_form(handle.matrix(k), keep_transforms=transforms)
        cache[k] = form
    return form


def _check_law(handle: ComplexHandle, k: int):
    a, b = handle.matrix(k - 1), handle.matrix(k)
    if a.is_zero() or b.is_zero():
        return
    if not (b @ a).is_zero():
        raise HomologyError(f"delta^{k} delta^{k-1} != 0 for d={handle.d}")


def homology_at(handle, k: int, check: bool = True) -> AbelianGroup:
    """H^k(AC).

    The rank of delta^k is certified by a modular lower bound meeting the
    bound dim AC^k - rank delta^{k-1}; only delta^{k-1} needs a Smith form.
    """
    handle = _handle(handle)
    dim = handle.dim(k)
    if dim == 0:
        return ZERO
    if check:
        _check_law(handle, k)
    prev = _smith(handle, k - 1)
    upper = dim - prev.rank
    rank_k = integer_rank(handle.matrix(k), upper_bound=upper) if upper else 0
    free = dim - rank_k - prev.rank
    if free < 0:
        raise HomologyError("negative Betti number")
    return AbelianGroup(free, tuple(prev.invariant_factors()))


def homology_all(d: int) -> GradedGroup:
    handle = _handle(d)
    return GradedGroup({k: homology_at(handle, k) for k in range(d)})


def class_order(handle, k: int, z: Cochain) -> int | None:
    """Order of the class of the cocycle z in H^k; None stands for infinite order."""
    handle = _handle(handle)
    if z.k != k or z.d != handle.d:
        raise ValueError("cochain does not live in AC^k")
    if not apply_differential(z).is_zero():
        raise ValueError("not a cocycle")
    if k == 0:
        return 1 if z.is_zero() else None
    return image_order(_smith(handle, k - 1, transforms=True), z.to_vector())


def is_coboundary(handle, k: int, z: Cochain) -> bool:
    return class_order(handle, k, z) == 1


# ------------------------------------------------------------------ mod p^N


def _pn_part(n: int, p: int, N: int) -> int:
    """p^min(v_p(n), N), i.e. the order of Z/n ⊗ Z/p^N."""
    return p ** min(valuation(p, n), N)


def homology_mod_pn_uct(p: int, N: int, d: int, k: int) -> list[int]:
    """H^k(AC ⊗ Z/p^N) from integral Smith forms: H^k ⊗ Z/p^N ⊕ Tor(H^{k+1}, Z/p^N)."""
    handle = _handle(d)
    dim = handle.dim(k)
    if dim == 0:
        return []
    prev = _smith(handle, k - 1)
    cur = _smith(handle, k)
    free = dim - prev.rank - cur.rank
    orders = [p**N] * free
    orders += [_pn_part(t, p, N) for t in prev.diagonal]
    orders += [_pn_part(t, p, N) for t in cur.diagonal]
    return sorted(x for x in orders if x > 1)


def kernel_lattice_mod(A: SparseIntMatrix, q: int) -> tuple[SmithForm, list[int]]:
    """Lattice {x : A x ≡ 0 mod q} as V·diag(c): returns the Smith form and c."""
    form = smith_normal_form(A, keep_transforms=True)
    c = [q // math.gcd(t, q) for t in form.diagonal] + [1] * (A.cols - form.rank)
    return form, c


def lattice_coordinates(form: SmithForm, c: list[int], x) -> list[int] | None:
    """Coordinates of x in the basis V·diag(c), or None if x is not in the lattice."""
    y = form.apply_v_inverse(x)
    out = []
    for yi, ci in zip(y, c):
        if yi % ci:
            return None
        out.append(yi // ci)
    return out


def quotient_mod(prev: SparseIntMatrix, cur: SparseIntMatrix, q: int) -> list[int]:
    """Cyclic orders of ker(cur mod q) / im(prev mod q) for integer lifts."""
    n = cur.cols
    if n == 0:
        return []
    form, c = kernel_lattice_mod(cur, q)
    gens = [list(col.get(i, 0) for i in range(n)) for col in prev.col_dicts()]
    gens += [[q if i == j else 0 for i in range(n)] for j in range(n)]
    entries = {}
    for j, g in enumerate(gens):
        coords = lattice_coordinates(form, c, g)
        if coords is None:
            raise HomologyError("image is not contained in the kernel mod q")
        for i, v in enumerate(coords):
            if v:
                entries[i, j] = v
    rel = smith_normal_form(SparseIntMatrix(n, len(gens), entries))
    if rel.rank != n:
        raise HomologyError("quotient is not finite")
    return rel.invariant_factors()


def homology_mod_pn_lattice(p: int, N: int, d: int, k: int, localized: bool = True) -> list[int]:
    """H^k(AC ⊗ Z/p^N) by kernel/image lattices of lifted matrices.

    With ``localized`` the lifts are the differentials of the isomorphic
    complex AC_{p,N}, so no integral Smith form of AC is reused.
    """
    q = p**N
    handle = _handle(d)
    if handle.dim(k) == 0:
        return []
    if localized:
        prev = localized_differential_matrix(p, N, d, k - 1) if k else SparseIntMatrix(handle.dim(0), 0)
        cur = localized_differential_matrix(p, N, d, k)
    else:
        prev, cur = handle.matrix(k - 1), handle.matrix(k)
    return primary_decomposition(quotient_mod(prev, cur, q))


def homology_mod_pn(p: int, N: int, d: int, k: int) -> list[int]:
    """Cyclic orders p^{e_i} of H^k(AC ⊗ Z/p^N); both routes must agree."""
    a = homology_mod_pn_uct(p, N, d, k)
    b = homology_mod_pn_lattice(p, N, d, k)
    if a != b:
        raise HomologyError(f"mod {p}^{N} routes disagree at d={d}, k={k}: {a} vs {b}")
    return a


def in_image_mod(prev: SparseIntMatrix, z, q: int) -> bool:
    """Whether z ≡ prev·x (mod q) for some integer x."""
    n = len(z)
    aug = prev.hstack(SparseIntMatrix(n, n, {(i, i): q for i in range(n)}))
    return solve_integer_system(aug, list(z)) is not None
