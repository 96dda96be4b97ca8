"""Finitely generated abelian groups and graded groups in canonical form."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping


def _factor(n: int) -> list[tuple[int, int]]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            e = 0
            while n % f == 0:
                n //= f
                e += 1
            out.append((f, e))
        f += 1
    if n > 1:
        out.append((n, 1))
    return out


def primary_decomposition(orders: Iterable[int]) -> list[int]:
    """Prime-power orders of the cyclic summands, ascending."""
    out = []
    for n in orders:
        out.extend(p**e for p, e in _factor(n))
    return sorted(out)


def divisor_chain(orders: Iterable[int]) -> list[int]:
    """Invariant factors d_1 | d_2 | ... of a sum of cyclic groups (orders > 1)."""
    by_prime: dict[int, list[int]] = {}
    for q in primary_decomposition(orders):
        p = _factor(q)[0][0]
        by_prime.setdefault(p, []).append(q)
    length = max((len(v) for v in by_prime.values()), default=0)
    chain = [1] * length
    for powers in by_prime.values():
        # largest powers go to the largest invariant factors
        for idx, q in enumerate(sorted(powers, reverse=True)):
            chain[length - 1 - idx] *= q
    return chain


@dataclass(frozen=True)
class AbelianGroup:
    """Z^rank ⊕ Z/t_1 ⊕ ... with t_1 | t_2 | ... all at least 2."""

    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("negative rank")
        if any(t < 1 for t in self.torsion):
            raise ValueError("torsion orders must be positive")
        object.__setattr__(self, "torsion", tuple(divisor_chain(t for t in self.torsion if t != 1)))

    @classmethod
    def cyclic(cls, n: int) -> "AbelianGroup":
        """Z for n = 0, otherwise Z/n."""
        return cls(1) if n == 0 else cls(0, (n,))

    @classmethod
    def direct_sum(cls, groups: Iterable["AbelianGroup"]) -> "AbelianGroup":
        rank, torsion = 0, []
        for g in groups:
            rank += g.rank
            torsion.extend(g.torsion)
        return cls(rank, tuple(torsion))

    def __add__(self, other: "AbelianGroup") -> "AbelianGroup":
        return AbelianGroup.direct_sum([self, other])

    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def is_finite(self) -> bool:
        return self.rank == 0

    def order(self) -> int | None:
        return math.prod(self.torsion) if self.rank == 0 else None

    def primary(self) -> list[int]:
        return primary_decomposition(self.torsion)

    def _render(self, parts: list[int]) -> str:
        terms = []
        if self.rank == 1:
            terms.append("Z")
        elif self.rank > 1:
            terms.append(f"Z^{self.rank}")
        terms += [f"Z/{t}" for t in parts]
        return " + ".join(terms) or "0"

    def __str__(self) -> str:
        """Canonical form with torsion as prime powers, e.g. ``Z/2 + Z/5``."""
        return self._render(self.primary())

    def chain_str(self) -> str:
        """Invariant-factor rendering, e.g. ``Z/10``."""
        return self._render(list(self.torsion))

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": self.primary()}

    @classmethod
    def from_json(cls, data: Mapping) -> "AbelianGroup":
        return cls(int(data["rank"]), tuple(data["torsion"]))

    @classmethod
    def parse(cls, text: str) -> "AbelianGroup":
        """Read ``0``, ``Z``, ``Z^2 + Z/4``, ``(Z/2)^3 + Z/3`` and similar."""
        text = text.strip()
        if text == "0":
            return cls()
        rank, torsion = 0, []
        for part in re.split(r"\s*(?:\+|⊕)\s*", text):
            m = re.fullmatch(r"Z(?:\^(\d+))?", part)
            if m:
                rank += int(m.group(1) or 1)
                continue
            m = re.fullmatch(r"\(?Z/(\d+)\)?(?:\^(\d+))?", part)
            if not m:
                raise ValueError(f"cannot parse group {text!r}")
            torsion += [int(m.group(1))] * int(m.group(2) or 1)
        return cls(rank, tuple(torsion))


ZERO = AbelianGroup()
Z = AbelianGroup(1)


def group_tensor(a: AbelianGroup, b: AbelianGroup) -> AbelianGroup:
    torsion = [math.gcd(s, t) for s in a.torsion for t in b.torsion]
    torsion += list(a.torsion) * b.rank + list(b.torsion) * a.rank
    return AbelianGroup(a.rank * b.rank, tuple(torsion))


def group_tor(a: AbelianGroup, b: AbelianGroup) -> AbelianGroup:
    return AbelianGroup(0, tuple(math.gcd(s, t) for s in a.torsion for t in b.torsion))


@dataclass(frozen=True)
class GradedGroup:
    """Finitely supported map from degree to group; zero groups are not stored."""

    parts: Mapping[int, AbelianGroup] = field(default_factory=dict)

    def __post_init__(self):
        clean = {int(k): g for k, g in sorted(self.parts.items()) if not g.is_zero()}
        object.__setattr__(self, "parts", clean)

    def __getitem__(self, degree: int) -> AbelianGroup:
        return self.parts.get(degree, ZERO)

    def __eq__(self, other):
        if not isinstance(other, GradedGroup):
            return NotImplemented
        return dict(self.parts) == dict(other.parts)

    def __hash__(self):
        return hash(tuple(self.parts.items()))

    def degrees(self) -> list[int]:
        return list(self.parts)

    def __add__(self, other: "GradedGroup") -> "GradedGroup":
        keys = set(self.parts) | set(other.parts)
        return GradedGroup({k: self[k] + other[k] for k in keys})

    def to_json(self) -> dict[str, str]:
        return {str(k): str(g) for k, g in self.parts.items()}

    @classmethod
    def from_strings(cls, data: Mapping) -> "GradedGroup":
        return cls({int(k): AbelianGroup.parse(v) for k, v in data.items()})

    def __str__(self) -> str:
        if not self.parts:
            return "{}"
        return "{" + ", ".join(f"{k}: {g}" for k, g in self.parts.items()) + "}"


def kunneth_product(g: GradedGroup, h: GradedGroup) -> GradedGroup:
    """Degree k: sum of G_a ⊗ H_b over a+b=k plus Tor(G_a, H_b) over a+b=k+1."""
    out: dict[int, list[AbelianGroup]] = {}
    for a, ga in g.parts.items():
        for b, hb in h.parts.items():
            out.setdefault(a + b, []).append(group_tensor(ga, hb))
            out.setdefault(a + b - 1, []).append(group_tor(ga, hb))
    return GradedGroup({k: AbelianGroup.direct_sum(v) for k, v in out.items()})
