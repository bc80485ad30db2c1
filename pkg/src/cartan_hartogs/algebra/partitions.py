"""Integer partitions with the multiplicity data used by power-sum expansions."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import factorial, prod


@dataclass(frozen=True, order=True)
class Partition:
    """A weakly decreasing tuple of positive parts; zeros are dropped on construction."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 0 for p in parts):
            raise ValueError(f"negative part in {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", tuple(p for p in parts if p))

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def multiplicities(self) -> dict[int, int]:
        """``{i: m_i}``, the number of parts equal to ``i``."""
        return dict(sorted(Counter(self.parts).items()))

    @property
    def z(self) -> int:
        """Symmetry factor ``prod_i i**m_i * m_i!``; the centralizer order of the cycle type."""
        return prod(i**m * factorial(m) for i, m in self.multiplicities.items())

    def padded(self, length: int) -> tuple[int, ...]:
        return self.parts + (0,) * (length - len(self.parts))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


def partitions(weight: int, max_len: int | None = None) -> list[Partition]:
    """All partitions of ``weight`` with at most ``max_len`` parts, reverse-lex order."""
    if weight < 0:
        raise ValueError("weight must be nonnegative")
    if max_len is None:
        max_len = weight
    out: list[Partition] = []

    def rec(remaining: int, cap: int, prefix: list[int]) -> None:
        if remaining == 0:
            out.append(Partition(tuple(prefix)))
            return
        if len(prefix) == max_len:
            return
        for part in range(min(remaining, cap), 0, -1):
            prefix.append(part)
            rec(remaining - part, part, prefix)
            prefix.pop()

    rec(weight, weight, [])
    return out
