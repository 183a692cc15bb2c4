"""Symmetric tensors of the Pascal family.

A tensor stores one value per symmetry class, keyed by the sorted 1-based
multi-index.  Values are ``int``/``Fraction`` for exact tensors and ``float``
for the Gamma-valued and fractional-power families.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations_with_replacement
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .exact_arith import binomial, factorial, format_exact, parse_exact

MAX_CLASSES = 5_000_000


class FeasibilityError(ValueError):
    """Requested object exceeds the desk-scale size guard."""


def class_count(m: int, n: int) -> int:
    """Number of symmetry classes C(n+m-1, m) of an order-m dimension-n tensor."""
    return binomial(n + m - 1, m)


def multiplicity(idx: Sequence[int]) -> int:
    """Number of distinct orderings of ``idx``."""
    out = factorial(len(idx))
    for c in Counter(idx).values():
        out //= factorial(c)
    return out


def sorted_indices(m: int, n: int) -> Iterator[tuple[int, ...]]:
    return combinations_with_replacement(range(1, n + 1), m)


@dataclass(frozen=True)
class SymmetricTensor:
    order: int
    dim: int
    entries: dict[tuple[int, ...], object] = field(repr=False)
    kind: str = "custom"

    def __post_init__(self):
        if self.order < 1 or self.dim < 1:
            raise ValueError(f"bad shape order={self.order} dim={self.dim}")
        if len(self.entries) != class_count(self.order, self.dim):
            raise ValueError("entry map does not cover every symmetry class")

    @classmethod
    def from_function(
        cls,
        m: int,
        n: int,
        fn: Callable[[tuple[int, ...]], object],
        kind: str = "custom",
        cap: int = MAX_CLASSES,
    ) -> SymmetricTensor:
        count = class_count(m, n)
        if count > cap:
            raise FeasibilityError(
                f"order {m} dim {n} tensor has {count} symmetry classes (cap {cap})"
            )
        return cls(m, n, {idx: fn(idx) for idx in sorted_indices(m, n)}, kind)

    @property
    def exact(self) -> bool:
        return not any(isinstance(v, float) for v in self.entries.values())

    def __getitem__(self, idx: Iterable[int]):
        key = tuple(sorted(idx))
        if len(key) != self.order or not all(1 <= i <= self.dim for i in key):
            raise IndexError(f"index {tuple(idx)} out of range for order {self.order} dim {self.dim}")
        return self.entries[key]

    def items(self):
        return self.entries.items()

    def map(self, fn: Callable[[object], object], kind: str | None = None) -> SymmetricTensor:
        return SymmetricTensor(
            self.order, self.dim, {k: fn(v) for k, v in self.entries.items()}, kind or self.kind
        )

    def __neg__(self) -> SymmetricTensor:
        return self.map(lambda v: -v)

    @cached_property
    def _dense(self) -> np.ndarray:
        arr = np.empty((self.dim,) * self.order)
        for idx in np.ndindex(*arr.shape):
            arr[idx] = float(self.entries[tuple(sorted(i + 1 for i in idx))])
        arr.flags.writeable = False
        return arr

    def to_numpy(self) -> np.ndarray:
        """Dense float array of shape (n,)*m."""
        return self._dense.copy()

    def dumps(self) -> str:
        lines = [f"order {self.order} dim {self.dim} {self.kind}"]
        for idx, v in self.entries.items():
            value = repr(float(v)) if isinstance(v, float) else format_exact(v)
            lines.append(" ".join(map(str, idx)) + " " + value)
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> SymmetricTensor:
        rows = [ln.split() for ln in text.splitlines() if ln.strip()]
        head = rows[0]
        if len(head) != 5 or head[0] != "order" or head[2] != "dim":
            raise ValueError(f"bad tensor header: {' '.join(head)!r}")
        m, n, kind = int(head[1]), int(head[3]), head[4]
        entries = {}
        for row in rows[1:]:
            if len(row) != m + 1:
                raise ValueError(f"bad tensor line: {' '.join(row)!r}")
            idx = tuple(sorted(int(i) for i in row[:m]))
            raw = row[m]
            entries[idx] = parse_exact(raw) if "." not in raw and "e" not in raw.lower() else float(raw)
        return cls(m, n, entries, kind)


def pascal_entry(idx: Sequence[int]) -> int:
    """(i_1+...+i_m-m)! / prod (i_k-1)!, a multinomial coefficient."""
    out = factorial(sum(idx) - len(idx))
    for i in idx:
        out //= factorial(i - 1)
    return out


def build_pascal(m: int, n: int, cap: int = MAX_CLASSES) -> SymmetricTensor:
    if m < 2 or n < 1:
        raise ValueError(f"Pascal tensor needs m >= 2, n >= 1 (got {m}, {n})")
    return SymmetricTensor.from_function(m, n, pascal_entry, "pascal", cap)


def build_identity(m: int, n: int) -> SymmetricTensor:
    """Diagonal tensor with ones on the superdiagonal."""
    return SymmetricTensor.from_function(m, n, lambda idx: int(idx[0] == idx[-1]), "identity")


def build_ones(m: int, n: int) -> SymmetricTensor:
    return SymmetricTensor.from_function(m, n, lambda idx: 1, "ones")


def build_generalized_pascal(m: int, c: Sequence[float], cap: int = MAX_CLASSES) -> SymmetricTensor:
    """Gamma(sum c_i + 1) / prod Gamma(c_i + 1) over the index tuple."""
    c = [float(ci) for ci in c]
    if m < 2:
        raise ValueError(f"need m >= 2, got {m}")
    if any(ci < 0 or not math.isfinite(ci) for ci in c):
        raise ValueError(f"generating vector must be finite and nonnegative: {c}")

    def entry(idx):
        total = sum(c[i - 1] for i in idx)
        try:
            value = math.gamma(total + 1)
            for i in idx:
                value /= math.gamma(c[i - 1] + 1)
        except OverflowError:
            raise OverflowError(f"Gamma overflow at index {idx} (index sum {total})") from None
        if not math.isfinite(value):
            raise OverflowError(f"Gamma overflow at index {idx} (index sum {total})")
        return value

    return SymmetricTensor.from_function(m, len(c), entry, "gpascal", cap)


def build_generalized_hilbert(m: int, n: int, c=1, cap: int = MAX_CLASSES) -> SymmetricTensor:
    c = Fraction(c)
    if c <= 0:
        raise ValueError(f"Hilbert parameter must be positive, got {c}")
    if m < 2 or n < 1:
        raise ValueError(f"need m >= 2, n >= 1 (got {m}, {n})")
    return SymmetricTensor.from_function(
        m, n, lambda idx: 1 / (sum(idx) - m + c), "ghilbert", cap
    )


def hadamard_power(t: SymmetricTensor, alpha: float) -> SymmetricTensor:
    if alpha <= 0:
        raise ValueError(f"Hadamard exponent must be positive, got {alpha}")
    neg = [idx for idx, v in t.items() if v < 0]
    if neg:
        raise ValueError(f"Hadamard power of a tensor with negative entry at {neg[0]}")
    return t.map(lambda v: float(v) ** alpha, kind=f"{t.kind}^{alpha}")


def slice_fix_first(t: SymmetricTensor, count: int = 1) -> SymmetricTensor:
    """Sub-tensor with the leading ``count`` indices pinned to 1."""
    if count not in (1, 2):
        raise ValueError(f"count must be 1 or 2, got {count}")
    if t.order - count < 2:
        raise ValueError(f"cannot fix {count} indices of an order-{t.order} tensor")
    head = (1,) * count
    return SymmetricTensor.from_function(
        t.order - count, t.dim, lambda idx: t.entries[head + idx], t.kind
    )


def _check_vector(t: SymmetricTensor, x) -> None:
    if len(x) != t.dim:
        raise ValueError(f"vector of length {len(x)} does not match dimension {t.dim}")


def _monomial(x, idx) -> object:
    out = 1
    for i in idx:
        out = out * x[i - 1]
    return out


def apply_xm(t: SymmetricTensor, x):
    """Full contraction A x^m."""
    _check_vector(t, x)
    if isinstance(x, np.ndarray) and not t.exact:
        arr = t._dense
        for _ in range(t.order):
            arr = arr @ x
        return float(arr)
    total = 0
    for idx, v in t.items():
        total += multiplicity(idx) * v * _monomial(x, idx)
    return total


def apply_xm1(t: SymmetricTensor, x) -> list:
    """Vector A x^{m-1}, component i = sum a_{i i_2..i_m} x_{i_2}..x_{i_m}."""
    _check_vector(t, x)
    if isinstance(x, np.ndarray) and not t.exact:
        arr = t._dense
        for _ in range(t.order - 1):
            arr = arr @ x
        return arr
    out = []
    tails = list(sorted_indices(t.order - 1, t.dim))
    for i in range(1, t.dim + 1):
        acc = 0
        for tail in tails:
            acc += multiplicity(tail) * t[(i,) + tail] * _monomial(x, tail)
        out.append(acc)
    return out


def binary_form_coefficients(t: SymmetricTensor) -> tuple[list, list]:
    """Coefficients of (A x^{m-1})_1 and (A x^{m-1})_2 in the basis x1^{m-1-k} x2^k."""
    if t.dim != 2:
        raise ValueError(f"binary forms need dimension 2, got {t.dim}")
    m = t.order
    forms = []
    for i in (1, 2):
        forms.append(
            [binomial(m - 1, k) * t[(i,) + (1,) * (m - 1 - k) + (2,) * k] for k in range(m)]
        )
    return forms[0], forms[1]
