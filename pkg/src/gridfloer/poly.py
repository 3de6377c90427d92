"""Bigraded rank tables and Laurent polynomials with doubled exponents.

A table maps ``(alexander, maslov)`` to a coefficient, where ``alexander``
is a tuple of doubled Alexander gradings (one per link component).  The
generating function is sum c * q^maslov * t^alexander.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from typing import Iterable, Mapping

Alex = tuple[int, ...]
Bigrading = tuple[Alex, int]


class DivisionError(ArithmeticError):
    def __init__(self, message: str, residual: Mapping):
        super().__init__(f"{message}; residual {dict(residual)}")
        self.residual = dict(residual)


def _half(d: int) -> str:
    return str(d // 2) if d % 2 == 0 else f"{d}/2"


class Laurent:
    """Integer Laurent polynomial in t_1..t_l; exponents stored doubled."""

    def __init__(self, terms: Mapping[Alex, int] | Iterable[tuple[Alex, int]] = (), nvars: int | None = None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: Counter = Counter()
        for exp, c in items:
            acc[tuple(exp)] += c
        self.terms = {e: c for e, c in acc.items() if c}
        if nvars is None:
            nvars = len(next(iter(self.terms))) if self.terms else 1
        self.nvars = nvars

    @classmethod
    def monomial(cls, exp: Alex, coeff: int = 1) -> "Laurent":
        return cls({tuple(exp): coeff}, nvars=len(exp))

    @classmethod
    def from_coefficients(cls, coeffs: Mapping[int, int]) -> "Laurent":
        """One variable, integer (non-doubled) exponents."""
        return cls({(2 * e,): c for e, c in coeffs.items()}, nvars=1)

    def __eq__(self, other):
        if isinstance(other, int):
            other = Laurent({(0,) * self.nvars: other}, nvars=self.nvars)
        return isinstance(other, Laurent) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "Laurent") -> "Laurent":
        out = Counter(self.terms)
        out.update(other.terms)
        return Laurent(out, nvars=self.nvars)

    def __neg__(self):
        return Laurent({e: -c for e, c in self.terms.items()}, nvars=self.nvars)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "Laurent | int") -> "Laurent":
        if isinstance(other, int):
            return Laurent({e: c * other for e, c in self.terms.items()}, nvars=self.nvars)
        out: Counter = Counter()
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[tuple(a + b for a, b in zip(e1, e2))] += c1 * c2
        return Laurent(out, nvars=self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Laurent":
        out = Laurent({(0,) * self.nvars: 1}, nvars=self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, exp: Alex) -> "Laurent":
        return Laurent({tuple(a + b for a, b in zip(e, exp)): c for e, c in self.terms.items()}, nvars=self.nvars)

    def at_one(self) -> int:
        return sum(self.terms.values())

    def is_symmetric(self) -> bool:
        return all(self.terms.get(tuple(-a for a in e)) == c for e, c in self.terms.items())

    def coefficients(self) -> dict[Fraction, int]:
        """Single-variable coefficients keyed by the true exponent."""
        return {Fraction(e[0], 2): c for e, c in sorted(self.terms.items())}

    def __repr__(self):
        return f"Laurent({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        names = ["t"] if self.nvars == 1 else [f"t{i + 1}" for i in range(self.nvars)]
        parts = []
        for exp, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(
                name if d == 2 else f"{name}^{_half(d)}" if d >= 0 else f"{name}^({_half(d)})"
                for name, d in zip(names, exp) if d
            )
            mag = abs(c)
            body = mono if mono and mag == 1 else f"{mag}*{mono}" if mono else str(mag)
            parts.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def one_minus_t_inverse(nvars: int = 1, component: int = 0) -> Laurent:
    shift = [0] * nvars
    shift[component] = -2
    return Laurent({(0,) * nvars: 1, tuple(shift): -1}, nvars=nvars)


class PoincarePolynomial(Counter):
    """Nonnegative bigraded counts keyed by ``(alexander, maslov)``."""

    def __init__(self, data=()):
        super().__init__()
        items = data.items() if isinstance(data, Mapping) else data
        for (alex, m), c in items:
            self[(tuple(alex), int(m))] += c
        for key in [k for k, v in self.items() if v == 0]:
            del self[key]

    @property
    def nvars(self) -> int:
        return len(next(iter(self))[0]) if self else 1

    def total_rank(self) -> int:
        return sum(self.values())

    def euler(self) -> Laurent:
        terms: Counter = Counter()
        for (alex, m), c in self.items():
            terms[alex] += -c if m % 2 else c
        return Laurent(terms, nvars=self.nvars)

    def at_alexander(self, alex: Alex) -> dict[int, int]:
        return {m: c for (a, m), c in self.items() if a == tuple(alex)}

    def alexander_support(self) -> list[Alex]:
        return sorted({a for a, _ in self})

    def restrict(self, lo: int, hi: int) -> "PoincarePolynomial":
        """Terms whose doubled Alexander gradings all lie in [lo, hi]."""
        return PoincarePolynomial({k: v for k, v in self.items() if all(lo <= a <= hi for a in k[0])})

    def rows(self) -> list[tuple[Alex, int, int]]:
        """(alexander, maslov, rank) sorted by Alexander then Maslov, both descending."""
        return [(a, m, c) for (a, m), c in sorted(self.items(), key=lambda kv: (kv[0][0], kv[0][1]), reverse=True)]

    def as_plain(self) -> dict[tuple[Fraction | int, int], int]:
        """Knot tables keyed by true (A, M) for readable comparisons."""
        out = {}
        for (a, m), c in self.items():
            vals = tuple(Fraction(x, 2) for x in a)
            key_a = vals[0] if len(vals) == 1 else vals
            if len(vals) == 1 and key_a.denominator == 1:
                key_a = int(key_a)
            out[(key_a, m)] = c
        return out

    def symmetry_image(self) -> "PoincarePolynomial":
        """Image under (A, M) -> (-A, M - 2 * sum(A))."""
        out = PoincarePolynomial()
        for (a, m), c in self.items():
            total = sum(a)  # doubled, so 2*sum(A) == total
            out[(tuple(-x for x in a), m - total)] += c
        return out


def divide_by_v(p: Mapping[Bigrading, int], component: int, times: int = 1,
                truncate_below: int | None = None) -> PoincarePolynomial:
    """Exact quotient of ``p`` by (1 + q^-1 t_component^-1)^times.

    With ``truncate_below`` the table is only trusted at doubled Alexander
    levels >= that value (a top window); the quotient is then exact on
    those levels and no remainder check is made.
    """
    current = dict(p)
    for _ in range(times):
        current = _divide_once(current, component, truncate_below)
    return PoincarePolynomial(current)


def _divide_once(p: Mapping[Bigrading, int], i: int, truncate_below: int | None) -> dict:
    work: Counter = Counter({k: v for k, v in p.items() if v})
    if not work:
        return {}
    quotient: dict = {}
    levels = sorted({k[0][i] for k in work}, reverse=True)
    bottom = levels[-1] if truncate_below is None else truncate_below
    level = levels[0]
    while level > bottom or (truncate_below is not None and level >= bottom):
        for key in [k for k in work if k[0][i] == level]:
            c = work.pop(key)
            if not c:
                continue
            if c < 0:
                raise DivisionError(f"negative quotient coefficient at {key}", work | {key: c})
            quotient[key] = c
            alex, m = key
            lower = tuple(a - 2 if j == i else a for j, a in enumerate(alex))
            work[(lower, m - 1)] -= c
        level -= 2
    if truncate_below is None:
        leftover = {k: v for k, v in work.items() if v}
        if leftover:
            raise DivisionError(f"division by V_{i + 1} leaves a remainder", leftover)
    return quotient
