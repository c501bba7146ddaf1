"""Exact univariate and bivariate polynomials."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping


def _monomial(c, i: int, j: int) -> str:
    parts = []
    if i:
        parts.append("x" if i == 1 else f"x^{i}")
    if j:
        parts.append("y" if j == 1 else f"y^{j}")
    body = "".join(parts)
    if not body:
        return str(c)
    if c == 1:
        return body
    if c == -1:
        return f"-{body}"
    return f"{c}{body}"


@dataclass(frozen=True)
class BivariatePoly:
    """``sum c_ij x^i y^j`` with integer coefficients; zero terms are never stored."""

    coeffs: Mapping[tuple[int, int], int]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", {k: v for k, v in dict(self.coeffs).items() if v})

    @classmethod
    def from_shifted(cls, shifted: Mapping[tuple[int, int], int]) -> "BivariatePoly":
        """Expand ``sum c_ab (x-1)^a (y-1)^b`` into the monomial basis."""
        out: dict[tuple[int, int], int] = {}
        for (a, b), c in shifted.items():
            for i in range(a + 1):
                ca = c * math.comb(a, i) * (-1) ** (a - i)
                for j in range(b + 1):
                    key = (i, j)
                    out[key] = out.get(key, 0) + ca * math.comb(b, j) * (-1) ** (b - j)
        return cls(out)

    def __eq__(self, other):
        if isinstance(other, BivariatePoly):
            return dict(self.coeffs) == dict(other.coeffs)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __call__(self, x, y):
        return self.evaluate(x, y)

    def evaluate(self, x, y):
        x, y = Fraction(x), Fraction(y)
        return sum((c * x**i * y**j for (i, j), c in self.coeffs.items()), Fraction(0))

    def d_dx(self) -> "BivariatePoly":
        return BivariatePoly({(i - 1, j): c * i for (i, j), c in self.coeffs.items() if i})

    def d_dy(self) -> "BivariatePoly":
        return BivariatePoly({(i, j - 1): c * j for (i, j), c in self.coeffs.items() if j})

    @property
    def n_terms(self) -> int:
        return len(self.coeffs)

    def to_string(self, order: str = "desc") -> str:
        """Readable form.

        ``"desc"`` lists terms by increasing ``y`` degree and decreasing ``x``
        degree (``x^3 + x^2 + x + y``); ``"asc"`` uses increasing degrees in
        both (``6x + 15x^2 + ... + y^4``).
        """
        if not self.coeffs:
            return "0"
        if order == "desc":
            keys = sorted(self.coeffs, key=lambda ij: (ij[1], -ij[0]))
        elif order == "asc":
            keys = sorted(self.coeffs, key=lambda ij: (ij[1], ij[0]))
        else:
            raise ValueError(f"unknown order {order!r}")
        text = " + ".join(_monomial(self.coeffs[k], *k) for k in keys)
        return text.replace("+ -", "- ")

    def __str__(self):
        return self.to_string()

    def to_json(self) -> str:
        terms = [[i, j, str(c)] for (i, j), c in sorted(self.coeffs.items(), key=lambda kv: (kv[0][1], kv[0][0]))]
        return json.dumps({"terms": terms})

    @classmethod
    def from_json(cls, text: str) -> "BivariatePoly":
        doc = json.loads(text)
        return cls({(int(i), int(j)): int(c) for i, j, c in doc["terms"]})


@dataclass(frozen=True)
class UnivariatePoly:
    """Polynomial in ``t`` with rational coefficients, lowest degree first."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        cs = [Fraction(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def from_factors(cls, *factors: Iterable) -> "UnivariatePoly":
        out = cls((1,))
        for f in factors:
            out = out * cls(tuple(f))
        return out

    def __add__(self, other: "UnivariatePoly") -> "UnivariatePoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UnivariatePoly(tuple(x + y for x, y in zip(a, b)))

    def __mul__(self, other):
        if not isinstance(other, UnivariatePoly):
            return UnivariatePoly(tuple(c * other for c in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return UnivariatePoly(())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UnivariatePoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UnivariatePoly":
        out = UnivariatePoly((1,))
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, t):
        t = Fraction(t)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def integrate(self, a=0, b=1) -> Fraction:
        """Exact definite integral over ``[a, b]``."""
        a, b = Fraction(a), Fraction(b)
        return sum((c * (b ** (k + 1) - a ** (k + 1)) / (k + 1) for k, c in enumerate(self.coeffs)), Fraction(0))

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else "t" if k == 1 else f"t^{k}"
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append(f"-{mono}")
            else:
                terms.append(f"{c}{mono}" if c.denominator == 1 else f"({c}){mono}")
        return " + ".join(terms).replace("+ -", "- ") or "0"
