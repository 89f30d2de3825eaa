"""Sparse multivariate polynomials over exact rationals.

A polynomial carries a fixed ordered symbol alphabet and a dict mapping
exponent tuples (one slot per symbol) to Fraction coefficients.  Zero
coefficients are never stored; the zero polynomial has an empty dict.

Example over the alphabet ("x", "y"):

    x^2*y + 3  ->  {(2, 1): Fraction(1), (0, 0): Fraction(3)}

Operations on two polynomials require identical alphabets; mixing
alphabets raises ValueError rather than guessing an embedding.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .rationals import ZERO, format_rational


class MultiPoly:
    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet: Sequence[str], terms: Mapping[tuple[int, ...], Fraction] | None = None):
        self.alphabet = tuple(alphabet)
        self.terms: dict[tuple[int, ...], Fraction] = {}
        if terms:
            width = len(self.alphabet)
            for exps, coeff in terms.items():
                if len(exps) != width:
                    raise ValueError(f"exponent tuple {exps} does not match alphabet of size {width}")
                coeff = Fraction(coeff)
                if coeff != 0:
                    self.terms[tuple(exps)] = coeff

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, alphabet: Sequence[str]) -> "MultiPoly":
        return cls(alphabet)

    @classmethod
    def const(cls, alphabet: Sequence[str], value: Fraction | int) -> "MultiPoly":
        value = Fraction(value)
        if value == 0:
            return cls(alphabet)
        return cls(alphabet, {(0,) * len(alphabet): value})

    @classmethod
    def symbol(cls, alphabet: Sequence[str], name: str) -> "MultiPoly":
        alphabet = tuple(alphabet)
        idx = alphabet.index(name)
        exps = [0] * len(alphabet)
        exps[idx] = 1
        return cls(alphabet, {tuple(exps): Fraction(1)})

    # -- ring operations ---------------------------------------------------

    def _check(self, other: "MultiPoly") -> None:
        if self.alphabet != other.alphabet:
            raise ValueError(f"alphabet mismatch: {self.alphabet} vs {other.alphabet}")

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.const(self.alphabet, other)

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            s = terms.get(exps, ZERO) + c
            if s:
                terms[exps] = s
            else:
                terms.pop(exps, None)
        return MultiPoly(self.alphabet, terms)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.alphabet, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        acc: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                s = acc.get(exps, ZERO) + c1 * c2
                if s:
                    acc[exps] = s
                else:
                    acc.pop(exps, None)
        return MultiPoly(self.alphabet, acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative polynomial power")
        out = MultiPoly.const(self.alphabet, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, factor: Fraction | int) -> "MultiPoly":
        factor = Fraction(factor)
        return MultiPoly(self.alphabet, {e: c * factor for e, c in self.terms.items()})

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(self.alphabet, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.alphabet == other.alphabet and self.terms == other.terms

    def degree_in(self, name: str) -> int:
        """Highest power of one symbol; -1 for the zero polynomial."""
        idx = self.alphabet.index(name)
        if not self.terms:
            return -1
        return max(e[idx] for e in self.terms)

    def coeff_of(self, name: str, degree: int) -> "MultiPoly":
        """The polynomial in the remaining symbols multiplying name**degree.

        The result keeps the full alphabet with the extracted symbol's
        exponent zeroed, so sum_d coeff_of(s, d) * s**d reconstructs self.
        """
        idx = self.alphabet.index(name)
        terms = {}
        for exps, c in self.terms.items():
            if exps[idx] == degree:
                reduced = list(exps)
                reduced[idx] = 0
                terms[tuple(reduced)] = c
        return MultiPoly(self.alphabet, terms)

    def derivative(self, name: str) -> "MultiPoly":
        idx = self.alphabet.index(name)
        terms = {}
        for exps, c in self.terms.items():
            e = exps[idx]
            if e:
                lowered = list(exps)
                lowered[idx] = e - 1
                key = tuple(lowered)
                terms[key] = terms.get(key, ZERO) + c * e
        return MultiPoly(self.alphabet, terms)

    def substitute(self, name: str, value: "MultiPoly | Fraction | int") -> "MultiPoly":
        """Replace one symbol by a polynomial (or constant) over the same alphabet."""
        if not isinstance(value, MultiPoly):
            value = MultiPoly.const(self.alphabet, value)
        else:
            self._check(value)
        idx = self.alphabet.index(name)
        out = MultiPoly.zero(self.alphabet)
        powers: dict[int, MultiPoly] = {0: MultiPoly.const(self.alphabet, 1)}
        for exps, c in self.terms.items():
            e = exps[idx]
            if e not in powers:
                powers[e] = value ** e
            rest = list(exps)
            rest[idx] = 0
            out = out + powers[e] * MultiPoly(self.alphabet, {tuple(rest): c})
        return out

    def evaluate(self, assignment: Mapping[str, Fraction | int]) -> Fraction:
        """Full evaluation; every symbol occurring in a term must be assigned."""
        values = []
        for name in self.alphabet:
            values.append(Fraction(assignment[name]) if name in assignment else None)
        total = ZERO
        for exps, c in self.terms.items():
            term = c
            for e, v in zip(exps, values):
                if e:
                    if v is None:
                        raise ValueError("evaluation is missing a symbol assignment")
                    term *= v ** e
            total += term
        return total

    # -- presentation ------------------------------------------------------

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms, reverse=True):
            c = self.terms[exps]
            factors = [
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self.alphabet, exps)
                if e
            ]
            if not factors:
                parts.append(format_rational(c))
            elif c == 1:
                parts.append("*".join(factors))
            elif c == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(format_rational(c) + "*" + "*".join(factors))
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    def to_json(self) -> dict:
        return {
            "alphabet": list(self.alphabet),
            "terms": {",".join(map(str, e)): format_rational(c) for e, c in sorted(self.terms.items())},
        }
