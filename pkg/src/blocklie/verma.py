"""Truncated highest-weight modules over the level-band quotients Q:0:n.

The quotient algebra splits by degree into a negative part, a
commutative degree-zero part (levels 0..n plus C) and a positive part.
A weight functional assigns rational values to the degree-zero
generators and to C; the associated highest-weight module is spanned by
normal-ordered products of negative generators applied to the cyclic
vector.

A monomial is a tuple of factors (alpha, level) with alpha >= 1, each
standing for the degree -alpha generator at that level, kept in
canonical nonincreasing (alpha, level) order.  Its depth is the sum of
the alphas; the depth-d weight space is finite dimensional with
dimension equal to the number of partitions of d into parts carrying
one of n+1 colors.

Straightening an out-of-order product terminates because every bracket
correction strictly shortens the word.  Degree -alpha generators lower
the grading index by alpha, so acting by a degree-a element shifts
depth by exactly -a.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import algebra
from .algebra import BasisKey, bracket_terms
from .linalg import RationalMatrix, row_reduce, stack_rows
from .modules import WindowedModule
from .rationals import ZERO, format_rational, parse_rational

Monomial = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class WeightFunctional:
    """Values on the degree-zero generators (index = level) and on C."""

    values: tuple[Fraction, ...]
    c: Fraction

    @property
    def n(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, level: int) -> Fraction:
        return self.values[level]

    def to_json(self) -> dict:
        return {"lambda": [format_rational(v) for v in self.values], "c": format_rational(self.c)}

    @classmethod
    def from_json(cls, data: dict) -> "WeightFunctional":
        try:
            values = tuple(parse_rational(v) for v in data["lambda"])
            c = parse_rational(data.get("c", "0"))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed weight functional JSON: {exc}") from exc
        if not values:
            raise ValueError("weight functional needs at least the level-0 value")
        return cls(values, c)


def verma_basis(n: int, depth: int) -> list[Monomial]:
    """All canonical monomials of the given depth over Q:0:n, sorted."""
    if n < 0 or depth < 0:
        raise ValueError("need n >= 0 and depth >= 0")

    def build(remaining: int, max_factor: tuple[int, int]) -> list[Monomial]:
        if remaining == 0:
            return [()]
        out = []
        for alpha in range(min(remaining, max_factor[0]), 0, -1):
            top_level = max_factor[1] if alpha == max_factor[0] else n
            for level in range(top_level, -1, -1):
                for tail in build(remaining - alpha, (alpha, level)):
                    out.append(((alpha, level),) + tail)
        return out

    return sorted(build(depth, (depth, n)))


def partition_dimensions(n: int, max_depth: int) -> list[int]:
    """Coefficients of prod_m (1 - q^m)^-(n+1) up to q^max_depth.

    This is the generating-function count of depth-d spaces: partitions
    with parts in n+1 colors.  Computed independently of the monomial
    enumeration so the two can cross-check each other.
    """
    coeffs = [1] + [0] * max_depth
    for _ in range(n + 1):
        for m in range(1, max_depth + 1):
            # multiply by 1/(1 - q^m)
            for d in range(m, max_depth + 1):
                coeffs[d] += coeffs[d - m]
    return coeffs


def depth_of(word: Iterable[tuple[int, int]]) -> int:
    return sum(alpha for alpha, _ in word)


def monomial_repr(word: Monomial) -> str:
    if not word:
        return "v"
    return "*".join(f"L[{-alpha},{level}]" for alpha, level in word) + "*v"


def normal_order(word: Sequence[tuple[int, int]], n: int) -> dict[Monomial, Fraction]:
    """Rewrite a product of negative generators into canonical monomials.

    Adjacent out-of-order factors are swapped; the bracket correction
    replaces the two factors by one of level sum (dropped above the
    band), so the rewriting terminates.  The result is independent of
    the straightening strategy because it equals the same element of
    the module.
    """
    for alpha, level in word:
        if alpha < 1 or not (0 <= level <= n):
            raise ValueError(f"factor ({alpha},{level}) is not a negative generator of Q:0:{n}")
    pending: dict[Monomial, Fraction] = {tuple(word): Fraction(1)}
    done: dict[Monomial, Fraction] = {}
    while pending:
        w, coeff = pending.popitem()
        spot = next((t for t in range(len(w) - 1) if w[t] < w[t + 1]), None)
        if spot is None:
            s = done.get(w, ZERO) + coeff
            if s:
                done[w] = s
            else:
                done.pop(w, None)
            continue
        swapped = w[:spot] + (w[spot + 1], w[spot]) + w[spot + 2 :]
        s = pending.get(swapped, ZERO) + coeff
        if s:
            pending[swapped] = s
        else:
            pending.pop(swapped, None)
        (a1, l1), (a2, l2) = w[spot], w[spot + 1]
        # [L_{-a1,l1}, L_{-a2,l2}] = ((l2+1) a1 - (l1+1) a2) L_{-(a1+a2), l1+l2}
        cbr = (l2 + 1) * a1 - (l1 + 1) * a2
        if cbr and l1 + l2 <= n:
            corrected = w[:spot] + ((a1 + a2, l1 + l2),) + w[spot + 2 :]
            s = pending.get(corrected, ZERO) + coeff * cbr
            if s:
                pending[corrected] = s
            else:
                pending.pop(corrected, None)
    return done


class VermaAction:
    """Action of the quotient algebra on a truncated highest-weight module."""

    def __init__(self, lam: WeightFunctional, n: int):
        if lam.n != n:
            raise ValueError(f"weight table has {lam.n + 1} levels, expected {n + 1}")
        self.lam = lam
        self.n = n
        self.variant = algebra.quotient(0, n)
        self._cache: dict[tuple[int, int, Monomial], dict[Monomial, Fraction]] = {}

    def act_generator(self, alpha: int, level: int, word: Monomial) -> dict[Monomial, Fraction]:
        """Apply L_{alpha,level} to a canonical monomial applied to the cyclic vector."""
        key = (alpha, level, word)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        out: dict[Monomial, Fraction] = {}

        def accumulate(target: dict, vec: dict, scale: Fraction) -> None:
            for w, c in vec.items():
                s = target.get(w, ZERO) + scale * c
                if s:
                    target[w] = s
                else:
                    target.pop(w, None)

        if not word:
            if alpha > 0:
                pass  # positive part annihilates the cyclic vector
            elif alpha == 0:
                out = {(): self.lam[level]}
            else:
                out = {((-alpha, level),): Fraction(1)}
        elif alpha < 0:
            accumulate(out, normal_order(((-alpha, level),) + word, self.n), Fraction(1))
        else:
            head, rest = word[0], word[1:]
            # move the generator past the leading factor
            through = self.act_generator(alpha, level, rest)
            for w, c in through.items():
                accumulate(out, normal_order((head,) + w, self.n), c)
            fa, fl = head
            terms, central_coeff = bracket_terms(self.variant, BasisKey(alpha, level), BasisKey(-fa, fl))
            for bkey, bc in terms.items():
                accumulate(out, self.act_generator(bkey.alpha, bkey.level, rest), bc)
            if central_coeff:
                accumulate(out, {rest: Fraction(1)}, central_coeff * self.lam.c)
        self._cache[key] = out
        return out

    def act(self, generator: BasisKey | str, vector: dict[Monomial, Fraction]) -> dict[Monomial, Fraction]:
        out: dict[Monomial, Fraction] = {}
        for word, coeff in vector.items():
            if generator == "C":
                image = {word: self.lam.c}
            else:
                g = BasisKey(*generator)
                image = self.act_generator(g.alpha, g.level, word)
            for w, c in image.items():
                s = out.get(w, ZERO) + coeff * c
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        return out


def act_verma(
    generator: BasisKey | str,
    vector: dict[Monomial, Fraction],
    lam: WeightFunctional,
    n: int,
) -> dict[Monomial, Fraction]:
    """One-shot wrapper around VermaAction for a single application."""
    return VermaAction(lam, n).act(generator, vector)


def positive_generators(n: int) -> list[BasisKey]:
    """Generating set of the positive part: degree-1 at every level, plus degree 2 level 0.

    Brackets of two degree-1 generators never produce the level-0
    degree-2 one (the structure constant vanishes), which is why it is
    included explicitly; validate_positive_generators confirms the set
    on a window.
    """
    return [BasisKey(1, i) for i in range(n + 1)] + [BasisKey(2, 0)]


def validate_positive_generators(n: int, degree_bound: int) -> bool:
    """Closure of the generating set inside the positive-degree window."""
    window = algebra.KeyWindow(1, degree_bound, 0, n)
    reached = algebra.generation_closure(positive_generators(n), algebra.quotient(0, n), window)
    return reached == set(window.keys(algebra.quotient(0, n)))


def singular_vectors(lam: WeightFunctional, n: int, depth: int) -> list[dict[Monomial, Fraction]]:
    """Basis of the depth-d vectors annihilated by the positive part.

    Computes the joint kernel of the positive generating set, then
    checks each kernel vector against every positive-degree generator
    whose image depth is still nonnegative.
    """
    if depth == 0:
        return [{(): Fraction(1)}]
    action = VermaAction(lam, n)
    basis = verma_basis(n, depth)
    col_index = {w: i for i, w in enumerate(basis)}
    blocks = []
    for g in positive_generators(n):
        target = verma_basis(n, depth - g.alpha) if depth - g.alpha >= 0 else []
        row_index = {w: i for i, w in enumerate(target)}
        entries = {}
        for col, word in enumerate(basis):
            for w, c in action.act_generator(g.alpha, g.level, word).items():
                entries[(row_index[w], col)] = c
        blocks.append(RationalMatrix(len(target), len(basis), entries))
    kernel = row_reduce(stack_rows(blocks)).kernel

    vectors = []
    for vec in kernel:
        v = {basis[i]: c for i, c in enumerate(vec) if c}
        for alpha in range(1, depth + 1):
            for level in range(n + 1):
                image = action.act(BasisKey(alpha, level), v)
                if image:
                    raise AssertionError("kernel vector not annihilated by the full positive part")
        vectors.append(v)
    return vectors


def quasifinite_report(n: int, depth_cap: int) -> dict:
    """Depth-space dimensions against the colored-partition generating function."""
    enumerated = [len(verma_basis(n, d)) for d in range(depth_cap + 1)]
    oracle = partition_dimensions(n, depth_cap)
    return {
        "n": n,
        "depths": list(range(depth_cap + 1)),
        "dimensions": enumerated,
        "oracle": oracle,
        "match": enumerated == oracle,
    }


def verma_window(
    lam: WeightFunctional,
    n: int,
    depth_cap: int,
    top_pad: int = 2,
    max_degree: int | None = None,
) -> WindowedModule:
    """Materialize the truncated module as a windowed module on [-depth_cap, top_pad].

    Index -d holds the depth-d space; indices above zero are visibly
    empty, which is what window classification keys on.  The weight
    offset is the level-0 value of the functional.
    """
    lo, hi = -depth_cap, top_pad
    if max_degree is None:
        max_degree = depth_cap
    action = VermaAction(lam, n)
    bases = {k: (verma_basis(n, -k) if k <= 0 else []) for k in range(lo, hi + 1)}
    dims = {k: len(bases[k]) for k in bases}
    positions = {k: {w: i for i, w in enumerate(bases[k])} for k in bases}
    generators = [
        BasisKey(a, i) for a in range(-max_degree, max_degree + 1) for i in range(n + 1)
    ]
    actions: dict[tuple[BasisKey, int], RationalMatrix] = {}
    for g in generators:
        for k in range(lo, hi + 1):
            t = k + g.alpha
            if not (lo <= t <= hi):
                continue
            entries = {}
            for col, word in enumerate(bases[k]):
                for w, c in action.act_generator(g.alpha, g.level, word).items():
                    entries[(positions[t][w], col)] = c
            actions[(g, k)] = RationalMatrix(dims[t], dims[k], entries)
    return WindowedModule(
        algebra.quotient(0, n),
        lam[0],
        lo,
        hi,
        dims,
        generators,
        actions,
        lam.c,
    )
