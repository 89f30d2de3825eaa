"""Graded Lie algebra kernel: basis keys, variants, exact brackets.

Variants and their bases (C is the central element where present):

* ``Vir``      L_a,            a in Z
* ``B``        L_{a,i},        a in Z, i >= 0
* ``Bbar``     L_{a,i},        a in Z, i >= -1
* ``W1inf``    x^a D^i,        a in Z, i >= 0
* ``Winf``     x^a D^i,        a in Z, i >= 1
* ``Q:m:n``    L_{a,i},        a in Z, m <= i <= n   (level-band quotient of B)

Brackets:

* Vir:    [L_a, L_b] = (b-a) L_{a+b} + (a^3-a)/12 delta_{a+b,0} C
* B, Q:   [L_{a,i}, L_{b,j}] = ((i+1)b - (j+1)a) L_{a+b,i+j}
          + delta_{a+b,0} delta_{i+j,0} (a^3-a)/6 C;
          a quotient additionally discards levels above its band
* Bbar:   same leading term, central part a delta_{a+b,0} delta_{i+j,-2} C
* W:      [x^a D^i, x^b D^j] = x^{a+b} ((D+b)^i D^j - D^i (D+a)^j)
          + delta_{a+b,0} (-1)^i i! j! binom(a+i, i+j+1) C,
          expanded by the binomial theorem in the commuting symbol D

The quotient fixes the base algebra B; its level band [m, n] is closed
under the projected bracket because the discarded levels span an ideal.
The central element is kept only in quotients with m = 0 (a bracket can
produce C only at level 0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .rationals import ZERO, format_rational, parse_rational


class BasisKey(NamedTuple):
    """A graded basis generator: degree alpha at the given level.

    For W variants the level is the power of D.  The central element is
    not a BasisKey; elements carry it as a separate coefficient.
    """

    alpha: int
    level: int


@dataclass(frozen=True)
class AlgebraVariant:
    kind: str
    m: int = 0
    n: int = 0

    def __post_init__(self):
        if self.kind not in {"virasoro", "block", "blockbar", "w1inf", "winf", "quotient"}:
            raise ValueError(f"unknown algebra kind {self.kind!r}")
        if self.kind == "quotient" and not (0 <= self.m <= self.n):
            raise ValueError(f"quotient band requires 0 <= m <= n, got [{self.m}, {self.n}]")

    def __str__(self) -> str:
        return {
            "virasoro": "Vir",
            "block": "B",
            "blockbar": "Bbar",
            "w1inf": "W1inf",
            "winf": "Winf",
            "quotient": f"Q:{self.m}:{self.n}",
        }[self.kind]


VIRASORO = AlgebraVariant("virasoro")
BLOCK_B = AlgebraVariant("block")
BLOCK_BBAR = AlgebraVariant("blockbar")
W_1INF = AlgebraVariant("w1inf")
W_INF = AlgebraVariant("winf")


def quotient(m: int, n: int) -> AlgebraVariant:
    """The quotient of the level-m part of B by levels above n."""
    return AlgebraVariant("quotient", m, n)


def parse_variant(text: str) -> AlgebraVariant:
    table = {"Vir": VIRASORO, "B": BLOCK_B, "Bbar": BLOCK_BBAR, "W1inf": W_1INF, "Winf": W_INF}
    if text in table:
        return table[text]
    if text.startswith("Q:"):
        try:
            _, m, n = text.split(":")
            return quotient(int(m), int(n))
        except ValueError as exc:
            raise ValueError(f"malformed quotient variant {text!r}") from exc
    raise ValueError(f"unknown algebra variant {text!r}")


def level_range(variant: AlgebraVariant, level_cap: int) -> range:
    """Valid levels up to level_cap for window sweeps."""
    lo = {"virasoro": 0, "block": 0, "blockbar": -1, "w1inf": 0, "winf": 1, "quotient": variant.m}[variant.kind]
    hi = level_cap
    if variant.kind == "virasoro":
        hi = 0
    elif variant.kind == "quotient":
        hi = min(level_cap, variant.n)
    return range(lo, hi + 1)


def key_valid(variant: AlgebraVariant, key: BasisKey) -> bool:
    i = key.level
    if variant.kind == "virasoro":
        return i == 0
    if variant.kind == "block":
        return i >= 0
    if variant.kind == "blockbar":
        return i >= -1
    if variant.kind == "w1inf":
        return i >= 0
    if variant.kind == "winf":
        return i >= 1
    return variant.m <= i <= variant.n


def central_allowed(variant: AlgebraVariant) -> bool:
    return variant.kind != "quotient" or variant.m == 0


def _w_cocycle(a: int, i: int, j: int) -> Fraction:
    """Central pairing of x^a D^i with x^-a D^j in the W algebras.

    The universal central extension of the differential-operator
    algebra pairs z^a f(D) with z^-a g(D) through the window sum
    f(-1)g(a-1) + ... + f(-a)g(0); on the degree-one level this reduces
    to -(a^3-a)/6, the usual Virasoro-type term.  The power-sum form is
    the one that satisfies the cocycle identity in this basis (the
    closed binomial form seen elsewhere belongs to a binomial-basis
    normalization and fails Jacobi here; the sweep in
    verify_algebra_axioms is the witness).
    """
    if a == 0:
        return ZERO
    if a < 0:
        return -_w_cocycle(-a, j, i)
    return Fraction(sum((-m) ** i * (a - m) ** j for m in range(1, a + 1)))


def bracket_terms(variant: AlgebraVariant, x: BasisKey, y: BasisKey) -> tuple[dict[BasisKey, Fraction], Fraction]:
    """Structure constants: the bracket of two basis generators.

    Returns the generator terms and the coefficient of C.  Keys falling
    outside a quotient's level band are discarded (quotient projection).
    """
    a, i = x
    b, j = y
    kind = variant.kind
    terms: dict[BasisKey, Fraction] = {}
    central = ZERO
    if kind == "virasoro":
        c = b - a
        if c:
            terms[BasisKey(a + b, 0)] = Fraction(c)
        if a + b == 0:
            central = Fraction(a**3 - a, 12)
    elif kind in ("block", "quotient"):
        c = (i + 1) * b - (j + 1) * a
        if c:
            key = BasisKey(a + b, i + j)
            if kind != "quotient" or key.level <= variant.n:
                terms[key] = Fraction(c)
        if a + b == 0 and i + j == 0:
            central = Fraction(a**3 - a, 6)
    elif kind == "blockbar":
        c = (i + 1) * b - (j + 1) * a
        if c:
            terms[BasisKey(a + b, i + j)] = Fraction(c)
        if a + b == 0 and i + j == -2:
            central = Fraction(a)
    else:  # w1inf / winf: expand (D+b)^i D^j - D^i (D+a)^j
        for r in range(i + 1):
            coeff = math.comb(i, r) * b ** (i - r)
            if coeff:
                key = BasisKey(a + b, r + j)
                terms[key] = terms.get(key, ZERO) + coeff
        for r in range(j + 1):
            coeff = math.comb(j, r) * a ** (j - r)
            if coeff:
                key = BasisKey(a + b, i + r)
                terms[key] = terms.get(key, ZERO) - coeff
        terms = {k: v for k, v in terms.items() if v}
        if a + b == 0:
            central = _w_cocycle(a, i, j)
    return terms, central


class AlgebraElement:
    """A finite rational combination of basis generators plus a C multiple."""

    __slots__ = ("variant", "terms", "central")

    def __init__(
        self,
        variant: AlgebraVariant,
        terms: dict[BasisKey, Fraction] | None = None,
        central: Fraction | int = 0,
    ):
        self.variant = variant
        self.terms: dict[BasisKey, Fraction] = {}
        if terms:
            for key, coeff in terms.items():
                key = BasisKey(*key)
                if not key_valid(variant, key):
                    raise ValueError(f"key {key} is not valid for variant {variant}")
                coeff = Fraction(coeff)
                if coeff != 0:
                    self.terms[key] = coeff
        self.central = Fraction(central)
        if self.central and not central_allowed(variant):
            raise ValueError(f"variant {variant} has no central element")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        if self.variant != other.variant:
            raise ValueError("cannot add elements of different variants")
        terms = dict(self.terms)
        for key, coeff in other.terms.items():
            s = terms.get(key, ZERO) + coeff
            if s:
                terms[key] = s
            else:
                terms.pop(key, None)
        out = AlgebraElement(self.variant)
        out.terms = terms
        out.central = self.central + other.central
        return out

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + other.scale(-1)

    def scale(self, factor: Fraction | int) -> "AlgebraElement":
        factor = Fraction(factor)
        out = AlgebraElement(self.variant)
        if factor:
            out.terms = {k: v * factor for k, v in self.terms.items()}
            out.central = self.central * factor
        return out

    def is_zero(self) -> bool:
        return not self.terms and self.central == 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return (
            self.variant == other.variant
            and self.terms == other.terms
            and self.central == other.central
        )

    def __repr__(self) -> str:
        parts = []
        for key in sorted(self.terms):
            coeff = self.terms[key]
            if self.variant.kind in ("w1inf", "winf"):
                label = f"x^{key.alpha}*D^{key.level}"
            elif self.variant.kind == "virasoro":
                label = f"L_{{{key.alpha}}}"
            else:
                label = f"L_{{{key.alpha},{key.level}}}"
            if coeff == 1:
                parts.append(label)
            elif coeff == -1:
                parts.append(f"-{label}")
            else:
                parts.append(f"{format_rational(coeff)}*{label}")
        if self.central:
            if self.central == 1:
                parts.append("C")
            elif self.central == -1:
                parts.append("-C")
            else:
                parts.append(f"{format_rational(self.central)}*C")
        if not parts:
            return "0"
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {
            "variant": str(self.variant),
            "terms": [
                {"alpha": k.alpha, "level": k.level, "coeff": format_rational(v)}
                for k, v in sorted(self.terms.items())
            ],
            "central": format_rational(self.central),
        }

    @classmethod
    def from_json(cls, data: dict) -> "AlgebraElement":
        try:
            variant = parse_variant(data["variant"])
            terms = {
                BasisKey(int(t["alpha"]), int(t["level"])): parse_rational(t["coeff"])
                for t in data.get("terms", [])
            }
            central = parse_rational(data.get("central", "0"))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed element JSON: {exc}") from exc
        return cls(variant, terms, central)


def gen(variant: AlgebraVariant, alpha: int, level: int = 0, coeff: Fraction | int = 1) -> AlgebraElement:
    return AlgebraElement(variant, {BasisKey(alpha, level): Fraction(coeff)})


def central(variant: AlgebraVariant, coeff: Fraction | int = 1) -> AlgebraElement:
    return AlgebraElement(variant, central=coeff)


def bracket(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Bilinear extension of the structure constants; C brackets to zero."""
    if x.variant != y.variant:
        raise ValueError("cannot bracket elements of different variants")
    out = AlgebraElement(x.variant)
    terms: dict[BasisKey, Fraction] = {}
    central_total = ZERO
    for kx, cx in x.terms.items():
        for ky, cy in y.terms.items():
            factor = cx * cy
            gen_terms, c = bracket_terms(x.variant, kx, ky)
            for key, coeff in gen_terms.items():
                s = terms.get(key, ZERO) + factor * coeff
                if s:
                    terms[key] = s
                else:
                    terms.pop(key, None)
            central_total += factor * c
    out.terms = terms
    out.central = central_total
    return out


# ---------------------------------------------------------------------------
# Laurent-polynomial realization of B
# ---------------------------------------------------------------------------

class LaurentOp:
    """An operator x^alpha f(t) with f in t*Q[t], plus an optional C multiple.

    The dictionary maps t-powers (all >= 1) to coefficients.  Under the
    correspondence L_{alpha,i} = x^alpha t^{i+1} these operators realize
    the algebra B.
    """

    __slots__ = ("alpha", "coeffs", "central")

    def __init__(self, alpha: int, coeffs: dict[int, Fraction] | None = None, central: Fraction | int = 0):
        self.alpha = alpha
        self.coeffs: dict[int, Fraction] = {}
        if coeffs:
            for p, c in coeffs.items():
                if p < 1:
                    raise ValueError("Laurent realization requires f(t) in t*Q[t]")
                c = Fraction(c)
                if c:
                    self.coeffs[p] = c
        self.central = Fraction(central)

    @classmethod
    def monomial(cls, alpha: int, tpower: int) -> "LaurentOp":
        return cls(alpha, {tpower: Fraction(1)})

    def to_element(self, variant: AlgebraVariant = BLOCK_B) -> AlgebraElement:
        terms = {BasisKey(self.alpha, p - 1): c for p, c in self.coeffs.items()}
        return AlgebraElement(variant, terms, self.central)

    def __repr__(self) -> str:
        f = " + ".join(f"{format_rational(c)}*t^{p}" for p, c in sorted(self.coeffs.items()))
        body = f"x^{self.alpha}*({f or '0'})"
        if self.central:
            body += f" + {format_rational(self.central)}*C"
        return body


def laurent_bracket(a: LaurentOp, b: LaurentOp) -> LaurentOp:
    """[x^a f, x^b g] = x^{a+b} (b f' g - a f g') + delta_{a+b,0} (a^3-a)/6 Res_t t^-3 f g C.

    Res_t picks the coefficient of t^-1, so the residue term reads off
    the t^2 coefficient of f*g.
    """
    coeffs: dict[int, Fraction] = {}

    def add(p: int, c: Fraction) -> None:
        s = coeffs.get(p, ZERO) + c
        if s:
            coeffs[p] = s
        else:
            coeffs.pop(p, None)

    for p, cf in a.coeffs.items():
        for q, cg in b.coeffs.items():
            # b*f'(t)g(t) - a*f(t)g'(t), both landing on t^(p+q-1)
            add(p + q - 1, cf * cg * (b.alpha * p - a.alpha * q))
    central = ZERO
    if a.alpha + b.alpha == 0:
        residue = ZERO
        for p, cf in a.coeffs.items():
            cg = b.coeffs.get(2 - p)
            if cg:
                residue += cf * cg
        central = Fraction(a.alpha**3 - a.alpha, 6) * residue
    return LaurentOp(a.alpha + b.alpha, coeffs, central)


# ---------------------------------------------------------------------------
# Window sweeps
# ---------------------------------------------------------------------------

def window_keys(variant: AlgebraVariant, degree_bound: int, level_cap: int) -> list[BasisKey]:
    return [
        BasisKey(a, i)
        for a in range(-degree_bound, degree_bound + 1)
        for i in level_range(variant, level_cap)
    ]


def verify_algebra_axioms(
    variant: AlgebraVariant,
    degree_bound: int,
    level_cap: int = 0,
    bracket_fn=None,
) -> list[dict]:
    """Exhaustive antisymmetry and Jacobi sweep over a basis window.

    Every intermediate key is representable (quotients absorb overflow
    levels exactly, and the other variants are closed), so each check is
    an exact identity.  Returns a list of violation records; empty means
    the window passed.  ``bracket_fn`` exists so tests can inject
    corrupted structure constants.
    """
    fn = bracket_fn or bracket_terms

    def br(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        out = AlgebraElement(variant)
        terms: dict[BasisKey, Fraction] = {}
        central_total = ZERO
        for kx, cx in x.terms.items():
            for ky, cy in y.terms.items():
                gen_terms, c = fn(variant, kx, ky)
                for key, coeff in gen_terms.items():
                    s = terms.get(key, ZERO) + cx * cy * coeff
                    if s:
                        terms[key] = s
                    else:
                        terms.pop(key, None)
                central_total += cx * cy * c
        out.terms = terms
        out.central = central_total
        return out

    keys = window_keys(variant, degree_bound, level_cap)
    elements = {k: gen(variant, k.alpha, k.level) for k in keys}
    violations: list[dict] = []

    for ix, kx in enumerate(keys):
        for ky in keys[ix:]:
            r = br(elements[kx], elements[ky]) + br(elements[ky], elements[kx])
            if not r.is_zero():
                violations.append({"check": "antisymmetry", "pair": [list(kx), list(ky)], "residual": repr(r)})

    if central_allowed(variant):
        c = central(variant)
        for k in keys:
            r = br(c, elements[k])
            if not r.is_zero():
                violations.append({"check": "centrality", "key": list(k), "residual": repr(r)})

    n = len(keys)
    for ix in range(n):
        x = elements[keys[ix]]
        for iy in range(ix, n):
            y = elements[keys[iy]]
            for iz in range(iy, n):
                z = elements[keys[iz]]
                r = br(x, br(y, z)) + br(y, br(z, x)) + br(z, br(x, y))
                if not r.is_zero():
                    violations.append(
                        {
                            "check": "jacobi",
                            "triple": [list(keys[ix]), list(keys[iy]), list(keys[iz])],
                            "residual": repr(r),
                        }
                    )
    return violations


def vir_consistency(degree_bound: int) -> dict:
    """Match the level-0 part of B against the Virasoro relations.

    Sends L_{a,0} to L_a and C to c0 * C; the sweep determines the unique
    rational c0 from pairs with nonzero central terms and confirms the
    homomorphism on all pairs with |a|, |b| <= degree_bound.  The same
    rescaling is checked for the band [0, 0] quotient of B.
    """
    if degree_bound < 2:
        raise ValueError("need degree_bound >= 2 to see a central term")
    c0 = None
    ok = True
    pairs = 0
    q00 = quotient(0, 0)
    quotient_ok = True
    for a in range(-degree_bound, degree_bound + 1):
        for b in range(-degree_bound, degree_bound + 1):
            pairs += 1
            lhs = bracket(gen(BLOCK_B, a, 0), gen(BLOCK_B, b, 0))
            rhs = bracket(gen(VIRASORO, a), gen(VIRASORO, b))
            lhs_terms = {k.alpha: v for k, v in lhs.terms.items()}
            rhs_terms = {k.alpha: v for k, v in rhs.terms.items()}
            if lhs_terms != rhs_terms:
                ok = False
            if lhs.central == 0:
                if rhs.central != 0:
                    ok = False
            else:
                ratio = rhs.central / lhs.central
                if c0 is None:
                    c0 = ratio
                elif ratio != c0:
                    ok = False
            qlhs = bracket(gen(q00, a, 0), gen(q00, b, 0))
            if {k.alpha: v for k, v in qlhs.terms.items()} != rhs_terms:
                quotient_ok = False
            if (c0 is not None and qlhs.central * c0 != rhs.central) or (c0 is None and qlhs.central != 0 != rhs.central):
                quotient_ok = False
    return {
        "homomorphism": ok and c0 is not None,
        "c0": format_rational(c0) if c0 is not None else None,
        "pairs": pairs,
        "quotient_matches": quotient_ok,
    }


def associated_graded_check(degree_bound: int, level_cap: int) -> list[dict]:
    """Top filtration layer of the Winf bracket versus the B constants.

    For each pair (a,i), (b,j) in the window the bracket of x^a D^{i+1}
    and x^b D^{j+1} is computed in Winf; the coefficient of D^{i+j+1}
    must equal ((i+1)b - (j+1)a) and no higher power of D may survive.
    """
    violations = []
    for a in range(-degree_bound, degree_bound + 1):
        for i in range(level_cap + 1):
            for b in range(-degree_bound, degree_bound + 1):
                for j in range(level_cap + 1):
                    result = bracket(gen(W_INF, a, i + 1), gen(W_INF, b, j + 1))
                    top = i + j + 1
                    expected = Fraction((i + 1) * b - (j + 1) * a)
                    seen = ZERO
                    overflow = False
                    for key, coeff in result.terms.items():
                        if key.level == top:
                            seen = coeff
                        elif key.level > top:
                            overflow = True
                    if seen != expected or overflow:
                        violations.append(
                            {
                                "pair": [[a, i], [b, j]],
                                "expected": format_rational(expected),
                                "got": format_rational(seen),
                                "overflow": overflow,
                            }
                        )
    return violations


@dataclass(frozen=True)
class KeyWindow:
    """A finite key window for closure computations."""

    degree_lo: int
    degree_hi: int
    level_lo: int
    level_hi: int

    def keys(self, variant: AlgebraVariant) -> list[BasisKey]:
        return [
            BasisKey(a, i)
            for a in range(self.degree_lo, self.degree_hi + 1)
            for i in range(self.level_lo, self.level_hi + 1)
            if key_valid(variant, BasisKey(a, i))
        ]


def generation_closure(
    seeds: Sequence[BasisKey],
    variant: AlgebraVariant,
    window: KeyWindow,
) -> set[BasisKey]:
    """Keys of the window reached by repeated bracketing with window basis elements.

    The span starts from the seed generators and grows by bracketing
    current span vectors with every basis element of the window; results
    are projected back onto the window coordinates.  Iteration stops when
    the spanned subspace stabilizes.  A key counts as reached when its
    unit vector lies in the final span.
    """
    keys = window.keys(variant)
    index = {k: i for i, k in enumerate(keys)}
    ncols = len(keys) + 1  # final coordinate holds the C component
    basis_elements = [gen(variant, k.alpha, k.level) for k in keys]

    def to_vec(elem: AlgebraElement) -> dict[int, Fraction]:
        vec = {}
        for key, coeff in elem.terms.items():
            col = index.get(key)
            if col is not None:
                vec[col] = coeff
        if elem.central:
            vec[ncols - 1] = elem.central
        return vec

    span: list[tuple[int, dict[int, Fraction]]] = []

    def reduce_vec(vec: dict[int, Fraction]) -> dict[int, Fraction]:
        vec = dict(vec)
        for pivot, row in span:
            coeff = vec.get(pivot)
            if coeff:
                for c, v in row.items():
                    s = vec.get(c, ZERO) - coeff * v
                    if s:
                        vec[c] = s
                    else:
                        vec.pop(c, None)
        return vec

    def insert(vec: dict[int, Fraction]) -> bool:
        vec = reduce_vec(vec)
        if not vec:
            return False
        pivot = min(vec)
        inv = 1 / vec[pivot]
        vec = {c: v * inv for c, v in vec.items()}
        for idx, (p, row) in enumerate(span):
            coeff = row.get(pivot)
            if coeff:
                new = dict(row)
                for c, v in vec.items():
                    s = new.get(c, ZERO) - coeff * v
                    if s:
                        new[c] = s
                    else:
                        new.pop(c, None)
                span[idx] = (p, new)
        span.append((pivot, vec))
        span.sort(key=lambda pr: pr[0])
        return True

    def elem_of_vec(vec: dict[int, Fraction]) -> AlgebraElement:
        terms = {keys[c]: v for c, v in vec.items() if c < ncols - 1}
        central_part = vec.get(ncols - 1, ZERO)
        if not central_allowed(variant):
            central_part = ZERO
        return AlgebraElement(variant, terms, central_part)

    frontier: list[dict[int, Fraction]] = []
    for seed in seeds:
        vec = to_vec(gen(variant, seed.alpha, seed.level))
        if insert(vec):
            frontier.append(vec)

    while frontier:
        new_frontier = []
        for vec in frontier:
            elem = elem_of_vec(vec)
            for basis_elem in basis_elements:
                produced = bracket(basis_elem, elem)
                if produced.is_zero():
                    continue
                pvec = to_vec(produced)
                if insert(pvec):
                    new_frontier.append(pvec)
        frontier = new_frontier

    reached = set()
    for key, col in index.items():
        unit = reduce_vec({col: Fraction(1)})
        if not unit:
            reached.add(key)
    return reached
