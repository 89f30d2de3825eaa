"""Graded module windows with explicit exact action matrices.

A WindowedModule materializes a finite slice of a Z-graded module: one
weight space per integer index k in [lo, hi], with the weight of index k
equal to offset + k, and an exact rational matrix for each (generator,
source index) pair whose target index stays inside the window.  Absent
action entries mean the target leaves the window; relations are only
ever asserted where every intermediate index stays inside (interior
checking), so windows approximate infinite modules without false
negatives.

The intermediate-series families over the Virasoro algebra are the
basic suppliers of windows (C acts by zero on all of them):

* ``Aab``  L_i x_k = (a + k + b i) x_{i+k}
* ``Aa``   L_i x_k = (i + k) x_{i+k} for k != 0,  L_i x_0 = i (i + a) x_i
* ``Ba``   L_i x_k = k x_{i+k} for k != -i,       L_i x_{-i} = -i (i + a) x_0

Modules built from factor windows (tensor products) carry per-column
edge distances; checks then assert equality only on columns far enough
from the factor boundaries for every touched index to be exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import algebra
from .algebra import VIRASORO, BLOCK_B, AlgebraVariant, BasisKey, bracket_terms, parse_variant
from .linalg import RationalMatrix, row_reduce
from .rationals import ZERO, format_rational, parse_rational


@dataclass(frozen=True)
class IntermediateSpec:
    """Parameters of one intermediate-series family member."""

    family: str  # "Aab" | "Aa" | "Ba"
    a: Fraction
    b: Fraction | None = None

    def __post_init__(self):
        if self.family not in ("Aab", "Aa", "Ba"):
            raise ValueError(f"unknown intermediate-series family {self.family!r}")
        if self.family == "Aab" and self.b is None:
            raise ValueError("family Aab needs the parameter b")

    def weight_offset(self) -> Fraction:
        # L_0 acts as a+k on Aab and as k on the exceptional families
        return Fraction(self.a) if self.family == "Aab" else ZERO


def act_intermediate(spec: IntermediateSpec, generator: BasisKey | str, k: int) -> tuple[Fraction, int]:
    """Action coefficient of one generator on the basis vector x_k.

    Generators of level >= 1 and the central element act by zero; the
    exceptional rows of the Aa and Ba families are applied exactly as
    defined, with no smoothing.
    """
    if generator == "C":
        return ZERO, k
    generator = BasisKey(*generator)
    if generator.level != 0:
        return ZERO, k + generator.alpha
    i = generator.alpha
    target = k + i
    a = Fraction(spec.a)
    if spec.family == "Aab":
        return a + k + Fraction(spec.b) * i, target
    if spec.family == "Aa":
        if k == 0:
            return Fraction(i) * (i + a), target
        return Fraction(i + k), target
    # Ba
    if k == -i:
        return Fraction(-i) * (i + a), 0
    return Fraction(k), target


class WindowedModule:
    """A finite window of weight spaces with explicit action matrices."""

    def __init__(
        self,
        variant: AlgebraVariant,
        offset: Fraction,
        lo: int,
        hi: int,
        dims: dict[int, int],
        generators: Sequence[BasisKey],
        actions: dict[tuple[BasisKey, int], RationalMatrix],
        central_scalar: Fraction = ZERO,
        col_margins: dict[int, list[int]] | None = None,
        labels: dict[int, list] | None = None,
    ):
        if lo > hi:
            raise ValueError("empty window range")
        self.variant = variant
        self.offset = Fraction(offset)
        self.lo = lo
        self.hi = hi
        self.dims = {k: int(dims.get(k, 0)) for k in range(lo, hi + 1)}
        self.generators = [BasisKey(*g) for g in generators]
        self.actions = actions
        self.central_scalar = Fraction(central_scalar)
        self.col_margins = col_margins
        self.labels = labels

    def indices(self) -> range:
        return range(self.lo, self.hi + 1)

    def in_range(self, k: int) -> bool:
        return self.lo <= k <= self.hi

    def weight(self, k: int) -> Fraction:
        return self.offset + k

    def act(self, generator: BasisKey, k: int) -> Optional[RationalMatrix]:
        """The stored matrix V_k -> V_{k+alpha}, or None when the target leaves the window."""
        generator = BasisKey(*generator)
        if not self.in_range(k) or not self.in_range(k + generator.alpha):
            return None
        m = self.actions.get((generator, k))
        if m is None:
            raise KeyError(f"no action stored for {generator} at index {k}")
        return m

    def has_generator(self, generator: BasisKey) -> bool:
        return BasisKey(*generator) in set(self.generators)

    def margin(self, k: int, col: int) -> int | None:
        if self.col_margins is None:
            return None
        return self.col_margins[k][col]

    def copy(self) -> "WindowedModule":
        return WindowedModule(
            self.variant,
            self.offset,
            self.lo,
            self.hi,
            dict(self.dims),
            list(self.generators),
            dict(self.actions),
            self.central_scalar,
            None if self.col_margins is None else {k: list(v) for k, v in self.col_margins.items()},
            None if self.labels is None else {k: list(v) for k, v in self.labels.items()},
        )

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def __repr__(self) -> str:
        return f"WindowedModule({self.variant}, range=[{self.lo},{self.hi}], dim={self.total_dim()})"

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        actions = []
        for (g, k) in sorted(self.actions, key=lambda gk: (gk[0].alpha, gk[0].level, gk[1])):
            actions.append(
                {
                    "alpha": g.alpha,
                    "level": g.level,
                    "source": k,
                    "matrix": self.actions[(g, k)].to_json(),
                }
            )
        data = {
            "variant": str(self.variant),
            "offset": format_rational(self.offset),
            "range": [self.lo, self.hi],
            "central": format_rational(self.central_scalar),
            "dims": {str(k): self.dims[k] for k in self.indices()},
            "generators": [{"alpha": g.alpha, "level": g.level} for g in sorted(self.generators)],
            "actions": actions,
        }
        if self.col_margins is not None:
            data["col_margins"] = {str(k): v for k, v in sorted(self.col_margins.items())}
        return data

    @classmethod
    def from_json(cls, data: dict) -> "WindowedModule":
        try:
            variant = parse_variant(data["variant"])
            offset = parse_rational(data["offset"])
            lo, hi = (int(v) for v in data["range"])
            central = parse_rational(data.get("central", "0"))
            dims = {int(k): int(v) for k, v in data["dims"].items()}
            generators = [BasisKey(int(g["alpha"]), int(g["level"])) for g in data["generators"]]
            actions = {}
            for item in data.get("actions", []):
                key = (BasisKey(int(item["alpha"]), int(item["level"])), int(item["source"]))
                actions[key] = RationalMatrix.from_json(item["matrix"])
            margins = data.get("col_margins")
            col_margins = None if margins is None else {int(k): [int(x) for x in v] for k, v in margins.items()}
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed module JSON: {exc}") from exc
        return cls(variant, offset, lo, hi, dims, generators, actions, central, col_margins)


def build_window(spec: IntermediateSpec, lo: int, hi: int, max_degree: int | None = None) -> WindowedModule:
    """Materialize an intermediate-series member on [lo, hi] as 1x1 matrices."""
    if max_degree is None:
        max_degree = hi - lo
    dims = {k: 1 for k in range(lo, hi + 1)}
    generators = [BasisKey(i, 0) for i in range(-max_degree, max_degree + 1)]
    actions: dict[tuple[BasisKey, int], RationalMatrix] = {}
    for g in generators:
        for k in range(lo, hi + 1):
            if lo <= k + g.alpha <= hi:
                coeff, _ = act_intermediate(spec, g, k)
                entries = {(0, 0): coeff} if coeff else None
                actions[(g, k)] = RationalMatrix(1, 1, entries)
    return WindowedModule(VIRASORO, spec.weight_offset(), lo, hi, dims, generators, actions)


def check_module_axioms(
    mod: WindowedModule,
    max_degree: int,
    extra_keys: Sequence[BasisKey] = (),
    pairs: Sequence[tuple[BasisKey, BasisKey]] | None = None,
) -> list[dict]:
    """Exact check of rho([x,y]) = rho(x) rho(y) - rho(y) rho(x) on the interior.

    Pairs default to all unordered pairs of level-0 generators with
    |degree| <= max_degree together with extra_keys.  A pair is checked
    at every source index where all composite targets stay inside the
    window; for modules carrying column margins, equality is asserted
    only on columns whose edge distance covers the total degree moved.
    Returns one record per failing (pair, index).
    """
    if pairs is None:
        keys = [g for g in mod.generators if g.level == 0 and abs(g.alpha) <= max_degree]
        keys += [BasisKey(*k) for k in extra_keys]
        pairs = [(keys[i], keys[j]) for i in range(len(keys)) for j in range(i, len(keys))]
    gen_set = set(mod.generators)
    violations: list[dict] = []
    for x, y in pairs:
        if x not in gen_set or y not in gen_set:
            raise ValueError(f"pair ({x}, {y}) uses a generator without stored actions")
        terms, central_coeff = bracket_terms(mod.variant, x, y)
        if any(z not in gen_set for z in terms):
            continue  # bracket leaves the declared generator set
        margin_needed = abs(x.alpha) + abs(y.alpha)
        for k in mod.indices():
            targets = (k + x.alpha, k + y.alpha, k + x.alpha + y.alpha)
            if not all(mod.in_range(t) for t in targets):
                continue
            xy = mod.act(x, k + y.alpha) @ mod.act(y, k)
            yx = mod.act(y, k + x.alpha) @ mod.act(x, k)
            diff = xy - yx
            for z, coeff in terms.items():
                diff = diff - mod.act(z, k).scale(coeff)
            if central_coeff and mod.central_scalar:
                diff = diff - RationalMatrix.identity(mod.dims[k]).scale(central_coeff * mod.central_scalar)
            if mod.col_margins is not None:
                margins = mod.col_margins[k]
                kept = {
                    (r, c): v for (r, c), v in diff.entries.items() if margins[c] >= margin_needed
                }
                diff = RationalMatrix(diff.rows, diff.cols, kept)
            if not diff.is_zero():
                violations.append({"pair": [list(x), list(y)], "index": k})
    return violations


def extend_trivially(vir_mod: WindowedModule, level_cap: int = 2) -> WindowedModule:
    """Promote a Virasoro window to a window over B with zero level->=1 actions.

    Level-0 matrices are reused unchanged; zero matrices are stored for
    levels 1 .. 2*level_cap so that every bracket produced by pairs up
    to level_cap stays inside the generator set.  The central scalar is
    halved: the level-0 part of B carries twice the Virasoro cocycle.
    """
    if vir_mod.variant != VIRASORO:
        raise ValueError("extend_trivially expects a Virasoro-variant window")
    degrees = sorted({g.alpha for g in vir_mod.generators if g.level == 0})
    generators = [BasisKey(a, 0) for a in degrees]
    actions: dict[tuple[BasisKey, int], RationalMatrix] = {}
    for a in degrees:
        for k in vir_mod.indices():
            m = vir_mod.actions.get((BasisKey(a, 0), k))
            if m is not None:
                actions[(BasisKey(a, 0), k)] = m
    for level in range(1, 2 * level_cap + 1):
        for a in degrees:
            g = BasisKey(a, level)
            generators.append(g)
            for k in vir_mod.indices():
                if vir_mod.in_range(k + a):
                    actions[(g, k)] = RationalMatrix.zero(vir_mod.dims[k + a], vir_mod.dims[k])
    return WindowedModule(
        BLOCK_B,
        vir_mod.offset,
        vir_mod.lo,
        vir_mod.hi,
        dict(vir_mod.dims),
        generators,
        actions,
        vir_mod.central_scalar / 2,
        None if vir_mod.col_margins is None else {k: list(v) for k, v in vir_mod.col_margins.items()},
    )


@dataclass
class ExtensionReport:
    """Solution space of compatible level->=1 actions on a Virasoro window."""

    dimension: int
    inconclusive: bool
    equations: int
    unknowns: int
    linear_kernel: int = 0
    quadratic_decided: bool = True
    basis: list[dict[tuple[int, int, int], RationalMatrix]] = field(default_factory=list)
    # basis entries map (level, degree, source index) to candidate matrices


def extension_space(
    vir_mod: WindowedModule,
    level_cap: int,
    degree_bound: int = 3,
    band: tuple[int, int] = (-2, 3),
) -> ExtensionReport:
    """Solve for all level->=1 actions compatible with a given Virasoro window.

    Unknowns are the matrices of the level-i degree-a generators
    (1 <= i <= level_cap, a inside the band) on every weight space.
    Bracketing against the known level-0 actions yields the linear
    relations

        rho(L_b) U^{(a,i)} - U^{(a,i)} rho(L_b) = (a - (i+1) b) U^{(a+b,i)},

    imposed wherever every touched index stays in range.  The linear
    kernel is then cut down by the exact quadratic constraints coming
    from brackets of two unknowns,

        [U^{(a,i)}, U^{(b,j)}] = ((i+1) b - (j+1) a) U^{(a+b,i+j)},

    with levels above level_cap acting as zero (the level-band quotient
    reading).  Restricted to the kernel the constraints are polynomials
    of degree two in the kernel coordinates; when their monomial
    linearization forces every coordinate monomial to vanish the
    solution set is exactly the zero action, when every constraint
    vanishes identically the whole kernel survives, and anything in
    between is reported undecided with the kernel attached.

    A zero-dimensional answer here certifies that the whole level->=1
    part acts by zero: those generators span an ideal generated by the
    in-band ones under level-0 brackets.
    """
    if vir_mod.variant != VIRASORO:
        raise ValueError("extension_space expects a Virasoro-variant window")
    lo, hi = vir_mod.lo, vir_mod.hi
    dims = vir_mod.dims
    band_lo, band_hi = band

    # unknown layout: (level, degree, k, row, col) -> flat index
    index: dict[tuple[int, int, int, int, int], int] = {}
    for level in range(1, level_cap + 1):
        for a in range(band_lo, band_hi + 1):
            for k in range(lo, hi + 1):
                if not lo <= k + a <= hi:
                    continue
                for r in range(dims[k + a]):
                    for c in range(dims[k]):
                        index[(level, a, k, r, c)] = len(index)
    n_unknowns = len(index)

    rows: list[dict[int, Fraction]] = []
    degrees = [d for d in range(-degree_bound, degree_bound + 1) if d != 0]
    for level in range(1, level_cap + 1):
        for a in range(band_lo, band_hi + 1):
            for b in degrees:
                if not band_lo <= a + b <= band_hi:
                    continue
                coeff = Fraction(a - (level + 1) * b)
                for k in range(lo, hi + 1):
                    touched = (k, k + a, k + b, k + a + b)
                    if not all(lo <= t <= hi for t in touched):
                        continue
                    rho_src = vir_mod.act(BasisKey(b, 0), k)
                    rho_tgt = vir_mod.act(BasisKey(b, 0), k + a)
                    if vir_mod.col_margins is not None:
                        need = abs(a) + abs(b)
                        kept = [c for c in range(dims[k]) if vir_mod.col_margins[k][c] >= need]
                    else:
                        kept = range(dims[k])
                    for u in range(dims[k + a + b]):
                        for v in kept:
                            cell: dict[int, Fraction] = {}

                            def bump(key: tuple, value: Fraction) -> None:
                                if value:
                                    pos = index[key]
                                    s = cell.get(pos, ZERO) + value
                                    if s:
                                        cell[pos] = s
                                    else:
                                        cell.pop(pos, None)

                            for r in range(dims[k + a]):
                                bump((level, a, k, r, v), rho_tgt.entry(u, r))
                            for s in range(dims[k + b]):
                                bump((level, a, k + b, u, s), -rho_src.entry(s, v))
                            bump((level, a + b, k, u, v), -coeff)
                            if cell:
                                rows.append(cell)

    if not rows or n_unknowns == 0:
        return ExtensionReport(
            dimension=n_unknowns,
            inconclusive=True,
            equations=len(rows),
            unknowns=n_unknowns,
            linear_kernel=n_unknowns,
            quadratic_decided=False,
        )

    entries = {}
    for r, cell in enumerate(rows):
        for c, v in cell.items():
            entries[(r, c)] = v
    reduction = row_reduce(RationalMatrix(len(rows), n_unknowns, entries))
    kernel = reduction.kernel
    kdim = len(kernel)

    def decode(vec: list[Fraction]) -> dict[tuple[int, int, int], RationalMatrix]:
        assignment = {}
        for level in range(1, level_cap + 1):
            for a in range(band_lo, band_hi + 1):
                for k in range(lo, hi + 1):
                    if not lo <= k + a <= hi:
                        continue
                    ent = {}
                    for r in range(dims[k + a]):
                        for c in range(dims[k]):
                            v = vec[index[(level, a, k, r, c)]]
                            if v:
                                ent[(r, c)] = v
                    assignment[(level, a, k)] = RationalMatrix(dims[k + a], dims[k], ent)
        return assignment

    if kdim == 0:
        return ExtensionReport(0, False, len(rows), n_unknowns, linear_kernel=0)

    decoded = [decode(vec) for vec in kernel]

    # Quadratic commutation constraints restricted to the kernel: each
    # scalar residual entry is sum_{m<=l} z_{ml} Bil(v_m, v_l) - sum_m s_m Lin(v_m)
    # in the monomials z_{ml} = s_m s_l and s_m.  If the stacked linear
    # system on those monomials has only the zero solution, so does the
    # quadratic system.
    mono_index: dict[tuple, int] = {}
    for m in range(kdim):
        for l in range(m, kdim):
            mono_index[("z", m, l)] = len(mono_index)
    for m in range(kdim):
        mono_index[("s", m)] = len(mono_index)

    def commutator(va, vb, a_key, b_key, k):
        # [U^{a_key}, U^{b_key}] at source k, using assignment va for the first
        left = va[(a_key[1], a_key[0], k + b_key[0])] @ vb[(b_key[1], b_key[0], k)]
        right = vb[(b_key[1], b_key[0], k + a_key[0])] @ va[(a_key[1], a_key[0], k)]
        return left - right

    quad_rows: list[dict[int, Fraction]] = []
    keys = [
        (a, i)
        for i in range(1, level_cap + 1)
        for a in range(band_lo, band_hi + 1)
    ]
    for ai in range(len(keys)):
        for bi in range(ai + 1, len(keys)):
            (a, i), (b, j) = keys[ai], keys[bi]
            coeff = Fraction((i + 1) * b - (j + 1) * a)
            target_in_band = band_lo <= a + b <= band_hi
            if coeff and i + j <= level_cap and not target_in_band:
                continue  # bracket lands outside the modeled band
            for k in range(lo, hi + 1):
                touched = (k, k + a, k + b, k + a + b)
                if not all(lo <= t <= hi for t in touched):
                    continue
                residual_by_mono: dict[int, RationalMatrix] = {}
                for m in range(kdim):
                    for l in range(m, kdim):
                        bil = commutator(decoded[m], decoded[l], (a, i), (b, j), k)
                        if l != m:
                            bil = bil + commutator(decoded[l], decoded[m], (a, i), (b, j), k)
                        if not bil.is_zero():
                            residual_by_mono[mono_index[("z", m, l)]] = bil
                if coeff and i + j <= level_cap:
                    for m in range(kdim):
                        lin = decoded[m][(i + j, a + b, k)].scale(-coeff)
                        if not lin.is_zero():
                            residual_by_mono[mono_index[("s", m)]] = lin
                if not residual_by_mono:
                    continue
                shape = next(iter(residual_by_mono.values()))
                for u in range(shape.rows):
                    for v in range(shape.cols):
                        cell = {
                            pos: mat.entry(u, v)
                            for pos, mat in residual_by_mono.items()
                            if mat.entry(u, v)
                        }
                        if cell:
                            quad_rows.append(cell)

    if not quad_rows:
        return ExtensionReport(
            kdim, False, len(rows), n_unknowns, linear_kernel=kdim, basis=decoded
        )
    qentries = {}
    for r, cell in enumerate(quad_rows):
        for c, v in cell.items():
            qentries[(r, c)] = v
    qreduction = row_reduce(RationalMatrix(len(quad_rows), len(mono_index), qentries))
    # any solution s embeds as the monomial vector (s (x) s, s); coordinate m
    # dies whenever the monomial kernel forces either s_m or its square z_mm
    # to zero, so the variety is {0} once every coordinate is dead
    def forced_zero(position: int) -> bool:
        return all(vec[position] == 0 for vec in qreduction.kernel)

    all_dead = all(
        forced_zero(mono_index[("s", m)]) or forced_zero(mono_index[("z", m, m)])
        for m in range(kdim)
    )
    if all_dead:
        return ExtensionReport(0, False, len(rows), n_unknowns, linear_kernel=kdim)
    # monomials not fully pinned: undecided in general
    return ExtensionReport(
        kdim,
        False,
        len(rows),
        n_unknowns,
        linear_kernel=kdim,
        quadratic_decided=False,
        basis=decoded,
    )


def submodule_closure(
    mod: WindowedModule,
    seeds: dict[int, list[Sequence[Fraction]]],
    generators: Sequence[BasisKey] | None = None,
) -> dict[int, int]:
    """Dimensions of the subspace generated from seed vectors under the stored actions.

    Iterates generator application until the per-index spans stabilize;
    growth is monotone and bounded by the window dimension.
    """
    gens = [BasisKey(*g) for g in (generators if generators is not None else mod.generators)]
    spans: dict[int, list[tuple[int, dict[int, Fraction]]]] = {k: [] for k in mod.indices()}

    def insert(k: int, dense: Sequence[Fraction]) -> bool:
        vec = {i: Fraction(v) for i, v in enumerate(dense) if v}
        span = spans[k]
        for pivot, row in span:
            coeff = vec.get(pivot)
            if coeff:
                for c, v in row.items():
                    s = vec.get(c, ZERO) - coeff * v
                    if s:
                        vec[c] = s
                    else:
                        vec.pop(c, None)
        if not vec:
            return False
        pivot = min(vec)
        inv = 1 / vec[pivot]
        vec = {c: v * inv for c, v in vec.items()}
        span.append((pivot, vec))
        span.sort(key=lambda pr: pr[0])
        return True

    frontier: list[tuple[int, list[Fraction]]] = []
    for k, vectors in seeds.items():
        if not mod.in_range(k):
            raise ValueError(f"seed index {k} outside window")
        for vec in vectors:
            dense = [Fraction(v) for v in vec]
            if len(dense) != mod.dims[k]:
                raise ValueError("seed vector length does not match weight-space dimension")
            if insert(k, dense):
                frontier.append((k, dense))

    while frontier:
        new_frontier = []
        for k, dense in frontier:
            for g in gens:
                m = mod.act(g, k)
                if m is None or m.rows == 0:
                    continue
                image = m.apply(dense)
                if any(image) and insert(k + g.alpha, image):
                    new_frontier.append((k + g.alpha, image))
        frontier = new_frontier
    return {k: len(spans[k]) for k in mod.indices()}


def irreducible_verdict(spec: IntermediateSpec, lo: int, hi: int) -> dict:
    """Brute-force single-seed closures versus the arithmetic criterion.

    The family criterion: irreducible iff a is not an integer, or a is
    an integer and b is neither 0 nor 1.  The brute-force verdict holds
    when the closure from every single basis vector fills the window.
    """
    if spec.family != "Aab":
        raise ValueError("irreducible_verdict applies to the Aab family")
    a = Fraction(spec.a)
    b = Fraction(spec.b)
    criterion = a.denominator != 1 or b not in (0, 1)
    mod = build_window(spec, lo, hi)
    full = {k: 1 for k in mod.indices()}
    bruteforce = True
    for k0 in mod.indices():
        closure = submodule_closure(mod, {k0: [[Fraction(1)]]})
        if closure != full:
            bruteforce = False
            break
    return {"bruteforce": bruteforce, "criterion": criterion, "agree": bruteforce == criterion}


def find_intertwiner(
    ma: WindowedModule,
    mb: WindowedModule,
    max_degree: int | None = None,
) -> Optional[dict[int, RationalMatrix]]:
    """A degree-preserving invertible map phi with phi . rho_A = rho_B . phi, if one exists.

    Solves the homogeneous linear system phi_{k+i} rho_A(L_i)_k =
    rho_B(L_i)_k phi_k over all shared level-0 generators and window
    indices, then searches the kernel for a member whose per-index
    blocks are all invertible.
    """
    if (ma.lo, ma.hi) != (mb.lo, mb.hi) or ma.offset != mb.offset:
        raise ValueError("intertwiner search needs equal ranges and weight offsets")
    if max_degree is None:
        max_degree = ma.hi - ma.lo
    shared = sorted(
        g for g in set(ma.generators) & set(mb.generators) if g.level == 0 and abs(g.alpha) <= max_degree
    )
    index: dict[tuple[int, int, int], int] = {}
    for k in ma.indices():
        for r in range(mb.dims[k]):
            for c in range(ma.dims[k]):
                index[(k, r, c)] = len(index)
    if not index:
        return None

    rows: list[dict[int, Fraction]] = []
    for g in shared:
        for k in ma.indices():
            t = k + g.alpha
            if not ma.in_range(t):
                continue
            ra = ma.act(g, k)
            rb = mb.act(g, k)
            for u in range(mb.dims[t]):
                for v in range(ma.dims[k]):
                    cell: dict[int, Fraction] = {}
                    for r in range(ma.dims[t]):
                        coeff = ra.entry(r, v)
                        if coeff:
                            idx = index[(t, u, r)]
                            cell[idx] = cell.get(idx, ZERO) + coeff
                    for s in range(mb.dims[k]):
                        coeff = rb.entry(u, s)
                        if coeff:
                            idx = index[(k, s, v)]
                            cell[idx] = cell.get(idx, ZERO) - coeff
                    cell = {i: v2 for i, v2 in cell.items() if v2}
                    if cell:
                        rows.append(cell)

    entries = {}
    for r, cell in enumerate(rows):
        for c, v in cell.items():
            entries[(r, c)] = v
    system = RationalMatrix(len(rows), len(index), entries)
    kernel = row_reduce(system).kernel
    if not kernel:
        return None

    def decode(vec: list[Fraction]) -> dict[int, RationalMatrix]:
        blocks = {}
        for k in ma.indices():
            ent = {}
            for r in range(mb.dims[k]):
                for c in range(ma.dims[k]):
                    v = vec[index[(k, r, c)]]
                    if v:
                        ent[(r, c)] = v
            blocks[k] = RationalMatrix(mb.dims[k], ma.dims[k], ent)
        return blocks

    def invertible(blocks: dict[int, RationalMatrix]) -> bool:
        for k in ma.indices():
            m = blocks[k]
            if m.rows != m.cols:
                return False
            if m.rows and row_reduce(m).rank != m.rows:
                return False
        return True

    candidates = list(kernel)
    for weight_power in (0, 1, 2, 3):
        combo = [ZERO] * len(index)
        for j, vec in enumerate(kernel, start=1):
            w = Fraction(j**weight_power)
            for i, v in enumerate(vec):
                combo[i] += w * v
        candidates.append(combo)
    for vec in candidates:
        blocks = decode(vec)
        if invertible(blocks):
            return blocks
    return None


def tensor(ma: WindowedModule, mb: WindowedModule) -> WindowedModule:
    """Leibniz-rule tensor product of two windows.

    The weight-k space is the direct sum of A_p (x) B_q over p+q = k with
    p, q inside the factor ranges.  Action targets whose factor index
    leaves its window are dropped, so each basis column carries its
    distance to the nearest factor edge; checks use those margins to
    stay on exact columns.
    """
    if ma.variant != mb.variant:
        raise ValueError("tensor factors must share an algebra variant")
    lo, hi = ma.lo + mb.lo, ma.hi + mb.hi
    pairs: dict[int, list[tuple[int, int, int, int]]] = {}
    position: dict[tuple[int, int, int, int], int] = {}
    margins: dict[int, list[int]] = {}
    dims: dict[int, int] = {}
    for k in range(lo, hi + 1):
        plist = []
        for p in ma.indices():
            q = k - p
            if not mb.in_range(q):
                continue
            for ia in range(ma.dims[p]):
                for ib in range(mb.dims[q]):
                    plist.append((p, ia, q, ib))
        pairs[k] = plist
        dims[k] = len(plist)
        for i, pair in enumerate(plist):
            position[pair] = i
        margins[k] = [
            min(p - ma.lo, ma.hi - p, q - mb.lo, mb.hi - q) for (p, _, q, _) in plist
        ]

    shared = sorted(set(ma.generators) & set(mb.generators))
    actions: dict[tuple[BasisKey, int], RationalMatrix] = {}
    for g in shared:
        d = g.alpha
        for k in range(lo, hi + 1):
            if not (lo <= k + d <= hi):
                continue
            entries: dict[tuple[int, int], Fraction] = {}
            for col, (p, ia, q, ib) in enumerate(pairs[k]):
                if ma.in_range(p + d):
                    mat = ma.act(g, p)
                    for r in range(ma.dims[p + d]):
                        v = mat.entry(r, ia)
                        if v:
                            row = position[(p + d, r, q, ib)]
                            entries[(row, col)] = entries.get((row, col), ZERO) + v
                if mb.in_range(q + d):
                    mat = mb.act(g, q)
                    for r in range(mb.dims[q + d]):
                        v = mat.entry(r, ib)
                        if v:
                            row = position[(p, ia, q + d, r)]
                            entries[(row, col)] = entries.get((row, col), ZERO) + v
            actions[(g, k)] = RationalMatrix(dims[k + d], dims[k], entries)
    return WindowedModule(
        ma.variant,
        ma.offset + mb.offset,
        lo,
        hi,
        dims,
        shared,
        actions,
        ma.central_scalar + mb.central_scalar,
        col_margins=margins,
    )


def direct_sum(ma: WindowedModule, mb: WindowedModule) -> WindowedModule:
    """Block-diagonal sum of two windows on the same range (exact everywhere)."""
    if ma.variant != mb.variant or (ma.lo, ma.hi) != (mb.lo, mb.hi) or ma.offset != mb.offset:
        raise ValueError("direct sum needs matching variant, range and offset")
    if ma.central_scalar != mb.central_scalar:
        raise ValueError("direct sum needs matching central scalars")
    if ma.col_margins is not None or mb.col_margins is not None:
        raise ValueError("direct sum expects exact (unmasked) windows")
    dims = {k: ma.dims[k] + mb.dims[k] for k in ma.indices()}
    shared = sorted(set(ma.generators) & set(mb.generators))
    actions: dict[tuple[BasisKey, int], RationalMatrix] = {}
    for g in shared:
        for k in ma.indices():
            t = k + g.alpha
            if not ma.in_range(t):
                continue
            a = ma.act(g, k)
            b = mb.act(g, k)
            entries = dict(a.entries)
            for (r, c), v in b.entries.items():
                entries[(r + ma.dims[t], c + ma.dims[k])] = v
            actions[(g, k)] = RationalMatrix(dims[t], dims[k], entries)
    return WindowedModule(ma.variant, ma.offset, ma.lo, ma.hi, dims, shared, actions, ma.central_scalar)


def adjoint_window(m: int, n: int, lo: int, hi: int, gen_degree: int = 2) -> WindowedModule:
    """The adjoint action on the level-band quotient, windowed by degree.

    The weight-k space has basis {L_{k,i} : m <= i <= n}, plus the
    central element at degree 0 when m = 0.  Level->=1 generators act
    nontrivially here, in contrast with the intermediate series.
    """
    variant = algebra.quotient(m, n)
    labels: dict[int, list] = {}
    for k in range(lo, hi + 1):
        lab: list = [("g", i) for i in range(m, n + 1)]
        if k == 0 and m == 0:
            lab.append(("c",))
        labels[k] = lab
    dims = {k: len(labels[k]) for k in labels}
    position = {k: {lab: i for i, lab in enumerate(labels[k])} for k in labels}
    generators = [
        BasisKey(g, j) for g in range(-gen_degree, gen_degree + 1) for j in range(m, n + 1)
    ]
    actions: dict[tuple[BasisKey, int], RationalMatrix] = {}
    for g in generators:
        for k in range(lo, hi + 1):
            t = k + g.alpha
            if not (lo <= t <= hi):
                continue
            entries: dict[tuple[int, int], Fraction] = {}
            for col, lab in enumerate(labels[k]):
                if lab == ("c",):
                    continue  # C is central: ad(x) C = 0
                level = lab[1]
                terms, central_coeff = bracket_terms(variant, g, BasisKey(k, level))
                for key, coeff in terms.items():
                    row = position[t][("g", key.level)]
                    entries[(row, col)] = entries.get((row, col), ZERO) + coeff
                if central_coeff:
                    row = position[t][("c",)]
                    entries[(row, col)] = entries.get((row, col), ZERO) + central_coeff
            actions[(g, k)] = RationalMatrix(dims[t], dims[k], entries)
    return WindowedModule(variant, ZERO, lo, hi, dims, generators, actions, ZERO, labels=labels)


def classify_window(mod: WindowedModule) -> dict:
    """Window-scale trichotomy verdict.

    Tries an exact intermediate-series fit first (all dimensions 1,
    vanishing level->=1 actions, level-0 coefficients interpolating
    a + k + b*i).  Otherwise looks for a highest-weight shape (visibly
    empty spaces above a generating top space), then the dual
    lowest-weight shape.  A window that is both reports highest-weight.
    When the fitted a is an integer the canonical shifted form (0, b)
    is attached alongside the exact fit.
    """
    dims = mod.dims
    nonzero = [k for k in mod.indices() if dims[k] > 0]
    if not nonzero:
        return {"verdict": "unknown", "reason": "empty window"}

    if all(dims[k] == 1 for k in mod.indices()):
        level_pos_zero = all(
            mod.actions[(g, k)].is_zero()
            for g in mod.generators
            if g.level >= 1
            for k in mod.indices()
            if (g, k) in mod.actions
        )
        if level_pos_zero:
            samples = []
            for g in mod.generators:
                if g.level != 0:
                    continue
                for k in mod.indices():
                    mat = mod.actions.get((g, k))
                    if mat is not None:
                        samples.append((g.alpha, k, mat.entry(0, 0)))
            pair = None
            for i1, k1, c1 in samples:
                if i1 != 0:
                    for i2, k2, c2 in samples:
                        if i2 != i1:
                            pair = ((i1, k1, c1), (i2, k2, c2))
                            break
                if pair:
                    break
            if pair:
                (i1, k1, c1), (i2, k2, c2) = pair
                b = ((c1 - k1) - (c2 - k2)) / (i1 - i2)
                a = c1 - k1 - b * i1
                if all(c == a + k + b * i for i, k, c in samples):
                    verdict = {
                        "verdict": "intermediate-series",
                        "a": format_rational(a),
                        "b": format_rational(b),
                    }
                    if a.denominator == 1:
                        verdict["canonical"] = ["0", format_rational(b)]
                    return verdict

    k_top = max(nonzero)
    if k_top < mod.hi:
        seeds = {k_top: [[Fraction(1) if i == j else ZERO for i in range(dims[k_top])] for j in range(dims[k_top])]}
        if submodule_closure(mod, seeds) == dims:
            return {"verdict": "highest-weight", "top": k_top}
    k_bot = min(nonzero)
    if k_bot > mod.lo:
        seeds = {k_bot: [[Fraction(1) if i == j else ZERO for i in range(dims[k_bot])] for j in range(dims[k_bot])]}
        if submodule_closure(mod, seeds) == dims:
            return {"verdict": "lowest-weight", "bottom": k_bot}
    return {"verdict": "unknown"}


def core_spanning_check(mod: WindowedModule) -> bool:
    """Is every window vector a combination of the core band and single actions on it?

    The core band is the slice of indices -2..2.  For each index k
    outside the band the span of the images L_{k-i} V_i, i in [-2, 2],
    must fill the whole weight space V_k.
    """
    if mod.lo > -8 or mod.hi < 8:
        raise ValueError("core spanning check needs the window to contain [-8, 8]")
    for k in mod.indices():
        if -2 <= k <= 2 or mod.dims[k] == 0:
            continue
        columns: list[list[Fraction]] = []
        for i in range(-2, 3):
            g = BasisKey(k - i, 0)
            if not mod.has_generator(g):
                continue
            mat = mod.act(g, i)
            if mat is None:
                continue
            for c in range(mat.cols):
                columns.append(mat.column_vector(c))
        if not columns:
            return False
        stacked = RationalMatrix(
            mod.dims[k],
            len(columns),
            {
                (r, c): v
                for c, colvec in enumerate(columns)
                for r, v in enumerate(colvec)
                if v
            },
        )
        if row_reduce(stacked).rank != mod.dims[k]:
            return False
    return True
