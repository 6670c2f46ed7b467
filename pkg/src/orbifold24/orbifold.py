"""Fixed-point subalgebras, twisted-sector roots and Lie algebra identification.

Root and weight functionals on a product algebra are stored per factor in
that factor's simple-root basis.  Two bilinear forms matter:

* the plain normalized form, summed over factors -- this is what the inner
  automorphism sees: a weight vector of weight lambda picks up the phase
  exp(-2 pi i (h|lambda));
* the invariant form of the ambient algebra, which on root functionals is
  sum_i (.|.)_i / k_i.  A root subsystem spanned by Cartan weight vectors
  has long roots of invariant norm 2/k where k is its level, so levels are
  read off as 2 / (invariant norm of a long root).  This reproduces the
  level transfer rules: a subsystem built on short ambient roots has its
  level multiplied by the squared-length ratio (2 for B/C/F, 3 for G).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .affine import HVector, ProductAlgebra
from .rootsys import RootSystemError, SimpleType, Vec, build_root_datum

ProductWeight = tuple[Vec, ...]  # one component per ambient factor


class OrbifoldError(ValueError):
    pass


# -- product-space linear algebra -------------------------------------------


def factor_root(a: ProductAlgebra, i: int, alpha: Vec) -> ProductWeight:
    return tuple(
        alpha if j == i else tuple(Fraction(0) for _ in range(t.rank))
        for j, (t, _) in enumerate(a.factors)
    )


def plain_pairing(a: ProductAlgebra, x: ProductWeight, y: ProductWeight) -> Fraction:
    return sum(
        (d.pair(xi, yi) for d, xi, yi in zip(a.data, x, y)), Fraction(0)
    )


def invariant_pairing(a: ProductAlgebra, x: ProductWeight, y: ProductWeight) -> Fraction:
    total = Fraction(0)
    for (_, k), d, xi, yi in zip(a.factors, a.data, x, y):
        total += d.pair(xi, yi) / k
    return total


def negate(x: ProductWeight) -> ProductWeight:
    return tuple(tuple(-c for c in comp) for comp in x)


# -- shapes and seeds --------------------------------------------------------


def _shape_sort_key(ideal):
    t, k = ideal
    return (t.letter, t.rank, k)


@dataclass(frozen=True)
class SemisimpleShape:
    """A multiset of simple ideals with levels, plus an abelian center."""

    ideals: tuple[tuple[SimpleType, int], ...]
    center_dim: int = 0

    def __post_init__(self):
        object.__setattr__(self, "ideals", tuple(sorted(self.ideals, key=_shape_sort_key)))

    @property
    def dim(self) -> int:
        return sum(t.dim for t, _ in self.ideals) + self.center_dim

    @property
    def rank(self) -> int:
        return sum(t.rank for t, _ in self.ideals) + self.center_dim

    @staticmethod
    def parse(s: str) -> "SemisimpleShape":
        ideals = []
        center = 0
        for token in s.split():
            body, _, mult = token.partition("^")
            mult = int(mult) if mult else 1
            if body == "U(1)":
                center += mult
                continue
            name, _, level = body.partition(",")
            ideals.extend([(SimpleType.parse(name), int(level))] * mult)
        return SemisimpleShape(tuple(ideals), center)

    def __str__(self):
        groups: list[tuple[tuple[SimpleType, int], int]] = []
        for ideal in self.ideals:
            if groups and groups[-1][0] == ideal:
                groups[-1] = (ideal, groups[-1][1] + 1)
            else:
                groups.append((ideal, 1))
        parts = [
            f"{t},{k}" + (f"^{m}" if m > 1 else "") for (t, k), m in groups
        ]
        if self.center_dim:
            parts.append("U(1)" + (f"^{self.center_dim}" if self.center_dim > 1 else ""))
        return " ".join(parts)


@dataclass(frozen=True)
class SeedSubalgebra:
    """A simple root subsystem spanned by ambient Cartan weight vectors."""

    type: SimpleType
    level: int
    simple_roots: tuple[ProductWeight, ...]
    roots: tuple[ProductWeight, ...]
    long_norm_ambient: Fraction  # plain ambient norm of the seed's long roots

    @property
    def long_in_ambient(self) -> bool:
        return self.long_norm_ambient == 2


# -- component classification ------------------------------------------------


@lru_cache(maxsize=None)
def _catalog_cartan(t: SimpleType):
    return build_root_datum(t).cartan


def _cartan_permutation_match(C, target) -> bool:
    """Whether C equals target up to a simultaneous permutation of indices."""
    n = len(C)
    if len(target) != n:
        return False

    def row_profile(M, i):
        return tuple(sorted(M[i][j] for j in range(n) if j != i))

    src_prof = [row_profile(C, i) for i in range(n)]
    tgt_prof = [row_profile(target, i) for i in range(n)]
    if sorted(src_prof) != sorted(tgt_prof):
        return False
    assignment = [-1] * n
    used = [False] * n

    def rec(i):
        if i == n:
            return True
        for j in range(n):
            if used[j] or src_prof[j] != tgt_prof[i]:
                continue
            ok = True
            for i2 in range(i):
                j2 = assignment[i2]
                if C[j][j2] != target[i][i2] or C[j2][j] != target[i2][i]:
                    ok = False
                    break
            if ok:
                used[j] = True
                assignment[i] = j
                if rec(i + 1):
                    return True
                used[j] = False
        return False

    return rec(0)


def classify_simple_system(simple_gram) -> SimpleType:
    """Identify the simple type from the Gram matrix of a simple system.

    The Cartan integers are scale invariant, so the Gram matrix may carry
    any overall positive scaling.
    """
    n = len(simple_gram)
    C = [
        [2 * simple_gram[i][j] / simple_gram[i][i] for j in range(n)]
        for i in range(n)
    ]
    if any(v.denominator != 1 for row in C for v in row):
        raise OrbifoldError("not a crystallographic simple system")
    C = [[int(v) for v in row] for row in C]
    # A before D and C before B, so the coincidences D3=A3 and B2=C2 get
    # their canonical names
    candidates = [("A", n), ("C", n), ("B", n), ("D", n), ("E", n), ("F", n), ("G", n)]
    for letter, rank in candidates:
        try:
            t = SimpleType(letter, rank)
        except RootSystemError:
            continue
        if _cartan_permutation_match(C, _catalog_cartan(t)):
            return t
    raise OrbifoldError(f"Cartan matrix {C} matches no simple type")


def _extract_simple_system(roots):
    """Simple roots of a root set: the lexicographically positive roots that
    are not sums of two positive roots.

    Lexicographic positivity on the flattened coordinates is induced by a
    generic linear functional, so it is a valid choice of positive system.
    """
    root_set = set(roots)
    if root_set != {negate(r) for r in root_set}:
        raise OrbifoldError("root set is not closed under negation")
    flat = {r: tuple(c for comp in r for c in comp) for r in roots}
    positive = [r for r in roots if flat[r] > tuple(-c for c in flat[r])]
    pos_set = set(positive)
    simple = []
    for r in positive:
        decomposable = any(
            tuple(
                tuple(a - b for a, b in zip(cr, cs)) for cr, cs in zip(r, s)
            )
            in pos_set
            for s in positive
            if s != r
        )
        if not decomposable:
            simple.append(r)
    simple.sort(key=lambda r: flat[r])
    return simple


def _classify_component(a: ProductAlgebra, roots) -> SeedSubalgebra:
    """Classify one indecomposable component and read off its level."""
    form = lambda x, y: invariant_pairing(a, x, y)
    simple = _extract_simple_system(roots)
    gram = [[form(x, y) for y in simple] for x in simple]
    t = classify_simple_system(gram)
    if len(roots) != t.num_roots:
        raise OrbifoldError(
            f"component classified as {t} but has {len(roots)} roots, expected {t.num_roots}"
        )
    long_inv = max(form(r, r) for r in roots)
    level = 2 / long_inv
    if level.denominator != 1 or level < 1:
        raise OrbifoldError(f"component of type {t} has non-integral level {level}")
    long_plain = max(plain_pairing(a, r, r) for r in roots)
    return SeedSubalgebra(t, int(level), tuple(simple), tuple(sorted(roots)), long_plain)


def _components(a: ProductAlgebra, roots):
    """Split a root set into indecomposable components under the form."""
    roots = sorted(roots)
    parent = list(range(len(roots)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, r in enumerate(roots):
        for j in range(i + 1, len(roots)):
            if invariant_pairing(a, r, roots[j]) != 0:
                pi, pj = find(i), find(j)
                if pi != pj:
                    parent[pi] = pj
    groups: dict[int, list] = {}
    for i, r in enumerate(roots):
        groups.setdefault(find(i), []).append(r)
    return [sorted(g) for g in groups.values()]


# -- the fixed-point subalgebra ----------------------------------------------


def fixed_subalgebra(a: ProductAlgebra, h: HVector):
    """Roots of the ambient algebra fixed by the inner automorphism of h.

    Collects the ambient roots alpha with (h|alpha) integral, splits them
    into indecomposable components, classifies each component and reads off
    its level; the leftover Cartan directions form the abelian center.
    """
    fixed = []
    for i, ((t, _), d, comp) in enumerate(zip(a.factors, a.data, h.components)):
        for alpha in d.roots:
            val = d.pair(comp, alpha)
            if (2 * val).denominator != 1:
                raise OrbifoldError(
                    f"(h|alpha) = {val} is not half-integral on factor {t}"
                )
            if val.denominator == 1:
                fixed.append(factor_root(a, i, alpha))
    seeds = [_classify_component(a, comp) for comp in _components(a, fixed)]
    seeds.sort(key=lambda s: (_shape_sort_key((s.type, s.level)), s.simple_roots))
    center = a.rank - sum(s.type.rank for s in seeds)
    shape = SemisimpleShape(tuple((s.type, s.level) for s in seeds), center)
    return shape, seeds


def level_transfer(long_norm_ambient: Fraction, ambient_level: int) -> int:
    """Level of a subsystem whose long roots have the given ambient norm.

    Norm 2 keeps the ambient level; short ambient roots scale it by the
    squared-length ratio (2 for B/C/F ambient, 3 for G2).
    """
    level = 2 * Fraction(ambient_level) / Fraction(long_norm_ambient)
    if level.denominator != 1 or level < 1:
        raise OrbifoldError(
            f"inconsistent norms: ambient norm {long_norm_ambient} at level {ambient_level}"
        )
    return int(level)


# -- twisted sector ----------------------------------------------------------


def twisted_sector_roots(a: ProductAlgebra, h: HVector, base_weights) -> list[ProductWeight]:
    """Weights mu + k h (factorwise) of twisted-sector vectors of weight one."""
    out = []
    for mu in base_weights:
        shifted = tuple(
            tuple(m + k * hc for m, hc in zip(mu_i, h_i))
            for (_, k), mu_i, h_i in zip(a.factors, mu, h.components)
        )
        out.append(shifted)
    return out


def assemble_root_subsystem(a: ProductAlgebra, fixed_roots, twisted_roots) -> SeedSubalgebra:
    """Verify that the union of the given roots is one simple root system.

    Closure is checked under negation and under the reflections in every
    element of the set (with respect to the invariant form); failures
    report the violating pair.
    """
    roots = sorted(set(fixed_roots) | set(twisted_roots))
    root_set = set(roots)
    for r in roots:
        if negate(r) not in root_set:
            raise OrbifoldError(f"root set not closed under negation at {r}")
    for r in roots:
        nr = invariant_pairing(a, r, r)
        for s in roots:
            c = 2 * invariant_pairing(a, r, s) / nr
            if c.denominator != 1:
                raise OrbifoldError(f"non-crystallographic pair {r}, {s}")
            if c:
                refl = tuple(
                    tuple(sx - c * rx for sx, rx in zip(cs, cr))
                    for cs, cr in zip(s, r)
                )
                if refl not in root_set:
                    raise OrbifoldError(
                        f"not a root system: reflection of {s} in {r} escapes the set"
                    )
    comps = _components(a, roots)
    if len(comps) != 1:
        raise OrbifoldError(f"assembled set splits into {len(comps)} components")
    return _classify_component(a, roots)


# -- sub-root-system embeddings ----------------------------------------------


@lru_cache(maxsize=None)
def _root_pairings(t: SimpleType):
    """All roots of a type with their full pairing matrix, cached."""
    d = build_root_datum(t)
    roots = d.roots
    P = [[d.pair(r, s) for s in roots] for r in roots]
    norms = [P[i][i] for i in range(len(roots))]
    return roots, P, norms


def _find_gram_embedding(target: SimpleType, required_gram, allowed_norms=None) -> bool:
    """Backtracking search for roots of the target with a prescribed Gram matrix.

    Domains are filtered forward after every placement and the next index is
    always the one with the smallest domain.  Any solution can be moved by
    the Weyl group, which is transitive on roots of a given length, so the
    very first placement ranges over a single representative.
    """
    roots, P, norms = _root_pairings(target)
    k = len(required_gram)
    domains = []
    for i in range(k):
        want = required_gram[i][i]
        dom = [
            j
            for j in range(len(roots))
            if norms[j] == want and (allowed_norms is None or norms[j] in allowed_norms)
        ]
        if not dom:
            return False
        domains.append(dom)

    def rec(domains, unplaced, first):
        if not unplaced:
            return True
        i = min(unplaced, key=lambda j: len(domains[j]))
        pool = domains[i][:1] if first else domains[i]
        rest = unplaced - {i}
        for r in pool:
            new_domains = list(domains)
            ok = True
            for j in rest:
                row = P[r]
                want_row = required_gram[i][j]
                nd = [s for s in domains[j] if row[s] == want_row]
                if not nd:
                    ok = False
                    break
                new_domains[j] = nd
            if ok and rec(new_domains, rest, False):
                return True
        return False

    return rec(domains, frozenset(range(k)), True)


def _normalized_simple_gram(t: SimpleType):
    d = build_root_datum(t)
    return [[d.gram[i][j] for j in range(d.rank)] for i in range(d.rank)]


def _block_gram(parts, scalings):
    blocks = []
    offsets = []
    total = 0
    for t in parts:
        offsets.append(total)
        total += t.rank
    G = [[Fraction(0)] * total for _ in range(total)]
    for t, xi, off in zip(parts, scalings, offsets):
        g = _normalized_simple_gram(t)
        for i in range(t.rank):
            for j in range(t.rank):
                G[off + i][off + j] = g[i][j] / xi
    return G


@lru_cache(maxsize=None)
def _embedding_cached(target: SimpleType, parts_scaled, long_only: bool) -> bool:
    parts = tuple(t for t, _ in parts_scaled)
    scalings = [Fraction(x) for _, x in parts_scaled]
    G = _block_gram(parts, scalings)
    allowed = frozenset([Fraction(2)]) if long_only else None
    return _find_gram_embedding(target, G, allowed)


def _embedding_query(target: SimpleType, parts, scalings, long_only: bool = False) -> bool:
    key = tuple(sorted(zip(parts, scalings), key=lambda ps: (_shape_sort_key((ps[0], 1)), ps[1])))
    return _embedding_cached(target, key, long_only)


def embeds(x, y: SimpleType, long_only: bool = False) -> bool:
    """Whether a simple system of type x (or an orthogonal sum of types)
    exists inside the root set of y, norms matching exactly."""
    parts = tuple(x) if isinstance(x, (tuple, list)) else (x,)
    if sum(t.rank for t in parts) > y.rank:
        return False
    return _embedding_query(y, parts, (1,) * len(parts), long_only)


# -- identification of the new weight-one algebra ----------------------------


def _candidate_ideals(rank_budget: int, dim_target: int, ratio: Fraction):
    """Simple ideals (type, level) with h_vee = ratio * level, bounded by
    the rank and dimension budget.  B2 and D3 are reported as C2 and A3."""
    out = []
    for letter in "ABCDEFG":
        for rank in range(1, min(rank_budget, 12) + 1):
            if (letter, rank) in (("B", 2), ("D", 3)):
                continue
            try:
                t = SimpleType(letter, rank)
            except RootSystemError:
                continue
            if t.dim > dim_target:
                continue
            level = Fraction(t.dual_coxeter) / ratio
            if level.denominator == 1 and level >= 1:
                out.append((t, int(level)))
    out.sort(key=lambda c: (-c[0].dim, _shape_sort_key(c)))
    return out


def _seed_placements(seed, ideal):
    """Admissible level scalings for placing a seed inside a candidate ideal."""
    (st, sk), (it, ik) = seed, ideal
    if st.rank > it.rank:
        return []
    out = []
    if sk == ik:
        out.append(1)
    simply_laced = st.letter in ("A", "D", "E")
    if simply_laced and it.letter in ("B", "C", "F") and sk == 2 * ik:
        out.append(2)
    if simply_laced and it.letter == "G" and sk == 3 * ik:
        out.append(3)
    return out


def identify(rank_budget: int, dim_target: int, seeds) -> list[SemisimpleShape]:
    """All semisimple shapes consistent with the dimension, the rank, the
    ratio constraint h_vee/level = (dim-24)/24 and the seed subalgebras.

    Seeds are (type, level) pairs (SeedSubalgebra instances are accepted);
    each seed must embed in some ideal, with both level-transfer branches
    tried, and seeds sharing an ideal must embed as an orthogonal sum.
    """
    if dim_target <= 24:
        raise OrbifoldError("dimension target must exceed 24")
    ratio = Fraction(dim_target - 24, 24)
    seed_keys = [
        (s.type, s.level) if isinstance(s, SeedSubalgebra) else (s[0], s[1])
        for s in seeds
    ]
    candidates = _candidate_ideals(rank_budget, dim_target, ratio)

    multisets: list[tuple] = []

    def enum(idx, rank_left, dim_left, acc):
        if rank_left == 0 and dim_left == 0:
            multisets.append(tuple(acc))
            return
        if idx == len(candidates) or rank_left <= 0 or dim_left <= 0:
            return
        t, k = candidates[idx]
        max_copies = min(rank_left // t.rank, dim_left // t.dim)
        for copies in range(max_copies, -1, -1):
            enum(
                idx + 1,
                rank_left - copies * t.rank,
                dim_left - copies * t.dim,
                acc + [(t, k)] * copies,
            )

    enum(0, rank_budget, dim_target, [])

    def admits_seeds(ideals) -> bool:
        options = []
        for seed in seed_keys:
            opts = []
            for slot, ideal in enumerate(ideals):
                for xi in _seed_placements(seed, ideal):
                    opts.append((slot, xi))
            if not opts:
                return False
            options.append(opts)

        def assign(i, per_slot):
            if i == len(seed_keys):
                return True
            for slot, xi in options[i]:
                per_slot.setdefault(slot, [])
                per_slot[slot].append((seed_keys[i][0], xi))
                parts = tuple(t for t, _ in per_slot[slot])
                scalings = tuple(x for _, x in per_slot[slot])
                ok = sum(t.rank for t in parts) <= ideals[slot][0].rank and _embedding_query(
                    ideals[slot][0], parts, scalings
                )
                if ok and assign(i + 1, per_slot):
                    return True
                per_slot[slot].pop()
                if not per_slot[slot]:
                    del per_slot[slot]
            return False

        return assign(0, {})

    shapes = {str(SemisimpleShape(m)): SemisimpleShape(m) for m in multisets if admits_seeds(m)}
    return [shapes[k] for k in sorted(shapes)]


# -- the Verlinde check --------------------------------------------------------


def verlinde_simple_current(a: int):
    """Fusion rules of the four-module system from its S-matrix.

    For a = 1 or -1 the 4x4 S-matrix squares to the identity; the Verlinde
    sum must produce nonnegative integer fusion coefficients with
    N_{P,P}^Q nonzero only at the vacuum, where it is 1.
    """
    if a not in (1, -1):
        raise OrbifoldError("the S-matrix parameter must be +1 or -1")
    half = Fraction(1, 2)
    S = [
        [half, half, half, half],
        [half, half, -half, -half],
        [half, -half, a * half, -a * half],
        [half, -half, -a * half, a * half],
    ]
    n = 4
    ident = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    S2 = [[sum(S[i][k] * S[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    if S2 != ident:
        raise OrbifoldError("S-matrix does not square to the identity")
    N = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for p in range(n):
        for q in range(n):
            for r in range(n):
                val = sum(S[p][t] * S[q][t] * S[t][r] / S[0][t] for t in range(n))
                if val.denominator != 1 or val < 0:
                    raise OrbifoldError(
                        f"fusion coefficient N_{p},{q}^{r} = {val} is not a nonnegative integer"
                    )
                N[p][q][r] = int(val)
    for p in range(n):
        for r in range(n):
            expected = 1 if r == 0 else 0
            if N[p][p][r] != expected:
                raise OrbifoldError(f"module {p} is not a simple current: N[{p}][{p}][{r}]={N[p][p][r]}")
    return tuple(tuple(tuple(row) for row in plane) for plane in N)
