"""Scenario files and the batch verification pipeline.

A scenario file is plain key/value text describing one order-2 inner twist:
the ambient product algebra, the Cartan element h (fundamental-weight
coefficients per factor), and the expected outcomes of every pipeline
stage.  The runner executes the stages in order and reports one named
check per stage; reports are deterministic byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import lattice as lat
from .affine import (
    AffineLabel,
    HVector,
    ProductAlgebra,
    ProductLabel,
    enumerate_modules,
    integral_spectrum_table,
    product_twisted_lowest,
    spectrum_half_integral,
    twisted_positivity_certificate,
)
from .orbifold import (
    SemisimpleShape,
    assemble_root_subsystem,
    fixed_subalgebra,
    identify,
    invariant_pairing,
    negate,
    twisted_sector_roots,
    verlinde_simple_current,
)
from .qseries import DEFAULT_TRUNC, dimension_identities
from .rootsys import SimpleType, support_contains


class ScenarioError(ValueError):
    pass


@dataclass
class Scenario:
    name: str
    algebra: ProductAlgebra
    h: HVector
    expect_h_norm: Fraction
    expect_fixed: SemisimpleShape
    expect_fixed_dim: int
    expect_new_dim: int
    expect_shape: SemisimpleShape
    table_max_weight: Fraction | None = None
    table_weights: frozenset | None = None
    expect_table_counts: dict | None = None
    base_weights: list | None = None
    expect_twisted_seed: tuple | None = None
    lattice: bool = False
    assumptions: list = field(default_factory=list)
    notes: list = field(default_factory=list)


def _parse_coeff_list(text: str):
    return [Fraction(tok) for tok in text.split()]


def _parse_factor_lists(text: str):
    return [_parse_coeff_list(part) for part in text.split("|")]


def parse_scenario(text: str, source: str = "<string>") -> Scenario:
    fields: dict[str, list[str]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise ScenarioError(f"{source}:{lineno}: expected 'key: value'")
        fields.setdefault(key.strip(), []).append(value.strip())

    def one(key, default=None):
        vals = fields.get(key)
        if vals is None:
            if default is not None:
                return default
            raise ScenarioError(f"{source}: missing required field '{key}'")
        if len(vals) != 1:
            raise ScenarioError(f"{source}: field '{key}' given more than once")
        return vals[0]

    try:
        factors = [
            (SimpleType.parse(tok.split()[0]), int(tok.split()[1]))
            for tok in fields.get("factor", [])
        ]
        algebra = ProductAlgebra(tuple(factors))
        h = HVector.from_fundamental(algebra, _parse_factor_lists(one("h")))
        sc = Scenario(
            name=one("name"),
            algebra=algebra,
            h=h,
            expect_h_norm=Fraction(one("expect_h_norm")),
            expect_fixed=SemisimpleShape.parse(one("expect_fixed")),
            expect_fixed_dim=int(one("expect_fixed_dim")),
            expect_new_dim=int(one("expect_new_dim")),
            expect_shape=SemisimpleShape.parse(one("expect_shape")),
            lattice=one("lattice", "false").lower() == "true",
            assumptions=fields.get("assume", []),
            notes=fields.get("note", []),
        )
        if "table_max_weight" in fields:
            sc.table_max_weight = Fraction(one("table_max_weight"))
        if "table_weights" in fields:
            sc.table_weights = frozenset(Fraction(t) for t in one("table_weights").split())
            sc.table_max_weight = max(sc.table_weights)
        if "expect_table_counts" in fields:
            sc.expect_table_counts = {}
            for tok in one("expect_table_counts").split():
                w, _, n = tok.partition(":")
                sc.expect_table_counts[Fraction(w)] = int(n)
        if "base_weights" in fields:
            groups = one("base_weights").split(";")
            sc.base_weights = [
                tuple(
                    d.weight_from_fundamental(coeffs)
                    for d, coeffs in zip(algebra.data, _parse_factor_lists(g))
                )
                for g in groups
            ]
        if "expect_twisted_seed" in fields:
            t, k, n = one("expect_twisted_seed").split()
            sc.expect_twisted_seed = (SimpleType.parse(t), int(k), int(n))
        if sc.base_weights is not None and sc.expect_twisted_seed is None:
            raise ScenarioError(
                f"{source}: base_weights requires expect_twisted_seed"
            )
    except ScenarioError:
        raise
    except (ValueError, IndexError) as exc:
        raise ScenarioError(f"{source}: {exc}") from exc
    return sc


# -- reports -------------------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    name: str
    expected: str
    actual: str

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


@dataclass
class Report:
    scenario: str
    checks: list
    assumptions: list
    notes: list
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.error is None and all(c.ok for c in self.checks)

    def lines(self, verbose: bool = False):
        out = [f"scenario {self.scenario}: {'PASS' if self.passed else 'FAIL'}"]
        for a in self.assumptions:
            out.append(f"  assumption: {a}")
        for n in self.notes:
            out.append(f"  note: {n}")
        if self.error is not None:
            out.append(f"  error: {self.error}")
        for c in self.checks:
            if c.ok:
                if verbose:
                    out.append(f"  [ok]   {c.name}: {c.actual}")
            else:
                out.append(f"  [FAIL] {c.name}: expected {c.expected}, got {c.actual}")
        return out

    def records(self):
        recs = [
            {
                "scenario": self.scenario,
                "check": c.name,
                "expected": c.expected,
                "actual": c.actual,
                "status": "pass" if c.ok else "fail",
            }
            for c in self.checks
        ]
        if self.error is not None:
            recs.append(
                {"scenario": self.scenario, "check": "run", "expected": "completion",
                 "actual": self.error, "status": "fail"}
            )
        return recs


def _vacuum_label(a: ProductAlgebra) -> ProductLabel:
    return ProductLabel(
        a, tuple(AffineLabel(t, k, (0,) * t.rank) for t, k in a.factors)
    )


def derive_seeds(sc: Scenario):
    """Fixed shape plus the seed list used for identification.

    When twisted-sector base weights are configured, the fixed components
    meeting the twisted roots are merged into the assembled subsystem,
    which replaces them in the seed list.
    """
    a, h = sc.algebra, sc.h
    shape, seeds = fixed_subalgebra(a, h)
    psi = None
    if sc.base_weights is not None:
        tw = twisted_sector_roots(a, h, sc.base_weights)
        tw = tw + [negate(t) for t in tw]
        joined = [
            s
            for s in seeds
            if any(invariant_pairing(a, r, t) != 0 for r in s.roots for t in tw)
        ]
        fixed_part = [r for s in joined for r in s.roots]
        psi = assemble_root_subsystem(a, fixed_part, tw)
        seeds = [s for s in seeds if s not in joined] + [psi]
    return shape, seeds, psi


def run_scenario(sc: Scenario, trunc: int = DEFAULT_TRUNC) -> Report:
    checks: list[CheckResult] = []
    add = lambda name, expected, actual: checks.append(
        CheckResult(name, str(expected), str(actual))
    )

    try:
        a, h = sc.algebra, sc.h

        # order 2: all root pairings are half-integral, at least one strictly
        pairings = [
            (d.pair(comp, alpha), d)
            for d, comp in zip(a.data, h.components)
            for alpha in d.roots
        ]
        half_integral = all((2 * v).denominator == 1 for v, _ in pairings)
        strict = any(v.denominator == 2 for v, _ in pairings)
        add("order-two-pairings", "half-integral with a strict value",
            "half-integral with a strict value" if half_integral and strict else
            f"half-integral={half_integral}, strict={strict}")

        # assumption for the twisted lowest-weight theory: (h|alpha) >= -1
        add("pairing-lower-bound", "(h|alpha) >= -1 on all roots",
            "(h|alpha) >= -1 on all roots" if all(v >= -1 for v, _ in pairings)
            else "violated")

        add("h-norm", sc.expect_h_norm, h.norm_invariant())

        # integral-weight module table
        if sc.table_max_weight is not None:
            table = integral_spectrum_table(a, sc.table_max_weight, sc.table_weights)
            counts: dict[Fraction, int] = {}
            for _, w in table:
                counts[w] = counts.get(w, 0) + 1
            fmt = lambda cs: " ".join(f"{w}:{n}" for w, n in sorted(cs.items()))
            add("module-table", fmt(sc.expect_table_counts), fmt(counts))
            labels = [lbl for lbl, _ in table]
            if sc.table_weights is not None:
                labels.append(_vacuum_label(a))
            add("spectrum-half-integral", True, spectrum_half_integral(a, h, labels))

            # no module may reach twisted weight 1/2, so the half-graded part is 0
            lows = sorted(product_twisted_lowest(lbl, h) for lbl in labels)
            add("twisted-weights-exclude-half", "minimum > 1/2",
                "minimum > 1/2" if lows[0] > Fraction(1, 2) else f"minimum {lows[0]}")

            # the distinguished Cartan weight -sum k_i h_i must not occur in V
            minus_kh = tuple(
                tuple(-k * x for x in comp) for (_, k), comp in zip(a.factors, h.components)
            )
            occurs = any(
                all(
                    support_contains(d, lbl.labels[i].weight, minus_kh[i])
                    for i, d in enumerate(a.data)
                )
                for lbl in labels
            )
            add("cartan-weight-exclusion", "-k.h is not a module weight",
                "-k.h is not a module weight" if not occurs else "occurs in some module")

        # twisted lowest weights of every module of every factor are >= 0
        bad = []
        for d, comp, (t, k) in zip(a.data, h.components, a.factors):
            for m in enumerate_modules(t, k):
                cert = twisted_positivity_certificate(m, comp)
                if cert.kind not in ("positive", "zero_with_witness"):
                    bad.append((str(m), cert.kind))
        add("twisted-nonnegativity", "all factor modules nonnegative",
            "all factor modules nonnegative" if not bad else f"violations: {bad[:3]}")

        # fixed-point subalgebra and the seeds used for identification
        shape, seeds, psi = derive_seeds(sc)
        add("fixed-shape", sc.expect_fixed, shape)
        add("fixed-dim", sc.expect_fixed_dim, shape.dim)
        if psi is not None:
            exp_t, exp_k, exp_n = sc.expect_twisted_seed
            add("twisted-subsystem",
                f"{exp_t},{exp_k} with {exp_n} roots",
                f"{psi.type},{psi.level} with {len(psi.roots)} roots")

        # the dimension formula, closed form cross-checked against the series route
        dim_half = 0
        new_dim, _ = dimension_identities(a.dim, shape.dim, dim_half, trunc)
        add("dimension-formula", sc.expect_new_dim, new_dim)

        if sc.lattice:
            checks.extend(_lattice_checks(sc))

        # identification of the new weight-one algebra
        found = identify(a.rank, new_dim, [(s.type, s.level) for s in seeds])
        add("identification", f"unique {sc.expect_shape}",
            "unique " + str(found[0]) if len(found) == 1 else f"{len(found)} shapes: "
            + "; ".join(map(str, found)))

        # the four-module fusion algebra behind the extension
        for a_sign in (1, -1):
            try:
                verlinde_simple_current(a_sign)
                add(f"simple-current(a={a_sign:+d})", "fusion is a simple current",
                    "fusion is a simple current")
            except Exception as exc:
                add(f"simple-current(a={a_sign:+d})", "fusion is a simple current", str(exc))
    except Exception as exc:  # a hard failure in any stage fails the scenario
        return Report(sc.name, checks, sc.assumptions, sc.notes, error=f"{type(exc).__name__}: {exc}")

    return Report(sc.name, checks, sc.assumptions, sc.notes)


def _lattice_checks(sc: Scenario):
    checks = []
    add = lambda name, expected, actual: checks.append(
        CheckResult(name, str(expected), str(actual))
    )
    code = lat.build_glue_code()
    add("glue-code-order", 125, len(code.words))
    N = lat.NiemeierLattice()  # constructor verifies even/unimodular/roots/cycle
    add("lattice-roots", 120, len(N.roots()))
    h = lat.inner_h()
    add("lattice-h-norm", sc.expect_h_norm, lat.vec_norm(h))
    add("lattice-h-membership", "2h in the lattice",
        "2h in the lattice" if N.contains(lat.vec_scale(2, h)) else "missing")
    adds = []
    for eps in (1, -1):
        for r in (1, 2):
            f = lat.shift_vector(r)
            S = lat.enumerate_S(eps, r)
            cnt, weights = lat.twisted_weight_one(eps, r)
            adds.append(
                (eps, r, lat.vec_norm(f), lat.vec_dot(h, f), len(S), cnt, sorted(S) == weights)
            )
    add("shift-vectors", "norm 2/5, orthogonal to h, all four sectors",
        "norm 2/5, orthogonal to h, all four sectors"
        if all(n == Fraction(2, 5) and p == 0 for _, _, n, p, _, _, _ in adds)
        else str(adds))
    add("shifted-minimal-sets", "5 vectors in each of 4 sectors",
        "5 vectors in each of 4 sectors" if all(s == 5 for *_, s, _, _ in adds)
        else str([s for *_, s, _, _ in adds]))
    add("twisted-weight-one", "dimension 5 per sector, weights match",
        "dimension 5 per sector, weights match"
        if all(c == 5 and m for *_, c, m in adds) else str(adds))
    add("twist-anomaly", Fraction(4, 5), lat.twist_anomaly(5, [4, 4, 4, 4]))
    mn = lat.min_norm_shifted(N, h, 4)
    add("shifted-norm-minimum", "minimum >= 6/5",
        f"minimum >= 6/5" if mn is not None and mn >= Fraction(6, 5) else f"minimum {mn}")
    sector_mins = [
        Fraction(4, 5) + lat.twisted_sector_min_shift(h, eps, r) / 2
        for eps in (1, -1)
        for r in (1, 2)
    ]
    untwisted_min = mn / 2  # weight of a pure lattice vector under the twist
    overall = min([untwisted_min] + sector_mins)
    add("twisted-minimum-weight", "1 (vacuum) with all sectors > 1/2",
        "1 (vacuum) with all sectors > 1/2"
        if min(sector_mins) > Fraction(1, 2) and untwisted_min >= 1 and overall >= 1
        else f"untwisted {untwisted_min}, sectors {sector_mins}")
    shape = lat.fixed_shape_A45(h)
    add("lattice-fixed-shape", sc.expect_fixed, shape)
    # the distinguished weight -h is absent from both untwisted and twisted spectra
    minus_h = lat.vec_scale(-1, h)
    in_proj = lat.projected_form_ok(lat.project_fixed(minus_h)) and lat.projected_form_ok(minus_h)
    add("cartan-weight-exclusion", "-h is not a spectrum weight",
        "-h is not a spectrum weight" if not in_proj else "occurs")
    return checks


def run_all(scenarios) -> list[Report]:
    return [run_scenario(sc) for sc in scenarios]
