"""The reproduction suite: every acceptance check, with a machine-readable report.

Each check compares freshly computed values against the pinned targets
and yields report rows.  Two known source-data discrepancies are
reported with status ``informational`` instead of being asserted either
way; everything they touch is recomputed and printed:

* at (n, d) = (4, 6) the published degree-4 coefficient 1 contradicts
  the growth bound (which forces >= 4); the suite computes the exact
  value by completion and checks the bound, but asserts neither number;
* the printed 30-vector span for the 7-generator example is the
  annihilator of its relation list only after a one-token correction in
  relation 3 (x3*x5 -> x7*x2).  Both spaces have identical dimensions
  and block statistics and both certify the degree-4 vanishing; the
  suite records the mismatch and verifies the corrected reading.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from random import Random

from . import groebner, linalg, search, series, tensors
from .fields import DEFAULT_SAMPLING_PRIME, gf, rationals
from .freealg import (Presentation, builtin_presentation, default_order,
                      effective_relation_count, relation_matrix)
from .linalg import RowSpace
from .series import TruncatedSeries, dominates, gs_bound


@dataclass
class CheckRow:
    check_id: str
    anchor: str
    expected: str
    computed: str
    status: str  # pass | fail | informational

    def as_dict(self):
        return {"id": self.check_id, "anchor": self.anchor,
                "expected": self.expected, "computed": self.computed,
                "status": self.status}


@dataclass
class VerifyReport:
    rows: list = dc_field(default_factory=list)

    @property
    def counts(self):
        out = {"pass": 0, "fail": 0, "informational": 0}
        for r in self.rows:
            out[r.status] += 1
        return out

    @property
    def ok(self) -> bool:
        return self.counts["fail"] == 0

    def to_text(self) -> str:
        width = max((len(r.check_id) for r in self.rows), default=10)
        lines = []
        for r in self.rows:
            mark = {"pass": "ok", "fail": "FAIL", "informational": "info"}[r.status]
            lines.append(f"[{mark:>4s}] {r.check_id:<{width}s}  expected {r.expected}"
                         f" | computed {r.computed}")
        c = self.counts
        lines.append(f"{c['pass']} pass, {c['fail']} fail, {c['informational']} informational")
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps({"rows": [r.as_dict() for r in self.rows],
                           "summary": self.counts}, indent=2, sort_keys=True)


def _eq_row(cid, anchor, expected, computed) -> CheckRow:
    status = "pass" if expected == computed else "fail"
    return CheckRow(cid, anchor, str(expected), str(computed), status)


def _bool_row(cid, anchor, descr, ok) -> CheckRow:
    return CheckRow(cid, anchor, descr, "holds" if ok else "violated",
                    "pass" if ok else "fail")


class _Context:
    """Carries series computed by earlier checks into the global-property check."""

    def __init__(self):
        self.exact_series: list[tuple[str, tuple, int, int]] = []
        self.generic_trials: list[tuple[str, list, int, int]] = []

    def add_exact(self, name, coeffs, n, d):
        self.exact_series.append((name, tuple(coeffs), n, d))

    def add_trials(self, name, per_trial, n, d):
        self.generic_trials.append((name, per_trial, n, d))


# ---------------------------------------------------------------------------
# the checks

def check_01_gs_bound(ctx):
    rows = []
    targets = [((7, 19, 4), (1, 7, 30, 77, 0)),
               ((4, 5, 6), (1, 4, 11, 24, 41, 44, 0)),
               ((3, 3, 6), (1, 3, 6, 9, 9, 0, 0))]
    for (n, d, cap), expect in targets:
        got = gs_bound(n, d, cap).coeffs
        rows.append(_eq_row("01-gs-bound", f"gs({n},{d})", expect, got))
    bad = 0
    for n in range(2, 11):
        for d in range(0, n * n + 1):
            inv = series.invert([1, -n, d], 5)
            for q in range(2, 6):
                if series.gs_coefficient_closed(q, n, d) != inv[q]:
                    bad += 1
    rows.append(_bool_row("01-closed-forms", "a2..a5",
                          "closed forms match the inverse series for n<=10", bad == 0))
    return rows


def _hilbert_check(cid, anchor, name, field, cap, expect, ctx):
    pres = builtin_presentation(name, field=field)
    got = groebner.hilbert_series(pres, cap)
    ctx.add_exact(f"{name}/{field.spec}", got.coeffs, pres.n,
                  effective_relation_count(pres))
    return _eq_row(cid, anchor, expect, got.coeffs)


def check_02_lemma3_4(ctx):
    expect = (1, 3, 5, 4, 0, 0)
    return [
        _hilbert_check("02-lemma3-4-rational", "lemma3-4", "lemma3-4", rationals(), 5, expect, ctx),
        _hilbert_check("02-lemma3-4-gf2", "lemma3-4", "lemma3-4", gf(2), 5, expect, ctx),
    ]


def check_03_lemma3_3(ctx):
    expect = (1, 3, 6, 9, 9, 0, 0)
    return [
        _hilbert_check("03-lemma3-3-rational", "lemma3-3", "lemma3-3", rationals(), 6, expect, ctx),
        _hilbert_check("03-lemma3-3-gf2", "lemma3-3", "lemma3-3", gf(2), 6, expect, ctx),
    ]


def check_04_ex7_19(ctx):
    return [_hilbert_check("04-ex7-19", "ex7-19", "ex7-19", gf(2), 4, (1, 7, 30, 77, 0), ctx)]


def check_05_ex4_5(ctx):
    return [_hilbert_check("05-ex4-5", "ex4-5", "ex4-5", gf(2), 6,
                           (1, 4, 11, 24, 41, 44, 0), ctx)]


def check_06_ex4_6(ctx):
    rows = []
    pres = builtin_presentation("ex4-6")
    got = groebner.hilbert_series(pres, 6)
    ctx.add_exact("ex4-6/gf2", got.coeffs, 4, 6)
    rows.append(_eq_row("06-ex4-6-low-degrees", "ex4-6", (1, 4, 10, 16), got.coeffs[:4]))
    forced = 4 * got[3] - 6 * got[2]
    rows.append(_bool_row("06-ex4-6-recurrence", "ex4-6",
                          f"degree-4 dim >= {forced} (growth recurrence)", got[4] >= forced))
    rows.append(CheckRow(
        "06-ex4-6-degree4", "ex4-6 discrepancy",
        "published t^4 coefficient 1 vs growth-forced >= 4; not asserted",
        f"computed dims at degrees 4..6: {got.coeffs[4:]}; the bound series gives "
        f"{gs_bound(4, 6, 6).coeffs[4:]}", "informational"))
    return rows


_ORACLE_NAMES = ("lemma3-4", "lemma3-3", "ex7-19", "ex4-6", "ex4-5",
                 "commutative(2)", "commutative(3)")


def check_07_triple_oracle(ctx):
    rows = []
    for name in _ORACLE_NAMES:
        pres = builtin_presentation(name)
        h = groebner.hilbert_series(pres, 4).coeffs[2:5]
        w = tensors.relation_perp(pres)
        lat = tuple(tensors.lattice_component(w.space, q).dim for q in (2, 3, 4))
        rk = tuple(tensors.component_dim_by_rank(tensors.instance_from_presentation(pres, q))
                   for q in (2, 3, 4))
        ok = h == lat == rk
        rows.append(CheckRow("07-triple-oracle", name,
                             "completion = annihilator lattice = shift rank (q<=4)",
                             f"{h} / {lat} / {rk}", "pass" if ok else "fail"))
    return rows


def check_08_small_witnesses(ctx):
    rows = []
    w41 = tensors.builtin_subspace("cor3-41")
    rows.append(_eq_row("08-cor3-41-vanishing", "cor3-41", 0, tensors.lattice_dim(w41, 4)))
    w31 = tensors.builtin_subspace("cor3-31")
    rows.append(_eq_row("08-cor3-31-vanishing", "cor3-31", 0, tensors.lattice_dim(w31, 5)))
    p34 = tensors.relation_perp(builtin_presentation("lemma3-4"))
    rows.append(_bool_row("08-cor3-41-span", "cor3-41 = perp(lemma3-4)",
                          "span equality", p34.space == w41.space))
    p33 = tensors.relation_perp(builtin_presentation("lemma3-3"))
    rows.append(_bool_row("08-cor3-31-span", "cor3-31 = perp(lemma3-3)",
                          "span equality", p33.space == w31.space))
    return rows


def _corrected_ex7_19() -> Presentation:
    """ex7-19 with the one-token correction x3*x5 -> x7*x2 in relation 3."""
    from .freealg import Polynomial

    pres = builtin_presentation("ex7-19", field=rationals())
    pairs = [(5, 7), (6, 4), (7, 2), (2, 1), (4, 3)]
    rels = list(pres.relations)
    rels[2] = Polynomial(pres.field, [(p, 1) for p in pairs])
    return Presentation(7, pres.field, rels, default_order(7), "quadratic", "ex7-19-corrected")


def check_09_g30(ctx):
    rows = []
    g30 = tensors.builtin_subspace("g30")
    rows.append(_eq_row("09-g30-dim", "g30", 30, g30.dim))

    perp = tensors.relation_perp(builtin_presentation("ex7-19", field=rationals()))
    same = perp.space == g30.space
    perp_fixed = tensors.relation_perp(_corrected_ex7_19())
    fixed_same = perp_fixed.space == g30.space
    rows.append(CheckRow(
        "09-g30-span-vs-perp", "g30 = perp(ex7-19) discrepancy",
        "printed spans agree; not asserted (source-data conflict)",
        f"as printed: {'equal' if same else 'differ (5 of 30 vectors meet relation 3)'}; "
        f"after the x3*x5 -> x7*x2 correction in relation 3: "
        f"{'equal' if fixed_same else 'still differ'}", "informational"))
    rows.append(_bool_row("09-g30-corrected-span", "corrected reading",
                          "corrected relation list has annihilator = g30 span", fixed_same))

    cert = tensors.certify_vanishing(g30, 4)
    rows.append(_bool_row("09-g30-vanishing", "g30 degree 4",
                          f"dim 0 mod {cert.prime} with full-rank transfer",
                          cert.ok and cert.transfer_full_rank))

    bd = tensors.block_dims(g30, [4, 5, 6, 7])
    diag = tuple(bd[(k, k)] for k in (4, 5, 6, 7))
    rows.append(_eq_row("09-g30-diagonal-blocks", "d4..d7", (9, 15, 22, 30), diag))
    offs = {"d67": bd[(6, 7)] + bd[(7, 6)], "d56": bd[(5, 6)] + bd[(6, 5)],
            "d46": bd[(4, 6)] + bd[(6, 4)]}
    ok = offs["d67"] >= 47 and offs["d56"] >= 33 and offs["d46"] >= 22
    rows.append(CheckRow("09-g30-offdiagonal", "d67/d56/d46",
                         ">= 47 / >= 33 / >= 22",
                         f"{offs['d67']} / {offs['d56']} / {offs['d46']}",
                         "pass" if ok else "fail"))

    for n in (5, 6, 7, 8, 10, 11, 13, 16):
        w, verified = tensors.vershik_witness(n)
        cert = tensors.certify_vanishing(verified, 4)
        delta = n * (n - 1) // 2
        ok = cert.ok and w.codim() == delta
        rows.append(CheckRow(
            f"09-vershik-witness-n{n}", f"degree-4 vanishing at d = n(n-1)/2",
            f"certificate at ({n}, {delta})",
            f"witness d = {w.codim()}, verified on dim {verified.dim}: {cert.claim}"
            f" [{'ok' if cert.ok else 'FAILED'}]",
            "pass" if ok else "fail"))
    return rows


def check_10_block_inequality(ctx):
    rng = Random(1203)
    p = gf(101)
    bad = []
    cross_checked = 0
    for i in range(50):
        n = rng.randint(2, 4)
        q = rng.choice([3, 4])
        ell = rng.randint(0, n * n)
        vecs = [[p.random(rng) for _ in range(n * n)] for _ in range(ell)]
        w = tensors.make_witness(p, n, vecs, f"random-{i}")
        parts = rng.randint(1, 3)
        layout = tuple(rng.randint(1, n) for _ in range(parts))
        big = tensors.block_sum(w, layout)
        # the assembly equalities: total size and blockwise dimension count
        if big.space.ambient != sum(layout) ** 2:
            bad.append((i, "ambient"))
            continue
        bd = tensors.block_dims(w, sorted(set(layout)))
        expect_dim = sum(bd[(a, b)] for a in layout for b in layout)
        if big.dim != expect_dim:
            bad.append((i, "dim accounting"))
            continue
        m = len(layout)
        base_dim = tensors.lattice_component(w.space, q).dim
        block_dim = tensors.lattice_dim(big, q)
        if block_dim > m**q * base_dim:
            bad.append((i, f"inequality: {block_dim} > {m}^{q}*{base_dim}"))
            continue
        if sum(layout) ** q <= 1500:
            direct = tensors.lattice_component(big.space, q).dim
            cross_checked += 1
            if direct != block_dim:
                bad.append((i, f"blockwise {block_dim} != direct {direct}"))
    rows = [_bool_row("10-block-inequality", "50 random block sums",
                      "size/dim accounting and the m^q bound hold", not bad)]
    if bad:
        rows.append(CheckRow("10-block-inequality-detail", "failures", "none",
                             str(bad[:5]), "fail"))
    rows.append(_bool_row("10-blockwise-vs-direct", "cross-check",
                          f"blockwise dims equal direct dims ({cross_checked} instances)",
                          cross_checked > 0 and not any("!=" in b[1] for b in bad)))
    return rows


def check_11_inflation(ctx):
    rows = []
    w34 = tensors.relation_perp(builtin_presentation("lemma3-4"))
    w34.vanish_q = 4
    big, cert = tensors.inflate(w34, 2)
    ok = cert.ok and big.codim() == 16 and big.n == 6
    rows.append(CheckRow("11-inflate-lemma3-4", "m=2 inflation",
                         "certificate at degree 4 for (6, 16)", cert.claim + (" [ok]" if ok else " [FAILED]"),
                         "pass" if ok else "fail"))
    w31 = tensors.builtin_subspace("cor3-31")
    big2, cert2 = tensors.inflate(w31, 2, q=5)
    ok2 = cert2.ok and big2.codim() == 12 and big2.n == 6
    rows.append(CheckRow("11-inflate-cor3-31", "m=2 inflation",
                         "certificate at degree 5 for (6, 12)", cert2.claim + (" [ok]" if ok2 else " [FAILED]"),
                         "pass" if ok2 else "fail"))
    return rows


def check_12_dsearch(ctx):
    rows = []
    for n, q, expect in ((3, 4, 4), (2, 3, 2), (3, 5, 3)):
        res = search.dsearch(n, q, trials=5, seed=7)
        rows.append(_eq_row(f"12-dsearch-{n}-{q}", f"threshold ({n},{q})", expect, res.exact))
    return rows


def check_13_vershik_generic(ctx):
    rows = []
    cases = [((5, 10, 4), (1, 5, 15, 25, 0)), ((6, 15, 4), (1, 6, 21, 36, 0)),
             ((7, 21, 4), (1, 7, 28, 49, 0)), ((3, 3, 5), (1, 3, 6, 9, 9, 0))]
    for (n, d, cap), expect in cases:
        got, report = tensors.generic_dims(n, d, cap, trials=5, seed=42)
        ctx.add_trials(f"generic({n},{d})", report["per_trial"], n, d)
        rows.append(_eq_row(f"13-generic-{n}-{d}", f"({n},{d}) over GF(2^31-1)",
                            expect, got.coeffs))
    return rows


def check_14_degree3(ctx):
    bad = []
    for n in (2, 3, 4):
        for d in range(0, n * n + 1):
            got, _ = tensors.generic_dims(n, d, 3, trials=3, seed=5)
            expect = max(0, n**3 - 2 * n * d)
            if got[3] != expect:
                bad.append((n, d, got[3], expect))
    return [_bool_row("14-degree3-closed-form", "n <= 4 sweep",
                      "generic degree-3 dim equals max(0, n^3 - 2nd)", not bad)]


def check_15_gfield(ctx):
    rows = []
    for n in range(3, 10):
        w = tensors.gfield_witness(n)
        cert = tensors.certify_vanishing(w, 4)
        dn, _ = search.closed_dn(n)
        ok = cert.ok and w.codim() == dn
        rows.append(CheckRow(f"15-gfield-n{n}", "three-case degree-4 family",
                             f"d = {dn}, vanishing certified",
                             f"d = {w.codim()}, {'certified' if cert.ok else 'FAILED'}",
                             "pass" if ok else "fail"))
    return rows


def check_16_word_counts(ctx):
    rng = Random(99)
    bad = 0
    for _ in range(100):
        n = rng.randint(1, 3)
        cap = rng.randint(1, 6)
        k = rng.randint(0, 4)
        forb = [tuple(rng.randint(1, n) for _ in range(rng.randint(1, 3)))
                for _ in range(k)]
        if groebner.count_normal_words(forb, n, cap) != groebner.naive_count_avoiding(forb, n, cap):
            bad += 1
    return [_bool_row("16-word-count-oracle", "100 random forbidden sets",
                      "automaton counts equal naive enumeration", bad == 0)]


def check_17_global(ctx):
    rows = []
    if not ctx.exact_series:
        # filtered run: give the dominance check something real to chew on
        for name in ("lemma3-4", "lemma3-3"):
            pres = builtin_presentation(name)
            got = groebner.hilbert_series(pres, 5)
            ctx.add_exact(name, got.coeffs, pres.n, effective_relation_count(pres))
    bad_dom = []
    bad_rec = []
    for name, coeffs, n, d in ctx.exact_series:
        cap = len(coeffs) - 1
        bound = gs_bound(n, d, cap)
        if not dominates(TruncatedSeries(coeffs), bound):
            bad_dom.append(name)
        for q in range(2, cap + 1):
            if coeffs[q] < n * coeffs[q - 1] - d * coeffs[q - 2]:
                bad_rec.append((name, q))
    for name, per_trial, n, d in ctx.generic_trials:
        for t, dims in enumerate(per_trial):
            cap = len(dims) - 1
            if not dominates(TruncatedSeries(tuple(dims)), gs_bound(n, d, cap)):
                bad_dom.append(f"{name}/trial{t}")
            for q in range(2, cap + 1):
                if dims[q] < n * dims[q - 1] - d * dims[q - 2]:
                    bad_rec.append((f"{name}/trial{t}", q))
    rows.append(_bool_row("17-gs-dominance", f"{len(ctx.exact_series)} exact + "
                          f"{len(ctx.generic_trials)} sampled series",
                          "every computed series dominates its bound", not bad_dom))
    rows.append(_bool_row("17-gs-recurrence", "same series",
                          "dim_q >= n dim_(q-1) - d dim_(q-2) throughout", not bad_rec))

    rng = Random(31)
    p = gf(101)
    bad = 0
    for _ in range(100):
        amb = rng.randint(1, 16)
        k = rng.randint(0, amb)
        vecs = [[p.random(rng) for _ in range(amb)] for _ in range(k)]
        sp = RowSpace.from_vectors(p, amb, vecs)
        pp = sp.perp()
        if sp.dim + pp.dim != amb or pp.perp() != sp:
            bad += 1
    rows.append(_bool_row("17-perp-involution", "100 random subspaces",
                          "dim N + dim N-perp = ambient and perp is involutive", bad == 0))
    return rows


CHECKS = [
    ("01", check_01_gs_bound),
    ("02", check_02_lemma3_4),
    ("03", check_03_lemma3_3),
    ("04", check_04_ex7_19),
    ("05", check_05_ex4_5),
    ("06", check_06_ex4_6),
    ("07", check_07_triple_oracle),
    ("08", check_08_small_witnesses),
    ("09", check_09_g30),
    ("10", check_10_block_inequality),
    ("11", check_11_inflation),
    ("12", check_12_dsearch),
    ("13", check_13_vershik_generic),
    ("14", check_14_degree3),
    ("15", check_15_gfield),
    ("16", check_16_word_counts),
    ("17", check_17_global),
]


def run_verify(filter_str: str | None = None) -> VerifyReport:
    """Run all checks (or those whose rows match the filter substring)."""
    ctx = _Context()
    report = VerifyReport()
    for prefix, fn in CHECKS:
        if filter_str and filter_str not in prefix and not any(
                filter_str in cid for cid in _check_ids(prefix)):
            continue
        report.rows.extend(fn(ctx))
    if filter_str:
        report.rows = [r for r in report.rows if filter_str in r.check_id]
    report.rows.sort(key=lambda r: r.check_id)
    return report


_KNOWN_IDS = {
    "01": ["01-gs-bound", "01-closed-forms"],
    "02": ["02-lemma3-4-rational", "02-lemma3-4-gf2"],
    "03": ["03-lemma3-3-rational", "03-lemma3-3-gf2"],
    "04": ["04-ex7-19"],
    "05": ["05-ex4-5"],
    "06": ["06-ex4-6-low-degrees", "06-ex4-6-recurrence", "06-ex4-6-degree4"],
    "07": ["07-triple-oracle"],
    "08": ["08-cor3-41-vanishing", "08-cor3-31-vanishing", "08-cor3-41-span", "08-cor3-31-span"],
    "09": ["09-g30-dim", "09-g30-span-vs-perp", "09-g30-corrected-span", "09-g30-vanishing",
           "09-g30-diagonal-blocks", "09-g30-offdiagonal"] +
          [f"09-vershik-witness-n{n}" for n in (5, 6, 7, 8, 10, 11, 13, 16)],
    "10": ["10-block-inequality", "10-blockwise-vs-direct"],
    "11": ["11-inflate-lemma3-4", "11-inflate-cor3-31"],
    "12": ["12-dsearch-3-4", "12-dsearch-2-3", "12-dsearch-3-5"],
    "13": ["13-generic-5-10", "13-generic-6-15", "13-generic-7-21", "13-generic-3-3"],
    "14": ["14-degree3-closed-form"],
    "15": [f"15-gfield-n{n}" for n in range(3, 10)],
    "16": ["16-word-count-oracle"],
    "17": ["17-gs-dominance", "17-gs-recurrence", "17-perp-involution"],
}


def _check_ids(prefix: str) -> list[str]:
    return _KNOWN_IDS.get(prefix, [])
