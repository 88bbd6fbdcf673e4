"""Threshold searches: the least relation count that kills a graded
component, ratio tables, and the closed-form bound families.

The lower bound at each (n, q) comes from the growth estimate: component
q cannot vanish while the truncated inverse series is still positive
there.  Upper bounds come from Monte Carlo sampling of random instances;
a vanishing instance is a certificate, a nonvanishing sample is only
evidence, so results are reported as brackets and marked exact only
when the two sides meet.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .fields import DEFAULT_SAMPLING_PRIME, gf
from .series import TruncatedSeries, gs_bound, invert, truncate_at_first_negative
from .tensors import component_dims, random_instance
from random import Random

DEFAULT_TRIALS = 5


def gs_lower_threshold(n: int, q: int) -> int:
    """Least d whose truncated bound series vanishes at degree q.

    Every smaller d forces a positive degree-q component in any algebra
    with n generators and that many quadratic relations, so this is a
    certified lower bound for the vanishing threshold.
    """
    if q < 2:
        raise ValueError("q >= 2 required")
    for d in range(0, n * n + 1):
        if gs_bound(n, d, q)[q] == 0:
            return d
    return n * n


def _mc_component(n: int, d: int, q: int, trials: int, seed: int, p: int,
                  max_ambient: int):
    """Min over trials of the degree-q dim of random instances.

    Returns (value, certificate record for a vanishing trial or None).
    """
    field = gf(p)
    best = None
    cert = None
    for t in range(trials):
        rng = Random(seed + t)
        inst = random_instance(n, d, q, field, rng)
        val = component_dims(inst, q, max_ambient=max_ambient)[q]
        if best is None or val < best:
            best = val
        if val == 0:
            cert = {"n": n, "d": d, "q": q, "prime": p, "seed": seed + t, "trial": t}
            break
    return best, cert


@dataclass
class ThresholdResult:
    """Bracket for the least d with a vanishing degree-q component."""

    n: int
    q: int
    gs_lower: int
    mc_upper: int
    exact: int | None
    certificates: list = dc_field(default_factory=list)
    trials: int = DEFAULT_TRIALS
    seed: int = 0
    prime: int = DEFAULT_SAMPLING_PRIME

    def __post_init__(self):
        if self.gs_lower > self.mc_upper:
            raise ValueError("bracket is inverted")

    def __str__(self):
        tag = f"exact {self.exact}" if self.exact is not None else \
            f"bracket [{self.gs_lower}, {self.mc_upper}]"
        return (f"d(GF({self.prime}), {self.n}, {self.q}): {tag} "
                f"(trials {self.trials}, seed {self.seed})")


def dsearch(n: int, q: int, trials: int = DEFAULT_TRIALS, seed: int = 0,
            p: int = DEFAULT_SAMPLING_PRIME, max_ambient: int = 100_000) -> ThresholdResult:
    """Bracket the vanishing threshold d(., n, q) by binary search.

    Monotonicity in d justifies bisection: adding relations never grows
    a component.  The found d carries a concrete vanishing instance as
    certificate; the lower end is the series bound.
    """
    if q < 3:
        raise ValueError("searchable degrees start at q = 3")
    lo = gs_lower_threshold(n, q)
    hi = n * n
    certs = []
    while lo < hi:
        mid = (lo + hi) // 2
        val, cert = _mc_component(n, mid, q, trials, seed, p, max_ambient)
        if val == 0:
            certs.append(cert)
            hi = mid
        else:
            lo = mid + 1
    gs_low = gs_lower_threshold(n, q)
    exact = hi if hi == gs_low else None
    certs = [c for c in certs if c["d"] == hi] or certs[-1:]
    return ThresholdResult(n, q, gs_low, hi, exact, certs, trials, seed, p)


def closed_dn(n: int):
    """Three-case closed form for the degree-4 vanishing threshold bound.

    Returns (d_n, crude) where crude is the uniform real bound
    4(n^2 + n)/9 >= d_n.
    """
    if n < 2:
        raise ValueError("n >= 2 required")
    k, rem = divmod(n, 3)
    if rem == 0:
        dn = 4 * n * n // 9
    elif rem == 2:
        dn = (4 * n * n + 2 * n - 2) // 9
    else:
        dn = (4 * n * n + 4 * n - 8) // 9
    return dn, Fraction(4 * (n * n + n), 9)


def closed_deltan(n: int) -> Fraction:
    """Three-case closed form for the degree-5 threshold bound.

    The n = 3k+1 branch is not an integer; it is a real-valued upper
    bound whose floor is what integer searches use.
    """
    if n < 2:
        raise ValueError("n >= 2 required")
    rem = n % 3
    if rem == 0:
        return Fraction(n * n, 3)
    if rem == 2:
        return Fraction(n * n + 2 * n + 1, 3)
    return Fraction(n * n + 3 * n + 1, 3)


def vershik_series(n: int):
    """Generic series and total dimension at d = n(n-1)/2, by cases in n.

    Returns (series, total dim, note).  The n = 4 branch repeats the
    published coefficient together with a discrepancy note: the growth
    bound forces the degree-4 coefficient to be at least 4, so the
    printed value 1 cannot be a Hilbert series coefficient at (4, 6);
    the verify suite recomputes the ground truth instead of asserting
    either number.
    """
    if n < 3:
        raise ValueError("n >= 3 required")
    if n == 3:
        return TruncatedSeries((1, 3, 6, 9, 9)), 28, None
    if n == 4:
        note = ("published degree-4 coefficient 1 conflicts with the growth "
                "bound (>= 4); value reported as stated, see the verify suite")
        return TruncatedSeries((1, 4, 10, 16, 1)), 32, note
    return (TruncatedSeries((1, n, n * (n + 1) // 2, n * n)),
            (3 * n * (n + 1) + 2) // 2, None)


ALPHA_REFERENCES = {
    3: ("1/2", Fraction(1, 2)),
    4: ("(3-sqrt(5))/2", (3 - math.sqrt(5)) / 2),
    5: ("1/3", Fraction(1, 3)),
    6: ("5/16 (upper bound)", Fraction(5, 16)),
}


@dataclass
class RatioTable:
    """Rows (n, upper bound for the threshold, ratio d/n^2) with the
    running infimum; the limit ratio equals the infimum over n."""

    q: int
    rows: list
    reference: str
    prime: int
    trials: int
    seed: int

    def infimum(self) -> Fraction:
        inf = None
        for _, _, ratio in self.rows:
            if inf is None or ratio < inf:
                inf = ratio
        return inf

    def __str__(self):
        lines = [f"q = {self.q}; reference constant {self.reference}; "
                 f"prime {self.prime}, trials {self.trials}, seed {self.seed}"]
        inf = None
        for n, d_up, ratio in self.rows:
            inf = ratio if inf is None or ratio < inf else inf
            lines.append(f"  n = {n:3d}  d <= {d_up:5d}  ratio {str(ratio):>8s}"
                         f"  inf {float(inf):.6f}")
        return "\n".join(lines)


def alpha_table(q: int, n_max: int, trials: int = DEFAULT_TRIALS, seed: int = 0,
                p: int = DEFAULT_SAMPLING_PRIME, max_ambient: int = 100_000) -> RatioTable:
    """Threshold upper bounds and ratios d/n^2 for n up to n_max."""
    if q not in (3, 4, 5, 6):
        raise ValueError("ratio tables cover q in {3, 4, 5, 6}")
    rows = []
    for n in range(2, n_max + 1):
        res = dsearch(n, q, trials, seed, p, max_ambient)
        rows.append((n, res.mc_upper, Fraction(res.mc_upper, n * n)))
    return RatioTable(q, rows, ALPHA_REFERENCES[q][0], p, trials, seed)


def inflation_bound(n: int, d: int, q: int, m: int, known_h: int) -> int:
    """Upper bound m^q * known_h for the minimal dim at (m n, m^2 d).

    known_h must be a verified upper bound at (n, d); zero propagates
    to zero, which is how vanishing certificates scale up.
    """
    if m < 1:
        raise ValueError("m >= 1 required")
    if known_h < 0:
        raise ValueError("known_h must be a dimension")
    return m**q * known_h


def finite_horizon_dinf(n: int, q_max: int = 6, trials: int = DEFAULT_TRIALS,
                        seed: int = 0, p: int = DEFAULT_SAMPLING_PRIME,
                        max_ambient: int = 100_000):
    """min over 3 <= q <= q_max of the threshold upper bounds.

    A finite-horizon stand-in for the least d giving a finite
    dimensional algebra; labeled as such, never as the limit value.
    """
    best = None
    for q in range(3, q_max + 1):
        res = dsearch(n, q, trials, seed, p, max_ambient)
        if best is None or res.mc_upper < best[1]:
            best = (q, res.mc_upper)
    return {"n": n, "q_max": q_max, "upper": best[1], "achieved_at_q": best[0],
            "label": f"finite-horizon bound (q <= {q_max})"}
