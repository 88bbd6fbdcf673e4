"""Truncated integer power series and the growth lower bound for
finitely presented graded algebras.

A series is a plain list of arbitrary-precision integer coefficients up
to a degree cap.  The classical Golod-Shafarevich estimate for an
algebra with n degree-one generators and d quadratic relations is the
inverse series of 1 - n t + d t^2, cut off from its first negative
coefficient onward.
"""

from __future__ import annotations

from dataclasses import dataclass

DEFAULT_CAP = 10


@dataclass(frozen=True)
class TruncatedSeries:
    """Integer coefficients a_0..a_D; comparisons need equal caps."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) == 0:
            raise ValueError("series needs at least the constant coefficient")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @property
    def cap(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, q: int) -> int:
        return self.coeffs[q]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __str__(self):
        return pretty(self.coeffs)

    def total(self) -> int:
        return sum(self.coeffs)


def pretty(coeffs) -> str:
    """Render ``1 + 3t + 6t^2 + ...`` skipping zero terms (keeps a lone 0)."""
    parts = []
    for q, c in enumerate(coeffs):
        if c == 0:
            continue
        if q == 0:
            parts.append(str(c))
        else:
            mag = "" if abs(c) == 1 else str(abs(c))
            term = f"{mag}t" if q == 1 else f"{mag}t^{q}"
            if c < 0:
                term = "-" + term
            parts.append(term)
    if not parts:
        return "0"
    out = parts[0]
    for term in parts[1:]:
        if term.startswith("-"):
            out += " - " + term[1:]
        else:
            out += " + " + term
    return out


def invert(poly, cap: int) -> TruncatedSeries:
    """Formal inverse of a polynomial with constant term +-1, to degree cap.

    Uses the convolution recurrence a_q = -p_0^{-1} sum_{i>=1} p_i a_{q-i};
    with p_0 = +-1 the result stays integral.
    """
    poly = [int(c) for c in poly]
    if not poly or poly[0] not in (1, -1):
        raise ValueError("constant term must be +1 or -1 for an integer inverse")
    p0 = poly[0]
    a = [p0]
    for q in range(1, cap + 1):
        s = 0
        for i in range(1, min(q, len(poly) - 1) + 1):
            s += poly[i] * a[q - i]
        a.append(-p0 * s)
    return TruncatedSeries(tuple(a))


def truncate_at_first_negative(series: TruncatedSeries) -> TruncatedSeries:
    """Zero out the first negative coefficient and everything after it.

    Zeros sitting before the first negative coefficient are kept.
    """
    out = []
    for c in series.coeffs:
        if c < 0:
            break
        out.append(c)
    out.extend([0] * (len(series.coeffs) - len(out)))
    return TruncatedSeries(tuple(out))


def gs_bound(n: int, d: int, cap: int = DEFAULT_CAP) -> TruncatedSeries:
    """Coefficientwise lower bound for the Hilbert series at (n, d).

    This is the truncated inverse of 1 - n t + d t^2.  Valid for any
    algebra with n generators and d independent quadratic relations.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if not 0 <= d <= n * n:
        raise ValueError(f"d = {d} out of range 0..n^2 = {n * n}")
    return truncate_at_first_negative(invert([1, -n, d], cap))


def gs_coefficient_closed(q: int, n: int, d: int) -> int:
    """Closed form for coefficient q of (1 - n t + d t^2)^{-1}, 2 <= q <= 5.

    These are the pre-truncation values; they can be negative.
    """
    if q == 2:
        return n * n - d
    if q == 3:
        return n**3 - 2 * n * d
    if q == 4:
        return n**4 - 3 * n * n * d + d * d
    if q == 5:
        return n**5 - 4 * n**3 * d + 3 * n * d * d
    raise ValueError("closed forms cover 2 <= q <= 5")


def dominates(a: TruncatedSeries, b: TruncatedSeries) -> bool:
    """Coefficientwise a >= b.  Caps must agree."""
    if a.cap != b.cap:
        raise ValueError(f"cap mismatch: {a.cap} vs {b.cap}")
    return all(x >= y for x, y in zip(a.coeffs, b.coeffs))
