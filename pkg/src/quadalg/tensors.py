"""Tensor-square subspace machinery for graded quotient algebras.

For a subspace L of E (x) E the lattice components T_q(L) are defined
inductively: T_2 = L and T_{q+1} = (E (x) T_q) cap (T_q (x) E).  By
duality, the degree-q component of the algebra presented by the
relations spanning M = L^perp has dimension dim T_q(L).  A witness is
an explicit L with T_q(L) = 0; it certifies that some algebra with
n^2 - dim L independent quadratic relations has a vanishing degree-q
component.

Block witnesses built over a direct sum G of coordinate subspaces
decompose T_q along tensor-type blocks, which keeps every elimination
in a small ambient space; the decomposition is an equality of graded
subspaces, so the blockwise dimension count is exact.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from itertools import product
from random import Random

import numpy as np

from . import linalg
from .fields import DEFAULT_SAMPLING_PRIME, PrimeField, RationalField, gf
from .freealg import Presentation, relation_matrix
from .linalg import RowSpace, integer_rows
from .series import TruncatedSeries, gs_bound

DEFAULT_MAX_AMBIENT = 100_000


class AmbientSizeError(RuntimeError):
    """Raised when a computation would materialize too many coordinates."""

    def __init__(self, ambient: int, cap: int, label: str = "tensor power"):
        super().__init__(
            f"{label} needs {ambient} coordinates, above the cap {cap}; "
            f"raise max_ambient to force the computation")
        self.ambient = ambient
        self.cap = cap


def _guard(n: int, q: int, cap: int, label="tensor power"):
    size = n**q
    if size > cap:
        raise AmbientSizeError(size, cap, label)
    return size


@dataclass(frozen=True)
class TensorContext:
    """Dimension of the base space E and its field; the flag chain
    E_1 < E_2 < ... < E_n is spanned by initial coordinate vectors."""

    n: int
    field: object


@dataclass
class WitnessSubspace:
    """A subspace of E (x) E with provenance; block-built witnesses keep
    their layout and per-size-pair blocks for fast recertification."""

    context: TensorContext
    space: RowSpace
    provenance: str
    vanish_q: int | None = None
    layout: tuple[int, ...] | None = None
    blocks: dict | None = None
    base: "WitnessSubspace | None" = None

    @property
    def n(self) -> int:
        return self.context.n

    @property
    def dim(self) -> int:
        return self.space.dim

    def codim(self) -> int:
        """Relation count d = n^2 - dim L of the dual presentation."""
        return self.n * self.n - self.space.dim


def make_witness(field, n: int, vectors, provenance: str, vanish_q=None) -> WitnessSubspace:
    space = RowSpace.from_vectors(field, n * n, vectors)
    return WitnessSubspace(TensorContext(n, field), space, provenance, vanish_q)


# ---------------------------------------------------------------------------
# lattice components

def lattice_component(space: RowSpace, q: int, max_ambient: int = DEFAULT_MAX_AMBIENT) -> RowSpace:
    """The inductive component T_q of a subspace of E (x) E, as a RowSpace.

    T_2 is the space itself; each step intersects the two one-sided
    tensor extensions.  Once a component vanishes all later ones do.
    """
    if q < 2:
        raise ValueError("components start at q = 2")
    n = math.isqrt(space.ambient)
    if n * n != space.ambient:
        raise ValueError("ambient dimension is not a perfect square")
    _guard(n, q, max_ambient)
    field = space.field
    full = RowSpace.full(field, n)
    comp = space
    for k in range(3, q + 1):
        if comp.dim == 0:
            return RowSpace.zero(field, n**q)
        comp = full.tensor(comp).intersect(comp.tensor(full))
    return comp


def lattice_dim(witness: WitnessSubspace, q: int, max_ambient: int = DEFAULT_MAX_AMBIENT) -> int:
    """dim T_q for a witness; uses the block decomposition when available."""
    if witness.layout is not None:
        return _blockwise_dims(witness, q)[q]
    return lattice_component(witness.space, q, max_ambient).dim


def _blockwise_dims(witness: WitnessSubspace, q: int) -> dict[int, int]:
    """Exact dims of T_2..T_q of a block witness via tensor-type blocks.

    G^(x)q splits into blocks indexed by tuples of part sizes, and the
    lattice component is the direct sum of its blockwise intersections,
    computed here in the small per-block ambients.
    """
    layout = witness.layout
    blocks = witness.blocks
    field = witness.context.field
    sizes = sorted(set(layout))
    count = Counter(layout)
    fulls = {s: RowSpace.full(field, s) for s in sizes}

    level: dict[tuple, RowSpace] = {
        (a, b): blocks[(a, b)] for a in sizes for b in sizes}
    dims = {2: sum(level[t].dim * count[t[0]] * count[t[1]] for t in level)}
    for k in range(3, q + 1):
        new: dict[tuple, RowSpace] = {}
        for tup in product(sizes, repeat=k):
            left = level[tup[:-1]]
            right = level[tup[1:]]
            if left.dim == 0 or right.dim == 0:
                new[tup] = RowSpace.zero(field, math.prod(tup))
                continue
            new[tup] = left.tensor(fulls[tup[-1]]).intersect(fulls[tup[0]].tensor(right))
        level = new
        dims[k] = sum(
            sp.dim * math.prod(count[s] for s in tup) for tup, sp in level.items())
        if all(sp.dim == 0 for sp in level.values()):
            for kk in range(k + 1, q + 1):
                dims[kk] = 0
            return dims
    return dims


# ---------------------------------------------------------------------------
# relations <-> subspaces

def relation_perp(pres: Presentation) -> WitnessSubspace:
    """The annihilator of the span of the relation coefficient tensors.

    Its lattice components have exactly the dimensions of the graded
    pieces of the presented algebra.
    """
    n = pres.n
    M = RowSpace.from_vectors(pres.field, n * n, relation_matrix(pres))
    L = M.perp()
    name = pres.name or "presentation"
    return WitnessSubspace(TensorContext(n, pres.field), L, f"perp of {name} relations")


# ---------------------------------------------------------------------------
# the rank method

@dataclass
class GenericInstance:
    """A concrete coefficient tuple c for d quadratic relations on n
    generators over GF(p), with the target degree q."""

    n: int
    d: int
    q: int
    field: object
    coeffs: object  # d x n^2 matrix of field elements
    label: str = ""

    def omega_size(self) -> int:
        if self.q == 2:
            return self.d
        return self.d * (self.q - 1) * self.n ** (self.q - 2)


def instance_from_presentation(pres: Presentation, q: int) -> GenericInstance:
    rows = relation_matrix(pres)
    return GenericInstance(pres.n, len(rows), q, pres.field, rows,
                           label=pres.name or "presentation")


def random_instance(n: int, d: int, q: int, field, rng: Random) -> GenericInstance:
    if not isinstance(field, PrimeField):
        raise ValueError("random instances need a finite field")
    coeffs = [[field.random(rng) for _ in range(n * n)] for _ in range(d)]
    return GenericInstance(n, d, q, field, coeffs, label="random")


def shift_matrix(inst: GenericInstance, max_ambient: int = DEFAULT_MAX_AMBIENT):
    """The matrix of the shift operator sending e_(j, mu, nu) to mu f_j nu.

    Rows ordered by (j ascending, deg mu ascending, mu lex, nu lex);
    columns are degree-q words in the row-major composite indexing.
    """
    n, q, d = inst.n, inst.q, inst.d
    size = _guard(n, q, max_ambient, "shift matrix")
    if q < 2:
        raise ValueError("q >= 2 required")
    finite = isinstance(inst.field, PrimeField)
    if finite:
        p = inst.field.p
        C = np.array([[int(x) % p for x in row] for row in inst.coeffs], dtype=np.int64)
        M = np.zeros((inst.omega_size(), size), dtype=np.int64)
    else:
        M = [[inst.field.zero] * size for _ in range(inst.omega_size())]
    pair_scale = np.arange(n * n, dtype=np.int64)
    r = 0
    for j in range(d):
        for mu_deg in range(q - 1):
            nu_deg = q - 2 - mu_deg
            shift_mid = n**nu_deg
            shift_mu = n**(nu_deg + 2)
            for mu in product(range(n), repeat=mu_deg):
                mu_rank = 0
                for g in mu:
                    mu_rank = mu_rank * n + g
                base = mu_rank * shift_mu
                for nu in product(range(n), repeat=nu_deg):
                    nu_rank = 0
                    for g in nu:
                        nu_rank = nu_rank * n + g
                    cols = base + pair_scale * shift_mid + nu_rank
                    if finite:
                        M[r, cols] = C[j]
                    else:
                        row = M[r]
                        for c, x in zip(cols, inst.coeffs[j]):
                            row[int(c)] = x
                    r += 1
    return M


def component_dim_by_rank(inst: GenericInstance, max_ambient: int = DEFAULT_MAX_AMBIENT) -> int:
    """dim of the degree-q component: n^q minus the rank of the shift matrix."""
    size = _guard(inst.n, inst.q, max_ambient)
    if inst.d == 0:
        return size
    M = shift_matrix(inst, max_ambient)
    return size - linalg.rank(M, inst.field)


def _witness_of_instance(inst: GenericInstance) -> WitnessSubspace:
    n = inst.n
    M = RowSpace.from_vectors(inst.field, n * n, inst.coeffs)
    return WitnessSubspace(TensorContext(n, inst.field), M.perp(),
                           f"perp of {inst.label} relation span")


def component_dims(inst: GenericInstance, cap: int, method: str = "auto",
                   max_ambient: int = DEFAULT_MAX_AMBIENT) -> list[int]:
    """Dims of degrees 0..cap for one instance; rank and lattice routes agree.

    The lattice route is preferred when the relation span is large (its
    annihilator, hence every lattice component, is then small); the
    rank route wins when the shift matrix has few rows.
    """
    n, d = inst.n, inst.d
    dims = [1, n] if cap >= 1 else [1]
    if cap < 2:
        return dims[: cap + 1]
    use_lattice = method == "lattice"
    if method == "auto":
        # rough work estimate at the top degree: columns of the stacked
        # intersection vs rows of the shift matrix
        est = gs_bound(n, d, max(cap - 1, 2))
        lattice_cols = 2 * n * max(est[cap - 1], 1)
        rank_rows = d * (cap - 1) * n ** (cap - 2)
        use_lattice = lattice_cols < rank_rows
    if use_lattice:
        w = _witness_of_instance(inst)
        comp = w.space
        full = RowSpace.full(inst.field, n)
        dims.append(comp.dim)
        for k in range(3, cap + 1):
            if comp.dim == 0:
                dims.append(0)
                continue
            _guard(n, k, max_ambient)
            comp = full.tensor(comp).intersect(comp.tensor(full))
            dims.append(comp.dim)
        return dims
    for k in range(2, cap + 1):
        if dims[-1] == 0:
            dims.append(0)
            continue
        sub = GenericInstance(n, d, k, inst.field, inst.coeffs, inst.label)
        dims.append(component_dim_by_rank(sub, max_ambient))
    return dims


def generic_dims(n: int, d: int, cap: int, trials: int = 5, seed: int = 0,
                 p: int = DEFAULT_SAMPLING_PRIME,
                 max_ambient: int = DEFAULT_MAX_AMBIENT):
    """Monte Carlo estimate of the minimal graded dims at (n, d).

    Samples coefficient tuples over GF(p) (one rng per trial, seeded
    seed + trial), returns the coefficientwise minimum over trials and
    a per-trial report.  The result is a certified upper bound for the
    minimal dims over GF(p); it equals the generic value except with
    probability at most (matrix size)/p per trial.
    """
    if not 0 <= d <= n * n:
        raise ValueError(f"d = {d} out of range 0..{n * n}")
    if trials < 1:
        raise ValueError("need at least one trial")
    field = gf(p)
    per_trial = []
    for t in range(trials):
        rng = Random(seed + t)
        inst = random_instance(n, d, cap if cap >= 2 else 2, field, rng)
        per_trial.append(component_dims(inst, cap, max_ambient=max_ambient))
    mins = [min(tr[k] for tr in per_trial) for k in range(cap + 1)]
    report = {
        "n": n, "d": d, "prime": p, "seed": seed, "trials": trials,
        "per_trial": per_trial,
        "agreement": [sum(tr[k] == mins[k] for tr in per_trial) for k in range(cap + 1)],
    }
    return TruncatedSeries(tuple(mins)), report


# ---------------------------------------------------------------------------
# block constructions

def _box_indices(n: int, a: int, b: int) -> list[int]:
    return [i * n + j for i in range(a) for j in range(b)]


def block_sections(witness: WitnessSubspace, sizes) -> dict:
    """L cap (E_a (x) E_b) for the requested size pairs, in ambient a*b."""
    n = witness.n
    out = {}
    for a in sizes:
        for b in sizes:
            if not (1 <= a <= n and 1 <= b <= n):
                raise ValueError(f"block size {max(a, b)} out of range 1..{n}")
            out[(a, b)] = witness.space.section(_box_indices(n, a, b))
    return out


def block_dims(witness: WitnessSubspace, sizes) -> dict:
    """Table of dim(L cap (E_a (x) E_b)) over the requested sizes."""
    return {k: sp.dim for k, sp in block_sections(witness, sizes).items()}


def block_sum(witness: WitnessSubspace, layout) -> WitnessSubspace:
    """Direct sum of the blocks of L over a chain layout.

    G is the direct sum of parts E_{n_1}, ..., E_{n_m}; the returned
    subspace of G (x) G is the direct sum over part pairs of
    L cap (E_{n_j} (x) E_{n_k}), placed at the corresponding block of
    composite coordinates.  Its dimension is the sum of the block dims.
    """
    layout = tuple(int(s) for s in layout)
    if not layout:
        raise ValueError("layout needs at least one part")
    base = witness.base if witness.base is not None else witness
    n = base.n
    if any(not 1 <= s <= n for s in layout):
        raise ValueError(f"block sizes must lie in 1..{n}")
    field = base.context.field
    N = sum(layout)
    blocks = block_sections(base, sorted(set(layout)))
    offsets = [0]
    for s in layout:
        offsets.append(offsets[-1] + s)
    rows = []
    expected = 0
    for bi, a in enumerate(layout):
        for bj, b in enumerate(layout):
            blk = blocks[(a, b)]
            expected += blk.dim
            if blk.dim == 0:
                continue
            idx = [(offsets[bi] + r) * N + offsets[bj] + c
                   for r in range(a) for c in range(b)]
            rows.extend(blk.embed(idx, N * N).rows())
    space = RowSpace.from_vectors(field, N * N, rows)
    assert space.dim == expected, "block supports must be disjoint"
    return WitnessSubspace(
        TensorContext(N, field), space,
        provenance=f"block sum {layout} of [{witness.provenance}]",
        vanish_q=witness.vanish_q, layout=layout, blocks=blocks, base=base)


def inflate(witness: WitnessSubspace, m: int, q: int | None = None):
    """Blow a vanishing witness at (n, d) up to one at (m n, m^2 d).

    Uses the all-equal layout (n, ..., n); the inflated dimension is
    exactly m^2 dim L and the vanishing is re-verified blockwise.
    Returns (inflated witness, certificate).
    """
    if m < 1:
        raise ValueError("m >= 1 required")
    q = q if q is not None else witness.vanish_q
    if q is None:
        raise ValueError("no degree to certify: witness has no vanish_q")
    if m == 1:
        cert = certify_vanishing(witness, q)
        return witness, cert
    if witness.layout is not None:
        big = block_sum(witness, witness.layout * m)
    else:
        big = block_sum(witness, (witness.n,) * m)
    if big.dim != m * m * witness.dim:
        raise RuntimeError(
            f"inflation dim {big.dim} != m^2 dim L = {m * m * witness.dim}; "
            "upstream block extraction is broken")
    cert = certify_vanishing(big, q)
    if not cert.ok:
        raise RuntimeError("inflated witness failed recertification; upstream bug")
    return big, cert


# ---------------------------------------------------------------------------
# certification

@dataclass
class Certificate:
    """Outcome of an exact vanishing check for a witness subspace."""

    claim: str
    n: int
    d: int
    q: int
    witness_dim: int
    computed_dim: int
    field_desc: str
    prime: int | None
    transfer_full_rank: bool | None
    method: str
    ok: bool

    def __str__(self):
        status = "certified" if self.ok else "FAILED"
        extra = ""
        if self.transfer_full_rank is not None:
            extra = f", transfer rank check {'ok' if self.transfer_full_rank else 'FAILED'}"
        return (f"{status}: {self.claim} (witness dim {self.witness_dim}, "
                f"computed dim {self.computed_dim}, {self.method}{extra})")


def certify_vanishing(witness: WitnessSubspace, q: int | None = None,
                      prime: int | None = None,
                      max_ambient: int = DEFAULT_MAX_AMBIENT) -> Certificate:
    """Exact certificate that the degree-q lattice component vanishes.

    Over a finite field the dimension is computed directly.  Over the
    rationals the computation runs modulo a prime on integer lifts; the
    mod-p dimension dominates the rational one provided the lifted
    basis keeps full rank mod p, which is checked explicitly, so a
    mod-p zero certifies the rational (characteristic-0) claim.
    """
    q = q if q is not None else witness.vanish_q
    if q is None:
        raise ValueError("certify_vanishing needs a degree q")
    n = witness.n
    d = n * n - witness.dim
    field = witness.context.field
    if isinstance(field, PrimeField):
        dim_q = lattice_dim(witness, q, max_ambient)
        method = "blockwise mod p" if witness.layout else "direct mod p"
        return Certificate(
            claim=f"h_{q}(GF({field.p}), {n}, {d}) = 0",
            n=n, d=d, q=q, witness_dim=witness.dim, computed_dim=dim_q,
            field_desc=f"gf {field.p}", prime=field.p,
            transfer_full_rank=None, method=method, ok=(dim_q == 0))

    p = prime or DEFAULT_SAMPLING_PRIME
    pf = gf(p)
    base = witness.base if witness.base is not None else witness
    lift = integer_rows(base.space)
    full_rank = linalg.rank(lift, pf) == base.space.dim
    base_p = WitnessSubspace(
        TensorContext(base.n, pf),
        RowSpace.from_vectors(pf, base.n * base.n, lift),
        provenance=base.provenance + f" mod {p}")
    if witness.layout is not None:
        wp = block_sum(base_p, witness.layout)
        full_rank = full_rank and wp.dim == witness.dim
        dim_q = _blockwise_dims(wp, q)[q]
        method = f"blockwise mod {p} with transfer"
    else:
        wp = base_p
        full_rank = full_rank and wp.dim == witness.dim
        dim_q = lattice_component(wp.space, q, max_ambient).dim
        method = f"mod {p} with transfer"
    return Certificate(
        claim=f"h_{q}(char-0 fields, {n}, {d}) = 0",
        n=n, d=d, q=q, witness_dim=witness.dim, computed_dim=dim_q,
        field_desc="rational", prime=p,
        transfer_full_rank=full_rank, method=method,
        ok=(dim_q == 0 and full_rank))


# ---------------------------------------------------------------------------
# named subspaces

def _tensor_vec(n: int, terms) -> list:
    row = [0] * (n * n)
    for coeff, (a, b) in terms:
        row[(a - 1) * n + (b - 1)] += coeff
    return row


_COR3_41 = [
    [(1, (2, 1))],
    [(1, (3, 2))],
    [(1, (3, 1))],
    [(1, (1, 1)), (-1, (2, 2))],
    [(1, (1, 1)), (-1, (3, 3))],
]

_COR3_31 = [
    [(1, (3, 3)), (1, (1, 2)), (1, (1, 1)), (1, (2, 2))],
    [(1, (2, 3)), (1, (1, 1)), (1, (2, 2))],
    [(1, (1, 3)), (1, (1, 1)), (1, (2, 2))],
    [(1, (2, 1)), (-1, (1, 1)), (-1, (2, 2))],
    [(1, (3, 2)), (-1, (1, 1)), (-1, (2, 2))],
    [(1, (3, 1)), (1, (1, 1)), (-1, (2, 1))],
]

_G30 = [
    [(1, (1, 2))],
    [(1, (2, 3))],
    [(1, (1, 3))],
    [(1, (1, 1)), (-1, (2, 2))],
    [(1, (1, 1)), (-1, (3, 3))],
    [(1, (2, 4)), (-1, (3, 1)), (1, (4, 2))],
    [(1, (1, 4)), (-1, (3, 2)), (1, (4, 1))],
    [(1, (1, 1)), (-1, (4, 4))],
    [(1, (2, 1)), (-1, (4, 3))],
    [(1, (1, 1)), (-1, (5, 5))],
    [(1, (5, 1)), (-1, (3, 4))],
    [(1, (5, 4)), (-1, (4, 2))],
    [(1, (5, 3)), (-1, (3, 2)), (1, (4, 1))],
    [(1, (5, 2)), (-1, (4, 5)), (-1, (2, 4)), (1, (3, 5))],
    [(1, (2, 5)), (-1, (3, 5)), (-1, (3, 2)), (1, (1, 4))],
    [(1, (1, 1)), (-1, (6, 6))],
    [(1, (6, 1)), (-1, (1, 5))],
    [(1, (5, 6))],
    [(1, (4, 6)), (-1, (6, 2)), (1, (3, 4)), (-1, (2, 4))],
    [(1, (6, 4)), (-1, (2, 1)), (-1, (3, 5)), (-1, (3, 6)), (1, (5, 2)), (-1, (2, 4))],
    [(1, (2, 6)), (-1, (1, 4)), (-1, (6, 3)), (-1, (3, 5)), (1, (4, 1))],
    [(1, (6, 5)), (-1, (4, 2))],
    [(1, (1, 1)), (-1, (7, 7))],
    [(1, (7, 1)), (-1, (1, 6))],
    [(1, (3, 7)), (-1, (7, 4)), (-1, (4, 6)), (1, (2, 4)), (1, (4, 1))],
    [(1, (5, 7)), (-1, (7, 6)), (-1, (2, 1)), (1, (3, 4))],
    [(1, (7, 2)), (-1, (6, 1)), (-1, (6, 4)), (1, (3, 5))],
    [(1, (2, 7)), (-1, (7, 3)), (1, (2, 4)), (-1, (4, 2))],
    [(1, (6, 7)), (-1, (3, 5)), (-1, (5, 2)), (1, (2, 4))],
    [(1, (7, 5)), (-1, (4, 7)), (1, (6, 3)), (-1, (4, 1)), (-1, (1, 4))],
]


def builtin_subspace(name: str, field=None, n: int | None = None, r: int | None = None):
    """Named witness subspaces.

    cor3-41: 5-dim in 3x3, vanishing degree 4.
    cor3-31: 6-dim in 3x3, vanishing degree 5.
    g30: 30-dim in 7x7, vanishing degree 4.
    alp4: returns the pair (L0, M) of the symmetrized-corner construction;
          needs n and r with 1 <= r < n and d^2 + n^2 d <= n^4, d = n^2 - r^2.
    """
    from .fields import rationals

    field = field or rationals()
    if name == "cor3-41":
        vecs = [_tensor_vec(3, t) for t in _COR3_41]
        return make_witness(field, 3, vecs, "cor3-41", vanish_q=4)
    if name == "cor3-31":
        vecs = [_tensor_vec(3, t) for t in _COR3_31]
        return make_witness(field, 3, vecs, "cor3-31", vanish_q=5)
    if name == "g30":
        vecs = [_tensor_vec(7, t) for t in _G30]
        return make_witness(field, 7, vecs, "g30", vanish_q=4)
    if name == "alp4":
        if n is None or r is None:
            raise ValueError("alp4 needs n and r")
        return alp4_pair(n, r, field)
    raise ValueError(f"unknown subspace {name!r}")


def alp4_pair(n: int, r: int, field):
    """The pair (L0, M): M is spanned by the basis tensors with an index
    above r, L0 by the r x r corner plus the symmetrized mixed tensors."""
    d = n * n - r * r
    if not 1 <= r < n:
        raise ValueError("need 1 <= r < n")
    if d * d + n * n * d > n**4:
        raise ValueError(
            f"hypothesis fails: d^2 + n^2 d = {d * d + n * n * d} > n^4 = {n**4} (d = {d})")
    l0 = []
    for j in range(1, r + 1):
        for k in range(1, r + 1):
            l0.append(_tensor_vec(n, [(1, (j, k))]))
    for j in range(1, r + 1):
        for k in range(r + 1, n + 1):
            l0.append(_tensor_vec(n, [(1, (j, k)), (1, (k, j))]))
    m = []
    for j in range(1, n + 1):
        for k in range(1, n + 1):
            if max(j, k) > r:
                m.append(_tensor_vec(n, [(1, (j, k))]))
    L0 = make_witness(field, n, l0, f"alp4({n},{r}) L0")
    M = make_witness(field, n, m, f"alp4({n},{r}) M")
    return L0, M


def alp4_check(n: int, r: int, field=None, seed: int | None = None,
               max_ambient: int = DEFAULT_MAX_AMBIENT) -> bool:
    """Verify (L (x) L) cap (E (x) M (x) E) = 0 for a d-dim L inside L0.

    With seed None the first d canonical basis rows of L0 are taken;
    otherwise a seeded random d-dim subspace of L0.
    """
    from .fields import rationals

    field = field or rationals()
    _guard(n, 4, max_ambient, "degree-4 ambient")
    L0, M = alp4_pair(n, r, field)
    d = n * n - r * r
    if seed is None:
        L = L0.space.truncate_basis(d)
    else:
        rng = Random(seed)
        rows = L0.space.rows()
        combos = []
        for _ in range(d):
            if isinstance(field, PrimeField):
                zs = [field.random(rng) for _ in rows]
            else:
                zs = [rng.randrange(-5, 6) for _ in rows]
            combos.append([
                sum(z * row[j] for z, row in zip(zs, rows))
                for j in range(n * n)])
        L = RowSpace.from_vectors(field, n * n, combos)
        if L.dim != d:
            L = L0.space.truncate_basis(d)
    full = RowSpace.full(field, n)
    left = L.tensor(L)
    right = full.tensor(M.space).tensor(full)
    return left.intersect(right).dim == 0


# ---------------------------------------------------------------------------
# construction recipes for the named upper-bound families

def gfield_witness(n: int, field=None) -> WitnessSubspace:
    """Degree-4 vanishing witness on n generators from 2/3-part layouts.

    Layout by residue of n mod 3: all parts of size 3; one part of size
    2; or two parts of size 2 (n >= 4).  The certified relation count
    matches the three-case closed form of the degree-4 threshold bound.
    """
    from .fields import rationals

    field = field or rationals()
    if n < 2:
        raise ValueError("need n >= 2")
    k, rem = divmod(n, 3)
    if rem == 0:
        layout = (3,) * k
    elif rem == 2:
        layout = (2,) + (3,) * k
    else:
        if k < 1:
            raise ValueError("n = 1 has no layout")
        layout = (2, 2) + (3,) * (k - 1)
    base = builtin_subspace("cor3-41", field)
    w = block_sum(base, layout)
    w.provenance = f"gfield({n})"
    return w


def whatnot1_witness(n: int, field=None) -> WitnessSubspace:
    """Degree-5 vanishing witness on n generators (1/2/3-part layouts)."""
    from .fields import rationals

    field = field or rationals()
    if n < 2:
        raise ValueError("need n >= 2")
    k, rem = divmod(n, 3)
    if rem == 0:
        layout = (3,) * k
    elif rem == 2:
        layout = (2,) + (3,) * k
    else:
        if k < 1:
            raise ValueError("n = 1 has no layout")
        layout = (1,) + (3,) * k
    base = builtin_subspace("cor3-31", field)
    w = block_sum(base, layout)
    w.provenance = f"whatnot1({n})"
    return w


def vershik_witness(n: int, field=None):
    """Witness for a vanishing degree-4 component at d = n(n-1)/2, n >= 5.

    Small n use diagonal blocks of the g30 subspace; 8..16 use two- and
    three-part layouts over its chain; the remaining n fall back to the
    gfield construction, whose threshold is below n(n-1)/2 there.
    Returns (witness of codimension exactly n(n-1)/2, block witness the
    vanishing was verified on).
    """
    from .fields import rationals

    field = field or rationals()
    delta = n * (n - 1) // 2
    need = n * n - delta
    g30 = builtin_subspace("g30", field)
    if n in (5, 6, 7):
        sect = g30.space.section(_box_indices(7, n, n))
        verified = WitnessSubspace(TensorContext(n, field), sect,
                                   f"g30 diagonal block {n}", vanish_q=4)
        w = verified
    elif n in (8, 10, 11, 13, 16):
        layout = {8: (4, 4), 10: (5, 5), 11: (5, 6), 13: (6, 7), 16: (6, 6, 4)}[n]
        verified = block_sum(g30, layout)
        verified.provenance = f"g30 block sum {layout}"
        w = verified
    elif n >= 5 and (n >= 17 or n in (9, 12, 14, 15)):
        verified = gfield_witness(n, field)
        w = verified
    else:
        raise ValueError(f"no vanishing recipe at degree 4 for n = {n}")
    if w.dim < need:
        raise RuntimeError(f"recipe for n = {n} gives dim {w.dim} < required {need}")
    if w.dim > need:
        shrunk = WitnessSubspace(
            w.context, w.space.truncate_basis(need),
            provenance=w.provenance + f" shrunk to dim {need}", vanish_q=4)
        return shrunk, verified
    return w, verified


_CONSTRUCTIONS = ("cor3-41", "cor3-31", "g30", "alp4", "gfield", "whatnot1")


def construct(name: str, field=None, n: int | None = None, r: int | None = None):
    """CLI-facing dispatcher for the named witness constructions."""
    if name in ("cor3-41", "cor3-31", "g30"):
        return builtin_subspace(name, field)
    if name == "alp4":
        L0, _ = builtin_subspace("alp4", field, n=n, r=r)
        return L0
    if name == "gfield":
        if n is None:
            raise ValueError("gfield needs --n")
        return gfield_witness(n, field)
    if name == "whatnot1":
        if n is None:
            raise ValueError("whatnot1 needs --n")
        return whatnot1_witness(n, field)
    raise ValueError(f"unknown construction {name!r} (known: {', '.join(_CONSTRUCTIONS)})")
