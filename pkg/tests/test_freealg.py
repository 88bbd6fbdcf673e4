from fractions import Fraction
from random import Random

import pytest

from quadalg.fields import gf, rationals
from quadalg.freealg import (DegLexOrder, ParseError, Polynomial,
                             builtin_presentation, compare, default_order,
                             effective_relation_count, multiply,
                             parse_presentation, print_presentation,
                             relation_matrix)


def P(field, *terms):
    return Polynomial(field, [(tuple(w), c) for c, w in terms])


def test_compare_examples():
    order = default_order(2)
    assert compare((1, 2), (2, 1), order) > 0     # lexicographic tie-break
    assert compare((1,), (2, 2), order) < 0       # degree dominates
    order3 = default_order(3)
    assert compare((3, 2), (3, 2), order3) == 0


def test_compare_respects_ranking():
    rev = DegLexOrder((2, 1))
    assert compare((1, 2), (2, 1), rev) < 0


def test_order_is_multiplicative():
    rng = Random(3)
    order = DegLexOrder((2, 3, 1))
    for _ in range(500):
        u = tuple(rng.randint(1, 3) for _ in range(rng.randint(1, 3)))
        v = tuple(rng.randint(1, 3) for _ in range(rng.randint(1, 3)))
        if compare(u, v, order) == 0:
            continue
        if compare(u, v, order) > 0:
            u, v = v, u
        a = tuple(rng.randint(1, 3) for _ in range(rng.randint(0, 2)))
        b = tuple(rng.randint(1, 3) for _ in range(rng.randint(0, 2)))
        assert compare(a + u + b, a + v + b, order) < 0


def test_multiply_concatenates():
    f = rationals()
    x1 = P(f, (1, (1,)))
    x2 = P(f, (1, (2,)))
    assert multiply(x1, x2).terms == {(1, 2): Fraction(1)}


def test_multiply_noncommutative():
    f = rationals()
    p = P(f, (1, (1,)), (1, (2,)))
    q = P(f, (1, (1,)), (-1, (2,)))
    prod = multiply(p, q)
    assert prod.terms == {(1, 1): Fraction(1), (1, 2): Fraction(-1),
                          (2, 1): Fraction(1), (2, 2): Fraction(-1)}


def test_multiply_zero_pruning():
    f = rationals()
    z = P(f, (1, (1, 2)), (-1, (1, 2)))
    assert z.is_zero()
    assert multiply(z, P(f, (1, (1,)))).is_zero()


def test_multiply_field_mismatch():
    with pytest.raises(ValueError):
        multiply(P(rationals(), (1, (1,))), P(gf(5), (1, (1,))))


def test_parse_lemma3_4_style():
    pres = parse_presentation(
        "gens 3; rel x1*x2; rel x1*x3; rel x2*x3; rel x1^2+x2^2+x3^2")
    assert pres.n == 3
    assert effective_relation_count(pres) == 4


def test_parse_commutator():
    pres = parse_presentation("gens 2; rel x1*x2 - x2*x1")
    assert pres.n == 2
    assert effective_relation_count(pres) == 1


def test_parse_dependent_relations_warn():
    pres = parse_presentation("gens 2; rel x1*x2; rel 2*x1*x2")
    assert effective_relation_count(pres) == 1
    assert any("dependent" in w for w in pres.warnings)


def test_parse_errors_carry_position():
    with pytest.raises(ParseError, match="line 2"):
        parse_presentation("gens 2\nrel x1*x5")
    with pytest.raises(ParseError, match="out of range"):
        parse_presentation("gens 2; rel x3*x1")
    with pytest.raises(ParseError):
        parse_presentation("gens 2; rel x1*x2 +")
    with pytest.raises(ValueError, match="not homogeneous"):
        parse_presentation("gens 2; rel x1*x2 + x1")


def test_parse_field_and_order_lines():
    pres = parse_presentation(
        "field gf 5\ngens 3\norder x2 > x1 > x3\nrel x1*x2 - 2*x2*x1")
    assert pres.field.p == 5
    assert pres.order.ranking == (2, 1, 3)


def test_parse_coefficient_forms():
    pres = parse_presentation("gens 2; rel 1/2*x1*x2 - x2*x1")
    (rel,) = pres.relations
    assert rel.terms[(1, 2)] == Fraction(1, 2)


def test_print_parse_roundtrip():
    for name in ("lemma3-4", "lemma3-3", "ex4-5", "commutative(3)"):
        pres = builtin_presentation(name)
        text = print_presentation(pres)
        again = parse_presentation(text)
        assert print_presentation(again) == text
        assert [r.terms for r in again.relations] == [r.terms for r in pres.relations]


def test_effective_count_invariant_under_recombination():
    from quadalg.freealg import Presentation
    from quadalg.linalg import rank

    rng = Random(11)
    field = gf(13)
    pres = builtin_presentation("lemma3-3", field=field)
    rows = relation_matrix(pres)
    d = len(rows)
    for _ in range(10):
        while True:
            A = [[field.random(rng) for _ in range(d)] for _ in range(d)]
            if rank(A, field) == d:
                break
        mixed = [[sum(A[i][j] * rows[j][k] for j in range(d)) % 13
                  for k in range(9)] for i in range(d)]
        new_rels = [Polynomial(field, [((a + 1, b + 1), row[a * 3 + b])
                                       for a in range(3) for b in range(3)])
                    for row in mixed]
        pres2 = Presentation(3, field, new_rels, default_order(3))
        assert effective_relation_count(pres2) == 3


def test_builtin_dimensions():
    cases = {"lemma3-4": (3, 4), "lemma3-3": (3, 3), "ex7-19": (7, 19),
             "ex4-6": (4, 6), "ex4-5": (4, 5), "commutative(2)": (2, 1)}
    for name, (n, d) in cases.items():
        pres = builtin_presentation(name)
        assert pres.n == n
        assert effective_relation_count(pres) == d


def test_builtin_ex7_19_rank_independent_oracle():
    # rank of the 19 x 49 coefficient matrix over GF(2), by a test-local
    # bitset elimination independent of the library kernels
    pres = builtin_presentation("ex7-19")
    rows = relation_matrix(pres)
    bits = []
    for row in rows:
        v = 0
        for i, x in enumerate(row):
            if int(x) % 2:
                v |= 1 << i
        bits.append(v)
    table = {}
    r = 0
    for v in bits:
        while v:
            lead = v.bit_length()
            if lead not in table:
                table[lead] = v
                r += 1
                break
            v ^= table[lead]
    assert r == 19 == effective_relation_count(pres)


def test_builtin_field_override():
    pres = builtin_presentation("lemma3-3", field=gf(2))
    assert pres.field.p == 2
    # -1 folded to 1 mod 2
    assert all(c == 1 for rel in pres.relations for c in rel.terms.values())


def test_builtin_unknown():
    with pytest.raises(ValueError, match="unknown builtin"):
        builtin_presentation("nope")
    with pytest.raises(ValueError):
        builtin_presentation("commutative(1)")
