"""Free algebra: word normalization, arithmetic, rewriting, certificates."""

import pytest

from ckq.coeffring import DualElement, JSignature, ScalarExpr
from ckq.freealg import (
    GenSymbol,
    NCPoly,
    ReductionInconclusive,
    canonical_word,
    expand_certificate,
    make_rules,
    mat_symbol,
    membership_certificate,
    reduce_poly,
    word_key,
)

from conftest import rand_dual, seeded


def t(i, k, mask=0, copy=0):
    return mat_symbol(i, k, mask, copy)


def gen(sym, n=1, coeff=1):
    return NCPoly.gen(n, sym, coeff)


def test_word_key_ordering():
    # degree dominates, then row-major slots, then the weight tag
    assert word_key((t(1, 1),)) < word_key((t(1, 2),))
    assert word_key((t(1, 2),)) < word_key((t(2, 1),))
    assert word_key((t(2, 2),)) < word_key((t(1, 1), t(1, 1)))
    assert word_key((t(1, 2, mask=1),)) < word_key((t(1, 2, mask=2),))
    assert word_key((t(1, 1, copy=0),)) < word_key((t(1, 1, copy=1),))


def test_copy_normalization():
    # distinct copies commute; same-copy order survives the stable sort
    w = (t(1, 2, copy=1), t(2, 1, copy=0), t(1, 1, copy=1))
    assert canonical_word(w) == (t(2, 1, copy=0), t(1, 2, copy=1), t(1, 1, copy=1))


def test_mul_concatenates_words():
    p = gen(t(1, 1)) * gen(t(1, 2))
    assert p.terms == {(t(1, 1), t(1, 2)): DualElement.one(1)}


def test_cross_copy_mul_commutes():
    a = gen(t(1, 1, copy=1))
    b = gen(t(1, 2, copy=0))
    assert a * b == b * a
    # but same-copy factors do not merge
    x = gen(t(1, 1)) * gen(t(1, 2))
    y = gen(t(1, 2)) * gen(t(1, 1))
    assert x != y


def test_nilpotent_coefficient_kills_product():
    i1 = DualElement.iota(1, 1)
    p = gen(t(1, 1), coeff=i1) * gen(t(1, 2), coeff=i1)
    assert p.is_zero()


def test_associativity_random():
    rng = seeded("ncpoly-assoc")
    syms = [t(i, k) for i in (1, 2) for k in (1, 2)]
    def rand_poly():
        p = NCPoly.zero(2)
        for _ in range(rng.randint(1, 3)):
            w = tuple(rng.choice(syms) for _ in range(rng.randint(0, 2)))
            p = p + NCPoly(2, {w: rand_dual(rng, 2)})
        return p
    for _ in range(60):
        a, b, c = rand_poly(), rand_poly(), rand_poly()
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_normalize_before_or_after_mul():
    # commuting a copy-1 symbol past copy-0 first or last gives the same poly
    a = NCPoly(1, {(t(2, 2, copy=1), t(1, 1, copy=0)): DualElement.one(1)})
    b = gen(t(1, 2, copy=0))
    direct = a * b
    prenormalized = NCPoly(1, {canonical_word((t(2, 2, copy=1), t(1, 1, copy=0))):
                               DualElement.one(1)}) * b
    assert direct == prenormalized


def test_substitute_is_algebra_map():
    # replace t11 by t11 + 1 and check on a product
    def fn(g):
        if g == t(1, 1):
            return gen(t(1, 1)) + NCPoly.one(1)
        return NCPoly.gen(1, g)
    p = gen(t(1, 1)) * gen(t(1, 2))
    q = p.substitute(fn)
    assert q == gen(t(1, 1)) * gen(t(1, 2)) + gen(t(1, 2))


def test_evaluate_commutative():
    vals = {t(1, 1): DualElement.scalar(1, 3), t(1, 2): DualElement.iota(1, 1)}
    p = gen(t(1, 1)) * gen(t(1, 2)) - gen(t(1, 2)) * gen(t(1, 1))
    assert p.evaluate(lambda g: vals[g]).is_zero()
    q = gen(t(1, 1)) * gen(t(1, 1))
    assert q.evaluate(lambda g: vals[g]) == DualElement.scalar(1, 9)


def test_lead_term():
    p = gen(t(1, 1)) + gen(t(2, 1)) * gen(t(1, 2))
    w, c = p.lead()
    assert w == (t(2, 1), t(1, 2))
    assert c == DualElement.one(1)


def test_reduce_relation_to_zero():
    # a relation reduces itself to zero in one step
    q = DualElement.scalar(1, ScalarExpr.q_power(1))
    rel = gen(t(2, 1)) * gen(t(1, 1)) - gen(t(1, 1)) * gen(t(2, 1)) * q
    rules = make_rules([rel])
    assert reduce_poly(rel, rules).is_zero()


def test_reduce_applies_inside_words():
    q = DualElement.scalar(1, ScalarExpr.q_power(1))
    rel = gen(t(2, 1)) * gen(t(1, 1)) - q * gen(t(1, 1)) * gen(t(2, 1))
    rules = make_rules([rel])
    p = gen(t(1, 2)) * gen(t(2, 1)) * gen(t(1, 1))
    r = reduce_poly(p, rules)
    assert r == q * (gen(t(1, 2)) * gen(t(1, 1)) * gen(t(2, 1)))


def test_reduce_step_cap():
    rel = gen(t(2, 1)) * gen(t(1, 1)) - gen(t(1, 1)) * gen(t(2, 1))
    p = gen(t(2, 1)) * gen(t(1, 1))
    with pytest.raises(ReductionInconclusive):
        reduce_poly(p, make_rules([rel]), step_cap=0)


def test_reduce_already_normal():
    rel = gen(t(2, 1)) * gen(t(1, 1)) - gen(t(1, 1)) * gen(t(2, 1))
    p = gen(t(1, 1)) * gen(t(2, 1)) + NCPoly.one(1)
    assert reduce_poly(p, make_rules([rel])) == p


def test_reduce_skips_indivisible_coefficients():
    # iota1 * lead cannot be cancelled by a rule with coefficient iota2...
    i1 = DualElement.iota(2, 1)
    i2 = DualElement.iota(2, 2)
    rel = NCPoly.gen(2, t(2, 1), i2) * NCPoly.gen(2, t(1, 1))
    # ...so the target is already in normal form with respect to it
    p = NCPoly.gen(2, t(2, 1), i1) * NCPoly.gen(2, t(1, 1))
    assert reduce_poly(p, make_rules([rel])) == p
    # while an iota1*iota2 multiple is cancellable
    p2 = NCPoly.gen(2, t(2, 1), i1 * i2) * NCPoly.gen(2, t(1, 1))
    assert reduce_poly(p2, make_rules([rel])).is_zero()


def test_membership_certificate_roundtrip():
    q = DualElement.scalar(1, ScalarExpr.q_power(1))
    rels = [
        gen(t(2, 1)) * gen(t(1, 1)) - q * gen(t(1, 1)) * gen(t(2, 1)),
        gen(t(2, 2)) * gen(t(1, 1)) - gen(t(1, 1)) * gen(t(2, 2)),
    ]
    p = (gen(t(2, 2)) * rels[0] + rels[1] * gen(t(1, 2)) * q)
    cert = membership_certificate(p, rels)
    assert cert is not None
    assert expand_certificate(cert, rels, 1) == p


def test_membership_certificate_trivial_cases():
    rels = [gen(t(2, 1)) * gen(t(1, 1)) - gen(t(1, 1)) * gen(t(2, 1))]
    assert membership_certificate(NCPoly.zero(1), rels) == []
    cert = membership_certificate(rels[0], rels)
    assert len(cert) == 1
    left, idx, right = cert[0]
    assert idx == 0 and left == NCPoly.one(1) and right == NCPoly.one(1)


def test_membership_failure_is_none():
    rels = [gen(t(2, 1)) * gen(t(1, 1)) - gen(t(1, 1)) * gen(t(2, 1))]
    assert membership_certificate(gen(t(1, 2)), rels) is None


def test_make_rules_rejects_zero():
    with pytest.raises(ValueError):
        make_rules([NCPoly.zero(1)])


def test_specialize_distributes_over_mul():
    j = JSignature.parse("iota")
    q = DualElement.scalar(1, ScalarExpr.q_power(2))
    a = gen(t(1, 1), coeff=q)
    b = gen(t(1, 2), coeff=q)
    assert (a * b).specialize(j) == a.specialize(j) * b.specialize(j)


def test_symbol_rendering():
    assert str(t(1, 2)) == "t[1,2]"
    assert str(t(1, 2, mask=3)) == "t[1,2;3]"
    assert str(t(1, 2, copy=1)) == "t[1,2]'"
    assert str(GenSymbol("upper", 1, 2)) == "l+[1,2]"
    assert str(GenSymbol("lower", 2, 1)) == "l-[2,1]"
