import random

import pytest

from tatekit import (
    GF,
    QQ,
    Automorphism,
    LaurentMatrix,
    LaurentPoly,
    TruncSeries,
    det_laurent,
    gl_inverse,
    invert_series,
    parse_laurent,
    parse_laurent_matrix,
    valuation,
)
from tatekit.errors import InsufficientPrecision, NotInvertibleInLaurentRing, ZeroElement


def P(text, ctx=QQ):
    return parse_laurent(ctx, text)


def test_ring_ops():
    assert P("1+t") * P("1-t") == P("1-t^2")
    assert P("t^-1") * P("t") == P("1")
    F5 = GF(5)
    assert P("1+2*t", F5) + P("3*t^-2", F5) == P("3*t^-2+1+2*t", F5)


def test_valuation():
    assert valuation(P("t")) == 1
    assert valuation(P("3*t^-2 + t^5")) == -2
    assert valuation(P("1-t")) == 0
    with pytest.raises(ZeroElement):
        valuation(LaurentPoly.zero(QQ))


def test_invert_series_geometric():
    g = invert_series(P("1-t"), 4)
    assert g.valuation == 0 and not g.exact
    assert [str(c) for c in g.coeffs] == ["1", "1", "1", "1"]


def test_invert_series_monomial_exact():
    g = invert_series(P("t^2"), 1)
    assert g.exact and g.valuation == -2 and str(g.coeffs[0]) == "1"


def test_invert_series_rational():
    g = invert_series(P("2+t"), 2)
    assert [str(c) for c in g.coeffs] == ["1/2", "-1/4"]
    assert g.valuation == 0 and not g.exact


def test_invert_series_product_is_one():
    rng = random.Random(3)
    for trial in range(100):
        ctx = QQ if trial % 2 else GF(5)
        v = rng.randint(-5, 5)
        terms = {v: 1 if ctx.kind == "Q" else rng.randrange(1, 5)}
        for e in range(v + 1, v + rng.randint(1, 4)):
            terms[e] = rng.randint(-2, 2)
        f = LaurentPoly(ctx, terms)
        N = rng.randint(1, 8)
        g = invert_series(f, N)
        prod = TruncSeries.from_poly(f) * g
        # f*g = 1 + O(t^N): leading coefficient one, the rest of the window zero
        assert prod.valuation == 0 and prod.coeffs[0].is_one()
        assert all(c.is_zero() for c in prod.coeffs[1:N])


def test_truncseries_precision_guard():
    g = invert_series(P("1-t"), 3)
    with pytest.raises(InsufficientPrecision):
        g.coeff(3)
    with pytest.raises(InsufficientPrecision):
        g.inverse(5)
    assert str(g.coeff(2)) == "1"


def test_det_and_inverse_diagonal():
    m = parse_laurent_matrix(QQ, "t,0;0,t^2")
    assert det_laurent(m) == P("t^3")
    assert gl_inverse(m) == parse_laurent_matrix(QQ, "t^-1,0;0,t^-2")


def test_det_and_inverse_unipotent():
    m = parse_laurent_matrix(QQ, "1,1;0,1")
    assert det_laurent(m) == P("1")
    assert gl_inverse(m) == parse_laurent_matrix(QQ, "1,-1;0,1")


def test_det_and_inverse_mixed():
    m = parse_laurent_matrix(QQ, "1,t;t^-1,2")
    assert det_laurent(m) == P("1")
    assert gl_inverse(m) == parse_laurent_matrix(QQ, "2,-t;-1*t^-1,1")


def test_not_invertible():
    with pytest.raises(NotInvertibleInLaurentRing):
        gl_inverse(parse_laurent_matrix(QQ, "1+t,0;0,1"))


def test_gl_inverse_two_sided_and_det_multiplicative():
    rng = random.Random(9)
    F5 = GF(5)
    from tatekit.verify import rand_gl

    for _ in range(25):
        g = rand_gl(F5, 2, rng)
        h = rand_gl(F5, 2, rng)
        gi = gl_inverse(g.matrix)
        assert g.matrix * gi == LaurentMatrix.identity(F5, 2)
        assert gi * g.matrix == LaurentMatrix.identity(F5, 2)
        assert det_laurent(g.matrix * h.matrix) == det_laurent(g.matrix) * det_laurent(h.matrix)


def test_valuation_multiplicative():
    rng = random.Random(2)
    for trial in range(100):
        ctx = GF(5) if trial % 2 else QQ
        from tatekit.verify import rand_unit_poly

        f = rand_unit_poly(ctx, rng, -5, 5)
        g = rand_unit_poly(ctx, rng, -5, 5)
        assert valuation(f * g) == valuation(f) + valuation(g)


def test_parser_grammar():
    assert P("3*t^-2 + 1 + 5*t^3") == LaurentPoly(QQ, {-2: 3, 0: 1, 3: 5})
    assert P("t") == LaurentPoly(QQ, {1: 1})
    assert P("t^2") == LaurentPoly(QQ, {2: 1})
    assert P("-t") == LaurentPoly(QQ, {1: -1})
    assert P("1-t") == LaurentPoly(QQ, {0: 1, 1: -1})
    assert P("1/2*t^-1") == LaurentPoly(QQ, {-1: QQ.scalar("1/2")})
    assert P(" 1 + 2*t ") == LaurentPoly(QQ, {0: 1, 1: 2})
    with pytest.raises(ValueError):
        P("t^^2")
    with pytest.raises(ValueError):
        P("")


def test_str_parses_back():
    rng = random.Random(4)
    from tatekit.verify import rand_unit_poly

    for _ in range(30):
        f = rand_unit_poly(QQ, rng, -4, 4)
        assert parse_laurent(QQ, str(f)) == f


def test_compose_and_identity():
    t = Automorphism.mult_by(P("t"))
    tinv = Automorphism.mult_by(P("t^-1"))
    assert t.compose(tinv).is_identity()
    gl1 = Automorphism.gl(parse_laurent_matrix(QQ, "t"))
    assert gl1.compose(tinv).is_identity()
    assert Automorphism.identity(QQ, 2).is_identity()
    u = Automorphism.mult_by(P("1-t"))
    ui = u.inverse(6)
    prod = u.compose(ui)
    assert prod.series.valuation == 0 and prod.series.coeffs[0].is_one()
