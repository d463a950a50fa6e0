#include <chowcalc/ring.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace chowcalc;

namespace {

TruncPoly random_poly(const RingCtx& ctx, std::mt19937& rng, int terms = 5) {
    std::uniform_int_distribution<int> coeff(-6, 6);
    TruncPoly p(ctx);
    for (int t = 0; t < terms; ++t) {
        Exponents e(ctx.num_vars());
        for (int i = 0; i < ctx.num_vars(); ++i) e[i] = std::uniform_int_distribution<int>(0, ctx.cap(i))(rng);
        p.add_term(e, Rational(coeff(rng), 1 + std::uniform_int_distribution<int>(0, 2)(rng)));
    }
    return p;
}

// Dense reference multiplication: full product first, then drop over-cap terms.
TruncPoly dense_product(const TruncPoly& a, const TruncPoly& b) {
    std::map<Exponents, Rational> full;
    for (const auto& [ea, ca] : a.terms())
        for (const auto& [eb, cb] : b.terms()) {
            Exponents e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            full[e] += ca * cb;
        }
    TruncPoly out(a.ctx());
    for (const auto& [e, c] : full) {
        bool fits = true;
        for (std::size_t i = 0; i < e.size(); ++i) fits = fits && e[i] <= a.ctx().cap(static_cast<int>(i));
        if (fits) out.add_term(e, c);
    }
    return out;
}

}  // namespace

TEST(Ring, MakeRingValidatesCaps) {
    EXPECT_THROW(make_ring(2, {3}), std::invalid_argument);
    EXPECT_THROW(make_ring(0, {}), std::invalid_argument);
    RingCtx scalar = make_ring(1, {0});
    TruncPoly h = TruncPoly::variable(scalar, 0);
    EXPECT_TRUE(h.is_zero());
    EXPECT_EQ(TruncPoly::constant(scalar, 7).integrate(), 7);
}

TEST(Ring, ContextMismatchThrows) {
    TruncPoly a = TruncPoly::constant(make_ring(1, {3}), 1);
    TruncPoly b = TruncPoly::constant(make_ring(1, {4}), 1);
    EXPECT_THROW(a * b, std::invalid_argument);
    EXPECT_THROW(a + b, std::invalid_argument);
}

TEST(Ring, TruncationAndHandProducts) {
    RingCtx p4 = make_ring(1, {4});
    TruncPoly h = TruncPoly::variable(p4, 0);
    EXPECT_TRUE((h.pow(3) * h.pow(2)).is_zero());

    RingCtx ctx = make_ring(2, {4, 4});
    TruncPoly prod = linear_product(ctx, {{1, 4}, {2, 3}});
    TruncPoly expect(ctx);
    expect.add_term({2, 0}, 2);
    expect.add_term({1, 1}, 11);
    expect.add_term({0, 2}, 12);
    EXPECT_EQ(prod, expect);
}

TEST(Ring, LinearProductExamples) {
    RingCtx ctx = make_ring(2, {4, 4});
    TruncPoly quintic = linear_product(ctx, {{1, 4}, {2, 3}, {3, 2}});
    EXPECT_EQ(quintic.coefficient({3, 0}), 6);
    EXPECT_EQ(quintic.coefficient({2, 1}), 37);
    EXPECT_EQ(quintic.coefficient({1, 2}), 58);
    EXPECT_EQ(quintic.coefficient({0, 3}), 24);
    EXPECT_EQ(quintic.terms().size(), 4u);

    EXPECT_EQ(linear_product(ctx, {}), TruncPoly::constant(ctx, 1));
    TruncPoly sq = linear_product(ctx, {{1, 2}, {1, 2}});
    EXPECT_EQ(sq.str(), "H1^2 + 4*H1*H2 + 4*H2^2");
}

TEST(Ring, GeometricInverse) {
    RingCtx ctx = make_ring(2, {4, 4});
    TruncPoly u = TruncPoly::linear(ctx, {-1, 1});
    TruncPoly one = TruncPoly::constant(ctx, 1);
    EXPECT_EQ(geometric_inverse(u, 1), one + u);
    EXPECT_EQ(geometric_inverse(u, 2), one + u + u * u);
    EXPECT_THROW(geometric_inverse(one + u, 2), std::domain_error);

    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        TruncPoly v = random_poly(ctx, rng);
        v.add_term({0, 0}, -v.coefficient({0, 0}));
        int bound = 1 + trial % 5;
        TruncPoly check = (one - v) * geometric_inverse(v, bound);
        EXPECT_EQ(check.graded_part(0), one);
        for (int d = 1; d <= bound; ++d) EXPECT_TRUE(check.graded_part(d).is_zero());
    }
}

TEST(Ring, GradedPart) {
    RingCtx p = make_ring(1, {4});
    TruncPoly f = TruncPoly::constant(p, 1) + TruncPoly::variable(p, 0, 7) + TruncPoly::monomial(p, {2}, 16);
    EXPECT_EQ(f.graded_part(2), TruncPoly::monomial(p, {2}, 16));
    EXPECT_TRUE(f.graded_part(3).is_zero());

    RingCtx ctx = make_ring(2, {4, 4});
    TruncPoly one = TruncPoly::constant(ctx, 1);
    TruncPoly h1 = TruncPoly::variable(ctx, 0);
    TruncPoly c = (one + Rational(2) * h1) * (one + Rational(2) * h1) * (one + Rational(3) * h1);
    TruncPoly ex = (c * geometric_inverse(TruncPoly::linear(ctx, {-1, 1}), 2)).graded_part(2);
    TruncPoly expect(ctx);
    expect.add_term({2, 0}, 10);
    expect.add_term({1, 1}, 5);
    expect.add_term({0, 2}, 1);
    EXPECT_EQ(ex, expect);
}

TEST(Ring, Integrate) {
    RingCtx ctx = make_ring(2, {3, 3});
    EXPECT_EQ(TruncPoly::monomial(ctx, {3, 3}).integrate(), 1);
    EXPECT_EQ(TruncPoly::monomial(ctx, {3, 2}).integrate(), 0);
    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        TruncPoly a = random_poly(ctx, rng), b = random_poly(ctx, rng);
        Rational s(trial - 7, 3);
        EXPECT_EQ((a + s * b).integrate(), a.integrate() + s * b.integrate());
    }
}

TEST(Ring, RingAxiomsAndDenseOracle) {
    std::mt19937 rng(2024);
    for (int nv = 1; nv <= 3; ++nv) {
        for (int trial = 0; trial < 25; ++trial) {
            std::vector<int> caps(nv);
            for (int& c : caps) c = std::uniform_int_distribution<int>(0, 5)(rng);
            RingCtx ctx = make_ring(nv, caps);
            TruncPoly a = random_poly(ctx, rng), b = random_poly(ctx, rng), c = random_poly(ctx, rng);
            EXPECT_EQ(a * b, dense_product(a, b));
            EXPECT_EQ(a * b, b * a);
            EXPECT_EQ((a * b) * c, a * (b * c));
            EXPECT_EQ(a * (b + c), a * b + a * c);
        }
    }
}

TEST(Ring, SubstituteAndPermute) {
    RingCtx ctx = make_ring(2, {3, 3});
    TruncPoly p = linear_product(ctx, {{1, 2}, {3, 0}});
    EXPECT_EQ(p.permuted({1, 0}), linear_product(ctx, {{2, 1}, {0, 3}}));
    RingCtx one = make_ring(1, {3});
    TruncPoly h = TruncPoly::variable(one, 0);
    EXPECT_EQ(substitute(p, {h, h}), TruncPoly::monomial(one, {2}, 9));
}

TEST(Ring, Bernoulli) {
    EXPECT_EQ(bernoulli(0), 1);
    EXPECT_EQ(bernoulli(1), Rational(-1, 2));
    EXPECT_EQ(bernoulli(2), Rational(1, 6));
    EXPECT_EQ(bernoulli(3), 0);
    EXPECT_EQ(bernoulli(4), Rational(-1, 30));
    EXPECT_EQ(bernoulli(12), Rational(-691, 2730));
}

TEST(Ring, ExpLinear) {
    RingCtx ctx = make_ring(1, {4});
    TSeries s = exp_linear(TruncPoly::variable(ctx, 0), 2);
    EXPECT_EQ(s[0], TruncPoly::constant(ctx, 1));
    EXPECT_EQ(s[1], TruncPoly::variable(ctx, 0));
    EXPECT_EQ(s[2], TruncPoly::monomial(ctx, {2}, Rational(1, 2)));
}

TEST(Ring, RatioSeriesMatchesFiniteGeometricSum) {
    const int order = 6;
    TSeries ratio = ratio_series(order);
    for (int a = 1; a <= 8; ++a) {
        for (int m = 0; m <= order; ++m) {
            // coefficient of w^m in sum_{j<a} e^{jw}
            Rational expect = 0;
            for (int j = 0; j < a; ++j) expect += rational_pow(Rational(j), m) / factorial(m);
            Rational got = 0;
            for (const auto& [e, c] : ratio[m].terms()) got += c * rational_pow(Rational(a), e[0]);
            EXPECT_EQ(got, expect) << "a=" << a << " m=" << m;
        }
    }
}

TEST(Ring, StringForm) {
    RingCtx ctx = make_ring(3, {2, 2, 2});
    TruncPoly p = TruncPoly::monomial(ctx, {2, 0, 1}, Rational(-3, 4)) + TruncPoly::constant(ctx, 1);
    EXPECT_EQ(p.monomial_key({2, 0, 1}), "H1^2*H3");
    EXPECT_EQ(p.monomial_key({0, 0, 0}), "1");
    EXPECT_EQ(p.str(), "-3/4*H1^2*H3 + 1");
}
