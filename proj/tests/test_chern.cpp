#include <chowcalc/chern.hpp>

#include <gtest/gtest.h>

using namespace chowcalc;

namespace {

TruncPoly poly2(const RingCtx& ctx, std::initializer_list<std::pair<Exponents, int>> terms) {
    TruncPoly p(ctx);
    for (const auto& [e, c] : terms) p.add_term(e, c);
    return p;
}

}  // namespace

TEST(Chern, BundleSpecValidation) {
    EXPECT_THROW(BundleSpec::split({3, 1}), std::domain_error);
    EXPECT_THROW(BundleSpec::split({}), std::invalid_argument);
    EXPECT_EQ(BundleSpec::split({2, 3, 2}).degrees(), (std::vector<int>{3, 2, 2}));
    EXPECT_THROW(compute_q(3, BundleSpec::split({4})), std::domain_error);
}

TEST(Chern, TotalChern) {
    RingCtx ctx = make_ring(1, {5});
    EXPECT_EQ(total_chern(BundleSpec::split({5}), ctx, 0).str(), "5*H1 + 1");
    EXPECT_EQ(total_chern(BundleSpec::split({3, 3}), ctx, 0).str(), "9*H1^2 + 6*H1 + 1");
    EXPECT_EQ(total_chern(BundleSpec::chern({6, 9}), ctx, 0), total_chern(BundleSpec::split({3, 3}), ctx, 0));
}

TEST(Chern, Whitney) {
    RingCtx ctx = make_ring(1, {8});
    TruncPoly left = total_chern(BundleSpec::split({4, 2}), ctx, 0);
    TruncPoly right = total_chern(BundleSpec::split({3, 2, 2}), ctx, 0);
    EXPECT_EQ(total_chern(BundleSpec::split({4, 3, 2, 2, 2}), ctx, 0), left * right);
}

TEST(Chern, PowerSums) {
    EXPECT_EQ(power_sums(BundleSpec::split({3, 3}), 3), (std::vector<Rational>{6, 18, 54}));
    EXPECT_EQ(power_sums(BundleSpec::chern({6, 9}), 3), (std::vector<Rational>{6, 18, 54}));
    EXPECT_EQ(power_sums(BundleSpec::split({5}), 2), (std::vector<Rational>{5, 25}));
    for (const auto& spec : {BundleSpec::split({4, 3, 2}), BundleSpec::split({7, 5, 2, 2})}) {
        std::vector<Rational> e = spec.chern_numbers();
        std::vector<int> gammas;
        for (std::size_t i = 1; i < e.size(); ++i) gammas.push_back(static_cast<int>(e[i].convert_to<long>()));
        EXPECT_EQ(power_sums(BundleSpec::chern(gammas), 9), power_sums(spec, 9));
    }
}

TEST(Chern, SplitProductExamples) {
    BundleSpec quintic = BundleSpec::split({5});
    RingCtx ctx = pair_ring(3, quintic);
    EXPECT_EQ(m_top_chern_split(3, quintic), linear_product(ctx, {{1, 4}, {2, 3}, {3, 2}}));
    BundleSpec b33 = BundleSpec::split({3, 3});
    EXPECT_EQ(m_top_chern_split(3, b33), linear_product(pair_ring(3, b33), {{1, 2}, {1, 2}}));
    BundleSpec b223 = BundleSpec::split({2, 2, 3});
    EXPECT_EQ(m_top_chern_split(3, b223), linear_product(pair_ring(3, b223), {{1, 2}}));
}

TEST(Chern, GrrMatchesSplit) {
    BundleSpec quintic = BundleSpec::split({5});
    EXPECT_EQ(m_top_chern_grr(3, 1, quintic),
              poly2(pair_ring(3, quintic), {{{3, 0}, 6}, {{2, 1}, 37}, {{1, 2}, 58}, {{0, 3}, 24}}));
    EXPECT_EQ(m_top_chern_grr(3, 2, BundleSpec::chern({6, 9})),
              m_top_chern_split(3, BundleSpec::split({3, 3})));
    for (int n = 1; n <= 6; ++n)
        for (int r = 1; r <= 4; ++r)
            for (const auto& spec : split_cy_specs(n, r))
                EXPECT_EQ(m_top_chern_grr(n, r, spec), m_top_chern_split(n, spec)) << spec.label() << " n=" << n;
}

TEST(Chern, RankZeroM) {
    // n = r - 1: all degrees equal 2 and M has rank 0.
    BundleSpec spec = BundleSpec::split({2, 2, 2});
    TruncPoly c = m_top_chern_grr(2, 3, spec);
    EXPECT_EQ(c, TruncPoly::constant(c.ctx(), 1));
    EXPECT_EQ(m_top_chern_split(2, spec), c);
}

TEST(Chern, ExcessFactor) {
    BundleSpec quintic = BundleSpec::split({5});
    EXPECT_EQ(excess_factor(quintic, 3), TruncPoly::constant(pair_ring(3, quintic), 1));
    BundleSpec b33 = BundleSpec::split({3, 3});
    EXPECT_EQ(excess_factor(b33, 3), poly2(pair_ring(3, b33), {{{1, 0}, 5}, {{0, 1}, 1}}));
    BundleSpec b223 = BundleSpec::split({2, 2, 3});
    EXPECT_EQ(excess_factor(b223, 3), poly2(pair_ring(3, b223), {{{2, 0}, 10}, {{1, 1}, 5}, {{0, 2}, 1}}));
}

TEST(Chern, ComputeQExamples) {
    QResult q5 = compute_q(3, BundleSpec::split({5}));
    EXPECT_EQ(q5.a, (std::vector<Rational>{24, 58, 37, 6}));
    EXPECT_TRUE(q5.diamond_a0 && q5.diamond_a1);

    BundleSpec b33 = BundleSpec::split({3, 3});
    QResult q33 = compute_q(3, b33);
    EXPECT_EQ(q33.q_poly, poly2(pair_ring(3, b33), {{{3, 0}, 5}, {{2, 1}, 21}, {{1, 2}, 24}, {{0, 3}, 4}}));
    EXPECT_EQ(q33.a[0], 4);
    EXPECT_EQ(q33.a[1], 24);

    QResult q223 = compute_q(3, BundleSpec::split({2, 2, 3}));
    EXPECT_EQ(q223.a[0], 2);
    EXPECT_EQ(q223.a[1], 11);

    QResult qc = compute_q(3, BundleSpec::chern({6, 9}));
    EXPECT_EQ(qc.a, q33.a);
}

TEST(Chern, ClosedForms) {
    EXPECT_EQ(a0_closed_form(BundleSpec::split({5})), 24);
    EXPECT_EQ(a1_closed_form(BundleSpec::split({3, 3}), 3), 24);
    EXPECT_EQ(a1_closed_form(BundleSpec::split({5}), 3), 58);
    EXPECT_EQ(a1_unrestricted_form(BundleSpec::split({5}), 3), 178);
    for (int n = 1; n <= 6; ++n)
        for (int r = 1; r <= 4; ++r)
            for (const auto& spec : split_cy_specs(n, r)) {
                QResult q = compute_q(n, spec);
                EXPECT_EQ(q.a[0], a0_closed_form(spec)) << spec.label();
                EXPECT_EQ(q.a[1], a1_closed_form(spec, n)) << spec.label();
                EXPECT_TRUE(q.q_poly.has_integer_coefficients());
                EXPECT_TRUE(q.q_poly.is_homogeneous());
                EXPECT_EQ(q.q_poly.total_degree(), n);
            }
}

TEST(Chern, DegreeOfX) {
    EXPECT_EQ(degree_of_x(BundleSpec::split({5}), 3), 5);
    EXPECT_EQ(degree_of_x(BundleSpec::split({3, 3}), 3), 9);
    EXPECT_EQ(degree_of_x(BundleSpec::chern({6, 9}), 3), 9);
}

TEST(Chern, SplitSpecEnumeration) {
    EXPECT_EQ(split_cy_specs(3, 1).size(), 1u);
    EXPECT_EQ(split_cy_specs(3, 2).size(), 2u);  // (4,2), (3,3)
    EXPECT_EQ(split_cy_specs(3, 3).size(), 1u);  // (3,2,2)
    EXPECT_EQ(split_cy_specs(3, 4).size(), 1u);  // (2,2,2,2)
}
