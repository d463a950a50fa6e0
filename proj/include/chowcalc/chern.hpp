/**
 * @file chern.hpp
 * @brief Chern classes of the bundles on P x P that produce the polynomial Q.
 *
 * Two routes compute the top Chern class of M: a product over split roots,
 * and an expansion of the Chern character in t followed by Newton inversion.
 * The second route works from Chern classes alone, so the two agree only if
 * the series machinery is right.
 */
#pragma once

#include "ring.hpp"

#include <functional>

namespace chowcalc {

/// A vector bundle on projective space, by split degrees or Chern classes.
class BundleSpec {
 public:
    enum class Kind { Split, Chern };

    static BundleSpec split(std::vector<int> degrees) {
        if (degrees.empty()) throw std::invalid_argument("bundle needs rank >= 1");
        for (int d : degrees)
            if (d < 2) throw std::domain_error("split degrees must all be >= 2");
        std::sort(degrees.begin(), degrees.end(), std::greater<>());
        BundleSpec s;
        s.kind_ = Kind::Split;
        s.degrees_ = std::move(degrees);
        s.rank_ = static_cast<int>(s.degrees_.size());
        return s;
    }

    /// c_i(E) = gammas[i-1] * H^i.
    static BundleSpec chern(std::vector<int> gammas) {
        if (gammas.empty()) throw std::invalid_argument("bundle needs rank >= 1");
        BundleSpec s;
        s.kind_ = Kind::Chern;
        s.rank_ = static_cast<int>(gammas.size());
        s.gammas_ = std::move(gammas);
        return s;
    }

    Kind kind() const { return kind_; }
    bool is_split() const { return kind_ == Kind::Split; }
    int rank() const { return rank_; }
    const std::vector<int>& degrees() const {
        if (!is_split()) throw std::logic_error("bundle is not given by split degrees");
        return degrees_;
    }

    /// Elementary symmetric functions of the roots: c_0 = 1, ..., c_rank.
    std::vector<Rational> chern_numbers() const {
        std::vector<Rational> e(rank_ + 1, 0);
        e[0] = 1;
        if (is_split()) {
            for (int d : degrees_)
                for (int k = rank_; k >= 1; --k) e[k] += e[k - 1] * d;
        } else {
            for (int i = 0; i < rank_; ++i) e[i + 1] = gammas_[i];
        }
        return e;
    }

    Rational first_chern() const { return chern_numbers()[1]; }

    /// Short label such as "5" or "3,3" or "c=6,9".
    std::string label() const {
        std::string s = is_split() ? "" : "c=";
        const auto& v = is_split() ? degrees_ : gammas_;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
        return s;
    }

    friend bool operator==(const BundleSpec&, const BundleSpec&) = default;

 private:
    Kind kind_ = Kind::Split;
    int rank_ = 0;
    std::vector<int> degrees_;
    std::vector<int> gammas_;
};

inline void require_calabi_yau(int n, const BundleSpec& spec) {
    if (n < 1) throw std::invalid_argument("dimension n must be >= 1");
    if (spec.first_chern() != n + spec.rank() + 1)
        throw std::domain_error("Calabi-Yau condition c1(E) = n + r + 1 fails for E = (" + spec.label() +
                                ") with n = " + std::to_string(n));
}

/// The ring CH*(P^{n+r} x P^{n+r}) in which Q and M live.
inline RingCtx pair_ring(int n, const BundleSpec& spec) {
    int cap = n + spec.rank();
    return make_ring(2, {cap, cap});
}

/// c(E) = 1 + c_1 H + ... + c_r H^r written in variable `var` of ctx.
inline TruncPoly total_chern(const BundleSpec& spec, const RingCtx& ctx, int var) {
    std::vector<Rational> e = spec.chern_numbers();
    TruncPoly out(ctx);
    Exponents x(ctx.num_vars(), 0);
    for (int i = 0; i <= spec.rank(); ++i) {
        x.at(var) = i;
        out.add_term(x, e[i]);
    }
    return out;
}

/// p_1..p_upto of the Chern roots.
inline std::vector<Rational> power_sums(const BundleSpec& spec, int upto) {
    if (upto < 1) throw std::invalid_argument("power_sums: upto must be >= 1");
    std::vector<Rational> p(upto + 1, 0);
    p[0] = spec.rank();
    if (spec.is_split()) {
        for (int k = 1; k <= upto; ++k)
            for (int d : spec.degrees()) p[k] += rational_pow(Rational(d), k);
    } else {
        std::vector<Rational> e = spec.chern_numbers();
        auto ec = [&](int i) { return i < static_cast<int>(e.size()) ? e[i] : Rational(0); };
        for (int k = 1; k <= upto; ++k) {
            Rational s = (k % 2 ? 1 : -1) * Rational(k) * ec(k);
            for (int i = 1; i < k; ++i) s += (i % 2 ? 1 : -1) * ec(i) * p[k - i];
            p[k] = s;
        }
    }
    return {p.begin() + 1, p.end()};
}

/// Elementary symmetric e_0..e_m from power sums p_1..p_m (Newton).
inline std::vector<TruncPoly> newton_elementary(const std::vector<TruncPoly>& p, const RingCtx& ctx) {
    const int m = static_cast<int>(p.size());
    std::vector<TruncPoly> e(m + 1, TruncPoly(ctx));
    e[0] = TruncPoly::constant(ctx, 1);
    for (int k = 1; k <= m; ++k) {
        TruncPoly s(ctx);
        for (int i = 1; i <= k; ++i) {
            TruncPoly term = e[k - i] * p[i - 1];
            if (i % 2) s += term;
            else s -= term;
        }
        e[k] = s * (Rational(1) / k);
    }
    return e;
}

/// c_{n-r+1}(M) as the product of the split roots j H1 + (d_i - j) H2.
inline TruncPoly m_top_chern_split(int n, const BundleSpec& spec) {
    if (!spec.is_split()) throw std::invalid_argument("m_top_chern_split needs split degrees");
    require_calabi_yau(n, spec);
    RingCtx ctx = pair_ring(n, spec);
    std::vector<std::vector<Rational>> forms;
    for (int d : spec.degrees())
        for (int j = 1; j <= d - 2; ++j) forms.push_back({j, d - j});
    return linear_product(ctx, forms);
}

/// c_{n-r+1}(M) from the Chern character
///   ch(M) = e^{(H1-H2)t} sum_i e^{d_i H2 t} (e^{(d_i-2)w} - 1)/(e^w - 1),  w = (H1-H2)t,
/// with the root sums over d_i replaced by power sums of E.
inline TruncPoly m_top_chern_grr(int n, int r, const BundleSpec& spec) {
    if (spec.rank() != r) throw std::invalid_argument("m_top_chern_grr: rank mismatch");
    require_calabi_yau(n, spec);
    RingCtx out_ctx = pair_ring(n, spec);
    const int top = n - r + 1;
    if (top <= 0) return TruncPoly::constant(out_ctx, top == 0 ? 1 : 0);

    // Work in Q[H1, H2, u] where u is a single root of E.
    const int ucap = 2 * top + 1;
    RingCtx ctx = make_ring(3, {top, top, ucap}, {"H1", "H2", "u"});
    TruncPoly h1 = TruncPoly::variable(ctx, 0), h2 = TruncPoly::variable(ctx, 1), u = TruncPoly::variable(ctx, 2);
    TruncPoly diff = h1 - h2;
    TruncPoly a = u - TruncPoly::constant(ctx, 2);

    TSeries ratio = ratio_series(top);
    TSeries per_root(ctx, top);
    for (int l = 0; l <= top; ++l) {
        TruncPoly coeff_in_a = substitute(ratio[l], {a});
        per_root.coeff(l) = coeff_in_a * diff.pow(l);
    }
    TSeries chm = exp_linear(diff, top) * exp_linear(u * h2, top) * per_root;

    std::vector<Rational> p = power_sums(spec, ucap);
    auto sum_over_roots = [&](const TruncPoly& x) {
        TruncPoly out(out_ctx);
        for (const auto& [e, c] : x.terms()) {
            Rational root_sum = e[2] == 0 ? Rational(r) : p[e[2] - 1];
            out.add_term({e[0], e[1]}, c * root_sum);
        }
        return out;
    };

    std::vector<TruncPoly> psums;
    for (int m = 1; m <= top; ++m) psums.push_back(sum_over_roots(chm[m]) * factorial(m));
    return newton_elementary(psums, out_ctx)[top];
}

/// Degree r-1 part of c(E)(H1) / (1 - (H2 - H1)).
inline TruncPoly excess_factor(const BundleSpec& spec, const RingCtx& ctx) {
    const int r = spec.rank();
    TruncPoly u = TruncPoly::linear(ctx, {-1, 1});
    return (total_chern(spec, ctx, 0) * geometric_inverse(u, r - 1)).graded_part(r - 1);
}

inline TruncPoly excess_factor(const BundleSpec& spec, int n) { return excess_factor(spec, pair_ring(n, spec)); }

struct QResult {
    TruncPoly q_poly;
    std::vector<Rational> a;  ///< a[i] = coefficient of H1^i H2^{n-i}
    bool diamond_a0 = false;  ///< a_0 != 0
    bool diamond_a1 = false;  ///< a_1 != a_0
};

inline QResult q_from_poly(int n, TruncPoly q) {
    QResult res{std::move(q), {}, false, false};
    for (int i = 0; i <= n; ++i) res.a.push_back(res.q_poly.coefficient({i, n - i}));
    res.diamond_a0 = res.a[0] != 0;
    res.diamond_a1 = n >= 1 && res.a[1] != res.a[0];
    return res;
}

/// Q = c_{n-r+1}(M) * c_{r-1}(excess); split specs use the product route.
inline QResult compute_q(int n, const BundleSpec& spec) {
    require_calabi_yau(n, spec);
    TruncPoly m = spec.is_split() ? m_top_chern_split(n, spec) : m_top_chern_grr(n, spec.rank(), spec);
    return q_from_poly(n, m * excess_factor(spec, m.ctx()));
}

inline Rational a0_closed_form(const BundleSpec& spec) {
    Rational acc = 1;
    for (int d : spec.degrees()) acc *= factorial(d - 1);
    return acc;
}

/// a_1 = a_0 (sum_i sum_{j<=d_i-2} j/(d_i-j) + (n+2)); the n+2 term comes from
/// the excess factor and is present only for r >= 2.
inline Rational a1_closed_form(const BundleSpec& spec, int n) {
    Rational s = 0;
    for (int d : spec.degrees())
        for (int j = 1; j <= d - 2; ++j) s += Rational(j, d - j);
    if (spec.rank() >= 2) s += n + 2;
    return a0_closed_form(spec) * s;
}

/// The form stated without the rank restriction, for comparison in reports.
inline Rational a1_unrestricted_form(const BundleSpec& spec, int n) {
    Rational s = n + 2;
    for (int d : spec.degrees())
        for (int j = 1; j <= d - 2; ++j) s += Rational(j, d - j);
    return a0_closed_form(spec) * s;
}

/// deg X = integral over P^{n+r} of c_r(E) H^n.
inline Rational degree_of_x(const BundleSpec& spec, int n) {
    RingCtx ctx = make_ring(1, {n + spec.rank()});
    TruncPoly cls = total_chern(spec, ctx, 0).graded_part(spec.rank()) * TruncPoly::variable(ctx, 0).pow(n);
    return cls.integrate();
}

/// All split Calabi-Yau specs of dimension n and rank r (degrees >= 2, non-increasing).
inline std::vector<BundleSpec> split_cy_specs(int n, int r) {
    std::vector<BundleSpec> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int remaining, int maxd) {
        if (static_cast<int>(cur.size()) == r) {
            if (remaining == 0) out.push_back(BundleSpec::split(cur));
            return;
        }
        int slots = r - static_cast<int>(cur.size());
        for (int d = std::min(maxd, remaining - 2 * (slots - 1)); d >= 2; --d) {
            cur.push_back(d);
            rec(remaining - d, d);
            cur.pop_back();
        }
    };
    rec(n + r + 1, n + r + 1);
    return out;
}

}  // namespace chowcalc
