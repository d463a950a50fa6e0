/**
 * @file decomp.hpp
 * @brief Pipelines for the two small-diagonal decompositions and their checks.
 *
 * cy_pipeline: Calabi-Yau complete intersections in P^{n+r}, where
 *   N * delta = Gamma + j12_* Q + j13_* Q + j23_* Q + P(h1, h2, h3)  on X^3.
 * hyp_pipeline: hypersurfaces of degree d >= n + 2, k = d + 1 - n, where the
 *   gamma recursion gives Gamma = lambda_0 delta + sum_j lambda_j sum_{|I|=j} D_I + P on X^k.
 *
 * All identities live in the formal ring of tautring.hpp: distinct normalized
 * diagonal monomials are treated as independent.
 */
#pragma once

#include "chern.hpp"
#include "schubert.hpp"
#include "tautring.hpp"

#include <cstdlib>

namespace chowcalc {

struct Check {
    enum class Status { Pass, Fail, Inconclusive };

    std::string name;
    Status status = Status::Fail;
    std::string lhs, rhs, note;

    bool pass() const { return status == Status::Pass; }
    bool failed() const { return status == Status::Fail; }

    static std::string status_name(Status s) {
        switch (s) {
            case Status::Pass: return "pass";
            case Status::Fail: return "fail";
            default: return "inconclusive";
        }
    }
};

inline Check make_check(std::string name, const Rational& lhs, const Rational& rhs, std::string note = {}) {
    return {std::move(name), lhs == rhs ? Check::Status::Pass : Check::Status::Fail, to_string(lhs), to_string(rhs),
            std::move(note)};
}

inline Check make_check(std::string name, bool ok, std::string lhs, std::string rhs, std::string note = {}) {
    return {std::move(name), ok ? Check::Status::Pass : Check::Status::Fail, std::move(lhs), std::move(rhs),
            std::move(note)};
}

/// Desk-scale limit on k and n; CHOWCALC_MAX_K raises both.
inline int desk_cap() {
    if (const char* env = std::getenv("CHOWCALC_MAX_K")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1 && v <= 64) return static_cast<int>(v);
    }
    return 6;
}

inline bool has_integer_coefficients(const TruncPoly& p) {
    for (const auto& [e, c] : p.terms())
        if (!is_integer(c)) return false;
    return true;
}

inline bool is_symmetric(const TruncPoly& p) {
    const int r = p.ctx().num_vars();
    std::vector<int> perm(r);
    std::iota(perm.begin(), perm.end(), 0);
    while (std::next_permutation(perm.begin(), perm.end()))
        if (!(p.permuted(perm) == p)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Calabi-Yau complete intersections.

struct CyReport {
    BundleSpec spec;
    int n = 0;
    QResult q;
    Rational deg_x;
    Rational big_n;                   ///< a_0 * deg X
    std::optional<TruncPoly> p_poly;  ///< P on (P^{n+r})^3
    bool p_assumed = true;            ///< identity built from the coeff2 values, not from P
    DiagClass identity;               ///< N delta - j_* Q - P in Keep mode; equals Gamma
    std::vector<Check> checks;
    bool main2_verdict = false;
};

/// N delta - j12_* Q - j13_* Q - j23_* Q - P on X^3.
inline DiagClass main1_identity(const TautCtx& ctx, const TruncPoly& q_on_x, const Rational& big_n,
                                const TruncPoly& p_on_x) {
    DiagClass x = delta(ctx, 3) * big_n;
    x -= push_pair(ctx, {0, 0, 1}, q_on_x);
    x -= push_pair(ctx, {0, 1, 0}, q_on_x);
    x -= push_pair(ctx, {1, 0, 0}, q_on_x);
    x -= from_poly(ctx, p_on_x);
    return x;
}

/// The part of P that acts on pairs of positive-codimension cycles, taken
/// from b_{l,k,n} = -(a_l + a_k) / deg X.
inline TruncPoly assumed_p(int n, const std::vector<Rational>& a, const Rational& deg_x) {
    TruncPoly p(make_ring(3, {n, n, n}));
    for (int l = 1; l < n; ++l) p.add_term({l, n - l, n}, -(a[l] + a[n - l]) / deg_x);
    return p;
}

inline CyReport cy_pipeline(const BundleSpec& spec, int n, bool with_p) {
    require_calabi_yau(n, spec);
    if (with_p && !spec.is_split()) throw std::invalid_argument("P is only computed for split bundles");
    if (n > desk_cap()) throw std::domain_error("n exceeds the desk-scale cap (set CHOWCALC_MAX_K to raise it)");

    const int r = spec.rank();
    CyReport rep{spec, n, compute_q(n, spec), degree_of_x(spec, n), 0, std::nullopt, true,
                 DiagClass(TautCtx(n, 1), 3), {}, false};
    const std::vector<Rational>& a = rep.q.a;
    rep.big_n = a[0] * rep.deg_x;
    auto& checks = rep.checks;

    if (spec.is_split()) {
        Rational prod = 1;
        for (int d : spec.degrees()) prod *= factorial(d);
        checks.push_back(make_check("coeff1", rep.big_n, prod, "N = a0 * deg X against prod d_i!"));
        checks.push_back(make_check("a0_closed_form", a[0], a0_closed_form(spec)));
        checks.push_back(make_check("a1_closed_form", a[1], a1_closed_form(spec, n)));
        FanoData f = fano(spec, n + r + 1);
        checks.push_back(make_check("fano_dimension", Rational(f.expected_dim), Rational(n - 3)));
    } else {
        checks.push_back(make_check("coeff1", rep.big_n, a[0] * rep.deg_x, "no closed form for Chern-class input"));
    }
    checks.push_back(make_check("q_integrality", has_integer_coefficients(rep.q.q_poly), rep.q.q_poly.str(),
                                "integer coefficients"));

    const bool diamond = rep.q.diamond_a0 && rep.q.diamond_a1;
    rep.main2_verdict = diamond;
    checks.push_back({"diamond", diamond ? Check::Status::Pass : Check::Status::Inconclusive,
                      "a0=" + to_string(a[0]) + ", a1=" + to_string(a[1]), "a0 != 0 and a1 != a0", ""});
    if (r == 1)
        checks.push_back(make_check("voisin_recovery", Rational(1) / rep.big_n, Rational(1) / factorial(n + 2),
                                    "Gamma coefficient of the normalized decomposition"));

    const TruncPoly q_on_x = rep.q.q_poly.recapped(make_ring(2, {n, n}));
    TruncPoly p_on_x = assumed_p(n, a, rep.deg_x);
    if (with_p) {
        TruncPoly p = compute_p(n, spec, {1, 1, 1});
        rep.p_poly = p;
        rep.p_assumed = false;
        p_on_x = restrict_to_x(p, n);
        checks.push_back(make_check("p_integrality", has_integer_coefficients(p), "P", "integer coefficients"));
        checks.push_back(make_check("p_symmetry", is_symmetric(p), "P", "symmetric in h1, h2, h3"));
        bool coeff2 = true;
        std::string lhs, rhs;
        for (int i = 0; i <= n; ++i) {
            Rational b = p.coefficient({i, n - i, n});
            Rational want = -(a[i] + a[n - i]) / rep.deg_x;
            coeff2 = coeff2 && b == want;
            lhs += (i ? "," : "") + to_string(b);
            rhs += (i ? "," : "") + to_string(want);
        }
        checks.push_back(make_check("coeff2", coeff2, lhs, rhs, "b_{i,n-i,n} = -(a_i + a_{n-i}) / deg X"));

        TautCtx expand(n, rep.deg_x, r);
        DiagClass residual = push_proj(main1_identity(expand, q_on_x, rep.big_n, p_on_x), {0, 1});
        checks.push_back(make_check("pr12_residual", residual.is_zero(), residual.str(), "0",
                                    "pr12 of N delta - j_* Q - P, Gamma projects to 0"));
    }
    rep.identity = main1_identity(TautCtx(n, rep.deg_x, r, DiagonalRule::Keep), q_on_x, rep.big_n, p_on_x);
    return rep;
}

// ---------------------------------------------------------------------------
// Hypersurfaces of higher degree.

inline Rational mu(int r) { return Rational(r % 2 ? -1 : 1) * factorial(r - 2); }

inline Rational psi(int d, int k, int a) { return Rational(d) * factorial(d - a) / factorial(k - 1 - a); }

/// All ordered tuples of r positive integers summing to k.
inline std::vector<std::vector<int>> compositions(int k, int r) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int left) {
        if (static_cast<int>(cur.size()) == r - 1) {
            if (left >= 1) {
                cur.push_back(left);
                out.push_back(cur);
                cur.pop_back();
            }
            return;
        }
        for (int v = 1; v <= left - (r - 1 - static_cast<int>(cur.size())); ++v) {
            cur.push_back(v);
            rec(left - v);
            cur.pop_back();
        }
    };
    if (r >= 1 && k >= r) rec(k);
    return out;
}

/// gamma classes by the recursion, memoized on sorted tuples.
class GammaEngine {
 public:
    GammaEngine(int n, int d, bool with_p) : n_(n), d_(d), k_(d + 1 - n), with_p_(with_p), ctx_(n, d) {
        if (k_ < 2) throw std::domain_error("gamma recursion needs k = d + 1 - n >= 2");
    }

    int n() const { return n_; }
    int d() const { return d_; }
    int k() const { return k_; }
    const TautCtx& ctx() const { return ctx_; }
    /// Without P only the B_1 coefficients are complete for r >= 3.
    bool complete() const { return with_p_; }
    const std::map<std::vector<int>, DiagClass>& memo() const { return memo_; }

    DiagClass gamma(const std::vector<int>& a) {
        const int r = static_cast<int>(a.size());
        if (r < 2 || r > k_) throw std::domain_error("gamma needs 2 <= r <= k");
        if (std::accumulate(a.begin(), a.end(), 0) != k_) throw std::domain_error("gamma needs sum a_i = k");
        for (int x : a)
            if (x < 1) throw std::domain_error("gamma needs a_i >= 1");

        std::vector<int> sorted = a;
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
        const DiagClass& base = sorted_gamma(sorted);
        // Slot j of the sorted tuple moves to a slot i with a_i = sorted_j.
        std::vector<int> perm(r);
        std::vector<bool> used(r, false);
        for (int j = 0; j < r; ++j)
            for (int i = 0; i < r; ++i)
                if (!used[i] && a[i] == sorted[j]) {
                    perm[j] = i;
                    used[i] = true;
                    break;
                }
        return permute_slots(base, perm);
    }

 private:
    const DiagClass& sorted_gamma(const std::vector<int>& a) {
        if (auto it = memo_.find(a); it != memo_.end()) return it->second;
        const int r = static_cast<int>(a.size());
        DiagClass out(ctx_, r);
        if (r == 2) {
            out = gamma_start(ctx_, d_, a[0], a[1]);
        } else {
            for (int s = 2; s < r; ++s)
                for (const PartitionMap& alpha : enumerate(r, s)) out -= push_diag(alpha, gamma(pull_tuple(alpha, a)));
            if (with_p_) out -= from_poly(ctx_, restrict_to_x(compute_p(n_, BundleSpec::split({d_}), a), n_));
        }
        return memo_.emplace(a, std::move(out)).first->second;
    }

    int n_, d_, k_;
    bool with_p_;
    TautCtx ctx_;
    std::map<std::vector<int>, DiagClass> memo_;
};

inline DiagClass hyp_gamma(int n, int d, const std::vector<int>& a, bool with_p) {
    GammaEngine engine(n, d, with_p);
    return engine.gamma(a);
}

/// B_1 coefficients of every gamma with 2 <= r <= r_max against mu_r psi(a_i).
inline std::vector<Check> verify_allgamma(GammaEngine& engine, int r_max) {
    const int k = engine.k(), d = engine.d();
    if (r_max < 2 || r_max > k) throw std::invalid_argument("verify_allgamma needs 2 <= r_max <= k");
    std::vector<Check> out;
    for (int r = 2; r <= r_max; ++r) {
        bool ok = true;
        std::string lhs, rhs;
        int tuples = 0;
        for (const auto& a : compositions(k, r)) {
            ++tuples;
            Classification cl = classify(engine.gamma(a));
            const auto b1 = cl.b_parts.count(1) ? cl.b_parts.at(1) : std::map<std::vector<int>, Rational>{};
            for (int i = 0; i < r; ++i) {
                Rational got = cl.b({i}), want = mu(r) * psi(d, k, a[i]);
                if (got != want) {
                    ok = false;
                    if (lhs.empty()) {
                        lhs = to_string(got);
                        rhs = to_string(want);
                    }
                }
            }
            ok = ok && b1.size() <= static_cast<std::size_t>(r) && cl.nonstandard.empty();
        }
        if (ok) {
            lhs = "B_1 = mu_" + std::to_string(r) + " psi(a_i)";
            rhs = "all " + std::to_string(tuples) + " tuples";
        }
        out.push_back(make_check("allgamma_r" + std::to_string(r), ok, lhs, rhs));
    }
    return out;
}

/// Projection of an identity on X^l to the first l-1 factors.
struct ProjectedIdentity {
    int l = 0;              ///< number of factors after projection
    Rational delta_coeff;   ///< coefficient of delta contributed by the projected classes
    Classification rest;    ///< everything else
};

inline ProjectedIdentity project_reduce(const DiagClass& x) {
    if (x.r() < 3) throw std::invalid_argument("project_reduce needs at least three factors");
    std::vector<int> keep(x.r() - 1);
    std::iota(keep.begin(), keep.end(), 0);
    Classification cl = classify(push_proj(x, keep));
    ProjectedIdentity out{x.r() - 1, cl.delta, cl};
    out.rest.delta = 0;
    return out;
}

/// Whether every I of size j carries the same coefficient; sets value.
inline bool symmetric_bucket(const Classification& cl, int j, Rational& value) {
    auto it = cl.b_parts.find(j);
    if (it == cl.b_parts.end()) {
        value = 0;
        return true;
    }
    value = it->second.begin()->second;
    Integer expected = 1;
    for (int i = 0; i < j; ++i) expected = expected * (cl.r - i) / (i + 1);
    if (Integer(it->second.size()) != expected) return false;
    for (const auto& [I, c] : it->second)
        if (c != value) return false;
    return true;
}

struct HypReport {
    int n = 0, d = 0, k = 0;
    bool complete = false;  ///< P included; otherwise only lambda_1 is final
    std::map<std::vector<int>, Classification> gamma_table;
    std::map<int, Rational> lambda;  ///< lambda_j, 1 <= j <= k-2, before normalization
    Rational lambda1;
    Rational gamma_coeff;            ///< Gamma coefficient in case 1
    std::optional<TruncPoly> p_poly; ///< case-1 polynomial part
    bool gamma_empty = false;        ///< k > n
    bool outside_scope = false;      ///< n < 3
    DiagClass case1_rest;            ///< delta = gamma_coeff * Gamma + case1_rest
    ProjectedIdentity projection;
    std::string lambda0_note;
    std::vector<Check> checks;
};

inline HypReport hyp_pipeline(int n, int d, bool with_p) {
    if (n < 1) throw std::invalid_argument("dimension n must be >= 1");
    if (d < n + 2) throw std::domain_error("hypersurface pipeline needs d >= n + 2");
    const int k = d + 1 - n;
    if (k > desk_cap() || n > desk_cap())
        throw std::domain_error("k or n exceeds the desk-scale cap (set CHOWCALC_MAX_K to raise it)");

    GammaEngine engine(n, d, with_p);
    DiagClass g = engine.gamma(std::vector<int>(k, 1));
    Classification cl = classify(g);

    HypReport rep;
    rep.n = n;
    rep.d = d;
    rep.k = k;
    rep.complete = with_p;
    rep.gamma_empty = k > n;
    rep.outside_scope = n < 3;
    for (const auto& [a, x] : engine.memo()) rep.gamma_table.emplace(a, classify(x));
    auto& checks = rep.checks;

    checks.push_back(make_check("standard_form", cl.nonstandard.empty() && cl.delta == 0,
                                std::to_string(cl.nonstandard.size()) + " stray terms", "0",
                                "gamma_{1^k} is a combination of D_I and pure monomials"));
    for (int j = 1; j <= k - 1; ++j) {
        Rational v;
        bool sym = symmetric_bucket(cl, j, v);
        checks.push_back(make_check("lambda" + std::to_string(j) + "_symmetric", sym, "|I|=" + std::to_string(j),
                                    "one common coefficient"));
        if (j <= k - 2) rep.lambda[j] = v;
    }
    rep.lambda1 = rep.lambda[1];
    const Rational closed = Rational(k % 2 ? -1 : 1) * factorial(d);
    checks.push_back(make_check("gamma111", rep.lambda1, closed, "lambda_1 = (-1)^k d!"));
    checks.push_back(make_check("mu_psi", mu(k) * psi(d, k, 1), closed, "mu_k psi(1) = (-1)^k d!"));
    for (Check& c : verify_allgamma(engine, std::min(k, 5))) checks.push_back(std::move(c));

    rep.gamma_coeff = Rational(-1) / rep.lambda1;
    checks.push_back(make_check("case1_gamma_coefficient", rep.gamma_coeff, Rational(k % 2 ? 1 : -1) / factorial(d)));
    rep.case1_rest = g * (Rational(1) / rep.lambda1);

    // Pure monomials, including the B_{k-1} terms, form P.
    Classification c1 = classify(rep.case1_rest);
    TruncPoly p = *c1.poly_part;
    if (auto it = c1.b_parts.find(k - 1); it != c1.b_parts.end()) {
        for (const auto& [I, c] : it->second) {
            std::vector<int> e(k, 0);
            for (int i : I) e[i] = n;
            p.add_term(e, c / rational_pow(Rational(d), k - 1));
        }
    }
    rep.p_poly = p;
    if (with_p) checks.push_back(make_check("p_symmetry", is_symmetric(p), "P", "symmetric in h_1..h_k"));

    rep.projection = project_reduce(g);
    checks.push_back(make_check("projection_delta", rep.projection.delta_coeff, rep.lambda1,
                                "pr to the first k-1 factors: (lambda_0 + lambda_1) delta"));
    bool reduced_shape = rep.projection.rest.nonstandard.empty();
    for (int j = 1; j <= k - 2; ++j) {
        Rational v;
        reduced_shape = reduced_shape && symmetric_bucket(rep.projection.rest, j, v);
    }
    checks.push_back(make_check("projection_shape", reduced_shape, "projected identity",
                                "delta, symmetric D_I buckets and a polynomial"));
    rep.lambda0_note = "lambda_0 is not determined by the recursion; case 1 takes lambda_0 = -lambda_1, "
                       "otherwise (lambda_0 + " + to_string(rep.lambda1) + ") delta + R = 0 on X^" +
                       std::to_string(k - 1);
    if (!with_p)
        rep.lambda0_note += "; without P only lambda_1 is final, lambda_j for j >= 2 and P are partial";
    return rep;
}

// ---------------------------------------------------------------------------
// Product degeneration on symbolic cycles.

inline std::vector<Check> corollary_suite(const CyReport& rep) {
    std::vector<Check> out;
    const int n = rep.n;
    const std::vector<Rational>& a = rep.q.a;
    const Rational& dx = rep.deg_x;
    const bool diamond = rep.main2_verdict;
    const std::string assumed = rep.p_assumed ? "P terms taken from the coeff2 values" : "";
    const CycleMono zz{{0, 1}, 0}, hn{{}, n};
    for (int k = 1; k < n; ++k) {
        const int l = n - k;
        const std::string tag = "_" + std::to_string(k) + "_" + std::to_string(l);
        SymCtx sym{n, dx, {k, l}, {"Z", "Z'"}};
        SymbolicExpr e = apply_corr(rep.identity, sym);

        SymbolicExpr four(sym);
        const CycleMono deg_z{{0}, n - k}, deg_zp{{1}, n - l};
        four.add({}, zz, a[0] * dx);
        four.add({zz}, hn, -a[0]);
        four.add({deg_zp}, CycleMono{{0}, l}, -a[l]);
        four.add({deg_z}, CycleMono{{1}, k}, -a[k]);
        four.add({deg_z, deg_zp}, hn, (a[k] + a[l]) / dx);
        out.push_back(make_check("corweak" + tag, e == four, e.str(), four.str(), assumed));

        if (!diamond) {
            out.push_back({"main2" + tag, Check::Status::Inconclusive, e.str(), "Q*h^n", "diamond fails"});
            continue;
        }
        SymbolicExpr red = e.reduce_hyperplane();
        std::set<CycleMono> cyc = red.cycles();
        bool ok = cyc.count(zz) && cyc.size() <= 2 && (cyc.size() == 1 || cyc.count(hn));
        SymbolicExpr lead = red.coefficient_of(zz);
        SymbolicExpr lead_want(sym);
        lead_want.add({}, CycleMono{}, a[0] * dx);
        ok = ok && lead == lead_want;
        out.push_back(make_check("main2" + tag, ok, red.str(), "a0 deg X Z.Z' in Q*h^n", assumed));
    }

    // Z' = h with Z of codimension n-1.
    if (n >= 2) {
        SymCtx sym{n, dx, {n - 1, 1}, {"Z", "Z'"}};
        SymbolicExpr e = apply_corr(rep.identity, sym).substitute_h(1);
        SymbolicExpr want(sym);
        want.add({}, CycleMono{{0}, 1}, (a[0] - a[1]) * dx);
        want.add({CycleMono{{0}, 1}}, hn, -(a[0] - a[1]));
        out.push_back(make_check("laststep", e == want, e.str(), want.str(), assumed));
    }
    return out;
}

inline std::vector<Check> corollary_suite(const HypReport& rep) {
    std::vector<Check> out;
    const int n = rep.n, m = rep.k - 1;
    if (m > n) {
        out.push_back({"main3cor", Check::Status::Inconclusive, "k-1 = " + std::to_string(m), "<= n",
                       "no composition of n into k-1 positive parts"});
        return out;
    }
    const DiagClass identity = delta(rep.case1_rest.ctx(), rep.k) - rep.case1_rest;
    std::vector<int> all(m);
    std::iota(all.begin(), all.end(), 0);
    const CycleMono prod{all, 0}, hn{{}, n};
    for (const auto& codims : compositions(n, m)) {
        std::string tag;
        for (int c : codims) tag += "_" + std::to_string(c);
        SymbolicExpr e = apply_corr(identity, SymCtx{n, Rational(rep.d), codims, {}});
        std::set<CycleMono> cyc = e.cycles();
        bool ok = cyc.size() == 2 && cyc.count(prod) && cyc.count(hn);
        SymbolicExpr lead = e.coefficient_of(prod);
        SymbolicExpr one(e.ctx());
        one.add({}, CycleMono{}, 1);
        ok = ok && lead == one;
        ok = ok && e.term({prod}, hn) == Rational(-1, rep.d);
        out.push_back(make_check("main3cor" + tag, ok, e.str(), "z_1...z_m in Q*h^n",
                                 rep.complete ? "" : "polynomial part without P"));
    }
    return out;
}

}  // namespace chowcalc
