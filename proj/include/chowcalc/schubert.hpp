/**
 * @file schubert.hpp
 * @brief Schubert calculus on G(2,N) and the P^1-bundle towers over it.
 *
 * Conventions: S is the rank-2 tautological subbundle, c(S^dual) = 1 + s1 + s2,
 * and every relative hyperplane class x on P(S) satisfies x^2 = s1 x - s2.
 * W_r is the r-fold fiber product of the universal line, with classes
 * xi_1..xi_r; an optional extra variable zeta is the hyperplane class of one
 * more copy of the universal line (the fiber of P(S) -> W_r).
 */
#pragma once

#include "chern.hpp"

#include <optional>

namespace chowcalc {

/// Chow ring of the Grassmannian of lines in P^{N-1}, Schubert basis s_{a,b}.
class GrassCtx {
 public:
    explicit GrassCtx(int N) : data_(std::make_shared<Data>()) {
        if (N < 2) throw std::invalid_argument("G(2,N) needs N >= 2");
        Data& d = *data_;
        d.N = N;
        d.top = N - 2;
        for (int a = 0; a <= d.top; ++a)
            for (int b = 0; b <= a; ++b) {
                d.index[{a, b}] = static_cast<int>(d.basis.size());
                d.basis.push_back({a, b});
            }
        build_table();
    }

    int N() const { return data_->N; }
    int dim() const { return 2 * data_->top; }
    int size() const { return static_cast<int>(data_->basis.size()); }
    std::pair<int, int> label(int i) const { return data_->basis.at(i); }
    int index(int a, int b) const {
        auto it = data_->index.find({a, b});
        return it == data_->index.end() ? -1 : it->second;
    }
    int codim(int i) const { return label(i).first + label(i).second; }

    /// Structure constants: s_i * s_j = sum c_k s_k.
    const std::vector<std::pair<int, int>>& product(int i, int j) const { return data_->table[i * size() + j]; }

    friend bool operator==(const GrassCtx& x, const GrassCtx& y) { return x.N() == y.N(); }

 private:
    struct Data {
        int N = 0, top = 0;
        std::vector<std::pair<int, int>> basis;
        std::map<std::pair<int, int>, int> index;
        std::vector<std::vector<std::pair<int, int>>> table;
    };

    using Dense = std::vector<long long>;

    Dense pieri(int c, const Dense& x) const {
        const Data& d = *data_;
        Dense out(d.basis.size(), 0);
        if (c < 0 || c > d.top) return out;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!x[i]) continue;
            auto [a, b] = d.basis[i];
            for (int a2 = a; a2 <= d.top; ++a2) {
                int b2 = a + b + c - a2;
                if (b2 < b || b2 > a) continue;
                out[d.index.at({a2, b2})] += x[i];
            }
        }
        return out;
    }

    void build_table() {
        Data& d = *data_;
        const int m = static_cast<int>(d.basis.size());
        d.table.assign(m * m, {});
        for (int i = 0; i < m; ++i) {
            Dense x(m, 0);
            x[i] = 1;
            for (int j = 0; j < m; ++j) {
                auto [a, b] = d.basis[j];
                // Giambelli: s_{a,b} = s_a s_b - s_{a+1} s_{b-1}
                Dense prod = pieri(a, pieri(b, x));
                if (b >= 1) {
                    Dense corr = pieri(a + 1, pieri(b - 1, x));
                    for (int k = 0; k < m; ++k) prod[k] -= corr[k];
                }
                for (int k = 0; k < m; ++k)
                    if (prod[k]) d.table[i * m + j].push_back({k, static_cast<int>(prod[k])});
            }
        }
    }

    std::shared_ptr<Data> data_;
};

/// Element of CH*(G(2,N)) in the Schubert basis.
class GrassElem {
 public:
    explicit GrassElem(GrassCtx ctx) : ctx_(std::move(ctx)), c_(ctx_.size(), Rational(0)) {}

    static GrassElem schubert(const GrassCtx& ctx, int a, int b, const Rational& coeff = 1) {
        GrassElem e(ctx);
        if (a < b) std::swap(a, b);
        int i = ctx.index(a, b);
        if (i >= 0 && b >= 0) e.c_[i] = coeff;
        return e;
    }
    static GrassElem unit(const GrassCtx& ctx, const Rational& coeff = 1) { return schubert(ctx, 0, 0, coeff); }
    /// Special class s_c = s_{c,0}; zero outside 0..N-2.
    static GrassElem special(const GrassCtx& ctx, int c) {
        if (c < 0) return GrassElem(ctx);
        return schubert(ctx, c, 0);
    }

    const GrassCtx& ctx() const { return ctx_; }
    const Rational& operator[](int i) const { return c_[i]; }
    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return q == 0; });
    }

    GrassElem& operator+=(const GrassElem& o) {
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    GrassElem& operator-=(const GrassElem& o) {
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    GrassElem& operator*=(const Rational& s) {
        for (auto& q : c_) q *= s;
        return *this;
    }
    friend GrassElem operator+(GrassElem a, const GrassElem& b) { return a += b; }
    friend GrassElem operator-(GrassElem a, const GrassElem& b) { return a -= b; }
    friend GrassElem operator*(GrassElem a, const Rational& s) { return a *= s; }
    friend GrassElem operator*(const Rational& s, GrassElem a) { return a *= s; }

    friend GrassElem operator*(const GrassElem& x, const GrassElem& y) {
        const GrassCtx& ctx = x.ctx_;
        GrassElem out(ctx);
        const int m = ctx.size();
        for (int i = 0; i < m; ++i) {
            if (x.c_[i] == 0) continue;
            for (int j = 0; j < m; ++j) {
                if (y.c_[j] == 0) continue;
                if (ctx.codim(i) + ctx.codim(j) > ctx.dim()) continue;
                Rational xy = x.c_[i] * y.c_[j];
                for (const auto& [k, c] : ctx.product(i, j)) out.c_[k] += xy * c;
            }
        }
        return out;
    }

    friend bool operator==(const GrassElem& a, const GrassElem& b) { return a.c_ == b.c_; }

    GrassElem pow(int m) const {
        GrassElem acc = unit(ctx_);
        for (int i = 0; i < m; ++i) acc = acc * *this;
        return acc;
    }

    /// Degree: coefficient of the point class s_{N-2,N-2}.
    Rational integrate() const { return c_.back(); }

    std::string str() const {
        std::string s;
        for (int i = 0; i < ctx_.size(); ++i) {
            if (c_[i] == 0) continue;
            auto [a, b] = ctx_.label(i);
            if (!s.empty()) s += " + ";
            s += to_string(c_[i]) + "*s" + std::to_string(a) + "," + std::to_string(b);
        }
        return s.empty() ? "0" : s;
    }

 private:
    GrassCtx ctx_;
    std::vector<Rational> c_;
};

inline GrassElem pieri_mul(const GrassElem& x, const GrassElem& y) { return x * y; }

// ---------------------------------------------------------------------------
// Towers of P^1-bundles over G(2,N).

/// W_r, optionally with the fiber variable zeta of P(S) -> W_r.
class TowerCtx {
 public:
    TowerCtx(GrassCtx grass, int r, bool with_fiber = false)
        : grass_(std::move(grass)), r_(r), fiber_(with_fiber) {
        if (r < 1) throw std::invalid_argument("tower needs r >= 1");
        if (r + fiber_ > 30) throw std::invalid_argument("tower too large");
    }
    const GrassCtx& grass() const { return grass_; }
    int r() const { return r_; }
    bool has_fiber() const { return fiber_; }
    int num_bits() const { return r_ + (fiber_ ? 1 : 0); }
    int zeta_bit() const {
        if (!fiber_) throw std::logic_error("tower has no fiber variable");
        return r_;
    }
    int dim() const { return grass_.dim() + num_bits(); }

    friend bool operator==(const TowerCtx& a, const TowerCtx& b) {
        return a.grass_ == b.grass_ && a.r_ == b.r_ && a.fiber_ == b.fiber_;
    }

 private:
    GrassCtx grass_;
    int r_;
    bool fiber_;
};

inline TowerCtx tower(const GrassCtx& ctx, int r) { return TowerCtx(ctx, r); }

/// Element of CH*(W_r) in the normal form sum_S g_S prod_{i in S} x_i.
class TowerElem {
 public:
    using Mask = unsigned;

    explicit TowerElem(TowerCtx ctx) : ctx_(std::move(ctx)) {}

    static TowerElem from_grass(const TowerCtx& ctx, const GrassElem& g) {
        TowerElem t(ctx);
        t.add(0, g);
        return t;
    }
    static TowerElem constant(const TowerCtx& ctx, const Rational& c) {
        return from_grass(ctx, GrassElem::unit(ctx.grass(), c));
    }
    /// The hyperplane class with bit `bit` (xi_i for i < r, zeta for bit r).
    static TowerElem variable(const TowerCtx& ctx, int bit, const Rational& c = 1) {
        TowerElem t(ctx);
        t.add(Mask(1) << bit, GrassElem::unit(ctx.grass(), c));
        return t;
    }
    static TowerElem xi(const TowerCtx& ctx, int i) { return variable(ctx, i); }
    static TowerElem zeta(const TowerCtx& ctx) { return variable(ctx, ctx.zeta_bit()); }

    const TowerCtx& ctx() const { return ctx_; }
    const std::map<Mask, GrassElem>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    GrassElem part(Mask m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? GrassElem(ctx_.grass()) : it->second;
    }

    void add(Mask m, const GrassElem& g) {
        if (g.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(m, g);
        if (!inserted) {
            it->second += g;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    TowerElem& operator+=(const TowerElem& o) {
        for (const auto& [m, g] : o.terms_) add(m, g);
        return *this;
    }
    TowerElem& operator-=(const TowerElem& o) {
        for (const auto& [m, g] : o.terms_) add(m, g * Rational(-1));
        return *this;
    }
    TowerElem& operator*=(const Rational& s) {
        if (s == 0) terms_.clear();
        for (auto& [m, g] : terms_) g *= s;
        return *this;
    }
    friend TowerElem operator+(TowerElem a, const TowerElem& b) { return a += b; }
    friend TowerElem operator-(TowerElem a, const TowerElem& b) { return a -= b; }
    friend TowerElem operator*(TowerElem a, const Rational& s) { return a *= s; }

    /// Multiplication by a class pulled back from G.
    TowerElem times_grass(const GrassElem& g) const {
        TowerElem out(ctx_);
        for (const auto& [m, h] : terms_) out.add(m, h * g);
        return out;
    }

    /// Multiplication by the hyperplane class with bit `bit`, reducing x^2 = s1 x - s2.
    TowerElem times_var(int bit) const {
        const GrassCtx& G = ctx_.grass();
        const GrassElem s1 = GrassElem::special(G, 1), s2 = GrassElem::schubert(G, 1, 1);
        const Mask b = Mask(1) << bit;
        TowerElem out(ctx_);
        for (const auto& [m, g] : terms_) {
            if (!(m & b)) {
                out.add(m | b, g);
            } else {
                out.add(m, g * s1);
                out.add(m & ~b, g * s2 * Rational(-1));
            }
        }
        return out;
    }

    friend TowerElem operator*(const TowerElem& x, const TowerElem& y) {
        TowerElem out(x.ctx_);
        for (const auto& [my, gy] : y.terms_) {
            TowerElem part = x.times_grass(gy);
            for (int bit = 0; bit < x.ctx_.num_bits(); ++bit)
                if (my & (Mask(1) << bit)) part = part.times_var(bit);
            out += part;
        }
        return out;
    }

    friend bool operator==(const TowerElem& a, const TowerElem& b) { return a.terms_ == b.terms_; }

    TowerElem pow(int m) const {
        TowerElem acc = constant(ctx_, 1);
        for (int i = 0; i < m; ++i) acc = acc * *this;
        return acc;
    }

 private:
    TowerCtx ctx_;
    std::map<Mask, GrassElem> terms_;
};

inline TowerElem tower_mul(const TowerElem& a, const TowerElem& b) { return a * b; }

/// Pushforward along the P^1-bundle of bit `bit`: a + b x -> b.
inline TowerElem fiber_pushforward(const TowerElem& x, int bit, const TowerCtx& target) {
    using Mask = TowerElem::Mask;
    const Mask b = Mask(1) << bit;
    TowerElem out(target);
    for (const auto& [m, g] : x.terms()) {
        if (!(m & b)) continue;
        Mask low = m & (b - 1), high = (m >> (bit + 1)) << bit;
        out.add(low | high, g);
    }
    return out;
}

/// Drops the fiber variable: P(S) over W_r -> W_r.
inline TowerElem push_fiber(const TowerElem& x) {
    const TowerCtx& c = x.ctx();
    return fiber_pushforward(x, c.zeta_bit(), TowerCtx(c.grass(), c.r(), false));
}

inline Rational tower_integrate(const TowerElem& x) {
    TowerElem::Mask full = (TowerElem::Mask(1) << x.ctx().num_bits()) - 1;
    return x.part(full).integrate();
}

/// Class of the divisor B_i in P(S): the image of the i-th tautological section.
inline TowerElem d_class(const TowerCtx& tctx, int i) {
    if (!tctx.has_fiber()) throw std::invalid_argument("d_class needs the fiber variable");
    if (i < 0 || i >= tctx.r()) throw std::out_of_range("d_class index");
    return TowerElem::zeta(tctx) + TowerElem::xi(tctx, i) -
           TowerElem::from_grass(tctx, GrassElem::special(tctx.grass(), 1));
}

/// Pullback along the j-th section W_r -> P(S): zeta becomes xi_j.
inline TowerElem section_restrict(const TowerElem& x, int j) {
    const TowerCtx& c = x.ctx();
    TowerCtx base(c.grass(), c.r(), false);
    using Mask = TowerElem::Mask;
    const Mask z = Mask(1) << c.zeta_bit();
    TowerElem out(base);
    for (const auto& [m, g] : x.terms()) {
        TowerElem mono = TowerElem::from_grass(base, g);
        for (int bit = 0; bit < c.r(); ++bit)
            if (m & (Mask(1) << bit)) mono = mono.times_var(bit);
        if (m & z) mono = mono.times_var(j);
        out += mono;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Symmetric functions of the two Chern roots of S^dual.

/// Expresses a symmetric polynomial in (x1, x2) through e1 = x1 + x2, e2 = x1 x2;
/// the result maps (i, j) -> coefficient of e1^i e2^j.
inline std::map<std::pair<int, int>, Rational> symmetric_reduce(TruncPoly p) {
    std::map<std::pair<int, int>, Rational> out;
    const RingCtx& ctx = p.ctx();
    TruncPoly e1 = TruncPoly::linear(ctx, {1, 1}), e2 = TruncPoly::monomial(ctx, {1, 1});
    while (!p.is_zero()) {
        auto lead = std::prev(p.terms().end());
        auto [a, b] = std::pair{lead->first[0], lead->first[1]};
        if (a < b) throw std::domain_error("symmetric_reduce: polynomial is not symmetric");
        Rational c = lead->second;
        out[{a - b, b}] += c;
        p -= e1.pow(a - b) * e2.pow(b) * c;
    }
    return out;
}

/// Elementary symmetric functions e_0..e_{m+1} of the roots j x1 + (m-j) x2 of
/// Sym^m S^dual, each rewritten as a class on G.
inline std::vector<GrassElem> sym_power_elementary(const GrassCtx& G, int m) {
    std::vector<GrassElem> out;
    if (m < 0) {
        out.push_back(GrassElem::unit(G));
        return out;
    }
    RingCtx ctx = make_ring(2, {m + 1, m + 1});
    std::vector<TruncPoly> e(m + 2, TruncPoly(ctx));
    e[0] = TruncPoly::constant(ctx, 1);
    for (int j = 0; j <= m; ++j) {
        TruncPoly root = TruncPoly::linear(ctx, {j, m - j});
        for (int k = j + 1; k >= 1; --k) e[k] += e[k - 1] * root;
    }
    const GrassElem s1 = GrassElem::special(G, 1), s2 = GrassElem::schubert(G, 1, 1);
    for (const auto& ek : e) {
        GrassElem g(G);
        for (const auto& [ij, c] : symmetric_reduce(ek)) g += s1.pow(ij.first) * s2.pow(ij.second) * c;
        out.push_back(g);
    }
    return out;
}

/// c_top(Sym^m S^dual tensor L) with c_1(L) = twist; rank m+1, zero bundle for m < 0.
inline TowerElem twisted_sym_top_chern(const TowerCtx& tctx, int m, const TowerElem& twist) {
    if (m < 0) return TowerElem::constant(tctx, 1);
    std::vector<GrassElem> e = sym_power_elementary(tctx.grass(), m);
    TowerElem out(tctx), tpow = TowerElem::constant(tctx, 1);
    for (int k = 0; k <= m + 1; ++k) {
        out += tpow.times_grass(e[m + 1 - k]);
        tpow = tpow * twist;
    }
    return out;
}

inline int f_bundle_rank(const std::vector<int>& a, const BundleSpec& spec) {
    int K = std::accumulate(a.begin(), a.end(), 0), rank = 0;
    for (int d : spec.degrees()) rank += std::max(0, d - K + 1);
    return rank;
}

/// c_top of F(a) = sum_i Sym^{d_i - K} S^dual tensor O(K s1 - sum_j a_j xi_j), K = sum a_j.
inline TowerElem f_bundle_top_chern(const TowerCtx& tctx, const std::vector<int>& a, const BundleSpec& spec,
                                    int expected_rank) {
    if (!spec.is_split()) throw std::invalid_argument("f_bundle_top_chern supports split bundles only");
    if (static_cast<int>(a.size()) != tctx.r()) throw std::invalid_argument("f_bundle_top_chern: tuple length");
    for (int x : a)
        if (x < 1) throw std::domain_error("f_bundle_top_chern: vanishing orders must be >= 1");
    int rank = f_bundle_rank(a, spec);
    if (rank != expected_rank)
        throw std::domain_error("F(a) has rank " + std::to_string(rank) + ", expected " + std::to_string(expected_rank));
    const int K = std::accumulate(a.begin(), a.end(), 0);
    TowerElem twist = TowerElem::from_grass(tctx, GrassElem::special(tctx.grass(), 1) * Rational(K));
    for (int j = 0; j < tctx.r(); ++j) twist -= TowerElem::xi(tctx, j) * Rational(a[j]);
    TowerElem out = TowerElem::constant(tctx, 1);
    for (int d : spec.degrees()) out = out * twisted_sym_top_chern(tctx, d - K, twist);
    return out;
}

// ---------------------------------------------------------------------------
// Pushforward W_r -> (P^{N-1})^r.

/// Caches the classes pi_*(xi^c) = B_c on G, from xi^c = A_c + B_c xi.
class PushforwardTable {
 public:
    explicit PushforwardTable(GrassCtx G) : G_(std::move(G)) {
        GrassElem A = GrassElem::unit(G_), B(G_);
        const GrassElem s1 = GrassElem::special(G_, 1), s2 = GrassElem::schubert(G_, 1, 1);
        for (int c = 0; c <= G_.N() + 1; ++c) {
            B_.push_back(B);
            GrassElem nextA = B * s2 * Rational(-1);
            GrassElem nextB = A + B * s1;
            A = nextA;
            B = nextB;
        }
    }
    const GrassElem& B(int c) const { return B_.at(c); }
    const GrassCtx& grass() const { return G_; }

 private:
    GrassCtx G_;
    std::vector<GrassElem> B_;
};

/// Coefficient of prod H_i^{m_i} is the integral of elem * prod xi_i^{N-1-m_i}.
inline TruncPoly pushforward_to_products(const TowerElem& elem, const RingCtx& target) {
    const TowerCtx& tctx = elem.ctx();
    const GrassCtx& G = tctx.grass();
    const int r = tctx.r(), N = G.N();
    if (tctx.has_fiber()) throw std::invalid_argument("push the fiber variable down first");
    if (target.num_vars() != r) throw std::invalid_argument("target ring has the wrong number of factors");
    for (int c : target.caps())
        if (c != N - 1) throw std::invalid_argument("target caps must equal N-1");
    PushforwardTable table(G);
    std::map<std::vector<int>, GrassElem> cache;
    auto product_of = [&](std::vector<int> idx) -> const GrassElem& {
        std::sort(idx.begin(), idx.end());
        auto it = cache.find(idx);
        if (it != cache.end()) return it->second;
        GrassElem acc = GrassElem::unit(G);
        for (int c : idx) acc = acc * table.B(c);
        return cache.emplace(idx, acc).first->second;
    };

    TruncPoly out(target);
    Exponents m(r, 0);
    std::function<void(int)> rec = [&](int i) {
        if (i == r) {
            Rational coeff = 0;
            for (const auto& [mask, g] : elem.terms()) {
                std::vector<int> idx(r);
                int codim = 0;
                bool viable = true;
                for (int j = 0; j < r; ++j) {
                    idx[j] = N - 1 - m[j] + ((mask >> j) & 1);
                    viable = viable && idx[j] >= 1;
                    codim += idx[j] - 1;
                }
                if (viable && codim <= G.dim()) coeff += (g * product_of(idx)).integrate();
            }
            out.add_term(m, coeff);
            return;
        }
        for (int e = 0; e <= N - 1; ++e) {
            m[i] = e;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

/// P_a := -(i_* c_top F(a)) on (P^{n+rk})^r, rk = rank E. For a Calabi-Yau
/// complete intersection pass a = (1,1,1); for a hypersurface of degree d pass
/// E = O(d) and any a with sum a = d + 1 - n.
inline TruncPoly compute_p(int n, const BundleSpec& spec, const std::vector<int>& a) {
    if (!spec.is_split()) throw std::invalid_argument("compute_p supports split bundles only");
    const int r = static_cast<int>(a.size());
    const int N = n + spec.rank() + 1;
    GrassCtx G(N);
    TowerCtx tctx(G, r);
    TowerElem top = f_bundle_top_chern(tctx, a, spec, n - spec.rank() + 1);
    return -pushforward_to_products(top, make_ring(r, std::vector<int>(r, N - 1)));
}

/// Restriction of a class on (P^{N-1})^r to X^r: exponents above n vanish.
inline TruncPoly restrict_to_x(const TruncPoly& p, int n) {
    return p.recapped(make_ring(p.ctx().num_vars(), std::vector<int>(p.ctx().num_vars(), n)));
}

struct FanoData {
    int expected_dim = 0;
    std::optional<Rational> degree;  ///< set when expected_dim == 0
};

/// Lines on the zero locus of E = sum O(d_i) in P^{N-1}.
inline FanoData fano(const BundleSpec& spec, int N) {
    FanoData out;
    int rank = 0;
    for (int d : spec.degrees()) rank += d + 1;
    out.expected_dim = 2 * (N - 2) - rank;
    if (out.expected_dim != 0) return out;
    GrassCtx G(N);
    GrassElem c = GrassElem::unit(G);
    for (int d : spec.degrees()) c = c * sym_power_elementary(G, d).back();
    out.degree = c.integrate();
    return out;
}

}  // namespace chowcalc
