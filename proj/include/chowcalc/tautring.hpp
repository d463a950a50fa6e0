/**
 * @file tautring.hpp
 * @brief Formal ring of diagonal classes on X^r.
 *
 * A diagonal monomial is a set partition of the r slots together with one
 * hyperplane exponent per block: it stands for the pushforward of
 * h^{e_1} x ... x h^{e_s} along the diagonal map X^s -> X^r of the partition.
 * Singleton blocks are ordinary monomials h_i^{e}.
 *
 * X has dimension n, degree deg (= integral of h^n) and codimension c in its
 * ambient projective space. The diagonal rule
 *
 *   deg * Delta_*(h^e) = sum_{j=c}^{n} h_1^{e+j-c} h_2^{n+c-j},   e >= c,
 *
 * rewrites any block with exponent >= c into smaller blocks. In Expand mode
 * this runs to a normal form in which every block of size >= 2 carries an
 * exponent below c; Keep mode leaves blocks alone.
 */
#pragma once

#include "partitions.hpp"

#include <optional>
#include <set>

namespace chowcalc {

enum class DiagonalRule { Expand, Keep };

struct TautCtx {
    int n = 1;
    Rational deg = 1;  ///< integral over X of h^n
    int codim = 1;     ///< c in the diagonal rule
    DiagonalRule rule = DiagonalRule::Expand;

    TautCtx() = default;
    TautCtx(int n_, Rational deg_, int codim_ = 1, DiagonalRule rule_ = DiagonalRule::Expand)
        : n(n_), deg(std::move(deg_)), codim(codim_), rule(rule_) {
        if (n < 1 || deg <= 0 || codim < 1) throw std::invalid_argument("TautCtx needs n >= 1, deg > 0, codim >= 1");
    }

    /// Integral over X of h^e.
    Rational point_degree(int e) const { return e == n ? deg : Rational(0); }

    friend bool operator==(const TautCtx&, const TautCtx&) = default;
};

struct DiagMonomial {
    std::vector<int> rgs;   ///< canonical partition of the slots
    std::vector<int> exps;  ///< one exponent per block

    int r() const { return static_cast<int>(rgs.size()); }
    int blocks() const { return static_cast<int>(exps.size()); }
    int block_size(int b) const { return static_cast<int>(std::count(rgs.begin(), rgs.end(), b)); }
    bool is_pure() const { return blocks() == r(); }

    /// Builds a canonical monomial from arbitrary labels and per-label exponents.
    static DiagMonomial make(const std::vector<int>& labels, const std::map<int, int>& exp_of_label) {
        DiagMonomial m;
        std::map<int, int> relabel;
        for (int x : labels) {
            auto [it, inserted] = relabel.try_emplace(x, static_cast<int>(relabel.size()));
            m.rgs.push_back(it->second);
            if (inserted) m.exps.push_back(exp_of_label.at(x));
        }
        return m;
    }

    std::string str() const {
        std::string s;
        for (int b = 0; b < blocks(); ++b) {
            std::string slots;
            for (int i = 0; i < r(); ++i)
                if (rgs[i] == b) slots += (slots.empty() ? "" : ",") + std::to_string(i + 1);
            bool multi = block_size(b) > 1;
            if (!multi && exps[b] == 0) continue;
            if (!s.empty()) s += "*";
            if (multi) s += "diag{" + slots + "}";
            if (exps[b] > 0) {
                if (multi) s += "*";
                s += "h" + (multi ? "{" + slots + "}" : slots);
                if (exps[b] > 1) s += "^" + std::to_string(exps[b]);
            }
        }
        return s.empty() ? "1" : s;
    }

    friend auto operator<=>(const DiagMonomial&, const DiagMonomial&) = default;
};

/// Rational combination of diagonal monomials on X^r.
class DiagClass {
 public:
    DiagClass() : DiagClass(TautCtx(), 1) {}
    DiagClass(TautCtx ctx, int r) : ctx_(std::move(ctx)), r_(r) {
        if (r < 1) throw std::invalid_argument("DiagClass needs r >= 1");
    }

    const TautCtx& ctx() const { return ctx_; }
    int r() const { return r_; }
    const std::map<DiagMonomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rational coefficient(const DiagMonomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Adds c times m, rewriting m to normal form first.
    void add(const DiagMonomial& m, const Rational& c) {
        if (c == 0) return;
        if (m.r() != r_) throw std::invalid_argument("monomial has the wrong number of slots");
        for (int e : m.exps)
            if (e < 0 || e > ctx_.n) return;
        if (ctx_.rule == DiagonalRule::Expand) {
            for (int b = 0; b < m.blocks(); ++b)
                if (m.block_size(b) > 1 && m.exps[b] >= ctx_.codim) {
                    expand_block(m, b, c);
                    return;
                }
        }
        add_raw(m, c);
    }

    DiagClass& operator+=(const DiagClass& o) {
        require_same(o);
        for (const auto& [m, c] : o.terms_) add_raw(m, c);
        return *this;
    }
    DiagClass& operator-=(const DiagClass& o) {
        require_same(o);
        for (const auto& [m, c] : o.terms_) add_raw(m, -c);
        return *this;
    }
    DiagClass& operator*=(const Rational& s) {
        if (s == 0) terms_.clear();
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }
    friend DiagClass operator+(DiagClass a, const DiagClass& b) { return a += b; }
    friend DiagClass operator-(DiagClass a, const DiagClass& b) { return a -= b; }
    friend DiagClass operator-(DiagClass a) { return a *= Rational(-1); }
    friend DiagClass operator*(DiagClass a, const Rational& s) { return a *= s; }
    friend DiagClass operator*(const Rational& s, DiagClass a) { return a *= s; }
    friend bool operator==(const DiagClass& a, const DiagClass& b) {
        return a.ctx_ == b.ctx_ && a.r_ == b.r_ && a.terms_ == b.terms_;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [m, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += to_string(c) + "*" + m.str();
        }
        return s;
    }

 private:
    void require_same(const DiagClass& o) const {
        if (!(ctx_ == o.ctx_) || r_ != o.r_) throw std::invalid_argument("diagonal classes live on different X^r");
    }

    void add_raw(const DiagMonomial& m, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    // Splits the largest slot x off block b.
    void expand_block(const DiagMonomial& m, int b, const Rational& c) {
        int x = -1;
        for (int i = 0; i < m.r(); ++i)
            if (m.rgs[i] == b) x = i;
        const int fresh = m.blocks();
        std::vector<int> labels = m.rgs;
        labels[x] = fresh;
        const Rational share = c / ctx_.deg;
        for (int j = ctx_.codim; j <= ctx_.n; ++j) {
            std::map<int, int> exps;
            for (int k = 0; k < m.blocks(); ++k) exps[k] = m.exps[k];
            exps[b] = m.exps[b] + j - ctx_.codim;
            exps[fresh] = ctx_.n + ctx_.codim - j;
            if (exps[b] > ctx_.n) continue;
            add(DiagMonomial::make(labels, exps), share);
        }
    }

    TautCtx ctx_;
    int r_;
    std::map<DiagMonomial, Rational> terms_;
};

// ---------------------------------------------------------------------------
// Constructors.

inline DiagMonomial pure_monomial(const std::vector<int>& exps) {
    DiagMonomial m;
    for (std::size_t i = 0; i < exps.size(); ++i) m.rgs.push_back(static_cast<int>(i));
    m.exps = exps;
    return m;
}

/// Polynomial in h_1..h_r (caps n) as a diagonal class.
inline DiagClass from_poly(const TautCtx& ctx, const TruncPoly& p) {
    DiagClass out(ctx, p.ctx().num_vars());
    for (const auto& [e, c] : p.terms()) out.add(pure_monomial(e), c);
    return out;
}

/// The small diagonal of X^r.
inline DiagClass delta(const TautCtx& ctx, int r) {
    DiagClass out(ctx, r);
    out.add(DiagMonomial{std::vector<int>(r, 0), {0}}, 1);
    return out;
}

/// D_I = Delta_{I^c} * prod_{i in I} pr_i^* (h^n / deg); I holds 0-based slots.
inline DiagClass d_class(const TautCtx& ctx, int r, const std::set<int>& I) {
    if (static_cast<int>(I.size()) >= r) throw std::invalid_argument("D_I needs a proper subset I");
    std::vector<int> labels(r);
    std::map<int, int> exps{{-1, 0}};
    for (int i = 0; i < r; ++i) {
        if (I.count(i)) {
            labels[i] = i;
            exps[i] = ctx.n;
        } else {
            labels[i] = -1;
        }
    }
    DiagClass out(ctx, r);
    out.add(DiagMonomial::make(labels, exps), Rational(1) / rational_pow(ctx.deg, static_cast<int>(I.size())));
    return out;
}

/// Multiplication by h_i^m.
inline DiagClass mul_h(const DiagClass& x, int i, int m) {
    DiagClass out(x.ctx(), x.r());
    for (const auto& [mono, c] : x.terms()) {
        DiagMonomial bumped = mono;
        bumped.exps[mono.rgs.at(i)] += m;
        out.add(bumped, c);
    }
    return out;
}

/// Pushforward along the diagonal map X^s -> X^r of alpha.
inline DiagClass push_diag(const PartitionMap& alpha, const DiagClass& x) {
    if (alpha.s() != x.r()) throw std::invalid_argument("push_diag: partition target differs from class arity");
    DiagClass out(x.ctx(), alpha.r());
    std::vector<int> labels(alpha.r());
    for (const auto& [mono, c] : x.terms()) {
        std::map<int, int> exps;
        for (int b = 0; b < mono.blocks(); ++b) exps[b] = mono.exps[b];
        for (int i = 0; i < alpha.r(); ++i) labels[i] = mono.rgs[alpha[i]];
        out.add(DiagMonomial::make(labels, exps), c);
    }
    return out;
}

/// Pushforward to the factors listed in keep (0-based, in the new order).
inline DiagClass push_proj(const DiagClass& x, const std::vector<int>& keep) {
    DiagClass out(x.ctx(), std::max<int>(1, static_cast<int>(keep.size())));
    if (keep.empty()) throw std::invalid_argument("push_proj: use integrate for the full pushforward");
    for (int k : keep)
        if (k < 0 || k >= x.r()) throw std::out_of_range("push_proj: slot out of range");
    for (const auto& [mono, c] : x.terms()) {
        std::vector<bool> kept(mono.blocks(), false);
        std::vector<int> labels;
        for (int k : keep) {
            labels.push_back(mono.rgs[k]);
            kept[mono.rgs[k]] = true;
        }
        Rational coeff = c;
        std::map<int, int> exps;
        for (int b = 0; b < mono.blocks(); ++b) {
            if (kept[b]) exps[b] = mono.exps[b];
            else coeff *= x.ctx().point_degree(mono.exps[b]);
        }
        if (coeff != 0) out.add(DiagMonomial::make(labels, exps), coeff);
    }
    return out;
}

/// Degree of a 0-cycle class on X^r.
inline Rational integrate(const DiagClass& x) {
    Rational total = 0;
    for (const auto& [mono, c] : x.terms()) {
        Rational t = c;
        for (int e : mono.exps) t *= x.ctx().point_degree(e);
        total += t;
    }
    return total;
}

/// Moves slot i to slot perm[i].
inline DiagClass permute_slots(const DiagClass& x, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != x.r()) throw std::invalid_argument("permute_slots: bad permutation");
    DiagClass out(x.ctx(), x.r());
    for (const auto& [mono, c] : x.terms()) {
        std::vector<int> labels(x.r());
        for (int i = 0; i < x.r(); ++i) labels[perm[i]] = mono.rgs[i];
        std::map<int, int> exps;
        for (int b = 0; b < mono.blocks(); ++b) exps[b] = mono.exps[b];
        out.add(DiagMonomial::make(labels, exps), c);
    }
    return out;
}

/// Pushforward of Q(h_1, h_2) along j: X^2 -> X^r given by a labelling of the
/// r slots with 0 (first point) and 1 (second point).
inline DiagClass push_pair(const TautCtx& ctx, const std::vector<int>& which, const TruncPoly& q) {
    DiagClass out(ctx, static_cast<int>(which.size()));
    for (const auto& [e, c] : q.terms()) out.add(DiagMonomial::make(which, {{0, e[0]}, {1, e[1]}}), c);
    return out;
}

/// Starting class prod_{i=0}^{n-1} ((b+i) h_1 + (n-1-i+a) h_2) on X^2, a + b = d + 1 - n.
inline TruncPoly gamma_start_poly(int n, int a, int b) {
    RingCtx ctx = make_ring(2, {n, n});
    std::vector<std::vector<Rational>> forms;
    for (int i = 0; i < n; ++i) forms.push_back({b + i, n - 1 - i + a});
    return linear_product(ctx, forms);
}

inline DiagClass gamma_start(const TautCtx& ctx, int d, int a, int b) {
    if (a < 1 || b < 1 || a + b != d + 1 - ctx.n)
        throw std::domain_error("gamma_start needs a, b >= 1 and a + b = d + 1 - n");
    return from_poly(ctx, gamma_start_poly(ctx.n, a, b));
}

// ---------------------------------------------------------------------------
// Classification into delta, D_I and pure polynomial parts.

struct Classification {
    int r = 0;
    Rational delta = 0;
    /// b_parts[j][I] = coefficient of D_I with |I| = j (I as 0-based slots).
    std::map<int, std::map<std::vector<int>, Rational>> b_parts;
    /// Pure monomials in which every h_i appears.
    std::optional<TruncPoly> poly_part;
    std::vector<std::pair<DiagMonomial, Rational>> nonstandard;

    Rational b(const std::vector<int>& I) const {
        auto it = b_parts.find(static_cast<int>(I.size()));
        if (it == b_parts.end()) return 0;
        auto jt = it->second.find(I);
        return jt == it->second.end() ? Rational(0) : jt->second;
    }
};

inline Classification classify(const DiagClass& x) {
    const TautCtx& ctx = x.ctx();
    const int r = x.r(), n = ctx.n;
    Classification out;
    out.r = r;
    TruncPoly poly(make_ring(r, std::vector<int>(r, n)));
    for (const auto& [mono, c] : x.terms()) {
        if (mono.blocks() == 1 && r > 1) {
            if (mono.exps[0] == 0) out.delta += c;
            else out.nonstandard.push_back({mono, c});
            continue;
        }
        if (mono.is_pure()) {
            int zeros = static_cast<int>(std::count(mono.exps.begin(), mono.exps.end(), 0));
            bool b_last = zeros == 1 && std::count(mono.exps.begin(), mono.exps.end(), n) == r - 1;
            if (zeros == 0) {
                poly.add_term(mono.exps, c);
            } else if (b_last) {
                std::vector<int> I;
                for (int i = 0; i < r; ++i)
                    if (mono.exps[i] == n) I.push_back(i);
                out.b_parts[r - 1][I] += c * rational_pow(ctx.deg, r - 1);
            } else {
                out.nonstandard.push_back({mono, c});
            }
            continue;
        }
        // One multi-block with exponent 0, every singleton at exponent n.
        int multi = -1;
        bool ok = true;
        for (int b = 0; b < mono.blocks(); ++b) {
            if (mono.block_size(b) > 1) {
                ok = ok && multi < 0 && mono.exps[b] == 0;
                multi = b;
            } else {
                ok = ok && mono.exps[b] == n;
            }
        }
        if (!ok) {
            out.nonstandard.push_back({mono, c});
            continue;
        }
        std::vector<int> I;
        for (int i = 0; i < r; ++i)
            if (mono.rgs[i] != multi) I.push_back(i);
        out.b_parts[static_cast<int>(I.size())][I] += c * rational_pow(ctx.deg, static_cast<int>(I.size()));
    }
    for (auto it = out.b_parts.begin(); it != out.b_parts.end();) {
        for (auto jt = it->second.begin(); jt != it->second.end();)
            jt = jt->second == 0 ? it->second.erase(jt) : std::next(jt);
        it = it->second.empty() ? out.b_parts.erase(it) : std::next(it);
    }
    out.poly_part = poly;
    return out;
}

/// Inverse of classify.
inline DiagClass reassemble(const TautCtx& ctx, const Classification& cl) {
    DiagClass out(ctx, cl.r);
    if (cl.delta != 0) out += delta(ctx, cl.r) * cl.delta;
    for (const auto& [j, parts] : cl.b_parts)
        for (const auto& [I, c] : parts) out += d_class(ctx, cl.r, std::set<int>(I.begin(), I.end())) * c;
    if (cl.poly_part) out += from_poly(ctx, *cl.poly_part);
    for (const auto& [m, c] : cl.nonstandard) out.add(m, c);
    return out;
}

// ---------------------------------------------------------------------------
// Symbolic correspondence action on cycles z_0..z_{m-1} of X.

/// Formal product z_{i_1} * ... * z_{i_s} * h^h on X.
struct CycleMono {
    std::vector<int> z;  ///< sorted cycle indices
    int h = 0;

    friend auto operator<=>(const CycleMono&, const CycleMono&) = default;
};

struct SymCtx {
    int n = 1;
    Rational deg_x = 1;
    std::vector<int> codims;
    std::vector<std::string> names;

    int codim(const CycleMono& m) const {
        int c = m.h;
        for (int i : m.z) c += codims.at(i);
        return c;
    }
};

/// Rational combination of terms deg(m_1)...deg(m_s) * cycle, where deg(m) is
/// the degree of the 0-cycle m and cycle is a formal class on X.
class SymbolicExpr {
 public:
    using Key = std::pair<std::vector<CycleMono>, CycleMono>;

    explicit SymbolicExpr(SymCtx ctx) : ctx_(std::move(ctx)) {
        for (int c : ctx_.codims)
            if (c < 1 || c > ctx_.n) throw std::invalid_argument("cycle codimensions must lie in 1..n");
        while (ctx_.names.size() < ctx_.codims.size()) ctx_.names.push_back("z" + std::to_string(ctx_.names.size() + 1));
    }

    const SymCtx& ctx() const { return ctx_; }
    const std::map<Key, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Adds c * prod deg(degs) * cycle; degrees of non-0-cycles and cycles past
    /// codimension n vanish, deg(h^n) = deg X.
    void add(std::vector<CycleMono> degs, CycleMono cycle, Rational c) {
        if (c == 0 || ctx_.codim(cycle) > ctx_.n) return;
        std::vector<CycleMono> kept;
        for (auto& m : degs) {
            std::sort(m.z.begin(), m.z.end());
            if (ctx_.codim(m) != ctx_.n) return;
            if (m.z.empty()) c *= ctx_.deg_x;
            else kept.push_back(std::move(m));
        }
        std::sort(kept.begin(), kept.end());
        std::sort(cycle.z.begin(), cycle.z.end());
        Key key{std::move(kept), std::move(cycle)};
        auto [it, inserted] = terms_.try_emplace(std::move(key), c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    SymbolicExpr& operator+=(const SymbolicExpr& o) {
        for (const auto& [k, c] : o.terms_) add(k.first, k.second, c);
        return *this;
    }
    SymbolicExpr& operator*=(const Rational& s) {
        if (s == 0) terms_.clear();
        for (auto& [k, c] : terms_) c *= s;
        return *this;
    }
    friend SymbolicExpr operator+(SymbolicExpr a, const SymbolicExpr& b) { return a += b; }
    friend SymbolicExpr operator-(SymbolicExpr a, const SymbolicExpr& b) { return a += b * Rational(-1); }
    friend SymbolicExpr operator*(SymbolicExpr a, const Rational& s) { return a *= s; }
    friend SymbolicExpr operator*(const Rational& s, SymbolicExpr a) { return a *= s; }
    friend bool operator==(const SymbolicExpr& a, const SymbolicExpr& b) { return a.terms_ == b.terms_; }

    /// Replaces z_j by h^{codim z_j}.
    SymbolicExpr substitute_h(int j) const {
        auto sub = [&](CycleMono m) {
            auto it = std::find(m.z.begin(), m.z.end(), j);
            if (it != m.z.end()) {
                m.z.erase(it);
                m.h += ctx_.codims.at(j);
            }
            return m;
        };
        SymbolicExpr out(ctx_);
        for (const auto& [k, c] : terms_) {
            std::vector<CycleMono> degs;
            for (const auto& m : k.first) degs.push_back(sub(m));
            out.add(degs, sub(k.second), c);
        }
        return out;
    }

    /// Rewrites every cycle z*h^e with z nonempty and e >= 1 as
    /// deg(z*h^e)/deg X * h^n.
    SymbolicExpr reduce_hyperplane() const {
        SymbolicExpr out(ctx_);
        for (const auto& [k, c] : terms_) {
            const CycleMono& cyc = k.second;
            if (cyc.z.empty() || cyc.h == 0 || ctx_.codim(cyc) != ctx_.n) {
                out.add(k.first, cyc, c);
                continue;
            }
            std::vector<CycleMono> degs = k.first;
            degs.push_back(cyc);
            out.add(degs, CycleMono{{}, ctx_.n}, c / ctx_.deg_x);
        }
        return out;
    }

    /// Coefficient of one term, with degs given in any order.
    Rational term(std::vector<CycleMono> degs, const CycleMono& cycle) const {
        std::sort(degs.begin(), degs.end());
        auto it = terms_.find(Key{degs, cycle});
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Distinct cycle symbols appearing.
    std::set<CycleMono> cycles() const {
        std::set<CycleMono> out;
        for (const auto& [k, c] : terms_) out.insert(k.second);
        return out;
    }

    /// Sum of the terms whose cycle is the given one, as a scalar expression.
    SymbolicExpr coefficient_of(const CycleMono& cycle) const {
        SymbolicExpr out(ctx_);
        for (const auto& [k, c] : terms_)
            if (k.second == cycle) out.add(k.first, CycleMono{}, c);
        return out;
    }

    std::string mono_str(const CycleMono& m) const {
        std::string s;
        for (int i : m.z) s += (s.empty() ? "" : "*") + ctx_.names.at(i);
        if (m.h > 0) s += (s.empty() ? "h" : "*h") + (m.h > 1 ? "^" + std::to_string(m.h) : std::string());
        return s.empty() ? "1" : s;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [k, c] = *it;
            std::string term = to_string(c);
            for (const auto& m : k.first) term += "*deg(" + mono_str(m) + ")";
            if (!(k.second == CycleMono{})) term += "*" + mono_str(k.second);
            s += (s.empty() ? "" : " + ") + term;
        }
        return s;
    }

 private:
    SymCtx ctx_;
    std::map<Key, Rational> terms_;
};

/// Action of x on X^r, read as a correspondence from X^{r-1} to the last
/// factor, on z_0 x ... x z_{r-2}. Opaque summands such as Gamma are not part
/// of x; their action on products of positive-codimension cycles is zero.
inline SymbolicExpr apply_corr(const DiagClass& x, const SymCtx& sym) {
    const int m = x.r() - 1;
    if (static_cast<int>(sym.codims.size()) != m) throw std::invalid_argument("apply_corr: need r-1 cycles");
    if (sym.n != x.ctx().n || sym.deg_x != x.ctx().deg) throw std::invalid_argument("apply_corr: context mismatch");
    int total = 0;
    for (int c : sym.codims) total += c;
    if (total != sym.n) throw std::invalid_argument("apply_corr: cycle codimensions must sum to n");
    SymbolicExpr out(sym);
    for (const auto& [mono, c] : x.terms()) {
        std::vector<CycleMono> parts(mono.blocks());
        for (int b = 0; b < mono.blocks(); ++b) parts[b].h = mono.exps[b];
        for (int i = 0; i < m; ++i) parts[mono.rgs[i]].z.push_back(i);
        const int target = mono.rgs[m];
        std::vector<CycleMono> degs;
        for (int b = 0; b < mono.blocks(); ++b)
            if (b != target) degs.push_back(parts[b]);
        out.add(degs, parts[target], c);
    }
    return out;
}

}  // namespace chowcalc
