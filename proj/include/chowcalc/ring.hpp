/**
 * @file ring.hpp
 * @brief Exact rationals and truncated multivariate polynomial rings.
 *
 * A RingCtx models Q[H_1,...,H_r]/(H_i^{cap_i+1}), the rational Chow ring of
 * a product of projective spaces P^{cap_1} x ... x P^{cap_r}. Every other
 * Chow-ring model in chowcalc is built on top of TruncPoly.
 */
#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chowcalc {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

/// Serialized as "num/den", or "num" when the denominator is 1.
inline std::string to_string(const Rational& q) { return q.str(); }

inline bool is_integer(const Rational& q) {
    return boost::multiprecision::denominator(q) == 1;
}

inline Rational factorial(int m) {
    if (m < 0) throw std::domain_error("factorial of a negative number");
    Integer acc = 1;
    for (int i = 2; i <= m; ++i) acc *= i;
    return Rational(acc);
}

inline Rational binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    Integer acc = 1;
    for (int i = 1; i <= k; ++i) {
        acc *= n - k + i;
        acc /= i;
    }
    return Rational(acc);
}

inline Rational rational_pow(const Rational& base, int e) {
    Rational acc = 1;
    for (int i = 0; i < e; ++i) acc *= base;
    return acc;
}

using Exponents = std::vector<int>;

/// Immutable description of a truncated polynomial ring.
class RingCtx {
 public:
    RingCtx() = default;

    explicit RingCtx(std::vector<int> caps, std::vector<std::string> names = {}) {
        if (caps.empty()) throw std::invalid_argument("ring needs at least one variable");
        for (int c : caps)
            if (c < 0) throw std::invalid_argument("variable caps must be non-negative");
        if (names.empty())
            for (std::size_t i = 0; i < caps.size(); ++i) names.push_back("H" + std::to_string(i + 1));
        if (names.size() != caps.size()) throw std::invalid_argument("one name per variable");
        data_ = std::make_shared<const Data>(Data{std::move(caps), std::move(names)});
    }

    int num_vars() const { return static_cast<int>(data().caps.size()); }
    const std::vector<int>& caps() const { return data().caps; }
    int cap(int i) const { return data().caps.at(i); }
    const std::string& name(int i) const { return data().names.at(i); }
    bool valid() const { return static_cast<bool>(data_); }

    bool admits(const Exponents& e) const {
        for (int i = 0; i < num_vars(); ++i)
            if (e[i] < 0 || e[i] > cap(i)) return false;
        return true;
    }

    friend bool operator==(const RingCtx& a, const RingCtx& b) {
        if (a.data_ == b.data_) return true;
        if (!a.data_ || !b.data_) return false;
        return a.data_->caps == b.data_->caps && a.data_->names == b.data_->names;
    }
    friend bool operator!=(const RingCtx& a, const RingCtx& b) { return !(a == b); }

 private:
    struct Data {
        std::vector<int> caps;
        std::vector<std::string> names;
    };
    const Data& data() const {
        if (!data_) throw std::logic_error("use of an empty RingCtx");
        return *data_;
    }
    std::shared_ptr<const Data> data_;
};

inline RingCtx make_ring(int num_vars, std::vector<int> caps, std::vector<std::string> names = {}) {
    if (num_vars < 1) throw std::invalid_argument("make_ring: num_vars must be >= 1");
    if (static_cast<int>(caps.size()) != num_vars)
        throw std::invalid_argument("make_ring: caps length does not match num_vars");
    return RingCtx(std::move(caps), std::move(names));
}

/// Element of a truncated polynomial ring. Terms are kept canonical: no zero
/// coefficients and no exponent above its cap, so equality is map equality.
class TruncPoly {
 public:
    using Terms = std::map<Exponents, Rational>;

    explicit TruncPoly(RingCtx ctx) : ctx_(std::move(ctx)) {}

    static TruncPoly constant(const RingCtx& ctx, const Rational& c) {
        return monomial(ctx, Exponents(ctx.num_vars(), 0), c);
    }
    static TruncPoly variable(const RingCtx& ctx, int i, const Rational& c = 1) {
        Exponents e(ctx.num_vars(), 0);
        e.at(i) = 1;
        return monomial(ctx, e, c);
    }
    static TruncPoly monomial(const RingCtx& ctx, const Exponents& e, const Rational& c = 1) {
        if (static_cast<int>(e.size()) != ctx.num_vars())
            throw std::invalid_argument("monomial: exponent vector has wrong length");
        TruncPoly p(ctx);
        p.add_term(e, c);
        return p;
    }
    /// Linear form sum_i coeffs[i] * H_i.
    static TruncPoly linear(const RingCtx& ctx, const std::vector<Rational>& coeffs) {
        if (static_cast<int>(coeffs.size()) != ctx.num_vars())
            throw std::invalid_argument("linear form has wrong length");
        TruncPoly p(ctx);
        for (int i = 0; i < ctx.num_vars(); ++i) p += variable(ctx, i, coeffs[i]);
        return p;
    }

    const RingCtx& ctx() const { return ctx_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rational coefficient(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Adds c * H^e; over-cap monomials are silently zero.
    void add_term(const Exponents& e, const Rational& c) {
        if (c == 0 || !ctx_.admits(e)) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    int total_degree() const {
        int deg = -1;
        for (const auto& [e, c] : terms_) deg = std::max(deg, std::accumulate(e.begin(), e.end(), 0));
        return deg;
    }

    bool is_homogeneous() const {
        int deg = -1;
        for (const auto& [e, c] : terms_) {
            int d = std::accumulate(e.begin(), e.end(), 0);
            if (deg >= 0 && d != deg) return false;
            deg = d;
        }
        return true;
    }

    bool has_integer_coefficients() const {
        return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return is_integer(t.second); });
    }

    TruncPoly& operator+=(const TruncPoly& o) {
        require_same(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    TruncPoly& operator-=(const TruncPoly& o) {
        require_same(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    TruncPoly& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }
    TruncPoly& operator*=(const TruncPoly& o) { return *this = *this * o; }

    friend TruncPoly operator+(TruncPoly a, const TruncPoly& b) { return a += b; }
    friend TruncPoly operator-(TruncPoly a, const TruncPoly& b) { return a -= b; }
    friend TruncPoly operator-(TruncPoly a) { return a *= Rational(-1); }
    friend TruncPoly operator*(TruncPoly a, const Rational& s) { return a *= s; }
    friend TruncPoly operator*(const Rational& s, TruncPoly a) { return a *= s; }

    friend TruncPoly operator*(const TruncPoly& a, const TruncPoly& b) {
        a.require_same(b);
        TruncPoly out(a.ctx_);
        const int nv = a.ctx_.num_vars();
        Exponents e(nv);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                bool keep = true;
                for (int i = 0; i < nv && keep; ++i) {
                    e[i] = ea[i] + eb[i];
                    keep = e[i] <= a.ctx_.cap(i);
                }
                if (keep) out.add_term(e, ca * cb);
            }
        }
        return out;
    }

    friend bool operator==(const TruncPoly& a, const TruncPoly& b) {
        return a.ctx_ == b.ctx_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const TruncPoly& a, const TruncPoly& b) { return !(a == b); }

    TruncPoly pow(int m) const {
        if (m < 0) throw std::invalid_argument("negative power");
        TruncPoly acc = constant(ctx_, 1), base = *this;
        while (m > 0) {
            if (m & 1) acc *= base;
            m >>= 1;
            if (m) base *= base;
        }
        return acc;
    }

    TruncPoly graded_part(int d) const {
        TruncPoly out(ctx_);
        for (const auto& [e, c] : terms_)
            if (std::accumulate(e.begin(), e.end(), 0) == d) out.terms_.emplace(e, c);
        return out;
    }

    /// Degree map: the coefficient of prod H_i^{cap_i}.
    Rational integrate() const { return coefficient(ctx_.caps()); }

    /// Same polynomial in a ring with the same number of variables but other
    /// caps; monomials that do not fit are dropped (restriction H^{cap+1} = 0).
    TruncPoly recapped(const RingCtx& target) const {
        if (target.num_vars() != ctx_.num_vars()) throw std::invalid_argument("recapped: variable count differs");
        TruncPoly out(target);
        for (const auto& [e, c] : terms_) out.add_term(e, c);
        return out;
    }

    /// Renames variable i to variable perm[i].
    TruncPoly permuted(const std::vector<int>& perm) const {
        if (static_cast<int>(perm.size()) != ctx_.num_vars()) throw std::invalid_argument("permuted: bad permutation");
        TruncPoly out(ctx_);
        Exponents f(perm.size());
        for (const auto& [e, c] : terms_) {
            for (std::size_t i = 0; i < perm.size(); ++i) f[perm[i]] = e[i];
            out.add_term(f, c);
        }
        return out;
    }

    /// Monomial key in the serialized form "H1^2*H3", "1" for the unit.
    std::string monomial_key(const Exponents& e) const {
        std::string s;
        for (int i = 0; i < ctx_.num_vars(); ++i) {
            if (e[i] == 0) continue;
            if (!s.empty()) s += '*';
            s += ctx_.name(i);
            if (e[i] > 1) s += '^' + std::to_string(e[i]);
        }
        return s.empty() ? "1" : s;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            Rational c = it->second;
            if (!first) os << (c < 0 ? " - " : " + ");
            else if (c < 0) os << '-';
            first = false;
            Rational a = abs(c);
            std::string key = monomial_key(it->first);
            if (key == "1") os << to_string(a);
            else if (a == 1) os << key;
            else os << to_string(a) << '*' << key;
        }
        return os.str();
    }

 private:
    void require_same(const TruncPoly& o) const {
        if (ctx_ != o.ctx_) throw std::invalid_argument("polynomials live in different ring contexts");
    }

    RingCtx ctx_;
    Terms terms_;
};

inline TruncPoly poly_mul(const TruncPoly& a, const TruncPoly& b) { return a * b; }

/// Truncated product of linear forms; each form lists one coefficient per variable.
inline TruncPoly linear_product(const RingCtx& ctx, const std::vector<std::vector<Rational>>& forms) {
    TruncPoly acc = TruncPoly::constant(ctx, 1);
    for (const auto& f : forms) acc *= TruncPoly::linear(ctx, f);
    return acc;
}

/// 1/(1-u) expanded through total degree `bound`.
inline TruncPoly geometric_inverse(const TruncPoly& u, int bound) {
    const Exponents zero(u.ctx().num_vars(), 0);
    if (u.coefficient(zero) != 0)
        throw std::domain_error("geometric_inverse: u must have zero constant term");
    TruncPoly acc = TruncPoly::constant(u.ctx(), 1), power = acc;
    for (int m = 1; m <= bound; ++m) {
        power *= u;
        acc += power;
    }
    TruncPoly out(u.ctx());
    for (int d = 0; d <= bound; ++d) out += acc.graded_part(d);
    return out;
}

inline TruncPoly graded_part(const TruncPoly& p, int d) { return p.graded_part(d); }
inline Rational integrate(const TruncPoly& p) { return p.integrate(); }

/// Ring homomorphism: variable i of p's ring goes to images[i].
inline TruncPoly substitute(const TruncPoly& p, const std::vector<TruncPoly>& images) {
    if (static_cast<int>(images.size()) != p.ctx().num_vars())
        throw std::invalid_argument("substitute: one image per variable");
    if (images.empty()) throw std::invalid_argument("substitute: empty image list");
    const RingCtx& target = images.front().ctx();
    std::vector<std::vector<TruncPoly>> powers(images.size());
    TruncPoly out(target);
    for (const auto& [e, c] : p.terms()) {
        TruncPoly term = TruncPoly::constant(target, c);
        for (std::size_t i = 0; i < images.size(); ++i) {
            auto& pw = powers[i];
            if (pw.empty()) pw.push_back(TruncPoly::constant(target, 1));
            while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(pw.back() * images[i]);
            if (e[i] > 0) term *= pw[e[i]];
        }
        out += term;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Power series in an auxiliary variable t with TruncPoly coefficients.

class TSeries {
 public:
    TSeries(RingCtx ctx, int order) : ctx_(std::move(ctx)) {
        if (order < 0) throw std::invalid_argument("TSeries order must be >= 0");
        coeffs_.assign(order + 1, TruncPoly(ctx_));
    }

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const RingCtx& ctx() const { return ctx_; }
    const TruncPoly& operator[](int m) const { return coeffs_.at(m); }
    TruncPoly& coeff(int m) { return coeffs_.at(m); }

    TSeries& operator+=(const TSeries& o) {
        require_same(o);
        for (int m = 0; m <= order(); ++m) coeffs_[m] += o.coeffs_[m];
        return *this;
    }
    TSeries& operator-=(const TSeries& o) {
        require_same(o);
        for (int m = 0; m <= order(); ++m) coeffs_[m] -= o.coeffs_[m];
        return *this;
    }
    TSeries& operator*=(const Rational& s) {
        for (auto& c : coeffs_) c *= s;
        return *this;
    }
    friend TSeries operator+(TSeries a, const TSeries& b) { return a += b; }
    friend TSeries operator-(TSeries a, const TSeries& b) { return a -= b; }
    friend TSeries operator*(TSeries a, const Rational& s) { return a *= s; }

    friend TSeries operator*(const TSeries& a, const TSeries& b) {
        a.require_same(b);
        TSeries out(a.ctx_, a.order());
        for (int i = 0; i <= a.order(); ++i) {
            if (a.coeffs_[i].is_zero()) continue;
            for (int j = 0; i + j <= a.order(); ++j)
                if (!b.coeffs_[j].is_zero()) out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return out;
    }

    friend bool operator==(const TSeries& a, const TSeries& b) {
        return a.ctx_ == b.ctx_ && a.coeffs_ == b.coeffs_;
    }

 private:
    void require_same(const TSeries& o) const {
        if (ctx_ != o.ctx_ || order() != o.order()) throw std::invalid_argument("incompatible TSeries");
    }

    RingCtx ctx_;
    std::vector<TruncPoly> coeffs_;
};

/// e^{l t} through t^order.
inline TSeries exp_linear(const TruncPoly& l, int order) {
    TSeries out(l.ctx(), order);
    TruncPoly power = TruncPoly::constant(l.ctx(), 1);
    for (int m = 0; m <= order; ++m) {
        out.coeff(m) = power * (Rational(1) / factorial(m));
        power *= l;
    }
    return out;
}

/// Bernoulli numbers with B_1 = -1/2, i.e. w/(e^w - 1) = sum B_m w^m / m!.
inline Rational bernoulli(int m) {
    if (m < 0) throw std::invalid_argument("bernoulli index must be >= 0");
    std::vector<Rational> b(m + 1);
    b[0] = 1;
    for (int k = 1; k <= m; ++k) {
        Rational s = 0;
        for (int j = 0; j < k; ++j) s += binomial(k + 1, j) * b[j];
        b[k] = -s / (k + 1);
    }
    return b[m];
}

/// (e^{a w} - 1)/(e^w - 1) through w^order, as a series in w whose
/// coefficients are polynomials in the abstract root a (single variable "a").
/// Computed as a * [(e^{aw}-1)/(aw)] * [w/(e^w-1)], never by dividing series.
inline TSeries ratio_series(int order) {
    RingCtx ctx = make_ring(1, {order + 1}, {"a"});
    TSeries left(ctx, order), right(ctx, order);
    for (int j = 0; j <= order; ++j) {
        left.coeff(j) = TruncPoly::monomial(ctx, {j + 1}, Rational(1) / factorial(j + 1));
        right.coeff(j) = TruncPoly::constant(ctx, bernoulli(j) / factorial(j));
    }
    return left * right;
}

}  // namespace chowcalc
