/**
 * @file partitions.hpp
 * @brief Set partitions of {1..r} as restricted-growth strings.
 *
 * A partition into s blocks is stored as its minimal labelling: rgs[i] is the
 * block of element i, blocks numbered in order of first appearance. The same
 * object is read as the diagonal map X^s -> X^r sending (y_1..y_s) to
 * (y_{rgs[0]}, ..., y_{rgs[r-1]}).
 */
#pragma once

#include "ring.hpp"

#include <functional>
#include <set>

namespace chowcalc {

class PartitionMap {
 public:
    PartitionMap() = default;

    /// Canonicalizes an arbitrary labelling.
    static PartitionMap from_labels(const std::vector<int>& labels) {
        if (labels.empty()) throw std::invalid_argument("partition of an empty set");
        std::map<int, int> relabel;
        PartitionMap p;
        for (int x : labels) {
            auto [it, inserted] = relabel.try_emplace(x, static_cast<int>(relabel.size()));
            p.rgs_.push_back(it->second);
        }
        p.s_ = static_cast<int>(relabel.size());
        return p;
    }

    /// Blocks given as lists of 1-based elements.
    static PartitionMap from_blocks(int r, const std::vector<std::vector<int>>& blocks) {
        std::vector<int> labels(r, -1);
        for (std::size_t b = 0; b < blocks.size(); ++b)
            for (int x : blocks[b]) {
                if (x < 1 || x > r || labels[x - 1] != -1) throw std::invalid_argument("blocks do not partition 1..r");
                labels[x - 1] = static_cast<int>(b);
            }
        for (int l : labels)
            if (l < 0) throw std::invalid_argument("blocks do not cover 1..r");
        return from_labels(labels);
    }

    static PartitionMap identity(int r) {
        std::vector<int> v(r);
        std::iota(v.begin(), v.end(), 0);
        return from_labels(v);
    }

    int r() const { return static_cast<int>(rgs_.size()); }
    int s() const { return s_; }
    const std::vector<int>& rgs() const { return rgs_; }
    int operator[](int i) const { return rgs_[i]; }

    /// Blocks as sorted lists of 0-based elements, ordered by minimum.
    std::vector<std::vector<int>> blocks() const {
        std::vector<std::vector<int>> out(s_);
        for (int i = 0; i < r(); ++i) out[rgs_[i]].push_back(i);
        return out;
    }

    std::string str() const {
        std::string out;
        for (const auto& b : blocks()) {
            out += out.empty() ? "{" : ";{";
            for (std::size_t i = 0; i < b.size(); ++i) out += (i ? "," : "") + std::to_string(b[i] + 1);
            out += "}";
        }
        return out;
    }

    friend auto operator<=>(const PartitionMap&, const PartitionMap&) = default;

 private:
    std::vector<int> rgs_;
    int s_ = 0;
};

/// All partitions of r elements into s blocks, lexicographic in the RGS.
inline std::vector<PartitionMap> enumerate(int r, int s) {
    if (s < 1 || s > r) throw std::invalid_argument("enumerate: need 1 <= s <= r");
    std::vector<PartitionMap> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int used) {
        int i = static_cast<int>(cur.size());
        if (i == r) {
            if (used == s) out.push_back(PartitionMap::from_labels(cur));
            return;
        }
        if (used + (r - i) < s) return;
        for (int v = 0; v <= std::min(used, s - 1); ++v) {
            cur.push_back(v);
            rec(std::max(used, v + 1));
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

/// a in N^r_s followed by b in N^s_t: element i goes to block b[a[i]].
inline PartitionMap compose(const PartitionMap& a, const PartitionMap& b) {
    if (a.s() != b.r()) throw std::invalid_argument("compose: inner sizes differ");
    std::vector<int> labels(a.r());
    for (int i = 0; i < a.r(); ++i) labels[i] = b[a[i]];
    return PartitionMap::from_labels(labels);
}

/// Block sums of a tuple indexed by 1..r.
template <class T>
std::vector<T> pull_tuple(const PartitionMap& a, const std::vector<T>& t) {
    if (static_cast<int>(t.size()) != a.r()) throw std::invalid_argument("pull_tuple: length differs from r");
    std::vector<T> out(a.s(), T(0));
    for (int i = 0; i < a.r(); ++i) out[a[i]] += t[i];
    return out;
}

/// 0-based indices whose block is a singleton.
inline std::set<int> isolated(const PartitionMap& a) {
    std::vector<int> size(a.s(), 0);
    for (int i = 0; i < a.r(); ++i) ++size[a[i]];
    std::set<int> out;
    for (int i = 0; i < a.r(); ++i)
        if (size[a[i]] == 1) out.insert(i);
    return out;
}

inline Integer stirling2(int m, int j) {
    if (m < 0 || j < 0) return 0;
    std::vector<std::vector<Integer>> S(m + 1, std::vector<Integer>(j + 1, 0));
    S[0][0] = 1;
    for (int x = 1; x <= m; ++x)
        for (int y = 1; y <= std::min(x, j); ++y) S[x][y] = S[x - 1][y - 1] + Integer(y) * S[x - 1][y];
    return S[m][j];
}

/// Number of surjections from an m-set onto a j-set.
inline Integer surjections(int m, int j) {
    Integer f = 1;
    for (int i = 2; i <= j; ++i) f *= i;
    return f * stirling2(m, j);
}

/// sum_{j=1}^m (-1)^j (j-1)! #N^m_j.
inline Rational identity_sum(int m) {
    if (m < 1) throw std::invalid_argument("identity_sum: m must be >= 1");
    Rational s = 0;
    for (int j = 1; j <= m; ++j) s += (j % 2 ? -1 : 1) * factorial(j - 1) * Rational(stirling2(m, j));
    return s;
}

/// Partitions in N^r_s keeping index 0 isolated, by direct filtering.
inline Integer count_with_isolated(int r, int s, int index = 0) {
    if (s < 2 || s >= r) throw std::invalid_argument("count_with_isolated: need 2 <= s < r");
    Integer count = 0;
    for (const auto& p : enumerate(r, s))
        if (isolated(p).count(index)) ++count;
    return count;
}

}  // namespace chowcalc
