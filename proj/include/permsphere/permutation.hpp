#pragma once

// Permutations of [n] in one-line notation (1-indexed values), the three
// metrics (Hamming, Kendall-tau, Cayley) with their distance statistics,
// the projection systems S_n -> S_{n-1}, and extension enumeration.

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace permsphere {

namespace detail {

// Fenwick tree over 1..n used for O(n log n) inversion counts and
// order-statistic selection in Lehmer decoding.
class Fenwick {
  public:
    explicit Fenwick(int n) : n_(n), tree_(static_cast<std::size_t>(n) + 1, 0) {}

    void add(int i, int delta) {
        for (; i <= n_; i += i & -i) tree_[static_cast<std::size_t>(i)] += delta;
    }

    int prefix_sum(int i) const {
        int s = 0;
        for (; i > 0; i -= i & -i) s += tree_[static_cast<std::size_t>(i)];
        return s;
    }

    // Smallest index i with prefix_sum(i) >= target (target >= 1).
    int select(int target) const {
        int pos = 0;
        int bit = 1;
        while ((bit << 1) <= n_) bit <<= 1;
        for (; bit > 0; bit >>= 1) {
            const int next = pos + bit;
            if (next <= n_ && tree_[static_cast<std::size_t>(next)] < target) {
                pos = next;
                target -= tree_[static_cast<std::size_t>(next)];
            }
        }
        return pos + 1;
    }

  private:
    int n_;
    std::vector<int> tree_;
};

}  // namespace detail

class Permutation {
  public:
    // word[i] is the value at position i+1; values are 1..n, each exactly once.
    explicit Permutation(std::vector<int> word) : word_(std::move(word)) {
        const int n = static_cast<int>(word_.size());
        if (n < 1) throw std::invalid_argument("Permutation: empty word");
        std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
        for (int v : word_) {
            if (v < 1 || v > n || seen[static_cast<std::size_t>(v)])
                throw std::invalid_argument("Permutation: word is not a bijection of [n]");
            seen[static_cast<std::size_t>(v)] = 1;
        }
    }

    static Permutation identity(int n) {
        std::vector<int> w(static_cast<std::size_t>(n));
        std::iota(w.begin(), w.end(), 1);
        return Permutation(std::move(w));
    }

    int size() const { return static_cast<int>(word_.size()); }

    // pi(j) for 1 <= j <= n.
    int operator()(int j) const { return word_[static_cast<std::size_t>(j - 1)]; }

    const std::vector<int>& word() const { return word_; }

    friend bool operator==(const Permutation& a, const Permutation& b) = default;
    friend std::strong_ordering operator<=>(const Permutation& a, const Permutation& b) = default;

  private:
    std::vector<int> word_;
};

enum class Metric { Hamming, KendallTau, Cayley };

inline const char* metric_name(Metric m) {
    switch (m) {
        case Metric::Hamming: return "hamming";
        case Metric::KendallTau: return "kendall";
        case Metric::Cayley: return "cayley";
    }
    return "?";
}

inline Metric parse_metric(const std::string& s) {
    if (s == "hamming") return Metric::Hamming;
    if (s == "kendall" || s == "kendall-tau" || s == "kendalltau") return Metric::KendallTau;
    if (s == "cayley") return Metric::Cayley;
    throw std::invalid_argument("unknown metric: " + s);
}

// Cycle notation in canonical form: every cycle starts at its smallest
// element and cycles are ordered by their smallest elements.
struct CycleForm {
    std::vector<std::vector<int>> cycles;
};

inline CycleForm cycle_form(const Permutation& p) {
    const int n = p.size();
    CycleForm cf;
    std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
    for (int start = 1; start <= n; ++start) {
        if (seen[static_cast<std::size_t>(start)]) continue;
        std::vector<int> cyc;
        int j = start;
        do {
            cyc.push_back(j);
            seen[static_cast<std::size_t>(j)] = 1;
            j = p(j);
        } while (j != start);
        cf.cycles.push_back(std::move(cyc));
    }
    return cf;
}

inline Permutation from_cycle_form(const CycleForm& cf) {
    int n = 0;
    for (const auto& c : cf.cycles) n += static_cast<int>(c.size());
    std::vector<int> w(static_cast<std::size_t>(n), 0);
    for (const auto& c : cf.cycles) {
        if (c.empty()) throw std::invalid_argument("from_cycle_form: empty cycle");
        for (std::size_t i = 0; i < c.size(); ++i) {
            const int a = c[i];
            const int b = c[(i + 1) % c.size()];
            if (a < 1 || a > n) throw std::invalid_argument("from_cycle_form: element out of range");
            if (w[static_cast<std::size_t>(a - 1)] != 0)
                throw std::invalid_argument("from_cycle_form: repeated element");
            w[static_cast<std::size_t>(a - 1)] = b;
        }
    }
    return Permutation(std::move(w));  // validates it is a bijection
}

inline int fixed_point_count(const Permutation& p) {
    int f = 0;
    for (int j = 1; j <= p.size(); ++j)
        if (p(j) == j) ++f;
    return f;
}

inline long long inversion_count(const Permutation& p) {
    const int n = p.size();
    detail::Fenwick fw(n);
    long long inv = 0;
    for (int j = 1; j <= n; ++j) {
        // earlier positions holding a larger value
        inv += (j - 1) - fw.prefix_sum(p(j));
        fw.add(p(j), 1);
    }
    return inv;
}

inline int cycle_count(const Permutation& p) {
    const int n = p.size();
    std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
    int c = 0;
    for (int start = 1; start <= n; ++start) {
        if (seen[static_cast<std::size_t>(start)]) continue;
        ++c;
        for (int j = start; !seen[static_cast<std::size_t>(j)]; j = p(j))
            seen[static_cast<std::size_t>(j)] = 1;
    }
    return c;
}

inline Permutation inverse(const Permutation& p) {
    const int n = p.size();
    std::vector<int> w(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) w[static_cast<std::size_t>(p(j) - 1)] = j;
    return Permutation(std::move(w));
}

// (p o s)(j) = p(s(j)).
inline Permutation compose(const Permutation& p, const Permutation& s) {
    if (p.size() != s.size()) throw std::invalid_argument("compose: size mismatch");
    const int n = p.size();
    std::vector<int> w(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) w[static_cast<std::size_t>(j - 1)] = p(s(j));
    return Permutation(std::move(w));
}

// Value complement w(j) -> n+1-w(j); sends the inversion count I to
// n(n-1)/2 - I and commutes with the order-restriction projection.
inline Permutation reversal(const Permutation& p) {
    const int n = p.size();
    std::vector<int> w(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) w[static_cast<std::size_t>(j - 1)] = n + 1 - p(j);
    return Permutation(std::move(w));
}

// Per-metric statistic: Hamming -> fixed points F, Kendall -> inversions I,
// Cayley -> cycle count C. Radius of the sphere through p is n-F, I, n-C.
inline long long metric_statistic(Metric m, const Permutation& p) {
    switch (m) {
        case Metric::Hamming: return fixed_point_count(p);
        case Metric::KendallTau: return inversion_count(p);
        case Metric::Cayley: return cycle_count(p);
    }
    throw std::logic_error("unreachable");
}

inline long long statistic_to_radius(Metric m, int n, long long k) {
    return m == Metric::KendallTau ? k : n - k;
}

inline long long radius_to_statistic(Metric m, int n, long long r) {
    return m == Metric::KendallTau ? r : n - r;
}

inline long long metric_radius(Metric m, const Permutation& p) {
    return statistic_to_radius(m, p.size(), metric_statistic(m, p));
}

inline long long statistic_min(Metric m, int /*n*/) { return m == Metric::Cayley ? 1 : 0; }

inline long long statistic_max(Metric m, int n) {
    switch (m) {
        case Metric::Hamming: return n;
        case Metric::KendallTau: return static_cast<long long>(n) * (n - 1) / 2;
        case Metric::Cayley: return n;
    }
    throw std::logic_error("unreachable");
}

inline long long distance(const Permutation& p, const Permutation& s, Metric m) {
    if (p.size() != s.size()) throw std::invalid_argument("distance: size mismatch");
    switch (m) {
        case Metric::Hamming: {
            long long d = 0;
            for (int j = 1; j <= p.size(); ++j)
                if (p(j) != s(j)) ++d;
            return d;
        }
        case Metric::KendallTau:
            // number of discordant pairs = I(p o s^{-1})
            return inversion_count(compose(p, inverse(s)));
        case Metric::Cayley:
            return p.size() - cycle_count(compose(p, inverse(s)));
    }
    throw std::logic_error("unreachable");
}

// Lehmer code eta_1..eta_n, eta_j = #{i < j : pi(i) > pi(j)}, 0 <= eta_j < j.
struct LehmerCode {
    std::vector<int> eta;
};

inline LehmerCode lehmer_encode(const Permutation& p) {
    const int n = p.size();
    detail::Fenwick fw(n);
    LehmerCode code;
    code.eta.resize(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) {
        code.eta[static_cast<std::size_t>(j - 1)] = (j - 1) - fw.prefix_sum(p(j));
        fw.add(p(j), 1);
    }
    return code;
}

inline Permutation lehmer_decode(const LehmerCode& code) {
    const int n = static_cast<int>(code.eta.size());
    if (n < 1) throw std::invalid_argument("lehmer_decode: empty code");
    for (int j = 1; j <= n; ++j) {
        const int e = code.eta[static_cast<std::size_t>(j - 1)];
        if (e < 0 || e >= j) throw std::invalid_argument("lehmer_decode: entry out of range [0, j-1]");
    }
    detail::Fenwick pool(n);
    for (int v = 1; v <= n; ++v) pool.add(v, 1);
    std::vector<int> w(static_cast<std::size_t>(n));
    // scanning positions right to left, pi(j) is the (j - eta_j)-th smallest
    // value not yet used
    for (int j = n; j >= 1; --j) {
        const int v = pool.select(j - code.eta[static_cast<std::size_t>(j - 1)]);
        w[static_cast<std::size_t>(j - 1)] = v;
        pool.add(v, -1);
    }
    return Permutation(std::move(w));
}

// Deletes element n from the cycle notation (the Hamming/Cayley projection).
inline Permutation project_cycle_delete(const Permutation& p) {
    const int n = p.size();
    if (n < 2) throw std::invalid_argument("project_cycle_delete: n must be >= 2");
    std::vector<int> w(static_cast<std::size_t>(n - 1));
    for (int j = 1; j < n; ++j) w[static_cast<std::size_t>(j - 1)] = p(j) == n ? p(n) : p(j);
    return Permutation(std::move(w));
}

// Drops the last entry pi(n) and relabels by the increasing bijection onto
// [n-1] (the Kendall-tau projection; truncates the Lehmer code).
inline Permutation project_order_restrict(const Permutation& p) {
    const int n = p.size();
    if (n < 2) throw std::invalid_argument("project_order_restrict: n must be >= 2");
    const int last = p(n);
    std::vector<int> w(static_cast<std::size_t>(n - 1));
    for (int j = 1; j < n; ++j) w[static_cast<std::size_t>(j - 1)] = p(j) - (p(j) > last ? 1 : 0);
    return Permutation(std::move(w));
}

// Deletes the letter n from the one-line notation.
inline Permutation project_letter_delete(const Permutation& p) {
    const int n = p.size();
    if (n < 2) throw std::invalid_argument("project_letter_delete: n must be >= 2");
    std::vector<int> w;
    w.reserve(static_cast<std::size_t>(n - 1));
    for (int j = 1; j <= n; ++j)
        if (p(j) != n) w.push_back(p(j));
    return Permutation(std::move(w));
}

// The projection bound to the metric's spherical symmetry.
inline Permutation project(Metric m, const Permutation& p) {
    return m == Metric::KendallTau ? project_order_restrict(p) : project_cycle_delete(p);
}

inline Permutation project_to(Metric m, Permutation p, int n) {
    if (n < 1 || n > p.size()) throw std::invalid_argument("project_to: bad target size");
    while (p.size() > n) p = project(m, p);
    return p;
}

// All n extensions of s in S_{n-1} to S_n under the metric's projection.
inline std::vector<Permutation> extensions(Metric m, const Permutation& s) {
    const int n = s.size() + 1;
    std::vector<Permutation> out;
    out.reserve(static_cast<std::size_t>(n));
    if (m == Metric::KendallTau) {
        for (int eta = 0; eta < n; ++eta) {
            const int v = n - eta;
            std::vector<int> w(static_cast<std::size_t>(n));
            for (int j = 1; j < n; ++j)
                w[static_cast<std::size_t>(j - 1)] = s(j) + (s(j) >= v ? 1 : 0);
            w[static_cast<std::size_t>(n - 1)] = v;
            out.emplace_back(std::move(w));
        }
    } else {
        // insert n in a cycle next to the right of each j, then as singleton
        for (int j = 1; j < n; ++j) {
            std::vector<int> w(static_cast<std::size_t>(n));
            for (int i = 1; i < n; ++i) w[static_cast<std::size_t>(i - 1)] = s(i);
            w[static_cast<std::size_t>(j - 1)] = n;
            w[static_cast<std::size_t>(n - 1)] = s(j);
            out.emplace_back(std::move(w));
        }
        std::vector<int> w(static_cast<std::size_t>(n));
        for (int i = 1; i < n; ++i) w[static_cast<std::size_t>(i - 1)] = s(i);
        w[static_cast<std::size_t>(n - 1)] = n;
        out.emplace_back(std::move(w));
    }
    return out;
}

inline std::string format_one_line(const Permutation& p) {
    std::string s;
    for (int j = 1; j <= p.size(); ++j) {
        if (j > 1) s += ' ';
        s += std::to_string(p(j));
    }
    return s;
}

inline std::string format_cycles(const Permutation& p) {
    std::string s;
    for (const auto& cyc : cycle_form(p).cycles) {
        s += '(';
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            if (i > 0) s += ' ';
            s += std::to_string(cyc[i]);
        }
        s += ')';
    }
    return s;
}

// Accepts one-line notation "2 5 1 4 3" or full cycle notation "(1 5 3)(2 4)";
// cycle input must cover all of [n].
inline Permutation parse_permutation(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw std::invalid_argument("parse_permutation: empty input");
    if (text[first] == '(') {
        CycleForm cf;
        std::size_t i = first;
        while (i < text.size()) {
            if (std::isspace(static_cast<unsigned char>(text[i]))) {
                ++i;
                continue;
            }
            if (text[i] != '(') throw std::invalid_argument("parse_permutation: expected '('");
            const auto close = text.find(')', i);
            if (close == std::string::npos) throw std::invalid_argument("parse_permutation: missing ')'");
            std::istringstream iss(text.substr(i + 1, close - i - 1));
            std::vector<int> cyc;
            int v = 0;
            while (iss >> v) cyc.push_back(v);
            if (cyc.empty()) throw std::invalid_argument("parse_permutation: empty cycle");
            cf.cycles.push_back(std::move(cyc));
            i = close + 1;
        }
        return from_cycle_form(cf);
    }
    std::istringstream iss(text);
    std::vector<int> w;
    int v = 0;
    while (iss >> v) w.push_back(v);
    return Permutation(std::move(w));
}

}  // namespace permsphere
