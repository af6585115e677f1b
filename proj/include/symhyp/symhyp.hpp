#ifndef SYMHYP_SYMHYP_HPP
#define SYMHYP_SYMHYP_HPP

// Complete symmetric polynomials h = sum_e a_e h_e(x_1..x_k) and the point
// counts N_q(h), N_q*(h) and N_S*(h).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "symhyp/combinatorics.hpp"
#include "symhyp/gf.hpp"
#include "symhyp/parallel.hpp"
#include "symhyp/poly.hpp"

namespace symhyp {

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

/// h_e(xs) via h_e(x_1..x_j) = h_e(x_1..x_{j-1}) + x_j h_{e-1}(x_1..x_j).
/// h_0 = 1 and h_{e>0}() = 0.
inline Elem eval_h(const Field& F, std::size_t e, std::span<const Elem> xs) {
    std::vector<Elem> row(e + 1, Field::zero());
    row[0] = Field::one();
    for (auto x : xs)
        for (std::size_t d = 1; d <= e; ++d) row[d] = F.add(row[d], F.mul(x, row[d - 1]));
    return row[e];
}

/// h_0..h_m at xs, one DP pass.
inline std::vector<Elem> eval_h_upto(const Field& F, std::size_t m, std::span<const Elem> xs) {
    std::vector<Elem> row(m + 1, Field::zero());
    row[0] = Field::one();
    for (auto x : xs)
        for (std::size_t d = 1; d <= m; ++d) row[d] = F.add(row[d], F.mul(x, row[d - 1]));
    return row;
}

/// sum_{e=0}^{m} a_e h_e(x_1..x_k) with a_m != 0.
class CompleteSymPoly {
  public:
    /// Throws std::invalid_argument if k == 0, coeffs is empty or the last coefficient is zero.
    CompleteSymPoly(Field field, std::size_t k, std::vector<Elem> coeffs)
        : field_(std::move(field)), k_(k), a_(std::move(coeffs)) {
        if (k_ == 0) throw std::invalid_argument("complete symmetric polynomial needs k >= 1 variables");
        if (a_.empty()) throw std::invalid_argument("complete symmetric polynomial needs at least one coefficient");
        for (auto c : a_)
            if (!field_.contains(c)) throw std::out_of_range("coefficient outside " + field_.name());
        if (a_.back() == Field::zero()) throw std::invalid_argument("leading coefficient a_m must be nonzero");
    }

    static CompleteSymPoly from_indices(const Field& field, std::size_t k, std::span<const std::uint64_t> idx) {
        std::vector<Elem> v;
        for (auto i : idx) v.push_back(field.at(i));
        return {field, k, std::move(v)};
    }

    [[nodiscard]] const Field& field() const noexcept { return field_; }
    [[nodiscard]] std::size_t k() const noexcept { return k_; }
    [[nodiscard]] std::size_t degree() const noexcept { return a_.size() - 1; }
    [[nodiscard]] const std::vector<Elem>& coeffs() const noexcept { return a_; }

    [[nodiscard]] std::vector<std::uint32_t> indices() const {
        std::vector<std::uint32_t> v;
        for (auto c : a_) v.push_back(c.v);
        return v;
    }

    friend bool operator==(const CompleteSymPoly& a, const CompleteSymPoly& b) {
        return a.field_ == b.field_ && a.k_ == b.k_ && a.a_ == b.a_;
    }

  private:
    Field field_;
    std::size_t k_;
    std::vector<Elem> a_;
};

/// Throws std::invalid_argument when xs.size() != h.k().
inline Elem eval_complete(const CompleteSymPoly& h, std::span<const Elem> xs) {
    if (xs.size() != h.k())
        throw std::invalid_argument("eval_complete: expected " + std::to_string(h.k()) + " coordinates, got " +
                                    std::to_string(xs.size()));
    const auto& F = h.field();
    const auto row = eval_h_upto(F, h.degree(), xs);
    Elem acc = Field::zero();
    for (std::size_t e = 0; e < row.size(); ++e) acc = F.add(acc, F.mul(h.coeffs()[e], row[e]));
    return acc;
}

/// Incremental evaluator for sum a_e h_e over a growing prefix of variables.
/// push(d, x) sets variable d (0-based) and recomputes level d+1 from level d,
/// so enumerations that share prefixes pay O(m) per new variable.
class PrefixEvaluator {
  public:
    PrefixEvaluator(const Field& F, std::span<const Elem> coeffs, std::size_t depth)
        : F_(F), a_(coeffs.begin(), coeffs.end()), width_(coeffs.size()), levels_((depth + 1) * width_, Field::zero()) {
        levels_[0] = Field::one();
    }

    void push(std::size_t d, Elem x) noexcept {
        const Elem* prev = &levels_[d * width_];
        Elem* cur = &levels_[(d + 1) * width_];
        cur[0] = Field::one();
        for (std::size_t e = 1; e < width_; ++e) cur[e] = F_.add(prev[e], F_.mul(x, cur[e - 1]));
    }

    [[nodiscard]] Elem value(std::size_t d) const noexcept {
        const Elem* row = &levels_[d * width_];
        Elem acc = Field::zero();
        for (std::size_t e = 0; e < width_; ++e) acc = F_.add(acc, F_.mul(a_[e], row[e]));
        return acc;
    }

  private:
    const Field& F_;
    std::vector<Elem> a_;
    std::size_t width_;
    std::vector<Elem> levels_;
};

enum class CountMethod { MultisetOrbit, Naive, SubsetOrbit };

inline const char* to_string(CountMethod m) {
    switch (m) {
        case CountMethod::MultisetOrbit: return "multiset-orbit";
        case CountMethod::Naive: return "naive";
        case CountMethod::SubsetOrbit: return "subset-orbit";
    }
    return "?";
}

struct PointCount {
    std::optional<std::uint64_t> n_total;  // N_q; absent for counts restricted to distinct coordinates
    std::uint64_t n_distinct = 0;          // N_q* or N_S*
    std::uint64_t subset_size = 0;         // |S|
    CountMethod method = CountMethod::MultisetOrbit;
};

struct CountOptions {
    std::uint64_t budget = kDefaultBudget;  // maximum number of evaluations
    unsigned threads = 1;
};

namespace detail {

// Non-decreasing index sequences (multisets) with smallest element `first`.
// `leaf(value, idx)` is called with the k chosen indices.
template <class Leaf>
void walk_multisets(PrefixEvaluator& ev, std::size_t q, std::size_t k, std::size_t depth, std::size_t lo,
                    std::vector<std::size_t>& idx, Leaf& leaf) {
    if (depth == k) {
        leaf(ev.value(k), idx);
        return;
    }
    for (std::size_t i = lo; i < q; ++i) {
        idx[depth] = i;
        ev.push(depth, Elem{static_cast<std::uint32_t>(i)});
        walk_multisets(ev, q, k, depth + 1, i, idx, leaf);
    }
}

// Strictly decreasing position sequences below `limit`, i.e. k-subsets listed
// from the largest element down. Iterating positions upward at every depth
// visits subsets in colexicographic order. Returns false if `leaf` stopped.
template <class Leaf>
bool walk_subsets(PrefixEvaluator& ev, std::span<const Elem> S, std::size_t k, std::size_t depth, std::size_t limit,
                  std::vector<std::size_t>& pos, Leaf& leaf) {
    if (depth == k) return leaf(ev.value(k), pos);
    for (std::size_t i = k - 1 - depth; i < limit; ++i) {
        pos[depth] = i;
        ev.push(depth, S[i]);
        if (!walk_subsets(ev, S, k, depth + 1, i, pos, leaf)) return false;
    }
    return true;
}

// All length-k tuples over S with the first coordinate fixed.
template <class Leaf>
void walk_tuples(PrefixEvaluator& ev, std::span<const Elem> S, std::size_t k, std::size_t depth,
                 std::vector<std::size_t>& pos, Leaf& leaf) {
    if (depth == k) {
        leaf(ev.value(k), pos);
        return;
    }
    for (std::size_t i = 0; i < S.size(); ++i) {
        pos[depth] = i;
        ev.push(depth, S[i]);
        walk_tuples(ev, S, k, depth + 1, pos, leaf);
    }
}

inline std::uint64_t orbit_size(std::span<const std::size_t> sorted_idx, std::uint64_t k_fact) {
    std::uint64_t denom = 1;
    std::size_t run = 1;
    for (std::size_t i = 1; i <= sorted_idx.size(); ++i) {
        if (i < sorted_idx.size() && sorted_idx[i] == sorted_idx[i - 1]) {
            ++run;
            denom *= run;
        } else {
            run = 1;
        }
    }
    return k_fact / denom;
}

}  // namespace detail

/// Sorted, duplicate-free copy of S; throws if an element is outside the field.
inline std::vector<Elem> normalize_subset(const Field& F, std::span<const Elem> S) {
    std::vector<Elem> out(S.begin(), S.end());
    for (auto e : out)
        if (!F.contains(e)) throw std::out_of_range("subset element outside " + F.name());
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end())
        throw std::invalid_argument("subset has repeated elements");
    return out;
}

/// N_q(h) together with N_q*(h). The default method visits the C(q+k-1, k)
/// multisets once each and weights a zero by its orbit size k!/prod c_i!;
/// the naive method visits all q^k tuples.
inline PointCount count_points(const CompleteSymPoly& h, CountMethod method = CountMethod::MultisetOrbit,
                               const CountOptions& opt = {}) {
    const auto& F = h.field();
    const std::size_t q = F.q(), k = h.k();
    const std::uint64_t k_fact = factorial(k);
    PointCount out;
    out.subset_size = q;
    out.method = method;

    using Partial = std::pair<std::uint64_t, std::uint64_t>;
    std::vector<Partial> parts;
    if (method == CountMethod::MultisetOrbit) {
        if (binomial(q + k - 1, k) > opt.budget) throw BudgetExceeded("count_points: multiset enumeration exceeds budget");
        parts = parallel_map<Partial>(q, opt.threads, [&](std::size_t first) {
            PrefixEvaluator ev(F, h.coeffs(), k);
            std::vector<std::size_t> idx(k);
            Partial acc{0, 0};
            auto leaf = [&](Elem v, const std::vector<std::size_t>& ix) {
                if (v != Field::zero()) return;
                const std::uint64_t orbit = detail::orbit_size(ix, k_fact);
                acc.first += orbit;
                if (orbit == k_fact) acc.second += orbit;
            };
            idx[0] = first;
            ev.push(0, Elem{static_cast<std::uint32_t>(first)});
            detail::walk_multisets(ev, q, k, 1, first, idx, leaf);
            return acc;
        });
    } else if (method == CountMethod::Naive) {
        const std::uint64_t total = [&] {
            try {
                return ipow(q, k);
            } catch (const std::overflow_error&) {
                return UINT64_MAX;
            }
        }();
        if (total > opt.budget) throw BudgetExceeded("count_points: naive enumeration exceeds budget");
        const auto S = F.elements();
        parts = parallel_map<Partial>(q, opt.threads, [&](std::size_t first) {
            PrefixEvaluator ev(F, h.coeffs(), k);
            std::vector<std::size_t> pos(k);
            std::vector<std::uint32_t> seen(q, 0);
            Partial acc{0, 0};
            auto leaf = [&](Elem v, const std::vector<std::size_t>& p) {
                if (v != Field::zero()) return;
                ++acc.first;
                bool distinct = true;
                for (std::size_t i = 0; i < k && distinct; ++i)
                    for (std::size_t j = i + 1; j < k; ++j)
                        if (p[i] == p[j]) {
                            distinct = false;
                            break;
                        }
                if (distinct) ++acc.second;
            };
            pos[0] = first;
            ev.push(0, S[first]);
            detail::walk_tuples(ev, S, k, 1, pos, leaf);
            return acc;
        });
    } else {
        throw std::invalid_argument("count_points: subset-orbit is a distinct-coordinate method");
    }
    std::uint64_t total = 0, distinct = 0;
    for (auto [a, b] : parts) {
        total += a;
        distinct += b;
    }
    out.n_total = total;
    out.n_distinct = distinct;
    return out;
}

/// N_S*(h): zeros with pairwise distinct coordinates in S (all of F_q when
/// S is absent). The default method counts zero k-subsets of S and multiplies
/// by k!. Throws std::invalid_argument if k > |S|.
inline PointCount count_points_distinct(const CompleteSymPoly& h, std::optional<std::vector<Elem>> subset = std::nullopt,
                                        CountMethod method = CountMethod::SubsetOrbit, const CountOptions& opt = {}) {
    const auto& F = h.field();
    const std::vector<Elem> S = subset ? normalize_subset(F, *subset) : F.elements();
    const std::size_t k = h.k(), n = S.size();
    if (k > n)
        throw std::invalid_argument("count_points_distinct: k = " + std::to_string(k) + " exceeds |S| = " + std::to_string(n));
    PointCount out;
    out.subset_size = n;
    out.method = method;
    const std::uint64_t k_fact = factorial(k);

    if (method == CountMethod::SubsetOrbit) {
        if (binomial(n, k) > opt.budget) throw BudgetExceeded("count_points_distinct: subset enumeration exceeds budget");
        const auto parts = parallel_map<std::uint64_t>(n, opt.threads, [&](std::size_t top) -> std::uint64_t {
            if (top + 1 < k) return 0;
            PrefixEvaluator ev(F, h.coeffs(), k);
            std::vector<std::size_t> pos(k);
            std::uint64_t zeros = 0;
            auto leaf = [&](Elem v, const std::vector<std::size_t>&) {
                if (v == Field::zero()) ++zeros;
                return true;
            };
            pos[0] = top;
            ev.push(0, S[top]);
            detail::walk_subsets(ev, S, k, 1, top, pos, leaf);
            return zeros;
        });
        std::uint64_t zeros = 0;
        for (auto z : parts) zeros += z;
        out.n_distinct = zeros * k_fact;
    } else if (method == CountMethod::Naive) {
        std::uint64_t total = UINT64_MAX;
        try {
            total = ipow(n, k);
        } catch (const std::overflow_error&) {
        }
        if (total > opt.budget) throw BudgetExceeded("count_points_distinct: naive enumeration exceeds budget");
        const auto parts = parallel_map<std::uint64_t>(n, opt.threads, [&](std::size_t first) {
            PrefixEvaluator ev(F, h.coeffs(), k);
            std::vector<std::size_t> pos(k);
            std::uint64_t acc = 0;
            auto leaf = [&](Elem v, const std::vector<std::size_t>& p) {
                if (v != Field::zero()) return;
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = i + 1; j < k; ++j)
                        if (p[i] == p[j]) return;
                ++acc;
            };
            pos[0] = first;
            ev.push(0, S[first]);
            detail::walk_tuples(ev, S, k, 1, pos, leaf);
            return acc;
        });
        for (auto z : parts) out.n_distinct += z;
    } else {
        throw std::invalid_argument("count_points_distinct: multiset-orbit does not count distinct tuples");
    }
    return out;
}

/// First k-subset of S (colexicographic order) on which h vanishes.
inline std::optional<std::vector<Elem>> first_zero_subset(const CompleteSymPoly& h, std::span<const Elem> S) {
    const auto& F = h.field();
    const std::size_t k = h.k();
    if (k > S.size()) return std::nullopt;
    PrefixEvaluator ev(F, h.coeffs(), k);
    std::vector<std::size_t> pos(k);
    std::optional<std::vector<Elem>> found;
    auto leaf = [&](Elem v, const std::vector<std::size_t>& p) {
        if (v != Field::zero()) return true;
        std::vector<Elem> w;
        for (auto it = p.rbegin(); it != p.rend(); ++it) w.push_back(S[*it]);
        found = std::move(w);
        return false;
    };
    for (std::size_t top = k - 1; top < S.size() && !found; ++top) {
        pos[0] = top;
        ev.push(0, S[top]);
        detail::walk_subsets(ev, S, k, 1, top, pos, leaf);
    }
    return found;
}

/// Reduction of x^{k-1} sum a_e x^e modulo x^q - x, with the b_j vector
/// b_j = sum_{e = j mod (q-1)} a_e and the degree-(k-1) verdict.
struct ReductionProfile {
    std::vector<Elem> b;  // b_0..b_{q-2}
    UniPoly reduced_g;
    bool is_degree_k_minus_1 = false;
};

/// b_0 != 0 and b_1 = ... = b_{q-k} = 0.
inline bool degree_criterion_from_b(std::span<const Elem> b, std::size_t k, std::size_t q) {
    if (b.empty() || b[0] == Field::zero()) return false;
    for (std::size_t j = 1; j <= q - k && j < b.size(); ++j)
        if (b[j] != Field::zero()) return false;
    return true;
}

/// Throws std::invalid_argument unless 2 <= h.k() <= q.
inline ReductionProfile reduction_profile(const CompleteSymPoly& h) {
    const auto& F = h.field();
    const std::size_t q = F.q(), k = h.k();
    if (k < 2 || k > q)
        throw std::invalid_argument("reduction_profile: need 2 <= k <= q, got k = " + std::to_string(k));
    ReductionProfile out{std::vector<Elem>(q - 1, Field::zero()), UniPoly(F), false};
    for (std::size_t e = 0; e < h.coeffs().size(); ++e) {
        const std::size_t j = e % (q - 1);
        out.b[j] = F.add(out.b[j], h.coeffs()[e]);
    }
    out.reduced_g = reduce_mod_qx(UniPoly(F, h.coeffs()).shifted(k - 1));
    const bool by_b = degree_criterion_from_b(out.b, k, q);
    const bool by_degree = out.reduced_g.degree() == Degree{k - 1};
    if (by_b != by_degree) throw std::logic_error("reduction_profile: b-vector and degree criteria disagree");
    out.is_degree_k_minus_1 = by_b;
    return out;
}

/// h(x_1..x_t, fixed...) as a complete symmetric polynomial in t = k - |fixed|
/// variables: a'_e = sum_{j >= e} a_j h_{j-e}(fixed). The degree is unchanged.
inline CompleteSymPoly specialize(const CompleteSymPoly& h, std::span<const Elem> fixed) {
    if (fixed.size() >= h.k())
        throw std::invalid_argument("specialize: must leave at least one free variable");
    const auto& F = h.field();
    const std::size_t m = h.degree();
    const auto hv = eval_h_upto(F, m, fixed);
    std::vector<Elem> a(m + 1, Field::zero());
    for (std::size_t e = 0; e <= m; ++e)
        for (std::size_t j = e; j <= m; ++j) a[e] = F.add(a[e], F.mul(h.coeffs()[j], hv[j - e]));
    return {F, h.k() - fixed.size(), std::move(a)};
}

inline nlohmann::json to_json(const PointCount& c) {
    nlohmann::json j{{"N_star", c.n_distinct}, {"subset_size", c.subset_size}, {"method", to_string(c.method)}};
    j["N"] = c.n_total ? nlohmann::json(*c.n_total) : nlohmann::json(nullptr);
    return j;
}

}  // namespace symhyp

#endif  // SYMHYP_SYMHYP_HPP
