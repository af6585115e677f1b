#ifndef SYMHYP_COMBINATORICS_HPP
#define SYMHYP_COMBINATORICS_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace symhyp {

class BudgetExceeded : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline std::uint64_t factorial(std::uint64_t n) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (r > UINT64_MAX / i) throw std::overflow_error("factorial overflow");
        r *= i;
    }
    return r;
}

/// C(n, k); 0 when k > n.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > UINT64_MAX) throw std::overflow_error("binomial overflow");
    }
    return static_cast<std::uint64_t>(r);
}

/// base^exp, throws on overflow.
inline std::uint64_t ipow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base != 0 && r > UINT64_MAX / base) throw std::overflow_error("ipow overflow");
        r *= base;
    }
    return r;
}

/// Saturating variant for budget arithmetic.
inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
    return a * b;
}

/// Visits the k-subsets of {0..n-1} in colexicographic order (ordered by the
/// largest element, then the next largest, ...). Each subset is passed in
/// increasing order. `visit` returns false to stop early; the function then
/// returns false.
template <class Visit>
bool for_each_subset_colex(std::size_t n, std::size_t k, Visit&& visit) {
    if (k > n) return true;
    std::vector<std::size_t> c(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = i;
    if (k == 0) return visit(static_cast<const std::vector<std::size_t>&>(c));
    while (true) {
        if (!visit(static_cast<const std::vector<std::size_t>&>(c))) return false;
        // smallest j with c[j] + 1 != c[j+1], then bump it and reset below
        std::size_t j = 0;
        while (j + 1 < k && c[j] + 1 == c[j + 1]) ++j;
        if (c[j] + 1 >= n) return true;
        ++c[j];
        for (std::size_t i = 0; i < j; ++i) c[i] = i;
    }
}

}  // namespace symhyp

#endif  // SYMHYP_COMBINATORICS_HPP
