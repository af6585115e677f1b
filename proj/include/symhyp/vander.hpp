#ifndef SYMHYP_VANDER_HPP
#define SYMHYP_VANDER_HPP

// Generalized Vandermonde determinants D_f: rows 1, x, ..., x^{k-2}, f(x)
// evaluated at k points, and the companion C_f = sum_{i >= k-1} a_i h_{i-k+1}
// with D_f = C_f * prod_{i<j} (x_j - x_i).

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "symhyp/combinatorics.hpp"
#include "symhyp/linalg.hpp"
#include "symhyp/parallel.hpp"
#include "symhyp/poly.hpp"
#include "symhyp/symhyp.hpp"

namespace symhyp {

/// f (stored reduced modulo x^q - x) together with the matrix size k.
class GenVanderInstance {
  public:
    /// Throws std::invalid_argument unless 2 <= k <= q.
    GenVanderInstance(const UniPoly& f, std::size_t k) : f_(reduce_mod_qx(f)), k_(k) {
        const std::size_t q = f_.field().q();
        if (k_ < 2 || k_ > q)
            throw std::invalid_argument("generalized Vandermonde: need 2 <= k <= q, got k = " + std::to_string(k_));
    }

    [[nodiscard]] const UniPoly& f() const noexcept { return f_; }
    [[nodiscard]] std::size_t k() const noexcept { return k_; }
    [[nodiscard]] const Field& field() const noexcept { return f_.field(); }

  private:
    UniPoly f_;
    std::size_t k_;
};

/// The k x k matrix M_f at the given points.
inline Matrix vander_matrix(const GenVanderInstance& inst, std::span<const Elem> alphas) {
    const std::size_t k = inst.k();
    if (alphas.size() != k)
        throw std::invalid_argument("vander_matrix: expected " + std::to_string(k) + " points, got " +
                                    std::to_string(alphas.size()));
    const auto& F = inst.field();
    Matrix m(k, k);
    for (std::size_t c = 0; c < k; ++c) {
        Elem x = Field::one();
        for (std::size_t r = 0; r + 1 < k; ++r) {
            m(r, c) = x;
            x = F.mul(x, alphas[c]);
        }
        m(k - 1, c) = inst.f().eval(alphas[c]);
    }
    return m;
}

/// D_f(alphas) by elimination. Repeated points give 0.
inline Elem det_Df(const GenVanderInstance& inst, std::span<const Elem> alphas) {
    return determinant(inst.field(), vander_matrix(inst, alphas));
}

/// prod_{i<j} (alphas[j] - alphas[i])
inline Elem vandermonde_product(const Field& F, std::span<const Elem> alphas) {
    Elem acc = Field::one();
    for (std::size_t i = 0; i < alphas.size(); ++i)
        for (std::size_t j = i + 1; j < alphas.size(); ++j) acc = F.mul(acc, F.sub(alphas[j], alphas[i]));
    return acc;
}

/// C_f in k variables, of degree deg(f) - k + 1. std::nullopt when
/// deg(f) <= k - 2: the companion is identically zero and so is D_f.
inline std::optional<CompleteSymPoly> cf_from_f(const UniPoly& f, std::size_t k) {
    if (k < 1) throw std::invalid_argument("cf_from_f: k must be positive");
    const auto d = f.degree();
    if (!d || *d + 1 < k) return std::nullopt;
    std::vector<Elem> a(f.coeffs().begin() + static_cast<std::ptrdiff_t>(k - 1), f.coeffs().end());
    return CompleteSymPoly(f.field(), k, std::move(a));
}

/// g = x^{k-1} sum a_e x^e reduced modulo x^q - x; its companion agrees with h
/// as a function on F_q^k.
inline UniPoly g_from_h(const CompleteSymPoly& h) {
    if (h.k() < 2) throw std::invalid_argument("g_from_h: need k >= 2");
    return reduce_mod_qx(UniPoly(h.field(), h.coeffs()).shifted(h.k() - 1));
}

enum class VanderMethod { Companion, Determinant };

struct VanderCount {
    std::uint64_t n_star = 0;             // N_S*(D_f)
    std::uint64_t subsets_vanishing = 0;  // n_star / k!
    std::uint64_t subset_size = 0;
    bool identically_zero = false;        // deg f <= k-2
    std::optional<std::vector<Elem>> first_witness;  // colex-first vanishing subset
};

/// N_S*(D_f). The companion method counts zeros of C_f on k-subsets of S;
/// the determinant method evaluates D_f on every k-subset. Throws
/// std::invalid_argument if k > |S|.
inline VanderCount count_Df_zero(const GenVanderInstance& inst, std::optional<std::vector<Elem>> subset = std::nullopt,
                                 VanderMethod method = VanderMethod::Companion, const CountOptions& opt = {}) {
    const auto& F = inst.field();
    const std::vector<Elem> S = subset ? normalize_subset(F, *subset) : F.elements();
    const std::size_t k = inst.k(), n = S.size();
    if (k > n) throw std::invalid_argument("count_Df_zero: k = " + std::to_string(k) + " exceeds |S| = " + std::to_string(n));
    if (binomial(n, k) > opt.budget) throw BudgetExceeded("count_Df_zero: subset enumeration exceeds budget");

    VanderCount out;
    out.subset_size = n;
    const auto companion = cf_from_f(inst.f(), k);

    struct Part {
        std::uint64_t zeros = 0;
        std::optional<std::vector<Elem>> first;
    };
    std::vector<Part> parts;
    if (method == VanderMethod::Companion) {
        if (!companion) {
            out.identically_zero = true;
            out.subsets_vanishing = binomial(n, k);
            out.n_star = out.subsets_vanishing * factorial(k);
            std::vector<Elem> w(S.begin(), S.begin() + static_cast<std::ptrdiff_t>(k));
            out.first_witness = std::move(w);
            return out;
        }
        parts = parallel_map<Part>(n, opt.threads, [&](std::size_t top) {
            Part part;
            if (top + 1 < k) return part;
            PrefixEvaluator ev(F, companion->coeffs(), k);
            std::vector<std::size_t> pos(k);
            auto leaf = [&](Elem v, const std::vector<std::size_t>& p) {
                if (v != Field::zero()) return true;
                if (!part.first) {
                    std::vector<Elem> w;
                    for (auto it = p.rbegin(); it != p.rend(); ++it) w.push_back(S[*it]);
                    part.first = std::move(w);
                }
                ++part.zeros;
                return true;
            };
            pos[0] = top;
            ev.push(0, S[top]);
            detail::walk_subsets(ev, S, k, 1, top, pos, leaf);
            return part;
        });
    } else {
        out.identically_zero = !companion;
        parts = parallel_map<Part>(n, opt.threads, [&](std::size_t top) {
            Part part;
            if (top + 1 < k) return part;
            std::vector<Elem> alphas(k);
            alphas[k - 1] = S[top];
            // the k-1 smaller positions, colex order
            for_each_subset_colex(top, k - 1, [&](const std::vector<std::size_t>& c) {
                for (std::size_t i = 0; i + 1 < k; ++i) alphas[i] = S[c[i]];
                if (det_Df(inst, alphas) == Field::zero()) {
                    if (!part.first) part.first = alphas;
                    ++part.zeros;
                }
                return true;
            });
            return part;
        });
    }
    for (auto& p : parts) {
        out.subsets_vanishing += p.zeros;
        if (!out.first_witness && p.first) out.first_witness = std::move(p.first);
    }
    out.n_star = out.subsets_vanishing * factorial(k);
    return out;
}

}  // namespace symhyp

#endif  // SYMHYP_VANDER_HPP
