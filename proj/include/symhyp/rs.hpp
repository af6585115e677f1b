#ifndef SYMHYP_RS_HPP
#define SYMHYP_RS_HPP

// Reed-Solomon codes RS_q(k-1) evaluated on all of F_q, their one-row
// extensions by a word beta_f, and deep-hole classification.
//
// beta_f = (f(a_1), ..., f(a_q)) is a deep hole exactly when the generator
// matrix of RS_q(k-1) topped up with the row beta_f is still MDS, i.e.
// D_f(a_{i_1}, ..., a_{i_k}) != 0 on every k-subset of F_q.

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "symhyp/combinatorics.hpp"
#include "symhyp/linalg.hpp"
#include "symhyp/poly.hpp"
#include "symhyp/vander.hpp"

namespace symhyp {

/// RS_q(dim) with evaluation points F_q in canonical order.
class RSSpec {
  public:
    /// Throws std::invalid_argument unless 1 <= dim <= q - 1.
    RSSpec(Field field, std::size_t dim) : field_(std::move(field)), dim_(dim) {
        if (dim_ + 1 < 2 || dim_ + 1 > field_.q())
            throw std::invalid_argument("RSSpec: need 2 <= dim + 1 <= q, got dim = " + std::to_string(dim_));
    }

    [[nodiscard]] const Field& field() const noexcept { return field_; }
    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    /// k, the size of the extended (dim + 1)-row matrix.
    [[nodiscard]] std::size_t k() const noexcept { return dim_ + 1; }
    [[nodiscard]] std::vector<Elem> eval_points() const { return field_.elements(); }

  private:
    Field field_;
    std::size_t dim_;
};

/// rows x q matrix with entry (i, j) = a_j^i, using 0^0 = 1.
inline Matrix vandermonde_rows(const Field& F, std::size_t rows) {
    const std::size_t q = F.q();
    Matrix m(rows, q);
    for (std::size_t j = 0; j < q; ++j) {
        Elem x = Field::one();
        const Elem a{static_cast<std::uint32_t>(j)};
        for (std::size_t i = 0; i < rows; ++i) {
            m(i, j) = x;
            x = F.mul(x, a);
        }
    }
    return m;
}

inline Matrix generator_matrix(const RSSpec& rs) { return vandermonde_rows(rs.field(), rs.dim()); }

struct MdsResult {
    bool mds = true;
    std::optional<std::vector<std::size_t>> failing_columns;  // colex-first singular column set
};

/// Every r x r column minor of an r x n matrix is nonsingular. Column sets
/// are visited in colexicographic order and the first singular one is returned.
inline MdsResult is_mds(const Field& F, const Matrix& m) {
    const std::size_t r = m.rows(), n = m.cols();
    if (r > n) throw std::invalid_argument("is_mds: more rows than columns");
    MdsResult out;
    for_each_subset_colex(n, r, [&](const std::vector<std::size_t>& cols) {
        if (determinant(F, m.columns(cols)) != Field::zero()) return true;
        out.mds = false;
        out.failing_columns = cols;
        return false;
    });
    return out;
}

/// k x (q+1): RS generator rows, then (f(a_1), ..., f(a_q), 1); last column e_k.
inline Matrix extended_matrix(const RSSpec& rs, const UniPoly& f) {
    const auto& F = rs.field();
    const std::size_t q = F.q(), k = rs.k();
    if (f.degree() && *f.degree() > q - 1) throw std::invalid_argument("extended_matrix: deg f must be <= q - 1");
    const Matrix g = generator_matrix(rs);
    Matrix m(k, q + 1);
    for (std::size_t i = 0; i + 1 < k; ++i)
        for (std::size_t j = 0; j < q; ++j) m(i, j) = g(i, j);
    for (std::size_t j = 0; j < q; ++j) m(k - 1, j) = f.eval(Elem{static_cast<std::uint32_t>(j)});
    m(k - 1, q) = Field::one();
    return m;
}

/// w_i = -sum_j a_j^i f(a_j), i = 0..q-k.
struct SyndromeVector {
    std::vector<Elem> w;
};

inline SyndromeVector syndrome(const RSSpec& rs, const UniPoly& f) {
    const auto& F = rs.field();
    const std::size_t q = F.q(), k = rs.k();
    const Matrix v = vandermonde_rows(F, q - k + 1);
    const auto values = f.eval_all();
    SyndromeVector s{std::vector<Elem>(q - k + 1, Field::zero())};
    for (std::size_t i = 0; i <= q - k; ++i) {
        Elem acc = Field::zero();
        for (std::size_t j = 0; j < q; ++j) acc = F.add(acc, F.mul(v(i, j), values[j]));
        s.w[i] = F.neg(acc);
    }
    return s;
}

struct DualExtended {
    Matrix matrix;  // (q+1-k) x (q+1)
    SyndromeVector syndrome;
};

/// Rows (a_1^i, ..., a_q^i, w_i) for i = 0..q-k; orthogonal to every row of
/// extended_matrix(rs, f).
inline DualExtended dual_extended_matrix(const RSSpec& rs, const UniPoly& f) {
    const auto& F = rs.field();
    const std::size_t q = F.q(), k = rs.k();
    if (f.degree() && *f.degree() > q - 1) throw std::invalid_argument("dual_extended_matrix: deg f must be <= q - 1");
    DualExtended out{Matrix(q + 1 - k, q + 1), syndrome(rs, f)};
    const Matrix v = vandermonde_rows(F, q + 1 - k);
    for (std::size_t i = 0; i <= q - k; ++i) {
        for (std::size_t j = 0; j < q; ++j) out.matrix(i, j) = v(i, j);
        out.matrix(i, q) = out.syndrome.w[i];
    }
    return out;
}

/// w = (0, ..., 0, a) with a != 0.
inline bool seroussi_roth_test(const SyndromeVector& s) {
    if (s.w.empty() || s.w.back() == Field::zero()) return false;
    for (std::size_t i = 0; i + 1 < s.w.size(); ++i)
        if (s.w[i] != Field::zero()) return false;
    return true;
}

struct DeepHoleVerdict {
    bool is_deep_hole = false;
    bool is_codeword = false;                // deg f <= k-2: beta_f lies in RS_q(k-1)
    std::optional<std::vector<Elem>> witness;  // a k-subset with D_f = 0
    Degree f_degree;
    bool sr_form = false;
};

/// Classifies beta_f through the companion C_f on all k-subsets of F_q,
/// stopping at the colex-first zero.
inline DeepHoleVerdict is_deep_hole(const RSSpec& rs, const UniPoly& f) {
    const auto& F = rs.field();
    const std::size_t k = rs.k();
    const UniPoly g = reduce_mod_qx(f);
    DeepHoleVerdict v;
    v.f_degree = g.degree();
    v.sr_form = seroussi_roth_test(syndrome(rs, g));
    const auto companion = cf_from_f(g, k);
    const auto S = F.elements();
    if (!companion) {
        v.is_codeword = true;
        v.witness = std::vector<Elem>(S.begin(), S.begin() + static_cast<std::ptrdiff_t>(k));
        return v;
    }
    v.witness = first_zero_subset(*companion, S);
    v.is_deep_hole = !v.witness;
    return v;
}

/// Oracle: the extended matrix is MDS (all C(q+1, k) minors nonzero).
inline bool is_deep_hole_by_minors(const RSSpec& rs, const UniPoly& f) {
    return is_mds(rs.field(), extended_matrix(rs, reduce_mod_qx(f))).mds;
}

inline nlohmann::json to_json(const DeepHoleVerdict& v) {
    nlohmann::json j;
    j["deep_hole"] = v.is_deep_hole;
    j["codeword"] = v.is_codeword;
    j["degree"] = v.f_degree ? nlohmann::json(*v.f_degree) : nlohmann::json(nullptr);
    j["sr_form"] = v.sr_form;
    nlohmann::json w = nlohmann::json::array();
    if (v.witness)
        for (auto e : *v.witness) w.push_back(e.v);
    j["witness"] = v.witness ? w : nlohmann::json(nullptr);
    return j;
}

}  // namespace symhyp

#endif  // SYMHYP_RS_HPP
