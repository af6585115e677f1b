#ifndef SYMHYP_POLY_HPP
#define SYMHYP_POLY_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "symhyp/gf.hpp"

namespace symhyp {

using gf::Elem;
using gf::Field;

/// Degree of a polynomial; std::nullopt stands for the degree of the zero
/// polynomial (minus infinity), so `deg == k - 1` is false for zero.
using Degree = std::optional<std::size_t>;

inline std::string degree_string(const Degree& d) { return d ? std::to_string(*d) : std::string("-inf"); }

/// Univariate polynomial over F_q, coefficient of x^i at index i.
/// The coefficient vector never has a trailing zero.
class UniPoly {
  public:
    explicit UniPoly(Field field) : field_(std::move(field)) {}

    UniPoly(Field field, std::vector<Elem> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
        for (auto c : coeffs_)
            if (!field_.contains(c)) throw std::out_of_range("poly: coefficient outside " + field_.name());
        normalize();
    }

    /// c * x^e
    static UniPoly monomial(const Field& field, Elem c, std::size_t e) {
        std::vector<Elem> v(e + 1, Field::zero());
        v[e] = c;
        return UniPoly(field, std::move(v));
    }

    /// Coefficients given as canonical element indices.
    static UniPoly from_indices(const Field& field, std::span<const std::uint64_t> idx) {
        std::vector<Elem> v;
        v.reserve(idx.size());
        for (auto i : idx) v.push_back(field.at(i));
        return UniPoly(field, std::move(v));
    }

    [[nodiscard]] const Field& field() const noexcept { return field_; }
    [[nodiscard]] const std::vector<Elem>& coeffs() const noexcept { return coeffs_; }
    [[nodiscard]] bool is_zero() const noexcept { return coeffs_.empty(); }

    [[nodiscard]] Degree degree() const noexcept {
        if (coeffs_.empty()) return std::nullopt;
        return coeffs_.size() - 1;
    }

    [[nodiscard]] Elem coeff(std::size_t i) const noexcept { return i < coeffs_.size() ? coeffs_[i] : Field::zero(); }

    [[nodiscard]] Elem leading() const noexcept { return coeffs_.empty() ? Field::zero() : coeffs_.back(); }

    /// Horner evaluation. Throws std::out_of_range if x is not an element of this field.
    [[nodiscard]] Elem eval(Elem x) const {
        if (!field_.contains(x)) throw std::out_of_range("poly: evaluation point outside " + field_.name());
        Elem acc = Field::zero();
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = field_.add(field_.mul(acc, x), *it);
        return acc;
    }

    /// Values at every element of the field, in canonical order.
    [[nodiscard]] std::vector<Elem> eval_all() const {
        std::vector<Elem> out(field_.q());
        for (std::uint32_t i = 0; i < field_.q(); ++i) out[i] = eval(Elem{i});
        return out;
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        check_same(a, b);
        std::vector<Elem> v(std::max(a.coeffs_.size(), b.coeffs_.size()), Field::zero());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.field_.add(a.coeff(i), b.coeff(i));
        return UniPoly(a.field_, std::move(v));
    }

    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + b.scaled(a.field_.neg(Field::one())); }

    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        check_same(a, b);
        if (a.is_zero() || b.is_zero()) return UniPoly(a.field_);
        std::vector<Elem> v(a.coeffs_.size() + b.coeffs_.size() - 1, Field::zero());
        const auto& F = a.field_;
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] = F.add(v[i + j], F.mul(a.coeffs_[i], b.coeffs_[j]));
        return UniPoly(F, std::move(v));
    }

    [[nodiscard]] UniPoly scaled(Elem c) const {
        std::vector<Elem> v(coeffs_);
        for (auto& x : v) x = field_.mul(x, c);
        return UniPoly(field_, std::move(v));
    }

    /// Multiplication by x^s.
    [[nodiscard]] UniPoly shifted(std::size_t s) const {
        if (is_zero()) return *this;
        std::vector<Elem> v(s, Field::zero());
        v.insert(v.end(), coeffs_.begin(), coeffs_.end());
        return UniPoly(field_, std::move(v));
    }

    [[nodiscard]] UniPoly pow(std::size_t e) const {
        UniPoly r = monomial(field_, Field::one(), 0), b = *this;
        while (e) {
            if (e & 1u) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.field_ == b.field_ && a.coeffs_ == b.coeffs_; }

    /// Comma-separated coefficient indices, low degree first ("" for zero).
    [[nodiscard]] std::string to_string() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) os << (i ? "," : "") << coeffs_[i].v;
        return os.str();
    }

    [[nodiscard]] std::vector<std::uint32_t> indices() const {
        std::vector<std::uint32_t> v;
        v.reserve(coeffs_.size());
        for (auto c : coeffs_) v.push_back(c.v);
        return v;
    }

  private:
    static void check_same(const UniPoly& a, const UniPoly& b) {
        if (!(a.field_ == b.field_)) throw std::invalid_argument("poly: operands over different fields");
    }

    void normalize() {
        while (!coeffs_.empty() && coeffs_.back() == Field::zero()) coeffs_.pop_back();
    }

    Field field_;
    std::vector<Elem> coeffs_;
};

/// Exponent an x^e folds to on F_q: e itself for e < q, else ((e-1) mod (q-1)) + 1.
inline std::size_t folded_exponent(std::size_t e, std::size_t q) {
    return e < q ? e : ((e - 1) % (q - 1)) + 1;
}

/// The unique polynomial of degree <= q-1 inducing the same function on F_q.
inline UniPoly reduce_mod_qx(const UniPoly& f) {
    const auto& F = f.field();
    const std::size_t q = F.q();
    if (f.coeffs().size() <= q) return f;
    std::vector<Elem> v(q, Field::zero());
    for (std::size_t e = 0; e < f.coeffs().size(); ++e) {
        const std::size_t t = folded_exponent(e, q);
        v[t] = F.add(v[t], f.coeffs()[e]);
    }
    return UniPoly(F, std::move(v));
}

/// Lagrange interpolation through (x_i, y_i); degree < points.size().
/// Throws std::invalid_argument on a repeated abscissa.
inline UniPoly interpolate(const Field& F, std::span<const std::pair<Elem, Elem>> points) {
    const std::size_t n = points.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (points[i].first == points[j].first)
                throw std::invalid_argument("interpolate: duplicate abscissa " + std::to_string(points[i].first.v));
    if (n == 0) return UniPoly(F);

    // master = prod (x - x_i)
    std::vector<Elem> master{Field::one()};
    for (const auto& [x, _] : points) {
        std::vector<Elem> next(master.size() + 1, Field::zero());
        for (std::size_t i = 0; i < master.size(); ++i) {
            next[i + 1] = F.add(next[i + 1], master[i]);
            next[i] = F.sub(next[i], F.mul(master[i], x));
        }
        master = std::move(next);
    }

    std::vector<Elem> acc(n, Field::zero());
    std::vector<Elem> basis(n);
    for (const auto& [xi, yi] : points) {
        // basis = master / (x - xi), synthetic division from the top
        Elem carry = Field::zero();
        for (std::size_t d = n; d-- > 0;) {
            carry = F.add(master[d + 1], F.mul(carry, xi));
            basis[d] = carry;
        }
        Elem denom = Field::zero();
        for (std::size_t d = n; d-- > 0;) denom = F.add(F.mul(denom, xi), basis[d]);
        const Elem scale = F.div(yi, denom);
        for (std::size_t d = 0; d < n; ++d) acc[d] = F.add(acc[d], F.mul(basis[d], scale));
    }
    return UniPoly(F, std::move(acc));
}

/// Parses "c0,c1,..." (canonical element indices). Empty string is the zero polynomial.
inline std::vector<std::uint64_t> parse_index_list(std::string_view text) {
    std::vector<std::uint64_t> out;
    if (text.empty()) return out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string item(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
        if (item.empty() || item.find_first_not_of("0123456789 ") != std::string::npos)
            throw std::invalid_argument("bad index list '" + std::string(text) + "'");
        out.push_back(std::stoull(item));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

}  // namespace symhyp

#endif  // SYMHYP_POLY_HPP
