#ifndef SYMHYP_GF_HPP
#define SYMHYP_GF_HPP

// Finite fields F_q, q = p^m, with a canonical element numbering.
//
// An element is stored as its index in [0, q): the base-p digits of the
// index are the coefficients (low degree first) of its representative
// polynomial modulo the field's defining polynomial. Index 0 is zero and
// index 1 is one. Multiplication goes through log/antilog tables built
// from the smallest primitive element.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace symhyp::gf {

inline constexpr std::uint64_t kDefaultMaxOrder = std::uint64_t{1} << 16;

/// A field element, identified by its canonical index.
struct Elem {
    std::uint32_t v = 0;

    constexpr Elem() = default;
    constexpr explicit Elem(std::uint32_t value) : v(value) {}

    friend constexpr bool operator==(Elem, Elem) = default;
    friend constexpr auto operator<=>(Elem, Elem) = default;
};

namespace detail {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Dense polynomials over F_p, coefficients low degree first. Only used while
// building tables, so nothing here is tuned.
using PrimePoly = std::vector<std::uint32_t>;

inline void trim(PrimePoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p) {
    // p is small; Fermat is fine.
    std::uint64_t r = 1, b = a % p;
    for (std::uint32_t e = p - 2; e; e >>= 1) {
        if (e & 1u) r = r * b % p;
        b = b * b % p;
    }
    return static_cast<std::uint32_t>(r);
}

/// Remainder of a modulo a nonzero b over F_p.
inline PrimePoly poly_mod(PrimePoly a, PrimePoly b, std::uint32_t p) {
    trim(a);
    trim(b);
    if (b.empty()) throw std::logic_error("poly_mod: division by zero polynomial");
    const std::uint32_t lead_inv = inv_mod_p(b.back(), p);
    while (a.size() >= b.size()) {
        const std::uint64_t factor = std::uint64_t{a.back()} * lead_inv % p;
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) {
            const std::uint64_t sub = factor * b[i] % p;
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
        }
        trim(a);
    }
    return a;
}

/// True iff the monic polynomial `f` (degree m) has no monic factor of degree 1..m/2.
inline bool is_irreducible(const PrimePoly& f, std::uint32_t p) {
    const std::size_t m = f.size() - 1;
    for (std::size_t d = 1; d <= m / 2; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t code = 0; code < count; ++code) {
            PrimePoly g(d + 1, 0);
            std::uint64_t c = code;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = static_cast<std::uint32_t>(c % p);
                c /= p;
            }
            g[d] = 1;
            if (poly_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

struct Tables {
    std::uint32_t p = 0;
    std::uint32_t m = 0;
    std::uint32_t q = 0;
    PrimePoly modulus;                   // monic, degree m, low degree first
    std::uint32_t generator = 0;         // index of the primitive element used for logs
    std::vector<std::uint32_t> log;      // log[0] unused
    std::vector<std::uint32_t> exp;      // length 2(q-1)
    std::vector<std::uint32_t> neg;
    std::vector<std::uint16_t> add;      // q*q table when q <= kAddTableMax, else empty
    std::vector<std::uint32_t> pow_p;    // p^i for i < m

    static constexpr std::uint32_t kAddTableMax = 256;

    [[nodiscard]] std::uint32_t add_digits(std::uint32_t a, std::uint32_t b) const {
        std::uint32_t r = 0;
        for (std::uint32_t i = 0; i < m; ++i) {
            const std::uint32_t da = a % p, db = b % p;
            r += ((da + db) % p) * pow_p[i];
            a /= p;
            b /= p;
        }
        return r;
    }

    [[nodiscard]] std::uint32_t neg_digits(std::uint32_t a) const {
        std::uint32_t r = 0;
        for (std::uint32_t i = 0; i < m; ++i) {
            const std::uint32_t da = a % p;
            r += ((p - da) % p) * pow_p[i];
            a /= p;
        }
        return r;
    }

    // Schoolbook product of representatives reduced by the modulus.
    [[nodiscard]] std::uint32_t mul_slow(std::uint32_t a, std::uint32_t b) const {
        std::vector<std::uint64_t> prod(2 * m, 0);
        std::vector<std::uint32_t> da(m), db(m);
        for (std::uint32_t i = 0; i < m; ++i) {
            da[i] = a % p;
            db[i] = b % p;
            a /= p;
            b /= p;
        }
        for (std::uint32_t i = 0; i < m; ++i)
            for (std::uint32_t j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{da[i]} * db[j]) % p;
        for (std::size_t d = 2 * m; d-- > m;) {
            const std::uint64_t c = prod[d];
            if (c == 0) continue;
            prod[d] = 0;
            // x^m = -(modulus[0] + ... + modulus[m-1] x^{m-1})
            for (std::uint32_t i = 0; i < m; ++i)
                prod[d - m + i] = (prod[d - m + i] + (p - c) * modulus[i]) % p;
        }
        std::uint32_t r = 0;
        for (std::uint32_t i = 0; i < m; ++i) r += static_cast<std::uint32_t>(prod[i]) * pow_p[i];
        return r;
    }
};

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) out.push_back(n);
    return out;
}

inline std::shared_ptr<const Tables> build_tables(std::uint32_t p, std::uint32_t m) {
    auto t = std::make_shared<Tables>();
    t->p = p;
    t->m = m;
    t->pow_p.resize(m);
    std::uint32_t q = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        t->pow_p[i] = q;
        q *= p;
    }
    t->q = q;

    // Smallest monic irreducible of degree m, ordered by the integer whose
    // base-p digits are the non-leading coefficients (low degree = low digit).
    const std::uint32_t candidates = q;
    bool found = false;
    for (std::uint32_t code = 0; code < candidates && !found; ++code) {
        PrimePoly f(m + 1, 0);
        std::uint32_t c = code;
        for (std::uint32_t i = 0; i < m; ++i) {
            f[i] = c % p;
            c /= p;
        }
        f[m] = 1;
        if (m == 1 || is_irreducible(f, p)) {
            t->modulus = std::move(f);
            found = true;
        }
    }
    if (!found) throw std::logic_error("gf: no irreducible modulus found (internal error)");

    t->neg.resize(q);
    for (std::uint32_t a = 0; a < q; ++a) t->neg[a] = t->neg_digits(a);
    if (q <= Tables::kAddTableMax) {
        t->add.resize(std::size_t{q} * q);
        for (std::uint32_t a = 0; a < q; ++a)
            for (std::uint32_t b = 0; b < q; ++b)
                t->add[std::size_t{a} * q + b] = static_cast<std::uint16_t>(t->add_digits(a, b));
    }

    auto mul = [&](std::uint32_t a, std::uint32_t b) {
        if (m == 1) return static_cast<std::uint32_t>(std::uint64_t{a} * b % p);
        return t->mul_slow(a, b);
    };
    auto power = [&](std::uint32_t a, std::uint64_t e) {
        std::uint32_t r = 1;
        while (e) {
            if (e & 1u) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    };

    const std::uint32_t order = q - 1;
    t->log.assign(q, 0);
    t->exp.assign(order == 0 ? 1 : 2 * std::size_t{order}, 0);
    if (q == 2) {
        t->generator = 1;
        t->exp = {1, 1};
        return t;
    }
    const auto factors = prime_factors(order);
    for (std::uint32_t g = 2; g < q; ++g) {
        bool primitive = true;
        for (auto r : factors)
            if (power(g, order / r) == 1) {
                primitive = false;
                break;
            }
        if (primitive) {
            t->generator = g;
            break;
        }
    }
    if (t->generator == 0) throw std::logic_error("gf: no primitive element (internal error)");
    std::uint32_t x = 1;
    for (std::uint32_t i = 0; i < 2 * order; ++i) {
        t->exp[i] = x;
        if (i < order) t->log[x] = i;
        x = mul(x, t->generator);
    }
    return t;
}

}  // namespace detail

/// Handle to an immutable field table. Copies share the table.
class Field {
  public:
    Field() = default;

    /// Builds F_{p^m}. Throws std::invalid_argument for a non-prime p, m == 0
    /// or an order above `max_order`.
    static Field make(std::uint64_t p, std::uint64_t m, std::uint64_t max_order = kDefaultMaxOrder) {
        if (!detail::is_prime(p)) throw std::invalid_argument("gf: characteristic " + std::to_string(p) + " is not prime");
        if (m == 0) throw std::invalid_argument("gf: extension degree must be >= 1");
        const std::uint64_t ceiling = std::min(max_order, kDefaultMaxOrder);
        std::uint64_t q = 1;
        for (std::uint64_t i = 0; i < m; ++i) {
            q *= p;
            if (q > ceiling)
                throw std::invalid_argument("gf: order " + std::to_string(p) + "^" + std::to_string(m) +
                                            " exceeds ceiling " + std::to_string(ceiling));
        }
        Field f;
        f.t_ = detail::build_tables(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(m));
        return f;
    }

    /// Process-wide cache keyed on (p, m); tables are built once.
    static Field cached(std::uint64_t p, std::uint64_t m) {
        static std::mutex mu;
        static std::map<std::pair<std::uint64_t, std::uint64_t>, Field> cache;
        std::lock_guard lock(mu);
        auto it = cache.find({p, m});
        if (it != cache.end()) return it->second;
        Field f = make(p, m);
        cache.emplace(std::make_pair(p, m), f);
        return f;
    }

    [[nodiscard]] bool valid() const noexcept { return t_ != nullptr; }
    [[nodiscard]] std::uint32_t p() const noexcept { return t_->p; }
    [[nodiscard]] std::uint32_t m() const noexcept { return t_->m; }
    [[nodiscard]] std::uint32_t q() const noexcept { return t_->q; }

    /// Defining polynomial, low degree first, including the leading 1.
    [[nodiscard]] const std::vector<std::uint32_t>& modulus() const noexcept { return t_->modulus; }
    [[nodiscard]] Elem primitive() const noexcept { return Elem{t_->generator}; }

    [[nodiscard]] static constexpr Elem zero() noexcept { return Elem{0}; }
    [[nodiscard]] static constexpr Elem one() noexcept { return Elem{1}; }

    /// Element with canonical index `i`; throws std::out_of_range if i >= q.
    [[nodiscard]] Elem at(std::uint64_t i) const {
        if (i >= t_->q) throw std::out_of_range("gf: index " + std::to_string(i) + " not in F_" + std::to_string(t_->q));
        return Elem{static_cast<std::uint32_t>(i)};
    }

    [[nodiscard]] bool contains(Elem a) const noexcept { return a.v < t_->q; }

    /// The image of the integer n under Z -> F_p -> F_q.
    [[nodiscard]] Elem from_int(std::int64_t n) const noexcept {
        const std::int64_t p = t_->p;
        return Elem{static_cast<std::uint32_t>(((n % p) + p) % p)};
    }

    /// All q elements in canonical index order.
    [[nodiscard]] std::vector<Elem> elements() const {
        std::vector<Elem> out(t_->q);
        for (std::uint32_t i = 0; i < t_->q; ++i) out[i] = Elem{i};
        return out;
    }

    /// Base-p digits of `a`, low degree first (length m).
    [[nodiscard]] std::vector<std::uint32_t> digits(Elem a) const {
        std::vector<std::uint32_t> d(t_->m);
        std::uint32_t v = a.v;
        for (auto& x : d) {
            x = v % t_->p;
            v /= t_->p;
        }
        return d;
    }

    [[nodiscard]] Elem add(Elem a, Elem b) const noexcept {
        if (t_->m == 1) {
            const std::uint32_t s = a.v + b.v;
            return Elem{s >= t_->p ? s - t_->p : s};
        }
        if (!t_->add.empty()) return Elem{t_->add[std::size_t{a.v} * t_->q + b.v]};
        if (t_->p == 2) return Elem{a.v ^ b.v};
        return Elem{t_->add_digits(a.v, b.v)};
    }
    [[nodiscard]] Elem neg(Elem a) const noexcept { return Elem{t_->neg[a.v]}; }
    [[nodiscard]] Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }

    [[nodiscard]] Elem mul(Elem a, Elem b) const noexcept {
        if (a.v == 0 || b.v == 0) return Elem{0};
        return Elem{t_->exp[t_->log[a.v] + t_->log[b.v]]};
    }

    /// Throws std::domain_error on zero.
    [[nodiscard]] Elem inv(Elem a) const {
        if (a.v == 0) throw std::domain_error("gf: inverse of zero");
        const std::uint32_t order = t_->q - 1;
        return Elem{t_->exp[(order - t_->log[a.v]) % order]};
    }

    [[nodiscard]] Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    /// a^e; a negative exponent requires a != 0. 0^0 = 1.
    [[nodiscard]] Elem pow(Elem a, std::int64_t e) const {
        if (e == 0) return one();
        if (a.v == 0) {
            if (e < 0) throw std::domain_error("gf: negative power of zero");
            return zero();
        }
        const std::int64_t order = t_->q - 1;
        std::int64_t r = (static_cast<std::int64_t>(t_->log[a.v]) * (e % order)) % order;
        if (r < 0) r += order;
        return Elem{t_->exp[static_cast<std::size_t>(r)]};
    }

    /// Square-and-multiply over `mul`, independent of the log tables' exponent folding.
    [[nodiscard]] Elem pow_by_squaring(Elem a, std::uint64_t e) const noexcept {
        Elem r = one();
        while (e) {
            if (e & 1u) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    /// `{"p":..,"m":..,"modulus":[..]}`, coefficients low degree first.
    [[nodiscard]] nlohmann::json descriptor() const {
        return nlohmann::json{{"p", t_->p}, {"m", t_->m}, {"modulus", t_->modulus}};
    }

    [[nodiscard]] std::string name() const {
        return "F_" + std::to_string(t_->q);
    }

    /// Fields compare equal when they have the same (p, m); construction is deterministic.
    friend bool operator==(const Field& a, const Field& b) noexcept {
        if (a.t_ == b.t_) return true;
        if (!a.t_ || !b.t_) return false;
        return a.t_->p == b.t_->p && a.t_->m == b.t_->m;
    }

  private:
    std::shared_ptr<const detail::Tables> t_;
};

/// Field element bound to its field; arithmetic checks that operands agree.
class Element {
  public:
    Element(Field f, Elem e) : f_(std::move(f)), e_(e) {
        if (!f_.contains(e_)) throw std::out_of_range("gf: element index out of range");
    }
    Element(Field f, std::uint64_t index) : Element(f, f.at(index)) {}

    [[nodiscard]] const Field& field() const noexcept { return f_; }
    [[nodiscard]] Elem raw() const noexcept { return e_; }
    [[nodiscard]] std::uint32_t index() const noexcept { return e_.v; }

    friend Element operator+(const Element& a, const Element& b) { return {a.f_, a.f_.add(a.e_, same(a, b).e_)}; }
    friend Element operator-(const Element& a, const Element& b) { return {a.f_, a.f_.sub(a.e_, same(a, b).e_)}; }
    friend Element operator*(const Element& a, const Element& b) { return {a.f_, a.f_.mul(a.e_, same(a, b).e_)}; }
    friend Element operator/(const Element& a, const Element& b) { return {a.f_, a.f_.div(a.e_, same(a, b).e_)}; }
    Element operator-() const { return {f_, f_.neg(e_)}; }

    [[nodiscard]] Element inv() const { return {f_, f_.inv(e_)}; }
    [[nodiscard]] Element pow(std::int64_t e) const { return {f_, f_.pow(e_, e)}; }

    friend bool operator==(const Element& a, const Element& b) { return a.f_ == b.f_ && a.e_ == b.e_; }

  private:
    static const Element& same(const Element& a, const Element& b) {
        if (!(a.f_ == b.f_)) throw std::invalid_argument("gf: operands from different fields");
        return b;
    }

    Field f_;
    Elem e_;
};

}  // namespace symhyp::gf

#endif  // SYMHYP_GF_HPP
