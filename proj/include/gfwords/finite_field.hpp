#pragma once

// Exact arithmetic in GF(p^d).
//
// An element is stored as an index in [0, q). The little-endian base-p digits
// of the index are the coefficients of the element in the polynomial basis
// 1, x, ..., x^(d-1). Index 0 is zero and index 1 is one in every field.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gfwords/error.hpp"

namespace gfwords {

using Elem = std::uint32_t;

/// Largest field order the library will tabulate.
inline constexpr std::uint32_t kMaxFieldOrder = 1u << 16;

namespace detail {

using Poly = std::vector<std::uint32_t>; // little-endian coefficients mod p

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t k = 2; k * k <= n; ++k)
        if (n % k == 0) return false;
    return true;
}

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo the monic polynomial m.
inline Poly poly_rem(Poly a, const Poly& m, std::uint32_t p) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    while (a.size() > dm) {
        const std::uint32_t lead = a.back();
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i) {
            const std::uint64_t sub = std::uint64_t(lead) * m[i] % p;
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
        }
        trim(a);
    }
    return a;
}

inline Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t(a[i]) * b[j]) % p);
    trim(r);
    return r;
}

// Monic polynomial of degree `degree` whose lower coefficients are the
// little-endian base-p digits of `lower`.
inline Poly monic_from_index(std::uint64_t lower, std::uint32_t degree, std::uint32_t p) {
    Poly g(degree + 1, 0);
    for (std::uint32_t i = 0; i < degree; ++i) {
        g[i] = static_cast<std::uint32_t>(lower % p);
        lower /= p;
    }
    g[degree] = 1;
    return g;
}

inline std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

/// Brute force: no monic factor of degree 1..deg/2 divides the polynomial.
inline bool is_irreducible(const Poly& m, std::uint32_t p) {
    const auto deg = static_cast<std::uint32_t>(m.size() - 1);
    for (std::uint32_t k = 1; 2 * k <= deg; ++k) {
        const std::uint64_t count = ipow(p, k);
        for (std::uint64_t lower = 0; lower < count; ++lower)
            if (poly_rem(m, monic_from_index(lower, k, p), p).empty()) return false;
    }
    return true;
}

struct FieldData {
    std::uint32_t p = 0;
    std::uint32_t d = 0;
    std::uint32_t q = 0;
    Poly modulus;
    std::vector<Elem> neg;
    std::vector<Elem> inv;
    std::vector<Elem> exp; // exp[i] = g^i, length 2(q-1) so log sums need no reduction
    std::vector<std::uint32_t> log;
    std::vector<Elem> add; // q*q table, only when q <= kAddTableLimit
};

inline constexpr std::uint32_t kAddTableLimit = 256;

} // namespace detail

/// The field k = GF(p^d). Cheap to copy; all copies share one set of tables.
class Field {
public:
    /// Builds GF(p^d). Without a modulus and for d >= 2 the default from
    /// find_irreducible is used. For d = 1 the modulus is ignored.
    static Field make(std::uint32_t p, std::uint32_t d,
                      std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

    /// Parses "p" or "p^d", with an optional "c0,...,cd" modulus.
    static Field parse(std::string_view designation, std::string_view modulus = {});

    std::uint32_t p() const noexcept { return t_->p; }
    std::uint32_t d() const noexcept { return t_->d; }
    std::uint32_t q() const noexcept { return t_->q; }
    const std::vector<std::uint32_t>& modulus() const noexcept { return t_->modulus; }
    std::string designation() const;

    bool contains(Elem a) const noexcept { return a < t_->q; }
    void check(Elem a) const {
        if (a >= t_->q)
            throw Error(Errc::BadIndex, "element index " + std::to_string(a) +
                                            " out of range for q=" + std::to_string(t_->q));
    }

    static constexpr Elem zero() noexcept { return 0; }
    static constexpr Elem one() noexcept { return 1; }
    Elem minus_one() const noexcept { return t_->neg[1]; }

    Elem add(Elem a, Elem b) const noexcept {
        if (!t_->add.empty()) return t_->add[std::size_t(a) * t_->q + b];
        return add_digits(a, b);
    }
    Elem neg(Elem a) const noexcept { return t_->neg[a]; }
    Elem sub(Elem a, Elem b) const noexcept { return add(a, t_->neg[b]); }
    Elem mul(Elem a, Elem b) const noexcept {
        if (a == 0 || b == 0) return 0;
        return t_->exp[t_->log[a] + t_->log[b]];
    }
    /// Throws DivisionByZero for a = 0.
    Elem inv(Elem a) const {
        if (a == 0) throw Error(Errc::DivisionByZero, "inverse of zero");
        return t_->inv[a];
    }
    /// Inverse without the zero check; a must be nonzero.
    Elem inv_unchecked(Elem a) const noexcept { return t_->inv[a]; }
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    /// Coefficients (c0..c_{d-1}) of an element in the polynomial basis.
    std::vector<std::uint32_t> digits(Elem a) const;
    Elem from_digits(std::span<const std::uint32_t> coeffs) const;

    friend bool operator==(const Field& x, const Field& y) noexcept {
        return x.t_ == y.t_ ||
               (x.t_->p == y.t_->p && x.t_->d == y.t_->d && x.t_->modulus == y.t_->modulus);
    }

private:
    explicit Field(std::shared_ptr<const detail::FieldData> t) : t_(std::move(t)) {}
    Elem add_digits(Elem a, Elem b) const noexcept;

    std::shared_ptr<const detail::FieldData> t_;
};

/// Default modulus for GF(p^d): the monic irreducible of degree d whose
/// coefficient vector (c_{d-1}, ..., c0), read as a base-p integer, is minimal.
inline std::vector<std::uint32_t> find_irreducible(std::uint32_t p, std::uint32_t d) {
    if (!detail::is_prime(p)) throw Error(Errc::NonPrimeP, std::to_string(p) + " is not prime");
    if (d < 1) throw Error(Errc::DegreeMismatch, "degree must be >= 1");
    const std::uint64_t count = detail::ipow(p, d);
    for (std::uint64_t lower = 0; lower < count; ++lower) {
        auto g = detail::monic_from_index(lower, d, p);
        if (detail::is_irreducible(g, p)) return g;
    }
    // Irreducibles exist in every degree.
    throw Error(Errc::ReducibleModulus, "no irreducible found");
}

// ---------------------------------------------------------------------------

inline Field Field::make(std::uint32_t p, std::uint32_t d,
                         std::optional<std::vector<std::uint32_t>> modulus) {
    if (!detail::is_prime(p)) throw Error(Errc::NonPrimeP, std::to_string(p) + " is not prime");
    if (d < 1) throw Error(Errc::DegreeMismatch, "degree must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < d; ++i) {
        q *= p;
        if (q > kMaxFieldOrder)
            throw Error(Errc::UnsupportedField,
                        "field order exceeds " + std::to_string(kMaxFieldOrder));
    }

    auto t = std::make_shared<detail::FieldData>();
    t->p = p;
    t->d = d;
    t->q = static_cast<std::uint32_t>(q);

    if (modulus) {
        auto m = *modulus;
        if (m.size() != std::size_t(d) + 1 || m.back() != 1)
            throw Error(Errc::DegreeMismatch,
                        "modulus must be monic of degree " + std::to_string(d));
        for (auto c : m)
            if (c >= p) throw Error(Errc::DegreeMismatch, "modulus coefficient >= p");
        if (!detail::is_irreducible(m, p))
            throw Error(Errc::ReducibleModulus, "modulus is reducible over Z/p");
        t->modulus = std::move(m);
    } else if (d >= 2) {
        t->modulus = find_irreducible(p, d);
    } else {
        t->modulus = {0, 1};
    }

    const std::uint32_t qq = t->q;
    auto to_poly = [&](Elem a) {
        detail::Poly r(d);
        for (std::uint32_t i = 0; i < d; ++i) {
            r[i] = a % p;
            a /= p;
        }
        detail::trim(r);
        return r;
    };
    auto from_poly = [&](const detail::Poly& r) {
        Elem a = 0;
        for (std::size_t i = r.size(); i-- > 0;) a = a * p + r[i];
        return a;
    };
    auto mulmod = [&](Elem a, Elem b) {
        if (d == 1) return static_cast<Elem>(std::uint64_t(a) * b % p);
        return from_poly(detail::poly_rem(detail::poly_mul(to_poly(a), to_poly(b), p),
                                          t->modulus, p));
    };

    t->neg.resize(qq);
    for (Elem a = 0; a < qq; ++a) {
        detail::Poly r = to_poly(a);
        for (auto& c : r) c = (p - c) % p;
        t->neg[a] = from_poly(r);
    }

    // Find a generator of the multiplicative group.
    Elem gen = 1;
    if (qq > 2) {
        for (Elem g = 2; g < qq; ++g) {
            std::uint32_t order = 1;
            for (Elem x = g; x != 1; x = mulmod(x, g)) ++order;
            if (order == qq - 1) {
                gen = g;
                break;
            }
        }
    }
    t->exp.resize(2 * std::size_t(qq - 1));
    t->log.assign(qq, 0);
    Elem x = 1;
    for (std::uint32_t i = 0; i < qq - 1; ++i) {
        t->exp[i] = t->exp[i + qq - 1] = x;
        t->log[x] = i;
        x = mulmod(x, gen);
    }
    t->inv.assign(qq, 0);
    for (Elem a = 1; a < qq; ++a) t->inv[a] = t->exp[(qq - 1 - t->log[a]) % (qq - 1)];

    Field f(t);
    if (qq <= detail::kAddTableLimit) {
        t->add.resize(std::size_t(qq) * qq);
        for (Elem a = 0; a < qq; ++a)
            for (Elem b = 0; b < qq; ++b) t->add[std::size_t(a) * qq + b] = f.add_digits(a, b);
    }
    return f;
}

inline Elem Field::add_digits(Elem a, Elem b) const noexcept {
    const std::uint32_t p = t_->p;
    if (p == 2) return a ^ b;
    Elem r = 0, scale = 1;
    for (std::uint32_t i = 0; i < t_->d; ++i) {
        r += ((a % p + b % p) % p) * scale;
        a /= p;
        b /= p;
        scale *= p;
    }
    return r;
}

inline std::vector<std::uint32_t> Field::digits(Elem a) const {
    std::vector<std::uint32_t> r(t_->d);
    for (auto& c : r) {
        c = a % t_->p;
        a /= t_->p;
    }
    return r;
}

inline Elem Field::from_digits(std::span<const std::uint32_t> coeffs) const {
    if (coeffs.size() != t_->d) throw Error(Errc::DegreeMismatch, "wrong number of coefficients");
    Elem a = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        if (coeffs[i] >= t_->p) throw Error(Errc::BadIndex, "coefficient >= p");
        a = a * t_->p + coeffs[i];
    }
    return a;
}

inline std::string Field::designation() const {
    if (t_->d == 1) return std::to_string(t_->p);
    return std::to_string(t_->p) + "^" + std::to_string(t_->d);
}

namespace detail {

inline std::uint32_t parse_uint(std::string_view s, std::string_view what) {
    if (s.empty() || s.size() > 9) throw Error(Errc::ParseError, "bad " + std::string(what));
    std::uint32_t v = 0;
    for (char ch : s) {
        if (ch < '0' || ch > '9')
            throw Error(Errc::ParseError, "bad " + std::string(what) + " '" + std::string(s) + "'");
        v = v * 10 + std::uint32_t(ch - '0');
    }
    return v;
}

inline std::vector<std::uint32_t> parse_uint_list(std::string_view s, std::string_view what) {
    std::vector<std::uint32_t> out;
    if (s.empty()) return out;
    std::size_t start = 0;
    while (true) {
        const auto comma = s.find(',', start);
        auto tok = s.substr(start, comma == std::string_view::npos ? s.npos : comma - start);
        while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
        while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
        out.push_back(parse_uint(tok, what));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

} // namespace detail

inline Field Field::parse(std::string_view designation, std::string_view modulus) {
    std::uint32_t p = 0, d = 1;
    if (const auto caret = designation.find('^'); caret != std::string_view::npos) {
        p = detail::parse_uint(designation.substr(0, caret), "field");
        d = detail::parse_uint(designation.substr(caret + 1), "field");
    } else {
        p = detail::parse_uint(designation, "field");
    }
    std::optional<std::vector<std::uint32_t>> m;
    if (!modulus.empty()) m = detail::parse_uint_list(modulus, "modulus");
    return make(p, d, std::move(m));
}

} // namespace gfwords
