#pragma once

// Closed-form counts for A^l, C^l, P^l and the free generators, and exact
// checks of the polynomial and binomial-sum identities behind them.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gfwords/error.hpp"

namespace gfwords {

using BigInt = boost::multiprecision::cpp_int;

/// Polynomial with arbitrary-precision integer coefficients, index = degree.
/// Canonical form has no trailing zero coefficients; zero is the empty vector.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { normalize(); }

    static IntPolynomial constant(BigInt v) { return IntPolynomial({std::move(v)}); }
    /// x + a
    static IntPolynomial linear(BigInt a) { return IntPolynomial({std::move(a), BigInt(1)}); }
    static IntPolynomial monomial(std::size_t degree, BigInt coeff = 1) {
        std::vector<BigInt> c(degree + 1);
        c[degree] = std::move(coeff);
        return IntPolynomial(std::move(c));
    }

    const std::vector<BigInt>& coeffs() const noexcept { return c_; }
    bool is_zero() const noexcept { return c_.empty(); }
    /// -1 for the zero polynomial.
    long degree() const noexcept { return long(c_.size()) - 1; }

    BigInt evaluate(const BigInt& x) const {
        BigInt r = 0;
        for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
        return r;
    }

    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
        std::vector<BigInt> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return IntPolynomial(std::move(r));
    }
    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
        std::vector<BigInt> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
        return IntPolynomial(std::move(r));
    }
    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<BigInt> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return IntPolynomial(std::move(r));
    }
    friend IntPolynomial operator*(const BigInt& s, const IntPolynomial& a) {
        return IntPolynomial::constant(s) * a;
    }

    IntPolynomial pow(std::size_t e) const {
        IntPolynomial r = constant(1), base = *this;
        while (e) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

    std::string to_string() const {
        if (c_.empty()) return "0";
        std::string s;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i] == 0) continue;
            const bool neg = c_[i] < 0;
            const BigInt mag = neg ? BigInt(-c_[i]) : c_[i];
            if (s.empty()) {
                if (neg) s += '-';
            } else {
                s += neg ? " - " : " + ";
            }
            if (mag != 1 || i == 0) s += mag.str();
            if (i >= 1) s += 'x';
            if (i >= 2) s += '^' + std::to_string(i);
        }
        return s;
    }

private:
    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<BigInt> c_;
};

inline std::ostream& operator<<(std::ostream& os, const IntPolynomial& p) { return os << p.to_string(); }

/// C(n, k); zero outside 0 <= k <= n.
inline BigInt binomial(long n, long k) {
    if (n < 0 || k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

inline BigInt big_pow(const BigInt& b, std::size_t e) {
    BigInt r = 1;
    for (std::size_t i = 0; i < e; ++i) r *= b;
    return r;
}

struct ClassCounts {
    BigInt a;
    BigInt c;
};

/// |A^l| = (q^l - (-1)^l)/(q+1), |C^l| = (q^(l+1) + (-1)^l)/(q+1).
inline ClassCounts count_formula(std::uint64_t q, std::size_t l) {
    if (q < 2) throw Error(Errc::BadRange, "q must be >= 2");
    const BigInt sign = (l % 2 == 0) ? 1 : -1;
    const BigInt qq = q;
    const BigInt num_a = big_pow(qq, l) - sign;
    const BigInt num_c = big_pow(qq, l + 1) + sign;
    if (num_a % (qq + 1) != 0 || num_c % (qq + 1) != 0)
        throw std::logic_error("count_formula: numerator not divisible by q+1");
    return {num_a / (qq + 1), num_c / (qq + 1)};
}

/// |P^l| = (q-1)^(l-1) for l >= 1.
inline BigInt prime_count_formula(std::uint64_t q, std::size_t l) {
    if (q < 2) throw Error(Errc::BadRange, "q must be >= 2");
    if (l < 1) throw Error(Errc::BadDegree, "primes have length >= 1");
    return big_pow(BigInt(q - 1), l - 1);
}

/// q (q-1)^(l-2) free generators in degree l >= 2.
inline BigInt generator_count(std::uint64_t q, std::size_t l) {
    if (q < 2) throw Error(Errc::BadRange, "q must be >= 2");
    if (l < 2) throw Error(Errc::BadDegree, "generators exist in degree >= 2");
    return BigInt(q) * big_pow(BigInt(q - 1), l - 2);
}

struct PolynomialIdentity {
    IntPolynomial lhs;
    IntPolynomial rhs;
    bool equal = false;
};

/// lhs = (x+1) sum_{k=0}^{floor(l/2)} C(l-k,k) x^k (x-1)^(l-2k),
/// rhs = x^(l+1) + (-1)^l, both expanded exactly.
inline PolynomialIdentity polynomial_identity_check(std::size_t l) {
    const IntPolynomial x = IntPolynomial::monomial(1);
    const IntPolynomial xm1 = IntPolynomial::linear(-1);
    IntPolynomial sum;
    for (std::size_t k = 0; 2 * k <= l; ++k)
        sum = sum + binomial(long(l - k), long(k)) * (x.pow(k) * xm1.pow(l - 2 * k));
    PolynomialIdentity out;
    out.lhs = IntPolynomial::linear(1) * sum;
    out.rhs = IntPolynomial::monomial(l + 1) + IntPolynomial::constant(l % 2 == 0 ? 1 : -1);
    out.equal = out.lhs == out.rhs;
    return out;
}

/// sum_{s=0}^{k} C(l-s, s) C(l-2s, k-s) (-1)^s, which should be 1.
inline BigInt binomial_identity_check(std::size_t l, std::size_t k) {
    if (k > l) throw Error(Errc::BadRange, "need 0 <= k <= l");
    BigInt sum = 0;
    for (std::size_t s = 0; s <= k; ++s) {
        const BigInt term = binomial(long(l) - long(s), long(s)) *
                            binomial(long(l) - 2 * long(s), long(k) - long(s));
        if (s % 2 == 0) sum += term;
        else sum -= term;
    }
    return sum;
}

} // namespace gfwords
