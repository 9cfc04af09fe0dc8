#pragma once

// SL2(k), the generator map pi, and the action on the projective line P^1(k).

#include <array>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gfwords/finite_field.hpp"

namespace gfwords {

using Word = std::vector<Elem>;

/// A 2x2 matrix of determinant 1 over a finite field, row-major [[a,b],[c,d]].
class Mat2 {
public:
    /// Throws NotUnimodular unless ad - bc = 1.
    static Mat2 make(const Field& f, Elem a, Elem b, Elem c, Elem d) {
        for (Elem e : {a, b, c, d}) f.check(e);
        if (f.sub(f.mul(a, d), f.mul(b, c)) != Field::one())
            throw Error(Errc::NotUnimodular, "determinant is not 1");
        return Mat2(f, a, b, c, d);
    }
    static Mat2 identity(const Field& f) { return Mat2(f, 1, 0, 0, 1); }
    static Mat2 minus_identity(const Field& f) {
        const Elem m = f.minus_one();
        return Mat2(f, m, 0, 0, m);
    }

    const Field& field() const noexcept { return field_; }
    Elem a() const noexcept { return e_[0]; }
    Elem b() const noexcept { return e_[1]; }
    Elem c() const noexcept { return e_[2]; }
    Elem d() const noexcept { return e_[3]; }
    const std::array<Elem, 4>& entries() const noexcept { return e_; }

    bool is_scalar_unit() const noexcept {
        return e_[1] == 0 && e_[2] == 0 && e_[0] == e_[3] &&
               (e_[0] == 1 || e_[0] == field_.minus_one());
    }

    friend bool operator==(const Mat2& x, const Mat2& y) noexcept {
        return x.e_ == y.e_ && x.field_ == y.field_;
    }

    // Unchecked constructor for callers that already know det = 1.
    struct Trusted {};
    Mat2(Trusted, const Field& f, Elem a, Elem b, Elem c, Elem d) : Mat2(f, a, b, c, d) {}

private:
    Mat2(const Field& f, Elem a, Elem b, Elem c, Elem d) : field_(f), e_{a, b, c, d} {}

    Field field_;
    std::array<Elem, 4> e_;
};

inline std::ostream& operator<<(std::ostream& os, const Mat2& m) {
    return os << m.a() << ',' << m.b() << ',' << m.c() << ',' << m.d();
}

/// Matrix text format "a,b,c,d".
inline Mat2 parse_mat2(const Field& f, std::string_view text) {
    const auto v = detail::parse_uint_list(text, "matrix");
    if (v.size() != 4) throw Error(Errc::ParseError, "matrix needs 4 entries");
    return Mat2::make(f, v[0], v[1], v[2], v[3]);
}

inline std::string format_mat2(const Mat2& m) {
    return std::to_string(m.a()) + ',' + std::to_string(m.b()) + ',' + std::to_string(m.c()) +
           ',' + std::to_string(m.d());
}

/// The generator [[0,-1],[1,alpha]].
inline Mat2 gen(const Field& f, Elem alpha) {
    f.check(alpha);
    return Mat2(Mat2::Trusted{}, f, 0, f.minus_one(), 1, alpha);
}

inline Mat2 mat_mul(const Mat2& x, const Mat2& y) {
    if (!(x.field() == y.field())) throw Error(Errc::FieldMismatch, "matrices over different fields");
    const Field& f = x.field();
    return Mat2(Mat2::Trusted{}, f, f.add(f.mul(x.a(), y.a()), f.mul(x.b(), y.c())),
                f.add(f.mul(x.a(), y.b()), f.mul(x.b(), y.d())),
                f.add(f.mul(x.c(), y.a()), f.mul(x.d(), y.c())),
                f.add(f.mul(x.c(), y.b()), f.mul(x.d(), y.d())));
}

inline Mat2 operator*(const Mat2& x, const Mat2& y) { return mat_mul(x, y); }

inline Mat2 mat_inv(const Mat2& x) {
    const Field& f = x.field();
    return Mat2(Mat2::Trusted{}, f, x.d(), f.neg(x.b()), f.neg(x.c()), x.a());
}

inline Mat2 mat_pow(Mat2 base, std::uint64_t e) {
    Mat2 r = Mat2::identity(base.field());
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

namespace detail {

// Right-multiplies raw entries by gen(alpha):
// [[a,b],[c,d]] * [[0,-1],[1,x]] = [[b, -a+bx],[d, -c+dx]].
inline void right_mul_gen(const Field& f, std::array<Elem, 4>& m, Elem alpha) noexcept {
    const Elem a = m[0], b = m[1], c = m[2], d = m[3];
    m[0] = b;
    m[1] = f.sub(f.mul(b, alpha), a);
    m[2] = d;
    m[3] = f.sub(f.mul(d, alpha), c);
}

inline std::array<Elem, 4> pi_raw(const Field& f, std::span<const Elem> w) noexcept {
    std::array<Elem, 4> m{1, 0, 0, 1};
    for (Elem x : w) right_mul_gen(f, m, x);
    return m;
}

} // namespace detail

/// pi(alpha_1 ... alpha_l) = gen(alpha_1) ... gen(alpha_l); pi(empty) = I.
inline Mat2 pi(const Field& f, std::span<const Elem> w) {
    for (Elem x : w) f.check(x);
    const auto m = detail::pi_raw(f, w);
    return Mat2(Mat2::Trusted{}, f, m[0], m[1], m[2], m[3]);
}

/// A point of P^1(k): the line L(s) through (1, s), or L(inf) through (0, 1).
class ProjPoint {
public:
    static constexpr ProjPoint infinity() noexcept { return ProjPoint(true, 0); }
    static constexpr ProjPoint slope(Elem s) noexcept { return ProjPoint(false, s); }

    constexpr bool is_infinity() const noexcept { return inf_; }
    /// Meaningful only when !is_infinity().
    constexpr Elem value() const noexcept { return s_; }

    friend constexpr bool operator==(const ProjPoint&, const ProjPoint&) = default;

private:
    constexpr ProjPoint(bool inf, Elem s) noexcept : inf_(inf), s_(inf ? 0 : s) {}
    bool inf_;
    Elem s_;
};

inline std::ostream& operator<<(std::ostream& os, const ProjPoint& pt) {
    if (pt.is_infinity()) return os << "L(inf)";
    return os << "L(" << pt.value() << ')';
}

/// All q + 1 points, L(0) .. L(q-1) then L(inf).
inline std::vector<ProjPoint> projective_line(const Field& f) {
    std::vector<ProjPoint> pts;
    pts.reserve(f.q() + 1);
    for (Elem s = 0; s < f.q(); ++s) pts.push_back(ProjPoint::slope(s));
    pts.push_back(ProjPoint::infinity());
    return pts;
}

inline ProjPoint proj_apply(const Mat2& m, ProjPoint pt) {
    const Field& f = m.field();
    Elem x, y;
    if (pt.is_infinity()) {
        x = m.b();
        y = m.d();
    } else {
        f.check(pt.value());
        x = f.add(m.a(), f.mul(m.b(), pt.value()));
        y = f.add(m.c(), f.mul(m.d(), pt.value()));
    }
    if (x == 0) return ProjPoint::infinity();
    return ProjPoint::slope(f.div(y, x));
}

/// Least t >= 1 with m^t = +-I (the order of m in PSL2).
inline std::uint64_t proj_order(const Mat2& m) {
    // Element orders in PSL2(q) are at most q + 1.
    const std::uint64_t bound = std::uint64_t(m.field().q()) + 1;
    Mat2 power = m;
    for (std::uint64_t t = 1; t <= bound; ++t) {
        if (power.is_scalar_unit()) return t;
        power = power * m;
    }
    throw std::logic_error("proj_order: no order found within q+1");
}

/// Least t >= 1 with m^t = I.
inline std::uint64_t sl2_order(const Mat2& m) {
    const std::uint64_t t = proj_order(m);
    return mat_pow(m, t) == Mat2::identity(m.field()) ? t : 2 * t;
}

/// A word w with pi(w) = m, built from the explicit three-letter product
/// gen((-c-1)/a) gen(-a) gen((b-1)/a) = [[a,b],[c,d]] for a != 0. When a = 0
/// the matrix is first multiplied by gen(0) and gen(0)^-1 is prepended, which
/// is gen(0) in characteristic 2 and gen(0)^3 otherwise.
inline Word decompose(const Mat2& m) {
    const Field& f = m.field();
    if (m.a() != 0) {
        const Elem ainv = f.inv(m.a());
        return {f.mul(f.sub(f.neg(m.c()), 1), ainv), f.neg(m.a()), f.mul(f.sub(m.b(), 1), ainv)};
    }
    Word w(f.p() == 2 ? 1 : 3, Field::zero());
    const Word tail = decompose(gen(f, 0) * m);
    w.insert(w.end(), tail.begin(), tail.end());
    return w;
}

/// Every element of SL2(k), in row-major lexicographic order of entries.
inline std::vector<Mat2> enumerate_sl2(const Field& f) {
    std::vector<Mat2> out;
    const Elem q = f.q();
    out.reserve(std::size_t(q) * (std::size_t(q) * q - 1));
    for (Elem a = 0; a < q; ++a)
        for (Elem b = 0; b < q; ++b)
            for (Elem c = 0; c < q; ++c) {
                if (a != 0) {
                    const Elem d = f.div(f.add(1, f.mul(b, c)), a);
                    out.emplace_back(Mat2::Trusted{}, f, a, b, c, d);
                } else if (f.mul(b, c) == f.minus_one()) {
                    for (Elem d = 0; d < q; ++d) out.emplace_back(Mat2::Trusted{}, f, a, b, c, d);
                }
            }
    return out;
}

} // namespace gfwords
