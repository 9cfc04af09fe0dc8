#pragma once

// Periodic infinite words: the window multiplier t and the admissible window
// lengths.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "gfwords/prime_words.hpp"
#include "gfwords/sl2.hpp"
#include "gfwords/words.hpp"

namespace gfwords {

/// One period of a bi-infinite periodic word, reduced to its minimal period.
struct PeriodicWord {
    Word block;
    std::size_t r = 0;
};

inline PeriodicWord make_periodic(const Field& f, std::span<const Elem> block) {
    if (block.empty()) throw Error(Errc::EmptyBlock, "periodic block must be nonempty");
    check_word(f, block);
    const std::size_t r = detail::minimal_cyclic_period(block);
    return {Word(block.begin(), block.begin() + std::ptrdiff_t(r)), r};
}

/// True iff every factor of length m of the periodic word lies in A. Only r
/// distinct factors exist per length.
inline bool all_windows_in_a(const Field& f, const PeriodicWord& pw, std::size_t m) {
    StreamClassifier sc(f);
    for (std::size_t start = 0; start < pw.r; ++start) {
        sc.reset();
        for (std::size_t j = 0; j < m; ++j) sc.push_unchecked(pw.block[(start + j) % pw.r]);
        if (!sc.in_a()) return false;
    }
    return true;
}

struct WindowReport {
    std::uint64_t t = 0;
    bool verified = false;
    std::vector<std::pair<std::size_t, bool>> checked_lengths; // (m = t'r - 1, all in A), t' = 1..t
};

/// t = projective order of pi(block). The report checks directly that the
/// windows of length tr - 1 lie in A and that no smaller multiplier works.
inline WindowReport window_multiplier(const Field& f, const PeriodicWord& pw) {
    WindowReport rep;
    rep.t = proj_order(pi(f, pw.block));
    bool smaller_works = false;
    bool t_works = false;
    for (std::uint64_t tp = 1; tp <= rep.t; ++tp) {
        const std::size_t m = std::size_t(tp) * pw.r - 1;
        const bool ok = all_windows_in_a(f, pw, m);
        rep.checked_lengths.emplace_back(m, ok);
        if (tp < rep.t) smaller_works = smaller_works || ok;
        else t_works = ok;
    }
    rep.verified = t_works && !smaller_works;
    return rep;
}

/// Every m in [1, bound] such that all length-m factors lie in A, by direct
/// sliding-window classification.
inline std::vector<std::size_t> admissible_window_lengths(const Field& f, const PeriodicWord& pw,
                                                          std::size_t bound) {
    if (bound < 1) throw Error(Errc::BadRange, "bound must be >= 1");
    std::vector<bool> ok(bound + 1, true);
    StreamClassifier sc(f);
    for (std::size_t start = 0; start < pw.r; ++start) {
        sc.reset();
        for (std::size_t m = 1; m <= bound; ++m) {
            sc.push_unchecked(pw.block[(start + m - 1) % pw.r]);
            if (!sc.in_a()) ok[m] = false;
        }
    }
    std::vector<std::size_t> out;
    for (std::size_t m = 1; m <= bound; ++m)
        if (ok[m]) out.push_back(m);
    return out;
}

/// {l t r - 1 : l >= 1} intersected with [1, bound].
inline std::vector<std::size_t> predicted_window_lengths(std::uint64_t t, std::size_t r,
                                                         std::size_t bound) {
    std::vector<std::size_t> out;
    for (std::size_t l = 1;; ++l) {
        const std::size_t m = l * std::size_t(t) * r - 1;
        if (m > bound) break;
        if (m >= 1) out.push_back(m);
    }
    return out;
}

/// Where t falls relative to the classes q, divisors of q^2 - 1, and p.
enum class MultiplierClass : std::uint8_t { EqualsQ, DividesQSquaredMinusOne, EqualsP, Other };

inline MultiplierClass classify_multiplier(const Field& f, std::uint64_t t) {
    const std::uint64_t q = f.q();
    if (t == q) return MultiplierClass::EqualsQ;
    if ((q * q - 1) % t == 0) return MultiplierClass::DividesQSquaredMinusOne;
    if (t == f.p()) return MultiplierClass::EqualsP;
    return MultiplierClass::Other;
}

} // namespace gfwords
