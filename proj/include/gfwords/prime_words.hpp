#pragma once

// Enumeration of A^l, C^l, P^l; unique factorization of A-words; the
// successor permutation of A^l and its orbits.

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "gfwords/finite_field.hpp"
#include "gfwords/sl2.hpp"
#include "gfwords/words.hpp"

namespace gfwords {

enum class WordSet : std::uint8_t {
    A,
    C,
    P,          // prime words: in A, every proper nonempty prefix in C
    Generators, // p alpha with p prime of length l-1
};

enum class EnumStrategy : std::uint8_t {
    Automatic,  // brute force while q^l fits the budget, tree walk beyond
    BruteForce, // classify all q^l words through pi
    Tree,       // prefix-tree walk with the streaming classifier
};

struct EnumOptions {
    std::uint64_t budget = 10'000'000; // nodes
    EnumStrategy strategy = EnumStrategy::Automatic;
    unsigned threads = 1;
};

namespace detail {

inline std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max()
                                                             : a + b;
}

inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
        return std::numeric_limits<std::uint64_t>::max();
    return a * b;
}

inline std::uint64_t sat_pow(std::uint64_t b, std::size_t e) {
    std::uint64_t r = 1;
    while (e--) r = sat_mul(r, b);
    return r;
}

// Sum_{i=0}^{n} b^i, saturating.
inline std::uint64_t geometric(std::uint64_t b, std::size_t n) {
    std::uint64_t r = 0, term = 1;
    for (std::size_t i = 0; i <= n; ++i) {
        r = sat_add(r, term);
        term = sat_mul(term, b);
    }
    return r;
}

inline std::uint64_t tree_cost(std::uint64_t q, std::size_t l, WordSet set) {
    switch (set) {
    case WordSet::A: return l == 0 ? 1 : geometric(q, l - 1);
    case WordSet::C: return geometric(q, l);
    case WordSet::P: return sat_mul(q, geometric(q - 1, l));
    case WordSet::Generators: return sat_mul(q, sat_mul(q, geometric(q - 1, l)));
    }
    return 0;
}

inline bool use_tree(std::uint64_t q, std::size_t l, const EnumOptions& opt) {
    if (opt.strategy != EnumStrategy::Automatic) return opt.strategy == EnumStrategy::Tree;
    return sat_pow(q, l) > opt.budget;
}

inline void check_budget(const Field& f, std::size_t l, WordSet set, const EnumOptions& opt) {
    const bool tree = use_tree(f.q(), l, opt);
    const std::uint64_t cost = tree ? tree_cost(f.q(), l, set) : sat_pow(f.q(), l);
    if (cost > opt.budget)
        throw Error(Errc::BudgetExceeded, "enumeration needs ~" + std::to_string(cost) +
                                              " nodes, budget is " + std::to_string(opt.budget));
}

// Brute force: odometer over all words of length l starting with `first`,
// classified through the matrix route.
template <class Fn>
void brute_force(const Field& f, std::size_t l, WordSet set, Elem first, Fn& fn) {
    const Elem q = f.q();
    Word w(l, 0);
    w[0] = first;
    std::vector<std::array<Elem, 4>> prefix(l + 1);
    prefix[0] = {1, 0, 0, 1};
    std::size_t valid = 0; // prefix[0..valid] are current
    while (true) {
        for (std::size_t i = valid; i < l; ++i) {
            prefix[i + 1] = prefix[i];
            right_mul_gen(f, prefix[i + 1], w[i]);
        }
        const bool last_a = prefix[l][3] == 0;
        bool keep = false;
        switch (set) {
        case WordSet::A: keep = last_a; break;
        case WordSet::C: keep = !last_a; break;
        case WordSet::P:
        case WordSet::Generators: {
            const std::size_t plen = set == WordSet::P ? l : l - 1;
            keep = prefix[plen][3] == 0;
            for (std::size_t h = 1; keep && h < plen; ++h)
                if (prefix[h][3] == 0) keep = false;
            break;
        }
        }
        if (keep) fn(std::as_const(w));
        // Advance, leaving w[0] fixed.
        std::size_t i = l;
        while (i > 1) {
            --i;
            if (++w[i] < q) break;
            w[i] = 0;
            if (i == 1) return;
        }
        if (l == 1) return;
        valid = i;
    }
}

inline std::size_t prime_length(std::size_t l, WordSet set) {
    return set == WordSet::Generators ? l - 1 : l;
}

// Unique letter x with (prefix x) in A, for a prefix in C.
inline Elem a_extension(const Field& f, ReduceState s) noexcept {
    return s.has_carry ? f.inv_unchecked(s.carry) : Elem(0);
}

// Walks below a nonempty prefix of length < l (for P/Generators: < the prime
// length, and the prefix is in C).
template <class Fn>
void tree_walk(const Field& f, std::size_t l, WordSet set, Word& prefix, ReduceState st, Fn& fn) {
    const std::size_t depth = prefix.size();
    const Elem q = f.q();
    const bool in_a = st.has_carry && st.carry == 0;

    switch (set) {
    case WordSet::A:
        if (depth + 1 == l) {
            if (in_a) return; // an A word has no A-extension
            prefix.push_back(a_extension(f, st));
            fn(std::as_const(prefix));
            prefix.pop_back();
            return;
        }
        break;
    case WordSet::C:
        if (depth == l) {
            if (!in_a) fn(std::as_const(prefix));
            return;
        }
        break;
    case WordSet::P:
    case WordSet::Generators:
        if (depth + 1 == prime_length(l, set)) {
            prefix.push_back(a_extension(f, st));
            if (set == WordSet::P) {
                fn(std::as_const(prefix));
            } else {
                for (Elem x = 0; x < q; ++x) {
                    prefix.push_back(x);
                    fn(std::as_const(prefix));
                    prefix.pop_back();
                }
            }
            prefix.pop_back();
            return;
        }
        break;
    }

    StreamClassifier sc(f);
    for (Elem x = 0; x < q; ++x) {
        sc.set_state(st);
        sc.push_unchecked(x);
        // A proper prefix in A can never start a prime.
        if ((set == WordSet::P || set == WordSet::Generators) && sc.in_a()) continue;
        prefix.push_back(x);
        tree_walk(f, l, set, prefix, sc.state(), fn);
        prefix.pop_back();
    }
}

template <class Fn>
void walk_subtree(const Field& f, std::size_t l, WordSet set, Elem first, bool tree, Fn& fn) {
    if (!tree) {
        brute_force(f, l, set, first, fn);
        return;
    }
    StreamClassifier sc(f);
    sc.push_unchecked(first);
    Word prefix{first};
    if (set == WordSet::P || set == WordSet::Generators) {
        if (prime_length(l, set) == 1) {
            if (!sc.in_a()) return;
            if (set == WordSet::P) {
                fn(std::as_const(prefix));
            } else {
                for (Elem x = 0; x < f.q(); ++x) {
                    prefix.push_back(x);
                    fn(std::as_const(prefix));
                    prefix.pop_back();
                }
            }
            return;
        }
        if (sc.in_a()) return;
    } else if (l == 1) {
        if ((set == WordSet::A) == sc.in_a()) fn(std::as_const(prefix));
        return;
    }
    tree_walk(f, l, set, prefix, sc.state(), fn);
}

inline void check_set_degree(std::size_t l, WordSet set) {
    if (set == WordSet::Generators && l < 2)
        throw Error(Errc::BadDegree, "generators exist in degree >= 2");
}

} // namespace detail

/// Calls fn(const Word&) for every word of the set with length l, in
/// lexicographic order. The word reference is only valid during the call.
template <class Fn>
void for_each_word(const Field& f, std::size_t l, WordSet set, Fn&& fn, const EnumOptions& opt = {}) {
    detail::check_set_degree(l, set);
    detail::check_budget(f, l, set, opt);
    if (l == 0) {
        if (set == WordSet::C) fn(Word{});
        return;
    }
    const bool tree = detail::use_tree(f.q(), l, opt);
    for (Elem first = 0; first < f.q(); ++first) detail::walk_subtree(f, l, set, first, tree, fn);
}

namespace detail {

// Runs `work(first)` for every first letter, spread across threads; results
// are returned indexed by first letter so merging stays deterministic.
template <class R, class Work>
std::vector<R> per_first_letter(const Field& f, unsigned threads, Work work) {
    std::vector<R> out(f.q());
    const unsigned n = std::max(1u, std::min<unsigned>(threads, f.q()));
    if (n == 1) {
        for (Elem x = 0; x < f.q(); ++x) out[x] = work(x);
        return out;
    }
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n; ++t)
        pool.emplace_back([&, t] {
            for (Elem x = t; x < f.q(); x += n) out[x] = work(x);
        });
    pool.clear();
    return out;
}

} // namespace detail

/// Lexicographically ordered listing.
inline std::vector<Word> enumerate_class(const Field& f, std::size_t l, WordSet set,
                                         const EnumOptions& opt = {}) {
    detail::check_set_degree(l, set);
    detail::check_budget(f, l, set, opt);
    if (l == 0) return set == WordSet::C ? std::vector<Word>{Word{}} : std::vector<Word>{};
    const bool tree = detail::use_tree(f.q(), l, opt);
    auto parts = detail::per_first_letter<std::vector<Word>>(f, opt.threads, [&](Elem first) {
        std::vector<Word> local;
        auto push = [&](const Word& w) { local.push_back(w); };
        detail::walk_subtree(f, l, set, first, tree, push);
        return local;
    });
    std::vector<Word> out;
    for (auto& part : parts) std::move(part.begin(), part.end(), std::back_inserter(out));
    return out;
}

inline std::uint64_t count_class(const Field& f, std::size_t l, WordSet set,
                                 const EnumOptions& opt = {}) {
    detail::check_set_degree(l, set);
    detail::check_budget(f, l, set, opt);
    if (l == 0) return set == WordSet::C ? 1 : 0;
    const bool tree = detail::use_tree(f.q(), l, opt);
    auto parts = detail::per_first_letter<std::uint64_t>(f, opt.threads, [&](Elem first) {
        std::uint64_t n = 0;
        auto tick = [&](const Word&) { ++n; };
        detail::walk_subtree(f, l, set, first, tree, tick);
        return n;
    });
    std::uint64_t total = 0;
    for (auto n : parts) total += n;
    return total;
}

// --- primes and factorization ------------------------------------------------------

/// In A with every proper nonempty prefix in C. One stream pass.
inline bool is_prime(const Field& f, std::span<const Elem> w) {
    if (w.empty()) throw Error(Errc::EmptyWord, "primality of the empty word");
    StreamClassifier sc(f);
    for (std::size_t i = 0; i < w.size(); ++i) {
        sc.push(w[i]);
        if (i + 1 < w.size() && sc.in_a()) return false;
    }
    return sc.in_a();
}

/// w = p1 d1 p2 d2 ... pn dn p(n+1) with every p prime.
struct Factorization {
    std::vector<Word> primes;
    Word separators;

    friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// Greedy left scan: each prime is the shortest prefix in A of what remains.
inline Factorization factorize(const Field& f, std::span<const Elem> w) {
    if (!in_a(f, w)) throw Error(Errc::NotInA, "word " + format_word(w) + " is not in A");
    Factorization out;
    StreamClassifier sc(f);
    std::size_t start = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        sc.push_unchecked(w[i]);
        if (sc.in_a()) {
            out.primes.emplace_back(w.begin() + std::ptrdiff_t(start), w.begin() + std::ptrdiff_t(i) + 1);
            if (i + 1 == w.size()) return out;
            out.separators.push_back(w[i + 1]);
            ++i;
            start = i + 1;
            sc.reset();
        }
    }
    // Unreachable for words in A.
    throw Error(Errc::NotInA, "greedy scan did not end on a prime");
}

/// Concatenation p1 d1 ... pn dn p(n+1); always a word in A.
inline Word compose_factorization(const Field& f, const Factorization& fac) {
    if (fac.primes.size() != fac.separators.size() + 1)
        throw Error(Errc::InvalidFactorization, "need exactly one more prime than separators");
    Word w;
    for (std::size_t i = 0; i < fac.primes.size(); ++i) {
        const Word& p = fac.primes[i];
        check_word(f, p);
        if (p.empty() || !is_prime(f, p))
            throw Error(Errc::InvalidFactorization, "'" + format_word(p) + "' is not prime");
        w.insert(w.end(), p.begin(), p.end());
        if (i < fac.separators.size()) {
            f.check(fac.separators[i]);
            w.push_back(fac.separators[i]);
        }
    }
    return w;
}

// --- successor permutation ----------------------------------------------------------

/// (a2 ... al) beta, the unique immediate successor of w inside A^l.
inline Word successor(const Field& f, std::span<const Elem> w) {
    if (!in_a(f, w)) throw Error(Errc::NotInA, "word " + format_word(w) + " is not in A");
    Word r(w.begin() + 1, w.end());
    r.push_back(extend_right(f, r));
    return r;
}

/// alpha (a1 ... a(l-1)), the unique immediate predecessor of w inside A^l.
inline Word predecessor(const Field& f, std::span<const Elem> w) {
    if (!in_a(f, w)) throw Error(Errc::NotInA, "word " + format_word(w) + " is not in A");
    const auto head = w.first(w.size() - 1);
    Word r;
    r.reserve(w.size());
    r.push_back(extend_left(f, head));
    r.insert(r.end(), head.begin(), head.end());
    return r;
}

struct OrbitCycle {
    std::vector<Word> members; // members[i+1] = successor(members[i]), cyclically

    std::size_t period() const noexcept { return members.size(); }
};

inline OrbitCycle orbit(const Field& f, std::span<const Elem> w) {
    OrbitCycle cyc;
    Word cur(w.begin(), w.end());
    do {
        cyc.members.push_back(cur);
        cur = successor(f, cur);
    } while (!std::equal(cur.begin(), cur.end(), w.begin(), w.end()));
    return cyc;
}

namespace detail {

inline std::uint64_t encode(const Field& f, std::span<const Elem> w) {
    std::uint64_t code = 0;
    for (Elem x : w) code = code * f.q() + x;
    return code;
}

/// Smallest r dividing n with s[i] = s[i mod r] for all i.
template <class Seq>
std::size_t minimal_cyclic_period(const Seq& s) {
    const std::size_t n = s.size();
    for (std::size_t r = 1; r <= n; ++r) {
        if (n % r) continue;
        bool ok = true;
        for (std::size_t i = r; ok && i < n; ++i) ok = s[i] == s[i - r];
        if (ok) return r;
    }
    return n;
}

} // namespace detail

/// Cycle decomposition of the successor permutation of A^l. Cycles are listed
/// by their lexicographically smallest member, which comes first.
inline std::vector<OrbitCycle> successor_cycles(const Field& f, std::size_t l,
                                                const EnumOptions& opt = {}) {
    const auto words = enumerate_class(f, l, WordSet::A, opt);
    std::vector<std::uint64_t> codes;
    codes.reserve(words.size());
    for (const auto& w : words) codes.push_back(detail::encode(f, w));
    std::vector<bool> seen(words.size(), false);
    std::vector<OrbitCycle> cycles;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (seen[i]) continue;
        OrbitCycle cyc;
        std::size_t j = i;
        while (!seen[j]) {
            seen[j] = true;
            cyc.members.push_back(words[j]);
            const Word next = successor(f, words[j]);
            const auto it = std::lower_bound(codes.begin(), codes.end(), detail::encode(f, next));
            j = std::size_t(it - codes.begin());
        }
        cycles.push_back(std::move(cyc));
    }
    return cycles;
}

struct PeriodicBlock {
    Word block;
    std::size_t r = 0;
};

/// The periodic letter stream generated along orbit(w), as one minimal period
/// starting with the letter appended right after w.
inline PeriodicBlock associated_periodic_word(const Field& f, std::span<const Elem> w) {
    const OrbitCycle cyc = orbit(f, w);
    Word letters;
    letters.reserve(cyc.period());
    for (std::size_t i = 1; i <= cyc.period(); ++i)
        letters.push_back(cyc.members[i % cyc.period()].back());
    const std::size_t r = detail::minimal_cyclic_period(letters);
    letters.resize(r);
    return {std::move(letters), r};
}

} // namespace gfwords
