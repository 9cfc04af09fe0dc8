#pragma once

// Words over k, their A/C classification, the structure maps and the
// rewriting rules that preserve the class.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gfwords/finite_field.hpp"
#include "gfwords/sl2.hpp"

namespace gfwords {

/// A: pi(w) sends L(inf) to L(0). C: everything else, including the empty word.
enum class ClassLabel : std::uint8_t { A, C };

constexpr char label_char(ClassLabel l) noexcept { return l == ClassLabel::A ? 'A' : 'C'; }

// --- text format ------------------------------------------------------------

/// "1,0,2"; the empty string is the empty word.
inline Word parse_word(std::string_view text) { return detail::parse_uint_list(text, "word"); }

inline Word parse_word(const Field& f, std::string_view text) {
    Word w = parse_word(text);
    for (Elem x : w) f.check(x);
    return w;
}

inline std::string format_word(std::span<const Elem> w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(w[i]);
    }
    return s;
}

/// Compact form used for listings when q <= 10: "101" instead of "1,0,1".
inline std::string format_word_compact(const Field& f, std::span<const Elem> w) {
    if (f.q() > 10) return format_word(w);
    std::string s;
    s.reserve(w.size());
    for (Elem x : w) s += char('0' + x);
    return s;
}

inline void check_word(const Field& f, std::span<const Elem> w) {
    for (Elem x : w) f.check(x);
}

// --- classification ----------------------------------------------------------

/// A iff the (2,2) entry of pi(w) is zero.
inline ClassLabel classify_matrix(const Field& f, std::span<const Elem> w) {
    check_word(f, w);
    return detail::pi_raw(f, w)[3] == 0 ? ClassLabel::A : ClassLabel::C;
}

/// Residue of left-reducing a prefix to at most one letter: empty (no carry)
/// or a single carried letter.
struct ReduceState {
    bool has_carry = false;
    Elem carry = 0;

    static constexpr ReduceState empty() noexcept { return {}; }
    static constexpr ReduceState letter(Elem x) noexcept { return {true, x}; }
    friend constexpr bool operator==(const ReduceState&, const ReduceState&) = default;
};

inline std::string format_state(ReduceState s) {
    return s.has_carry ? std::to_string(s.carry) : std::string("-");
}

/// Single-pass classifier with O(1) state. Uses the reductions
/// "a b x ~ (b - 1/a) x" for a != 0 and "0 b x ~ x".
class StreamClassifier {
public:
    explicit StreamClassifier(Field f) : f_(std::move(f)) {}

    void push(Elem x) {
        f_.check(x);
        push_unchecked(x);
    }

    void push_unchecked(Elem x) noexcept {
        if (!state_.has_carry) {
            state_ = ReduceState::letter(x);
        } else if (state_.carry == 0) {
            state_ = ReduceState::empty();
        } else {
            state_.carry = f_.sub(x, f_.inv_unchecked(state_.carry));
        }
    }

    template <class Range>
    void push_all(const Range& letters) {
        for (Elem x : letters) push(x);
    }

    ReduceState state() const noexcept { return state_; }
    bool in_a() const noexcept { return state_.has_carry && state_.carry == 0; }
    ClassLabel label() const noexcept { return in_a() ? ClassLabel::A : ClassLabel::C; }
    void reset() noexcept { state_ = ReduceState::empty(); }
    void set_state(ReduceState s) noexcept { state_ = s; }
    const Field& field() const noexcept { return f_; }

private:
    Field f_;
    ReduceState state_{};
};

/// Classifies any input range of letters in one pass.
template <class Range>
ClassLabel classify_stream(const Field& f, const Range& letters) {
    StreamClassifier sc(f);
    sc.push_all(letters);
    return sc.label();
}

inline ClassLabel classify(const Field& f, std::span<const Elem> w) {
    return classify_stream(f, w);
}

inline bool in_a(const Field& f, std::span<const Elem> w) { return classify(f, w) == ClassLabel::A; }

// --- structure maps -------------------------------------------------------------

/// The unique beta with w beta in A. Requires w in C.
inline Elem extend_right(const Field& f, std::span<const Elem> w) {
    check_word(f, w);
    const auto m = detail::pi_raw(f, w);
    // pi(w beta) has (2,2) entry -c + d beta.
    if (m[3] == 0) throw Error(Errc::NotInC, "word " + format_word(w) + " is in A");
    return f.mul(m[2], f.inv_unchecked(m[3]));
}

inline Word word_reverse(std::span<const Elem> w) { return Word(w.rbegin(), w.rend()); }

inline Word word_negate(const Field& f, std::span<const Elem> w) {
    check_word(f, w);
    Word r(w.size());
    std::transform(w.begin(), w.end(), r.begin(), [&](Elem x) { return f.neg(x); });
    return r;
}

/// The unique alpha with alpha w in A, via extend_right on the reversed word.
/// Requires w in C.
inline Elem extend_left(const Field& f, std::span<const Elem> w) {
    return extend_right(f, word_reverse(w));
}

// --- rewriting ------------------------------------------------------------------

enum class RewriteRule : std::uint8_t {
    Zeros, // x 0 0 y ~ x y
    Plus,  // x a 1 b y ~ x (a-1)(b-1) y
    Minus, // x a (-1) b y ~ x (a+1)(b+1) y
};

/// Applies one rewrite. For Zeros, pos is the first of the two zeros; for
/// Plus/Minus, pos is the pivot. A missing neighbour at either end of the word
/// is the empty letter, which is left unchanged by +-1.
inline Word apply_rewrite(const Field& f, std::span<const Elem> w, RewriteRule rule,
                          std::size_t pos) {
    check_word(f, w);
    Word r(w.begin(), w.end());
    if (rule == RewriteRule::Zeros) {
        if (pos + 1 >= w.size() || w[pos] != 0 || w[pos + 1] != 0)
            throw Error(Errc::PatternMismatch, "no '00' at position " + std::to_string(pos));
        r.erase(r.begin() + std::ptrdiff_t(pos), r.begin() + std::ptrdiff_t(pos) + 2);
        return r;
    }
    const Elem pivot = rule == RewriteRule::Plus ? Elem(1) : f.minus_one();
    if (pos >= w.size() || w[pos] != pivot)
        throw Error(Errc::PatternMismatch, "pivot mismatch at position " + std::to_string(pos));
    // Plus shifts neighbours by -1, Minus by +1.
    const Elem shift = rule == RewriteRule::Plus ? f.minus_one() : Elem(1);
    if (pos > 0) r[pos - 1] = f.add(r[pos - 1], shift);
    if (pos + 1 < r.size()) r[pos + 1] = f.add(r[pos + 1], shift);
    r.erase(r.begin() + std::ptrdiff_t(pos));
    return r;
}

/// Leftmost match of the rule, if any.
inline std::optional<std::size_t> find_rewrite(const Field& f, std::span<const Elem> w,
                                               RewriteRule rule) {
    switch (rule) {
    case RewriteRule::Zeros:
        for (std::size_t i = 0; i + 1 < w.size(); ++i)
            if (w[i] == 0 && w[i + 1] == 0) return i;
        break;
    case RewriteRule::Plus:
    case RewriteRule::Minus: {
        const Elem pivot = rule == RewriteRule::Plus ? Elem(1) : f.minus_one();
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i] == pivot) return i;
        break;
    }
    }
    return std::nullopt;
}

/// Rewrites until the word is "0" or empty. Rules are tried in the order
/// Zeros, Plus, Minus, each at its leftmost match. Only complete over GF(2)
/// and GF(3).
inline Word shorten_to_normal(const Field& f, std::span<const Elem> w,
                              std::size_t* steps = nullptr) {
    if (f.q() > 3)
        throw Error(Errc::UnsupportedField, "normal forms by rewriting need q <= 3");
    check_word(f, w);
    Word cur(w.begin(), w.end());
    std::size_t n = 0;
    while (!(cur.empty() || (cur.size() == 1 && cur[0] == 0))) {
        bool applied = false;
        for (auto rule : {RewriteRule::Zeros, RewriteRule::Plus, RewriteRule::Minus}) {
            if (auto pos = find_rewrite(f, cur, rule)) {
                cur = apply_rewrite(f, cur, rule, *pos);
                applied = true;
                break;
            }
        }
        if (!applied) throw std::logic_error("shorten_to_normal: stuck on " + format_word(cur));
        ++n;
    }
    if (steps) *steps = n;
    return cur;
}

} // namespace gfwords
