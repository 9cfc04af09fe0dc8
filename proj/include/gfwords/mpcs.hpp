#pragma once

// Mock parity check sets: sets of N^(d-1) words of length d over an N-letter
// alphabet in which every member has exactly one immediate successor and one
// immediate predecessor. Equivalent to a table of permutations phi_z of the
// alphabet indexed by the middle word z of length d-2.

#include <algorithm>
#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "gfwords/finite_field.hpp"
#include "gfwords/prime_words.hpp"
#include "gfwords/words.hpp"

namespace gfwords {

namespace detail {

inline std::uint64_t encode_n(std::uint32_t n, std::span<const Elem> w) {
    std::uint64_t code = 0;
    for (Elem x : w) code = code * n + x;
    return code;
}

inline Word decode_n(std::uint32_t n, std::size_t len, std::uint64_t code) {
    Word w(len);
    for (std::size_t i = len; i-- > 0;) {
        w[i] = Elem(code % n);
        code /= n;
    }
    return w;
}

inline void check_shape(std::uint32_t n, std::size_t d) {
    if (d < 2) throw Error(Errc::UnsupportedDimension, "word length d must be >= 2");
    if (n < 2) throw Error(Errc::ShapeMismatch, "alphabet needs at least 2 letters");
    if (sat_pow(n, d) == std::numeric_limits<std::uint64_t>::max())
        throw Error(Errc::ShapeMismatch, "N^d too large");
}

} // namespace detail

struct MpcsDiagnostics {
    bool valid = false;
    std::string reason;          // empty when valid
    std::optional<Word> witness; // offending member, when there is one
};

/// Checks the two defining axioms directly on a member list.
inline MpcsDiagnostics mpcs_check(std::uint32_t n, std::size_t d, std::vector<Word> members) {
    detail::check_shape(n, d);
    MpcsDiagnostics diag;
    for (const auto& w : members) {
        if (w.size() != d || std::any_of(w.begin(), w.end(), [&](Elem x) { return x >= n; })) {
            diag.reason = "member is not a length-" + std::to_string(d) + " word over " +
                          std::to_string(n) + " letters";
            diag.witness = w;
            return diag;
        }
    }
    std::sort(members.begin(), members.end());
    if (auto dup = std::adjacent_find(members.begin(), members.end()); dup != members.end()) {
        diag.reason = "duplicate member";
        diag.witness = *dup;
        return diag;
    }
    const std::uint64_t expected = detail::sat_pow(n, d - 1);
    if (members.size() != expected) {
        diag.reason = "cardinality " + std::to_string(members.size()) + " != " + std::to_string(expected);
        return diag;
    }
    std::unordered_map<std::uint64_t, std::uint32_t> by_prefix, by_suffix;
    for (const auto& w : members) {
        const std::span<const Elem> s(w);
        ++by_prefix[detail::encode_n(n, s.first(d - 1))];
        ++by_suffix[detail::encode_n(n, s.last(d - 1))];
    }
    for (const auto& w : members) {
        const std::span<const Elem> s(w);
        const auto succ = by_prefix[detail::encode_n(n, s.last(d - 1))];
        const auto pred = by_suffix[detail::encode_n(n, s.first(d - 1))];
        if (succ != 1 || pred != 1) {
            diag.reason = "member has " + std::to_string(succ) + " successors and " +
                          std::to_string(pred) + " predecessors";
            diag.witness = w;
            return diag;
        }
    }
    diag.valid = true;
    return diag;
}

/// A validated mock parity check set; members are kept sorted.
class Mpcs {
public:
    /// Throws NotAnMpcs when the axioms fail.
    static Mpcs make(std::uint32_t n, std::size_t d, std::vector<Word> members) {
        auto diag = mpcs_check(n, d, members);
        if (!diag.valid)
            throw Error(Errc::NotAnMpcs, diag.reason + (diag.witness ? " (" + format_word(*diag.witness) + ")" : ""));
        std::sort(members.begin(), members.end());
        return Mpcs(n, d, std::move(members));
    }

    std::uint32_t n() const noexcept { return n_; }
    std::size_t d() const noexcept { return d_; }
    const std::vector<Word>& members() const noexcept { return members_; }

    friend bool operator==(const Mpcs&, const Mpcs&) = default;

private:
    Mpcs(std::uint32_t n, std::size_t d, std::vector<Word> m) : n_(n), d_(d), members_(std::move(m)) {}

    std::uint32_t n_;
    std::size_t d_;
    std::vector<Word> members_;
};

/// phi_z for every z in E^(d-2), indexed by z read as a base-N number.
class PhiTable {
public:
    static PhiTable make(std::uint32_t n, std::size_t d, std::vector<std::vector<Elem>> images) {
        detail::check_shape(n, d);
        if (images.size() != detail::sat_pow(n, d - 2))
            throw Error(Errc::ShapeMismatch, "need one permutation per middle word");
        for (const auto& img : images) {
            if (img.size() != n) throw Error(Errc::ShapeMismatch, "permutation has wrong size");
            std::vector<bool> hit(n, false);
            for (Elem x : img) {
                if (x >= n || hit[x]) throw Error(Errc::NotAnMpcs, "image array is not a permutation");
                hit[x] = true;
            }
        }
        return PhiTable(n, d, std::move(images));
    }

    static PhiTable identity(std::uint32_t n, std::size_t d) {
        detail::check_shape(n, d);
        std::vector<Elem> id(n);
        for (Elem i = 0; i < n; ++i) id[i] = i;
        return PhiTable(n, d, std::vector<std::vector<Elem>>(detail::sat_pow(n, d - 2), id));
    }

    std::uint32_t n() const noexcept { return n_; }
    std::size_t d() const noexcept { return d_; }
    std::size_t size() const noexcept { return images_.size(); }
    const std::vector<Elem>& at(std::size_t z_code) const { return images_.at(z_code); }
    const std::vector<Elem>& at(std::span<const Elem> z) const { return images_.at(detail::encode_n(n_, z)); }
    Word middle(std::size_t z_code) const { return detail::decode_n(n_, d_ - 2, z_code); }
    const std::vector<std::vector<Elem>>& images() const noexcept { return images_; }

    friend bool operator==(const PhiTable&, const PhiTable&) = default;

private:
    PhiTable(std::uint32_t n, std::size_t d, std::vector<std::vector<Elem>> images)
        : n_(n), d_(d), images_(std::move(images)) {}

    std::uint32_t n_;
    std::size_t d_;
    std::vector<std::vector<Elem>> images_;
};

/// { a1 z ad : phi_z(a1) = ad }.
inline Mpcs phi_to_mpcs(const PhiTable& phi) {
    std::vector<Word> members;
    members.reserve(phi.size() * phi.n());
    for (std::size_t zc = 0; zc < phi.size(); ++zc) {
        const Word z = phi.middle(zc);
        const auto& img = phi.at(zc);
        for (Elem a = 0; a < phi.n(); ++a) {
            Word w;
            w.reserve(phi.d());
            w.push_back(a);
            w.insert(w.end(), z.begin(), z.end());
            w.push_back(img[a]);
            members.push_back(std::move(w));
        }
    }
    return Mpcs::make(phi.n(), phi.d(), std::move(members));
}

/// phi_z(a1) = the unique ad with a1 z ad a member. Throws NotAnMpcs when
/// phi_z is missing, multiply defined, or not a permutation.
inline PhiTable mpcs_to_phi(std::uint32_t n, std::size_t d, const std::vector<Word>& members) {
    detail::check_shape(n, d);
    const std::size_t zcount = detail::sat_pow(n, d - 2);
    constexpr Elem unset = ~Elem(0);
    std::vector<std::vector<Elem>> images(zcount, std::vector<Elem>(n, unset));
    for (const auto& w : members) {
        if (w.size() != d || std::any_of(w.begin(), w.end(), [&](Elem x) { return x >= n; }))
            throw Error(Errc::NotAnMpcs, "member '" + format_word(w) + "' has the wrong shape");
        const std::span<const Elem> s(w);
        auto& slot = images[detail::encode_n(n, s.subspan(1, d - 2))][w.front()];
        if (slot != unset && slot != w.back())
            throw Error(Errc::NotAnMpcs, "phi ill-defined at '" + format_word(w) + "'");
        slot = w.back();
    }
    for (std::size_t zc = 0; zc < zcount; ++zc)
        for (Elem a = 0; a < n; ++a)
            if (images[zc][a] == unset)
                throw Error(Errc::NotAnMpcs, "no member of the form " + std::to_string(a) + " " +
                                                 format_word(detail::decode_n(n, d - 2, zc)) + " *");
    return PhiTable::make(n, d, std::move(images));
}

inline PhiTable mpcs_to_phi(const Mpcs& m) { return mpcs_to_phi(m.n(), m.d(), m.members()); }

/// (f g)_z = f_z o g_z.
inline PhiTable mpcs_compose(const PhiTable& f, const PhiTable& g) {
    if (f.n() != g.n() || f.d() != g.d())
        throw Error(Errc::ShapeMismatch, "tables have different N or d");
    std::vector<std::vector<Elem>> images(f.size(), std::vector<Elem>(f.n()));
    for (std::size_t zc = 0; zc < f.size(); ++zc)
        for (Elem a = 0; a < f.n(); ++a) images[zc][a] = f.at(zc)[g.at(zc)[a]];
    return PhiTable::make(f.n(), f.d(), std::move(images));
}

inline PhiTable mpcs_inverse(const PhiTable& f) {
    std::vector<std::vector<Elem>> images(f.size(), std::vector<Elem>(f.n()));
    for (std::size_t zc = 0; zc < f.size(); ++zc)
        for (Elem a = 0; a < f.n(); ++a) images[zc][f.at(zc)[a]] = a;
    return PhiTable::make(f.n(), f.d(), std::move(images));
}

/// Cycles of the send-to-successor permutation, each starting at its smallest
/// member, listed in order of those members.
inline std::vector<std::vector<Word>> mpcs_cycles(const Mpcs& m) {
    const auto& mem = m.members();
    const std::size_t d = m.d();
    std::unordered_map<std::uint64_t, std::size_t> by_prefix;
    for (std::size_t i = 0; i < mem.size(); ++i)
        by_prefix.emplace(detail::encode_n(m.n(), std::span<const Elem>(mem[i]).first(d - 1)), i);
    std::vector<bool> seen(mem.size(), false);
    std::vector<std::vector<Word>> cycles;
    for (std::size_t i = 0; i < mem.size(); ++i) {
        if (seen[i]) continue;
        std::vector<Word> cyc;
        for (std::size_t j = i; !seen[j];) {
            seen[j] = true;
            cyc.push_back(mem[j]);
            j = by_prefix.at(detail::encode_n(m.n(), std::span<const Elem>(mem[j]).last(d - 1)));
        }
        cycles.push_back(std::move(cyc));
    }
    return cycles;
}

inline bool is_debruijn(const Mpcs& m) { return mpcs_cycles(m).size() == 1; }

/// A^l together with the C-words whose two boundary factors of length l-1
/// both lie in A; an MPCS over the alphabet k.
inline Mpcs mpcs_ml(const Field& f, std::size_t l, const EnumOptions& opt = {}) {
    if (l < 2) throw Error(Errc::UnsupportedDimension, "M^l needs l >= 2");
    std::vector<Word> members = enumerate_class(f, l, WordSet::A, opt);
    for (const auto& u : enumerate_class(f, l - 1, WordSet::A, opt)) {
        Word w = u;
        w.push_back(0);
        for (Elem x = 0; x < f.q(); ++x) {
            w.back() = x;
            const std::span<const Elem> s(w);
            if (!in_a(f, w) && in_a(f, s.subspan(1))) members.push_back(w);
        }
    }
    return Mpcs::make(f.q(), l, std::move(members));
}

// --- text formats ---------------------------------------------------------------------

/// Header "N d", then one member per line in wire format.
inline std::string format_mpcs(const Mpcs& m) {
    std::string s = std::to_string(m.n()) + ' ' + std::to_string(m.d()) + '\n';
    for (const auto& w : m.members()) s += format_word(w) + '\n';
    return s;
}

struct MpcsText {
    std::uint32_t n = 0;
    std::size_t d = 0;
    std::vector<Word> members;
};

inline MpcsText parse_mpcs_text(std::istream& in) {
    MpcsText out;
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!header) {
            std::istringstream hs(line);
            long long n = 0, d = 0;
            if (!(hs >> n >> d) || n < 0 || d < 0)
                throw Error(Errc::ParseError, "expected header 'N d'");
            out.n = std::uint32_t(n);
            out.d = std::size_t(d);
            header = true;
            continue;
        }
        // Compact lines ("0101") are accepted when N <= 10; a member always
        // has d >= 2 letters, so a comma-free line is never a wire word.
        if (out.n <= 10 && out.d >= 2 && line.find(',') == std::string::npos) {
            Word w;
            for (char c : line) {
                if (c < '0' || c > '9') throw Error(Errc::ParseError, "bad member '" + line + "'");
                w.push_back(Elem(c - '0'));
            }
            out.members.push_back(std::move(w));
        } else {
            out.members.push_back(parse_word(line));
        }
    }
    if (!header) throw Error(Errc::ParseError, "missing header 'N d'");
    return out;
}

/// One line per middle word: "z : phi_z(0),...,phi_z(N-1)".
inline std::string format_phi(const PhiTable& phi) {
    std::string s;
    for (std::size_t zc = 0; zc < phi.size(); ++zc) {
        const std::string z = format_word(phi.middle(zc));
        s += (z.empty() ? std::string(":") : z + " :") + ' ' + format_word(phi.at(zc)) + '\n';
    }
    return s;
}

inline PhiTable parse_phi(std::istream& in) {
    std::string line;
    std::optional<std::size_t> zlen;
    std::optional<std::uint32_t> n;
    std::vector<std::pair<Word, std::vector<Elem>>> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos) throw Error(Errc::ParseError, "expected 'z : images'");
        auto trim = [](std::string_view v) {
            while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
            while (!v.empty() && (v.back() == ' ' || v.back() == '\t')) v.remove_suffix(1);
            return v;
        };
        const std::string_view sv(line);
        Word z = parse_word(trim(sv.substr(0, colon)));
        auto img = parse_word(trim(sv.substr(colon + 1)));
        if (zlen && *zlen != z.size()) throw Error(Errc::ShapeMismatch, "middle words differ in length");
        if (n && *n != img.size()) throw Error(Errc::ShapeMismatch, "image arrays differ in length");
        zlen = z.size();
        n = std::uint32_t(img.size());
        rows.emplace_back(std::move(z), std::move(img));
    }
    if (!n) throw Error(Errc::ParseError, "empty table");
    const std::size_t d = *zlen + 2;
    detail::check_shape(*n, d);
    const std::size_t zcount = detail::sat_pow(*n, d - 2);
    if (rows.size() != zcount) throw Error(Errc::ShapeMismatch, "need one line per middle word");
    std::vector<std::vector<Elem>> images(zcount);
    for (auto& [z, img] : rows) {
        if (std::any_of(z.begin(), z.end(), [&](Elem x) { return x >= *n; }))
            throw Error(Errc::ShapeMismatch, "middle word letter out of range");
        auto& slot = images[detail::encode_n(*n, z)];
        if (!slot.empty()) throw Error(Errc::ShapeMismatch, "middle word listed twice");
        slot = std::move(img);
    }
    return PhiTable::make(*n, d, std::move(images));
}

} // namespace gfwords
