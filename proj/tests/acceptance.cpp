// Acceptance suite: one PASS/FAIL line per criterion, exact comparisons only.
//
//   acceptance            run all criteria
//   acceptance 3 8        run criteria 3 and 8
//
// Exit status is nonzero if any selected criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gfwords/gfwords.hpp"
#include "oracle.hpp"

using namespace gfwords;

namespace {

struct Outcome {
    bool pass = true;
    std::size_t violations = 0;
    std::ostringstream detail;
    std::vector<std::string> log; // printed below the result line

    void fail(const std::string& why) {
        if (++violations <= 12) log.push_back("violation: " + why);
        pass = false;
    }
};

Word concat(const Word& a, const Word& b) {
    Word r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

// --- 1 -------------------------------------------------------------------------------

void counting(Outcome& o) {
    std::size_t checked = 0;
    for (const Field& f : oracle::small_fields()) {
        const std::size_t max_l = f.q() == 2 ? 20 : 8;
        for (std::size_t l = 0; l <= max_l; ++l) {
            const ClassCounts want = count_formula(f.q(), l);
            for (auto strategy : {EnumStrategy::Automatic, EnumStrategy::Tree}) {
                EnumOptions opt;
                opt.strategy = strategy;
                const auto a = count_class(f, l, WordSet::A, opt);
                const auto c = count_class(f, l, WordSet::C, opt);
                if (want.a != a || want.c != c)
                    o.fail("q=" + std::to_string(f.q()) + " l=" + std::to_string(l) + ": enumerated " +
                           std::to_string(a) + "/" + std::to_string(c) + ", formula " + want.a.str() + "/" +
                           want.c.str());
                ++checked;
            }
        }
    }
    o.detail << checked << " (q, l, strategy) cases";
}

// --- 2 -------------------------------------------------------------------------------

void primes(Outcome& o) {
    std::size_t checked = 0;
    for (const Field& f : oracle::small_fields()) {
        if (f.q() > 4) continue;
        for (std::size_t l = 1; l <= 7; ++l) {
            const auto n = count_class(f, l, WordSet::P);
            const BigInt want = prime_count_formula(f.q(), l);
            if (want != n)
                o.fail("q=" + std::to_string(f.q()) + " l=" + std::to_string(l) + ": " + std::to_string(n) +
                       " != " + want.str());
            ++checked;
        }
    }
    o.detail << checked << " (q, l) cases";
}

// --- 3 -------------------------------------------------------------------------------

bool prime_by_matrix(const Field& f, const Word& w) {
    if (w.empty() || classify_matrix(f, w) != ClassLabel::A) return false;
    for (std::size_t k = 1; k < w.size(); ++k)
        if (classify_matrix(f, std::span<const Elem>(w).first(k)) == ClassLabel::A) return false;
    return true;
}

// Every way to cut w into p1 d1 p2 ... pn dn p(n+1) with each p prime.
void all_factorizations(const Field& f, const Word& w, std::size_t from, Factorization& cur,
                        std::vector<Factorization>& out) {
    for (std::size_t end = from + 1; end <= w.size(); ++end) {
        const Word p(w.begin() + std::ptrdiff_t(from), w.begin() + std::ptrdiff_t(end));
        if (!prime_by_matrix(f, p)) continue;
        cur.primes.push_back(p);
        if (end == w.size()) {
            out.push_back(cur);
        } else if (end + 1 < w.size()) {
            cur.separators.push_back(w[end]);
            all_factorizations(f, w, end + 1, cur, out);
            cur.separators.pop_back();
        }
        cur.primes.pop_back();
    }
}

void factorization(Outcome& o) {
    std::size_t words = 0;
    for (const Field& f : oracle::small_fields()) {
        if (f.q() > 3) continue;
        for (std::size_t l = 1; l <= 5; ++l) {
            for (const auto& w : oracle::all_words(f.q(), l)) {
                if (classify_matrix(f, w) != ClassLabel::A) continue;
                ++words;
                std::vector<Factorization> found;
                Factorization cur;
                all_factorizations(f, w, 0, cur, found);
                if (found.size() != 1) {
                    o.fail(format_word(w) + " has " + std::to_string(found.size()) + " factorizations");
                } else if (!(found.front() == factorize(f, w))) {
                    o.fail(format_word(w) + ": factorize disagrees with the exhaustive search");
                }
            }
        }
    }
    o.detail << words << " words in A";
}

// --- 4 -------------------------------------------------------------------------------

void structure(Outcome& o) {
    std::size_t words = 0;
    for (const Field& f : oracle::small_fields()) {
        if (f.q() > 4) continue;
        for (std::size_t l = 0; l <= 5; ++l) {
            for (const auto& w : oracle::all_words(f.q(), l)) {
                ++words;
                const bool a = oracle::in_a_projective(f, w);
                std::vector<Elem> right, left;
                for (Elem x = 0; x < f.q(); ++x) {
                    if (oracle::in_a_projective(f, concat(w, Word{x}))) right.push_back(x);
                    if (oracle::in_a_projective(f, concat(Word{x}, w))) left.push_back(x);
                }
                const std::string tag = "q=" + std::to_string(f.q()) + " w=" + format_word(w);
                if (a) {
                    if (!right.empty() || !left.empty()) o.fail(tag + ": A-word extends inside A");
                    const std::span<const Elem> s(w);
                    if (oracle::in_a_projective(f, s.first(l - 1)) || oracle::in_a_projective(f, s.subspan(1)))
                        o.fail(tag + ": truncation stays in A");
                } else {
                    if (right.size() != 1 || left.size() != 1) {
                        o.fail(tag + ": extensions not unique");
                        continue;
                    }
                    if (extend_right(f, w) != right[0] || extend_left(f, w) != left[0])
                        o.fail(tag + ": extension maps disagree with search");
                }
                if (oracle::in_a_projective(f, word_reverse(w)) != a) o.fail(tag + ": reversal changes class");
                if (oracle::in_a_projective(f, word_negate(f, w)) != a) o.fail(tag + ": negation changes class");
            }
        }
    }
    o.detail << words << " words";
}

// --- 5 -------------------------------------------------------------------------------

void rewriting(Outcome& o) {
    std::mt19937_64 rng(0);
    std::uniform_int_distribution<std::size_t> len(2, 16);
    std::size_t applied = 0;
    for (const Field& f : oracle::small_fields()) {
        std::size_t here = 0;
        while (here < 10'000) {
            Word v = oracle::random_word(rng, f.q(), len(rng));
            const auto rule = static_cast<RewriteRule>(rng() % 3);
            std::size_t at = rng() % v.size();
            if (rule == RewriteRule::Zeros) {
                at = std::min(at, v.size() - 2);
                v[at] = v[at + 1] = 0;
            } else {
                v[at] = rule == RewriteRule::Plus ? f.one() : f.minus_one();
            }
            const Word r = apply_rewrite(f, v, rule, at);
            if (classify_matrix(f, r) != classify_matrix(f, v))
                o.fail("q=" + std::to_string(f.q()) + " " + format_word(v) + " rule " +
                       std::to_string(int(rule)) + " at " + std::to_string(at));
            ++here;
        }
        applied += here;
    }
    std::size_t shortened = 0;
    for (const Field& f : {Field::make(2, 1), Field::make(3, 1)}) {
        for (std::size_t l = 0; l <= 8; ++l) {
            for (const auto& w : oracle::all_words(f.q(), l)) {
                std::size_t steps = 0;
                const Word n = shorten_to_normal(f, w, &steps);
                const bool a = classify_matrix(f, w) == ClassLabel::A;
                if ((n == Word{0}) != a || steps > w.size())
                    o.fail("q=" + std::to_string(f.q()) + " shorten " + format_word(w) + " -> " + format_word(n));
                ++shortened;
            }
        }
    }
    o.detail << applied << " rewrites, " << shortened << " words shortened";
}

// --- 6 -------------------------------------------------------------------------------

void classifiers(Outcome& o) {
    std::size_t exhaustive = 0;
    for (const Field& f : oracle::small_fields())
        for (std::size_t l = 0; l <= 6; ++l)
            for (const auto& w : oracle::all_words(f.q(), l)) {
                if (classify_matrix(f, w) != classify_stream(f, w))
                    o.fail("q=" + std::to_string(f.q()) + " " + format_word(w));
                ++exhaustive;
            }
    std::mt19937_64 rng(0);
    std::uniform_int_distribution<std::size_t> len(100, 1000);
    const auto fields = oracle::small_fields();
    for (int i = 0; i < 100'000; ++i) {
        const Field& f = fields[std::size_t(i) % fields.size()];
        const Word w = oracle::random_word(rng, f.q(), len(rng));
        if (classify_matrix(f, w) != classify_stream(f, w))
            o.fail("q=" + std::to_string(f.q()) + " random word of length " + std::to_string(w.size()));
    }
    o.detail << exhaustive << " exhaustive words, 100000 random words of length 100..1000";
}

// --- 7 -------------------------------------------------------------------------------

void successors(Outcome& o) {
    std::size_t words = 0, orbits = 0;
    for (const Field& f : oracle::small_fields()) {
        if (f.q() > 4) continue;
        for (std::size_t l = 1; l <= 6; ++l) {
            const auto as = enumerate_class(f, l, WordSet::A);
            const std::set<Word> domain(as.begin(), as.end());
            std::set<Word> image;
            const std::string tag = "q=" + std::to_string(f.q()) + " l=" + std::to_string(l);
            for (const auto& w : as) {
                const Word s = successor(f, w);
                if (!domain.count(s)) o.fail(tag + ": successor of " + format_word(w) + " leaves A^l");
                if (!std::equal(w.begin() + 1, w.end(), s.begin())) o.fail(tag + ": successor is not a shift");
                if (predecessor(f, s) != w || successor(f, predecessor(f, w)) != w)
                    o.fail(tag + ": predecessor is not inverse at " + format_word(w));
                image.insert(s);
            }
            if (image != domain) o.fail(tag + ": successor is not onto");
            words += as.size();

            for (const auto& cyc : successor_cycles(f, l)) {
                ++orbits;
                const PeriodicBlock pb = associated_periodic_word(f, cyc.members.front());
                Word stretch;
                while (stretch.size() < pb.r + l) stretch.insert(stretch.end(), pb.block.begin(), pb.block.end());
                for (std::size_t i = 0; i < pb.r; ++i)
                    if (!oracle::in_a_projective(f, std::span<const Elem>(stretch).subspan(i, l)))
                        o.fail(tag + ": orbit word of " + format_word(cyc.members.front()) + " has a C window");
            }
        }
    }
    o.detail << words << " words, " << orbits << " orbits";
}

// --- 8 -------------------------------------------------------------------------------

bool windows_materialized(const Field& f, const PeriodicWord& pw, std::size_t m) {
    if (m == 0) return false; // the empty word is in C
    Word stretch;
    const std::size_t reps = (m + pw.r) / pw.r + 1;
    for (std::size_t k = 0; k < reps; ++k) stretch.insert(stretch.end(), pw.block.begin(), pw.block.end());
    for (std::size_t i = 0; i < pw.r; ++i)
        if (!oracle::in_a_projective(f, std::span<const Elem>(stretch).subspan(i, m))) return false;
    return true;
}

std::string join(const std::vector<std::size_t>& v, std::size_t limit = 6) {
    std::string s;
    for (std::size_t i = 0; i < v.size() && i < limit; ++i) s += (i ? "," : "") + std::to_string(v[i]);
    if (v.size() > limit) s += ",...";
    return s;
}

void periodic(Outcome& o) {
    std::mt19937_64 rng(0);
    std::uniform_int_distribution<std::size_t> len(1, 5);
    std::ostringstream summary;
    for (const Field& f : oracle::small_fields()) {
        const std::uint64_t q = f.q();
        std::size_t length_mismatches = 0, outside_classes = 0;
        for (int i = 0; i < 200; ++i) {
            const PeriodicWord pw = make_periodic(f, oracle::random_word(rng, f.q(), len(rng)));
            const std::uint64_t t = proj_order(pi(f, pw.block));
            const std::string tag = "q=" + std::to_string(q) + " block " + format_word(pw.block);
            if (t > q * q - 1) o.fail(tag + ": t=" + std::to_string(t) + " exceeds q^2-1");
            if (!windows_materialized(f, pw, std::size_t(t) * pw.r - 1))
                o.fail(tag + ": windows of length tr-1 not all in A");
            for (std::uint64_t tp = 1; tp < t; ++tp)
                if (windows_materialized(f, pw, std::size_t(tp) * pw.r - 1))
                    o.fail(tag + ": smaller multiplier " + std::to_string(tp) + " works");

            const std::size_t bound = std::size_t(4 * t) * pw.r;
            const auto admissible = admissible_window_lengths(f, pw, bound);
            const auto predicted = predicted_window_lengths(t, pw.r, bound);
            if (admissible != predicted) {
                ++length_mismatches;
                o.fail(tag + " (r=" + std::to_string(pw.r) + ", t=" + std::to_string(t) + "): admissible {" +
                       join(admissible) + "} != {ltr-1} = {" + join(predicted) + "}");
            }
            if (t != q && (q * q - 1) % t != 0) {
                ++outside_classes;
                if (outside_classes <= 3)
                    o.log.push_back("logged: " + tag + " has t=" + std::to_string(t) +
                                    ", neither q nor a divisor of q^2-1");
            }
        }
        summary << " q=" << q << ": " << length_mismatches << " length-set mismatches, " << outside_classes
                << " t outside {q, divisors of q^2-1};";
    }
    o.detail << "200 blocks per field;" << summary.str();
}

// --- 9 -------------------------------------------------------------------------------

std::size_t brute_cycle_count(const std::vector<Word>& members) {
    std::vector<bool> seen(members.size(), false);
    std::size_t cycles = 0;
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (seen[i]) continue;
        ++cycles;
        for (std::size_t j = i; !seen[j];) {
            seen[j] = true;
            for (std::size_t k = 0; k < members.size(); ++k)
                if (std::equal(members[j].begin() + 1, members[j].end(), members[k].begin())) {
                    j = k;
                    break;
                }
        }
    }
    return cycles;
}

PhiTable random_table(std::mt19937_64& rng, std::uint32_t n, std::size_t d) {
    std::vector<std::vector<Elem>> images(detail::sat_pow(n, d - 2));
    for (auto& img : images) {
        img.resize(n);
        for (Elem i = 0; i < n; ++i) img[i] = i;
        std::shuffle(img.begin(), img.end(), rng);
    }
    return PhiTable::make(n, d, std::move(images));
}

void mpcs(Outcome& o) {
    std::size_t built = 0;
    for (const Field& f : oracle::small_fields()) {
        for (std::size_t l = 2; l <= 6; ++l) {
            const Mpcs m = mpcs_ml(f, l);
            const std::string tag = "q=" + std::to_string(f.q()) + " l=" + std::to_string(l);
            const auto diag = mpcs_check(f.q(), l, m.members());
            if (!diag.valid) o.fail(tag + ": " + diag.reason);
            if (m.members().size() != detail::sat_pow(f.q(), l - 1)) o.fail(tag + ": wrong size");
            if (!(phi_to_mpcs(mpcs_to_phi(m)) == m)) o.fail(tag + ": phi round trip");
            ++built;
        }
    }
    std::mt19937_64 rng(0);
    std::size_t tables = 0;
    for (std::uint32_t n = 2; n <= 5; ++n)
        for (std::size_t d = 2; d <= 4; ++d)
            for (int i = 0; i < 25; ++i) {
                const auto a = random_table(rng, n, d), b = random_table(rng, n, d), c = random_table(rng, n, d);
                const auto id = PhiTable::identity(n, d);
                const std::string tag = "N=" + std::to_string(n) + " d=" + std::to_string(d);
                if (!(mpcs_to_phi(phi_to_mpcs(a)) == a)) o.fail(tag + ": table round trip");
                if (!mpcs_check(n, d, phi_to_mpcs(a).members()).valid) o.fail(tag + ": table image not an MPCS");
                if (!(mpcs_compose(mpcs_compose(a, b), c) == mpcs_compose(a, mpcs_compose(b, c))))
                    o.fail(tag + ": composition not associative");
                if (!(mpcs_compose(a, id) == a) || !(mpcs_compose(id, a) == a)) o.fail(tag + ": identity law");
                if (!(mpcs_compose(a, mpcs_inverse(a)) == id) || !(mpcs_compose(mpcs_inverse(a), a) == id))
                    o.fail(tag + ": inverse law");
                ++tables;
            }
    std::size_t small = 0;
    const std::vector<Elem> id2{0, 1}, swap2{1, 0};
    for (std::size_t d : {2u, 3u}) {
        const std::size_t zcount = detail::sat_pow(2, d - 2);
        for (std::uint32_t mask = 0; mask < (1u << zcount); ++mask) {
            std::vector<std::vector<Elem>> images(zcount);
            for (std::size_t z = 0; z < zcount; ++z) images[z] = (mask >> z) & 1 ? swap2 : id2;
            const Mpcs m = phi_to_mpcs(PhiTable::make(2, d, images));
            const std::size_t brute = brute_cycle_count(m.members());
            if (mpcs_cycles(m).size() != brute || is_debruijn(m) != (brute == 1))
                o.fail("N=2 d=" + std::to_string(d) + " table " + std::to_string(mask) + ": cycle count");
            ++small;
        }
    }
    o.detail << built << " M^l sets, " << tables << " random tables, " << small << " small tables";
}

// --- 10 ------------------------------------------------------------------------------

void identities(Outcome& o) {
    std::size_t pairs = 0;
    for (std::size_t l = 0; l <= 64; ++l) {
        if (!polynomial_identity_check(l).equal) o.fail("polynomial identity at l=" + std::to_string(l));
        for (std::size_t k = 0; k <= l; ++k, ++pairs)
            if (binomial_identity_check(l, k) != 1)
                o.fail("binomial identity at l=" + std::to_string(l) + " k=" + std::to_string(k));
    }
    o.detail << "l <= 64, " << pairs << " (l, k) pairs";
}

// --- 11 ------------------------------------------------------------------------------

void decomposition(Outcome& o) {
    std::ostringstream sizes;
    for (const Field& f : oracle::small_fields()) {
        const auto group = enumerate_sl2(f);
        sizes << (sizes.tellp() ? "," : "") << group.size();
        const std::uint64_t q = f.q();
        if (group.size() != q * (q * q - 1)) o.fail("q=" + std::to_string(q) + ": group order");
        for (const Mat2& m : group) {
            Mat2 prod = Mat2::identity(f);
            for (Elem x : decompose(m)) prod = prod * gen(f, x);
            if (!(prod == m)) o.fail("q=" + std::to_string(q) + ": " + format_mat2(m));
        }
    }
    o.detail << "group orders " << sizes.str();
}

// --- 12 ------------------------------------------------------------------------------

void throughput(Outcome& o) {
    const Field f = Field::make(2, 1);
    std::mt19937_64 rng(0);
    std::vector<Elem> letters(20'000'000);
    for (auto& x : letters) x = Elem(rng() & 1);
    const auto t0 = std::chrono::steady_clock::now();
    StreamClassifier sc(f);
    for (Elem x : letters) sc.push_unchecked(x);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double rate = secs > 0 ? double(letters.size()) / secs : 0.0;
    o.detail << "GF(2): " << std::size_t(rate) << " letters/s (target 1e7, reported only; label "
             << label_char(sc.label()) << ")";
}

struct Criterion {
    int id;
    const char* name;
    void (*run)(Outcome&);
};

const Criterion kCriteria[] = {
    {1, "class counts match closed forms", counting},
    {2, "prime counts match (q-1)^(l-1)", primes},
    {3, "factorization exists and is unique", factorization},
    {4, "extension, truncation, reversal, negation", structure},
    {5, "rewrites preserve class; normal forms", rewriting},
    {6, "matrix and streaming classifiers agree", classifiers},
    {7, "successor is a bijection of A^l", successors},
    {8, "periodic window multipliers and lengths", periodic},
    {9, "mock parity check sets", mpcs},
    {10, "counting identities", identities},
    {11, "SL2 decomposition round trip", decomposition},
    {12, "classifier throughput", throughput},
};

} // namespace

int main(int argc, char** argv) {
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
    bool all_pass = true;
    for (const auto& c : kCriteria) {
        if (!selected.empty() && !selected.count(c.id)) continue;
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2fs", secs);
        std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.name << " ["
                  << o.detail.str() << "] " << timing << '\n';
        for (const auto& line : o.log) std::cout << "      " << line << '\n';
        if (o.violations > 12) std::cout << "      ... " << o.violations << " violations in total\n";
        all_pass = all_pass && o.pass;
    }
    return all_pass ? 0 : 1;
}
