#pragma once

// Command-line front end. Everything goes through run() so tests can drive
// it in-process with string streams.
//
// Exit codes: 0 success (or "A" for classify), 1 domain error (or "C"),
// 2 usage error, 3 enumeration budget exceeded.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gfwords/gfwords.hpp"

namespace gfwords::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

using Json = nlohmann::ordered_json;

inline int exit_code_for(Errc e) {
    switch (e) {
    case Errc::BudgetExceeded: return kExitBudget;
    case Errc::NonPrimeP:
    case Errc::ReducibleModulus:
    case Errc::DegreeMismatch:
    case Errc::UnsupportedField:
    case Errc::BadIndex:
    case Errc::ParseError: return kExitUsage;
    default: return kExitDomain;
    }
}

struct Io {
    std::istream& in;
    std::ostream& out;
    std::ostream& err;
};

namespace detail {

inline std::string read_all(std::istream& in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Contents of a file, or of standard input for "-".
inline std::string slurp(Io& io, const std::string& path) {
    if (path == "-") return read_all(io.in);
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error(Errc::ParseError, "cannot open '" + path + "'");
    return read_all(f);
}

inline WordSet word_set(const std::string& name) {
    if (name == "A") return WordSet::A;
    if (name == "C") return WordSet::C;
    if (name == "P") return WordSet::P;
    return WordSet::Generators;
}

inline EnumStrategy strategy(const std::string& name) {
    if (name == "brute") return EnumStrategy::BruteForce;
    if (name == "tree") return EnumStrategy::Tree;
    return EnumStrategy::Automatic;
}

inline std::string multiplier_name(MultiplierClass c) {
    switch (c) {
    case MultiplierClass::EqualsQ: return "q";
    case MultiplierClass::DividesQSquaredMinusOne: return "divides q^2-1";
    case MultiplierClass::EqualsP: return "p";
    case MultiplierClass::Other: return "other";
    }
    return "other";
}

inline std::string csv_cell(const std::string& s) {
    return s.find(',') == std::string::npos ? s : '"' + s + '"';
}

inline std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace detail

struct Options {
    std::string field;
    std::string modulus;
    std::string format = "plain";
    std::string word;
    bool from_stdin = false;
    bool raw = false;
    bool trace = false;
    std::size_t len = 0;
    std::string cls = "A";
    bool count_only = false;
    std::uint64_t budget = EnumOptions{}.budget;
    unsigned threads = 1;
    std::string strategy = "auto";
    std::size_t steps = 1;
    bool predecessor = false;
    std::string block;
    std::string orbit_word;
    std::size_t bound = 0;
    std::string input = "-";
    std::string left, right;
    std::size_t max_l = 64;
    std::string matrix;
    std::vector<std::string> fields;
    std::size_t max_len = 8;
    std::uint64_t n = 10'000'000;
    std::uint64_t seed = 0;
};

class Runner {
public:
    Runner(Options& o, Io& io) : o_(o), io_(io) {}

    Field field() const { return Field::parse(o_.field, o_.modulus); }

    EnumOptions enum_options() const {
        EnumOptions opt;
        opt.budget = o_.budget;
        opt.threads = o_.threads;
        opt.strategy = detail::strategy(o_.strategy);
        return opt;
    }

    int classify() {
        const Field f = field();
        StreamClassifier sc(f);
        auto push = [&](Elem x) {
            sc.push(x);
            if (o_.trace) io_.out << format_state(sc.state()) << '\n';
        };
        if (o_.raw) {
            if (f.q() > 256) throw Error(Errc::UnsupportedField, "raw input needs q <= 256");
            std::istreambuf_iterator<char> it(io_.in), end;
            for (; it != end; ++it) push(Elem(static_cast<unsigned char>(*it)));
        } else if (o_.from_stdin) {
            std::string line;
            while (std::getline(io_.in, line)) {
                line = detail::trim(line);
                if (!line.empty()) push(gfwords::detail::parse_uint(line, "letter"));
            }
        } else {
            for (Elem x : parse_word(f, o_.word)) push(x);
        }
        io_.out << label_char(sc.label()) << '\n';
        return sc.in_a() ? kExitOk : kExitDomain;
    }

    int enumerate() {
        const Field f = field();
        const EnumOptions opt = enum_options();
        std::vector<Word> words;
        std::uint64_t count = 0;
        if (o_.cls == "M") {
            words = mpcs_ml(f, o_.len, opt).members();
            count = words.size();
        } else if (o_.count_only) {
            count = count_class(f, o_.len, detail::word_set(o_.cls), opt);
        } else {
            words = enumerate_class(f, o_.len, detail::word_set(o_.cls), opt);
            count = words.size();
        }
        if (o_.format == "json") {
            Json j;
            j["field"] = f.designation();
            j["length"] = o_.len;
            j["class"] = o_.cls;
            j["count"] = count;
            if (!o_.count_only) {
                j["words"] = Json::array();
                for (const auto& w : words) j["words"].push_back(format_word(w));
            }
            io_.out << j.dump() << '\n';
        } else if (o_.count_only) {
            io_.out << count << '\n';
        } else {
            if (o_.format == "csv") io_.out << "word\n";
            for (const auto& w : words) io_.out << detail::csv_cell(format_word_compact(f, w)) << '\n';
        }
        return kExitOk;
    }

    int factor() {
        const Field f = field();
        const Factorization fac = factorize(f, parse_word(f, o_.word));
        Json j;
        j["primes"] = Json::array();
        for (const auto& p : fac.primes) j["primes"].push_back(format_word(p));
        j["separators"] = fac.separators;
        io_.out << j.dump() << '\n';
        return kExitOk;
    }

    int compose() {
        const Field f = field();
        Json j;
        try {
            j = Json::parse(detail::slurp(io_, o_.input));
        } catch (const Json::exception& e) {
            throw Error(Errc::ParseError, e.what());
        }
        Factorization fac;
        try {
            for (const auto& p : j.at("primes")) fac.primes.push_back(parse_word(f, p.get<std::string>()));
            for (const auto& s : j.at("separators")) fac.separators.push_back(s.get<Elem>());
        } catch (const Json::exception& e) {
            throw Error(Errc::ParseError, e.what());
        }
        io_.out << format_word(compose_factorization(f, fac)) << '\n';
        return kExitOk;
    }

    int successor_cmd() {
        const Field f = field();
        Word w = parse_word(f, o_.word);
        for (std::size_t i = 0; i < o_.steps; ++i) {
            w = o_.predecessor ? predecessor(f, w) : successor(f, w);
            io_.out << format_word_compact(f, w) << '\n';
        }
        return kExitOk;
    }

    int orbit_cmd() {
        const Field f = field();
        const Word w = parse_word(f, o_.word);
        const OrbitCycle cyc = orbit(f, w);
        if (o_.format == "json") {
            const PeriodicBlock pb = associated_periodic_word(f, w);
            Json j;
            j["period"] = cyc.period();
            j["members"] = Json::array();
            for (const auto& m : cyc.members) j["members"].push_back(format_word(m));
            j["block"] = format_word(pb.block);
            j["r"] = pb.r;
            io_.out << j.dump() << '\n';
        } else {
            for (const auto& m : cyc.members) io_.out << format_word_compact(f, m) << '\n';
        }
        return kExitOk;
    }

    int cycles_cmd() {
        const Field f = field();
        const auto cycles = successor_cycles(f, o_.len, enum_options());
        if (o_.format == "json") {
            Json j;
            j["count"] = cycles.size();
            j["cycles"] = Json::array();
            for (const auto& c : cycles) {
                Json members = Json::array();
                for (const auto& m : c.members) members.push_back(format_word(m));
                j["cycles"].push_back(members);
            }
            io_.out << j.dump() << '\n';
        } else {
            for (const auto& c : cycles) {
                for (std::size_t i = 0; i < c.members.size(); ++i)
                    io_.out << (i ? " " : "") << format_word_compact(f, c.members[i]);
                io_.out << '\n';
            }
        }
        return kExitOk;
    }

    int period() {
        const Field f = field();
        const Word block = o_.orbit_word.empty() ? parse_word(f, o_.block)
                                                 : associated_periodic_word(f, parse_word(f, o_.orbit_word)).block;
        const PeriodicWord pw = make_periodic(f, block);
        const WindowReport rep = window_multiplier(f, pw);
        const std::size_t bound = o_.bound ? o_.bound : std::size_t(4 * rep.t * pw.r);
        Json j;
        j["r"] = pw.r;
        j["t"] = rep.t;
        j["verified"] = rep.verified;
        j["lengths"] = admissible_window_lengths(f, pw, bound);
        j["predicted"] = predicted_window_lengths(rep.t, pw.r, bound);
        j["multiplier"] = detail::multiplier_name(classify_multiplier(f, rep.t));
        io_.out << j.dump() << '\n';
        return kExitOk;
    }

    int mpcs_check_cmd() {
        std::istringstream in(detail::slurp(io_, o_.input));
        const MpcsText t = parse_mpcs_text(in);
        const auto diag = mpcs_check(t.n, t.d, t.members);
        if (diag.valid) {
            io_.out << "valid\n";
            return kExitOk;
        }
        io_.out << "invalid: " << diag.reason;
        if (diag.witness) io_.out << " (witness " << format_word(*diag.witness) << ')';
        io_.out << '\n';
        return kExitDomain;
    }

    int mpcs_to_phi_cmd() {
        std::istringstream in(detail::slurp(io_, o_.input));
        const MpcsText t = parse_mpcs_text(in);
        io_.out << format_phi(mpcs_to_phi(t.n, t.d, t.members));
        return kExitOk;
    }

    int mpcs_from_phi_cmd() {
        std::istringstream in(detail::slurp(io_, o_.input));
        io_.out << format_mpcs(phi_to_mpcs(parse_phi(in)));
        return kExitOk;
    }

    int mpcs_compose_cmd() {
        std::istringstream l(detail::slurp(io_, o_.left)), r(detail::slurp(io_, o_.right));
        const PhiTable f = parse_phi(l);
        const PhiTable g = parse_phi(r);
        io_.out << format_phi(mpcs_compose(f, g));
        return kExitOk;
    }

    int mpcs_cycles_cmd() {
        std::istringstream in(detail::slurp(io_, o_.input));
        const MpcsText t = parse_mpcs_text(in);
        const Mpcs m = Mpcs::make(t.n, t.d, t.members);
        const auto cycles = mpcs_cycles(m);
        if (o_.format == "json") {
            Json j;
            j["count"] = cycles.size();
            j["debruijn"] = cycles.size() == 1;
            j["cycles"] = Json::array();
            for (const auto& c : cycles) {
                Json members = Json::array();
                for (const auto& w : c) members.push_back(format_word(w));
                j["cycles"].push_back(members);
            }
            io_.out << j.dump() << '\n';
        } else {
            for (const auto& c : cycles) {
                for (std::size_t i = 0; i < c.size(); ++i) io_.out << (i ? " " : "") << format_word(c[i]);
                io_.out << '\n';
            }
        }
        return kExitOk;
    }

    int mpcs_ml_cmd() {
        io_.out << format_mpcs(mpcs_ml(field(), o_.len, enum_options()));
        return kExitOk;
    }

    int identity() {
        bool all = true;
        Json failures = Json::array();
        if (o_.format != "json") io_.out << "l,polynomial,binomial\n";
        for (std::size_t l = 0; l <= o_.max_l; ++l) {
            const bool poly = polynomial_identity_check(l).equal;
            bool binom = true;
            for (std::size_t k = 0; k <= l; ++k) binom = binom && binomial_identity_check(l, k) == 1;
            all = all && poly && binom;
            if (!poly || !binom) failures.push_back(l);
            if (o_.format != "json")
                io_.out << l << ',' << (poly ? "ok" : "FAIL") << ',' << (binom ? "ok" : "FAIL") << '\n';
        }
        if (o_.format == "json") {
            Json j;
            j["max_l"] = o_.max_l;
            j["all_hold"] = all;
            j["failures"] = failures;
            io_.out << j.dump() << '\n';
        }
        return all ? kExitOk : kExitDomain;
    }

    int decompose_cmd() {
        const Field f = field();
        const Word w = decompose(parse_mat2(f, o_.matrix));
        if (o_.format == "json") {
            Json j;
            j["word"] = format_word(w);
            j["length"] = w.size();
            io_.out << j.dump() << '\n';
        } else {
            io_.out << format_word(w) << '\n';
        }
        return kExitOk;
    }

    int count() {
        bool all = true;
        const EnumOptions opt = enum_options();
        io_.out << "q,l,countA_formula,countA_enumerated,match\n";
        for (const auto& designation : o_.fields) {
            const Field f = Field::parse(designation, "");
            for (std::size_t l = 0; l <= o_.max_len; ++l) {
                const BigInt formula = count_formula(f.q(), l).a;
                const std::uint64_t enumerated = count_class(f, l, WordSet::A, opt);
                const bool match = formula == enumerated;
                all = all && match;
                io_.out << f.q() << ',' << l << ',' << formula << ',' << enumerated << ','
                        << (match ? "true" : "false") << '\n';
            }
        }
        return all ? kExitOk : kExitDomain;
    }

    // Throughput of the O(1) reduction classifier against running products
    // of 2x2 matrices, over the same letters.
    int bench() {
        const Field f = field();
        std::vector<Elem> letters;
        if (o_.raw) {
            if (f.q() > 256) throw Error(Errc::UnsupportedField, "raw input needs q <= 256");
            const std::string bytes = detail::read_all(io_.in);
            letters.reserve(bytes.size());
            for (unsigned char c : bytes) {
                f.check(c);
                letters.push_back(c);
            }
        } else {
            std::mt19937_64 rng(o_.seed);
            letters.resize(o_.n);
            for (auto& x : letters) x = Elem(rng() % f.q());
        }
        using Clock = std::chrono::steady_clock;
        auto rate = [&](double secs) { return secs > 0 ? double(letters.size()) / secs : 0.0; };

        const auto t0 = Clock::now();
        StreamClassifier sc(f);
        for (Elem x : letters) sc.push_unchecked(x);
        const ClassLabel stream_label = sc.label();
        const auto t1 = Clock::now();
        std::array<Elem, 4> m{1, 0, 0, 1};
        for (Elem x : letters) gfwords::detail::right_mul_gen(f, m, x);
        const ClassLabel matrix_label = m[3] == 0 ? ClassLabel::A : ClassLabel::C;
        const auto t2 = Clock::now();

        const double stream_rate = rate(std::chrono::duration<double>(t1 - t0).count());
        const double matrix_rate = rate(std::chrono::duration<double>(t2 - t1).count());
        const bool agree = stream_label == matrix_label;
        if (o_.format == "json") {
            Json j;
            j["field"] = f.designation();
            j["letters"] = letters.size();
            j["label"] = std::string(1, label_char(stream_label));
            j["agree"] = agree;
            j["stream_letters_per_sec"] = stream_rate;
            j["matrix_letters_per_sec"] = matrix_rate;
            io_.out << j.dump() << '\n';
        } else {
            io_.out << "letters " << letters.size() << '\n'
                    << "label " << label_char(stream_label) << (agree ? "" : " (matrix disagrees)") << '\n'
                    << "stream " << std::fixed << std::setprecision(0) << stream_rate << " letters/s\n"
                    << "matrix " << matrix_rate << " letters/s\n";
        }
        return agree ? kExitOk : kExitDomain;
    }

private:
    Options& o_;
    Io& io_;
};

inline int run(std::vector<std::string> args, std::istream& in, std::ostream& out, std::ostream& err) {
    Options o;
    Io io{in, out, err};
    Runner r(o, io);

    CLI::App app{"Arithmetic on words over finite fields", "gfwords"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every command");

    auto add_field = [&](CLI::App* s) {
        s->add_option("--field", o.field, "Field designation p or p^d")->required();
        s->add_option("--modulus", o.modulus, "Irreducible modulus coefficients c0,...,cd");
    };
    auto add_format = [&](CLI::App* s, std::vector<std::string> allowed) {
        s->add_option("--format", o.format, "Output format")->check(CLI::IsMember(allowed));
    };
    auto add_enum = [&](CLI::App* s) {
        s->add_option("--budget", o.budget, "Node budget for enumeration");
        s->add_option("--threads", o.threads, "Worker threads")->check(CLI::Range(1u, 256u));
        s->add_option("--strategy", o.strategy, "auto, brute or tree")
            ->check(CLI::IsMember({"auto", "brute", "tree"}));
    };
    auto add_word = [&](CLI::App* s, bool required = true) {
        auto* opt = s->add_option("--word", o.word, "Word as comma-separated letter indices");
        if (required) opt->required();
        return opt;
    };

    auto* classify = app.add_subcommand("classify", "Print A or C for a word");
    add_field(classify);
    auto* word_opt = add_word(classify, false);
    auto* stdin_opt = classify->add_flag("--stdin", o.from_stdin, "Read one letter index per line");
    auto* raw_opt = classify->add_flag("--raw", o.raw, "Read one byte per letter from stdin");
    word_opt->excludes(stdin_opt)->excludes(raw_opt);
    stdin_opt->excludes(raw_opt);
    classify->add_flag("--trace", o.trace, "Print the reduction state after each letter");

    auto* enumerate = app.add_subcommand("enumerate", "List words of one class and length");
    add_field(enumerate);
    enumerate->add_option("--len", o.len, "Word length")->required();
    enumerate->add_option("--class", o.cls, "A, C, P, M or generators")
        ->check(CLI::IsMember({"A", "C", "P", "M", "generators"}));
    enumerate->add_flag("--count-only", o.count_only, "Print only the number of words");
    add_format(enumerate, {"plain", "csv", "json"});
    add_enum(enumerate);

    auto* factor = app.add_subcommand("factor", "Prime factorization of a word in A (JSON)");
    add_field(factor);
    add_word(factor);

    auto* compose = app.add_subcommand("compose", "Rebuild a word from factor output");
    add_field(compose);
    compose->add_option("--input", o.input, "Factorization JSON file, - for stdin");

    auto* succ = app.add_subcommand("successor", "Iterate the successor permutation of A^l");
    add_field(succ);
    add_word(succ);
    succ->add_option("--steps", o.steps, "Number of steps");
    succ->add_flag("--predecessor", o.predecessor, "Step backwards");

    auto* orb = app.add_subcommand("orbit", "Successor orbit of a word in A");
    add_field(orb);
    add_word(orb);
    add_format(orb, {"plain", "json"});

    auto* cyc = app.add_subcommand("cycles", "Cycle decomposition of the successor permutation");
    add_field(cyc);
    cyc->add_option("--len", o.len, "Word length")->required();
    add_format(cyc, {"plain", "json"});
    add_enum(cyc);

    auto* period = app.add_subcommand("period", "Window analysis of a periodic word (JSON)");
    add_field(period);
    auto* block_opt = period->add_option("--block", o.block, "Period block");
    auto* ow_opt = period->add_option("--orbit-word", o.orbit_word, "Use the periodic word of this word's orbit");
    block_opt->excludes(ow_opt);
    period->add_option("--bound", o.bound, "Largest window length to test (default 4tr)");

    auto* mpcs = app.add_subcommand("mpcs", "Mock parity check sets");
    mpcs->require_subcommand(1);
    auto* mcheck = mpcs->add_subcommand("check", "Validate an MPCS file");
    mcheck->add_option("--input", o.input, "MPCS file, - for stdin");
    auto* mto = mpcs->add_subcommand("to-phi", "MPCS to its permutation table");
    mto->add_option("--input", o.input, "MPCS file, - for stdin");
    auto* mfrom = mpcs->add_subcommand("from-phi", "Permutation table to its MPCS");
    mfrom->add_option("--input", o.input, "Table file, - for stdin");
    auto* mcomp = mpcs->add_subcommand("compose", "Compose two permutation tables, left after right");
    mcomp->add_option("--left", o.left, "Table file")->required();
    mcomp->add_option("--right", o.right, "Table file")->required();
    auto* mcyc = mpcs->add_subcommand("cycles", "Cycles of an MPCS");
    mcyc->add_option("--input", o.input, "MPCS file, - for stdin");
    add_format(mcyc, {"plain", "json"});
    auto* mml = mpcs->add_subcommand("ml", "The MPCS built from A-words");
    add_field(mml);
    mml->add_option("--len", o.len, "Word length d")->required();
    add_enum(mml);

    auto* ident = app.add_subcommand("identity", "Check the counting identities up to a bound");
    ident->add_option("--max-l", o.max_l, "Largest l");
    add_format(ident, {"plain", "json"});

    auto* dec = app.add_subcommand("decompose", "Write an SL2 matrix as a word");
    add_field(dec);
    dec->add_option("--matrix", o.matrix, "Entries a,b,c,d")->required();
    add_format(dec, {"plain", "json"});

    auto* count = app.add_subcommand("count", "Compare |A^l| with its closed form (CSV)");
    count->add_option("--field", o.fields, "Field designation, repeatable")->required();
    count->add_option("--max-len", o.max_len, "Largest l");
    add_enum(count);

    auto* bench = app.add_subcommand("bench", "Classifier throughput");
    bench->add_option("--field", o.field, "Field designation")->default_str("2");
    bench->add_option("--modulus", o.modulus, "Irreducible modulus coefficients c0,...,cd");
    bench->add_option("--n", o.n, "Number of random letters");
    bench->add_option("--seed", o.seed, "Random seed");
    bench->add_flag("--raw", o.raw, "Read one byte per letter from stdin instead");
    add_format(bench, {"plain", "json"});

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (o.field.empty() && bench->parsed()) o.field = "2";
        if (classify->parsed()) {
            if (!word_opt->count() && !o.from_stdin && !o.raw) {
                err << "classify: one of --word, --stdin, --raw is required\n";
                return kExitUsage;
            }
            return r.classify();
        }
        if (enumerate->parsed()) return r.enumerate();
        if (factor->parsed()) return r.factor();
        if (compose->parsed()) return r.compose();
        if (succ->parsed()) return r.successor_cmd();
        if (orb->parsed()) return r.orbit_cmd();
        if (cyc->parsed()) return r.cycles_cmd();
        if (period->parsed()) {
            if (!block_opt->count() && !ow_opt->count()) {
                err << "period: one of --block, --orbit-word is required\n";
                return kExitUsage;
            }
            return r.period();
        }
        if (mcheck->parsed()) return r.mpcs_check_cmd();
        if (mto->parsed()) return r.mpcs_to_phi_cmd();
        if (mfrom->parsed()) return r.mpcs_from_phi_cmd();
        if (mcomp->parsed()) return r.mpcs_compose_cmd();
        if (mcyc->parsed()) return r.mpcs_cycles_cmd();
        if (mml->parsed()) return r.mpcs_ml_cmd();
        if (ident->parsed()) return r.identity();
        if (dec->parsed()) return r.decompose_cmd();
        if (count->parsed()) return r.count();
        if (bench->parsed()) return r.bench();
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    }
    return kExitUsage;
}

} // namespace gfwords::cli
