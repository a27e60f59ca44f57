#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "shrinklab/shrinklab.hpp"

namespace {

using namespace shrinklab;

constexpr const char* kVersion = "0.1.0";

// Exit-code contract: 0 success/verified, 1 a checked condition failed,
// 2 usage or input errors, 3 bounds exhausted before a verdict.
constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;
constexpr int kInconclusive = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    out << text;
}

Grammar load_grammar(const std::string& path) { return parse_grammar(read_file(path)); }

// One word per line; blank lines and '#' comments are skipped.
std::vector<std::string> read_word_lines(const std::string& path) {
    std::istringstream in(read_file(path));
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        std::size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) {
            continue;
        }
        std::size_t e = line.find_last_not_of(" \t\r");
        std::string word = line.substr(b, e - b + 1);
        if (word[0] == '#') {
            continue;
        }
        out.push_back(std::move(word));
    }
    return out;
}

struct BoundOverrides {
    std::optional<std::size_t> max_depth;
    std::optional<std::size_t> max_steps;
};

std::optional<std::size_t> env_default_depth() {
    const char* v = std::getenv("SHRINKLAB_DEFAULT_DEPTH");
    if (!v || !*v) {
        return std::nullopt;
    }
    char* end = nullptr;
    unsigned long long n = std::strtoull(v, &end, 10);
    if (end == v || *end != '\0') {
        std::cerr << "note: ignoring non-numeric SHRINKLAB_DEFAULT_DEPTH\n";
        return std::nullopt;
    }
    return static_cast<std::size_t>(n);
}

SearchBounds bounds_for_length(std::size_t len, const Grammar& g, const BoundOverrides& o) {
    SearchBounds b = SearchBounds::for_word_length(len, g);
    if (o.max_depth) {
        b.max_index_depth = *o.max_depth;
    } else if (auto d = env_default_depth()) {
        b.max_index_depth = *d;
    }
    if (o.max_steps) {
        b.max_steps = *o.max_steps;
    }
    return b;
}

void add_bound_flags(CLI::App* cmd, BoundOverrides& o) {
    cmd->add_option("--max-depth", o.max_depth, "Cap on the index-stack depth during search");
    cmd->add_option("--max-steps", o.max_steps, "Cap on rewrite steps during search");
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

Grammar normalized_for_use(const std::string& path) {
    Grammar g = load_grammar(path);
    if (is_normal_form(g).empty()) {
        return g;
    }
    std::cerr << "note: grammar is not in normal form; normalizing first\n";
    return to_normal_form(g).grammar;
}

const char* membership_name(Membership s) {
    switch (s) {
        case Membership::yes:
            return "yes";
        case Membership::no_within_bounds:
            return "no_within_bounds";
        case Membership::unknown:
            return "unknown";
    }
    return "unknown";
}

std::string describe_origin(const Grammar& g, const FactorOrigin& o) {
    switch (o.kind) {
        case FactorOrigin::Kind::left_context:
            return "left context";
        case FactorOrigin::Kind::right_context:
            return "right context";
        case FactorOrigin::Kind::unit:
            break;
    }
    return "unit " + (o.symbol ? format_gsym(g, *o.symbol) : std::string("?"));
}

struct ParseArgs {
    std::string grammar;
    bool as_json = false;
};

int run_parse(const ParseArgs& a) {
    Grammar g = load_grammar(a.grammar);
    if (a.as_json) {
        json j;
        j["terminals"] = g.terminal_names;
        j["nonterminals"] = g.nonterminal_names;
        j["indices"] = g.index_names;
        j["start"] = g.nonterminal_name(g.start);
        json prods = json::array();
        for (const Production& p : g.productions) {
            prods.push_back(format_production(g, p));
        }
        j["productions"] = std::move(prods);
        emit(j);
        return kOk;
    }
    std::cout << "ok: " << g.terminal_names.size() << " terminals, " << g.nonterminal_names.size()
              << " nonterminals, " << g.index_names.size() << " indices, " << g.productions.size()
              << " productions\n";
    return kOk;
}

struct NormalizeArgs {
    std::string grammar;
    std::string output;
    std::optional<std::size_t> check_bound;
    bool as_json = false;
};

int run_normalize(const NormalizeArgs& a) {
    Grammar raw = load_grammar(a.grammar);
    NormalizeResult nr = to_normal_form(raw);
    for (const std::string& note : nr.notes) {
        std::cerr << "note: " << note << "\n";
    }
    std::string text = format_grammar(nr.grammar);

    bool agree = true;
    std::size_t word_count = 0;
    if (a.check_bound) {
        EnumerationResult before = enumerate_words(raw, *a.check_bound);
        EnumerationResult after = enumerate_words(nr.grammar, *a.check_bound);
        agree = before.words == after.words;
        word_count = after.words.size();
        if (!agree) {
            for (const Word& w : before.words) {
                if (!after.words.count(w)) {
                    std::cerr << "lost word: " << format_word(raw, w) << "\n";
                }
            }
            for (const Word& w : after.words) {
                if (!before.words.count(w)) {
                    std::cerr << "new word: " << format_word(nr.grammar, w) << "\n";
                }
            }
        }
    }

    if (a.as_json) {
        json j;
        j["grammar"] = text;
        j["notes"] = nr.notes;
        if (a.check_bound) {
            json c;
            c["bound"] = *a.check_bound;
            c["agree"] = agree;
            c["words"] = word_count;
            j["check"] = std::move(c);
        }
        emit(j);
    } else if (!a.output.empty()) {
        write_file(a.output, text);
    } else {
        std::cout << text;
    }
    if (a.check_bound && !a.as_json) {
        std::cerr << (agree ? "check: languages agree up to length " :
                              "check: languages DIFFER up to length ")
                  << *a.check_bound << " (" << word_count << " words)\n";
    }
    return agree ? kOk : kFailed;
}

struct EnumerateArgs {
    std::string grammar;
    std::size_t max_len = 0;
    BoundOverrides bounds;
    bool as_json = false;
};

int run_enumerate(const EnumerateArgs& a) {
    Grammar g = load_grammar(a.grammar);
    EnumerationResult r = enumerate_words(g, a.max_len, bounds_for_length(a.max_len, g, a.bounds));
    if (a.as_json) {
        json j;
        j["max_len"] = a.max_len;
        j["complete"] = r.complete;
        json words = json::array();
        for (const Word& w : r.words) {
            words.push_back(format_word(g, w));
        }
        j["words"] = std::move(words);
        emit(j);
        return kOk;
    }
    for (const Word& w : r.words) {
        std::cout << format_word(g, w) << "\n";
    }
    if (!r.complete) {
        std::cerr << "note: search bounds were reached; longer derivations may exist\n";
    }
    return kOk;
}

struct MemberArgs {
    std::string grammar;
    std::string word;
    std::string emit_tree;
    std::string emit_dot;
    std::optional<std::size_t> max_len;
    BoundOverrides bounds;
    bool as_json = false;
};

int run_member(const MemberArgs& a) {
    Grammar g = load_grammar(a.grammar);
    Word w = parse_word(g, a.word);
    std::size_t len = a.max_len ? *a.max_len : w.size();
    MembershipResult r = is_member(g, w, bounds_for_length(len, g, a.bounds));

    if (r.status == Membership::yes) {
        if (!a.emit_tree.empty()) {
            write_file(a.emit_tree, tree_to_json(g, *r.tree).dump(2) + "\n");
        }
        if (!a.emit_dot.empty()) {
            write_file(a.emit_dot, tree_to_dot(g, *r.tree));
        }
    }
    if (a.as_json) {
        json j;
        j["word"] = format_word(g, w);
        j["status"] = membership_name(r.status);
        j["steps"] = r.stats.steps;
        emit(j);
    } else {
        switch (r.status) {
            case Membership::yes:
                std::cout << "yes\n";
                break;
            case Membership::no_within_bounds:
                std::cout << "no (no derivation within bounds)\n";
                break;
            case Membership::unknown:
                std::cout << "unknown (search bounds exhausted)\n";
                break;
        }
    }
    switch (r.status) {
        case Membership::yes:
            return kOk;
        case Membership::no_within_bounds:
            return kFailed;
        case Membership::unknown:
            return kInconclusive;
    }
    return kInconclusive;
}

struct ShrinkArgs {
    std::string grammar;
    std::string word;
    std::size_t m = 1;
    std::vector<std::size_t> distinguish;
    bool chain = false;
    std::string emit_cert;
    std::string strategy = "max-length";
    BoundOverrides bounds;
    bool as_json = false;
};

int run_shrink(const ShrinkArgs& a) {
    Grammar g = normalized_for_use(a.grammar);
    Word w = parse_word(g, a.word);
    DistinguishStrategy strategy = a.strategy == "parikh" ? DistinguishStrategy::parikh_per_letter
                                                          : DistinguishStrategy::max_length_factor;
    ZTable z = approximate_z(g, a.m);

    MembershipResult start = is_member(g, w, bounds_for_length(w.size(), g, a.bounds));
    if (start.status == Membership::no_within_bounds) {
        std::cerr << "error: the word is not derivable within bounds\n";
        return kFailed;
    }
    if (start.status == Membership::unknown) {
        std::cerr << "error: membership search bounds exhausted\n";
        return kInconclusive;
    }

    try {
        if (a.chain) {
            ChainResult chain = shrink_chain(g, w, a.m, strategy, z);
            if (!a.emit_cert.empty()) {
                write_file(a.emit_cert, chain_to_json(g, chain).dump(2) + "\n");
            }
            if (a.as_json) {
                emit(chain_to_json(g, chain));
            } else {
                for (const Word& u : chain.words) {
                    std::cout << format_word(g, u) << "\n";
                }
                std::cerr << "chain: " << chain.certificates.size() << " shrink steps (k = "
                          << z.shrink_constant << ")\n";
            }
            return kOk;
        }

        DerivationTree t = std::move(*start.tree);
        Vertex p = select_vertex(g, t, z);
        Factorization fz = factorize(g, t, p);
        std::set<std::size_t> distinguished;
        if (a.distinguish.empty()) {
            distinguished = choose_distinguished(g, fz, a.m, strategy);
        } else {
            distinguished.insert(a.distinguish.begin(), a.distinguish.end());
        }
        ShrinkCertificate cert = shrink(g, std::move(t), fz, distinguished, z);
        if (!a.emit_cert.empty()) {
            write_file(a.emit_cert, certificate_to_json(g, cert).dump(2) + "\n");
        }
        if (a.as_json) {
            emit(certificate_to_json(g, cert));
            return kOk;
        }
        std::cout << "w: " << format_word(g, w) << "\n";
        std::cout << "m: " << z.m << ", C: " << z.cover_length_bound
                  << ", k: " << z.shrink_constant << "\n";
        std::cout << "factors:\n";
        for (std::size_t i = 0; i < cert.factorization.factors.size(); ++i) {
            std::cout << "  " << i + 1 << ". " << format_word(g, cert.factorization.factors[i])
                      << "  (" << describe_origin(g, cert.factorization.origins[i]) << ")\n";
        }
        auto print_indices = [](const char* head, const auto& xs) {
            std::cout << head;
            for (std::size_t x : xs) {
                std::cout << " " << x + 1;
            }
            std::cout << "\n";
        };
        print_indices("distinguished:", cert.distinguished);
        print_indices("kept:", cert.kept);
        std::cout << "alpha: " << format_index_free(g, cert.alpha) << "\n";
        std::cout << "v: " << format_word(g, cert.v) << "\n";
        return kOk;
    } catch (const ShrinkError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return std::string(e.what()).find("too coarse") != std::string::npos ? kInconclusive
                                                                             : kFailed;
    }
}

struct CheckArgs {
    std::string grammar;
    std::size_t max_len = 0;
    std::size_t m = 1;
    BoundOverrides bounds;
    bool as_json = false;
};

int run_check(const CheckArgs& a) {
    Grammar g = normalized_for_use(a.grammar);
    ZTable z = approximate_z(g, a.m);
    EnumerationResult words =
        enumerate_words(g, a.max_len, bounds_for_length(a.max_len, g, a.bounds));

    std::size_t passed = 0;
    std::size_t failed = 0;
    json reports = json::array();
    if (!a.as_json) {
        std::cout << "k = " << z.shrink_constant << ", m = " << a.m << "\n";
    }
    for (const Word& w : words.words) {
        if (w.size() < z.shrink_constant) {
            continue;
        }
        TheoremReport report = verify_theorem_a(g, w, a.m, z);
        (report.passed ? passed : failed) += 1;
        if (a.as_json) {
            reports.push_back(report_to_json(g, report));
        } else {
            std::cout << (report.passed ? "PASS " : "FAIL ") << format_word(g, w) << ": "
                      << report.message << " (r = " << report.r << ", " << report.outcomes.size()
                      << " subsets)\n";
        }
    }
    if (a.as_json) {
        json j;
        j["m"] = a.m;
        j["k"] = z.shrink_constant;
        j["max_len"] = a.max_len;
        j["passed"] = failed == 0;
        j["reports"] = std::move(reports);
        emit(j);
    } else {
        std::cout << "checked " << passed + failed << " words: " << passed << " passed, " << failed
                  << " failed\n";
        if (passed + failed == 0) {
            std::cerr << "note: no enumerated word reaches length k\n";
        }
    }
    return failed == 0 ? kOk : kFailed;
}

struct RefuteArgs {
    std::string sample;
    std::string word;
    std::size_t k = 0;
    std::size_t m = 1;
    std::optional<std::size_t> work_cap;
    bool as_json = false;
};

int run_refute(const RefuteArgs& a) {
    std::vector<std::string> lines = read_word_lines(a.sample);
    std::set<std::string> sample(lines.begin(), lines.end());
    RefutationVerdict verdict =
        a.work_cap ? refute_decomposition(sample, a.word, a.k, a.m, *a.work_cap)
                   : refute_decomposition(sample, a.word, a.k, a.m);
    if (a.as_json) {
        emit(verdict_to_json(verdict));
    }
    switch (verdict.status) {
        case RefutationStatus::no_valid_decomposition:
            if (!a.as_json) {
                std::cout << "refuted: no factorization of \"" << a.word << "\" into r in ("
                          << a.m << ", " << a.k << "] parts satisfies the cover condition ("
                          << verdict.factorizations << " factorizations, " << verdict.subproducts
                          << " subproducts tested)\n";
            }
            return kOk;
        case RefutationStatus::decomposition_found: {
            if (!a.as_json) {
                const Decomposition& d = *verdict.decomposition;
                std::cout << "decomposition exists:\n";
                for (std::size_t i = 0; i < d.factors.size(); ++i) {
                    std::cout << "  " << i + 1 << ". \"" << d.factors[i] << "\"\n";
                }
            }
            return kFailed;
        }
        case RefutationStatus::inconclusive:
            if (!a.as_json) {
                std::cout << "inconclusive: the work cap was exhausted\n";
            }
            return kInconclusive;
    }
    return kInconclusive;
}

struct AntichainArgs {
    std::string file;
    std::optional<std::size_t> m;
    bool as_json = false;
};

int run_antichain(const AntichainArgs& a) {
    std::set<std::vector<char>> ys;
    for (const std::string& line : read_word_lines(a.file)) {
        ys.insert(std::vector<char>(line.begin(), line.end()));
    }
    std::set<std::vector<char>> cover = a.m ? distinguished_cover(ys, *a.m) : minimal_elements(ys);
    if (a.as_json) {
        json j;
        if (a.m) {
            j["m"] = *a.m;
        }
        json words = json::array();
        for (const std::vector<char>& w : cover) {
            words.push_back(std::string(w.begin(), w.end()));
        }
        j["words"] = std::move(words);
        emit(j);
        return kOk;
    }
    for (const std::vector<char>& w : cover) {
        std::cout << std::string(w.begin(), w.end()) << "\n";
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Indexed-grammar toolkit: parsing, normalization, bounded derivation search, "
                 "and constructive word shrinking"};
    app.set_version_flag("--version", std::string("shrinklab ") + kVersion);
    app.require_subcommand(1);

    ParseArgs parse_args;
    CLI::App* parse_cmd = app.add_subcommand("parse", "Parse and validate a grammar file");
    parse_cmd->add_option("grammar", parse_args.grammar, "Grammar file (.ig)")
        ->required()
        ->check(CLI::ExistingFile);
    parse_cmd->add_flag("--json", parse_args.as_json, "Machine-readable output");

    NormalizeArgs normalize_args;
    CLI::App* normalize_cmd =
        app.add_subcommand("normalize", "Rewrite a grammar into shrinking normal form");
    normalize_cmd->add_option("grammar", normalize_args.grammar, "Grammar file (.ig)")
        ->required()
        ->check(CLI::ExistingFile);
    normalize_cmd->add_option("-o,--output", normalize_args.output, "Write the result here");
    normalize_cmd->add_option("--check-bound", normalize_args.check_bound,
                              "Compare enumerated words of both grammars up to this length");
    normalize_cmd->add_flag("--json", normalize_args.as_json, "Machine-readable output");

    EnumerateArgs enumerate_args;
    CLI::App* enumerate_cmd =
        app.add_subcommand("enumerate", "List derivable words up to a length bound");
    enumerate_cmd->add_option("grammar", enumerate_args.grammar, "Grammar file (.ig)")
        ->required()
        ->check(CLI::ExistingFile);
    enumerate_cmd->add_option("--max-len", enumerate_args.max_len, "Maximum word length")
        ->required();
    add_bound_flags(enumerate_cmd, enumerate_args.bounds);
    enumerate_cmd->add_flag("--json", enumerate_args.as_json, "Machine-readable output");

    MemberArgs member_args;
    CLI::App* member_cmd = app.add_subcommand("member", "Decide bounded membership of one word");
    member_cmd->add_option("grammar", member_args.grammar, "Grammar file (.ig)")
        ->required()
        ->check(CLI::ExistingFile);
    member_cmd->add_option("word", member_args.word, "The word to test")->required();
    member_cmd->add_option("--emit-tree", member_args.emit_tree,
                           "Write the derivation tree as JSON");
    member_cmd->add_option("--emit-dot", member_args.emit_dot,
                           "Write the derivation tree as DOT");
    member_cmd->add_option("--max-len", member_args.max_len,
                           "Derive search bounds from this length instead of the word's");
    add_bound_flags(member_cmd, member_args.bounds);
    member_cmd->add_flag("--json", member_args.as_json, "Machine-readable output");

    ShrinkArgs shrink_args;
    CLI::App* shrink_cmd =
        app.add_subcommand("shrink", "Produce a shorter derivable word with a certificate");
    shrink_cmd->add_option("grammar", shrink_args.grammar, "Grammar file (.ig)")
        ->required()
        ->check(CLI::ExistingFile);
    shrink_cmd->add_option("word", shrink_args.word, "The word to shrink")->required();
    shrink_cmd->add_option("--m", shrink_args.m, "Number of distinguished factors")
        ->default_val(std::size_t{1});
    shrink_cmd->add_option("--distinguish", shrink_args.distinguish,
                           "Zero-based factor indices to keep (comma separated)")
        ->delimiter(',');
    shrink_cmd->add_flag("--chain", shrink_args.chain, "Shrink repeatedly while |w| >= k");
    shrink_cmd->add_option("--emit-cert", shrink_args.emit_cert, "Write the certificate as JSON");
    shrink_cmd->add_option("--strategy", shrink_args.strategy,
                           "How to pick distinguished factors")
        ->check(CLI::IsMember({"max-length", "parikh"}));
    add_bound_flags(shrink_cmd, shrink_args.bounds);
    shrink_cmd->add_flag("--json", shrink_args.as_json, "Machine-readable output");

    CheckArgs check_args;
    CLI::App* check_cmd =
        app.add_subcommand("check", "Verify the factorization statement on every enumerated word");
    check_cmd->add_option("grammar", check_args.grammar, "Grammar file (.ig)")
        ->required()
        ->check(CLI::ExistingFile);
    check_cmd->add_option("--max-len", check_args.max_len, "Maximum word length")->required();
    check_cmd->add_option("--m", check_args.m, "Number of distinguished factors")
        ->default_val(std::size_t{1});
    add_bound_flags(check_cmd, check_args.bounds);
    check_cmd->add_flag("--json", check_args.as_json, "Machine-readable output");

    RefuteArgs refute_args;
    CLI::App* refute_cmd = app.add_subcommand(
        "refute", "Show a sample admits no decomposition satisfying the cover condition");
    refute_cmd->add_option("sample", refute_args.sample, "File with one sample word per line")
        ->required()
        ->check(CLI::ExistingFile);
    refute_cmd->add_option("word", refute_args.word, "The sample word to factor")->required();
    refute_cmd->add_option("--k", refute_args.k, "Upper bound on the factor count")->required();
    refute_cmd->add_option("--m", refute_args.m, "Number of distinguished factors")
        ->default_val(std::size_t{1});
    refute_cmd->add_option("--work-cap", refute_args.work_cap,
                           "Abort after this many subproduct tests");
    refute_cmd->add_flag("--json", refute_args.as_json, "Machine-readable output");

    AntichainArgs antichain_args;
    CLI::App* antichain_cmd =
        app.add_subcommand("antichain", "Print the minimal elements or distinguished cover");
    antichain_cmd->add_option("file", antichain_args.file, "File with one word per line")
        ->required()
        ->check(CLI::ExistingFile);
    antichain_cmd->add_option("--m", antichain_args.m,
                              "Build the distinguished cover for this many marks");
    antichain_cmd->add_flag("--json", antichain_args.as_json, "Machine-readable output");

    int rc = kOk;
    parse_cmd->callback([&] { rc = run_parse(parse_args); });
    normalize_cmd->callback([&] { rc = run_normalize(normalize_args); });
    enumerate_cmd->callback([&] { rc = run_enumerate(enumerate_args); });
    member_cmd->callback([&] { rc = run_member(member_args); });
    shrink_cmd->callback([&] { rc = run_shrink(shrink_args); });
    check_cmd->callback([&] { rc = run_check(check_args); });
    refute_cmd->callback([&] { rc = run_refute(refute_args); });
    antichain_cmd->callback([&] { rc = run_antichain(antichain_args); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    } catch (const shrinklab::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const shrinklab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return rc;
}
