#include <catch2/catch_amalgamated.hpp>

#include "shrinklab/grammar.hpp"
#include "shrinklab/grammar_text.hpp"
#include "test_util.hpp"

using namespace shrinklab;

namespace {

template <typename F>
ParseError expect_parse_error(F&& fn) {
    try {
        fn();
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("expected a ParseError");
    std::abort();
}

SententialForm replay(const Grammar& g, const SententialForm& from,
                      const std::vector<std::pair<std::size_t, std::size_t>>& steps) {
    SententialForm form = from;
    for (auto [pos, prod] : steps) {
        form = apply_production(form, pos, g.productions.at(prod));
    }
    return form;
}

SententialForm with_suffix(const SententialForm& form, const std::vector<SymbolId>& omega) {
    SententialForm out = form;
    for (FormItem& item : out.items) {
        if (is_nonterminal(item)) {
            auto& nt = std::get<NonterminalSym>(item);
            nt.stack.insert(nt.stack.end(), omega.begin(), omega.end());
        }
    }
    return out;
}

}  // namespace

TEST_CASE("parsing the POW2 fixture", "[grammar]") {
    Grammar g = load_fixture("pow2.ig");

    REQUIRE(g.terminal_names == std::vector<std::string>{"a"});
    REQUIRE(g.nonterminal_names == std::vector<std::string>{"S", "T", "B"});
    REQUIRE(g.index_names == std::vector<std::string>{"f", "g"});
    REQUIRE(g.nonterminal_name(g.start) == "S");
    REQUIRE(g.productions.size() == 5);

    const Production& push = g.productions[0];
    REQUIRE(push.lhs == *g.find_nonterminal("S"));
    REQUIRE_FALSE(push.pop_index.has_value());
    REQUIRE(push.rhs.size() == 1);
    const auto& t = std::get<NonterminalSym>(push.rhs[0]);
    REQUIRE(t.id == *g.find_nonterminal("T"));
    REQUIRE(t.stack == std::vector<SymbolId>{*g.find_index("g")});

    const Production& pop = g.productions[3];
    REQUIRE(pop.lhs == *g.find_nonterminal("B"));
    REQUIRE(pop.pop_index == *g.find_index("f"));
    REQUIRE(pop.rhs.size() == 2);

    const Production& emit = g.productions[4];
    REQUIRE(emit.pop_index == *g.find_index("g"));
    REQUIRE(emit.rhs.size() == 1);
    REQUIRE(is_terminal(emit.rhs[0]));
}

TEST_CASE("single derivation steps on POW2", "[grammar]") {
    Grammar g = load_fixture("pow2.ig");

    SententialForm form = start_form(g);
    REQUIRE(format_form(g, form) == "S");

    form = apply_production(form, 0, g.productions[0]);
    REQUIRE(format_form(g, form) == "T[g]");

    form = apply_production(form, 0, g.productions[1]);
    REQUIRE(format_form(g, form) == "T[f g]");

    form = apply_production(form, 0, g.productions[2]);
    REQUIRE(format_form(g, form) == "B[f g]");

    form = apply_production(form, 0, g.productions[3]);
    REQUIRE(format_form(g, form) == "B[g] B[g]");
    REQUIRE_FALSE(form.ground());

    form = apply_production(form, 1, g.productions[4]);
    REQUIRE(format_form(g, form) == "B[g] a");

    form = apply_production(form, 0, g.productions[4]);
    REQUIRE(format_form(g, form) == "a a");
    REQUIRE(form.ground());
    REQUIRE(project_word(form) == Word{0, 0});
    REQUIRE(format_word(g, project_word(form)) == "aa");

    SECTION("inapplicable productions are rejected") {
        SententialForm bg;
        bg.items.push_back(NonterminalSym{*g.find_nonterminal("B"), {*g.find_index("g")}});
        REQUIRE_THROWS_AS(apply_production(bg, 0, g.productions[3]), DerivationError);
        REQUIRE_THROWS_AS(apply_production(bg, 0, g.productions[0]), DerivationError);
        REQUIRE_THROWS_AS(apply_production(bg, 1, g.productions[4]), DerivationError);

        SententialForm ground;
        ground.items.push_back(TerminalSym{0});
        REQUIRE_THROWS_AS(apply_production(ground, 0, g.productions[4]), DerivationError);
    }
}

TEST_CASE("appending an index suffix commutes with derivation steps", "[grammar]") {
    Grammar g = load_fixture("pow2.ig");
    std::vector<std::pair<std::size_t, std::size_t>> steps = {
        {0, 2}, {0, 3}, {1, 4}, {0, 4}};

    SententialForm from;
    from.items.push_back(NonterminalSym{*g.find_nonterminal("T"), {*g.find_index("f"),
                                                                   *g.find_index("g")}});
    SententialForm plain = replay(g, from, {{0, 2}, {0, 3}});

    std::vector<SymbolId> omega = {*g.find_index("f"), *g.find_index("g")};
    SententialForm lifted = replay(g, with_suffix(from, omega), {{0, 2}, {0, 3}});
    REQUIRE(lifted == with_suffix(plain, omega));
}

TEST_CASE("grammar text round trips", "[grammar]") {
    for (const char* name : {"pow2.ig", "anbncn.ig"}) {
        Grammar g = load_fixture(name);
        std::string text = format_grammar(g);
        Grammar again = parse_grammar(text);
        REQUIRE(format_grammar(again) == text);
        REQUIRE(again.productions == g.productions);
        REQUIRE(again.start == g.start);
    }
}

TEST_CASE("parse errors carry positions", "[grammar]") {
    const std::string head =
        "terminals: a\nnonterminals: S T\nindices: f\nstart: S\n";

    SECTION("unknown symbol") {
        ParseError e = expect_parse_error([&] { parse_grammar(head + "S -> X\n"); });
        REQUIRE(e.line == 5);
        REQUIRE(e.col == 6);
    }
    SECTION("terminal on the left") {
        ParseError e = expect_parse_error([&] { parse_grammar(head + "a -> S\n"); });
        REQUIRE(e.line == 5);
        REQUIRE(e.col == 1);
    }
    SECTION("terminal with indices") {
        ParseError e = expect_parse_error([&] { parse_grammar(head + "S -> a[f]\n"); });
        REQUIRE(e.line == 5);
        REQUIRE(e.col == 7);
    }
    SECTION("pop of two indices") {
        expect_parse_error([&] { parse_grammar(head + "S[f f] -> T\n"); });
    }
    SECTION("unclosed brackets") {
        ParseError e = expect_parse_error([&] { parse_grammar(head + "S -> T[f\n"); });
        REQUIRE(e.line == 5);
        REQUIRE(e.col == 7);
    }
    SECTION("eps is restricted to the start symbol") {
        expect_parse_error([&] { parse_grammar(head + "T -> eps\n"); });
        expect_parse_error([&] { parse_grammar(head + "S[f] -> eps\n"); });
        expect_parse_error([&] { parse_grammar(head + "S -> eps T\n"); });
        REQUIRE(parse_grammar(head + "S -> eps\n").productions[0].rhs.empty());
    }
    SECTION("duplicate directive") {
        ParseError e = expect_parse_error([&] { parse_grammar(head + "start: T\n"); });
        REQUIRE(e.line == 5);
    }
    SECTION("directive after a production") {
        expect_parse_error([&] { parse_grammar(head + "S -> T\nindices: g\n"); });
    }
    SECTION("missing directive") {
        expect_parse_error([&] { parse_grammar("terminals: a\nS -> a\n"); });
        expect_parse_error([&] { parse_grammar("terminals: a\nnonterminals: S\nindices: f\n"); });
    }
    SECTION("duplicate symbol across alphabets") {
        expect_parse_error([&] {
            parse_grammar("terminals: a\nnonterminals: S a\nindices: f\nstart: S\nS -> a\n");
        });
    }
    SECTION("unknown directive") {
        expect_parse_error([&] { parse_grammar("terminal: a\n" + head); });
    }
    SECTION("start must be declared") {
        expect_parse_error([&] {
            parse_grammar("terminals: a\nnonterminals: S\nindices: f\nstart: X\nS -> a\n");
        });
    }
}

TEST_CASE("unspaced production text parses", "[grammar]") {
    Grammar g = parse_grammar(
        "terminals: a\nnonterminals: S T\nindices: f g\nstart: S\nS->T[f g]\nT[f]->a\n");
    REQUIRE(g.productions.size() == 2);
    const auto& rhs = std::get<NonterminalSym>(g.productions[0].rhs[0]);
    REQUIRE(rhs.stack == std::vector<SymbolId>{*g.find_index("f"), *g.find_index("g")});
    REQUIRE(g.productions[1].pop_index == *g.find_index("f"));
}

TEST_CASE("word parsing and formatting", "[grammar]") {
    Grammar g = load_fixture("anbncn.ig");

    REQUIRE(parse_word(g, "abc") == Word{0, 1, 2});
    REQUIRE(parse_word(g, "a b c") == Word{0, 1, 2});
    REQUIRE(parse_word(g, "") == Word{});
    REQUIRE(format_word(g, Word{0, 0, 1, 2}) == "aabc");
    REQUIRE_THROWS_AS(parse_word(g, "abd"), ParseError);

    Grammar multi = parse_grammar(
        "terminals: id num\nnonterminals: S\nindices: f\nstart: S\nS -> id num\n");
    REQUIRE(parse_word(multi, "id num id") == Word{0, 1, 0});
    REQUIRE(format_word(multi, Word{0, 1}) == "id num");
    REQUIRE(parse_word(multi, format_word(multi, Word{1, 1, 0})) == Word{1, 1, 0});
}

TEST_CASE("validate rejects malformed grammars", "[grammar]") {
    Grammar g = load_fixture("pow2.ig");

    SECTION("id out of range") {
        Grammar bad = g;
        bad.productions[0].lhs = 9;
        REQUIRE_THROWS_AS(bad.validate(), ValidationError);
    }
    SECTION("bad push index") {
        Grammar bad = g;
        std::get<NonterminalSym>(bad.productions[0].rhs[0]).stack = {7};
        REQUIRE_THROWS_AS(bad.validate(), ValidationError);
    }
    SECTION("empty rhs for a non-start symbol") {
        Grammar bad = g;
        bad.productions.push_back(Production{*bad.find_nonterminal("T"), std::nullopt, {}});
        REQUIRE_THROWS_AS(bad.validate(), ValidationError);
    }
    SECTION("clashing names") {
        Grammar bad = g;
        bad.index_names.push_back("a");
        REQUIRE_THROWS_AS(bad.validate(), ValidationError);
    }
    SECTION("reserved names") {
        Grammar bad = g;
        bad.terminal_names.push_back("eps");
        REQUIRE_THROWS_AS(bad.validate(), ValidationError);
    }
}
