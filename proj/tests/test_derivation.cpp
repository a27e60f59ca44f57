#include <catch2/catch_amalgamated.hpp>

#include "shrinklab/derivation.hpp"
#include "shrinklab/normal_form.hpp"
#include "test_util.hpp"

using namespace shrinklab;

namespace {

std::set<std::string> word_strings(const Grammar& g, const std::set<Word>& words) {
    std::set<std::string> out;
    for (const Word& w : words) {
        out.insert(format_word(g, w));
    }
    return out;
}

Word letters(const Grammar& g, const std::string& text) {
    return parse_word(g, text);
}

}  // namespace

TEST_CASE("enumerate_words on the fixtures", "[derivation]") {
    SECTION("POW2 up to length 8") {
        Grammar g = load_fixture("pow2.ig");
        EnumerationResult r = enumerate_words(g, 8);
        REQUIRE(word_strings(g, r.words) ==
                std::set<std::string>{"a", "aa", "aaaa", "aaaaaaaa"});
    }
    SECTION("normalized POW2 generates the same words") {
        Grammar g = load_fixture("pow2.ig");
        Grammar n = to_normal_form(g).grammar;
        REQUIRE(enumerate_words(n, 8).words == enumerate_words(g, 8).words);
        REQUIRE(compare_languages(g, n, 10).equal);
    }
    SECTION("ANBNCN up to length 9") {
        Grammar g = load_fixture("anbncn.ig");
        EnumerationResult r = enumerate_words(g, 9);
        REQUIRE(word_strings(g, r.words) ==
                std::set<std::string>{"abc", "aabbcc", "aaabbbccc"});
    }
}

TEST_CASE("enumerate_words at length zero", "[derivation]") {
    Grammar eps = parse_grammar(
        "terminals: a\nnonterminals: S T\nindices: f\nstart: S\nS -> eps\nS -> T[f]\nT[f] -> T\nT -> a\n");
    EnumerationResult r = enumerate_words(eps, 0);
    REQUIRE(r.words == std::set<Word>{Word{}});

    Grammar g = load_fixture("pow2.ig");
    REQUIRE(enumerate_words(g, 0).words.empty());
}

TEST_CASE("the completeness flag distinguishes finite searches", "[derivation]") {
    Grammar fin = parse_grammar(
        "terminals: a b\nnonterminals: S X\nindices: f\nstart: S\nS -> a X\nX -> b\n");
    REQUIRE(enumerate_words(fin, 4).complete);

    Grammar g = load_fixture("pow2.ig");
    REQUIRE_FALSE(enumerate_words(g, 8).complete);
}

TEST_CASE("pruned search matches a wider search at small sizes", "[derivation]") {
    for (const char* name : {"pow2.ig", "anbncn.ig"}) {
        Grammar g = load_fixture(name);
        SearchBounds wide = SearchBounds::for_word_length(4, g);
        wide.max_items = 64;
        REQUIRE(enumerate_words(g, 4, wide).words ==
                enumerate_words(g, 4, SearchBounds::for_word_length(4, g)).words);
    }
}

TEST_CASE("is_member on POW2", "[derivation]") {
    Grammar g = load_fixture("pow2.ig");

    SECTION("a4 is a member with a validating witness") {
        MembershipResult r = is_member(g, letters(g, "aaaa"));
        REQUIRE(r.status == Membership::yes);
        REQUIRE(r.tree.has_value());
        REQUIRE(validate_tree(g, *r.tree) == letters(g, "aaaa"));
        REQUIRE(r.tree->yield() == letters(g, "aaaa"));
    }
    SECTION("a3 is rejected within bounds") {
        MembershipResult r = is_member(g, letters(g, "aaa"));
        REQUIRE(r.status == Membership::no_within_bounds);
    }
    SECTION("the empty word is rejected when there is no start epsilon") {
        REQUIRE(is_member(g, Word{}).status == Membership::no_within_bounds);
    }
    SECTION("a step budget of zero is inconclusive") {
        SearchBounds b = SearchBounds::for_word_length(4, g);
        b.max_steps = 0;
        REQUIRE(is_member(g, letters(g, "aaaa"), b).status == Membership::unknown);
    }
    SECTION("an item cap below the word length is inconclusive") {
        SearchBounds b = SearchBounds::for_word_length(4, g);
        b.max_items = 2;
        REQUIRE(is_member(g, letters(g, "aaaa"), b).status == Membership::unknown);
    }
}

TEST_CASE("is_member handles the empty word via start epsilon", "[derivation]") {
    Grammar eps = parse_grammar(
        "terminals: a\nnonterminals: S T\nindices: f\nstart: S\nS -> eps\nS -> T[f]\nT[f] -> T\nT -> a\n");
    MembershipResult r = is_member(eps, Word{});
    REQUIRE(r.status == Membership::yes);
    REQUIRE(r.tree.has_value());
    REQUIRE(r.tree->size() == 1);
    REQUIRE(r.tree->node(r.tree->root()).production == 0);
    REQUIRE(validate_tree(eps, *r.tree) == Word{});
}

TEST_CASE("enumerate_words and is_member agree", "[derivation]") {
    SECTION("POW2 words up to length 8") {
        Grammar g = load_fixture("pow2.ig");
        std::set<Word> enumerated = enumerate_words(g, 8).words;
        for (std::size_t n = 0; n <= 8; ++n) {
            Word w(n, 0);
            bool in_language = enumerated.contains(w);
            REQUIRE((is_member(g, w).status == Membership::yes) == in_language);
        }
    }
    SECTION("all short words over the ANBNCN alphabet") {
        Grammar g = load_fixture("anbncn.ig");
        std::set<Word> enumerated = enumerate_words(g, 4).words;
        std::vector<Word> frontier = {Word{}};
        for (std::size_t n = 1; n <= 4; ++n) {
            std::vector<Word> next;
            for (const Word& w : frontier) {
                for (SymbolId t = 0; t < 3; ++t) {
                    Word longer = w;
                    longer.push_back(t);
                    next.push_back(longer);
                    bool in_language = enumerated.contains(longer);
                    REQUIRE((is_member(g, longer).status == Membership::yes) == in_language);
                }
            }
            frontier = std::move(next);
        }
    }
}

TEST_CASE("search accepts exactly the ε-safe grammars", "[derivation]") {
    Grammar bad = parse_grammar(
        "terminals: a\nnonterminals: S\nindices: f\nstart: S\nS -> eps\nS -> S S\nS -> a\n");
    REQUIRE_THROWS_AS(enumerate_words(bad, 4), ValidationError);
    REQUIRE_THROWS_AS(is_member(bad, Word{0}), ValidationError);

    Grammar raw = load_fixture("pow2.ig");
    REQUIRE_NOTHROW(require_eps_safe(raw));
}

TEST_CASE("derivation trees expose spans and paths", "[derivation]") {
    Grammar g = load_fixture("pow2.ig");
    MembershipResult r = is_member(g, letters(g, "aaaa"));
    REQUIRE(r.status == Membership::yes);
    const DerivationTree& t = *r.tree;

    auto spans = t.leaf_spans();
    REQUIRE(spans[t.root()] == std::pair<std::size_t, std::size_t>{0, 4});
    std::size_t leaves = 0;
    for (Vertex v : t.preorder()) {
        if (is_terminal(t.node(v).label)) {
            REQUIRE(spans[v].second == 1);
            REQUIRE(spans[v].first == leaves);
            ++leaves;
        }
    }
    REQUIRE(leaves == 4);
    REQUIRE(t.vertex_path(t.root()) == "0");
    Vertex child = t.node(t.root()).children.at(0);
    REQUIRE(t.vertex_path(child) == "0.0");
}

TEST_CASE("validate_tree rejects corrupted trees", "[derivation]") {
    Grammar g = load_fixture("pow2.ig");
    MembershipResult r = is_member(g, letters(g, "aa"));
    REQUIRE(r.status == Membership::yes);

    SECTION("production id inconsistent with children") {
        DerivationTree t = *r.tree;
        Vertex child = t.node(t.root()).children.at(0);
        t.node_mut(child).production = 0;
        try {
            validate_tree(g, t);
            FAIL("expected a DerivationError");
        } catch (const DerivationError& e) {
            REQUIRE(std::string(e.what()).find("0.0") != std::string::npos);
        }
    }
    SECTION("missing production on an internal vertex") {
        DerivationTree t = *r.tree;
        t.node_mut(t.root()).production.reset();
        REQUIRE_THROWS_AS(validate_tree(g, t), DerivationError);
    }
    SECTION("wrong root label") {
        DerivationTree t{FormItem(NonterminalSym{*g.find_nonterminal("T"), {}})};
        REQUIRE_THROWS_AS(validate_tree(g, t), DerivationError);
    }
    SECTION("corrupted child label") {
        DerivationTree t = *r.tree;
        Vertex child = t.node(t.root()).children.at(0);
        std::get<NonterminalSym>(t.node_mut(child).label).stack.clear();
        REQUIRE_THROWS_AS(validate_tree(g, t), DerivationError);
    }
}
