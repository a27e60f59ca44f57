#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <set>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "shrinklab/normal_form.hpp"
#include "shrinklab/serialize.hpp"
#include "test_util.hpp"

using namespace shrinklab;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(SHRINKLAB_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) {
        r.out.append(buf, n);
    }
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string grammar_arg(const std::string& name) { return fixture_path(name); }

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t nl = text.find('\n', start);
        if (nl == std::string::npos) {
            out.push_back(text.substr(start));
            break;
        }
        out.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    return out;
}

}  // namespace

TEST_CASE("documented invocations produce the documented exit codes", "[cli]") {
    RunResult check = run_cli("check " + grammar_arg("pow2.ig") + " --max-len 16 --m 1");
    CHECK(check.code == 0);
    CHECK(check.out.find("PASS aaaaaaaa") != std::string::npos);
    CHECK(check.out.find("2 passed, 0 failed") != std::string::npos);

    CHECK(run_cli("member " + grammar_arg("pow2.ig") + " aaa").code == 1);
    CHECK(run_cli("member " + grammar_arg("pow2.ig") + " aaaa").code == 0);
    CHECK(run_cli("enumerate missing.ig --max-len 4").code == 2);
    CHECK(run_cli("bogus-subcommand").code == 2);
}

TEST_CASE("version flag reports the tool name", "[cli]") {
    RunResult r = run_cli("--version");
    CHECK(r.code == 0);
    CHECK(r.out == "shrinklab 0.1.0\n");
}

TEST_CASE("enumerate lists each derivable word on its own line", "[cli]") {
    RunResult r = run_cli("enumerate " + grammar_arg("pow2.ig") + " --max-len 8");
    CHECK(r.code == 0);
    CHECK(lines_of(r.out) == std::vector<std::string>{"a", "aa", "aaaa", "aaaaaaaa"});
}

TEST_CASE("normalize round-trips through the text format", "[cli]") {
    RunResult r = run_cli("normalize " + grammar_arg("pow2.ig") + " --check-bound 8");
    CHECK(r.code == 0);
    Grammar emitted = parse_grammar(r.out);
    Grammar expected = to_normal_form(load_fixture("pow2.ig")).grammar;
    CHECK(format_grammar(emitted) == format_grammar(expected));
}

TEST_CASE("json output is byte-stable across runs", "[cli]") {
    std::string cmd = "shrink " + grammar_arg("pow2.ig") + " aaaa --json";
    RunResult first = run_cli(cmd);
    RunResult second = run_cli(cmd);
    CHECK(first.code == 0);
    CHECK(first.out == second.out);
    CHECK_FALSE(first.out.empty());
}

TEST_CASE("emitted certificate matches the library serialization", "[cli]") {
    RunResult r = run_cli("shrink " + grammar_arg("pow2.ig") + " aaaa --json");
    REQUIRE(r.code == 0);

    Grammar g = to_normal_form(load_fixture("pow2.ig")).grammar;
    ZTable z = approximate_z(g, 1);
    MembershipResult member = is_member(g, parse_word(g, "aaaa"));
    REQUIRE(member.status == Membership::yes);
    DerivationTree t = std::move(*member.tree);
    Factorization fz = factorize(g, t, select_vertex(g, t, z));
    std::set<std::size_t> distinguished =
        choose_distinguished(g, fz, 1, DistinguishStrategy::max_length_factor);
    ShrinkCertificate cert = shrink(g, std::move(t), fz, distinguished, z);
    CHECK(r.out == certificate_to_json(g, cert).dump(2) + "\n");
}

TEST_CASE("member can emit the witness tree as JSON and DOT", "[cli]") {
    std::string tree_path = "/tmp/shrinklab_cli_tree.json";
    std::string dot_path = "/tmp/shrinklab_cli_tree.dot";
    RunResult r = run_cli("member " + grammar_arg("pow2.ig") + " aaaa --emit-tree " + tree_path +
                          " --emit-dot " + dot_path);
    REQUIRE(r.code == 0);

    Grammar g = load_fixture("pow2.ig");
    MembershipResult member = is_member(g, parse_word(g, "aaaa"));
    REQUIRE(member.status == Membership::yes);
    CHECK(read_file(tree_path) == tree_to_json(g, *member.tree).dump(2) + "\n");
    CHECK(read_file(dot_path) == tree_to_dot(g, *member.tree));
    std::remove(tree_path.c_str());
    std::remove(dot_path.c_str());
}

TEST_CASE("refute exit codes track the verdict", "[cli]") {
    std::string sample = std::string(SHRINKLAB_SAMPLE_DIR) + "/anb_n.txt";
    RunResult refuted = run_cli("refute " + sample + " aaabaaabaaab --k 4 --m 1");
    CHECK(refuted.code == 0);
    CHECK(refuted.out.find("231 factorizations") != std::string::npos);

    RunResult found = run_cli("refute " + sample + " aaabaaabaaab --k 6 --m 1");
    CHECK(found.code == 1);
    CHECK(found.out.find("decomposition exists") != std::string::npos);

    RunResult capped = run_cli("refute " + sample + " aaabaaabaaab --k 4 --m 1 --work-cap 3");
    CHECK(capped.code == 3);
    CHECK(capped.out.find("inconclusive") != std::string::npos);
}

TEST_CASE("antichain prints the cover set", "[cli]") {
    std::string path = "/tmp/shrinklab_cli_words.txt";
    write_text(path, "ab\naabb\naaabbb\nba\n");
    RunResult minimal = run_cli("antichain " + path);
    CHECK(minimal.code == 0);
    CHECK(lines_of(minimal.out) == std::vector<std::string>{"ab", "ba"});

    RunResult cover = run_cli("antichain " + path + " --m 2");
    CHECK(cover.code == 0);
    CHECK(lines_of(cover.out) == std::vector<std::string>{"aabb", "ab", "ba"});
    std::remove(path.c_str());
}

TEST_CASE("the environment depth override narrows the search", "[cli]") {
    RunResult r = run_cli("member " + grammar_arg("pow2.ig") + " aaaa");
    CHECK(r.code == 0);
    // Depth 1 forbids the pushes needed for four letters.
    std::string cmd = std::string("SHRINKLAB_DEFAULT_DEPTH=1 ") + SHRINKLAB_CLI_PATH + " member " +
                      grammar_arg("pow2.ig") + " aaaa 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[256];
    while (fread(buf, 1, sizeof buf, pipe) > 0) {
    }
    int status = pclose(pipe);
    CHECK(WEXITSTATUS(status) == 1);
}
