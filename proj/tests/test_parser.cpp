#include <doctest.h>

#include "mccg/parser.hpp"

using namespace mccg;

namespace {

const Lexicon& demo() {
    static Lexicon lex = Lexicon::load(MCCG_DATA_DIR "/turkish.lex");
    return lex;
}

ParseOptions new_words(std::initializer_list<std::string> ws) {
    std::vector<std::string> list(ws);
    ParseOptions o;
    o.familiarity = [list](const LexSign& ls) {
        for (auto& w : list)
            if (ls.entry->phon == w) return Familiarity::New;
        return Familiarity::Given;
    };
    return o;
}

NodeRef find_pred(const NodeRef& lf, const std::string& pred) {
    Bindings empty;
    for (auto& i : flatten_set(lf, empty))
        if (i->kind == Kind::Term && i->sym == pred) return i;
    return nullptr;
}

} // namespace

TEST_CASE("tokenize strips punctuation and lowercases") {
    auto t = tokenize("Fatma ayseyi gorebilirmi?");
    REQUIRE(t.size() == 3);
    CHECK(t[0] == "fatma");
    CHECK(t[2] == "gorebilirmi");
}

TEST_CASE("yes/no question from the sample dialogue parses") {
    auto rs = parse(tokenize("fatma ayseyi gorebilirmi?"), demo());
    REQUIRE(!rs.empty());
    auto& top = rs.front();
    CHECK(deref(top.sign.result(), {"sem", "type"})->sym == "quest");
    auto lf = deref(top.sign.result(), {"sem", "lf"});
    auto see = find_pred(lf, "see");
    REQUIRE(see);
    CHECK(to_string(see->items[1]) == "fatma");
    CHECK(to_string(see->items[2]) == "ayse");
}

TEST_CASE("wh question parses and is marked interrogative") {
    auto rs = parse(tokenize("ikide kimi gorecek fatma?"), demo());
    REQUIRE(!rs.empty());
    auto& top = rs.front();
    CHECK(deref(top.sign.result(), {"sem", "type"})->sym == "quest");
    auto lf = deref(top.sign.result(), {"sem", "lf"});
    CHECK(find_pred(lf, "time"));
    CHECK(find_pred(lf, "see"));
}

TEST_CASE("multiword wh item is seeded as one lexical edge") {
    auto rs = parse(tokenize("fatma ayseyi ne zaman gorecek?"), demo());
    REQUIRE(!rs.empty());
    CHECK(deref(rs.front().sign.result(), {"sem", "type"})->sym == "quest");
}

TEST_CASE("statements default to declarative type") {
    auto rs = parse(tokenize("fatma ahmeti ariyor"), demo());
    REQUIRE(!rs.empty());
    CHECK(deref(rs.front().sign.result(), {"sem", "type"})->sym == "decl");
}

TEST_CASE("discourse-new entities cannot stand behind the verb") {
    auto opts = new_words({"ahmeti"});
    CHECK(parse(tokenize("fatma ariyor ahmeti"), demo(), opts).empty());
    CHECK(!parse(tokenize("fatma ahmeti ariyor"), demo(), opts).empty());
}

TEST_CASE("question particle marks the clause interrogative") {
    auto rs = parse(tokenize("ahmet fatmayi gordu mu?"), demo());
    REQUIRE(!rs.empty());
    CHECK(deref(rs.front().sign.result(), {"sem", "type"})->sym == "quest");
}

TEST_CASE("every permutation of a transitive clause is accepted in a free context") {
    std::vector<std::vector<std::string>> perms = {
        {"ayse", "fatmayi", "ariyor"}, {"fatmayi", "ayse", "ariyor"},
        {"ayse", "ariyor", "fatmayi"}, {"fatmayi", "ariyor", "ayse"},
        {"ariyor", "ayse", "fatmayi"}, {"ariyor", "fatmayi", "ayse"}};
    for (auto& p : perms) {
        auto rs = parse(p, demo());
        std::string label = p[0] + " " + p[1] + " " + p[2];
        CHECK_MESSAGE(!rs.empty(), label);
    }
}

TEST_CASE("unknown tokens are reported") {
    CHECK_THROWS_WITH_AS(parse({"fatma", "xyzzy"}, demo()),
                         doctest::Contains("xyzzy"), std::runtime_error);
}

TEST_CASE("embedded gerund clause parses") {
    auto rs = parse(tokenize("fatma aysenin gittigini biliyor"), demo());
    REQUIRE(!rs.empty());
    auto lf = deref(rs.front().sign.result(), {"sem", "lf"});
    CHECK(find_pred(lf, "know"));
    CHECK(find_pred(lf, "go"));
}
