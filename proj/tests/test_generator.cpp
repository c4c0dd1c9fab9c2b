#include <doctest.h>

#include "mccg/dag_io.hpp"
#include "mccg/generator.hpp"
#include "mccg/parser.hpp"

#include <algorithm>
#include <set>
#include <string>

using namespace mccg;

namespace {

Lexicon& lexicon() {
    static Lexicon lex = Lexicon::load(std::string(MCCG_DATA_DIR) +
                                       "/turkish.lex");
    return lex;
}

NodeRef input_from(const std::string& text) { return parse_dag_text(text); }

std::set<std::string> strings_of(const std::vector<GenResult>& rs) {
    std::set<std::string> out;
    for (auto& r : rs) out.insert(r.sign.phon_string());
    return out;
}

} // namespace

TEST_CASE("abilitive answer input generates the canonical order") {
    NodeRef in = input_from(
        "syn :\n"
        "  cat : s\n"
        "  voice : active\n"
        "  tense : aorist\n"
        "  agr :\n"
        "    number : sing\n"
        "    person : 3\n"
        "  compound : abilitive\n"
        "sem :\n"
        "  type : decl\n"
        "  lf : [time(e6,2), see(e6,fatma,ayse), [one(fatma), def(fatma,+)],"
        " [one(ayse), def(ayse,+)]]\n"
        "  event : e6\n"
        "info :\n"
        "  rheme :\n"
        "    focus : [time(e6,2)]\n"
        "    mainprop : see(e6,fatma,ayse)\n"
        "  theme :\n"
        "    topic : [one(fatma), def(fatma,+)]\n"
        "    neutral : [one(ayse), def(ayse,+)]\n"
        "  background : none\n");
    auto rs = generate(in, lexicon());
    REQUIRE(!rs.empty());
    CHECK(rs.front().sign.phon_string() == "fatma ayseyi ikide gorebilir");
}

TEST_CASE("future answer input places the background postverbally") {
    NodeRef in = input_from(
        "syn :\n"
        "  cat : s\n"
        "  voice : active\n"
        "  tense : future\n"
        "  agr :\n"
        "    number : sing\n"
        "    person : 3\n"
        "sem :\n"
        "  type : decl\n"
        "  lf : [time(e6,2), see(e6,fatma,ayse), [one(fatma), def(fatma,+)],"
        " [one(ayse), def(ayse,+)]]\n"
        "  event : e6\n"
        "info :\n"
        "  rheme :\n"
        "    focus : [one(ayse), def(ayse,+)]\n"
        "    mainprop : see(e6,fatma,ayse)\n"
        "  theme :\n"
        "    topic : [time(e6,2)]\n"
        "    neutral : none\n"
        "  background : [one(fatma), def(fatma,+)]\n");
    auto rs = generate(in, lexicon());
    REQUIRE(!rs.empty());
    CHECK(rs.front().sign.phon_string() == "ikide ayseyi gorecek fatma");
}

TEST_CASE("free slots enumerate exactly the orders the grammar admits") {
    // Topic and focus fixed, the rest unconstrained: the new-to-discourse
    // students may surface as preverbal neutral or postverbal background,
    // nothing else.
    NodeRef in = input_from(
        "syn :\n"
        "  cat : s\n"
        "  tense : past\n"
        "sem :\n"
        "  type : decl\n"
        "  lf : [see(e1,ayse,st1), time(e1,3), [one(ayse), def(ayse,+)],"
        " [ogrenci(st1), def(st1,+)]]\n"
        "  event : e1\n"
        "info :\n"
        "  rheme :\n"
        "    focus : [time(e1,3)]\n"
        "    mainprop : see(e1,ayse,st1)\n"
        "  theme :\n"
        "    topic : [one(ayse), def(ayse,+)]\n");
    GenOptions opts;
    opts.all = true;
    auto rs = generate(in, lexicon(), opts);
    auto got = strings_of(rs);
    CHECK(got == std::set<std::string>{"ayse ogrencileri ucte gordu",
                                      "ayse ucte gordu ogrencileri"});
}

TEST_CASE("generated output parses back to the input") {
    NodeRef in = input_from(
        "syn :\n"
        "  cat : s\n"
        "  tense : past\n"
        "sem :\n"
        "  type : decl\n"
        "  lf : [see(e2,ahmet,ayse), [one(ahmet), def(ahmet,+)],"
        " [one(ayse), def(ayse,+)]]\n"
        "  event : e2\n"
        "info :\n"
        "  rheme :\n"
        "    focus : [one(ayse), def(ayse,+)]\n"
        "    mainprop : see(e2,ahmet,ayse)\n"
        "  theme :\n"
        "    topic : [one(ahmet), def(ahmet,+)]\n"
        "    neutral : none\n"
        "  background : none\n");
    auto rs = generate(in, lexicon());
    REQUIRE(!rs.empty());
    CHECK(rs.front().sign.phon_string() == "ahmet ayseyi gordu");
    auto ps = parse(rs.front().sign.phon, lexicon());
    REQUIRE(!ps.empty());
    Bindings env;
    NodeRef plf = deref(ps.front().sign.result(), {"sem", "lf"});
    NodeRef ilf = deref(in, {"sem", "lf"});
    CHECK(lf_covers(plf, ilf, env));
}

TEST_CASE("head selection honours tense and semantic type") {
    NodeRef in = input_from(
        "syn :\n"
        "  cat : s\n"
        "  tense : future\n"
        "sem :\n"
        "  type : decl\n"
        "  lf : [see(e2,ahmet,ayse), [one(ahmet), def(ahmet,+)],"
        " [one(ayse), def(ayse,+)]]\n"
        "  event : e2\n"
        "info :\n"
        "  rheme :\n"
        "    mainprop : see(e2,ahmet,ayse)\n");
    auto heads = find_lex_cat(in, lexicon());
    CHECK(!heads.empty());
    for (auto& h : heads) {
        NodeRef t = deref(h.result(), {"syn", "tense"});
        if (t && t->kind == Kind::Atom) CHECK(t->sym == "future");
        NodeRef ty = deref(h.result(), {"sem", "type"});
        if (ty && ty->kind == Kind::Atom) CHECK(ty->sym != "quest");
    }
}

TEST_CASE("unknown main predicate is reported") {
    NodeRef in = input_from(
        "sem :\n"
        "  lf : [fly(e1,fatma)]\n"
        "info :\n"
        "  rheme :\n"
        "    mainprop : fly(e1,fatma)\n");
    CHECK_THROWS_AS((void)generate(in, lexicon()), std::runtime_error);
}
