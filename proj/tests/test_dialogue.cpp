#include <doctest.h>

#include "mccg/dag_io.hpp"
#include "mccg/dialogue.hpp"

#include <cstdio>
#include <fstream>
#include <string>

using namespace mccg;

namespace {

Lexicon& lexicon() {
    static Lexicon lex = Lexicon::load(std::string(MCCG_DATA_DIR) +
                                       "/turkish.lex");
    return lex;
}

FactBase schedule() {
    return FactBase::load(std::string(MCCG_DATA_DIR) + "/schedule.db");
}

NodeRef term(const std::string& text,
             std::unordered_map<std::string, NodeRef>& vars) {
    return parse_value(text, vars);
}

} // namespace

TEST_CASE("conjunctive queries bind shared variables across facts") {
    FactBase db = schedule();
    std::unordered_map<std::string, NodeRef> vars;
    NodeRef p1 = term("see(E,fatma,ayse)", vars);
    NodeRef p2 = term("time(E,T)", vars);
    auto bs = db.query({p1, p2});
    REQUIRE(bs.size() == 1);
    CHECK(to_string(resolve(p2, bs[0])) == "time(e6,2)");
}

TEST_CASE("queries with no match return no bindings") {
    FactBase db = schedule();
    std::unordered_map<std::string, NodeRef> vars;
    auto bs = db.query({term("see(E,ahmet,fatma)", vars)});
    CHECK(bs.empty());
}

TEST_CASE("appointments are refused when a participant is busy") {
    FactBase db = schedule();
    CHECK(db.add_appointment({"fatma", "ahmet"}, "2").empty());
    std::string id = db.add_appointment({"fatma", "ahmet"}, "3");
    CHECK(!id.empty());
    std::unordered_map<std::string, NodeRef> vars;
    auto bs = db.query({term("see(E,fatma,ahmet)", vars),
                        term("time(E,3)", vars)});
    CHECK(bs.size() == 1);
}

TEST_CASE("fact base round trips through its file form") {
    FactBase db = schedule();
    std::string tmp = std::string(MCCG_DATA_DIR) + "/.roundtrip.db";
    db.save(tmp);
    FactBase db2 = FactBase::load(tmp);
    std::remove(tmp.c_str());
    REQUIRE(db2.facts().size() == db.facts().size());
    for (std::size_t i = 0; i < db.facts().size(); ++i)
        CHECK(to_string(db2.facts()[i]) == to_string(db.facts()[i]));
}

TEST_CASE("validated yes-no question answers with the completing fact") {
    Session s(lexicon(), schedule());
    CHECK(s.step("fatma ayseyi gorebilirmi?") ==
          "evet, fatma ayseyi ikide gorebilir.");
}

TEST_CASE("wh question answers with the binding in focus") {
    Session s(lexicon(), schedule());
    s.step("fatma ayseyi gorebilirmi?");
    CHECK(s.step("ikide kimi gorecek fatma?") ==
          "ikide ayseyi gorecek fatma.");
}

TEST_CASE("failed yes-no question offers the corrected fact") {
    Session s(lexicon(), schedule());
    CHECK(s.step("ahmet fatmayi gordu mu?") ==
          "hayir, ama ahmet ayseyi gordu.");
}

TEST_CASE("planner output matches the published plan structure") {
    Lexicon& lex = lexicon();
    FactBase db = schedule();
    DiscourseModel dm;
    dm.seed_from(db);
    auto ps = parse(tokenize("fatma ayseyi gorebilirmi"), lex);
    REQUIRE(!ps.empty());
    AnswerPlan plan = plan_answer(ps.front().sign, db, dm, lex);
    REQUIRE(plan.input);
    CHECK(plan.particle == "evet");
    CHECK(dump_dag(plan.input) ==
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
          "  lf : [time(e6,2), see(e6,fatma,ayse),"
          " [one(fatma), def(fatma,+)], [one(ayse), def(ayse,+)]]\n"
          "  event : e6\n"
          "info :\n"
          "  rheme :\n"
          "    focus : [time(e6,2)]\n"
          "    mainprop : see(e6,fatma,ayse)\n"
          "  theme :\n"
          "    topic : [one(fatma), def(fatma,+)]\n"
          "    neutral : [one(ayse), def(ayse,+)]\n"
          "  background : none\n");
}

TEST_CASE("wh planner copies the question theme and resolves the event") {
    Lexicon& lex = lexicon();
    FactBase db = schedule();
    DiscourseModel dm;
    dm.seed_from(db);
    auto ps = parse(tokenize("ikide kimi gorecek fatma"), lex);
    REQUIRE(!ps.empty());
    AnswerPlan plan = plan_answer(ps.front().sign, db, dm, lex);
    REQUIRE(plan.input);
    CHECK(plan.particle.empty());
    CHECK(to_string(deref(plan.input, {"info", "theme", "topic"})) ==
          "[time(e6,2)]");
    CHECK(to_string(deref(plan.input, {"info", "theme", "neutral"})) ==
          "none");
    CHECK(to_string(deref(plan.input, {"info", "rheme", "focus"})) ==
          "[one(ayse), def(ayse,+)]");
    CHECK(to_string(deref(plan.input, {"info", "background"})) ==
          "[one(fatma), def(fatma,+)]");
}

TEST_CASE("sessions are deterministic") {
    for (int i = 0; i < 3; ++i) {
        Session s(lexicon(), schedule());
        CHECK(s.step("fatma ayseyi gorebilirmi?") ==
              "evet, fatma ayseyi ikide gorebilir.");
        CHECK(s.step("ikide kimi gorecek fatma?") ==
              "ikide ayseyi gorecek fatma.");
        CHECK(s.step("ahmet fatmayi gordu mu?") ==
              "hayir, ama ahmet ayseyi gordu.");
    }
}

TEST_CASE("unanswerable questions and unknown words are reported") {
    Session s(lexicon(), schedule());
    CHECK(s.step("kim kitabi okuyor?") == "no answer");
    std::string r = s.step("zeynep ayseyi gordu mu?");
    CHECK(r.find("error:") == 0);
    CHECK(r.find("zeynep") != std::string::npos);
}
