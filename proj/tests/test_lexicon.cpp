#include <doctest.h>

#include "mccg/lexicon.hpp"

using namespace mccg;

namespace {
const Lexicon& demo() {
    static Lexicon lex = Lexicon::load(MCCG_DATA_DIR "/turkish.lex");
    return lex;
}
} // namespace

TEST_CASE("demo lexicon loads and covers the sample vocabulary") {
    auto& lex = demo();
    for (const char* w :
         {"ariyor", "gordu", "gorecek", "gorebilir", "gorebilirmi", "biliyor",
          "gittigini", "fatma", "ayse", "ahmet", "fatmayi", "ayseyi",
          "aysenin", "ahmeti", "ikide", "ucte", "ogrencileri", "kimi",
          "ne zaman", "evet", "hayir", "ama", "mu", "da"})
        CHECK_MESSAGE(lex.known(w), w);
}

TEST_CASE("empty input gives an empty lexicon") {
    auto lex = Lexicon::parse("");
    CHECK(lex.entries().empty());
}

TEST_CASE("nominal lookup includes the raised variants") {
    auto& lex = demo();
    CHECK(lex.lookup("gazeteyi").size() == 3); // basic + raised both ways
    CHECK(lex.lookup("gazete").size() == 2);   // postv -, no leftward raise
    CHECK(lex.lookup("xyzzy").empty());
}

TEST_CASE("verbs carry two ordering variants") {
    auto& lex = demo();
    auto vs = lex.lookup("ariyor");
    REQUIRE(vs.size() == 2);
    CHECK(ord_is_functor(vs[0].sign.order));
    CHECK(ord_is_functor(vs[1].sign.order));
    CHECK(vs[0].sign.order->args.size() == 4);
    CHECK(vs[1].sign.order->args.size() == 1);
}

TEST_CASE("lookups are freshly renamed per instantiation") {
    auto& lex = demo();
    auto a = lex.lookup("ariyor")[0];
    auto b = lex.lookup("ariyor")[0];
    auto ea = deref(a.sign.result(), {"sem", "event"});
    auto eb = deref(b.sign.result(), {"sem", "event"});
    REQUIRE(ea);
    REQUIRE(eb);
    CHECK(ea->id != eb->id);
}

TEST_CASE("discourse-new items are focus or neutral only") {
    auto& lex = demo();
    for (auto& ls : lex.lookup("ahmeti")) {
        auto fresh = assign_order(ls, Familiarity::New);
        REQUIRE(fresh.size() == 2);
        for (auto& s : fresh) {
            CHECK((s.order->slot == InfoSlot::Focus ||
                   s.order->slot == InfoSlot::Neutral));
        }
        auto old = assign_order(ls, Familiarity::Given);
        REQUIRE(old.size() == 1);
        CHECK(old[0].order->slot == InfoSlot::Any);
    }
}

TEST_CASE("interrogative items have a pinned focus function") {
    auto& lex = demo();
    for (auto& ls : lex.lookup("kimi")) {
        CHECK_FALSE(ls.needs_order);
        REQUIRE(ls.sign.order);
        CHECK(ls.sign.order->slot == InfoSlot::Focus);
    }
}

TEST_CASE("a key predicate missing from the lf is rejected") {
    CHECK_THROWS_WITH_AS(
        Lexicon::parse("bad verb ; key see ; arg nom X ; lf [seek(E,X)]"),
        doctest::Contains("key predicate"), std::runtime_error);
}

TEST_CASE("duplicate entries are rejected with both line numbers") {
    std::string rec =
        "ikide adjunct ; lf [time(E,2)] ; postv +\n\n"
        "ikide adjunct ; lf [time(E,2)] ; postv +\n";
    CHECK_THROWS_WITH_AS(Lexicon::parse(rec), doctest::Contains("duplicate"),
                         std::runtime_error);
}

TEST_CASE("parse errors carry the line number") {
    CHECK_THROWS_WITH_AS(Lexicon::parse("justoneword"),
                         doctest::Contains("line 1"), std::runtime_error);
}
