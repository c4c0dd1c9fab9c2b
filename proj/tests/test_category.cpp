#include <doctest.h>

#include "mccg/category.hpp"

using namespace mccg;

namespace {

NodeRef np_node(const std::string& kase, const std::string& entity,
                const std::string& postv = "") {
    auto syn = mk_complex(
        {{"cat", mk_atom("np")}, {"case", mk_atom(kase)}});
    if (!postv.empty()) put_feat(syn, "postv", mk_atom(postv));
    return mk_complex(
        {{"syn", syn},
         {"sem", mk_complex({{"entity", mk_atom(entity)}})}});
}

// S|{Nn, Na} with lf [seek(X,Y)] bound to the argument entities.
struct Verb {
    NodeRef result;
    SynCatPtr cat;
};

Verb make_verb() {
    auto x = mk_var("X");
    auto y = mk_var("Y");
    auto nomsig = mk_complex(
        {{"syn",
          mk_complex({{"cat", mk_atom("np")}, {"case", mk_atom("nom")}})},
         {"sem", mk_complex({{"entity", x}})}});
    auto accsig = mk_complex(
        {{"syn",
          mk_complex({{"cat", mk_atom("np")}, {"case", mk_atom("acc")}})},
         {"sem", mk_complex({{"entity", y}})}});
    Verb v;
    v.result = mk_complex(
        {{"syn", mk_complex({{"cat", mk_atom("s")}})},
         {"sem",
          mk_complex({{"lf", mk_set({mk_term("seek", {x, y})})}})}});
    v.cat = functor_cat(v.result,
                        {SynArg{basic_cat(nomsig), Dir::Either},
                         SynArg{basic_cat(accsig), Dir::Either}});
    return v;
}

} // namespace

TEST_CASE("category printing") {
    auto v = make_verb();
    CHECK(cat_to_string(v.cat) == "S|{Nn, Na}");
}

TEST_CASE("application consumes any matching multiset member") {
    auto v = make_verb();
    CatEnv env;
    auto rs = apply(v.cat, basic_cat(np_node("nom", "fatma")), Dir::Left, env);
    REQUIRE(rs.size() == 1);
    CHECK(cat_to_string(rs[0].cat, &rs[0].env) == "S|{Na}");

    // order-free: the accusative combines first just as well
    auto rs2 = apply(v.cat, basic_cat(np_node("acc", "ahmet")), Dir::Left, env);
    REQUIRE(rs2.size() == 1);
    CHECK(cat_to_string(rs2[0].cat, &rs2[0].env) == "S|{Nn}");
}

TEST_CASE("clean-up exposes a basic category after the last argument") {
    auto v = make_verb();
    CatEnv env;
    auto r1 = apply(v.cat, basic_cat(np_node("nom", "fatma")), Dir::Left, env);
    REQUIRE(r1.size() == 1);
    auto r2 = apply(r1[0].cat, basic_cat(np_node("acc", "ahmet")), Dir::Left,
                    r1[0].env);
    REQUIRE(r2.size() == 1);
    CHECK(r2[0].cat->basic());

    Resolver res(r2[0].env.nodes);
    auto node = resolve_cat(r2[0].cat, r2[0].env, res);
    auto lf = deref(node->result_node, {"sem", "lf"});
    REQUIRE(lf);
    auto items = flatten_set(lf, r2[0].env.nodes);
    REQUIRE(items.size() == 1);
    CHECK(to_string(items[0]) == "seek(fatma,ahmet)");
}

TEST_CASE("a nominal marked postv - cannot stand behind the verb") {
    auto v = make_verb();
    CatEnv env;
    auto blocked =
        apply(v.cat, basic_cat(np_node("nom", "gazete", "-")), Dir::Right, env);
    CHECK(blocked.empty());
    auto fine =
        apply(v.cat, basic_cat(np_node("nom", "gazete", "-")), Dir::Left, env);
    CHECK(fine.size() == 1);
}

TEST_CASE("type-raising and direct application give the same semantics") {
    auto v1 = make_verb();
    CatEnv direct_env;
    auto direct =
        apply(v1.cat, basic_cat(np_node("nom", "fatma")), Dir::Left,
              direct_env);
    REQUIRE(direct.size() == 1);

    auto v2 = make_verb();
    auto raised = type_raise(np_node("nom", "fatma"), Dir::Right);
    CatEnv renv;
    auto viaraise = apply(raised, v2.cat, Dir::Right, renv);
    REQUIRE(viaraise.size() == 1);
    CHECK(cat_to_string(viaraise[0].cat, &viaraise[0].env) == "S|{Na}");

    Resolver r1(direct[0].env.nodes);
    auto n1 = resolve_cat(direct[0].cat, direct[0].env, r1);
    Resolver r2(viaraise[0].env.nodes);
    auto n2 = resolve_cat(viaraise[0].cat, viaraise[0].env, r2);
    CHECK(canonical(n1->result_node) == canonical(n2->result_node));
}

TEST_CASE("raised nominals compose, stacking their verb arguments") {
    auto ra = type_raise(np_node("nom", "fatma"), Dir::Left);
    auto rb = type_raise(np_node("acc", "ahmet"), Dir::Left);
    CatEnv env;
    auto comp = compose(ra, rb, false, env);
    REQUIRE(!comp.empty());

    auto v = make_verb();
    bool derived = false;
    for (auto& c : comp) {
        auto fin = apply(c.cat, v.cat, Dir::Left, c.env);
        for (auto& f : fin)
            if (f.cat->basic()) derived = true;
    }
    CHECK(derived);
}

TEST_CASE("composition fails when no argument matches the other result") {
    // intransitive head: S|{Nn}
    auto x = mk_var("X");
    auto nomsig = mk_complex(
        {{"syn",
          mk_complex({{"cat", mk_atom("np")}, {"case", mk_atom("nom")}})},
         {"sem", mk_complex({{"entity", x}})}});
    auto s = mk_complex({{"syn", mk_complex({{"cat", mk_atom("s")}})}});
    auto intrans =
        functor_cat(s, {SynArg{basic_cat(nomsig), Dir::Either}});
    auto v = make_verb();
    CatEnv env;
    CHECK(compose(intrans, v.cat, true, env).empty());
    CHECK(compose(intrans, v.cat, false, env).empty());
}

TEST_CASE("basic category unifies with an exhausted open functor") {
    auto s = mk_complex({{"syn", mk_complex({{"cat", mk_atom("s")}})}});
    int rest = fresh_rest_id();
    auto open = functor_cat(mk_var("S"), {}, rest);
    CatEnv env;
    auto u = unify_cat(open, basic_cat(s), env);
    REQUIRE(u);
    CHECK((*u)->basic());
}
