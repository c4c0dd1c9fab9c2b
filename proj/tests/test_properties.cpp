#include <doctest.h>

#include "mccg/feature_graph.hpp"

#include <algorithm>
#include <random>
#include <vector>

using namespace mccg;

namespace {

// Random feature graphs over a small symbol vocabulary so collisions (and
// therefore interesting unifications) are common.
struct Gen {
    std::mt19937 rng;
    std::vector<NodeRef> vars;

    explicit Gen(unsigned seed) : rng(seed) {}

    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

    std::string sym() {
        static const char* syms[] = {"a", "b", "c", "nom", "acc", "s"};
        return syms[pick(6)];
    }
    std::string label() {
        static const char* labels[] = {"cat", "agr", "sem", "f", "g"};
        return labels[pick(5)];
    }

    NodeRef var() {
        if (!vars.empty() && pick(2) == 0) return vars[pick((int)vars.size())];
        NodeRef v = mk_var("V");
        vars.push_back(v);
        return v;
    }

    NodeRef node(int depth) {
        int k = depth >= 3 ? pick(2) : pick(5);
        switch (k) {
        case 0:
            return mk_atom(sym());
        case 1:
            return var();
        case 2: {
            std::vector<std::pair<std::string, NodeRef>> fs;
            int n = 1 + pick(3);
            for (int i = 0; i < n; ++i) {
                std::string l = label();
                bool dup = false;
                for (auto& f : fs) dup = dup || f.first == l;
                if (!dup) fs.emplace_back(l, node(depth + 1));
            }
            return mk_complex(std::move(fs));
        }
        case 3: {
            std::vector<NodeRef> items;
            int n = 1 + pick(3);
            for (int i = 0; i < n; ++i) items.push_back(node(depth + 1));
            return mk_set(std::move(items));
        }
        default: {
            std::vector<NodeRef> args;
            int n = 1 + pick(2);
            for (int i = 0; i < n; ++i) args.push_back(node(depth + 1));
            return mk_term(sym(), std::move(args));
        }
        }
    }
};

} // namespace

TEST_CASE("unification is commutative and idempotent over random graphs") {
    std::mt19937 seed_rng(20240901);
    int successes = 0;
    for (int trial = 0; trial < 1200; ++trial) {
        Gen g(seed_rng());
        NodeRef a = g.node(0);
        NodeRef b = g.node(0);
        REQUIRE(acyclic(a));
        REQUIRE(acyclic(b));

        Bindings ab, ba;
        auto rab = unify(a, b, ab);
        auto rba = unify(b, a, ba);
        CHECK((bool)rab == (bool)rba);
        if (!rab) continue;
        ++successes;

        // Commutativity: the merged graphs of both argument orders are
        // mutually unifiable (canonical strings can differ only in
        // variable numbering, which unification absorbs).
        NodeRef m1 = resolve(*rab, ab);
        NodeRef m2 = resolve(*rba, ba);
        Bindings cross;
        CHECK(unify(m1, m2, cross));

        // Idempotence: unifying a resolved result with itself changes
        // nothing.
        NodeRef r = resolve(*rab, ab);
        Bindings again;
        auto rr = unify(r, r, again);
        REQUIRE(rr);
        CHECK(canonical(resolve(r, again)) == canonical(r));

        // Self-unification always succeeds and is identity.
        Bindings self;
        auto rs = unify(a, a, self);
        REQUIRE(rs);
        CHECK(canonical(resolve(a, self)) == canonical(a));
    }
    // The vocabulary is small enough that plenty of pairs must unify.
    CHECK(successes > 100);
}

TEST_CASE("clone preserves structure and renames variables apart") {
    std::mt19937 seed_rng(77);
    for (int trial = 0; trial < 400; ++trial) {
        Gen g(seed_rng());
        NodeRef a = g.node(0);
        CloneCtx ctx;
        NodeRef c = clone_fresh(a, ctx);
        CHECK(canonical(a) == canonical(c));
        // A fresh clone never shares a variable with its source.
        for (auto& v : g.vars) {
            CloneCtx probe;
            NodeRef cv = clone_fresh(v, probe);
            CHECK(cv->id != v->id);
        }
    }
}

TEST_CASE("merge of term lists keeps every distinct fact") {
    std::mt19937 seed_rng(4242);
    for (int trial = 0; trial < 400; ++trial) {
        Gen g(seed_rng());
        std::vector<NodeRef> xs, ys;
        int n = 1 + g.pick(3), m = 1 + g.pick(3);
        for (int i = 0; i < n; ++i)
            xs.push_back(mk_term(g.sym(), {mk_atom(g.sym())}));
        for (int i = 0; i < m; ++i)
            ys.push_back(mk_term(g.sym(), {mk_atom(g.sym())}));
        NodeRef a = mk_set(xs);
        NodeRef b = mk_set(ys);
        Bindings env;
        NodeRef merged = merge_lf(a, b, env);
        REQUIRE(merged);
        // No fact disappears: everything in either input unifies with
        // something in the merge.
        auto elems = flatten_set(merged, env);
        for (auto& t : xs) {
            bool found = false;
            for (auto& e : elems) {
                Bindings probe = env;
                if (unify(t, e, probe)) found = true;
            }
            CHECK(found);
        }
        for (auto& t : ys) {
            bool found = false;
            for (auto& e : elems) {
                Bindings probe = env;
                if (unify(t, e, probe)) found = true;
            }
            CHECK(found);
        }
    }
}

TEST_CASE("canonical form is invariant under permutation of ground sets") {
    std::mt19937 rng(9);
    for (int trial = 0; trial < 200; ++trial) {
        Gen g(rng());
        std::vector<NodeRef> items;
        int n = 2 + g.pick(4);
        for (int i = 0; i < n; ++i) {
            if (g.pick(4) == 0)
                items.push_back(mk_set({mk_term(g.sym(), {mk_atom(g.sym())}),
                                        mk_atom(g.sym())},
                                       true));
            else
                items.push_back(mk_term(
                    g.sym(), {mk_atom(g.sym()), mk_atom(g.sym())}));
        }
        NodeRef a = mk_set(items);
        std::shuffle(items.begin(), items.end(), rng);
        NodeRef b = mk_set(items);
        CHECK(canonical(a) == canonical(b));
    }
}
