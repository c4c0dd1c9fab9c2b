#ifndef MCCG_CATEGORY_HPP
#define MCCG_CATEGORY_HPP

#include "mccg/feature_graph.hpp"

#include <memory>
#include <vector>

namespace mccg {

enum class Dir { Left, Right, Either };

// `either` matches both application directions.
bool dir_compatible(Dir d, Dir side);
std::optional<Dir> dir_unify(Dir a, Dir b);

struct SynCat;
using SynCatPtr = std::shared_ptr<SynCat>;

struct SynArg {
    SynCatPtr cat; // basic feature graph or a functor signature
    Dir dir = Dir::Either;
};

// A result plus an order-free multiset of directional arguments. A basic
// category is a functor with no arguments and a closed multiset. `rest`
// marks an open multiset (the "..." variable); its id lives in CatEnv.
struct SynCat {
    NodeRef result_node;   // set when the result is a plain feature graph
    SynCatPtr result_cat;  // set when the result is itself a functor
    std::vector<SynArg> args;
    int rest = -1;

    bool basic() const { return args.empty() && rest < 0 && !result_cat; }
};

SynCatPtr basic_cat(NodeRef n);
SynCatPtr functor_cat(NodeRef result, std::vector<SynArg> args, int rest = -1);

// Zero or more arguments captured by an open multiset, possibly chained to
// another open multiset.
struct ArgSetBinding {
    std::vector<SynArg> items;
    int tail = -1;
};

// Node bindings plus argument-multiset bindings for rest variables.
struct CatEnv {
    Bindings nodes;
    std::unordered_map<int, ArgSetBinding> sets;
};

int fresh_rest_id();

// Splices bound rest chains into the argument vector.
SynCat normalize_cat(const SynCat& c, const CatEnv& env);

// Category-level unification: basics unify as graphs; functors unify their
// results, match arguments injectively, and hand the leftovers to the other
// side's rest variable.
std::optional<SynCatPtr> unify_cat(const SynCatPtr& a, const SynCatPtr& b,
                                   CatEnv& env);

// X|{} rewrites to X. Recurses when the exposed result is itself a
// completed functor.
SynCatPtr cleanup(const SynCatPtr& c, const CatEnv& env);

struct CatResult {
    SynCatPtr cat;
    CatEnv env;
    int consumed_arg = -1;
};

// Application rules. `side` is where the argument sign sits relative to the
// functor. Every multiset member that unifies yields a distinct result.
std::vector<CatResult> apply(const SynCatPtr& functor, const SynCatPtr& arg,
                             Dir side, const CatEnv& env);

// Composition rules. The head functor is on the right for backward
// composition and on the left for forward; one of the head's arguments
// must unify with the other functor's result signature, and the argument
// multisets union.
std::vector<CatResult> compose(const SynCatPtr& left, const SynCatPtr& right,
                               bool forward, const CatEnv& env);

// Order-preserving type-raising: a case-marked nominal becomes a functor
// over verbs that seek it; the verb's remaining arguments survive through a
// shared rest variable. `dir` Right gives the preverbal rule, Left the
// postverbal one.
SynCatPtr type_raise(const NodeRef& noun, Dir dir);

// Compact trace notation: S|{Nn, Na}, direction marks < and >, "..." for an
// open multiset.
std::string cat_to_string(const SynCatPtr& c, const CatEnv* env = nullptr);

// Deep-copies a category applying bindings, sharing structure with other
// graphs resolved through the same Resolver.
SynCatPtr resolve_cat(const SynCatPtr& c, const CatEnv& env, Resolver& res);

// Fresh variable renaming for lexicon lookups.
SynCatPtr clone_cat_fresh(const SynCatPtr& c, CloneCtx& ctx);

std::size_t arg_count(const SynCatPtr& c, const CatEnv& env);

} // namespace mccg

#endif
