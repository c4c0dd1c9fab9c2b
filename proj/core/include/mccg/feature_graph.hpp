#ifndef MCCG_FEATURE_GRAPH_HPP
#define MCCG_FEATURE_GRAPH_HPP

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mccg {

// Rooted acyclic feature structures. Five node kinds:
//   Atom    - a constant symbol (nom, fatma, e6, none, ...)
//   Var     - an unbound logic variable, identified by id
//   Complex - feature label -> node map (labels unique)
//   Set     - order-insensitive collection (LF term lists, prop groups)
//   Term    - pred(arg1, ..., argN), the function format of semantic facts
//
// Coindexing is node sharing: two paths that reach the same shared_ptr
// (or two Vars with the same id) denote one value.
struct Node;
using NodeRef = std::shared_ptr<Node>;

enum class Kind { Atom, Var, Complex, Set, Term };

struct Node {
    Kind kind = Kind::Atom;
    std::string sym;    // atom text, var display name, or term predicate
    int id = 0;         // variable identity (Kind::Var only)
    bool group = false; // Set: a nested property group, kept intact when
                        // spliced into an enclosing LF list
    std::vector<std::pair<std::string, NodeRef>> feats; // Complex
    std::vector<NodeRef> items;                         // Set / Term
};

int fresh_var_id();

NodeRef mk_atom(std::string sym);
NodeRef mk_var(std::string name = "");
NodeRef mk_complex(std::vector<std::pair<std::string, NodeRef>> feats = {});
NodeRef mk_set(std::vector<NodeRef> items = {}, bool group = false);
NodeRef mk_term(std::string pred, std::vector<NodeRef> args);

// Adds or replaces a feature on a complex node (build-time helper).
void put_feat(const NodeRef& n, const std::string& label, NodeRef value);
NodeRef get_feat(const NodeRef& n, const std::string& label);

// Variable environment. Unification records bindings here; structures are
// never mutated, so a failed attempt is discarded by dropping the Bindings
// copy it worked on.
class Bindings {
public:
    NodeRef walk(NodeRef n) const;
    void bind(int id, NodeRef value);
    bool bound(int id) const;
    NodeRef lookup(int id) const;
    std::size_t size() const { return map_.size(); }

private:
    std::unordered_map<int, NodeRef> map_;
};

// Most general unifier. Returns the merged node and extends env, or
// nullopt on clash (env may then hold partial bindings; callers keep a
// copy of env when they need rollback).
std::optional<NodeRef> unify(const NodeRef& a, const NodeRef& b, Bindings& env);

// Deep substitution of bindings into a graph. Sharing (coindexing) in the
// source is preserved in the copy. Unbound variables survive as-is.
NodeRef resolve(const NodeRef& n, const Bindings& env);

// Same, but sharing is also preserved across successive calls on one
// Resolver; used to resolve the linked pieces of a Sign together.
class Resolver {
public:
    explicit Resolver(const Bindings& env) : env_(env) {}
    NodeRef operator()(const NodeRef& n);

private:
    const Bindings& env_;
    std::unordered_map<const Node*, NodeRef> node_memo_;
    std::unordered_map<int, NodeRef> var_memo_;
};

// Path lookup following features and bindings; nullptr when absent.
NodeRef deref(const NodeRef& root, const std::vector<std::string>& path,
              const Bindings* env = nullptr);

// Union of two term-sets. Terms sharing a key predicate merge when their
// arguments unify; otherwise both survive as distinct facts.
NodeRef merge_lf(const NodeRef& a, const NodeRef& b, Bindings& env);

// Splices bound set-valued variables into the element list. Nested prop
// groups stay intact as single elements; unbound vars are kept.
std::vector<NodeRef> flatten_set(const NodeRef& set, const Bindings& env);

// Strict multiset match: every element of a pairs off with a distinct
// unifiable element of b and vice versa. Used as the generator's
// completion oracle and by round-trip checks.
bool lf_covers(const NodeRef& a, const NodeRef& b, Bindings& env);

// Renaming-invariant serialization; equal strings mean equal graphs up to
// variable renaming and set order.
std::string canonical(const NodeRef& n, const Bindings* env = nullptr);

// Copies a graph giving every variable a fresh id (per-lookup renaming).
// One CloneCtx per sign keeps coindexed nodes shared across the pieces.
struct CloneCtx {
    std::unordered_map<int, int> renaming;
    std::unordered_map<const Node*, NodeRef> memo;
};
NodeRef clone_fresh(const NodeRef& n, CloneCtx& ctx);

bool acyclic(const NodeRef& n);

// True when any term with the given predicate occurs anywhere in the graph.
bool contains_pred(const NodeRef& n, const std::string& pred);

// Debug/trace form, e.g. see(e6,fatma,ayse) or [a, b, [c]].
std::string to_string(const NodeRef& n, const Bindings* env = nullptr);

} // namespace mccg

#endif
