#include "mccg/feature_graph.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>
#include <stdexcept>

namespace mccg {

namespace {
int g_var_counter = 0;
}

int fresh_var_id() { return ++g_var_counter; }

NodeRef mk_atom(std::string sym) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Atom;
    n->sym = std::move(sym);
    return n;
}

NodeRef mk_var(std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Var;
    n->sym = std::move(name);
    n->id = fresh_var_id();
    return n;
}

NodeRef mk_complex(std::vector<std::pair<std::string, NodeRef>> feats) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Complex;
    n->feats = std::move(feats);
    return n;
}

NodeRef mk_set(std::vector<NodeRef> items, bool group) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Set;
    n->items = std::move(items);
    n->group = group;
    return n;
}

NodeRef mk_term(std::string pred, std::vector<NodeRef> args) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Term;
    n->sym = std::move(pred);
    n->items = std::move(args);
    return n;
}

void put_feat(const NodeRef& n, const std::string& label, NodeRef value) {
    assert(n->kind == Kind::Complex);
    for (auto& f : n->feats) {
        if (f.first == label) {
            f.second = std::move(value);
            return;
        }
    }
    n->feats.emplace_back(label, std::move(value));
}

NodeRef get_feat(const NodeRef& n, const std::string& label) {
    if (!n || n->kind != Kind::Complex) return nullptr;
    for (auto& f : n->feats)
        if (f.first == label) return f.second;
    return nullptr;
}

NodeRef Bindings::walk(NodeRef n) const {
    while (n && n->kind == Kind::Var) {
        auto it = map_.find(n->id);
        if (it == map_.end()) break;
        n = it->second;
    }
    return n;
}

void Bindings::bind(int id, NodeRef value) { map_[id] = std::move(value); }

bool Bindings::bound(int id) const { return map_.count(id) != 0; }

NodeRef Bindings::lookup(int id) const {
    auto it = map_.find(id);
    return it == map_.end() ? nullptr : it->second;
}

// ---------------------------------------------------------------------------
// Set handling

std::vector<NodeRef> flatten_set(const NodeRef& set, const Bindings& env) {
    std::vector<NodeRef> out;
    if (!set) return out;
    NodeRef s = env.walk(set);
    if (!s || s->kind != Kind::Set) {
        out.push_back(s);
        return out;
    }
    for (auto& e : s->items) {
        NodeRef w = env.walk(e);
        if (w && w->kind == Kind::Set && !w->group) {
            auto sub = flatten_set(w, env);
            out.insert(out.end(), sub.begin(), sub.end());
        } else {
            out.push_back(w);
        }
    }
    return out;
}

namespace {

std::optional<NodeRef> unify_impl(NodeRef a, NodeRef b, Bindings& env);

// Injectively unifies each element of `small` against a distinct element of
// `big`, with backtracking. Matched big-elements are flagged in `used`.
bool match_injective(const std::vector<NodeRef>& small,
                     const std::vector<NodeRef>& big, std::size_t i,
                     std::vector<bool>& used, Bindings& env,
                     std::vector<NodeRef>& merged) {
    if (i == small.size()) return true;
    for (std::size_t j = 0; j < big.size(); ++j) {
        if (used[j]) continue;
        Bindings save = env;
        auto saved_merged = merged;
        if (auto m = unify_impl(small[i], big[j], env)) {
            used[j] = true;
            merged.push_back(*m);
            if (match_injective(small, big, i + 1, used, env, merged))
                return true;
            used[j] = false;
        }
        env = std::move(save);
        merged = std::move(saved_merged);
    }
    return false;
}

// Term-sets unify when, for every key predicate present on both sides, the
// smaller side's terms each find a distinct unifiable partner on the larger
// side. Elements only one side has pass through untouched; nested prop
// groups and unbound variables are never forced to pair up here (group
// identity is settled later by coindexing or by lf_covers).
std::optional<NodeRef> unify_sets(const NodeRef& a, const NodeRef& b,
                                  Bindings& env) {
    auto ea = flatten_set(a, env);
    auto eb = flatten_set(b, env);

    std::map<std::string, std::vector<NodeRef>> terms_a, terms_b;
    std::vector<NodeRef> rest;
    auto classify = [&](std::vector<NodeRef>& elems,
                        std::map<std::string, std::vector<NodeRef>>& terms) {
        for (auto& e : elems) {
            if (e && e->kind == Kind::Term)
                terms[e->sym].push_back(e);
            else
                rest.push_back(e);
        }
    };
    classify(ea, terms_a);
    classify(eb, terms_b);

    std::vector<NodeRef> out;
    for (auto& [key, as] : terms_a) {
        auto it = terms_b.find(key);
        if (it == terms_b.end()) {
            out.insert(out.end(), as.begin(), as.end());
            continue;
        }
        auto& bs = it->second;
        const auto& small = as.size() <= bs.size() ? as : bs;
        const auto& big = as.size() <= bs.size() ? bs : as;
        std::vector<bool> used(big.size(), false);
        std::vector<NodeRef> merged;
        if (!match_injective(small, big, 0, used, env, merged))
            return std::nullopt;
        out.insert(out.end(), merged.begin(), merged.end());
        for (std::size_t j = 0; j < big.size(); ++j)
            if (!used[j]) out.push_back(big[j]);
        terms_b.erase(it);
    }
    for (auto& [key, bs] : terms_b)
        out.insert(out.end(), bs.begin(), bs.end());

    // Dedup structurally identical groups/atoms carried from both sides.
    std::vector<NodeRef> kept;
    std::vector<std::string> seen;
    for (auto& e : rest) {
        if (e && e->kind == Kind::Var) {
            kept.push_back(e);
            continue;
        }
        std::string c = canonical(e, &env);
        if (std::find(seen.begin(), seen.end(), c) == seen.end()) {
            seen.push_back(c);
            kept.push_back(e);
        }
    }
    out.insert(out.end(), kept.begin(), kept.end());

    NodeRef wa = env.walk(a), wb = env.walk(b);
    return mk_set(std::move(out), wa->group && wb->group);
}

// Occurs check: binding a variable to a structure containing itself would
// make the graph cyclic.
bool occurs(int id, const NodeRef& n0, const Bindings& env) {
    NodeRef n = env.walk(n0);
    if (!n) return false;
    switch (n->kind) {
    case Kind::Var:
        return n->id == id;
    case Kind::Atom:
        return false;
    case Kind::Term:
    case Kind::Set:
        for (auto& e : n->items)
            if (occurs(id, e, env)) return true;
        return false;
    case Kind::Complex:
        for (auto& f : n->feats)
            if (occurs(id, f.second, env)) return true;
        return false;
    }
    return false;
}

std::optional<NodeRef> unify_impl(NodeRef a, NodeRef b, Bindings& env) {
    a = env.walk(a);
    b = env.walk(b);
    if (a == b) return a;
    if (a && a->kind == Kind::Var) {
        if (b && b->kind == Kind::Var && a->id == b->id) return a;
        if (occurs(a->id, b, env)) return std::nullopt;
        env.bind(a->id, b);
        return b;
    }
    if (b && b->kind == Kind::Var) {
        if (occurs(b->id, a, env)) return std::nullopt;
        env.bind(b->id, a);
        return a;
    }
    if (!a || !b) return std::nullopt;
    if (a->kind != b->kind) return std::nullopt;

    switch (a->kind) {
    case Kind::Atom:
        return a->sym == b->sym ? std::optional<NodeRef>(a) : std::nullopt;
    case Kind::Term: {
        if (a->sym != b->sym || a->items.size() != b->items.size())
            return std::nullopt;
        std::vector<NodeRef> args;
        for (std::size_t i = 0; i < a->items.size(); ++i) {
            auto r = unify_impl(a->items[i], b->items[i], env);
            if (!r) return std::nullopt;
            args.push_back(*r);
        }
        return mk_term(a->sym, std::move(args));
    }
    case Kind::Complex: {
        auto out = mk_complex();
        for (auto& [label, av] : a->feats) {
            NodeRef bv = get_feat(b, label);
            if (bv) {
                auto r = unify_impl(av, bv, env);
                if (!r) return std::nullopt;
                put_feat(out, label, *r);
            } else {
                put_feat(out, label, av);
            }
        }
        for (auto& [label, bv] : b->feats)
            if (!get_feat(a, label)) put_feat(out, label, bv);
        return out;
    }
    case Kind::Set:
        return unify_sets(a, b, env);
    default:
        return std::nullopt;
    }
}

} // namespace

std::optional<NodeRef> unify(const NodeRef& a, const NodeRef& b,
                             Bindings& env) {
    Bindings save = env;
    auto r = unify_impl(a, b, env);
    if (!r) env = std::move(save); // no partial bindings escape
    return r;
}

// ---------------------------------------------------------------------------
// Resolution

namespace {

struct ResolveCtx {
    const Bindings& env;
    std::unordered_map<const Node*, NodeRef>& node_memo;
    std::unordered_map<int, NodeRef>& var_memo;
    int depth = 0;
};

NodeRef resolve_impl(const NodeRef& n0, ResolveCtx& ctx) {
    assert(ctx.depth < 4096 && "binding cycle while resolving feature graph");
    if (!n0) return n0;
    NodeRef n = ctx.env.walk(n0);
    if (!n) return n;
    if (n->kind == Kind::Var) {
        auto it = ctx.var_memo.find(n->id);
        if (it != ctx.var_memo.end()) return it->second;
        ctx.var_memo.emplace(n->id, n);
        return n;
    }
    if (n->kind == Kind::Atom) return n;
    auto it = ctx.node_memo.find(n.get());
    if (it != ctx.node_memo.end()) return it->second;

    auto out = std::make_shared<Node>();
    out->kind = n->kind;
    out->sym = n->sym;
    out->group = n->group;
    ctx.node_memo.emplace(n.get(), out);
    ++ctx.depth;
    if (n->kind == Kind::Complex) {
        for (auto& [label, v] : n->feats)
            out->feats.emplace_back(label, resolve_impl(v, ctx));
    } else {
        for (auto& e : n->items) out->items.push_back(resolve_impl(e, ctx));
    }
    --ctx.depth;
    return out;
}

} // namespace

NodeRef resolve(const NodeRef& n, const Bindings& env) {
    std::unordered_map<const Node*, NodeRef> node_memo;
    std::unordered_map<int, NodeRef> var_memo;
    ResolveCtx ctx{env, node_memo, var_memo, 0};
    return resolve_impl(n, ctx);
}

NodeRef Resolver::operator()(const NodeRef& n) {
    ResolveCtx ctx{env_, node_memo_, var_memo_, 0};
    return resolve_impl(n, ctx);
}

NodeRef deref(const NodeRef& root, const std::vector<std::string>& path,
              const Bindings* env) {
    Bindings empty;
    const Bindings& e = env ? *env : empty;
    NodeRef cur = e.walk(root);
    for (auto& label : path) {
        if (!cur || cur->kind != Kind::Complex) return nullptr;
        cur = get_feat(cur, label);
        if (!cur) return nullptr;
        cur = e.walk(cur);
    }
    return cur;
}

// ---------------------------------------------------------------------------
// LF term-set operations

NodeRef merge_lf(const NodeRef& a, const NodeRef& b, Bindings& env) {
    std::vector<NodeRef> out = flatten_set(a, env);
    for (auto& e : flatten_set(b, env)) {
        if (e && e->kind == Kind::Term) {
            bool merged = false;
            for (auto& o : out) {
                NodeRef w = env.walk(o);
                if (w && w->kind == Kind::Term && w->sym == e->sym) {
                    Bindings save = env;
                    if (auto m = unify(w, e, env)) {
                        o = *m;
                        merged = true;
                        break;
                    }
                    env = std::move(save); // clash: keep both facts
                }
            }
            if (!merged) out.push_back(e);
        } else if (e && e->kind == Kind::Var) {
            out.push_back(e);
        } else {
            std::string c = canonical(e, &env);
            bool dup = false;
            for (auto& o : out)
                if (o && o->kind != Kind::Term && o->kind != Kind::Var &&
                    canonical(o, &env) == c) {
                    dup = true;
                    break;
                }
            if (!dup) out.push_back(e);
        }
    }
    return mk_set(std::move(out));
}

namespace {

bool cover_element(const NodeRef& x, const NodeRef& y, Bindings& env);

bool cover_match(const std::vector<NodeRef>& xs, const std::vector<NodeRef>& ys,
                 std::size_t i, std::vector<bool>& used, Bindings& env) {
    if (i == xs.size()) return true;
    for (std::size_t j = 0; j < ys.size(); ++j) {
        if (used[j]) continue;
        Bindings save = env;
        if (cover_element(xs[i], ys[j], env)) {
            used[j] = true;
            if (cover_match(xs, ys, i + 1, used, env)) return true;
            used[j] = false;
        }
        env = std::move(save);
    }
    return false;
}

bool cover_element(const NodeRef& x, const NodeRef& y, Bindings& env) {
    NodeRef wx = env.walk(x), wy = env.walk(y);
    if (wx && wy && wx->kind == Kind::Set && wy->kind == Kind::Set)
        return lf_covers(wx, wy, env);
    return unify(wx, wy, env).has_value();
}

} // namespace

bool lf_covers(const NodeRef& a, const NodeRef& b, Bindings& env) {
    auto ea = flatten_set(a, env);
    auto eb = flatten_set(b, env);
    if (ea.size() != eb.size()) return false;
    std::vector<bool> used(eb.size(), false);
    return cover_match(ea, eb, 0, used, env);
}

// ---------------------------------------------------------------------------
// Canonical form / printing

namespace {

struct CanonCtx {
    const Bindings* env;
    std::unordered_map<int, int> var_names;
    std::unordered_map<const Node*, int> shared;
    int next_tag = 0;
};

NodeRef cwalk(const NodeRef& n, const CanonCtx& ctx) {
    return ctx.env ? ctx.env->walk(n) : n;
}

void canon_write(const NodeRef& n0, CanonCtx& ctx, std::ostream& os, int depth);

// Sort key that ignores variable identity, so set ordering is stable under
// renaming.
std::string skeleton(const NodeRef& n0, CanonCtx& ctx, int depth) {
    if (depth > 256) return "...";
    NodeRef n = cwalk(n0, ctx);
    if (!n) return "<null>";
    switch (n->kind) {
    case Kind::Atom: return "a:" + n->sym;
    case Kind::Var: return "_";
    case Kind::Term: {
        std::string s = "t:" + n->sym + "(";
        for (auto& e : n->items) s += skeleton(e, ctx, depth + 1) + ",";
        return s + ")";
    }
    case Kind::Set: {
        std::vector<std::string> ks;
        for (auto& e : n->items) ks.push_back(skeleton(e, ctx, depth + 1));
        std::sort(ks.begin(), ks.end());
        std::string s = "[";
        for (auto& k : ks) s += k + ",";
        return s + "]";
    }
    case Kind::Complex: {
        std::vector<std::string> ks;
        for (auto& [label, v] : n->feats)
            ks.push_back(label + "=" + skeleton(v, ctx, depth + 1));
        std::sort(ks.begin(), ks.end());
        std::string s = "{";
        for (auto& k : ks) s += k + ",";
        return s + "}";
    }
    }
    return "";
}

void canon_write(const NodeRef& n0, CanonCtx& ctx, std::ostream& os,
                 int depth) {
    if (depth > 256) {
        os << "...";
        return;
    }
    NodeRef n = cwalk(n0, ctx);
    if (!n) {
        os << "<null>";
        return;
    }
    switch (n->kind) {
    case Kind::Atom:
        os << n->sym;
        return;
    case Kind::Var: {
        auto it = ctx.var_names.find(n->id);
        int name;
        if (it == ctx.var_names.end()) {
            name = static_cast<int>(ctx.var_names.size());
            ctx.var_names.emplace(n->id, name);
        } else {
            name = it->second;
        }
        os << "?" << name;
        return;
    }
    case Kind::Term:
        os << n->sym << "(";
        for (std::size_t i = 0; i < n->items.size(); ++i) {
            if (i) os << ",";
            canon_write(n->items[i], ctx, os, depth + 1);
        }
        os << ")";
        return;
    case Kind::Set: {
        auto it = ctx.shared.find(n.get());
        if (it != ctx.shared.end()) {
            os << "#" << it->second;
            return;
        }
        ctx.shared.emplace(n.get(), ctx.next_tag++);
        std::vector<NodeRef> elems = n->items;
        std::stable_sort(elems.begin(), elems.end(),
                         [&](const NodeRef& a, const NodeRef& b) {
                             return skeleton(a, ctx, depth) <
                                    skeleton(b, ctx, depth);
                         });
        os << (n->group ? "g[" : "[");
        for (std::size_t i = 0; i < elems.size(); ++i) {
            if (i) os << ",";
            canon_write(elems[i], ctx, os, depth + 1);
        }
        os << "]";
        return;
    }
    case Kind::Complex: {
        auto it = ctx.shared.find(n.get());
        if (it != ctx.shared.end()) {
            os << "#" << it->second;
            return;
        }
        ctx.shared.emplace(n.get(), ctx.next_tag++);
        std::vector<std::pair<std::string, NodeRef>> feats = n->feats;
        std::sort(feats.begin(), feats.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        os << "{";
        for (std::size_t i = 0; i < feats.size(); ++i) {
            if (i) os << ",";
            os << feats[i].first << ":";
            canon_write(feats[i].second, ctx, os, depth + 1);
        }
        os << "}";
        return;
    }
    }
}

} // namespace

std::string canonical(const NodeRef& n, const Bindings* env) {
    CanonCtx ctx{env, {}, {}, 0};
    std::ostringstream os;
    canon_write(n, ctx, os, 0);
    return os.str();
}

NodeRef clone_fresh(const NodeRef& n, CloneCtx& ctx) {
    if (!n) return n;
    if (n->kind == Kind::Atom) return n;
    auto it = ctx.memo.find(n.get());
    if (it != ctx.memo.end()) return it->second;
    auto out = std::make_shared<Node>();
    out->kind = n->kind;
    out->sym = n->sym;
    out->group = n->group;
    if (n->kind == Kind::Var) {
        auto rit = ctx.renaming.find(n->id);
        if (rit == ctx.renaming.end()) {
            out->id = fresh_var_id();
            ctx.renaming.emplace(n->id, out->id);
        } else {
            out->id = rit->second;
        }
    }
    ctx.memo.emplace(n.get(), out);
    if (n->kind == Kind::Complex) {
        for (auto& [label, v] : n->feats)
            out->feats.emplace_back(label, clone_fresh(v, ctx));
    } else {
        for (auto& e : n->items) out->items.push_back(clone_fresh(e, ctx));
    }
    return out;
}

namespace {
bool acyclic_impl(const NodeRef& n, std::vector<const Node*>& stack) {
    if (!n) return true;
    if (std::find(stack.begin(), stack.end(), n.get()) != stack.end())
        return false;
    stack.push_back(n.get());
    bool ok = true;
    if (n->kind == Kind::Complex) {
        for (auto& [label, v] : n->feats)
            if (!acyclic_impl(v, stack)) {
                ok = false;
                break;
            }
    } else if (n->kind == Kind::Set || n->kind == Kind::Term) {
        for (auto& e : n->items)
            if (!acyclic_impl(e, stack)) {
                ok = false;
                break;
            }
    }
    stack.pop_back();
    return ok;
}
} // namespace

bool acyclic(const NodeRef& n) {
    std::vector<const Node*> stack;
    return acyclic_impl(n, stack);
}

std::string to_string(const NodeRef& n0, const Bindings* env) {
    Bindings empty;
    const Bindings& e = env ? *env : empty;
    NodeRef n = e.walk(n0);
    if (!n) return "<absent>";
    switch (n->kind) {
    case Kind::Atom: return n->sym;
    case Kind::Var: return n->sym.empty() ? "_" + std::to_string(n->id)
                                          : n->sym + "_" + std::to_string(n->id);
    case Kind::Term: {
        std::string s = n->sym + "(";
        for (std::size_t i = 0; i < n->items.size(); ++i) {
            if (i) s += ",";
            s += to_string(n->items[i], env);
        }
        return s + ")";
    }
    case Kind::Set: {
        auto elems = flatten_set(n, e);
        std::string s = "[";
        for (std::size_t i = 0; i < elems.size(); ++i) {
            if (i) s += ", ";
            s += to_string(elems[i], env);
        }
        return s + "]";
    }
    case Kind::Complex: {
        std::string s = "{";
        for (std::size_t i = 0; i < n->feats.size(); ++i) {
            if (i) s += ", ";
            s += n->feats[i].first + " : " + to_string(n->feats[i].second, env);
        }
        return s + "}";
    }
    }
    return "";
}

bool contains_pred(const NodeRef& n, const std::string& pred) {
    if (!n) return false;
    switch (n->kind) {
    case Kind::Term:
        if (n->sym == pred) return true;
        for (auto& a : n->items)
            if (contains_pred(a, pred)) return true;
        return false;
    case Kind::Set:
        for (auto& a : n->items)
            if (contains_pred(a, pred)) return true;
        return false;
    case Kind::Complex:
        for (auto& [k, v] : n->feats)
            if (contains_pred(v, pred)) return true;
        return false;
    default:
        return false;
    }
}

} // namespace mccg
