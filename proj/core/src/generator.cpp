#include "mccg/generator.hpp"

#include <set>
#include <stdexcept>

namespace mccg {

namespace {

std::string head_key(const NodeRef& input) {
    NodeRef mp = deref(input, {"info", "rheme", "mainprop"});
    if (mp && mp->kind == Kind::Term) return mp->sym;
    NodeRef lf = deref(input, {"sem", "lf"});
    if (lf && lf->kind == Kind::Set)
        for (auto& t : lf->items)
            if (t->kind == Kind::Term) return t->sym;
    return "";
}

struct Search {
    const NodeRef& input;
    const Lexicon& lex;
    const GenOptions& opts;
    std::vector<GenResult> results;
    std::set<std::string> seen;

    // Reusable surface material: nominals and adjuncts with an ordering
    // payload, raised variants included, all carrying the slot wildcard.
    // Interrogative items never surface in generated output.
    std::vector<LexSign> material() const {
        std::vector<LexSign> out;
        for (auto& e : lex.entries()) {
            if (!e.payload) continue;
            for (auto& ls : lex.lookup(e.phon)) {
                if (contains_pred(ls.sign.result(), "wh")) continue;
                if (ls.payload && !ls.sign.order) {
                    LexSign c = ls;
                    c.sign.order = ord_basic(InfoSlot::Any, c.payload);
                    out.push_back(std::move(c));
                }
            }
        }
        return out;
    }

    // Constituents whose payload exactly covers `want`: single words
    // first, then identity/composition pairs for merged payloads.
    std::vector<Combined> realize(const NodeRef& want) {
        std::vector<Combined> out;
        auto singles = material();
        for (auto& c : singles) {
            Bindings env;
            if (!lf_covers(c.payload, want, env)) continue;
            CatEnv ce;
            ce.nodes = env;
            Combined r;
            r.sign = resolve_sign(c.sign, ce);
            out.push_back(std::move(r));
        }
        if (!out.empty()) return out;
        for (auto& a : singles) {
            for (auto& b : singles) {
                if (a.entry == b.entry) continue;
                for (auto& comb : combine_signs(a.sign, b.sign)) {
                    if (!comb.sign.order ||
                        comb.sign.order->form != OrderCat::Form::Basic)
                        continue;
                    Bindings env;
                    if (!lf_covers(comb.sign.order->payload, want, env))
                        continue;
                    CatEnv ce;
                    ce.nodes = env;
                    comb.sign = resolve_sign(comb.sign, ce);
                    out.push_back(comb);
                }
            }
        }
        return out;
    }

    // Groups (and single adjunct facts) of the input LF, the pool an
    // unconstrained slot may draw from.
    std::vector<NodeRef> slot_pool() const {
        std::vector<NodeRef> out;
        NodeRef lf = deref(input, {"sem", "lf"});
        if (!lf) return out;
        Bindings empty;
        for (auto& el : flatten_set(lf, empty)) {
            if (el->kind == Kind::Set)
                out.push_back(el);
            else if (el->kind == Kind::Term)
                out.push_back(mk_set({el}));
        }
        return out;
    }

    bool done() const {
        return (!opts.all && !results.empty()) ||
               results.size() >= opts.max_results;
    }

    void try_complete(const Sign& cur, int skips) {
        if (!cur.cat->basic()) return;
        Bindings env;
        if (!unify(input, cur.cat->result_node, env)) return;
        NodeRef slf = deref(cur.cat->result_node, {"sem", "lf"}, &env);
        NodeRef ilf = deref(input, {"sem", "lf"}, &env);
        if (!slf || !ilf) return;
        if (!lf_covers(slf, ilf, env)) return;
        CatEnv ce;
        ce.nodes = env;
        Sign fin = resolve_sign(cur, ce);
        if (!seen.insert(fin.phon_string()).second) return;
        results.push_back(GenResult{std::move(fin), skips});
    }

    // Claim keys ignore the group flag: a slot holds the same piece of
    // the input LF whether it arrived as a plain list or a group.
    static std::string claim_key(const NodeRef& g) {
        if (g && g->kind == Kind::Set && g->group)
            return canonical(mk_set(g->items));
        return canonical(g);
    }

    // Pieces of the input LF already spoken for by some slot, so an
    // unconstrained slot cannot claim them again.
    static std::set<std::string> initial_claims(const Sign& s) {
        std::set<std::string> out;
        if (s.order && s.order->form == OrderCat::Form::Functor)
            for (auto& a : s.order->args) {
                Bindings none;
                NodeRef p = none.walk(a.payload);
                if (p && p->kind == Kind::Set) out.insert(claim_key(p));
            }
        return out;
    }

    void bup(const Sign& cur, int skips, std::size_t depth,
             const std::set<std::string>& claimed) {
        if (done()) return;
        if (depth > opts.depth_cap)
            throw std::runtime_error("generation depth cap exceeded");
        const OrderCatPtr& ord = cur.order;
        if (!ord) return;
        if (ord->form == OrderCat::Form::Basic) {
            if (ord->slot == InfoSlot::Complete) try_complete(cur, skips);
            return;
        }
        if (ord->form != OrderCat::Form::Functor) return;
        if (ord->args.empty()) {
            Sign next = cur;
            next.order = ord_basic(InfoSlot::Complete, ord->payload);
            bup(next, skips, depth + 1, claimed);
            return;
        }

        const OrdArg& inner = ord->args.back();
        Bindings probe;
        NodeRef v = probe.walk(inner.payload);

        // Unfilled slot: skip it...
        if (!v || v->kind == Kind::Atom || v->kind == Kind::Var) {
            Bindings env;
            if (auto dropped = skip_optional(ord, inner.dir, env)) {
                Sign next = cur;
                next.order = *dropped;
                CatEnv ce;
                ce.nodes = env;
                next = resolve_sign(next, ce);
                bup(next, skips + (v && v->kind == Kind::Var ? 1 : 0),
                    depth + 1, claimed);
            }
        }
        // ...or fill it: with its own payload, or for an unconstrained
        // slot with any unclaimed piece of the input LF.
        std::vector<NodeRef> fillings;
        bool from_pool = false;
        if (v && v->kind == Kind::Set) fillings.push_back(v);
        if (v && v->kind == Kind::Var) {
            from_pool = true;
            for (auto& g : slot_pool())
                if (!claimed.count(claim_key(g))) fillings.push_back(g);
        }
        for (auto& g : fillings) {
            if (done()) return;
            std::set<std::string> claimed2 = claimed;
            if (from_pool) claimed2.insert(claim_key(g));
            Bindings benv;
            if (!unify(inner.payload, g, benv)) continue;
            CatEnv bce;
            bce.nodes = benv;
            Sign bound = resolve_sign(cur, bce);
            for (auto& cand : realize(g)) {
                if (done()) return;
                auto joined = inner.dir == Dir::Left
                                  ? combine_signs(cand.sign, bound)
                                  : combine_signs(bound, cand.sign);
                for (auto& j : joined) {
                    if (done()) return;
                    bup(j.sign, skips + j.skips, depth + 1, claimed2);
                }
            }
        }
    }
};

} // namespace

std::vector<Sign> find_lex_cat(const NodeRef& input, const Lexicon& lex) {
    std::vector<Sign> out;
    std::string key = head_key(input);
    if (key.empty())
        throw std::runtime_error("generation input carries no main predicate");
    for (auto* e : lex.verbs_by_key(key)) {
        for (auto& tmpl : e->templates) {
            Sign head = clone_sign_fresh(tmpl);
            Bindings env;
            if (!unify(input, head.result(), env)) continue;
            out.push_back(std::move(head));
        }
    }
    return out;
}

std::vector<GenResult> generate(const NodeRef& input, const Lexicon& lex,
                                const GenOptions& opts) {
    Search search{input, lex, opts};
    auto heads = find_lex_cat(input, lex);
    if (heads.empty())
        throw std::runtime_error("no lexical head matches predicate '" +
                                 head_key(input) + "'");
    for (auto& head : heads) {
        Bindings env;
        if (!unify(input, head.result(), env)) continue;
        CatEnv ce;
        ce.nodes = env;
        Sign start = resolve_sign(head, ce);
        search.bup(start, 0, 0, Search::initial_claims(start));
        if (search.done()) break;
    }
    return search.results;
}

std::vector<std::string> phon_strings(const std::vector<GenResult>& rs) {
    std::vector<std::string> out;
    for (auto& r : rs) out.push_back(r.sign.phon_string());
    return out;
}

} // namespace mccg
