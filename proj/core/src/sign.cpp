#include "mccg/sign.hpp"

#include <sstream>

namespace mccg {

NodeRef Sign::result() const {
    const SynCat* c = cat.get();
    while (c && c->result_cat) c = c->result_cat.get();
    return c ? c->result_node : nullptr;
}

std::string Sign::phon_string() const {
    std::string s;
    for (std::size_t i = 0; i < phon.size(); ++i) {
        if (i) s += " ";
        s += phon[i];
    }
    return s;
}

Sign resolve_sign(const Sign& s, const CatEnv& env) {
    Resolver res(env.nodes);
    Sign out;
    out.phon = s.phon;
    out.cat = resolve_cat(s.cat, env, res);
    if (s.order) out.order = resolve_order(s.order, env.nodes, res);
    return out;
}

Sign clone_sign_fresh(const Sign& s) {
    CloneCtx ctx;
    return clone_sign_fresh(s, ctx);
}

Sign clone_sign_fresh(const Sign& s, CloneCtx& ctx) {
    Sign out;
    out.phon = s.phon;
    out.cat = clone_cat_fresh(s.cat, ctx);
    if (s.order) out.order = clone_order_fresh(s.order, ctx);
    return out;
}

std::string sign_key(const Sign& s) {
    // One canonical pass over the linked pieces so coindexing contributes
    // to the key consistently.
    std::vector<std::pair<std::string, NodeRef>> feats;
    feats.emplace_back("cat", mk_atom(cat_to_string(s.cat)));
    feats.emplace_back("res", s.result());
    if (s.order) {
        feats.emplace_back("ordform",
                           mk_atom(std::to_string(static_cast<int>(s.order->form))));
        if (s.order->form == OrderCat::Form::Basic) {
            feats.emplace_back("slot", mk_atom(slot_name(s.order->slot)));
            if (s.order->payload) feats.emplace_back("pay", s.order->payload);
        } else if (s.order->form == OrderCat::Form::Functor) {
            std::string shape;
            for (auto& a : s.order->args) shape += slot_name(a.slot) + ",";
            feats.emplace_back("ord", mk_atom(shape));
        }
    }
    return s.phon_string() + "\x1f" + canonical(mk_complex(std::move(feats)));
}

std::string derivation_to_string(const DerivPtr& d, int indent) {
    if (!d) return "";
    std::ostringstream os;
    for (int i = 0; i < indent; ++i) os << "  ";
    os << d->rule << "  " << d->cat_str;
    if (!d->ord_str.empty()) os << "  |  " << d->ord_str;
    os << "\n";
    for (auto& c : d->children) os << derivation_to_string(c, indent + 1);
    return os.str();
}

std::vector<Combined> combine_signs(const Sign& left, const Sign& right) {
    std::vector<Combined> out;
    CatEnv base;

    struct SynOption {
        CatResult res;
        std::string rule;
    };
    std::vector<SynOption> syn;
    for (auto& r : apply(left.cat, right.cat, Dir::Right, base))
        syn.push_back({r, ">"});
    for (auto& r : apply(right.cat, left.cat, Dir::Left, base))
        syn.push_back({r, "<"});
    for (auto& r : compose(left.cat, right.cat, true, base))
        syn.push_back({r, ">B"});
    for (auto& r : compose(left.cat, right.cat, false, base))
        syn.push_back({r, "<B"});

    for (auto& so : syn) {
        for (auto& od : ord_combine(left.order, right.order, so.res.env.nodes)) {
            CatEnv env = so.res.env;
            env.nodes = od.env;
            Sign combined;
            combined.phon = left.phon;
            combined.phon.insert(combined.phon.end(), right.phon.begin(),
                                 right.phon.end());
            combined.cat = so.res.cat;
            combined.order = od.cat;
            Combined c;
            c.sign = resolve_sign(combined, env);
            c.syn_rule = so.rule;
            c.ord_rule = od.rule;
            c.skips = od.skips;
            out.push_back(std::move(c));
        }
    }
    return out;
}

} // namespace mccg
