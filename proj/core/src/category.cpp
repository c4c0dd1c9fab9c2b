#include "mccg/category.hpp"

#include <cassert>
#include <sstream>

namespace mccg {

bool dir_compatible(Dir d, Dir side) {
    return d == Dir::Either || d == side;
}

std::optional<Dir> dir_unify(Dir a, Dir b) {
    if (a == Dir::Either) return b;
    if (b == Dir::Either) return a;
    if (a == b) return a;
    return std::nullopt;
}

SynCatPtr basic_cat(NodeRef n) {
    auto c = std::make_shared<SynCat>();
    c->result_node = std::move(n);
    return c;
}

SynCatPtr functor_cat(NodeRef result, std::vector<SynArg> args, int rest) {
    auto c = std::make_shared<SynCat>();
    c->result_node = std::move(result);
    c->args = std::move(args);
    c->rest = rest;
    return c;
}

int fresh_rest_id() { return fresh_var_id(); } // shared counter, no collisions

SynCat normalize_cat(const SynCat& c, const CatEnv& env) {
    SynCat out = c;
    int guard = 0;
    int rest = out.rest;
    out.rest = -1;
    while (rest >= 0) {
        assert(++guard < 256 && "rest-variable chain cycle");
        auto it = env.sets.find(rest);
        if (it == env.sets.end()) {
            out.rest = rest;
            break;
        }
        for (auto& a : it->second.items) out.args.push_back(a);
        rest = it->second.tail;
    }
    return out;
}

std::size_t arg_count(const SynCatPtr& c, const CatEnv& env) {
    return normalize_cat(*c, env).args.size();
}

namespace {

SynCatPtr result_part(const SynCat& c) {
    return c.result_cat ? c.result_cat : basic_cat(c.result_node);
}

bool match_args(const std::vector<SynArg>& as, const std::vector<SynArg>& bs,
                std::size_t i, std::vector<bool>& used, bool b_open,
                CatEnv& env, std::vector<SynArg>& matched,
                std::vector<SynArg>& a_unmatched) {
    if (i == as.size()) return true;
    for (std::size_t j = 0; j < bs.size(); ++j) {
        if (used[j]) continue;
        auto d = dir_unify(as[i].dir, bs[j].dir);
        if (!d) continue;
        CatEnv save = env;
        auto save_m = matched;
        if (auto u = unify_cat(as[i].cat, bs[j].cat, env)) {
            used[j] = true;
            matched.push_back(SynArg{*u, *d});
            if (match_args(as, bs, i + 1, used, b_open, env, matched,
                           a_unmatched))
                return true;
            used[j] = false;
        }
        env = std::move(save);
        matched = std::move(save_m);
    }
    if (b_open) {
        a_unmatched.push_back(as[i]);
        if (match_args(as, bs, i + 1, used, b_open, env, matched, a_unmatched))
            return true;
        a_unmatched.pop_back();
    }
    return false;
}

} // namespace

std::optional<SynCatPtr> unify_cat(const SynCatPtr& a, const SynCatPtr& b,
                                   CatEnv& env) {
    SynCat na = normalize_cat(*cleanup(a, env), env);
    SynCat nb = normalize_cat(*cleanup(b, env), env);

    if (na.basic() && nb.basic()) {
        auto r = unify(na.result_node, nb.result_node, env.nodes);
        if (!r) return std::nullopt;
        return basic_cat(*r);
    }
    // A basic category matches an open functor with no fixed arguments
    // left: the rest variable takes the empty multiset.
    if (na.basic() || nb.basic()) {
        SynCat& f = na.basic() ? nb : na;
        const SynCat& bas = na.basic() ? na : nb;
        if (!f.args.empty() || f.rest < 0) return std::nullopt;
        CatEnv save = env;
        env.sets[f.rest] = ArgSetBinding{{}, -1};
        auto r = unify_cat(result_part(f), basic_cat(bas.result_node), env);
        if (!r) {
            env = std::move(save);
            return std::nullopt;
        }
        return r;
    }

    CatEnv save = env;
    auto res = unify_cat(result_part(na), result_part(nb), env);
    if (!res) {
        env = std::move(save);
        return std::nullopt;
    }

    std::vector<bool> used(nb.args.size(), false);
    std::vector<SynArg> matched, a_unmatched;
    if (!match_args(na.args, nb.args, 0, used, nb.rest >= 0, env, matched,
                    a_unmatched)) {
        env = std::move(save);
        return std::nullopt;
    }
    std::vector<SynArg> b_unmatched;
    for (std::size_t j = 0; j < nb.args.size(); ++j)
        if (!used[j]) b_unmatched.push_back(nb.args[j]);
    if (!b_unmatched.empty() && na.rest < 0) {
        env = std::move(save);
        return std::nullopt;
    }

    int tail = -1;
    if (na.rest >= 0 && nb.rest >= 0) tail = fresh_rest_id();
    if (na.rest >= 0) env.sets[na.rest] = ArgSetBinding{b_unmatched, tail};
    if (nb.rest >= 0) env.sets[nb.rest] = ArgSetBinding{a_unmatched, tail};

    auto out = std::make_shared<SynCat>();
    if ((*res)->basic())
        out->result_node = (*res)->result_node;
    else
        out->result_cat = *res;
    out->args = std::move(matched);
    for (auto& x : a_unmatched) out->args.push_back(x);
    for (auto& x : b_unmatched) out->args.push_back(x);
    out->rest = tail;
    return out;
}

SynCatPtr cleanup(const SynCatPtr& c, const CatEnv& env) {
    SynCat n = normalize_cat(*c, env);
    int guard = 0;
    while (n.args.empty() && n.rest < 0 && n.result_cat) {
        assert(++guard < 256);
        n = normalize_cat(*n.result_cat, env);
    }
    return std::make_shared<SynCat>(std::move(n));
}

std::vector<CatResult> apply(const SynCatPtr& functor, const SynCatPtr& arg,
                             Dir side, const CatEnv& env) {
    std::vector<CatResult> out;
    SynCat nf = normalize_cat(*cleanup(functor, env), env);
    if (nf.basic()) return out;
    SynCatPtr argc = cleanup(arg, env);

    for (std::size_t i = 0; i < nf.args.size(); ++i) {
        if (!dir_compatible(nf.args[i].dir, side)) continue;
        CatEnv e2 = env;
        // Not every nominal may stand behind the verb; entries carry a
        // postv feature checked on rightward application.
        if (side == Dir::Right && argc->basic()) {
            NodeRef pv = deref(argc->result_node, {"syn", "postv"}, &e2.nodes);
            if (pv && !unify(pv, mk_atom("+"), e2.nodes)) continue;
        }
        auto u = unify_cat(nf.args[i].cat, argc, e2);
        if (!u) continue;
        auto res = std::make_shared<SynCat>();
        res->result_node = nf.result_node;
        res->result_cat = nf.result_cat;
        res->rest = nf.rest;
        for (std::size_t j = 0; j < nf.args.size(); ++j)
            if (j != i) res->args.push_back(nf.args[j]);
        out.push_back(
            CatResult{cleanup(res, e2), std::move(e2), static_cast<int>(i)});
    }
    return out;
}

std::vector<CatResult> compose(const SynCatPtr& left, const SynCatPtr& right,
                               bool forward, const CatEnv& env) {
    std::vector<CatResult> out;
    SynCat head = normalize_cat(*cleanup(forward ? left : right, env), env);
    SynCat other = normalize_cat(*cleanup(forward ? right : left, env), env);
    if (head.basic() || other.basic()) return out;
    Dir side = forward ? Dir::Right : Dir::Left;

    for (std::size_t i = 0; i < head.args.size(); ++i) {
        if (!dir_compatible(head.args[i].dir, side)) continue;
        if (head.rest >= 0 && other.rest >= 0) continue; // two open sets
        CatEnv e2 = env;
        // A raised category's variable result stands for the verb it is
        // still waiting for; only a functor-shaped argument may compose
        // with it. A basic argument consuming the bare variable would
        // absorb the raised item without ever binding its role.
        if (head.args[i].cat->basic()) {
            SynCatPtr rp = result_part(other);
            while (rp->result_cat) rp = rp->result_cat;
            NodeRef rn = e2.nodes.walk(rp->result_node);
            if (rn && rn->kind == Kind::Var) continue;
        }
        auto u = unify_cat(head.args[i].cat, result_part(other), e2);
        if (!u) continue;
        auto res = std::make_shared<SynCat>();
        res->result_node = head.result_node;
        res->result_cat = head.result_cat;
        res->rest = head.rest >= 0 ? head.rest : other.rest;
        for (std::size_t j = 0; j < head.args.size(); ++j)
            if (j != i) res->args.push_back(head.args[j]);
        for (auto& a : other.args) res->args.push_back(a);
        out.push_back(
            CatResult{cleanup(res, e2), std::move(e2), static_cast<int>(i)});
    }
    return out;
}

SynCatPtr type_raise(const NodeRef& noun, Dir dir) {
    int rest = fresh_rest_id();
    NodeRef verb_result = mk_var("S");
    Dir inner_dir = dir == Dir::Right ? Dir::Left : Dir::Right;
    auto verb_sig = functor_cat(
        verb_result, {SynArg{basic_cat(noun), inner_dir}}, rest);
    auto raised = std::make_shared<SynCat>();
    raised->result_cat = functor_cat(verb_result, {}, rest);
    raised->args = {SynArg{verb_sig, dir}};
    return raised;
}

namespace {

std::string basic_label(const NodeRef& n0, const Bindings* env) {
    Bindings empty;
    const Bindings& e = env ? *env : empty;
    NodeRef n = e.walk(n0);
    if (!n) return "?";
    if (n->kind == Kind::Var) return "X";
    if (n->kind == Kind::Atom) return n->sym;
    NodeRef cat = deref(n, {"syn", "cat"}, &e);
    NodeRef cs = deref(n, {"syn", "case"}, &e);
    std::string kase;
    if (cs && cs->kind == Kind::Atom) kase = cs->sym.substr(0, 1);
    if (cat && cat->kind == Kind::Atom) {
        if (cat->sym == "s") {
            NodeRef form = deref(n, {"syn", "form"}, &e);
            if (form && form->kind == Kind::Atom && form->sym == "gerund")
                return "Sg" + kase;
            return "S";
        }
        if (cat->sym == "np") return "N" + kase;
        if (cat->sym == "part") return "Prt";
        return cat->sym;
    }
    return "X";
}

} // namespace

std::string cat_to_string(const SynCatPtr& c, const CatEnv* env) {
    CatEnv empty;
    const CatEnv& e = env ? *env : empty;
    SynCat n = normalize_cat(*c, e);
    std::string res = n.result_cat
                          ? "(" + cat_to_string(n.result_cat, env) + ")"
                          : basic_label(n.result_node, &e.nodes);
    if (n.basic()) return res;
    std::ostringstream os;
    os << res << "|{";
    for (std::size_t i = 0; i < n.args.size(); ++i) {
        if (i) os << ", ";
        if (n.args[i].dir == Dir::Left) os << "<";
        if (n.args[i].dir == Dir::Right) os << ">";
        const auto& ac = n.args[i].cat;
        if (ac->basic())
            os << basic_label(ac->result_node, &e.nodes);
        else
            os << "(" << cat_to_string(ac, env) << ")";
    }
    if (n.rest >= 0) {
        if (!n.args.empty()) os << ", ";
        os << "...";
    }
    os << "}";
    return os.str();
}

SynCatPtr resolve_cat(const SynCatPtr& c, const CatEnv& env, Resolver& res) {
    SynCat n = normalize_cat(*c, env);
    auto out = std::make_shared<SynCat>();
    if (n.result_cat)
        out->result_cat = resolve_cat(n.result_cat, env, res);
    else
        out->result_node = res(n.result_node);
    for (auto& a : n.args)
        out->args.push_back(SynArg{resolve_cat(a.cat, env, res), a.dir});
    out->rest = n.rest;
    return out;
}

SynCatPtr clone_cat_fresh(const SynCatPtr& c, CloneCtx& ctx) {
    auto out = std::make_shared<SynCat>();
    if (c->result_cat)
        out->result_cat = clone_cat_fresh(c->result_cat, ctx);
    else
        out->result_node = clone_fresh(c->result_node, ctx);
    for (auto& a : c->args)
        out->args.push_back(SynArg{clone_cat_fresh(a.cat, ctx), a.dir});
    if (c->rest >= 0) {
        auto it = ctx.renaming.find(c->rest);
        if (it == ctx.renaming.end()) {
            out->rest = fresh_rest_id();
            ctx.renaming.emplace(c->rest, out->rest);
        } else {
            out->rest = it->second;
        }
    } else {
        out->rest = -1;
    }
    return out;
}

} // namespace mccg
