#include "mccg/order.hpp"

#include <cassert>

namespace mccg {

std::string slot_name(InfoSlot s) {
    switch (s) {
    case InfoSlot::Topic: return "Topic";
    case InfoSlot::Neutral: return "Neutral";
    case InfoSlot::Focus: return "Focus";
    case InfoSlot::Background: return "Background";
    case InfoSlot::Complete: return "I";
    case InfoSlot::Any: return "Any";
    }
    return "?";
}

OrderCatPtr ord_basic(InfoSlot slot, NodeRef payload) {
    auto c = std::make_shared<OrderCat>();
    c->form = OrderCat::Form::Basic;
    c->slot = slot;
    c->payload = std::move(payload);
    return c;
}

OrderCatPtr ord_functor(std::vector<OrdArg> args, NodeRef result_payload) {
    auto c = std::make_shared<OrderCat>();
    c->form = OrderCat::Form::Functor;
    c->args = std::move(args);
    c->payload = std::move(result_payload);
    return c;
}

OrderCatPtr ord_transparent() {
    auto c = std::make_shared<OrderCat>();
    c->form = OrderCat::Form::Transparent;
    return c;
}

OrderCatPtr verb_order_functor(NodeRef topic, NodeRef neutral, NodeRef focus,
                               NodeRef background, NodeRef result_payload,
                               bool focus_optional) {
    return ord_functor(
        {OrdArg{InfoSlot::Background, Dir::Right, true, std::move(background)},
         OrdArg{InfoSlot::Topic, Dir::Left, true, std::move(topic)},
         OrdArg{InfoSlot::Neutral, Dir::Left, true, std::move(neutral)},
         OrdArg{InfoSlot::Focus, Dir::Left, focus_optional, std::move(focus)}},
        std::move(result_payload));
}

OrderCatPtr verb_focus_functor(NodeRef background, NodeRef result_payload) {
    return ord_functor(
        {OrdArg{InfoSlot::Background, Dir::Right, true, std::move(background)}},
        std::move(result_payload));
}

bool ord_is_functor(const OrderCatPtr& c) {
    return c && c->form == OrderCat::Form::Functor;
}

namespace {

// A functor whose arguments are exhausted rewrites to its basic result.
OrderCatPtr reduce(const OrderCatPtr& c) {
    if (c->form == OrderCat::Form::Functor && c->args.empty())
        return ord_basic(InfoSlot::Complete, c->payload);
    return c;
}

// Can `filler` stand in slot `want`? Wildcards and completed clauses fill
// anything; otherwise labels must agree.
bool fills(InfoSlot filler, InfoSlot want) {
    return filler == InfoSlot::Any || filler == InfoSlot::Complete ||
           filler == want;
}

// Two wildcard units have no shared discourse function to merge under, so
// their cluster can only stand postverbally as background; a determinate
// label absorbs a wildcard neighbour.
std::optional<InfoSlot> slot_merge(InfoSlot a, InfoSlot b) {
    if (a == InfoSlot::Complete || b == InfoSlot::Complete)
        return std::nullopt;
    if (a == InfoSlot::Any && b == InfoSlot::Any)
        return InfoSlot::Background;
    if (a == InfoSlot::Any) return b;
    if (b == InfoSlot::Any) return a;
    if (a == b) return a;
    return std::nullopt;
}

OrderCatPtr drop_innermost(const OrderCatPtr& f) {
    auto out = std::make_shared<OrderCat>(*f);
    out->args.pop_back();
    return reduce(out);
}

void combine_rec(const OrderCatPtr& left, const OrderCatPtr& right,
                 const Bindings& env, int skips, std::vector<OrdResult>& out) {
    // Particle transparency.
    if (right->form == OrderCat::Form::Transparent) {
        out.push_back(OrdResult{left, env, "prt", skips});
        return;
    }
    if (left->form == OrderCat::Form::Transparent) {
        out.push_back(OrdResult{right, env, "prt", skips});
        return;
    }

    // Backward application: functor on the right consumes a basic unit to
    // its left. The argument must not be an (unreduced) functor.
    if (right->form == OrderCat::Form::Functor && !right->args.empty() &&
        right->args.back().dir == Dir::Left &&
        left->form == OrderCat::Form::Basic &&
        fills(left->slot, right->args.back().slot)) {
        Bindings e2 = env;
        if (unify(right->args.back().payload, left->payload, e2))
            out.push_back(OrdResult{drop_innermost(right), std::move(e2), "<",
                                    skips});
    }
    // Forward application.
    if (left->form == OrderCat::Form::Functor && !left->args.empty() &&
        left->args.back().dir == Dir::Right &&
        right->form == OrderCat::Form::Basic &&
        fills(right->slot, left->args.back().slot)) {
        Bindings e2 = env;
        if (unify(left->args.back().payload, right->payload, e2))
            out.push_back(OrdResult{drop_innermost(left), std::move(e2), ">",
                                    skips});
    }
    // Identity: two units cluster under a shared discourse function.
    if (left->form == OrderCat::Form::Basic &&
        right->form == OrderCat::Form::Basic) {
        if (auto s = slot_merge(left->slot, right->slot)) {
            Bindings e2 = env;
            NodeRef merged = merge_lf(left->payload, right->payload, e2);
            merged->group = true;
            out.push_back(OrdResult{ord_basic(*s, merged), std::move(e2), "=",
                                    skips});
        }
    }

    // Skip the innermost optional slot of either functor and retry; this
    // is how outer slots (a rightward background behind unfilled preverbal
    // slots, say) become reachable, and how an embedded clause completes.
    if (right->form == OrderCat::Form::Functor && !right->args.empty() &&
        right->args.back().optional) {
        Bindings e2 = env;
        if (unify(right->args.back().payload, mk_atom("none"), e2))
            combine_rec(left, drop_innermost(right), e2, skips + 1, out);
    }
    if (left->form == OrderCat::Form::Functor && !left->args.empty() &&
        left->args.back().optional) {
        Bindings e2 = env;
        if (unify(left->args.back().payload, mk_atom("none"), e2))
            combine_rec(drop_innermost(left), right, e2, skips + 1, out);
    }
}

} // namespace

std::vector<OrdResult> ord_combine(const OrderCatPtr& left,
                                   const OrderCatPtr& right,
                                   const Bindings& env) {
    std::vector<OrdResult> out;
    combine_rec(left, right, env, 0, out);
    return out;
}

std::optional<OrderCatPtr> skip_optional(const OrderCatPtr& functor, Dir side,
                                         Bindings& env) {
    if (!ord_is_functor(functor) || functor->args.empty()) return std::nullopt;
    const OrdArg& inner = functor->args.back();
    if (inner.dir != side || !inner.optional) return std::nullopt;
    if (!unify(inner.payload, mk_atom("none"), env)) return std::nullopt;
    return drop_innermost(functor);
}

std::optional<int> finalize_order(OrderCatPtr& cat, Bindings& env) {
    int skips = 0;
    OrderCatPtr c = cat;
    while (c->form == OrderCat::Form::Functor) {
        if (c->args.empty()) {
            c = reduce(c);
            break;
        }
        const OrdArg& inner = c->args.back();
        if (!inner.optional) return std::nullopt;
        if (!unify(inner.payload, mk_atom("none"), env)) return std::nullopt;
        c = drop_innermost(c);
        ++skips;
    }
    if (c->form != OrderCat::Form::Basic) return std::nullopt;
    cat = c;
    return skips;
}

std::string ord_to_string(const OrderCatPtr& c, const Bindings* env) {
    if (!c) return "?";
    switch (c->form) {
    case OrderCat::Form::Transparent: return "=id=";
    case OrderCat::Form::Basic:
        if (c->slot == InfoSlot::Complete) return "I";
        return slot_name(c->slot) + ":" + to_string(c->payload, env);
    case OrderCat::Form::Functor: {
        std::string s = "I";
        for (auto& a : c->args) {
            s += a.dir == Dir::Right ? "/(" : "\\(";
            s += slot_name(a.slot);
            s += ")";
        }
        return s;
    }
    }
    return "?";
}

OrderCatPtr resolve_order(const OrderCatPtr& c, const Bindings& env,
                          Resolver& res) {
    auto out = std::make_shared<OrderCat>(*c);
    if (out->payload) out->payload = res(out->payload);
    for (auto& a : out->args)
        if (a.payload) a.payload = res(a.payload);
    return out;
}

OrderCatPtr clone_order_fresh(const OrderCatPtr& c, CloneCtx& ctx) {
    auto out = std::make_shared<OrderCat>(*c);
    if (out->payload) out->payload = clone_fresh(out->payload, ctx);
    for (auto& a : out->args)
        if (a.payload) a.payload = clone_fresh(a.payload, ctx);
    return out;
}

} // namespace mccg
