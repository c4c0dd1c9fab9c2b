#ifndef MCCG_ORDER_HPP
#define MCCG_ORDER_HPP

#include "mccg/category.hpp" // Dir
#include "mccg/feature_graph.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace mccg {

// Pragmatic component labels. Any is the wildcard carried by discourse-old
// elements; Complete is the result of a fully reduced verbal functor (an
// embedded clause in that state may fill a slot of the matrix functor).
enum class InfoSlot { Topic, Neutral, Focus, Background, Complete, Any };

std::string slot_name(InfoSlot s);

struct OrdArg {
    InfoSlot slot;
    Dir dir = Dir::Left;
    bool optional = true;
    NodeRef payload; // coindexed into the verb's info structure
};

// Either a basic pragmatic unit, a functor over pragmatic units, or a
// transparent particle that leaves its neighbour's ordering untouched.
// Functor arguments are stored outermost-first; args.back() is consumed
// next.
struct OrderCat {
    enum class Form { Basic, Functor, Transparent };
    Form form = Form::Basic;
    InfoSlot slot = InfoSlot::Any; // Basic
    NodeRef payload;               // Basic payload / Functor result payload
    std::vector<OrdArg> args;      // Functor
};

using OrderCatPtr = std::shared_ptr<OrderCat>;

OrderCatPtr ord_basic(InfoSlot slot, NodeRef payload);
OrderCatPtr ord_functor(std::vector<OrdArg> args, NodeRef result_payload);
OrderCatPtr ord_transparent();

// The template functor every verb carries: consume Focus (obligatory),
// then Neutral, then Topic on the left, then Background on the right.
// Payload nodes are the T/N/F/B coindices of the verb's info structure.
// Embedded (gerund) clauses relax the focus requirement so the bare verb
// can compose with the matrix verb before seeing any argument.
OrderCatPtr verb_order_functor(NodeRef topic, NodeRef neutral, NodeRef focus,
                               NodeRef background, NodeRef result_payload,
                               bool focus_optional = false);

// The verb-focused variant: no preverbal slots, only optional Background.
OrderCatPtr verb_focus_functor(NodeRef background, NodeRef result_payload);

struct OrdResult {
    OrderCatPtr cat;
    Bindings env;
    std::string rule; // >, <, =, prt
    int skips = 0;    // skip-optional steps folded into this combination
};

// Rewriting rules (forward/backward application, identity, particle
// transparency), with any licit skip-optional prefix on the facing side of
// a functor folded in. Failure here is what blocks context-inappropriate
// word orders.
std::vector<OrdResult> ord_combine(const OrderCatPtr& left,
                                   const OrderCatPtr& right,
                                   const Bindings& env);

// Removes the innermost optional argument, binding its payload slot to the
// explicit atom `none`. Fails when the innermost argument is obligatory or
// sits on the other side.
std::optional<OrderCatPtr> skip_optional(const OrderCatPtr& functor, Dir side,
                                         Bindings& env);

// Skips every remaining optional argument; succeeds when the category
// reduces to a basic unit. Returns the number of skips taken.
std::optional<int> finalize_order(OrderCatPtr& cat, Bindings& env);

bool ord_is_functor(const OrderCatPtr& c);

std::string ord_to_string(const OrderCatPtr& c, const Bindings* env = nullptr);

OrderCatPtr resolve_order(const OrderCatPtr& c, const Bindings& env,
                          Resolver& res);
OrderCatPtr clone_order_fresh(const OrderCatPtr& c, CloneCtx& ctx);

} // namespace mccg

#endif
