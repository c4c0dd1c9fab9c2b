#ifndef MCCG_SIGN_HPP
#define MCCG_SIGN_HPP

#include "mccg/category.hpp"
#include "mccg/feature_graph.hpp"
#include "mccg/order.hpp"

#include <memory>
#include <string>
#include <vector>

namespace mccg {

// Phonology + syntactic/semantic category + ordering category, linked by
// shared coindices (T, N, F, B and the semantic variables).
struct Sign {
    std::vector<std::string> phon;
    SynCatPtr cat;
    OrderCatPtr order;

    // The most embedded result bundle {syn, sem, info}.
    NodeRef result() const;
    std::string phon_string() const;
};

Sign resolve_sign(const Sign& s, const CatEnv& env);
Sign clone_sign_fresh(const Sign& s);
Sign clone_sign_fresh(const Sign& s, CloneCtx& ctx);

// Structural identity up to variable renaming; used for chart and result
// deduplication.
std::string sign_key(const Sign& s);

struct Derivation;
using DerivPtr = std::shared_ptr<const Derivation>;

struct Derivation {
    std::string rule; // lex, <, >, <B, >B, =, prt (+skip count suffix)
    std::string cat_str;
    std::string ord_str;
    std::size_t begin = 0, end = 0;
    std::vector<DerivPtr> children;
};

std::string derivation_to_string(const DerivPtr& d, int indent = 0);

struct Combined {
    Sign sign;
    std::string syn_rule;
    std::string ord_rule;
    int skips = 0;
};

// Joint combination: a pairing survives only when both the {}-CCG rules and
// the ordering rules license it under one shared binding environment.
std::vector<Combined> combine_signs(const Sign& left, const Sign& right);

} // namespace mccg

#endif
