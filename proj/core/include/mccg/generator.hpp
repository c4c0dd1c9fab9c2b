#ifndef MCCG_GENERATOR_HPP
#define MCCG_GENERATOR_HPP

#include "mccg/lexicon.hpp"
#include "mccg/sign.hpp"

#include <string>
#include <vector>

namespace mccg {

// Input to the generator: a feature graph shaped like a clause result,
//   syn  : cat, tense, agr, ...
//   sem  : type, lf (term list), event
//   info : rheme{focus, mainprop}, theme{topic, neutral}, background
// Slots may hold payload lists, the atom `none`, or stay unconstrained
// (absent or variable); unconstrained slots are enumerated.

struct GenResult {
    Sign sign;
    int skips = 0; // slots the search left unfilled
};

struct GenOptions {
    bool all = false;          // enumerate every word order
    std::size_t max_results = 64;
    std::size_t depth_cap = 64;
};

// Head candidates: lexical verbs whose key predicate occurs in the input
// LF and whose most embedded result unifies with the input.
std::vector<Sign> find_lex_cat(const NodeRef& input, const Lexicon& lex);

// Head-driven bottom-up generation. Every returned utterance parses back
// to a sign unifying with the input; with all=false only the first
// completed order is returned.
std::vector<GenResult> generate(const NodeRef& input, const Lexicon& lex,
                                const GenOptions& opts = {});

std::vector<std::string> phon_strings(const std::vector<GenResult>& rs);

} // namespace mccg

#endif
