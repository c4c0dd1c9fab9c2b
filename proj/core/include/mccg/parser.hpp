#ifndef MCCG_PARSER_HPP
#define MCCG_PARSER_HPP

#include "mccg/lexicon.hpp"
#include "mccg/sign.hpp"

#include <functional>
#include <string>
#include <vector>

namespace mccg {

struct ParseResult {
    Sign sign;       // resolved; category is a basic s, ordering is Complete
    DerivPtr deriv;
    int skips = 0;   // ordering slots left unfilled anywhere in the derivation
};

struct ParseOptions {
    // Discourse familiarity of each lexical item; defaults to Given (the
    // permissive wildcard) when absent.
    std::function<Familiarity(const LexSign&)> familiarity;
    // Drop type-raised lexical variants; used to check that raising adds
    // no semantics where plain application suffices.
    bool no_raised = false;
};

// Strips punctuation, lowercases ASCII, splits on whitespace.
std::vector<std::string> tokenize(const std::string& line);

// CKY chart over signs. A pairing enters the chart only when both the
// syntactic rules and the ordering rules license it. Results are ranked by
// ascending skip count (more of the utterance assigned a discourse
// function first).
// Throws std::runtime_error naming the first unknown token.
std::vector<ParseResult> parse(const std::vector<std::string>& tokens,
                               const Lexicon& lex,
                               const ParseOptions& opts = {});

} // namespace mccg

#endif
