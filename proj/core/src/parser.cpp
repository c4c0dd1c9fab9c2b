#include "mccg/parser.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>

namespace mccg {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        unsigned char u = static_cast<unsigned char>(c);
        if (std::isspace(u) || c == ',' || c == '.' || c == '?' || c == '!') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += static_cast<char>(std::tolower(u));
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

namespace {

struct Edge {
    Sign sign;
    DerivPtr deriv;
    int skips = 0;
};

// Keeps the cheapest edge per structurally identical sign.
void add_edge(std::vector<Edge>& cell, Edge e,
              std::map<std::string, std::size_t>& index) {
    std::string key = sign_key(e.sign);
    auto it = index.find(key);
    if (it == index.end()) {
        index.emplace(std::move(key), cell.size());
        cell.push_back(std::move(e));
    } else if (e.skips < cell[it->second].skips) {
        cell[it->second] = std::move(e);
    }
}

} // namespace

std::vector<ParseResult> parse(const std::vector<std::string>& tokens,
                               const Lexicon& lex, const ParseOptions& opts) {
    const std::size_t n = tokens.size();
    std::vector<ParseResult> results;
    if (n == 0) return results;

    for (auto& t : tokens)
        if (!lex.known(t)) {
            // Might still be part of a multiword phrase; check those.
            bool in_phrase = false;
            for (auto& e : lex.entries())
                if (e.phon.find(t) != std::string::npos &&
                    e.phon.find(' ') != std::string::npos)
                    in_phrase = true;
            if (!in_phrase)
                throw std::runtime_error("unknown word: " + t);
        }

    // chart[i][l] = edges spanning tokens [i, i+l)
    std::vector<std::vector<std::vector<Edge>>> chart(
        n, std::vector<std::vector<Edge>>(n + 1));
    std::vector<std::vector<std::map<std::string, std::size_t>>> index(
        n, std::vector<std::map<std::string, std::size_t>>(n + 1));

    // Lexical seeding, multiword phrases included.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t l = 1; l <= lex.max_phrase_tokens() && i + l <= n;
             ++l) {
            std::string phrase;
            for (std::size_t k = 0; k < l; ++k) {
                if (k) phrase += " ";
                phrase += tokens[i + k];
            }
            for (auto& ls : lex.lookup(phrase)) {
                if (opts.no_raised && ls.sign.cat->result_cat &&
                    ls.entry->kind == "noun")
                    continue;
                Familiarity fam = opts.familiarity ? opts.familiarity(ls)
                                                   : Familiarity::Given;
                for (auto& s : assign_order(ls, fam)) {
                    auto d = std::make_shared<Derivation>();
                    d->rule = "lex";
                    d->cat_str = cat_to_string(s.cat);
                    d->ord_str = ord_to_string(s.order);
                    d->begin = i;
                    d->end = i + l;
                    add_edge(chart[i][l], Edge{s, d, 0}, index[i][l]);
                }
            }
        }
    }

    for (std::size_t l = 2; l <= n; ++l) {
        for (std::size_t i = 0; i + l <= n; ++i) {
            for (std::size_t split = 1; split < l; ++split) {
                for (auto& le : chart[i][split]) {
                    for (auto& re : chart[i + split][l - split]) {
                        for (auto& c :
                             combine_signs(le.sign, re.sign)) {
                            auto d = std::make_shared<Derivation>();
                            d->rule = c.syn_rule + " " + c.ord_rule;
                            if (c.skips)
                                d->rule +=
                                    " skip" + std::to_string(c.skips);
                            d->cat_str = cat_to_string(c.sign.cat);
                            d->ord_str = ord_to_string(c.sign.order);
                            d->begin = i;
                            d->end = i + l;
                            d->children = {le.deriv, re.deriv};
                            add_edge(chart[i][l],
                                     Edge{c.sign, d,
                                          le.skips + re.skips + c.skips},
                                     index[i][l]);
                        }
                    }
                }
            }
        }
    }

    for (auto& e : chart[0][n]) {
        Sign s = e.sign;
        if (!s.cat->basic()) continue;
        Bindings env;
        NodeRef cat = deref(s.cat->result_node, {"syn", "cat"});
        if (!cat || cat->kind != Kind::Atom || cat->sym != "s") continue;
        NodeRef form = deref(s.cat->result_node, {"syn", "form"});
        if (form && form->kind == Kind::Atom && form->sym == "gerund")
            continue;
        OrderCatPtr ord = s.order;
        if (!ord) continue;
        auto fin = finalize_order(ord, env);
        if (!fin || ord->slot != InfoSlot::Complete) continue;
        s.order = ord;

        NodeRef type = deref(s.cat->result_node, {"sem", "type"}, &env);
        if (type && type->kind == Kind::Var) {
            NodeRef lf = deref(s.cat->result_node, {"sem", "lf"}, &env);
            unify(type, mk_atom(contains_pred(lf, "wh") ? "quest" : "decl"),
                  env);
        }

        CatEnv cenv;
        cenv.nodes = env;
        results.push_back(
            ParseResult{resolve_sign(s, cenv), e.deriv, e.skips + *fin});
    }

    // Prefer readings that assign more discourse functions, and among
    // those, readings that open with a topic (the template's canonical
    // theme-first shape).
    auto topicless = [](const ParseResult& r) {
        NodeRef t = deref(r.sign.result(), {"info", "theme", "topic"});
        return !t || (t->kind == Kind::Atom && t->sym == "none") ||
               t->kind == Kind::Var;
    };
    std::stable_sort(results.begin(), results.end(),
                     [&](const ParseResult& a, const ParseResult& b) {
                         if (a.skips != b.skips) return a.skips < b.skips;
                         return topicless(a) < topicless(b);
                     });
    return results;
}

} // namespace mccg
