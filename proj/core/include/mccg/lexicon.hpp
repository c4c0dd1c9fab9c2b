#ifndef MCCG_LEXICON_HPP
#define MCCG_LEXICON_HPP

#include "mccg/sign.hpp"

#include <string>
#include <vector>

namespace mccg {

// Lexicon text format: records separated by blank lines, `#` comments.
// Within a record, fields are separated by `;` or line breaks. The first
// field is `phon kind` where kind is verb, gverb, noun, adjunct or
// particle. Multiword phonology uses underscores (ne_zaman).
//
//   gorebilir verb ; syn voice:active tense:aorist agr.number:sing
//     agr.person:3 compound:abilitive ; arg nom X ; arg acc Y
//     lf [see(E,X,Y)] ; key see
//
//   fatmayi noun ; case acc ; entity fatma
//     props [one(fatma), def(fatma,+)] ; postv +
//
//   ikide adjunct ; lf [time(E,2)] ; postv +
//
//   mu particle ; attach s ; side left ; sem type:quest
//
// Verb conventions: E is the event variable; the first lf term is the
// main proposition; each argument's property list variable is appended to
// the lf automatically (arg nom X contributes Xlf). `carg <case> <Ev>`
// declares an embedded-clause argument whose lf variable is spliced the
// same way. `sem k:v` adds result semantic features (type:quest for the
// fused question form). gverb builds a gerund whose result is a
// case-marked clause (`rescase acc`).
//
// Nominals and adjuncts normally receive their ordering category from the
// discourse model (assign_order); `function focus` pins it instead, which
// is how interrogative items stay immediately preverbal.
//
// Uppercase-initial tokens are variables scoped to the record.

enum class Familiarity { New, Given };

struct LexEntry {
    std::string phon; // tokens joined by spaces
    std::string kind;
    std::string key;  // verb key predicate, empty otherwise
    bool postverbal = true;
    int line = 0;

    // Instantiable template signs (verbs carry one per ordering variant).
    std::vector<Sign> templates;
    // Ordering payload for familiarity-assigned items; coindexed into the
    // template signs.
    NodeRef payload;
    bool order_by_familiarity = false;
};

struct LexSign {
    Sign sign;
    NodeRef payload;
    bool needs_order = false;
    const LexEntry* entry = nullptr;
};

class Lexicon {
public:
    void add_entry_text(const std::string& record, int line);
    static Lexicon parse(const std::string& text);
    static Lexicon load(const std::string& path);

    // Fresh instantiations for one surface token (or multiword phrase
    // already joined by spaces): base entries plus the type-raised
    // variants of case-marked nominals.
    std::vector<LexSign> lookup(const std::string& phrase) const;

    bool known(const std::string& phrase) const;
    std::size_t max_phrase_tokens() const { return max_phrase_tokens_; }

    const std::vector<LexEntry>& entries() const { return entries_; }
    std::vector<const LexEntry*> verbs_by_key(const std::string& pred) const;

private:
    std::vector<LexEntry> entries_;
    std::size_t max_phrase_tokens_ = 1;
};

// Discourse-new items may serve as Focus or Neutral only; discourse-old
// items carry the slot wildcard. Signs that already have a fixed ordering
// category pass through unchanged.
std::vector<Sign> assign_order(const LexSign& ls, Familiarity fam);

} // namespace mccg

#endif
