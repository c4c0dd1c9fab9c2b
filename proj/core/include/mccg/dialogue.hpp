#ifndef MCCG_DIALOGUE_HPP
#define MCCG_DIALOGUE_HPP

#include "mccg/generator.hpp"
#include "mccg/lexicon.hpp"
#include "mccg/parser.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace mccg {

// Ground facts, one term per line in the on-disk form, e.g.
//   see(e6,fatma,ayse)
//   time(e6,2)
class FactBase {
public:
    static FactBase load(const std::string& path);
    void save(const std::string& path) const;

    void add(const NodeRef& fact);
    const std::vector<NodeRef>& facts() const { return facts_; }

    // Conjunctive query: one binding environment per way of matching every
    // pattern term against some stored fact.
    std::vector<Bindings> query(const std::vector<NodeRef>& pattern) const;

    // Schedules a meeting at the given hour unless some participant
    // already has one then. Returns the fresh event id, or empty on
    // conflict.
    std::string add_appointment(const std::vector<std::string>& agents,
                                const std::string& hour);

private:
    std::vector<NodeRef> facts_;
    int next_event_ = 1;
};

// Tracks which discourse entities have been mentioned (or are shared
// knowledge via the fact base) and remembers the property group each
// entity last surfaced with.
class DiscourseModel {
public:
    void seed_from(const FactBase& db);
    void note_utterance(const NodeRef& lf);

    bool given(const std::string& atom) const { return given_.count(atom); }
    // Property group for an entity: as last mentioned, else as listed in
    // the lexicon, else a bare one(x) group.
    NodeRef props_of(const std::string& atom, const Lexicon& lex) const;

    // Familiarity of a lexical item: Given when every entity-like atom in
    // its payload is known to the hearer.
    Familiarity familiarity(const LexSign& ls) const;

private:
    std::set<std::string> given_;
    std::map<std::string, NodeRef> props_;
};

// A generation input plus the particle the surface answer is wrapped in.
struct AnswerPlan {
    NodeRef input;            // nullptr when no answer could be planned
    std::string particle;     // "", "evet" or "hayir, ama"
    std::string failure;      // diagnostic when input is null
};

// Builds the answer to a parsed question:
//   wh        - substitute the database binding, promote it to focus
//   yes/no +  - "evet", focus the completing fact, question focus to neutral
//   yes/no -  - "hayir, ama", requery with the focused entity freed, focus
//               the entity found instead
AnswerPlan plan_answer(const Sign& question, const FactBase& db,
                       const DiscourseModel& dm, const Lexicon& lex);

struct SessionOptions {
    bool trace = false;      // parse derivation and sign dump
    bool plan_trace = false; // answer plan dump
    bool all = false;        // every generated order, not just the first
};

// One dialogue turn: parse, plan, generate, update the discourse model.
class Session {
public:
    Session(Lexicon lex, FactBase db, SessionOptions opts = {});

    // Full printable response for one input line (no trailing newline).
    std::string step(const std::string& line);

    const FactBase& db() const { return db_; }
    const DiscourseModel& discourse() const { return dm_; }

private:
    Lexicon lex_;
    FactBase db_;
    DiscourseModel dm_;
    SessionOptions opts_;
};

} // namespace mccg

#endif
