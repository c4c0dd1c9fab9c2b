#include "mccg/dialogue.hpp"

#include "mccg/dag_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace mccg {

namespace {

bool skip_atom(const std::string& s) {
    return s == "+" || s == "-" || s == "none";
}

void collect_atoms(const NodeRef& n, std::set<std::string>& out) {
    if (!n) return;
    switch (n->kind) {
    case Kind::Atom:
        if (!skip_atom(n->sym)) out.insert(n->sym);
        return;
    case Kind::Var:
        return;
    case Kind::Term:
    case Kind::Set:
        for (auto& e : n->items) collect_atoms(e, out);
        return;
    case Kind::Complex:
        for (auto& f : n->feats) collect_atoms(f.second, out);
        return;
    }
}

// Replaces every occurrence of one atom by the given node, reusing
// untouched subgraphs (so shared variables keep their identity).
NodeRef subst_atom(const NodeRef& n, const std::string& atom,
                   const NodeRef& repl) {
    if (!n) return n;
    switch (n->kind) {
    case Kind::Atom:
        return n->sym == atom ? repl : n;
    case Kind::Var:
    case Kind::Complex:
        return n;
    case Kind::Term:
    case Kind::Set: {
        bool changed = false;
        std::vector<NodeRef> items;
        for (auto& e : n->items) {
            NodeRef r = subst_atom(e, atom, repl);
            changed = changed || r != e;
            items.push_back(std::move(r));
        }
        if (!changed) return n;
        if (n->kind == Kind::Term) return mk_term(n->sym, std::move(items));
        return mk_set(std::move(items), n->group);
    }
    }
    return n;
}

bool contains_atom(const NodeRef& n, const std::string& atom) {
    std::set<std::string> s;
    collect_atoms(n, s);
    return s.count(atom) != 0;
}

int event_number(const std::string& sym) {
    if (sym.size() < 2 || sym[0] != 'e') return -1;
    for (std::size_t i = 1; i < sym.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(sym[i]))) return -1;
    return std::stoi(sym.substr(1));
}

} // namespace

FactBase FactBase::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open fact base: " + path);
    FactBase fb;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        auto e = line.find_last_not_of(" \t\r");
        std::unordered_map<std::string, NodeRef> vars;
        NodeRef t = parse_value(line.substr(b, e - b + 1), vars);
        if (!t || t->kind != Kind::Term)
            throw std::runtime_error("fact base line " +
                                     std::to_string(lineno) +
                                     ": expected a ground term");
        fb.add(t);
    }
    return fb;
}

void FactBase::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write fact base: " + path);
    for (auto& f : facts_) out << to_string(f) << "\n";
}

void FactBase::add(const NodeRef& fact) {
    std::set<std::string> atoms;
    collect_atoms(fact, atoms);
    for (auto& a : atoms) {
        int n = event_number(a);
        if (n >= next_event_) next_event_ = n + 1;
    }
    facts_.push_back(fact);
}

std::vector<Bindings> FactBase::query(
    const std::vector<NodeRef>& pattern) const {
    std::vector<Bindings> out;
    std::function<void(std::size_t, const Bindings&)> go =
        [&](std::size_t i, const Bindings& env) {
            if (i == pattern.size()) {
                out.push_back(env);
                return;
            }
            for (auto& f : facts_) {
                Bindings e2 = env;
                if (unify(pattern[i], f, e2)) go(i + 1, e2);
            }
        };
    go(0, Bindings{});
    return out;
}

std::string FactBase::add_appointment(const std::vector<std::string>& agents,
                                      const std::string& hour) {
    // Conflict: some participant already has a meeting at that hour.
    for (auto& t : facts_) {
        if (t->sym != "time" || t->items.size() != 2) continue;
        if (t->items[1]->kind != Kind::Atom || t->items[1]->sym != hour)
            continue;
        const std::string& ev = t->items[0]->sym;
        for (auto& m : facts_) {
            if (m->sym == "time" || !contains_atom(m, ev)) continue;
            for (auto& a : agents)
                if (contains_atom(m, a)) return "";
        }
    }
    std::string id = "e" + std::to_string(next_event_);
    std::vector<NodeRef> args{mk_atom(id)};
    for (auto& a : agents) args.push_back(mk_atom(a));
    add(mk_term("see", std::move(args)));
    add(mk_term("time", {mk_atom(id), mk_atom(hour)}));
    return id;
}

void DiscourseModel::seed_from(const FactBase& db) {
    for (auto& f : db.facts()) collect_atoms(f, given_);
}

void DiscourseModel::note_utterance(const NodeRef& lf) {
    if (!lf) return;
    collect_atoms(lf, given_);
    Bindings none;
    for (auto& el : flatten_set(lf, none)) {
        if (el->kind != Kind::Set || el->items.empty()) continue;
        // Entity of a property group: first atom argument of its first term.
        for (auto& a : el->items.front()->items)
            if (a->kind == Kind::Atom && !skip_atom(a->sym)) {
                props_[a->sym] = el;
                break;
            }
    }
}

NodeRef DiscourseModel::props_of(const std::string& atom,
                                 const Lexicon& lex) const {
    CloneCtx ctx;
    auto it = props_.find(atom);
    if (it != props_.end()) return clone_fresh(it->second, ctx);
    for (auto& e : lex.entries())
        if (e.kind == "noun" && e.payload && contains_atom(e.payload, atom))
            return clone_fresh(e.payload, ctx);
    return mk_set({mk_term("one", {mk_atom(atom)})}, true);
}

Familiarity DiscourseModel::familiarity(const LexSign& ls) const {
    if (!ls.payload) return Familiarity::Given;
    std::set<std::string> atoms;
    collect_atoms(ls.payload, atoms);
    for (auto& a : atoms)
        if (!given_.count(a)) return Familiarity::New;
    return Familiarity::Given;
}

namespace {

NodeRef slot_or_none(NodeRef n) {
    if (!n || n->kind == Kind::Var) return mk_atom("none");
    return n;
}

NodeRef build_input(const NodeRef& syn, std::vector<NodeRef> lf,
                    const NodeRef& event, const NodeRef& focus,
                    const NodeRef& mainprop, const NodeRef& topic,
                    const NodeRef& neutral, const NodeRef& background) {
    NodeRef sem = mk_complex({{"type", mk_atom("decl")},
                              {"lf", mk_set(std::move(lf))},
                              {"event", event}});
    NodeRef rheme =
        mk_complex({{"focus", focus}, {"mainprop", mainprop}});
    NodeRef theme = mk_complex(
        {{"topic", slot_or_none(topic)}, {"neutral", slot_or_none(neutral)}});
    NodeRef info = mk_complex({{"rheme", rheme},
                               {"theme", theme},
                               {"background", slot_or_none(background)}});
    return mk_complex({{"syn", syn}, {"sem", sem}, {"info", info}});
}

} // namespace

AnswerPlan plan_answer(const Sign& question, const FactBase& db,
                       const DiscourseModel& dm, const Lexicon& lex) {
    AnswerPlan plan;
    NodeRef res = question.result();
    NodeRef lf = deref(res, {"sem", "lf"});
    NodeRef event = deref(res, {"sem", "event"});
    NodeRef syn = deref(res, {"syn"});
    NodeRef qfocus = deref(res, {"info", "rheme", "focus"});
    NodeRef mainprop = deref(res, {"info", "rheme", "mainprop"});
    NodeRef topic = deref(res, {"info", "theme", "topic"});
    NodeRef neutral = deref(res, {"info", "theme", "neutral"});
    NodeRef background = deref(res, {"info", "background"});
    if (!lf || lf->kind != Kind::Set) {
        plan.failure = "no analysis";
        return plan;
    }

    Bindings empty;
    std::vector<NodeRef> elements = flatten_set(lf, empty);
    std::vector<NodeRef> pattern;
    NodeRef wh_var, wh_group;
    for (auto& el : elements) {
        if (el->kind == Kind::Term) {
            if (el->sym == "wh") {
                if (!el->items.empty()) wh_var = el->items[0];
            } else {
                pattern.push_back(el);
            }
        } else if (el->kind == Kind::Set && !wh_group) {
            for (auto& t : el->items)
                if (t->kind == Kind::Term && t->sym == "wh") {
                    wh_group = el;
                    if (!t->items.empty()) wh_var = t->items[0];
                }
        }
    }

    if (wh_var) {
        auto bs = db.query(pattern);
        if (bs.empty()) {
            plan.failure = "no answer";
            return plan;
        }
        Bindings& b = bs.front();
        NodeRef focus;
        if (wh_group) {
            NodeRef val = b.walk(wh_var);
            if (!val || val->kind != Kind::Atom) {
                plan.failure = "no answer";
                return plan;
            }
            focus = dm.props_of(val->sym, lex);
        } else {
            // The questioned item is an adjunct fact; focus the resolved
            // facts it participates in.
            std::vector<NodeRef> fs;
            for (auto& p : pattern) {
                bool has = false;
                for (auto& a : p->items)
                    if (a->kind == Kind::Var && wh_var->kind == Kind::Var &&
                        a->id == wh_var->id)
                        has = true;
                if (has) fs.push_back(resolve(p, b));
            }
            if (fs.empty()) {
                plan.failure = "no answer";
                return plan;
            }
            focus = mk_set(std::move(fs), true);
        }
        std::vector<NodeRef> alf;
        for (auto& el : elements) {
            if (el->kind == Kind::Term) {
                if (el->sym != "wh") alf.push_back(resolve(el, b));
            } else if (el == wh_group) {
                alf.push_back(focus);
            } else {
                alf.push_back(resolve(el, b));
            }
        }
        plan.input = build_input(syn, std::move(alf), resolve(event, b),
                                 focus, resolve(mainprop, b),
                                 resolve(topic, b), resolve(neutral, b),
                                 resolve(background, b));
        return plan;
    }

    auto bs = db.query(pattern);
    if (!bs.empty()) {
        // Validated yes/no question. Facts about the same event that the
        // question did not already state complete the answer and take
        // focus; the question's focus is displaced to neutral.
        Bindings& b = bs.front();
        NodeRef ev = resolve(event, b);
        std::set<std::string> stated;
        for (auto& p : pattern) stated.insert(canonical(resolve(p, b)));
        std::vector<NodeRef> completing;
        if (ev && ev->kind == Kind::Atom)
            for (auto& f : db.facts())
                if (contains_atom(f, ev->sym) && !stated.count(canonical(f)))
                    completing.push_back(f);
        std::vector<NodeRef> alf;
        for (auto& f : completing) alf.push_back(f);
        for (auto& el : elements) alf.push_back(resolve(el, b));
        NodeRef focus, newneutral;
        if (completing.empty()) {
            focus = resolve(qfocus, b);
            newneutral = resolve(neutral, b);
        } else {
            focus = mk_set(completing, true);
            newneutral = resolve(qfocus, b);
        }
        plan.input = build_input(syn, std::move(alf), ev, focus,
                                 resolve(mainprop, b), resolve(topic, b),
                                 newneutral, resolve(background, b));
        plan.particle = "evet";
        return plan;
    }

    // Failed yes/no question: free the focused entity, requery, and offer
    // what holds instead.
    std::set<std::string> fatoms;
    collect_atoms(qfocus, fatoms);
    if (fatoms.empty()) {
        plan.failure = "no answer";
        return plan;
    }
    const std::string ent = *fatoms.begin();
    NodeRef var = mk_var("X");
    std::vector<NodeRef> pattern2;
    for (auto& p : pattern) pattern2.push_back(subst_atom(p, ent, var));
    auto bs2 = db.query(pattern2);
    if (bs2.empty()) {
        plan.failure = "no answer";
        return plan;
    }
    Bindings& b = bs2.front();
    NodeRef val = b.walk(var);
    if (!val || val->kind != Kind::Atom) {
        plan.failure = "no answer";
        return plan;
    }
    NodeRef focus = dm.props_of(val->sym, lex);
    std::string qfkey = canonical(qfocus);
    std::vector<NodeRef> alf;
    for (auto& el : elements) {
        if (el->kind == Kind::Set && canonical(el) == qfkey) {
            alf.push_back(focus); // the corrected entity replaces the old
        } else {
            alf.push_back(resolve(subst_atom(el, ent, var), b));
        }
    }
    plan.input = build_input(syn, std::move(alf), resolve(event, b), focus,
                             resolve(subst_atom(mainprop, ent, var), b),
                             resolve(topic, b), resolve(neutral, b),
                             resolve(background, b));
    plan.particle = "hayir, ama";
    return plan;
}

Session::Session(Lexicon lex, FactBase db, SessionOptions opts)
    : lex_(std::move(lex)), db_(std::move(db)), opts_(opts) {
    dm_.seed_from(db_);
}

std::string Session::step(const std::string& line) {
    auto tokens = tokenize(line);
    if (tokens.empty()) return "";

    ParseOptions popts;
    popts.familiarity = [this](const LexSign& ls) {
        return dm_.familiarity(ls);
    };
    std::vector<ParseResult> results;
    try {
        results = parse(tokens, lex_, popts);
    } catch (const std::exception& e) {
        return std::string("error: ") + e.what();
    }
    if (results.empty()) return "error: no analysis";
    const ParseResult& best = results.front();
    NodeRef res = best.sign.result();
    NodeRef lf = deref(res, {"sem", "lf"});

    std::string out;
    if (opts_.trace) {
        out += derivation_to_string(best.deriv);
        out += "dag:\n" + dump_dag(res);
    }

    NodeRef type = deref(res, {"sem", "type"});
    if (!type || type->kind != Kind::Atom || type->sym != "quest") {
        // Assertion: record it, scheduling meetings via the calendar op so
        // a clash is refused.
        dm_.note_utterance(lf);
        NodeRef mp = deref(res, {"info", "rheme", "mainprop"});
        std::string hour;
        Bindings none;
        if (lf)
            for (auto& el : flatten_set(lf, none))
                if (el->kind == Kind::Term && el->sym == "time" &&
                    el->items.size() == 2 &&
                    el->items[1]->kind == Kind::Atom)
                    hour = el->items[1]->sym;
        std::vector<std::string> agents;
        if (mp && mp->kind == Kind::Term)
            for (std::size_t i = 1; i < mp->items.size(); ++i)
                if (mp->items[i]->kind == Kind::Atom)
                    agents.push_back(mp->items[i]->sym);
        if (hour.empty() || agents.empty())
            return out + "tamam.";
        std::string id = db_.add_appointment(agents, hour);
        return out + (id.empty() ? "hayir, olmaz." : "tamam.");
    }

    dm_.note_utterance(lf);
    AnswerPlan plan = plan_answer(best.sign, db_, dm_, lex_);
    if (!plan.input) return out + plan.failure;
    if (opts_.plan_trace) out += "plan:\n" + dump_dag(plan.input);

    GenOptions gopts;
    gopts.all = opts_.all;
    std::vector<GenResult> gens;
    try {
        gens = generate(plan.input, lex_, gopts);
    } catch (const std::exception& e) {
        return out + "error: " + e.what();
    }
    if (gens.empty()) return out + "no answer";

    std::string prefix;
    if (plan.particle == "evet") prefix = "evet, ";
    else if (!plan.particle.empty()) prefix = plan.particle + " ";
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (i) out += "\n";
        out += prefix + gens[i].sign.phon_string() + ".";
    }
    dm_.note_utterance(deref(gens.front().sign.result(), {"sem", "lf"}));
    return out;
}

} // namespace mccg
