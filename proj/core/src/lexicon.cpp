#include "mccg/lexicon.hpp"

#include "mccg/dag_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace mccg {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> words(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

[[noreturn]] void entry_error(const std::string& phon, int line,
                              const std::string& msg) {
    throw std::runtime_error("lexicon line " + std::to_string(line) + " (" +
                             phon + "): " + msg);
}

// Sets a value at a dotted path, creating complex nodes along the way.
void put_path(const NodeRef& root, const std::string& path, NodeRef value) {
    NodeRef cur = root;
    std::size_t pos = 0;
    for (;;) {
        std::size_t dot = path.find('.', pos);
        std::string label = path.substr(pos, dot - pos);
        if (dot == std::string::npos) {
            put_feat(cur, label, std::move(value));
            return;
        }
        NodeRef next = get_feat(cur, label);
        if (!next) {
            next = mk_complex();
            put_feat(cur, label, next);
        }
        cur = next;
        pos = dot + 1;
    }
}

NodeRef named_var(const std::string& name,
                  std::unordered_map<std::string, NodeRef>& vars) {
    auto it = vars.find(name);
    if (it != vars.end()) return it->second;
    auto v = mk_var(name);
    vars.emplace(name, v);
    return v;
}

struct RawEntry {
    std::string phon;
    std::string kind;
    int line = 0;

    std::vector<std::pair<std::string, std::string>> syn, sem;
    struct Arg {
        std::string kase;
        std::string var;
        bool clause = false;
    };
    std::vector<Arg> args;
    std::string lf, key, entity, props, kase, rescase, function;
    std::string attach = "s";
    std::string side;
    bool postverbal = true;
};

std::vector<std::pair<std::string, std::string>> kv_pairs(
    const std::string& phon, int line, const std::string& rest) {
    std::vector<std::pair<std::string, std::string>> out;
    for (auto& w : words(rest)) {
        std::size_t c = w.find(':');
        if (c == std::string::npos || c == 0 || c + 1 == w.size())
            entry_error(phon, line, "expected key:value, got '" + w + "'");
        out.emplace_back(w.substr(0, c), w.substr(c + 1));
    }
    return out;
}

RawEntry parse_record(const std::vector<std::string>& fields, int line) {
    RawEntry r;
    r.line = line;
    auto head = words(fields.front());
    if (head.size() != 2)
        throw std::runtime_error("lexicon line " + std::to_string(line) +
                                 ": record must start with 'phon kind'");
    r.phon = head[0];
    r.kind = head[1];

    for (std::size_t i = 1; i < fields.size(); ++i) {
        const std::string& f = fields[i];
        std::size_t sp = f.find_first_of(" \t");
        std::string kw = f.substr(0, sp);
        std::string rest = sp == std::string::npos ? "" : trim(f.substr(sp));
        if (kw == "syn") {
            auto p = kv_pairs(r.phon, line, rest);
            r.syn.insert(r.syn.end(), p.begin(), p.end());
        } else if (kw == "sem") {
            auto p = kv_pairs(r.phon, line, rest);
            r.sem.insert(r.sem.end(), p.begin(), p.end());
        } else if (kw == "arg" || kw == "carg") {
            auto w = words(rest);
            if (w.size() != 2)
                entry_error(r.phon, line, kw + " needs '<case> <Var>'");
            r.args.push_back(RawEntry::Arg{w[0], w[1], kw == "carg"});
        } else if (kw == "lf") {
            r.lf = rest;
        } else if (kw == "key") {
            r.key = rest;
        } else if (kw == "entity") {
            r.entity = rest;
        } else if (kw == "props") {
            r.props = rest;
        } else if (kw == "case") {
            r.kase = rest;
        } else if (kw == "rescase") {
            r.rescase = rest;
        } else if (kw == "function") {
            r.function = rest;
        } else if (kw == "attach") {
            r.attach = rest;
        } else if (kw == "side") {
            r.side = rest;
        } else if (kw == "postv") {
            if (rest != "+" && rest != "-")
                entry_error(r.phon, line, "postv must be + or -");
            r.postverbal = rest == "+";
        } else if (kw == "disp") {
            // optional display form with diacritics; not used for matching
        } else {
            entry_error(r.phon, line, "unknown field '" + kw + "'");
        }
    }
    return r;
}

std::vector<std::string> phon_tokens(const std::string& phon) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : phon) {
        if (c == '_') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

LexEntry build_verb(const RawEntry& r) {
    LexEntry e;
    std::unordered_map<std::string, NodeRef> vars;

    if (r.lf.empty()) entry_error(r.phon, r.line, "verb needs an lf field");
    NodeRef lfset = parse_value(r.lf, vars);
    if (lfset->kind != Kind::Set || lfset->items.empty())
        entry_error(r.phon, r.line, "lf must be a non-empty list");
    NodeRef mainprop = lfset->items.front();
    if (r.key.empty()) entry_error(r.phon, r.line, "verb needs a key field");
    bool key_found = false;
    for (auto& t : lfset->items)
        if (t->kind == Kind::Term && t->sym == r.key) key_found = true;
    if (!key_found)
        entry_error(r.phon, r.line,
                    "key predicate '" + r.key + "' does not occur in the lf");

    std::vector<SynArg> synargs;
    for (auto& a : r.args) {
        NodeRef node = mk_complex();
        NodeRef syn = mk_complex();
        NodeRef sem = mk_complex();
        NodeRef contentvar = named_var(a.var + "lf", vars);
        if (a.clause) {
            put_feat(syn, "cat", mk_atom("s"));
            put_feat(syn, "form", mk_atom("gerund"));
            put_feat(syn, "case", mk_atom(a.kase));
            put_feat(sem, "event", named_var(a.var, vars));
            put_feat(sem, "lf", contentvar);
        } else {
            put_feat(syn, "cat", mk_atom("np"));
            put_feat(syn, "case", mk_atom(a.kase));
            put_feat(sem, "entity", named_var(a.var, vars));
            put_feat(sem, "props", contentvar);
        }
        put_feat(node, "syn", syn);
        put_feat(node, "sem", sem);
        lfset->items.push_back(contentvar);
        synargs.push_back(SynArg{basic_cat(node), Dir::Either});
    }

    NodeRef syn = mk_complex();
    put_feat(syn, "cat", mk_atom("s"));
    if (r.kind == "gverb") {
        put_feat(syn, "form", mk_atom("gerund"));
        put_feat(syn, "case",
                 mk_atom(r.rescase.empty() ? "acc" : r.rescase));
    }
    for (auto& [k, v] : r.syn) put_path(syn, k, parse_value(v, vars));

    NodeRef sem = mk_complex();
    NodeRef type = mk_var("Ty");
    for (auto& [k, v] : r.sem)
        if (k == "type") type = parse_value(v, vars);
    put_feat(sem, "type", type);
    put_feat(sem, "lf", lfset);
    put_feat(sem, "event", named_var("E", vars));
    for (auto& [k, v] : r.sem)
        if (k != "type") put_path(sem, k, parse_value(v, vars));

    auto make_sign = [&](bool verb_focus) {
        NodeRef info = mk_complex();
        NodeRef rheme = mk_complex();
        NodeRef theme = mk_complex();
        Sign s;
        s.phon = phon_tokens(r.phon);
        if (verb_focus) {
            put_feat(rheme, "focus", mk_set({mainprop}, /*group=*/true));
            put_feat(rheme, "mainprop", mainprop);
            put_feat(theme, "topic", mk_atom("none"));
            put_feat(theme, "neutral", mk_atom("none"));
            NodeRef b = mk_var("B");
            put_feat(info, "rheme", rheme);
            put_feat(info, "theme", theme);
            put_feat(info, "background", b);
            s.order = verb_focus_functor(b, info);
        } else {
            NodeRef t = mk_var("T"), n = mk_var("N"), f = mk_var("F"),
                    b = mk_var("B");
            put_feat(rheme, "focus", f);
            put_feat(rheme, "mainprop", mainprop);
            put_feat(theme, "topic", t);
            put_feat(theme, "neutral", n);
            put_feat(info, "rheme", rheme);
            put_feat(info, "theme", theme);
            put_feat(info, "background", b);
            s.order = verb_order_functor(t, n, f, b, info,
                                         /*focus_optional=*/r.kind == "gverb");
        }
        NodeRef result = mk_complex();
        put_feat(result, "syn", syn);
        put_feat(result, "sem", sem);
        put_feat(result, "info", info);
        s.cat = synargs.empty() ? basic_cat(result)
                                : functor_cat(result, synargs);
        return s;
    };

    e.templates.push_back(make_sign(false));
    if (r.kind == "verb") e.templates.push_back(make_sign(true));
    return e;
}

LexEntry build_noun(const RawEntry& r) {
    LexEntry e;
    std::unordered_map<std::string, NodeRef> vars;
    if (r.kase.empty()) entry_error(r.phon, r.line, "noun needs a case field");
    if (r.entity.empty())
        entry_error(r.phon, r.line, "noun needs an entity field");
    if (r.props.empty())
        entry_error(r.phon, r.line, "noun needs a props field");

    NodeRef props = parse_value(r.props, vars);
    if (props->kind != Kind::Set)
        entry_error(r.phon, r.line, "props must be a list");
    props->group = true;

    NodeRef syn = mk_complex();
    put_feat(syn, "cat", mk_atom("np"));
    put_feat(syn, "case", mk_atom(r.kase));
    if (!r.postverbal) put_feat(syn, "postv", mk_atom("-"));
    for (auto& [k, v] : r.syn) put_path(syn, k, parse_value(v, vars));

    NodeRef sem = mk_complex();
    put_feat(sem, "entity", parse_value(r.entity, vars));
    put_feat(sem, "props", props);
    for (auto& [k, v] : r.sem) put_path(sem, k, parse_value(v, vars));

    NodeRef node = mk_complex();
    put_feat(node, "syn", syn);
    put_feat(node, "sem", sem);

    Sign s;
    s.phon = phon_tokens(r.phon);
    s.cat = basic_cat(node);
    e.payload = props;
    if (r.function == "focus")
        s.order = ord_basic(InfoSlot::Focus, props);
    else
        e.order_by_familiarity = true;
    e.templates.push_back(std::move(s));
    return e;
}

LexEntry build_adjunct(const RawEntry& r) {
    LexEntry e;
    std::unordered_map<std::string, NodeRef> vars;
    if (r.lf.empty()) entry_error(r.phon, r.line, "adjunct needs an lf field");
    NodeRef contrib = parse_value(r.lf, vars);
    if (contrib->kind != Kind::Set || contrib->items.empty())
        entry_error(r.phon, r.line, "lf must be a non-empty list");

    NodeRef syn_v = mk_var("Sy");
    NodeRef info_v = mk_var("I");
    NodeRef type_v = mk_var("Ty");
    NodeRef lf_v = mk_var("Vlf");
    NodeRef ev = named_var("E", vars);

    auto clause_node = [&](NodeRef lf) {
        NodeRef sem = mk_complex();
        put_feat(sem, "type", type_v);
        put_feat(sem, "lf", std::move(lf));
        put_feat(sem, "event", ev);
        NodeRef n = mk_complex();
        put_feat(n, "syn", syn_v);
        put_feat(n, "sem", sem);
        put_feat(n, "info", info_v);
        return n;
    };

    std::vector<NodeRef> extended = contrib->items;
    extended.push_back(lf_v);

    int rest = fresh_rest_id();
    auto arg_sig = functor_cat(clause_node(lf_v), {}, rest);
    auto res_sig = functor_cat(clause_node(mk_set(std::move(extended))), {},
                               rest);
    auto cat = std::make_shared<SynCat>();
    cat->result_cat = res_sig;
    cat->args = {SynArg{arg_sig, r.postverbal ? Dir::Either : Dir::Right}};

    Sign s;
    s.phon = phon_tokens(r.phon);
    s.cat = cat;
    e.payload = mk_set(contrib->items, /*group=*/true);
    if (r.function == "focus")
        s.order = ord_basic(InfoSlot::Focus, e.payload);
    else
        e.order_by_familiarity = true;
    e.templates.push_back(std::move(s));
    return e;
}

LexEntry build_particle(const RawEntry& r) {
    LexEntry e;
    std::unordered_map<std::string, NodeRef> vars;
    Dir dir = Dir::Left;
    if (r.side == "right")
        dir = Dir::Right;
    else if (r.side == "either")
        dir = Dir::Either;
    else if (!r.side.empty() && r.side != "left")
        entry_error(r.phon, r.line, "side must be left, right or either");

    // The host is captured through shared variables (a plain complex
    // host would unify non-destructively and the clause content would
    // be lost from the particle's result). Contributed sem features
    // override the corresponding shared slot.
    NodeRef arg_host, res_host;
    if (r.sem.empty()) {
        arg_host = res_host = mk_var("H");
    } else {
        NodeRef vsyn = mk_var("S");
        NodeRef vinfo = mk_var("I");
        std::vector<std::pair<std::string, NodeRef>> shared = {
            {"type", mk_var("T")},
            {"lf", mk_var("L")},
            {"event", mk_var("E")}};
        NodeRef arg_sem = mk_complex(shared);
        auto over = shared;
        for (auto& [k, v] : r.sem) {
            bool found = false;
            for (auto& f : over)
                if (f.first == k) {
                    f.second = parse_value(v, vars);
                    found = true;
                }
            if (!found) over.emplace_back(k, parse_value(v, vars));
        }
        NodeRef res_sem = mk_complex(over);
        arg_host =
            mk_complex({{"syn", vsyn}, {"sem", arg_sem}, {"info", vinfo}});
        res_host =
            mk_complex({{"syn", vsyn}, {"sem", res_sem}, {"info", vinfo}});
    }

    Sign s;
    s.phon = phon_tokens(r.phon);
    if (r.attach == "np") {
        s.cat = functor_cat(res_host, {SynArg{basic_cat(arg_host), dir}});
    } else {
        int rest = fresh_rest_id();
        auto cat = std::make_shared<SynCat>();
        cat->result_cat = functor_cat(res_host, {}, rest);
        cat->args = {SynArg{functor_cat(arg_host, {}, rest), dir}};
        s.cat = cat;
    }
    s.order = ord_transparent();
    e.templates.push_back(std::move(s));
    return e;
}

} // namespace

void Lexicon::add_entry_text(const std::string& record, int line) {
    std::vector<std::string> fields;
    std::string cur;
    std::istringstream in(record);
    std::string l;
    while (std::getline(in, l)) {
        std::size_t pos = 0;
        for (;;) {
            std::size_t semi = l.find(';', pos);
            std::string piece = trim(l.substr(pos, semi - pos));
            if (!piece.empty()) fields.push_back(piece);
            if (semi == std::string::npos) break;
            pos = semi + 1;
        }
    }
    if (fields.empty()) return;

    RawEntry r = parse_record(fields, line);
    LexEntry e;
    if (r.kind == "verb" || r.kind == "gverb")
        e = build_verb(r);
    else if (r.kind == "noun")
        e = build_noun(r);
    else if (r.kind == "adjunct")
        e = build_adjunct(r);
    else if (r.kind == "particle")
        e = build_particle(r);
    else
        entry_error(r.phon, line, "unknown entry kind '" + r.kind + "'");

    std::string phrase;
    for (auto& t : phon_tokens(r.phon)) {
        if (!phrase.empty()) phrase += " ";
        phrase += t;
    }
    e.phon = phrase;
    e.kind = r.kind;
    e.key = r.key;
    e.postverbal = r.postverbal;
    e.line = line;

    for (auto& prev : entries_)
        if (prev.phon == e.phon &&
            sign_key(prev.templates.front()) == sign_key(e.templates.front()))
            entry_error(e.phon, line, "duplicate of entry at line " +
                                          std::to_string(prev.line));

    max_phrase_tokens_ =
        std::max(max_phrase_tokens_, e.templates.front().phon.size());
    entries_.push_back(std::move(e));
}

Lexicon Lexicon::parse(const std::string& text) {
    Lexicon lex;
    std::istringstream in(text);
    std::string line, record;
    int lineno = 0, record_line = 0;
    auto flush = [&]() {
        if (!trim(record).empty()) lex.add_entry_text(record, record_line);
        record.clear();
        record_line = 0;
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        if (trim(line).empty()) {
            flush();
            continue;
        }
        if (record.empty()) record_line = lineno;
        record += line + "\n";
    }
    flush();
    return lex;
}

Lexicon Lexicon::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open lexicon file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

bool Lexicon::known(const std::string& phrase) const {
    for (auto& e : entries_)
        if (e.phon == phrase) return true;
    return false;
}

std::vector<LexSign> Lexicon::lookup(const std::string& phrase) const {
    std::vector<LexSign> out;
    for (auto& e : entries_) {
        if (e.phon != phrase) continue;
        for (auto& tmpl : e.templates) {
            auto instantiate = [&]() {
                CloneCtx ctx;
                LexSign ls;
                ls.sign = clone_sign_fresh(tmpl, ctx);
                if (e.payload) ls.payload = clone_fresh(e.payload, ctx);
                ls.needs_order = e.order_by_familiarity;
                ls.entry = &e;
                return ls;
            };
            out.push_back(instantiate());

            // Case-marking activates the order-preserving raised variants:
            // one looking right at the verb, and one looking left when the
            // entry may stand behind the verb.
            if (e.kind == "noun") {
                LexSign raised = instantiate();
                raised.sign.cat =
                    type_raise(raised.sign.cat->result_node, Dir::Right);
                out.push_back(std::move(raised));
                if (e.postverbal) {
                    LexSign post = instantiate();
                    post.sign.cat =
                        type_raise(post.sign.cat->result_node, Dir::Left);
                    out.push_back(std::move(post));
                }
            }
        }
    }
    return out;
}

std::vector<const LexEntry*> Lexicon::verbs_by_key(
    const std::string& pred) const {
    std::vector<const LexEntry*> out;
    for (auto& e : entries_)
        if ((e.kind == "verb" || e.kind == "gverb") && e.key == pred)
            out.push_back(&e);
    return out;
}

std::vector<Sign> assign_order(const LexSign& ls, Familiarity fam) {
    if (!ls.needs_order) return {ls.sign};
    std::vector<Sign> out;
    if (fam == Familiarity::New) {
        for (InfoSlot slot : {InfoSlot::Focus, InfoSlot::Neutral}) {
            Sign s = ls.sign;
            s.order = ord_basic(slot, ls.payload);
            out.push_back(std::move(s));
        }
    } else {
        Sign s = ls.sign;
        s.order = ord_basic(InfoSlot::Any, ls.payload);
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace mccg
