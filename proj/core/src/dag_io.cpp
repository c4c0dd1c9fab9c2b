#include "mccg/dag_io.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace mccg {

namespace {

bool is_token_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
           c == '+' || c == '-' || c == '\'';
}

std::string value_to_string(const NodeRef& n);

std::string set_to_string(const NodeRef& n) {
    Bindings empty;
    auto elems = flatten_set(n, empty);
    std::string s = "[";
    for (std::size_t i = 0; i < elems.size(); ++i) {
        if (i) s += ", ";
        s += value_to_string(elems[i]);
    }
    return s + "]";
}

std::string value_to_string(const NodeRef& n) {
    if (!n) return "none";
    switch (n->kind) {
    case Kind::Atom: return n->sym;
    case Kind::Var: {
        std::string base = n->sym.empty() ? "V" : n->sym;
        if (!base.empty() && std::islower(static_cast<unsigned char>(base[0])))
            base[0] = static_cast<char>(
                std::toupper(static_cast<unsigned char>(base[0])));
        return base + std::to_string(n->id);
    }
    case Kind::Term: {
        std::string s = n->sym + "(";
        for (std::size_t i = 0; i < n->items.size(); ++i) {
            if (i) s += ",";
            s += value_to_string(n->items[i]);
        }
        return s + ")";
    }
    case Kind::Set: return set_to_string(n);
    case Kind::Complex: return "<complex>";
    }
    return "?";
}

void dump_rec(const NodeRef& n, int indent, std::ostringstream& os) {
    for (auto& [label, v] : n->feats) {
        for (int i = 0; i < indent; ++i) os << "  ";
        if (v && v->kind == Kind::Complex) {
            os << label << " :\n";
            dump_rec(v, indent + 1, os);
        } else {
            os << label << " : " << value_to_string(v) << "\n";
        }
    }
}

struct ValueParser {
    const std::string& s;
    std::size_t pos = 0;
    std::unordered_map<std::string, NodeRef>& vars;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
            ++pos;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw std::runtime_error("value parse error at '" + s.substr(pos, 16) +
                                 "': " + msg);
    }

    std::string token() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && is_token_char(s[pos])) ++pos;
        if (start == pos) fail("expected token");
        return s.substr(start, pos - start);
    }

    NodeRef value(int list_depth) {
        skip_ws();
        if (pos < s.size() && s[pos] == '[') return list(list_depth);
        std::string t = token();
        skip_ws();
        if (pos < s.size() && s[pos] == '(') {
            ++pos;
            std::vector<NodeRef> args;
            skip_ws();
            if (pos < s.size() && s[pos] != ')') {
                args.push_back(value(list_depth));
                skip_ws();
                while (pos < s.size() && s[pos] == ',') {
                    ++pos;
                    args.push_back(value(list_depth));
                    skip_ws();
                }
            }
            if (pos >= s.size() || s[pos] != ')') fail("expected )");
            ++pos;
            return mk_term(t, std::move(args));
        }
        if (std::isupper(static_cast<unsigned char>(t[0])) || t[0] == '_') {
            auto it = vars.find(t);
            if (it != vars.end()) return it->second;
            auto v = mk_var(t);
            vars.emplace(t, v);
            return v;
        }
        return mk_atom(t);
    }

    NodeRef list(int list_depth) {
        ++pos; // '['
        std::vector<NodeRef> items;
        skip_ws();
        if (pos < s.size() && s[pos] != ']') {
            items.push_back(value(list_depth + 1));
            skip_ws();
            while (pos < s.size() && s[pos] == ',') {
                ++pos;
                items.push_back(value(list_depth + 1));
                skip_ws();
            }
        }
        if (pos >= s.size() || s[pos] != ']') fail("expected ]");
        ++pos;
        return mk_set(std::move(items), /*group=*/list_depth > 0);
    }
};

} // namespace

std::string dump_dag(const NodeRef& n) {
    std::ostringstream os;
    if (n && n->kind == Kind::Complex)
        dump_rec(n, 0, os);
    else
        os << value_to_string(n) << "\n";
    return os.str();
}

NodeRef parse_value(const std::string& text,
                    std::unordered_map<std::string, NodeRef>& vars) {
    ValueParser p{text, 0, vars};
    NodeRef v = p.value(0);
    p.skip_ws();
    if (p.pos != text.size())
        throw std::runtime_error("trailing characters in value: " + text);
    return v;
}

NodeRef parse_dag_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;

    NodeRef root = mk_complex();
    std::vector<std::pair<int, NodeRef>> stack{{-1, root}};
    std::unordered_map<std::string, NodeRef> vars;

    auto balance = [](const std::string& s) {
        int b = 0;
        for (char c : s) {
            if (c == '[' || c == '(') ++b;
            if (c == ']' || c == ')') --b;
        }
        return b;
    };

    while (std::getline(in, line)) {
        ++lineno;
        // Re-join values that span lines (unbalanced brackets).
        while (balance(line) > 0) {
            std::string more;
            if (!std::getline(in, more)) break;
            ++lineno;
            line += " " + more;
        }
        std::size_t indent = 0;
        while (indent < line.size() && line[indent] == ' ') ++indent;
        std::string body = line.substr(indent);
        while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back())))
            body.pop_back();
        if (body.empty() || body[0] == '#') continue;

        std::size_t colon = body.find(" :");
        if (colon == std::string::npos)
            throw std::runtime_error("line " + std::to_string(lineno) +
                                     ": expected 'label : value'");
        std::string label = body.substr(0, colon);
        std::string rest = body.substr(colon + 2);
        while (!rest.empty() && rest.front() == ' ') rest.erase(rest.begin());

        while (stack.size() > 1 && static_cast<int>(indent) <= stack.back().first)
            stack.pop_back();
        NodeRef parent = stack.back().second;

        try {
            if (rest.empty()) {
                auto child = mk_complex();
                put_feat(parent, label, child);
                stack.emplace_back(static_cast<int>(indent), child);
            } else {
                put_feat(parent, label, parse_value(rest, vars));
            }
        } catch (const std::exception& e) {
            throw std::runtime_error("line " + std::to_string(lineno) + ": " +
                                     e.what());
        }
    }
    return root;
}

} // namespace mccg
