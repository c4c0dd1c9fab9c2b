// Command line front end: an assistant REPL over the fact base, plus
// direct access to the parser and the generator.

#include <CLI11.hpp>

#include "mccg/dag_io.hpp"
#include "mccg/dialogue.hpp"
#include "mccg/generator.hpp"
#include "mccg/parser.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace mccg;

namespace {

int run_assist(const std::string& lexicon_path, const std::string& db_path,
               const SessionOptions& opts) {
    Session session(Lexicon::load(lexicon_path), FactBase::load(db_path),
                    opts);
    std::string line;
    while (std::getline(std::cin, line)) {
        std::string out = session.step(line);
        if (!out.empty()) std::cout << out << "\n";
    }
    session.db().save(db_path);
    return 0;
}

int run_parse(const std::string& lexicon_path,
              const std::vector<std::string>& words, bool trace, bool all) {
    Lexicon lex = Lexicon::load(lexicon_path);
    std::string sentence;
    for (auto& w : words) sentence += (sentence.empty() ? "" : " ") + w;
    std::vector<ParseResult> rs;
    try {
        rs = parse(tokenize(sentence), lex);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    if (rs.empty()) {
        std::cerr << "error: no analysis\n";
        return 1;
    }
    std::size_t count = all ? rs.size() : 1;
    for (std::size_t i = 0; i < count; ++i) {
        if (i) std::cout << "\n";
        if (trace) std::cout << derivation_to_string(rs[i].deriv);
        std::cout << "dag:\n" << dump_dag(rs[i].sign.result());
    }
    return 0;
}

int run_generate(const std::string& lexicon_path, const std::string& input,
                 bool trace, bool all) {
    Lexicon lex = Lexicon::load(lexicon_path);
    std::ifstream in(input);
    if (!in) {
        std::cerr << "error: cannot open " << input << "\n";
        return 1;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    GenOptions opts;
    opts.all = all;
    std::vector<GenResult> rs;
    try {
        rs = generate(parse_dag_text(ss.str()), lex, opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    if (rs.empty()) {
        std::cerr << "error: no realization\n";
        return 1;
    }
    for (auto& r : rs) {
        std::cout << r.sign.phon_string() << "\n";
        if (trace) std::cout << "dag:\n" << dump_dag(r.sign.result());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bidirectional grammar engine for free word order "
                 "database dialogue"};
    app.require_subcommand(1);

    std::string lexicon_path = "data/turkish.lex";
    std::string db_path = "data/schedule.db";
    bool trace = false, plan_trace = false, all = false;
    app.add_option("--lexicon", lexicon_path, "lexicon file");
    app.add_option("--db", db_path, "fact base file");
    app.add_flag("--trace", trace, "print derivations and sign dumps");
    app.add_flag("--plan-trace", plan_trace, "print answer plans");
    app.add_flag("--all", all, "report every analysis or word order");

    auto* assist = app.add_subcommand(
        "assist", "interactive assistant over the fact base");
    assist->fallthrough();
    auto* parse_cmd = app.add_subcommand("parse", "parse one sentence");
    parse_cmd->fallthrough();
    std::vector<std::string> words;
    parse_cmd->add_option("sentence", words, "sentence to parse")
        ->required()
        ->expected(-1);
    auto* gen_cmd =
        app.add_subcommand("generate", "generate from an input graph file");
    gen_cmd->fallthrough();
    std::string gen_input;
    gen_cmd->add_option("input", gen_input, "generation input file")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(assist)) {
            SessionOptions opts;
            opts.trace = trace;
            opts.plan_trace = plan_trace;
            opts.all = all;
            return run_assist(lexicon_path, db_path, opts);
        }
        if (app.got_subcommand(parse_cmd))
            return run_parse(lexicon_path, words, trace, all);
        return run_generate(lexicon_path, gen_input, trace, all);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
