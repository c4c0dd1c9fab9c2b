#include <benchmark/benchmark.h>

#include "mccg/dag_io.hpp"
#include "mccg/generator.hpp"
#include "mccg/parser.hpp"

#include <string>

using namespace mccg;

namespace {

Lexicon& lexicon() {
    static Lexicon lex = Lexicon::load(std::string(MCCG_DATA_DIR) +
                                       "/turkish.lex");
    return lex;
}

void bm_parse_transitive(benchmark::State& state) {
    auto tokens = tokenize("fatma ayseyi ikide gorebilir");
    for (auto _ : state)
        benchmark::DoNotOptimize(parse(tokens, lexicon()));
}
BENCHMARK(bm_parse_transitive);

void bm_parse_scrambled(benchmark::State& state) {
    auto tokens = tokenize("aysenin gittigini biliyor fatma");
    for (auto _ : state)
        benchmark::DoNotOptimize(parse(tokens, lexicon()));
}
BENCHMARK(bm_parse_scrambled);

void bm_generate_first(benchmark::State& state) {
    NodeRef in = parse_dag_text(
        "syn :\n"
        "  cat : s\n"
        "  tense : past\n"
        "sem :\n"
        "  type : decl\n"
        "  lf : [see(e2,ahmet,ayse), [one(ahmet), def(ahmet,+)],"
        " [one(ayse), def(ayse,+)]]\n"
        "  event : e2\n"
        "info :\n"
        "  rheme :\n"
        "    focus : [one(ayse), def(ayse,+)]\n"
        "    mainprop : see(e2,ahmet,ayse)\n"
        "  theme :\n"
        "    topic : [one(ahmet), def(ahmet,+)]\n"
        "    neutral : none\n"
        "  background : none\n");
    for (auto _ : state)
        benchmark::DoNotOptimize(generate(in, lexicon()));
}
BENCHMARK(bm_generate_first);

void bm_generate_enumerate(benchmark::State& state) {
    NodeRef in = parse_dag_text(
        "syn :\n"
        "  cat : s\n"
        "  tense : past\n"
        "sem :\n"
        "  type : decl\n"
        "  lf : [see(e1,ayse,st1), time(e1,3), [one(ayse), def(ayse,+)],"
        " [ogrenci(st1), def(st1,+)]]\n"
        "  event : e1\n"
        "info :\n"
        "  rheme :\n"
        "    focus : [time(e1,3)]\n"
        "    mainprop : see(e1,ayse,st1)\n"
        "  theme :\n"
        "    topic : [one(ayse), def(ayse,+)]\n");
    GenOptions opts;
    opts.all = true;
    for (auto _ : state)
        benchmark::DoNotOptimize(generate(in, lexicon(), opts));
}
BENCHMARK(bm_generate_enumerate);

} // namespace

BENCHMARK_MAIN();
