#ifndef MCCG_DAG_IO_HPP
#define MCCG_DAG_IO_HPP

#include "mccg/feature_graph.hpp"

#include <string>
#include <unordered_map>

namespace mccg {

// Human-readable `label : value` serialization of feature graphs:
//
//   syn :
//     cat : s
//   sem :
//     lf : [time(e6,2), see(e6,fatma,ayse), [one(fatma), def(fatma,+)]]
//
// Deterministic; used by the answer dump, planner traces, golden tests and
// generator input files. Tokens with an uppercase initial are variables.

std::string dump_dag(const NodeRef& n);

// Inline value syntax: atom | Variable | pred(arg, ...) | [v, ...].
// Bracketed lists nested inside another list are property groups.
NodeRef parse_value(const std::string& text,
                    std::unordered_map<std::string, NodeRef>& vars);

// Full indented document; throws std::runtime_error with a line number on
// malformed input.
NodeRef parse_dag_text(const std::string& text);

} // namespace mccg

#endif
