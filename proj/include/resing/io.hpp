#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "resing/driver.hpp"

namespace resing {

using Json = nlohmann::ordered_json;

/// On-disk description of an idealistic space: variables, labeled
/// divisor hyperplanes, an optional immersion subspace, marked ideals,
/// and optional seed points for the driver.
struct ProblemFile {
    std::vector<std::string> variables;
    struct DivisorEntry {
        std::string label;
        std::string variable;
        bool old_origin = true;
    };
    std::vector<DivisorEntry> divisor;
    std::vector<std::string> subspace;
    struct IdealEntry {
        std::string poly;
        unsigned mark = 1;
    };
    std::vector<IdealEntry> ideals;
    std::vector<std::vector<std::string>> seeds;
};

struct Problem {
    IdealisticSpace space;
    std::vector<RationalPoint> seeds;
};

Rational parse_rational(const std::string& text);

/// Recursive-descent parser for the expression grammar: rational
/// literals, variables, + - * ^ and parentheses. Errors carry
/// line/column positions; implicit multiplication is rejected.
Poly parse_poly(const std::string& text, const std::vector<std::string>& vars);

ProblemFile problem_from_json(const Json& j);
ProblemFile load_problem_file(const std::string& path);
Problem build_problem(const ProblemFile& pf);
Problem load_problem(const std::string& path);

Json space_to_json(const IdealisticSpace& s);
Json trace_to_json(const std::vector<TreeNode>& nodes, const ResolutionTrace& trace);
/// Resolution traces never project, so every chart keeps the root's
/// variable names; offsets parse against them.
ResolutionTrace trace_from_json(const Json& j, const std::vector<std::string>& root_vars);
Json outcome_to_json(const ResolveOutcome& outcome);

std::string describe_space(const IdealisticSpace& s);

} // namespace resing
