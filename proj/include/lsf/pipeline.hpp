#pragma once

#include "lsf/io.hpp"

namespace lsf::pipeline {

using Json = io::Json;

// Command configurations are JSON objects; missing fields take these defaults.
Json defaults(const std::string& command);
// Recursive merge, values of `over` win.
Json merge(const Json& base, const Json& over);
void validate(const std::string& command, const Json& cfg);

ElasticaParams elastica_params(const Json& cfg);
// Curve sources: {"file": path}, {"circle": {...}}, {"elastica": {...}}.
LegendreCurve make_curve(const Json& spec);
EvolutionMap make_evolution(const Json& cfg);
AnalysisTolerances analysis_tolerances(const Json& cfg);

void run_elastica(const Json& cfg);
void run_evolve(const Json& cfg);
void run_analyze(const Json& cfg);
void run_ribaucour(const Json& cfg);
void run_export(const Json& cfg);

// Dispatch by command name after merging defaults; returns the exit code.
int run(const std::string& command, const Json& cfg);

}  // namespace lsf::pipeline
