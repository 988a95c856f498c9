// Copyright 2026 The fdsolver Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fd/model.hpp"
#include "fd/search.hpp"

namespace fd {

enum class RunStatus { Sat, Unsat, Optimal, Unknown, Error };

const char* run_status_text(RunStatus s);

/// Everything the CLI prints about one run. Solutions are stored in the
/// order they were emitted; time_ms is wall time and is the only
/// non-deterministic field.
struct RunReport {
    RunStatus status = RunStatus::Unknown;
    std::vector<Solution> solutions;
    std::uint64_t nodes = 0;
    std::uint64_t failures = 0;
    std::uint64_t rounds = 0;
    std::int64_t time_ms = 0;
    std::uint64_t seed = 0;
    int threads = 1;
    std::string heuristic = "ff";
    std::string error;
};

/// One JSON object per line: a solution line for each solution (fields
/// status, assignment, objective) followed by a final report line (fields
/// status, nodes, failures, rounds, time_ms, seed, threads, heuristic).
std::string report_json_lines(const RunReport& r, const Model& m);

/// Human-readable rendering of the same report.
std::string report_text(const RunReport& r, const Model& m, bool with_stats);

} // namespace fd
