// Copyright 2026 The fdsolver Authors
// SPDX-License-Identifier: Apache-2.0
#include "fd/report.hpp"

#include <sstream>

#include <json.hpp>

namespace fd {

const char* run_status_text(RunStatus s) {
    switch (s) {
    case RunStatus::Sat: return "SAT";
    case RunStatus::Unsat: return "UNSAT";
    case RunStatus::Optimal: return "OPTIMAL";
    case RunStatus::Unknown: return "UNKNOWN";
    case RunStatus::Error: return "ERROR";
    }
    return "?";
}

std::string report_json_lines(const RunReport& r, const Model& m) {
    std::ostringstream os;
    for (const Solution& sol : r.solutions) {
        nlohmann::json line;
        line["status"] = run_status_text(r.status);
        nlohmann::json assignment = nlohmann::json::object();
        for (int v = 0; v < m.num_vars(); ++v)
            assignment[m.variables[static_cast<std::size_t>(v)].name] =
                sol.values[static_cast<std::size_t>(v)];
        line["assignment"] = assignment;
        if (sol.objective)
            line["objective"] = *sol.objective;
        else
            line["objective"] = nullptr;
        os << line.dump() << "\n";
    }
    nlohmann::json final_line;
    final_line["status"] = run_status_text(r.status);
    final_line["nodes"] = r.nodes;
    final_line["failures"] = r.failures;
    final_line["rounds"] = r.rounds;
    final_line["time_ms"] = r.time_ms;
    final_line["seed"] = r.seed;
    final_line["threads"] = r.threads;
    final_line["heuristic"] = r.heuristic;
    if (!r.error.empty())
        final_line["error"] = r.error;
    os << final_line.dump() << "\n";
    return os.str();
}

std::string report_text(const RunReport& r, const Model& m, bool with_stats) {
    std::ostringstream os;
    for (const Solution& sol : r.solutions) {
        for (int v = 0; v < m.num_vars(); ++v)
            os << (v ? " " : "") << m.variables[static_cast<std::size_t>(v)].name << "="
               << sol.values[static_cast<std::size_t>(v)];
        if (sol.objective)
            os << "  objective=" << *sol.objective;
        os << "\n";
    }
    os << run_status_text(r.status);
    if (!r.error.empty())
        os << ": " << r.error;
    os << "\n";
    if (with_stats)
        os << "nodes=" << r.nodes << " failures=" << r.failures << " rounds=" << r.rounds
           << " time_ms=" << r.time_ms << " seed=" << r.seed << " threads=" << r.threads
           << " heuristic=" << r.heuristic << "\n";
    return os.str();
}

} // namespace fd
