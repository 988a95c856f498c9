// Copyright 2026 The fdsolver Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "fd/generators.hpp"
#include "fd/parser.hpp"
#include "fd/report.hpp"
#include "fd/search.hpp"
#include "oracle.hpp"

using namespace fd;

namespace {

Model must_parse(const std::string& text) {
    ParseResult r = parse_model(text);
    REQUIRE(std::holds_alternative<Model>(r));
    return std::get<Model>(std::move(r));
}

} // namespace

TEST_CASE("gen_nqueens shapes") {
    Model m4 = must_parse(gen_nqueens(4));
    CHECK(m4.num_vars() == 4);
    // alldifferent + 2 diagonal disequalities per pair
    CHECK(m4.constraints.size() == 1 + 2 * 6);

    Model m1 = must_parse(gen_nqueens(1));
    CHECK(m1.num_vars() == 1);
    CHECK(enumerate_solutions(m1, {}).size() == 1);

    CHECK_THROWS_AS(gen_nqueens(0), std::invalid_argument);
}

TEST_CASE("gen_random is deterministic and parseable") {
    std::string a = gen_random(2, 5, 2, 1);
    std::string b = gen_random(2, 5, 2, 1);
    CHECK(a == b);
    CHECK(gen_random(2, 5, 2, 2) != a);

    CHECK_THROWS_AS(gen_random(0, 5, 2, 1), std::invalid_argument);

    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        std::string text = gen_random(1 + static_cast<int>(seed % 6), 6, 5, seed);
        ParseResult r = parse_model(text);
        CHECK(std::holds_alternative<Model>(r));
        if (const auto* m = std::get_if<Model>(&r))
            CHECK(model_validate(*m).empty());
    }
}

TEST_CASE("json report round-trips and solutions satisfy the model") {
    Model m = must_parse("var x1 in 1..5;\nvar x2 in 1..10;\nconstraint x1 > 3;\n"
                         "constraint x1 < x2;\nsolve satisfy;");
    RunReport report;
    report.status = RunStatus::Sat;
    report.seed = 42;
    report.threads = 2;
    solve_satisfy(m, {}, [&](const Solution& s) {
        report.solutions.push_back(s);
        return true;
    });
    REQUIRE(report.solutions.size() == 11);

    std::istringstream lines(report_json_lines(report, m));
    std::string line;
    int solution_lines = 0;
    while (std::getline(lines, line)) {
        nlohmann::json j = nlohmann::json::parse(line);
        REQUIRE(j.contains("status"));
        if (!j.contains("assignment")) {
            // Final report object.
            CHECK(j["nodes"].is_number());
            CHECK(j["failures"].is_number());
            CHECK(j["rounds"].is_number());
            CHECK(j["time_ms"].is_number());
            CHECK(j["seed"] == 42);
            continue;
        }
        ++solution_lines;
        // Re-check the emitted assignment with the independent evaluator.
        std::vector<std::int64_t> assignment(static_cast<std::size_t>(m.num_vars()));
        for (int v = 0; v < m.num_vars(); ++v)
            assignment[static_cast<std::size_t>(v)] =
                j["assignment"][m.variables[static_cast<std::size_t>(v)].name].get<std::int64_t>();
        for (const auto& c : m.constraints)
            CHECK(oracle::eval(c, assignment));
    }
    CHECK(solution_lines == 11);
}
