// Copyright 2026 The fdsolver Authors
// SPDX-License-Identifier: Apache-2.0
//
// Compares the sequential engine (threads = 1) against the OpenMP-parallel
// one on propagation-heavy inputs and checks that both reach the same
// fixpoint.

#include <chrono>
#include <iostream>
#include <variant>

#include "fd/generators.hpp"
#include "fd/parser.hpp"
#include "fd/propagation.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using Clock = std::chrono::steady_clock;

double fixpoint_ms(const fd::Model& m, const fd::PropagationConfig& cfg, int repeats,
                   std::vector<fd::Domain>& out) {
    auto batches = fd::group_batches(m.constraints);
    double total = 0;
    for (int r = 0; r < repeats; ++r) {
        std::vector<fd::Domain> doms = m.domains;
        auto t0 = Clock::now();
        fd::propagate_fixpoint(doms, m.constraints, batches, cfg);
        auto t1 = Clock::now();
        total += std::chrono::duration<double, std::milli>(t1 - t0).count();
        out = doms;
    }
    return total / repeats;
}

void bench(const std::string& name, const fd::Model& m, int threads, int repeats) {
    std::vector<fd::Domain> serial_doms, parallel_doms;
    fd::PropagationConfig serial{1, fd::AlldiffLevel::ArcConsistent};
    fd::PropagationConfig parallel{threads, fd::AlldiffLevel::ArcConsistent};

    double t_serial = fixpoint_ms(m, serial, repeats, serial_doms);
    double t_parallel = fixpoint_ms(m, parallel, repeats, parallel_doms);

    bool identical = serial_doms == parallel_doms;
    std::cout << name << ": serial " << t_serial << " ms, " << threads << " threads "
              << t_parallel << " ms, speedup " << (t_serial / t_parallel)
              << (identical ? "" : "  [MISMATCH]") << "\n";
    if (!identical)
        std::exit(1);
}

fd::Model must_parse(const std::string& text) {
    auto parsed = fd::parse_model(text);
    return std::get<fd::Model>(std::move(parsed));
}

} // namespace

int main(int argc, char** argv) {
    int threads = 4;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    if (argc > 1)
        threads = std::atoi(argv[1]);
    int repeats = 5;

    bench("nqueens-24", must_parse(fd::gen_nqueens(24)), threads, repeats);
    bench("nqueens-40", must_parse(fd::gen_nqueens(40)), threads, repeats);
    bench("random-200x48x400", must_parse(fd::gen_random(200, 48, 400, 7)), threads, repeats);
    bench("random-400x64x800", must_parse(fd::gen_random(400, 64, 800, 11)), threads, repeats);
    return 0;
}
