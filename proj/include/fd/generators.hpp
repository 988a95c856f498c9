// Copyright 2026 The fdsolver Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>

namespace fd {

/// n-queens in the model text format: q1..qn in 1..n, alldifferent over
/// all queens, and pairwise offset disequalities for the diagonals.
std::string gen_nqueens(int n);

/// Reproducible random model: same parameters and seed give byte-identical
/// text. Domains are random sub-ranges of width <= width; constraints are
/// drawn uniformly over the three constraint types.
std::string gen_random(int vars, int width, int constraints, std::uint64_t seed);

} // namespace fd
