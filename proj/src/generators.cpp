// Copyright 2026 The fdsolver Authors
// SPDX-License-Identifier: Apache-2.0
#include "fd/generators.hpp"

#include <sstream>
#include <stdexcept>
#include <vector>

#include "fd/rng.hpp"

namespace fd {

std::string gen_nqueens(int n) {
    if (n < 1)
        throw std::invalid_argument("n-queens requires n >= 1");
    std::ostringstream os;
    for (int i = 1; i <= n; ++i)
        os << "var q" << i << " in 1.." << n << ";\n";
    if (n >= 2) {
        os << "constraint alldifferent(";
        for (int i = 1; i <= n; ++i)
            os << (i > 1 ? ", " : "") << "q" << i;
        os << ");\n";
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                int d = j - i;
                os << "constraint q" << i << " != q" << j << " + " << d << ";\n";
                os << "constraint q" << i << " != q" << j << " - " << d << ";\n";
            }
    }
    os << "solve satisfy;\n";
    return os.str();
}

std::string gen_random(int vars, int width, int constraints, std::uint64_t seed) {
    if (vars < 1 || width < 1 || constraints < 1)
        throw std::invalid_argument("gen_random requires vars, width and constraints >= 1");
    Rng rng = Rng::derive(seed, 0xabcdef, 0x123456);
    std::ostringstream os;

    struct Range {
        std::int64_t lo, hi;
    };
    std::vector<Range> ranges;
    for (int i = 0; i < vars; ++i) {
        std::int64_t lo = rng.range(-5, 5);
        std::int64_t w = rng.range(1, width);
        std::int64_t hi = lo + w - 1;
        ranges.push_back({lo, hi});
        os << "var v" << i << " in " << lo << ".." << hi << ";\n";
    }

    const char* rel_ops[] = {"<", "<=", ">", ">=", "=", "!="};
    for (int c = 0; c < constraints; ++c) {
        int kind = static_cast<int>(rng.below(vars >= 2 ? 3 : 2));
        if (kind == 0) {
            int x = static_cast<int>(rng.below(static_cast<std::uint64_t>(vars)));
            const char* op = rel_ops[rng.below(6)];
            if (vars >= 2 && rng.below(2) == 0) {
                int y = static_cast<int>(rng.below(static_cast<std::uint64_t>(vars)));
                os << "constraint v" << x << " " << op << " v" << y;
                if (rng.below(2) == 0) {
                    std::int64_t off = rng.range(1, 3);
                    os << (rng.below(2) == 0 ? " + " : " - ") << off;
                }
                os << ";\n";
            } else {
                std::int64_t lit = rng.range(ranges[x].lo - 1, ranges[x].hi + 1);
                os << "constraint v" << x << " " << op << " " << lit << ";\n";
            }
        } else if (kind == 1) {
            int nterms = static_cast<int>(rng.below(std::min(vars, 3))) + 1;
            os << "constraint ";
            std::int64_t max_sum = 0;
            for (int t = 0; t < nterms; ++t) {
                std::int64_t coeff = rng.range(1, 3);
                if (rng.below(4) == 0)
                    coeff = -coeff;
                int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(vars)));
                if (t == 0) {
                    if (coeff != 1)
                        os << coeff << "*";
                } else {
                    os << (coeff < 0 ? " - " : " + ");
                    if (coeff != 1 && coeff != -1)
                        os << (coeff < 0 ? -coeff : coeff) << "*";
                }
                os << "v" << v;
                std::int64_t c1 = coeff * ranges[v].lo, c2 = coeff * ranges[v].hi;
                max_sum += std::max(c1, c2);
            }
            bool eq = rng.below(4) == 0;
            std::int64_t bound = rng.range(-2, std::max<std::int64_t>(max_sum, -1));
            os << (eq ? " = " : " <= ") << bound << ";\n";
        } else {
            int count = static_cast<int>(rng.below(static_cast<std::uint64_t>(vars - 1))) + 2;
            // Distinct members drawn by partial shuffle.
            std::vector<int> ids(static_cast<std::size_t>(vars));
            for (int i = 0; i < vars; ++i)
                ids[static_cast<std::size_t>(i)] = i;
            os << "constraint alldifferent(";
            for (int i = 0; i < count; ++i) {
                int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(vars - i)));
                std::swap(ids[static_cast<std::size_t>(i)], ids[static_cast<std::size_t>(j)]);
                os << (i > 0 ? ", " : "") << "v" << ids[static_cast<std::size_t>(i)];
            }
            os << ");\n";
        }
    }
    os << "solve satisfy;\n";
    return os.str();
}

} // namespace fd
