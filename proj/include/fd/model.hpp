// Copyright 2026 The fdsolver Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "fd/domain.hpp"

namespace fd {

using VarId = int;

struct Variable {
    VarId id = 0;
    std::string name;
};

enum class RelOp { Lt, Le, Gt, Ge, Eq, Ne };

const char* rel_op_text(RelOp op);

/// x <op> y + offset, or x <op> literal when rhs_is_var is false.
struct RelBin {
    VarId lhs = 0;
    RelOp op = RelOp::Eq;
    bool rhs_is_var = false;
    VarId rhs_var = 0;
    std::int64_t rhs_value = 0; // literal, or the offset added to rhs_var
};

enum class LinOp { Le, Eq };

struct LinTerm {
    std::int64_t coeff = 1;
    VarId var = 0;
};

/// sum(coeff_i * var_i) <op> bound
struct Linear {
    std::vector<LinTerm> terms;
    LinOp op = LinOp::Le;
    std::int64_t bound = 0;
};

struct AllDifferent {
    std::vector<VarId> vars;
};

using Constraint = std::variant<RelBin, Linear, AllDifferent>;

enum class ConstraintKind { RelBin, Linear, AllDifferent };

ConstraintKind constraint_kind(const Constraint& c);

struct Satisfy {};
struct Minimize {
    VarId var = 0;
};
struct Maximize {
    VarId var = 0;
};
using Goal = std::variant<Satisfy, Minimize, Maximize>;

struct Model {
    std::vector<Variable> variables;
    std::vector<Domain> domains; // parallel to variables
    std::vector<Constraint> constraints;
    Goal goal = Satisfy{};

    int num_vars() const { return static_cast<int>(variables.size()); }
};

struct Diagnostic {
    enum class Kind {
        UnknownVariable,
        DuplicateVariableName,
        VariableCountMismatch,
        EmptyInitialDomain,
        EmptyLinear,
        ZeroCoefficient,
        AllDifferentTooSmall,
        DuplicateVarInAllDifferent,
    };
    Kind kind;
    int constraint_index = -1; // -1 when not tied to a constraint
    std::string detail;
};

/// Checks every model invariant; an empty result means the model is valid.
std::vector<Diagnostic> model_validate(const Model& m);

/// True when the given full assignment (indexed by var id) satisfies c.
/// Independent of the propagators; used to re-check emitted solutions.
bool constraint_satisfied(const Constraint& c, const std::vector<std::int64_t>& assignment);

struct ArithmeticOverflowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace fd
