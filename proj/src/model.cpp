// Copyright 2026 The fdsolver Authors
// SPDX-License-Identifier: Apache-2.0
#include "fd/model.hpp"

#include <set>
#include <unordered_set>

namespace fd {

const char* rel_op_text(RelOp op) {
    switch (op) {
    case RelOp::Lt: return "<";
    case RelOp::Le: return "<=";
    case RelOp::Gt: return ">";
    case RelOp::Ge: return ">=";
    case RelOp::Eq: return "=";
    case RelOp::Ne: return "!=";
    }
    return "?";
}

ConstraintKind constraint_kind(const Constraint& c) {
    if (std::holds_alternative<RelBin>(c))
        return ConstraintKind::RelBin;
    if (std::holds_alternative<Linear>(c))
        return ConstraintKind::Linear;
    return ConstraintKind::AllDifferent;
}

namespace {

void check_var(const Model& m, VarId v, int ci, std::vector<Diagnostic>& out) {
    if (v < 0 || v >= m.num_vars())
        out.push_back({Diagnostic::Kind::UnknownVariable, ci, "var id " + std::to_string(v)});
}

} // namespace

std::vector<Diagnostic> model_validate(const Model& m) {
    std::vector<Diagnostic> out;
    if (m.variables.size() != m.domains.size())
        out.push_back({Diagnostic::Kind::VariableCountMismatch, -1,
                       std::to_string(m.variables.size()) + " vars, " +
                           std::to_string(m.domains.size()) + " domains"});
    std::unordered_set<std::string> names;
    for (const auto& v : m.variables)
        if (!names.insert(v.name).second)
            out.push_back({Diagnostic::Kind::DuplicateVariableName, -1, v.name});
    for (std::size_t i = 0; i < m.domains.size() && i < m.variables.size(); ++i)
        if (m.domains[i].empty())
            out.push_back({Diagnostic::Kind::EmptyInitialDomain, -1, m.variables[i].name});

    for (int ci = 0; ci < static_cast<int>(m.constraints.size()); ++ci) {
        const Constraint& c = m.constraints[ci];
        if (const auto* rb = std::get_if<RelBin>(&c)) {
            check_var(m, rb->lhs, ci, out);
            if (rb->rhs_is_var)
                check_var(m, rb->rhs_var, ci, out);
        } else if (const auto* lin = std::get_if<Linear>(&c)) {
            if (lin->terms.empty())
                out.push_back({Diagnostic::Kind::EmptyLinear, ci, ""});
            for (const auto& t : lin->terms) {
                check_var(m, t.var, ci, out);
                if (t.coeff == 0)
                    out.push_back({Diagnostic::Kind::ZeroCoefficient, ci, ""});
            }
        } else if (const auto* ad = std::get_if<AllDifferent>(&c)) {
            std::set<VarId> seen;
            for (VarId v : ad->vars) {
                check_var(m, v, ci, out);
                if (!seen.insert(v).second)
                    out.push_back({Diagnostic::Kind::DuplicateVarInAllDifferent, ci,
                                   "var id " + std::to_string(v)});
            }
            if (seen.size() < 2)
                out.push_back({Diagnostic::Kind::AllDifferentTooSmall, ci, ""});
        }
    }
    return out;
}

bool constraint_satisfied(const Constraint& c, const std::vector<std::int64_t>& a) {
    if (const auto* rb = std::get_if<RelBin>(&c)) {
        std::int64_t lhs = a[rb->lhs];
        std::int64_t rhs = rb->rhs_is_var ? a[rb->rhs_var] + rb->rhs_value : rb->rhs_value;
        switch (rb->op) {
        case RelOp::Lt: return lhs < rhs;
        case RelOp::Le: return lhs <= rhs;
        case RelOp::Gt: return lhs > rhs;
        case RelOp::Ge: return lhs >= rhs;
        case RelOp::Eq: return lhs == rhs;
        case RelOp::Ne: return lhs != rhs;
        }
        return false;
    }
    if (const auto* lin = std::get_if<Linear>(&c)) {
        std::int64_t sum = 0;
        for (const auto& t : lin->terms) {
            std::int64_t prod;
            if (__builtin_mul_overflow(t.coeff, a[t.var], &prod) ||
                __builtin_add_overflow(sum, prod, &sum))
                throw ArithmeticOverflowError("overflow evaluating linear constraint");
        }
        return lin->op == LinOp::Le ? sum <= lin->bound : sum == lin->bound;
    }
    const auto& ad = std::get<AllDifferent>(c);
    for (std::size_t i = 0; i < ad.vars.size(); ++i)
        for (std::size_t j = i + 1; j < ad.vars.size(); ++j)
            if (a[ad.vars[i]] == a[ad.vars[j]])
                return false;
    return true;
}

} // namespace fd
