// Copyright 2026 The fdsolver Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "fd/model.hpp"

namespace fd {

struct ParseError {
    enum class Kind {
        SyntaxError,
        UnknownVariable,
        DuplicateVariable,
        EmptyDomain,
        DomainTooWide,
        MissingSolveItem,
    };
    Kind kind = Kind::SyntaxError;
    int line = 1;   // 1-based
    int column = 1; // 1-based
    std::string expected; // SyntaxError only
    std::string found;    // SyntaxError only
    std::string name;     // UnknownVariable / DuplicateVariable

    std::string message() const;
};

using ParseResult = std::variant<Model, ParseError>;

/// Parses the model text format. Name scoping is checked here; callers run
/// model_validate for the remaining structural checks (e.g. zero
/// coefficients). Variables must be declared before use; `>`/`>=` between two variables
/// normalize to `<`/`<=` with operands swapped. First error wins.
ParseResult parse_model(std::string_view text);

/// Inverse of parse_model for models whose domains are contiguous ranges
/// (everything the grammar can express): parse_model(emit_model(m)) == m.
std::string emit_model(const Model& m);

} // namespace fd
