#pragma once

#include <forge/dsl/ast.hpp>

#include <nlohmann/json.hpp>

#include <cstdint>
#include <vector>

namespace forge::dsl {

struct ExecOptions {
    std::uint64_t seed = 42;
    /// Tolerance of stokes when the command gives none.
    double tolerance = 1e-8;
};

using Report = nlohmann::json;

/// Runs statements in order. Every command, and every declaration that
/// fails, yields one report; a failure does not stop later statements.
std::vector<Report> execute(const Script& script, const ExecOptions& options = {});

/// Number of reports whose status is "error".
std::size_t count_failures(const std::vector<Report>& reports);

} // namespace forge::dsl
