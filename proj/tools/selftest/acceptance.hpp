#pragma once
/**
 * @file    acceptance.hpp
 * @brief   Desk-scale acceptance checks, one verdict per criterion.
 */

#include "forcemap/scene.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace forcemap::selftest {

/// JSON text of the bundled example scene.
std::string_view exampleSceneJson() noexcept;

struct AcceptanceOptions
{
    std::uint64_t seed{20240611};
    std::size_t latencyQueries{1'000'000};
    std::size_t oracleScenes{10};
    std::size_t oracleConfigurations{1'000};
    unsigned threads{1};
};

struct CriterionResult
{
    int id{0};
    std::string name;
    bool passed{false};
    std::string detail;
    double seconds{0.0};
};

/// Runs every criterion against the example scene.
std::vector<CriterionResult> runAcceptance(const AcceptanceOptions& options = {});

/// "PASS|FAIL <id> <name>: <detail> (<seconds> s)"
std::string formatResult(const CriterionResult& result);

/// Prints one line per criterion and a closing summary; returns the number of failures.
int printAcceptance(std::ostream& out, const AcceptanceOptions& options = {});

} // namespace forcemap::selftest
