#pragma once
/**
 * @file    cli.hpp
 * @brief   The forcemap command line.
 *
 * Exit codes:
 *   0  success
 *   1  schema or input error (bad scene, missing or corrupt map, bad flags)
 *   2  an obstacle is consumed by its FODR
 *   3  output could not be written
 *   4  configuration outside the joint limits
 *   5  map built for a different scene
 */

#include <iosfwd>
#include <span>
#include <string>

namespace forcemap::cli {

enum ExitCode : int
{
    kOk = 0,
    kInputError = 1,
    kObstacleConsumed = 2,
    kWriteFailure = 3,
    kOutOfLimits = 4,
    kStaleMap = 5,
};

/// Runs one invocation; args excludes the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

} // namespace forcemap::cli
