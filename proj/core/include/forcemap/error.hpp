#pragma once

#include <stdexcept>
#include <string>

namespace forcemap {

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// A polygon or halfspace set violates its construction invariants.
class InvalidGeometry : public Error
{
  public:
    using Error::Error;
};

/// Halfspaces whose intersection has no interior.
class EmptyIntersection : public Error
{
  public:
    using Error::Error;
};

/// Halfspaces whose intersection is not bounded.
class Unbounded : public Error
{
  public:
    using Error::Error;
};

/// Point sets with fewer than three non-collinear points.
class DegenerateInput : public Error
{
  public:
    using Error::Error;
};

/// The admissible deformation swallows the whole obstacle.
class ObstacleConsumed : public Error
{
  public:
    ObstacleConsumed(int obstacleId, const std::string& what) : Error(what), obstacleId_(obstacleId) {}

    [[nodiscard]] int obstacleId() const noexcept { return obstacleId_; }

  private:
    int obstacleId_;
};

/// Scene or map documents that fail schema validation.
class SchemaError : public Error
{
  public:
    using Error::Error;
};

/// A persisted map whose scene hash does not match the scene in use.
class StaleMap : public Error
{
  public:
    using Error::Error;
};

/// A simulation was requested without a built or loaded map.
class MapMissing : public Error
{
  public:
    using Error::Error;
};

} // namespace forcemap
