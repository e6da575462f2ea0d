#pragma once

#include <stdexcept>
#include <string>

namespace plateau {

// All recoverable failures surface as typed exceptions; the CLI maps them
// onto exit codes (2 invalid input, 3 non-convergence, 4 verification).
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidInput : Error {
  using Error::Error;
};
struct CurvesTooClose : InvalidInput {
  using InvalidInput::InvalidInput;
};
struct NonIntegerResult : Error {
  using Error::Error;
};
struct OnSurface : InvalidInput {
  using InvalidInput::InvalidInput;
};
struct DegenerateHull : InvalidInput {
  using InvalidInput::InvalidInput;
};
struct PointNotOnHull : InvalidInput {
  using InvalidInput::InvalidInput;
};
struct AllInterior : Error {
  using Error::Error;
};
struct RoutingFailed : Error {
  using Error::Error;
};
struct HookNotSimple : Error {
  using Error::Error;
};
struct SideAmbiguous : Error {
  using Error::Error;
};
struct BoundaryOutsideRegion : InvalidInput {
  using InvalidInput::InvalidInput;
};
struct CarveFailed : Error {
  using Error::Error;
};
struct WeldFailed : Error {
  using Error::Error;
};
struct NotClosed : Error {
  using Error::Error;
};
struct NotEmbedded : Error {
  using Error::Error;
};
struct SpliceSelfIntersect : InvalidInput {
  using InvalidInput::InvalidInput;
};
struct SchemaError : InvalidInput {
  using InvalidInput::InvalidInput;
};
struct MalformedObj : InvalidInput {
  using InvalidInput::InvalidInput;
};

}  // namespace plateau
