#pragma once

#include <stdexcept>
#include <string>

namespace catq {

/// Base class for all errors raised by the verification engine.
/// Everything derives from std::runtime_error so callers that do not care
/// about the precise failure class can still print a useful message.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Structurally invalid input: dangling ids, duplicate ids, maps that are
/// not total, JSON that parses but does not describe the declared shape.
struct MalformedInput : Error {
  using Error::Error;
};

/// A path handed to a diagram check is not composable or the two paths do
/// not share endpoints.
struct PathMismatch : Error {
  using Error::Error;
};

/// A morphism does not have the endpoints an operation requires.
struct EndpointMismatch : Error {
  using Error::Error;
};

/// Two contexts that must agree (same ordered element list) do not.
struct ContextMismatch : Error {
  using Error::Error;
};

/// Two presheaves or functors that must share a base category do not.
struct BaseMismatch : Error {
  using Error::Error;
};

/// A candidate sub-presheaf is not closed under the base actions.
struct NotSubpresheaf : Error {
  using Error::Error;
};

/// Requested instance exceeds a size cap (e.g. powerset materialization).
struct SizeCapExceeded : Error {
  using Error::Error;
};

/// Requested diagram shape exceeds the configured shape caps.
struct ShapeCapExceeded : Error {
  using Error::Error;
};

/// An exhaustive search space exceeds the configured enumeration bound.
struct SearchCapExceeded : Error {
  using Error::Error;
};

/// A lifted-naturality family entry is missing a comparison 2-cell.
struct MissingComparisonCell : Error {
  using Error::Error;
};

/// Feet of spans do not line up for the requested composite.
struct FeetMismatch : Error {
  using Error::Error;
};

/// A 2-cell grid is not horizontally/vertically composable.
struct GridMismatch : Error {
  using Error::Error;
};

/// The square handed to the base-change comparison is not the canonical
/// pullback of its cospan.
struct NotAPullback : Error {
  using Error::Error;
};

/// An exhaustive adjoint search finished without finding a universal arrow.
struct NotFound : Error {
  using Error::Error;
};

}  // namespace catq
