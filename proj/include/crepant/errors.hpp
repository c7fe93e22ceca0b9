#pragma once

#include <stdexcept>
#include <string>

namespace crepant {

// Base for all domain errors; `kind` is a stable machine-readable tag used by
// the CLI to pick exit codes and by tests to assert the failure class.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

struct NotFullDimensional : Error {
  explicit NotFullDimensional(const std::string& w) : Error("NotFullDimensional", w) {}
};
struct NotStronglyConvex : Error {
  explicit NotStronglyConvex(const std::string& w) : Error("NotStronglyConvex", w) {}
};
struct InvalidFan : Error {
  explicit InvalidFan(const std::string& w) : Error("InvalidFan", w) {}
};
struct NonIntegralGamma : Error {
  explicit NonIntegralGamma(const std::string& w) : Error("NonIntegralGamma", w) {}
};
struct DimensionUnsupported : Error {
  explicit DimensionUnsupported(const std::string& w) : Error("DimensionUnsupported", w) {}
};
struct NotFlippable : Error {
  explicit NotFlippable(const std::string& w) : Error("NotFlippable", w) {}
};
struct InvalidParameters : Error {
  explicit InvalidParameters(const std::string& w) : Error("InvalidParameters", w) {}
};
struct NotFanoCompatible : Error {
  explicit NotFanoCompatible(const std::string& w) : Error("NotFanoCompatible", w) {}
};
struct NotCompact : Error {
  explicit NotCompact(const std::string& w) : Error("NotCompact", w) {}
};
struct OutsideCone : Error {
  explicit OutsideCone(const std::string& w) : Error("OutsideCone", w) {}
};
struct OutsideDomain : Error {
  explicit OutsideDomain(const std::string& w) : Error("OutsideDomain", w) {}
};
struct OutsideReebCone : Error {
  explicit OutsideReebCone(const std::string& w) : Error("OutsideReebCone", w) {}
};
struct DidNotConverge : Error {
  explicit DidNotConverge(const std::string& w) : Error("DidNotConverge", w) {}
};
struct ParseError : Error {
  explicit ParseError(const std::string& w) : Error("ParseError", w) {}
};

}  // namespace crepant
