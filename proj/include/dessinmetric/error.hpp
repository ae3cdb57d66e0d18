#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dessinmetric {

enum class Errc {
  MalformedInput,
  NotAPermutation,
  Disconnected,
  PoleEvaluation,
  DegenerateTriple,
  UnsupportedType,
  InfiniteGroup,
  NumericalAmbiguity,
  TrivialGroup,
  CyclicGroupUnsupported,
  StencilOutOfDomain,
  BranchViolation,
  NoConvergence,
  OutsideButterfly,
  GenusMismatch,
};

std::string_view errc_name(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above; the
/// message always starts with the code name so that command-line users can
/// grep for it.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace dessinmetric
