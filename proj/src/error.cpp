#include "dessinmetric/error.hpp"

namespace dessinmetric {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::MalformedInput: return "MalformedInput";
    case Errc::NotAPermutation: return "NotAPermutation";
    case Errc::Disconnected: return "Disconnected";
    case Errc::PoleEvaluation: return "PoleEvaluation";
    case Errc::DegenerateTriple: return "DegenerateTriple";
    case Errc::UnsupportedType: return "UnsupportedType";
    case Errc::InfiniteGroup: return "InfiniteGroup";
    case Errc::NumericalAmbiguity: return "NumericalAmbiguity";
    case Errc::TrivialGroup: return "TrivialGroup";
    case Errc::CyclicGroupUnsupported: return "CyclicGroupUnsupported";
    case Errc::StencilOutOfDomain: return "StencilOutOfDomain";
    case Errc::BranchViolation: return "BranchViolation";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::OutsideButterfly: return "OutsideButterfly";
    case Errc::GenusMismatch: return "GenusMismatch";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& detail)
    : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

}  // namespace dessinmetric
