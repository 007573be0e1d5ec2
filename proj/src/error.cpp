#include "thompson/error.hpp"

namespace thompson {

  std::string_view name(ErrorKind kind) noexcept {
    switch (kind) {
      case ErrorKind::PrefixViolation:
        return "PrefixViolation";
      case ErrorKind::IncompleteCode:
        return "IncompleteCode";
      case ErrorKind::NotABijection:
        return "NotABijection";
      case ErrorKind::Undetermined:
        return "Undetermined";
      case ErrorKind::NotInF:
        return "NotInF";
      case ErrorKind::NotInGroup:
        return "NotInGroup";
      case ErrorKind::SynthesisFailure:
        return "SynthesisFailure";
      case ErrorKind::ResourceLimit:
        return "ResourceLimit";
      case ErrorKind::EndpointForbidden:
        return "EndpointForbidden";
      case ErrorKind::TooSmall:
        return "TooSmall";
      case ErrorKind::ConstantsTooSmall:
        return "ConstantsTooSmall";
      case ErrorKind::FormatError:
        return "FormatError";
    }
    return "Error";
  }

}  // namespace thompson
