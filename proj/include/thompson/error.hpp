#ifndef THOMPSON_ERROR_HPP_
#define THOMPSON_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace thompson {

  enum class ErrorKind {
    PrefixViolation,
    IncompleteCode,
    NotABijection,
    Undetermined,
    NotInF,
    NotInGroup,
    SynthesisFailure,
    ResourceLimit,
    EndpointForbidden,
    TooSmall,
    ConstantsTooSmall,
    FormatError,
  };

  std::string_view name(ErrorKind kind) noexcept;

  // Every failure raised by the library carries one of the kinds above so
  // that callers (the CLI in particular) can map it to an exit status.
  class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, std::string const& what)
        : std::runtime_error(std::string(name(kind)) + ": " + what),
          _kind(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept {
      return _kind;
    }

   private:
    ErrorKind _kind;
  };

}  // namespace thompson

#endif  // THOMPSON_ERROR_HPP_
