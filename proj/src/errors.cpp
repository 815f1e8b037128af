#include "fockdiv/errors.hpp"

#include <new>

namespace fockdiv {

int exit_code_for(const std::exception& e) noexcept {
  if (dynamic_cast<const ResourceError*>(&e) || dynamic_cast<const std::bad_alloc*>(&e)) return kExitResource;
  if (dynamic_cast<const PreconditionError*>(&e) ||
      dynamic_cast<const ParameterError*>(&e) ||
      dynamic_cast<const DomainError*>(&e) ||
      dynamic_cast<const ParseError*>(&e))
    return kExitPrecondition;
  return kExitInternal;
}

} // namespace fockdiv
