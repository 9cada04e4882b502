#include "tcoint/errors.hpp"

namespace tcoint {

void throw_invalid(const std::string& what) { throw std::invalid_argument(what); }

}  // namespace tcoint
