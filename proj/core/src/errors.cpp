#include "tnbsd/errors.hpp"

namespace tnbsd {

ParseError::ParseError(std::size_t line, const std::string& what)
    : Error(ExitCode::kParse, "line " + std::to_string(line) + ": " + what), line_(line) {}

}  // namespace tnbsd
