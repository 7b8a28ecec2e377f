#pragma once
// Error taxonomy shared by the core and the C API.
//
// parse    — malformed input text/JSON
// invalid  — well-formed input violating a mathematical precondition
// budget   — search cut off by a caller-supplied limit
// internal — invariant breach inside the engine (always a bug)

#include <stdexcept>
#include <string>

namespace morita {

enum class Err { parse = 1, invalid = 2, budget = 3, internal = 4 };

struct EngineError : std::runtime_error {
  Err code;
  EngineError(Err c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

[[noreturn]] inline void fail_parse(const std::string& msg) {
  throw EngineError(Err::parse, msg);
}
[[noreturn]] inline void fail_invalid(const std::string& msg) {
  throw EngineError(Err::invalid, msg);
}
[[noreturn]] inline void fail_internal(const std::string& msg) {
  throw EngineError(Err::internal, "internal error: " + msg);
}

}  // namespace morita
