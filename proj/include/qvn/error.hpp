#pragma once

#include <stdexcept>
#include <string>

namespace qvn {

enum class ErrorKind {
  Shape,         // dimension mismatch
  Domain,        // argument outside the operation's domain (inv(0), non-positive sqrt)
  Precondition,  // a stated precondition failed (non-commuting input, non-projector, ...)
  Structure,     // complex matrix is not the image of a quaternionic one
  Degenerate,    // numerical degeneracy: rank or normalization decision failed
  Parse,         // malformed input document
  Internal       // iteration cap exceeded or an invariant broke
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace qvn
