#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chordlm {

// Bad or unreadable input data (CLI exit code 1).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration or flag values (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal invariant was violated (CLI exit code 3).
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed Standard MIDI File; carries the byte offset of the problem.
class MidiParseError : public InputError {
 public:
  MidiParseError(std::size_t offset, const std::string& what);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Throws InvariantError with `what` when `condition` is false.
void require_invariant(bool condition, const std::string& what);

}  // namespace chordlm
