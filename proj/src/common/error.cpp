#include "chordlm/common/error.h"

namespace chordlm {

MidiParseError::MidiParseError(std::size_t offset, const std::string& what)
    : InputError("byte " + std::to_string(offset) + ": " + what), offset_(offset) {}

void require_invariant(bool condition, const std::string& what) {
  if (!condition) throw InvariantError(what);
}

}  // namespace chordlm
