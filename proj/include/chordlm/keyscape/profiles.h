#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace chordlm::keyscape {

using PitchClassVector = std::array<double, 12>;

// Distributional key profile; index 0 is the tonic.
struct KeyProfile {
  std::string name;
  PitchClassVector major{};
  PitchClassVector minor{};
};

// Profiles compiled into the binary: "albrecht-shanahan" (the default) and
// "krumhansl-kessler". The same values ship in data/key_profiles.txt.
const std::vector<KeyProfile>& builtin_profiles();
const KeyProfile& default_profile();

// Plain-text profile table: one record per line, `name` followed by 12 major
// and 12 minor weights, whitespace separated. '#' starts a comment.
std::vector<KeyProfile> parse_profiles(std::string_view content);
std::vector<KeyProfile> load_profiles(const std::string& path);

// Resolves `spec` as a builtin profile name, or as "path" / "path:name" for a
// profile file (first record when no name is given). Throws ConfigError.
KeyProfile resolve_profile(const std::string& spec);

}  // namespace chordlm::keyscape
