#include "chordlm/keyscape/profiles.h"

#include <filesystem>

#include "chordlm/common/error.h"
#include "chordlm/common/text.h"

namespace chordlm::keyscape {
namespace {

bool has_variance(const PitchClassVector& v) {
  for (double x : v) {
    if (x != v[0]) return true;
  }
  return false;
}

}  // namespace

const std::vector<KeyProfile>& builtin_profiles() {
  static const std::vector<KeyProfile> profiles = {
      // Albrecht & Shanahan (2013), Music Perception 31(1).
      {"albrecht-shanahan",
       {0.238, 0.006, 0.111, 0.006, 0.137, 0.094, 0.016, 0.214, 0.009, 0.080, 0.008, 0.081},
       {0.220, 0.006, 0.104, 0.123, 0.019, 0.103, 0.012, 0.214, 0.062, 0.022, 0.061, 0.052}},
      // Krumhansl & Kessler (1982) probe-tone ratings.
      {"krumhansl-kessler",
       {6.35, 2.23, 3.48, 2.33, 4.38, 4.09, 2.52, 5.19, 2.39, 3.66, 2.29, 2.88},
       {6.33, 2.68, 3.52, 5.38, 2.60, 3.53, 2.54, 4.75, 3.98, 2.69, 3.34, 3.17}},
  };
  return profiles;
}

const KeyProfile& default_profile() { return builtin_profiles().front(); }

std::vector<KeyProfile> parse_profiles(std::string_view content) {
  std::vector<KeyProfile> out;
  int line_no = 0;
  for (const std::string& raw : text::split(content, '\n')) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto fields = text::split_ws(text::trim(line));
    if (fields.empty()) continue;
    if (fields.size() != 25) {
      throw InputError("profile line " + std::to_string(line_no) + ": expected a name and 24 weights, got " +
                       std::to_string(fields.size()) + " fields");
    }
    KeyProfile p;
    p.name = fields[0];
    for (int i = 0; i < 12; ++i) {
      p.major[i] = text::parse_double(fields[1 + i], "major weight");
      p.minor[i] = text::parse_double(fields[13 + i], "minor weight");
    }
    if (!has_variance(p.major) || !has_variance(p.minor)) {
      throw InputError("profile '" + p.name + "' has a constant weight vector");
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<KeyProfile> load_profiles(const std::string& path) {
  return parse_profiles(text::read_file(path));
}

KeyProfile resolve_profile(const std::string& spec) {
  for (const KeyProfile& p : builtin_profiles()) {
    if (p.name == spec) return p;
  }
  std::string path = spec;
  std::string name;
  if (!std::filesystem::exists(path)) {
    auto colon = spec.rfind(':');
    if (colon == std::string::npos) throw ConfigError("unknown key profile '" + spec + "'");
    path = spec.substr(0, colon);
    name = spec.substr(colon + 1);
  }
  std::vector<KeyProfile> profiles;
  try {
    profiles = load_profiles(path);
  } catch (const InputError& e) {
    throw ConfigError(std::string("key profile file: ") + e.what());
  }
  for (const KeyProfile& p : profiles) {
    if (name.empty() || p.name == name) return p;
  }
  throw ConfigError("profile '" + name + "' not found in " + path);
}

}  // namespace chordlm::keyscape
