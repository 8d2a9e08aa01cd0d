#pragma once

#include <json.hpp>

#include <ostream>
#include <string>

namespace residue_atlas {

using json = nlohmann::json;

enum class Verdict { Realizable, NotRealizable, Undecided };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Realizable: return "Realizable";
    case Verdict::NotRealizable: return "NotRealizable";
    case Verdict::Undecided: return "Undecided";
  }
  return "?";
}

inline std::ostream& operator<<(std::ostream& os, Verdict v) { return os << to_string(v); }

inline Verdict verdict_from_string(const std::string& s) {
  if (s == "Realizable") return Verdict::Realizable;
  if (s == "NotRealizable") return Verdict::NotRealizable;
  if (s == "Undecided") return Verdict::Undecided;
  throw std::invalid_argument("unknown verdict " + s);
}

struct Decision {
  Verdict verdict = Verdict::Undecided;
  std::string tag;
  json certificate = nullptr;

  static Decision realizable(std::string tag, json cert = nullptr) {
    return {Verdict::Realizable, std::move(tag), std::move(cert)};
  }
  static Decision not_realizable(std::string tag, json cert = nullptr) {
    return {Verdict::NotRealizable, std::move(tag), std::move(cert)};
  }
  static Decision undecided(std::string tag, json cert = nullptr) {
    return {Verdict::Undecided, std::move(tag), std::move(cert)};
  }

  json to_json() const { return {{"verdict", to_string(verdict)}, {"tag", tag}, {"certificate", certificate}}; }
};

}  // namespace residue_atlas
