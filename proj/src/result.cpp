#include "rcsp/result.hpp"

namespace rcsp {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotEnabled: return "not-enabled";
    case Errc::BadTime: return "bad-time";
    case Errc::Stuck: return "stuck";
    case Errc::EmptyStack: return "empty-stack";
    case Errc::WrongEndpoint: return "wrong-endpoint";
    case Errc::UnknownChannel: return "unknown-channel";
    case Errc::UnknownProcess: return "unknown-process";
    case Errc::UnmappableState: return "unmappable-state";
    case Errc::BoundsTooLarge: return "bounds-too-large";
    case Errc::NotQuiescent: return "not-quiescent";
    case Errc::SpawnFailure: return "spawn-failure";
    case Errc::ParseError: return "parse-error";
    case Errc::Mismatch: return "mismatch";
  }
  return "unknown";
}

std::string Error::to_text() const {
  std::string out = errc_name(code);
  if (!detail.empty()) {
    out += ": ";
    out += detail;
  }
  return out;
}

}  // namespace rcsp
