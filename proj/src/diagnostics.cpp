#include "kif2tff/diagnostics.hpp"

namespace kif2tff {

std::string Diagnostic::render() const {
  const char* sev = severity == Severity::Error ? "error"
                    : severity == Severity::Warning ? "warning"
                                                    : "note";
  std::string where = file.empty() ? std::string("<input>") : file;
  std::string out = where + ":" + std::to_string(line) + ": " + sev + ": " + message;
  if (!label.empty()) out += " [" + label + "]";
  return out;
}

}  // namespace kif2tff
