#ifndef KIF2TFF_DIAGNOSTICS_HPP
#define KIF2TFF_DIAGNOSTICS_HPP

#include <string>
#include <vector>

namespace kif2tff {

enum class Severity { Note, Warning, Error };

struct Diagnostic {
  std::string file;
  int line = 0;
  std::string label;  // axiom label when known
  Severity severity = Severity::Note;
  std::string message;

  std::string render() const;
};

class DiagnosticSink {
 public:
  void add(Severity sev, const std::string& msg, const std::string& file = "", int line = 0,
           const std::string& label = "") {
    records_.push_back({file, line, label, sev, msg});
  }
  const std::vector<Diagnostic>& records() const { return records_; }
  bool has_errors() const {
    for (const auto& d : records_)
      if (d.severity == Severity::Error) return true;
    return false;
  }
  size_t count(Severity sev) const {
    size_t n = 0;
    for (const auto& d : records_)
      if (d.severity == sev) ++n;
    return n;
  }

 private:
  std::vector<Diagnostic> records_;
};

}  // namespace kif2tff

#endif
