// SUO-KIF reader: S-expressions with ';' comments, '?'/'@' variables and
// numeric literals. One SourcedFormula per top-level expression.

#ifndef KIF2TFF_KIF_PARSER_HPP
#define KIF2TFF_KIF_PARSER_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "kif2tff/formula.hpp"

namespace kif2tff {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string file, int line, int column, const std::string& message)
      : std::runtime_error(file + ":" + std::to_string(line) + ":" + std::to_string(column) +
                           ": " + message),
        file(std::move(file)),
        line(line),
        column(column) {}
  std::string file;
  int line;
  int column;
};

// `file` is used for positions and for the generated labels.
std::vector<SourcedFormula> parse_kif(const std::string& text, const std::string& file);

std::vector<SourcedFormula> parse_kif_file(const std::string& path);

}  // namespace kif2tff

#endif
