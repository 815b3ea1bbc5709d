#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "icx/bits.hpp"
#include "icx/codes/linear_code.hpp"
#include "icx/codes/rateless.hpp"

namespace icx::codes {

// Generator matrix file: one JSON header line, then k hex-encoded rows.
struct CodeFile {
  std::size_t k = 0, n = 0;
  std::optional<std::size_t> s, b;
  // "full" for block codes, "a,j" for rateless windows.
  std::map<std::string, std::size_t> verified_distances;
  std::vector<BitVec> rows;
  // Free-form JSON object stored under "meta" (tool version, search settings).
  std::string meta;
};

CodeFile code_file_of(const BinaryLinearCode& c);
CodeFile code_file_of(const RandomRatelessCode& c);

void write_code_file(std::ostream& os, const CodeFile& f);
CodeFile read_code_file(std::istream& is);

struct CodeFileCheck {
  bool ok = true;
  std::vector<std::string> mismatches;
};

// Recomputes every distance by exhaustive enumeration and compares with the
// header. Requires k <= 24.
CodeFileCheck verify_code_file(const CodeFile& f);

}  // namespace icx::codes
