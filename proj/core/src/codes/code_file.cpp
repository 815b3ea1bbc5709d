#include "icx/codes/code_file.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace icx::codes {

using nlohmann::json;

namespace {

std::string window_key(std::size_t a, std::size_t j) { return std::to_string(a) + "," + std::to_string(j); }

}  // namespace

CodeFile code_file_of(const BinaryLinearCode& c) {
  CodeFile f;
  f.k = c.k();
  f.n = c.n();
  f.rows = c.rows();
  f.verified_distances["full"] = c.min_distance();
  return f;
}

CodeFile code_file_of(const RandomRatelessCode& c) {
  CodeFile f;
  f.k = c.message_bits();
  f.n = c.codeword_bits();
  f.s = c.s();
  f.b = c.b();
  f.rows = c.rows();
  for (const auto& [key, d] : c.window_distances()) f.verified_distances[window_key(key.first, key.second)] = d;
  return f;
}

void write_code_file(std::ostream& os, const CodeFile& f) {
  json h;
  h["k"] = f.k;
  h["n"] = f.n;
  if (f.s) h["s"] = *f.s;
  if (f.b) h["b"] = *f.b;
  h["verified_distances"] = f.verified_distances;
  if (!f.meta.empty()) h["meta"] = json::parse(f.meta);
  os << h.dump() << '\n';
  for (const auto& r : f.rows) os << r.to_hex() << '\n';
}

CodeFile read_code_file(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("code file: missing header");
  json h;
  try {
    h = json::parse(line);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("code file: bad header: ") + e.what());
  }
  CodeFile f;
  f.k = h.at("k").get<std::size_t>();
  f.n = h.at("n").get<std::size_t>();
  if (h.contains("s")) f.s = h["s"].get<std::size_t>();
  if (h.contains("b")) f.b = h["b"].get<std::size_t>();
  if (h.contains("verified_distances"))
    f.verified_distances = h["verified_distances"].get<std::map<std::string, std::size_t>>();
  if (h.contains("meta")) f.meta = h["meta"].dump();
  for (std::size_t i = 0; i < f.k; ++i) {
    if (!std::getline(is, line)) throw std::runtime_error("code file: expected " + std::to_string(f.k) + " rows");
    f.rows.push_back(BitVec::from_hex(line, f.n));
  }
  if (f.s && f.b && (f.k != *f.s * *f.b || f.n != 2 * f.k))
    throw std::runtime_error("code file: s, b inconsistent with k, n");
  return f;
}

CodeFileCheck verify_code_file(const CodeFile& f) {
  CodeFileCheck out;
  auto compare = [&](const std::string& key, std::size_t actual) {
    auto it = f.verified_distances.find(key);
    if (it == f.verified_distances.end()) {
      out.ok = false;
      out.mismatches.push_back(key + ": missing from header (actual " + std::to_string(actual) + ")");
    } else if (it->second != actual) {
      out.ok = false;
      out.mismatches.push_back(key + ": header " + std::to_string(it->second) + ", actual " + std::to_string(actual));
    }
  };
  if (f.s && f.b) {
    RandomRatelessCode c(*f.s, *f.b, f.rows);
    c.verify_exact();
    for (const auto& [key, d] : c.window_distances()) compare(window_key(key.first, key.second), d);
  } else {
    BinaryLinearCode c(f.rows, 0);
    compare("full", c.exact_min_weight());
  }
  return out;
}

}  // namespace icx::codes
