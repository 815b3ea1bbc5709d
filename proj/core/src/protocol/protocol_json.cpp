#include "icx/protocol/protocol_json.hpp"

#include <stdexcept>

#include "../detail/json_io.hpp"

namespace icx::protocol {

namespace {

std::vector<std::size_t> parse_list(const std::string& rule, std::size_t prefix_len) {
  auto arr = detail::json::parse(rule.substr(prefix_len));
  if (!arr.is_array()) throw std::invalid_argument("owner_rule list must be a JSON array");
  std::vector<std::size_t> out;
  for (auto& v : arr) out.push_back(v.get<std::size_t>());
  return out;
}

PartyInput parse_input(const detail::json& v) {
  PartyInput in;
  if (v.is_number_unsigned() || v.is_number_integer()) {
    in.seed = v.get<std::uint64_t>();
  } else if (v.is_string()) {
    for (char ch : v.get<std::string>()) {
      if (ch != '0' && ch != '1') throw std::invalid_argument("preferred edge table must be a 0/1 string");
      in.table.push_back(ch == '1' ? 1 : 0);
    }
  } else {
    throw std::invalid_argument("preferred_edges entries must be a seed or a bit string");
  }
  return in;
}

}  // namespace

ProtocolDescription parse_protocol_json(std::string_view text) {
  return detail::protocol_from_json(detail::json::parse(text));
}

}  // namespace icx::protocol

namespace icx::detail {

protocol::ProtocolDescription protocol_from_json(const json& j) {
  using namespace icx::protocol;
  GeneratedProtocol::Spec spec;
  spec.depth = j.value("depth", std::size_t{0});
  std::string rule = j.value("owner_rule", std::string("alternating"));
  spec.owner_seed = j.value("owner_seed", std::uint64_t{0});
  ProtocolDescription d;
  if (rule == "alternating") {
    spec.rule = OwnerRule::Alternating;
  } else if (rule.rfind("blocks:", 0) == 0) {
    spec.rule = OwnerRule::Blocks;
    spec.blocks = parse_list(rule, 7);
  } else if (rule == "table") {
    spec.rule = OwnerRule::Table;
    for (char ch : j.at("owners").get<std::string>()) {
      if (ch != 'A' && ch != 'B') throw std::invalid_argument("owners must use A/B");
      spec.table.push_back(ch == 'A' ? Party::Alice : Party::Bob);
    }
    if (spec.depth == 0) spec.depth = spec.table.size();
  } else if (rule.rfind("adaptive:", 0) == 0) {
    auto r = parse_list(rule, 9);
    if (r.size() != 2) throw std::invalid_argument("adaptive rule needs [min,max]");
    spec.rule = OwnerRule::Adaptive;
    spec.min_run = r[0];
    spec.max_run = r[1];
  } else if (rule.rfind("segments:", 0) == 0) {
    auto r = parse_list(rule, 9);
    if (r.size() != 2) throw std::invalid_argument("segments rule needs [lo,hi]");
    d.protocol = std::make_shared<GeneratedProtocol>(
        GeneratedProtocol::random_segments(spec.depth, r[0], r[1], spec.owner_seed));
  } else {
    throw std::invalid_argument("unknown owner_rule: " + rule);
  }
  if (!d.protocol) d.protocol = std::make_shared<GeneratedProtocol>(spec);
  if (d.protocol->depth() == 0) throw std::invalid_argument("empty protocol");
  if (j.contains("preferred_edges")) {
    const auto& pe = j.at("preferred_edges");
    if (pe.is_object()) {
      if (pe.contains("alice")) d.inputs.alice = parse_input(pe.at("alice"));
      if (pe.contains("bob")) d.inputs.bob = parse_input(pe.at("bob"));
    } else {
      std::uint64_t seed = pe.get<std::uint64_t>();
      d.inputs.alice.seed = seed;
      d.inputs.bob.seed = seed ^ 0x9e3779b97f4a7c15ull;
    }
  }
  return d;
}

}  // namespace icx::detail
