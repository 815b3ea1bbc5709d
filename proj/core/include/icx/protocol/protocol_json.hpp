#pragma once

#include <string>
#include <string_view>

#include "icx/protocol/tree.hpp"

namespace icx::protocol {

struct ProtocolDescription {
  ProtocolPtr protocol;
  Inputs inputs;
};

// Document shape:
//   {"depth": n,
//    "owner_rule": "alternating" | "blocks:[l0,l1,..]" | "table" |
//                  "adaptive:[min,max]" | "segments:[lo,hi]",
//    "owners": "ABBA..."             (table rule only),
//    "owner_seed": 7                 (adaptive and segments rules),
//    "preferred_edges": {"alice": seed | "0101..", "bob": seed | "..."}}
ProtocolDescription parse_protocol_json(std::string_view text);

}  // namespace icx::protocol
