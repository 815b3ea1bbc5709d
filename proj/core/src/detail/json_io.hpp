#pragma once

#include <json.hpp>

#include "icx/protocol/protocol_json.hpp"

namespace icx::detail {

using json = nlohmann::json;

protocol::ProtocolDescription protocol_from_json(const json& j);

}  // namespace icx::detail
