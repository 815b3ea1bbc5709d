#pragma once

namespace icx {

// Embedded in every artifact the tools write.
const char* version_string();

}  // namespace icx
