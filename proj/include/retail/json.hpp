#pragma once

#include <json.hpp>

namespace retail {

// Insertion-ordered JSON keeps serialized key order stable for golden files.
using Json = nlohmann::ordered_json;

}  // namespace retail
