#pragma once

#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

namespace mvcs {

// Pretty-printed JSON with object keys in sorted order and every float at
// 17 significant digits. Output ends with a newline.
void write_json(std::ostream& out, const nlohmann::json& value);
std::string dump_json(const nlohmann::json& value);

}  // namespace mvcs
