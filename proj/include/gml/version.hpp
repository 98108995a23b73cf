#pragma once

namespace gml {

inline constexpr const char* kVersion = "0.1.0";

} // namespace gml
