#pragma once

namespace floq {

inline constexpr const char* version_string = "1.0.0";

} // namespace floq
