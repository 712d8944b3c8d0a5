#pragma once

namespace lmgq {

inline constexpr const char* kVersion = "0.1.0";

} // namespace lmgq
