#pragma once

namespace bkalg {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace bkalg
