#pragma once

namespace thermodec {

inline constexpr const char* version = "0.1.0";

}  // namespace thermodec
