#pragma once

namespace spillresp {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace spillresp
