#pragma once

namespace cokatz {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace cokatz
