#pragma once

namespace restopo {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace restopo
