#pragma once

namespace trmlab {

inline constexpr const char* kArtifactVersion = "0.1.0";

}  // namespace trmlab
