#pragma once

namespace poisson_approx {

inline constexpr const char* artifact_version = "0.1.0";

}  // namespace poisson_approx
