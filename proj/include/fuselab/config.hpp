#pragma once

namespace fuselab {

// Global size caps, overridable through the environment:
//   FUSELAB_MAX_ORDER      largest group order accepted (default 1000)
//   FUSELAB_MAX_SYLOW      largest p-group a fusion system may live over (default 64)
//   FUSELAB_MAX_SUBGROUPS  cap on enumerated subgroups (default 5000)
struct Limits {
  int max_order = 1000;
  int max_sylow = 64;
  int max_subgroups = 5000;
};

const Limits& limits();

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fuselab
