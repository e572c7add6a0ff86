#ifndef GRPEXT_CONFIG_HPP
#define GRPEXT_CONFIG_HPP

#include <string>

#include "grpext/cohomology.hpp"

namespace grpext {

inline constexpr const char* kVersion = "0.1.0";

/// Runtime configuration shared by the CLI and the long-running checks.
/// Environment variables (GRPEXT_ prefix, uppercased flag names) override
/// the defaults; explicit flags override both.
struct RunConfig {
  int cap_saut = 12;
  unsigned long long cap_cohomology = 1ull << 18;
  int cap_census = 16;
  Backend backend = Backend::Both;
  bool normalized = false;
  unsigned long long seed = 20240915;
  std::string out_dir = ".";

  void validate() const;  // throws Error on nonsense values

  static RunConfig from_environment();
  static Backend parse_backend(const std::string& name);
  static const char* backend_name(Backend b);
};

}  // namespace grpext

#endif
