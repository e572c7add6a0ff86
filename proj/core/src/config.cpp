#include "grpext/config.hpp"

#include <cstdlib>

#include "grpext/errors.hpp"

namespace grpext {

void RunConfig::validate() const {
  if (cap_saut <= 0 || cap_census <= 0 || cap_cohomology == 0)
    throw Error("config: caps must be positive");
}

Backend RunConfig::parse_backend(const std::string& name) {
  if (name == "snf") return Backend::Snf;
  if (name == "exhaustive") return Backend::Exhaustive;
  if (name == "both") return Backend::Both;
  throw Error("config: unknown backend \"" + name + "\"");
}

const char* RunConfig::backend_name(Backend b) {
  switch (b) {
    case Backend::Snf: return "snf";
    case Backend::Exhaustive: return "exhaustive";
    case Backend::Both: return "both";
  }
  return "unknown";
}

RunConfig RunConfig::from_environment() {
  RunConfig c;
  auto env = [](const char* name) -> const char* { return std::getenv(name); };
  if (auto v = env("GRPEXT_CAP_SAUT")) c.cap_saut = std::atoi(v);
  if (auto v = env("GRPEXT_CAP_COHOMOLOGY")) c.cap_cohomology = std::strtoull(v, nullptr, 10);
  if (auto v = env("GRPEXT_CAP_CENSUS")) c.cap_census = std::atoi(v);
  if (auto v = env("GRPEXT_BACKEND")) c.backend = parse_backend(v);
  if (auto v = env("GRPEXT_NORMALIZED")) c.normalized = std::string(v) == "true";
  if (auto v = env("GRPEXT_SEED")) c.seed = std::strtoull(v, nullptr, 10);
  if (auto v = env("GRPEXT_OUT")) c.out_dir = v;
  return c;
}

}  // namespace grpext
