// jobs.hpp — run a parsed job and write its outputs
#pragma once

#include <string>

#include "jobconfig.hpp"

namespace omcsim::cli {

struct JobResult {
  std::string primary_path;  // CSV or JSON written
  std::string sidecar_path;  // resolved-config echo
};

// runs the job, writing the primary output and a "<output>.meta.json" sidecar;
// both writes are atomic (temp file + rename) and fully deterministic
JobResult run_job(const JobConfig& cfg, bool verbose);

}  // namespace omcsim::cli
