#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace wb {

struct CaseFailure {
    std::string id;      // "<suite>/<configuration>/<property>/<sample>"
    std::string inputs;  // the sampled operands, enough to replay the case
    std::string lhs, rhs;
};

struct Report {
    std::string suite;
    std::uint64_t cases_run = 0;
    std::vector<CaseFailure> failures;  // sorted by id
    std::uint64_t seed = 0;
    std::int64_t runtime_ms = 0;

    bool ok() const { return failures.empty(); }
};

struct VerifyOptions {
    std::uint64_t seed = 0;
    int samples = 4;    // random samples per configuration
    int magnitude = 3;  // bound on sampled integers and term counts
};

/// rings, ghosts, diagrams, indres, qpolys, qrings, artinhasse, cyclic-identities
const std::vector<std::string>& suite_names();
/// One of suite_names() or "all". Unknown names raise InvalidArgument.
Report run_suite(const std::string& name, const VerifyOptions& opt);

} // namespace wb
