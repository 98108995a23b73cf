#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gml/json_io.hpp"

namespace gml {

struct VerifyOptions {
    CurveParams params{2, 3, 5};
    std::uint64_t seed = 42;
    bool full = false;  // adds 5 random parameter triples where a criterion asks for them
    std::vector<int> only;  // empty: all of 1..13
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0.0;
    Json values = Json::object();  // measured quantities; free of timings
    std::string error;
};

struct VerifyReport {
    std::vector<CriterionResult> criteria;
    bool all_pass() const;
    // timings are included only on request so that identical runs give identical bytes
    Json to_json(const VerifyOptions& opt, bool with_timings = false) const;
};

inline constexpr int kCriterionCount = 13;
const char* criterion_name(int id);

std::vector<CurveParams> random_params(std::uint64_t seed, int count);

CriterionResult run_criterion(int id, const VerifyOptions& opt);
VerifyReport run_verify(const VerifyOptions& opt);

} // namespace gml
