#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace pairgen::acceptance {

struct Measurement {
    std::string key;
    double value = 0.0;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    std::string module;
    bool passed = false;
    bool skipped = false;
    double seconds = 0.0;
    std::vector<Measurement> measured;
    std::string note;  // failure reason or extra context

    void add(std::string key, double value) { measured.push_back({std::move(key), value}); }
};

struct SuiteOptions {
    std::uint64_t seed = 20240611;
    // Coarsens the stage-detection grids by 2 and widens its tolerance to +-5.
    bool coarse_stage_grids = false;
};

struct CriterionInfo {
    int id;
    std::string name;
    std::string module;
};

const std::vector<CriterionInfo>& criteria();

/// Runs all criteria whose id, name or module matches a selector (all when
/// `only` is empty). Selectors matching nothing come back as skipped entries.
std::vector<CriterionResult> run_suite(const std::vector<std::string>& only, const SuiteOptions& options = {},
                                       const std::function<void(const CriterionResult&)>& on_result = {});

CriterionResult run_criterion(int id, const SuiteOptions& options = {});

/// "[PASS] 3 bogoliubov_constraint (bogoliubov) max_defect=1.2e-14 ... [0.4 s]"
std::string format_line(const CriterionResult& result);

}  // namespace pairgen::acceptance
