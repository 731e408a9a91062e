#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "optlab/complexity.hpp"
#include "optlab/objectives.hpp"
#include "optlab/ranking.hpp"
#include "optlab/spaces.hpp"
#include "optlab/stats.hpp"

namespace optlab::experiments {

/// Percentile thresholds standing in for the "simple set": conclusions are
/// reported at all four so they can be judged threshold-robust.
inline constexpr int kLowComplexityPercentiles[4] = {1, 5, 10, 25};

struct LowComplexityThreshold {
    int percentile = 25;
    double cutoff_value = 0.0;
};

/// One experiment outcome, serializable with a fixed top-level key set.
/// `observed` carries the per-experiment statistics and a "kind" tag.
struct ExperimentReport {
    std::string experiment_id; // E1..E5
    spaces::SpaceDescriptor space;
    std::vector<objectives::ObjectiveDescriptor> objectives;
    std::vector<uint64_t> seeds;
    nlohmann::json observed = nlohmann::json::object();
    std::optional<double> null_prediction;
    std::optional<double> ratio; // observed / null
    std::optional<stats::Interval> ci;
    nlohmann::json threshold_sensitivity; // null unless complexity thresholds apply

    /// Fixed keys: experiment_id, space, objectives, seeds, observed,
    /// null_prediction, ratio, ci_lo, ci_hi, threshold_sensitivity,
    /// software_version.
    nlohmann::json to_json() const;
};

struct ProfileOptions {
    uint64_t sample_cap = 1'000'000;
    uint64_t seed = 1; // profile sampling seed (used only above the cap)
    unsigned threads = 1;
};

/// E1: complexity along the rank axis. Mean normalized complexity per
/// rank-quantile bin plus both extremes' standing in the space profile.
ExperimentReport rank_complexity_profile(const spaces::SpaceDescriptor& desc,
                                         const objectives::ObjectiveDescriptor& obj,
                                         uint32_t bins, const ProfileOptions& opts = {});

/// E2: do distinct simple objectives share optima? One flag per unordered
/// pair against the 1/|X| null.
ExperimentReport coincidence_experiment(const spaces::SpaceDescriptor& desc,
                                        const std::vector<objectives::ObjectiveDescriptor>& objs,
                                        unsigned threads = 1);

/// E2 null calibration: seeded random-function pairs, coincidence rate with
/// exact binomial CI. trials >= 100.
ExperimentReport random_null_monte_carlo(const spaces::SpaceDescriptor& desc, uint64_t trials,
                                         uint64_t master_seed, unsigned threads = 1);

/// E3: is f1's optimum among f2's top r? Indicator and top-r intersection
/// against the r/|X| null.
ExperimentReport top_r_overlap(const spaces::SpaceDescriptor& desc,
                               const objectives::ObjectiveDescriptor& f1,
                               const objectives::ObjectiveDescriptor& f2, uint64_t r,
                               unsigned threads = 1);

/// E3 null calibration over seeded random-function pairs. trials >= 100.
ExperimentReport top_r_overlap_monte_carlo(const spaces::SpaceDescriptor& desc, uint64_t trials,
                                           uint64_t r, uint64_t master_seed, unsigned threads = 1);

/// E4: extremes under f and -f. Order reversal when values are distinct
/// (tie-group tallies otherwise) and both extremes' complexity standing.
ExperimentReport extrema_experiment(const spaces::SpaceDescriptor& desc,
                                    const objectives::ObjectiveDescriptor& obj,
                                    const ProfileOptions& opts = {});

/// E5: complex objectives only. Optimum complexity z-scores across seeds;
/// the prediction is the absence of suppression (|z| < 2 for most seeds).
ExperimentReport complex_control_experiment(const spaces::SpaceDescriptor& desc,
                                            const objectives::ObjectiveDescriptor& obj,
                                            const std::vector<uint64_t>& seeds,
                                            const ProfileOptions& opts = {});

} // namespace optlab::experiments
