#include "optlab/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "optlab/parallel.hpp"
#include "optlab/rng.hpp"
#include "optlab/version.hpp"

namespace optlab::experiments {

namespace {

using nlohmann::json;
using objectives::ObjectiveDescriptor;
using ranking::RankEntry;
using spaces::SpaceDescriptor;

json interval_json(const std::optional<stats::Interval>& ci, bool lo) {
    if (!ci) return nullptr;
    return lo ? ci->lo : ci->hi;
}

// First-index argmax under the tie rule; cheap enough to run per Monte Carlo
// trial without building a table.
RankEntry argmax_scan(const spaces::SpaceAccessor& acc, const ObjectiveDescriptor& obj) {
    RankEntry best{0, objectives::evaluate(obj, acc.at(0))};
    const uint64_t n = acc.size();
    for (uint64_t i = 1; i < n; ++i) {
        const int64_t s = objectives::evaluate(obj, acc.at(i));
        if (s > best.score) best = {i, s};
    }
    return best;
}

std::vector<uint64_t> top_r_indices(const SpaceDescriptor& desc, const ObjectiveDescriptor& obj,
                                    uint64_t r, unsigned threads) {
    const auto table = r <= ranking::kMaxExtremesK
                           ? ranking::select_extremes(desc, obj, r, threads)
                           : ranking::build_rank_table(desc, obj, threads);
    std::vector<uint64_t> indices;
    indices.reserve(size_t(r));
    for (const auto& row : table.top(r)) indices.push_back(row.index);
    return indices;
}

struct ExtremeStanding {
    uint64_t index = 0;
    int64_t score = 0;
    uint32_t phrase_count = 0;
    double normalized = 0.0;
    double percentile_position = 0.0;
    double z = 0.0;
};

ExtremeStanding standing(const spaces::SpaceAccessor& acc, const RankEntry& entry,
                         const complexity::ComplexityProfile& profile) {
    const auto est = complexity::normalized_complexity(acc.at(entry.index));
    ExtremeStanding s;
    s.index = entry.index;
    s.score = entry.score;
    s.phrase_count = est.phrase_count;
    s.normalized = est.normalized;
    s.percentile_position = profile.percentile_position(est.normalized);
    s.z = profile.z_score(est.normalized);
    return s;
}

json standing_json(const spaces::SpaceAccessor& acc, const ExtremeStanding& s) {
    return {
        {"index", s.index},
        {"encoding_hex", acc.encoding(s.index).hex()},
        {"score", s.score},
        {"phrase_count", s.phrase_count},
        {"normalized", s.normalized},
        {"percentile_position", s.percentile_position},
        {"z", s.z},
        {"null_consistent", std::fabs(s.z) < 2.0},
    };
}

json profile_json(const complexity::ComplexityProfile& profile, const ProfileOptions& opts,
                  uint64_t space_size) {
    json percentiles = json::object();
    for (int p : complexity::ComplexityProfile::kPercentiles)
        percentiles[(p < 10 ? "p0" : "p") + std::to_string(p)] = profile.percentile_value(p);
    return {
        {"mean", profile.mean()},
        {"stddev", profile.stddev()},
        {"sample_size", profile.sample_size()},
        {"sampled", profile.sample_size() < space_size},
        {"sample_seed", opts.seed},
        {"percentiles", percentiles},
    };
}

json threshold_json(const complexity::ComplexityProfile& profile, double rank1_normalized,
                    double rank_last_normalized) {
    json out = json::object();
    for (int p : kLowComplexityPercentiles) {
        const LowComplexityThreshold threshold{p, profile.percentile_value(p)};
        out[(p < 10 ? "p0" : "p") + std::to_string(p)] = {
            {"cutoff", threshold.cutoff_value},
            {"rank1_below", rank1_normalized <= threshold.cutoff_value},
            {"rank_last_below", rank_last_normalized <= threshold.cutoff_value},
        };
    }
    return out;
}

std::pair<uint64_t, uint64_t> trial_seeds(uint64_t master, uint64_t trial) {
    return {rng::derive_seed(master, 2 * trial), rng::derive_seed(master, 2 * trial + 1)};
}

// Chunk width for trial-level parallelism: many chunks even at a few hundred
// trials, so --threads has something to chew on.
constexpr uint64_t kTrialChunk = 16;

} // namespace

json ExperimentReport::to_json() const {
    json objs = json::array();
    for (const auto& obj : objectives) objs.push_back(obj.text());
    return {
        {"experiment_id", experiment_id},
        {"space", space.text()},
        {"objectives", objs},
        {"seeds", seeds},
        {"observed", observed},
        {"null_prediction", null_prediction ? json(*null_prediction) : json(nullptr)},
        {"ratio", ratio ? json(*ratio) : json(nullptr)},
        {"ci_lo", interval_json(ci, true)},
        {"ci_hi", interval_json(ci, false)},
        {"threshold_sensitivity", threshold_sensitivity},
        {"software_version", kSoftwareVersion},
    };
}

ExperimentReport rank_complexity_profile(const SpaceDescriptor& desc,
                                         const ObjectiveDescriptor& obj, uint32_t bins,
                                         const ProfileOptions& opts) {
    const auto table = ranking::build_rank_table(desc, obj, opts.threads);
    const uint64_t size = table.space_size();
    if (bins < 8 || bins > 4096) throw ValidationError("bins must be in [8, 4096]");
    if (bins > size) throw ValidationError("more bins than configurations");

    const spaces::SpaceAccessor acc(desc);
    const auto profile = complexity::space_complexity_profile(desc, opts.sample_cap, opts.seed,
                                                              opts.threads);

    // Integer per-bin tallies of phrase counts, merged chunk-by-chunk, keep
    // the bin means independent of the thread count.
    const uint64_t nchunks = parallel::chunk_count(size, parallel::kDefaultChunk);
    std::vector<std::vector<uint64_t>> chunk_sums(static_cast<size_t>(nchunks));
    std::vector<std::vector<uint64_t>> chunk_counts(static_cast<size_t>(nchunks));
    const auto rows = table.rows();
    parallel::for_each_chunk(size, opts.threads, parallel::kDefaultChunk,
                             [&](uint64_t chunk, uint64_t begin, uint64_t end) {
                                 auto& sums = chunk_sums[size_t(chunk)];
                                 auto& counts = chunk_counts[size_t(chunk)];
                                 sums.assign(bins, 0);
                                 counts.assign(bins, 0);
                                 for (uint64_t row = begin; row < end; ++row) {
                                     const uint64_t bin = row * bins / size;
                                     const auto canon =
                                         acc.canonical_encoding(rows[size_t(row)].index);
                                     sums[size_t(bin)] += complexity::lz76_phrase_count(canon);
                                     counts[size_t(bin)] += 1;
                                 }
                             });
    std::vector<uint64_t> bin_sum(bins, 0), bin_count(bins, 0);
    for (uint64_t chunk = 0; chunk < nchunks; ++chunk)
        for (uint32_t b = 0; b < bins; ++b) {
            bin_sum[b] += chunk_sums[size_t(chunk)][b];
            bin_count[b] += chunk_counts[size_t(chunk)][b];
        }

    const uint32_t len = spaces::canonical_encoding_bits(desc);
    const double scale = len <= 2 ? 1.0 : std::log2(double(len)) / double(len);
    json bin_means = json::array(), bin_counts = json::array(), bin_quantiles = json::array();
    for (uint32_t b = 0; b < bins; ++b) {
        bin_means.push_back(scale * double(bin_sum[b]) / double(bin_count[b]));
        bin_counts.push_back(bin_count[b]);
        bin_quantiles.push_back((double(b) + 0.5) / double(bins));
    }

    const auto rank1 = standing(acc, rows.front(), profile);
    const auto rank_last = standing(acc, rows.back(), profile);

    ExperimentReport report;
    report.experiment_id = "E1";
    report.space = desc;
    report.objectives = {table.objective()};
    report.observed = {
        {"kind", "rank_complexity_profile"},
        {"bins", bins},
        {"bin_quantile", bin_quantiles},
        {"bin_mean_normalized", bin_means},
        {"bin_count", bin_counts},
        {"rank1", standing_json(acc, rank1)},
        {"rank_last", standing_json(acc, rank_last)},
        {"profile", profile_json(profile, opts, size)},
    };
    report.threshold_sensitivity = threshold_json(profile, rank1.normalized, rank_last.normalized);
    return report;
}

ExperimentReport coincidence_experiment(const SpaceDescriptor& desc,
                                        const std::vector<ObjectiveDescriptor>& objs,
                                        unsigned threads) {
    if (objs.size() < 2) throw ValidationError("coincidence needs at least two objectives");
    const uint64_t size = spaces::space_size(desc);

    std::vector<uint64_t> optima;
    for (const auto& obj : objs)
        optima.push_back(ranking::select_extremes(desc, obj, 1, threads).rows().front().index);

    const spaces::SpaceAccessor acc(desc);
    json optima_json = json::array(), pairs = json::array();
    for (size_t i = 0; i < objs.size(); ++i)
        optima_json.push_back({{"objective", objs[i].text()},
                               {"optimum_index", optima[i]},
                               {"encoding_hex", acc.encoding(optima[i]).hex()}});
    uint64_t coincident = 0, pair_count = 0;
    for (size_t i = 0; i < objs.size(); ++i)
        for (size_t j = i + 1; j < objs.size(); ++j) {
            const bool same = optima[i] == optima[j];
            coincident += same;
            ++pair_count;
            pairs.push_back({{"a", objs[i].text()},
                             {"b", objs[j].text()},
                             {"a_optimum", optima[i]},
                             {"b_optimum", optima[j]},
                             {"coincide", same}});
        }

    const double fraction = double(coincident) / double(pair_count);
    ExperimentReport report;
    report.experiment_id = "E2";
    report.space = desc;
    report.objectives = objs;
    report.observed = {
        {"kind", "coincidence"},
        {"pair_count", pair_count},
        {"coincident_pairs", coincident},
        {"fraction", fraction},
        {"optima", optima_json},
        {"pairs", pairs},
    };
    report.null_prediction = 1.0 / double(size);
    report.ratio = fraction * double(size);
    return report;
}

ExperimentReport random_null_monte_carlo(const SpaceDescriptor& desc, uint64_t trials,
                                         uint64_t master_seed, unsigned threads) {
    if (trials < 100) throw ValidationError("null Monte Carlo needs at least 100 trials");
    const spaces::SpaceAccessor acc(desc);
    const uint64_t size = acc.size();

    const uint64_t nchunks = parallel::chunk_count(trials, kTrialChunk);
    std::vector<uint64_t> chunk_hits(size_t(nchunks), 0);
    parallel::for_each_chunk(trials, threads, kTrialChunk,
                             [&](uint64_t chunk, uint64_t begin, uint64_t end) {
                                 uint64_t hits = 0;
                                 for (uint64_t t = begin; t < end; ++t) {
                                     const auto [sa, sb] = trial_seeds(master_seed, t);
                                     const auto fa = objectives::random_function(sa);
                                     const auto fb = objectives::random_function(sb);
                                     hits += argmax_scan(acc, fa).index ==
                                             argmax_scan(acc, fb).index;
                                 }
                                 chunk_hits[size_t(chunk)] = hits;
                             });
    uint64_t coincidences = 0;
    for (uint64_t h : chunk_hits) coincidences += h;

    const double rate = double(coincidences) / double(trials);
    ExperimentReport report;
    report.experiment_id = "E2";
    report.space = desc;
    report.seeds = {master_seed};
    report.observed = {
        {"kind", "null_coincidence_mc"},
        {"trials", trials},
        {"coincidences", coincidences},
        {"rate", rate},
    };
    report.null_prediction = 1.0 / double(size);
    report.ratio = rate * double(size);
    report.ci = stats::clopper_pearson(coincidences, trials);
    return report;
}

ExperimentReport top_r_overlap(const SpaceDescriptor& desc, const ObjectiveDescriptor& f1,
                               const ObjectiveDescriptor& f2, uint64_t r, unsigned threads) {
    const uint64_t size = spaces::space_size(desc);
    if (r < 1 || r > size) throw ValidationError("r must be in [1, |X|]");

    const uint64_t f1_optimum = ranking::select_extremes(desc, f1, 1, threads).rows().front().index;
    auto top1 = top_r_indices(desc, f1, r, threads);
    auto top2 = top_r_indices(desc, f2, r, threads);
    const bool member = std::find(top2.begin(), top2.end(), f1_optimum) != top2.end();

    std::sort(top1.begin(), top1.end());
    std::sort(top2.begin(), top2.end());
    std::vector<uint64_t> both;
    std::set_intersection(top1.begin(), top1.end(), top2.begin(), top2.end(),
                          std::back_inserter(both));

    ExperimentReport report;
    report.experiment_id = "E3";
    report.space = desc;
    report.objectives = {f1, f2};
    report.observed = {
        {"kind", "top_r_overlap"},
        {"r", r},
        {"f1_optimum", f1_optimum},
        {"indicator", member ? 1 : 0},
        {"intersection_size", both.size()},
    };
    report.null_prediction = double(r) / double(size);
    report.ratio = (member ? 1.0 : 0.0) / *report.null_prediction;
    return report;
}

ExperimentReport top_r_overlap_monte_carlo(const SpaceDescriptor& desc, uint64_t trials,
                                           uint64_t r, uint64_t master_seed, unsigned threads) {
    if (trials < 100) throw ValidationError("overlap Monte Carlo needs at least 100 trials");
    const spaces::SpaceAccessor acc(desc);
    const uint64_t size = acc.size();
    if (r < 1 || r > size) throw ValidationError("r must be in [1, |X|]");
    if (r > ranking::kMaxExtremesK)
        throw ValidationError("Monte Carlo overlap caps r at 4096");

    const uint64_t nchunks = parallel::chunk_count(trials, kTrialChunk);
    std::vector<uint64_t> chunk_hits(size_t(nchunks), 0);
    parallel::for_each_chunk(
        trials, threads, kTrialChunk, [&](uint64_t chunk, uint64_t begin, uint64_t end) {
            uint64_t hits = 0;
            for (uint64_t t = begin; t < end; ++t) {
                const auto [sa, sb] = trial_seeds(master_seed, t);
                const uint64_t best = argmax_scan(acc, objectives::random_function(sa)).index;
                const auto top2 = top_r_indices(desc, objectives::random_function(sb), r, 1);
                hits += std::find(top2.begin(), top2.end(), best) != top2.end();
            }
            chunk_hits[size_t(chunk)] = hits;
        });
    uint64_t hits = 0;
    for (uint64_t h : chunk_hits) hits += h;

    const double mean = double(hits) / double(trials);
    ExperimentReport report;
    report.experiment_id = "E3";
    report.space = desc;
    report.seeds = {master_seed};
    report.observed = {
        {"kind", "top_r_overlap_mc"},
        {"trials", trials},
        {"r", r},
        {"hits", hits},
        {"mean_indicator", mean},
    };
    report.null_prediction = double(r) / double(size);
    report.ratio = mean / *report.null_prediction;
    report.ci = stats::clopper_pearson(hits, trials);
    return report;
}

ExperimentReport extrema_experiment(const SpaceDescriptor& desc, const ObjectiveDescriptor& obj,
                                    const ProfileOptions& opts) {
    const auto table = ranking::build_rank_table(desc, obj, opts.threads);
    const auto neg_table = ranking::build_rank_table(desc, objectives::negate(obj), opts.threads);
    const auto rows = table.rows();
    const auto neg_rows = neg_table.rows();
    const uint64_t size = table.space_size();

    // Tie census over the sorted score sequence.
    uint64_t groups_with_ties = 0, tied_elements = 0, largest_group = 1;
    uint64_t at_max = 1, at_min = 1, run = 1;
    for (uint64_t row = 1; row <= size; ++row) {
        if (row < size && rows[size_t(row)].score == rows[size_t(row - 1)].score) {
            ++run;
            continue;
        }
        if (rows[size_t(row - 1)].score == rows.front().score) at_max = std::max(at_max, run);
        if (rows[size_t(row - 1)].score == rows.back().score) at_min = std::max(at_min, run);
        if (run > 1) {
            ++groups_with_ties;
            tied_elements += run;
            largest_group = std::max(largest_group, run);
        }
        run = 1;
    }
    const bool distinct = groups_with_ties == 0;

    bool reversal = true;
    if (distinct)
        for (uint64_t row = 0; row < size; ++row)
            if (rows[size_t(row)].index != neg_rows[size_t(size - 1 - row)].index) {
                reversal = false;
                break;
            }

    const spaces::SpaceAccessor acc(desc);
    const auto profile = complexity::space_complexity_profile(desc, opts.sample_cap, opts.seed,
                                                              opts.threads);
    const auto best = standing(acc, rows.front(), profile);
    const auto worst = standing(acc, rows.back(), profile);

    ExperimentReport report;
    report.experiment_id = "E4";
    report.space = desc;
    report.objectives = {table.objective()};
    report.observed = {
        {"kind", "extrema"},
        {"distinct_values", distinct},
        {"tie_groups",
         {{"groups_with_ties", groups_with_ties},
          {"tied_elements", tied_elements},
          {"largest", largest_group},
          {"at_max", at_max},
          {"at_min", at_min}}},
        {"reversal_holds", distinct ? json(reversal) : json(nullptr)},
        {"optimum", standing_json(acc, best)},
        {"worst", standing_json(acc, worst)},
        {"profile", profile_json(profile, opts, size)},
    };
    report.threshold_sensitivity = threshold_json(profile, best.normalized, worst.normalized);
    return report;
}

ExperimentReport complex_control_experiment(const SpaceDescriptor& desc,
                                            const ObjectiveDescriptor& obj,
                                            const std::vector<uint64_t>& seeds,
                                            const ProfileOptions& opts) {
    if (!obj.is_complex())
        throw ApplicabilityError("control experiment needs a complex objective, got " + obj.text());
    if (seeds.empty()) throw ValidationError("control experiment needs at least one seed");

    const spaces::SpaceAccessor acc(desc);
    const auto profile = complexity::space_complexity_profile(desc, opts.sample_cap, opts.seed,
                                                              opts.threads);

    json per_seed = json::array();
    uint64_t within = 0;
    std::vector<ObjectiveDescriptor> used;
    for (uint64_t seed : seeds) {
        ObjectiveDescriptor seeded = obj;
        seeded.seed = seed;
        const auto table = ranking::select_extremes(desc, seeded, 1, opts.threads);
        const auto s = standing(acc, table.rows().front(), profile);
        const bool ok = std::fabs(s.z) < 2.0;
        within += ok;
        per_seed.push_back({{"seed", seed},
                            {"optimum_index", s.index},
                            {"encoding_hex", acc.encoding(s.index).hex()},
                            {"normalized", s.normalized},
                            {"percentile_position", s.percentile_position},
                            {"z", s.z},
                            {"within", ok}});
        if (used.empty()) used.push_back(table.objective());
    }

    ExperimentReport report;
    report.experiment_id = "E5";
    report.space = desc;
    report.objectives = used;
    report.seeds = seeds;
    report.observed = {
        {"kind", "complex_control"},
        {"z_threshold", 2.0},
        {"within_count", within},
        {"fraction_within", double(within) / double(seeds.size())},
        {"per_seed", per_seed},
        {"profile", profile_json(profile, opts, acc.size())},
    };
    report.ci = stats::clopper_pearson(within, seeds.size());
    return report;
}

} // namespace optlab::experiments
