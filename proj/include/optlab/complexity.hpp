#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "optlab/bits.hpp"
#include "optlab/spaces.hpp"

namespace optlab::complexity {

/// Phrases in the LZ76 exhaustive-history parsing (Kaspar–Schuster procedure).
/// The trailing partial phrase counts as one phrase. 1 <= result <= length.
uint32_t lz76_phrase_count(const BitString& bits);
uint32_t lz76_phrase_count(std::string_view bits); // '0'/'1' characters

/// phrase_count * log2(len) / len; plain phrase_count when len <= 2.
/// Within a space every encoding shares one len, so normalized values order
/// exactly like phrase counts.
double normalize(uint32_t phrase_count, uint32_t len);

struct ComplexityEstimate {
    uint32_t phrase_count = 0;
    double normalized = 0.0;
};

/// Estimate on the symmetry-reduced encoding of a configuration.
ComplexityEstimate normalized_complexity(const spaces::Configuration& config);

/// Distribution of normalized complexity across one space (full or sampled).
/// Backed by an exact phrase-count histogram: every statistic derives from
/// integer tallies, so profiles are bit-identical however they were built.
class ComplexityProfile {
public:
    static constexpr int kPercentiles[9] = {1, 5, 10, 25, 50, 75, 90, 95, 99};
    using Histogram = std::array<uint64_t, BitString::kMaxBits + 1>; // index = phrase count

    ComplexityProfile(spaces::SpaceDescriptor space, uint32_t encoding_bits, Histogram counts);

    const spaces::SpaceDescriptor& space() const { return space_; }
    uint64_t sample_size() const { return total_; }
    uint32_t encoding_bits() const { return bits_; }

    double mean() const;
    double stddev() const; // population

    /// Nearest-rank percentile: normalized value of the smallest phrase count
    /// whose cumulative tally reaches ceil(p * N / 100). p in [1, 99].
    double percentile_value(int percentile) const;

    /// Inclusive CDF in percent: 100 * #{v <= normalized} / N.
    double percentile_position(double normalized) const;

    /// (normalized - mean) / stddev; 0 when the distribution is degenerate.
    double z_score(double normalized) const;

private:
    spaces::SpaceDescriptor space_;
    uint32_t bits_;
    Histogram counts_;
    uint64_t total_ = 0, sum_ = 0, sumsq_ = 0;
};

/// Full-space profile when the space fits under sample_cap, else a seeded
/// uniform sample without replacement of exactly sample_cap indices.
/// sample_cap >= 1000. Deterministic for any thread count.
ComplexityProfile space_complexity_profile(const spaces::SpaceDescriptor& desc,
                                           uint64_t sample_cap, uint64_t seed,
                                           unsigned threads = 1);

} // namespace optlab::complexity
