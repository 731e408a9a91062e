#include "optlab/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "optlab/parallel.hpp"
#include "optlab/rng.hpp"

namespace optlab::complexity {

namespace {

// Kaspar–Schuster scan for the LZ76 exhaustive-history phrase count.
// `at` is 0-indexed symbol access.
template <typename At>
uint32_t phrase_count_impl(uint64_t n, At at) {
    if (n == 0) throw EmptyInputError("complexity of an empty sequence is undefined");
    if (n == 1) return 1;
    uint32_t c = 1;
    uint64_t l = 1, i = 0, k = 1, kmax = 1;
    while (true) {
        if (at(i + k - 1) == at(l + k - 1)) {
            ++k;
            if (l + k > n) {
                ++c;
                break;
            }
        } else {
            kmax = std::max(kmax, k);
            ++i;
            if (i == l) {
                ++c;
                l += kmax;
                if (l + 1 > n) break;
                i = 0;
                k = 1;
                kmax = 1;
            } else {
                k = 1;
            }
        }
    }
    return c;
}

} // namespace

uint32_t lz76_phrase_count(const BitString& bits) {
    return phrase_count_impl(bits.size(), [&](uint64_t i) { return bits.bit(uint32_t(i)); });
}

uint32_t lz76_phrase_count(std::string_view bits) {
    for (char ch : bits)
        if (ch != '0' && ch != '1')
            throw ValidationError("bit sequence must contain only '0'/'1'");
    return phrase_count_impl(bits.size(), [&](uint64_t i) { return bits[size_t(i)]; });
}

double normalize(uint32_t phrase_count, uint32_t len) {
    if (len <= 2) return double(phrase_count);
    return double(phrase_count) * std::log2(double(len)) / double(len);
}

ComplexityEstimate normalized_complexity(const spaces::Configuration& config) {
    const BitString canon = spaces::canonical_encoding(config);
    const uint32_t c = lz76_phrase_count(canon);
    return {c, normalize(c, canon.size())};
}

ComplexityProfile::ComplexityProfile(spaces::SpaceDescriptor space, uint32_t encoding_bits,
                                     Histogram counts)
    : space_(space), bits_(encoding_bits), counts_(counts) {
    for (uint32_t c = 0; c < counts_.size(); ++c) {
        total_ += counts_[c];
        sum_ += counts_[c] * c;
        sumsq_ += counts_[c] * uint64_t(c) * c;
    }
    if (total_ == 0) throw EmptyInputError("complexity profile over zero samples");
}

double ComplexityProfile::mean() const {
    const double mean_count = double(sum_) / double(total_);
    if (bits_ <= 2) return mean_count;
    return mean_count * std::log2(double(bits_)) / double(bits_);
}

double ComplexityProfile::stddev() const {
    const double ex = double(sum_) / double(total_);
    const double ex2 = double(sumsq_) / double(total_);
    const double var_count = std::max(0.0, ex2 - ex * ex);
    const double scale = bits_ <= 2 ? 1.0 : std::log2(double(bits_)) / double(bits_);
    return scale * std::sqrt(var_count);
}

double ComplexityProfile::percentile_value(int percentile) const {
    if (percentile < 1 || percentile > 99) throw ValidationError("percentile must be in [1, 99]");
    const uint64_t need = (uint64_t(percentile) * total_ + 99) / 100; // ceil(p*N/100)
    uint64_t cum = 0;
    for (uint32_t c = 0; c < counts_.size(); ++c) {
        cum += counts_[c];
        if (cum >= need) return normalize(c, bits_);
    }
    throw ValidationError("histogram exhausted before percentile rank");
}

double ComplexityProfile::percentile_position(double normalized) const {
    uint64_t at_or_below = 0;
    for (uint32_t c = 0; c < counts_.size(); ++c)
        if (counts_[c] > 0 && normalize(c, bits_) <= normalized) at_or_below += counts_[c];
    return 100.0 * double(at_or_below) / double(total_);
}

double ComplexityProfile::z_score(double normalized) const {
    const double sd = stddev();
    if (sd == 0.0) return 0.0;
    return (normalized - mean()) / sd;
}

ComplexityProfile space_complexity_profile(const spaces::SpaceDescriptor& desc,
                                           uint64_t sample_cap, uint64_t seed, unsigned threads) {
    if (sample_cap < 1000) throw ValidationError("sample_cap must be at least 1000");
    const spaces::SpaceAccessor acc(desc);
    const uint64_t size = acc.size();

    std::vector<uint64_t> sampled;
    const bool full = size <= sample_cap;
    if (!full) sampled = rng::sample_without_replacement(size, sample_cap, seed);
    const uint64_t total = full ? size : sample_cap;

    const uint64_t nchunks = parallel::chunk_count(total, parallel::kDefaultChunk);
    std::vector<ComplexityProfile::Histogram> partial(static_cast<size_t>(nchunks));
    for (auto& h : partial) h.fill(0);

    parallel::for_each_chunk(total, threads, parallel::kDefaultChunk,
                             [&](uint64_t chunk, uint64_t begin, uint64_t end) {
                                 auto& hist = partial[size_t(chunk)];
                                 for (uint64_t i = begin; i < end; ++i) {
                                     const uint64_t index = full ? i : sampled[size_t(i)];
                                     hist[lz76_phrase_count(acc.canonical_encoding(index))]++;
                                 }
                             });

    ComplexityProfile::Histogram counts{};
    for (const auto& h : partial)
        for (size_t c = 0; c < counts.size(); ++c) counts[c] += h[c];
    return {desc, spaces::canonical_encoding_bits(desc), counts};
}

} // namespace optlab::complexity
