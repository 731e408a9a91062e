#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "optlab/bits.hpp"
#include "optlab/errors.hpp"

namespace optlab::spaces {

enum class SpaceKind {
    binary_strings,
    saw2d,
    labeled_graphs,
    permutations,
    random_subset,
};

std::string_view kind_token(SpaceKind kind); // "binary", "saw2d", "graphs", "perms", "subset"

/// Names a finite enumerable configuration space.
///
/// Size caps keep full enumeration at desk scale:
///   binary_strings 1..24, saw2d 1..14, labeled_graphs 2..7,
///   permutations 1..8, random_subset m in [1, 2^n].
struct SpaceDescriptor {
    SpaceKind kind = SpaceKind::binary_strings;
    uint32_t n = 1;    // string length / walk steps / node count / permutation length / ambient length
    uint64_t m = 0;    // random_subset: number of sampled strings
    uint64_t seed = 0; // random_subset: sampling seed

    void validate() const;

    /// Text form: binary:{n}, saw2d:{n}, graphs:{n}, perms:{n}, subset:{n}:{m}:{seed}.
    std::string text() const;
    static SpaceDescriptor parse(std::string_view token);

    friend bool operator==(const SpaceDescriptor&, const SpaceDescriptor&) = default;
    friend bool operator<(const SpaceDescriptor& a, const SpaceDescriptor& b) {
        auto key = [](const SpaceDescriptor& d) { return std::tuple(int(d.kind), d.n, d.m, d.seed); };
        return key(a) < key(b);
    }
};

/// One enumerated element. `encoding` is the bijective serialized form
/// (uniquely decodable back to the element); the symmetry-reduced form fed to
/// the complexity estimator comes from canonical_encoding().
struct Configuration {
    SpaceDescriptor space;
    uint64_t index = 0;
    BitString encoding;
};

uint64_t space_size(const SpaceDescriptor& desc);

// saw2d step directions, in enumeration alphabet order.
inline constexpr uint8_t kEast = 0, kNorth = 1, kWest = 2, kSouth = 3;
inline constexpr int kStepDx[4] = {1, 0, -1, 0};
inline constexpr int kStepDy[4] = {0, 1, 0, -1};

/// Random access into one space with its per-descriptor tables resolved once
/// (walk enumeration, subset sample). Immutable and safe to share across
/// threads after construction.
class SpaceAccessor {
public:
    explicit SpaceAccessor(SpaceDescriptor desc);

    const SpaceDescriptor& descriptor() const { return desc_; }
    uint64_t size() const { return size_; }

    Configuration at(uint64_t index) const;
    BitString encoding(uint64_t index) const;

    /// Complexity-estimator form: saw2d walks are reduced to the
    /// lexicographically minimal image over the 8 lattice symmetries; other
    /// kinds serialize as-is.
    BitString canonical_encoding(uint64_t index) const;

    // Decoded views (validity: the kind must match, checked with bounds).
    uint64_t string_value(uint64_t index) const;  // binary_strings / random_subset
    uint64_t graph_mask(uint64_t index) const;    // labeled_graphs upper-triangle bitmask
    uint32_t walk_code(uint64_t index) const;     // 2 bits/step, first step most significant
    void permutation_images(uint64_t index, std::span<uint8_t> out) const; // 1-based

private:
    void check_index(uint64_t index) const;

    SpaceDescriptor desc_;
    uint64_t size_ = 0;
    std::shared_ptr<const std::vector<uint32_t>> walks_;   // saw2d only
    std::shared_ptr<const std::vector<uint64_t>> subset_;  // random_subset only
};

Configuration configuration_at(const SpaceDescriptor& desc, uint64_t index);

/// Bit length of the canonical encoding; constant across a space.
uint32_t canonical_encoding_bits(const SpaceDescriptor& desc);

/// Symmetry-reduced complexity form of a configuration (see SpaceAccessor).
BitString canonical_encoding(const Configuration& config);

/// Minimal image of a direction sequence over the 8 lattice symmetries.
BitString saw_canonical_encoding(std::span<const uint8_t> dirs);

/// Materialized enumeration, index order. Guarded so nobody materializes a
/// multi-million element space by accident; use for_each_configuration there.
std::vector<Configuration> enumerate(const SpaceDescriptor& desc);

template <typename Fn>
void for_each_configuration(const SpaceDescriptor& desc, Fn&& fn) {
    SpaceAccessor acc(desc);
    const uint64_t n = acc.size();
    for (uint64_t i = 0; i < n; ++i) fn(acc.at(i));
}

/// Count of distinct symmetry-reduced walk shapes among the labeled walks.
/// Reported alongside the labeled count; ranking always runs on labeled walks.
uint64_t saw2d_shape_count(uint32_t steps);

} // namespace optlab::spaces
