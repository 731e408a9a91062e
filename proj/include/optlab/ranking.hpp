#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "optlab/objectives.hpp"
#include "optlab/spaces.hpp"

namespace optlab::ranking {

/// Full-table size bound; larger spaces go through select_extremes.
inline constexpr uint64_t kFullModeCapacity = uint64_t{1} << 22;
inline constexpr uint64_t kMaxExtremesK = 4096;

struct RankEntry {
    uint64_t index = 0;
    objectives::Score score = 0;

    friend bool operator==(const RankEntry&, const RankEntry&) = default;
};

/// Descending-optimality order: score strictly nonincreasing, ties broken by
/// ascending enumeration index. Immutable once built.
///
/// Full mode holds every configuration and answers rank_of. Extremes mode
/// holds the top-k and bottom-k rows only (identical to the corresponding
/// full-table rows); rank_of is unavailable there.
class RankTable {
public:
    enum class Mode { full, extremes };

    RankTable(spaces::SpaceDescriptor space, objectives::ObjectiveDescriptor objective, Mode mode,
              uint64_t space_size, uint64_t k, std::vector<RankEntry> rows);

    Mode mode() const { return mode_; }
    const spaces::SpaceDescriptor& space() const { return space_; }
    const objectives::ObjectiveDescriptor& objective() const { return objective_; }
    uint64_t space_size() const { return size_; }
    uint64_t extremes_k() const { return k_; }

    /// Stored rows in rank order. Full mode: all of them. Extremes mode: the
    /// top block then the bottom block (the whole space when 2k covers it).
    std::span<const RankEntry> rows() const { return rows_; }
    bool complete() const { return rows_.size() == size_; }

    uint64_t rank_at_row(size_t row) const; // 1-based rank of rows()[row]
    RankEntry at_rank(uint64_t rank) const; // 1-based; throws QueryError if not held

    std::span<const RankEntry> top(uint64_t count) const;
    std::span<const RankEntry> bottom(uint64_t count) const;

    /// Unique rank of an index. Full mode only.
    uint64_t rank_of(uint64_t index) const;

private:
    spaces::SpaceDescriptor space_;
    objectives::ObjectiveDescriptor objective_;
    Mode mode_;
    uint64_t size_ = 0; // |X|, not the stored row count
    uint64_t k_ = 0;    // extremes block size
    std::vector<RankEntry> rows_;
    std::vector<uint32_t> inverse_; // full mode: index -> rank
};

/// The exact full ranking. Requires space_size <= 2^22.
RankTable build_rank_table(const spaces::SpaceDescriptor& desc,
                           const objectives::ObjectiveDescriptor& obj, unsigned threads = 1);

/// Streaming top-k/bottom-k with the same ordering rule, bounded memory.
/// 1 <= k <= 4096.
RankTable select_extremes(const spaces::SpaceDescriptor& desc,
                          const objectives::ObjectiveDescriptor& obj, uint64_t k,
                          unsigned threads = 1);

/// Rank-1 configuration.
spaces::Configuration optimum(const RankTable& table);

/// Tie-rule comparator: better scores first, enumeration order among equals.
inline bool rank_before(const RankEntry& a, const RankEntry& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.index < b.index;
}

} // namespace optlab::ranking
