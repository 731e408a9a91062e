#include "optlab/ranking.hpp"

#include <algorithm>
#include <string>

#include "optlab/parallel.hpp"

namespace optlab::ranking {

namespace {

objectives::ObjectiveDescriptor bind(const spaces::SpaceDescriptor& desc,
                                     objectives::ObjectiveDescriptor obj) {
    if (!objectives::applies_to(obj, desc.kind))
        throw ApplicabilityError("objective " + obj.text() + " is not defined on " + desc.text());
    if (obj.family == objectives::Family::random_affinity && obj.table_n == 0)
        obj.table_n = desc.n;
    return obj;
}

// Chunk size for streaming extremes; large enough that a chunk always covers
// one full top-k block.
constexpr uint64_t kExtremesChunk = uint64_t{1} << 16;

} // namespace

RankTable::RankTable(spaces::SpaceDescriptor space, objectives::ObjectiveDescriptor objective,
                     Mode mode, uint64_t space_size, uint64_t k, std::vector<RankEntry> rows)
    : space_(space), objective_(objective), mode_(mode), size_(space_size), k_(k),
      rows_(std::move(rows)) {
    if (mode_ == Mode::full) {
        inverse_.assign(size_t(size_), 0);
        for (size_t row = 0; row < rows_.size(); ++row)
            inverse_[size_t(rows_[row].index)] = uint32_t(row + 1);
    }
}

uint64_t RankTable::rank_at_row(size_t row) const {
    if (row >= rows_.size()) throw BoundsError("row out of range");
    if (complete() || row < k_) return row + 1;
    return size_ - (rows_.size() - 1 - row); // bottom block, rank order
}

RankEntry RankTable::at_rank(uint64_t rank) const {
    if (rank < 1 || rank > size_) throw BoundsError("rank must be in [1, |X|]");
    if (complete() || rank <= k_) {
        if (rank <= rows_.size()) return rows_[size_t(rank - 1)];
    } else if (rank > size_ - k_) {
        return rows_[size_t(rows_.size() - (size_ - rank) - 1)];
    }
    throw QueryError("rank " + std::to_string(rank) + " not held by an extremes(k=" +
                     std::to_string(k_) + ") table");
}

std::span<const RankEntry> RankTable::top(uint64_t count) const {
    const uint64_t have = complete() ? size_ : k_;
    if (count > have)
        throw QueryError("table holds only the top " + std::to_string(have) + " rows");
    return {rows_.data(), size_t(count)};
}

std::span<const RankEntry> RankTable::bottom(uint64_t count) const {
    const uint64_t have = complete() ? size_ : k_;
    if (count > have)
        throw QueryError("table holds only the bottom " + std::to_string(have) + " rows");
    return {rows_.data() + rows_.size() - size_t(count), size_t(count)};
}

uint64_t RankTable::rank_of(uint64_t index) const {
    if (mode_ != Mode::full)
        throw QueryError("rank_of needs a full table; extremes tables hold only the ends");
    if (index >= size_) throw BoundsError("index out of range");
    return inverse_[size_t(index)];
}

RankTable build_rank_table(const spaces::SpaceDescriptor& desc,
                           const objectives::ObjectiveDescriptor& obj, unsigned threads) {
    const auto bound = bind(desc, obj);
    const spaces::SpaceAccessor acc(desc);
    const uint64_t size = acc.size();
    if (size > kFullModeCapacity)
        throw CapacityError("space " + desc.text() + " has " + std::to_string(size) +
                            " elements, above the full-table bound of 2^22; use select_extremes");

    std::vector<RankEntry> rows(static_cast<size_t>(size));
    parallel::for_each_chunk(size, threads, parallel::kDefaultChunk,
                             [&](uint64_t, uint64_t begin, uint64_t end) {
                                 for (uint64_t i = begin; i < end; ++i)
                                     rows[size_t(i)] = {i, objectives::evaluate(bound, acc.at(i))};
                             });
    // (score, index) keys are unique, so any comparison sort yields one order.
    std::sort(rows.begin(), rows.end(), rank_before);
    return {desc, bound, RankTable::Mode::full, size, size, std::move(rows)};
}

RankTable select_extremes(const spaces::SpaceDescriptor& desc,
                          const objectives::ObjectiveDescriptor& obj, uint64_t k,
                          unsigned threads) {
    if (k < 1 || k > kMaxExtremesK)
        throw ValidationError("extremes k must be in [1, 4096]");
    const auto bound = bind(desc, obj);
    const spaces::SpaceAccessor acc(desc);
    const uint64_t size = acc.size();
    const uint64_t keep = std::min(k, size);

    struct Block {
        std::vector<RankEntry> top, bottom;
    };
    const uint64_t nchunks = parallel::chunk_count(size, kExtremesChunk);
    std::vector<Block> partial(static_cast<size_t>(nchunks));

    parallel::for_each_chunk(size, threads, kExtremesChunk,
                             [&](uint64_t chunk, uint64_t begin, uint64_t end) {
                                 std::vector<RankEntry> local;
                                 local.reserve(size_t(end - begin));
                                 for (uint64_t i = begin; i < end; ++i)
                                     local.push_back({i, objectives::evaluate(bound, acc.at(i))});
                                 std::sort(local.begin(), local.end(), rank_before);
                                 auto& out = partial[size_t(chunk)];
                                 const size_t take = std::min<size_t>(size_t(keep), local.size());
                                 out.top.assign(local.begin(), local.begin() + take);
                                 out.bottom.assign(local.end() - take, local.end());
                             });

    std::vector<RankEntry> tops, bottoms;
    for (const auto& block : partial) {
        tops.insert(tops.end(), block.top.begin(), block.top.end());
        bottoms.insert(bottoms.end(), block.bottom.begin(), block.bottom.end());
    }
    std::sort(tops.begin(), tops.end(), rank_before);
    std::sort(bottoms.begin(), bottoms.end(), rank_before);

    std::vector<RankEntry> rows;
    if (2 * keep >= size) {
        // 2k <= 8192 < chunk size forces a single chunk here, so the two
        // blocks overlap and cover the space; merge into the complete order.
        rows.reserve(size_t(size));
        std::merge(tops.begin(), tops.end(), bottoms.begin(), bottoms.end(),
                   std::back_inserter(rows), rank_before);
        rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    } else {
        rows.assign(tops.begin(), tops.begin() + size_t(keep));
        rows.insert(rows.end(), bottoms.end() - size_t(keep), bottoms.end());
    }
    return {desc, bound, RankTable::Mode::extremes, size, keep, std::move(rows)};
}

spaces::Configuration optimum(const RankTable& table) {
    if (table.rows().empty()) throw EmptyInputError("rank table has no rows");
    return spaces::configuration_at(table.space(), table.rows().front().index);
}

} // namespace optlab::ranking
