#include "optlab/spaces.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <map>
#include <mutex>
#include <tuple>
#include <unordered_set>

#include "optlab/rng.hpp"

namespace optlab::spaces {

namespace {

constexpr uint32_t kMaxBinaryN = 24;
constexpr uint32_t kMaxSawSteps = 14;
constexpr uint32_t kMaxGraphNodes = 7;
constexpr uint32_t kMaxPermutationN = 8;

constexpr uint64_t kFactorial[] = {1, 1, 2, 6, 24, 120, 720, 5040, 40320};

uint64_t parse_u64(std::string_view s, std::string_view what) {
    uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw ValidationError("bad " + std::string(what) + " in space descriptor: '" + std::string(s) + "'");
    return v;
}

// Depth-first enumeration in direction-alphabet order yields walk codes in
// ascending numeric order, which is the lexicographic order of the direction
// strings (first step packed most significant).
std::vector<uint32_t> enumerate_walks(uint32_t steps) {
    std::vector<uint32_t> codes;
    const int side = 2 * int(steps) + 1;
    std::vector<uint8_t> visited(size_t(side) * side, 0);
    auto cell = [&](int x, int y) -> uint8_t& {
        return visited[size_t(y + int(steps)) * side + size_t(x + int(steps))];
    };
    cell(0, 0) = 1;

    struct Frame {
        int x, y;
        uint8_t next_dir;
    };
    std::vector<Frame> stack;
    stack.push_back({0, 0, 0});
    uint32_t code = 0;

    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.next_dir == 4) {
            cell(f.x, f.y) = 0;
            stack.pop_back();
            code >>= 2;
            continue;
        }
        const uint8_t d = f.next_dir++;
        const int nx = f.x + kStepDx[d];
        const int ny = f.y + kStepDy[d];
        if (cell(nx, ny)) continue;
        code = (code << 2) | d;
        if (stack.size() == steps) {
            codes.push_back(code);
            code >>= 2;
        } else {
            cell(nx, ny) = 1;
            stack.push_back({nx, ny, 0});
        }
    }
    return codes;
}

std::shared_ptr<const std::vector<uint32_t>> walk_table(uint32_t steps) {
    static std::mutex mu;
    static std::map<uint32_t, std::shared_ptr<const std::vector<uint32_t>>> cache;
    std::lock_guard lock(mu);
    auto& entry = cache[steps];
    if (!entry) entry = std::make_shared<const std::vector<uint32_t>>(enumerate_walks(steps));
    return entry;
}

std::shared_ptr<const std::vector<uint64_t>> subset_table(const SpaceDescriptor& desc) {
    static std::mutex mu;
    static std::map<std::tuple<uint32_t, uint64_t, uint64_t>,
                    std::shared_ptr<const std::vector<uint64_t>>>
        cache;
    std::lock_guard lock(mu);
    auto& entry = cache[{desc.n, desc.m, desc.seed}];
    if (!entry)
        entry = std::make_shared<const std::vector<uint64_t>>(
            rng::sample_without_replacement(uint64_t{1} << desc.n, desc.m, desc.seed));
    return entry;
}

// The 8 lattice symmetries as permutations of the direction alphabet
// (4 rotations, then the reflections across x, y, the diagonal, and the
// anti-diagonal).
constexpr uint8_t kSymmetry[8][4] = {
    {0, 1, 2, 3}, {1, 2, 3, 0}, {2, 3, 0, 1}, {3, 0, 1, 2},
    {0, 3, 2, 1}, {2, 1, 0, 3}, {1, 0, 3, 2}, {3, 2, 1, 0},
};

uint64_t min_symmetry_code(std::span<const uint8_t> dirs) {
    uint64_t best = ~uint64_t{0};
    for (const auto& sym : kSymmetry) {
        uint64_t code = 0;
        for (uint8_t d : dirs) code = (code << 2) | sym[d];
        best = std::min(best, code);
    }
    return best;
}

void decode_walk(uint32_t code, uint32_t steps, std::span<uint8_t> out) {
    for (uint32_t t = 0; t < steps; ++t)
        out[t] = uint8_t((code >> (2 * (steps - 1 - t))) & 3u);
}

} // namespace

std::string_view kind_token(SpaceKind kind) {
    switch (kind) {
        case SpaceKind::binary_strings: return "binary";
        case SpaceKind::saw2d: return "saw2d";
        case SpaceKind::labeled_graphs: return "graphs";
        case SpaceKind::permutations: return "perms";
        case SpaceKind::random_subset: return "subset";
    }
    throw ValidationError("unknown space kind");
}

void SpaceDescriptor::validate() const {
    switch (kind) {
        case SpaceKind::binary_strings:
            if (n < 1 || n > kMaxBinaryN)
                throw ValidationError("binary strings: n must be in [1, 24]");
            break;
        case SpaceKind::saw2d:
            if (n < 1 || n > kMaxSawSteps)
                throw ValidationError("saw2d: step count must be in [1, 14]");
            break;
        case SpaceKind::labeled_graphs:
            if (n < 2 || n > kMaxGraphNodes)
                throw ValidationError("graphs: node count must be in [2, 7]");
            break;
        case SpaceKind::permutations:
            if (n < 1 || n > kMaxPermutationN)
                throw ValidationError("permutations: length must be in [1, 8]");
            break;
        case SpaceKind::random_subset:
            if (n < 1 || n > kMaxBinaryN)
                throw ValidationError("subset: ambient length must be in [1, 24]");
            if (m < 1 || m > (uint64_t{1} << n))
                throw ValidationError("subset: m must be in [1, 2^n]");
            break;
        default:
            throw ValidationError("unknown space kind");
    }
    if (kind != SpaceKind::random_subset && (m != 0 || seed != 0))
        throw ValidationError("m/seed are only meaningful for subset spaces");
}

std::string SpaceDescriptor::text() const {
    std::string out = std::string(kind_token(kind)) + ":" + std::to_string(n);
    if (kind == SpaceKind::random_subset)
        out += ":" + std::to_string(m) + ":" + std::to_string(seed);
    return out;
}

SpaceDescriptor SpaceDescriptor::parse(std::string_view token) {
    std::vector<std::string_view> parts;
    size_t start = 0;
    while (start <= token.size()) {
        const size_t colon = token.find(':', start);
        if (colon == std::string_view::npos) {
            parts.push_back(token.substr(start));
            break;
        }
        parts.push_back(token.substr(start, colon - start));
        start = colon + 1;
    }
    if (parts.size() < 2)
        throw ValidationError("bad space descriptor: '" + std::string(token) + "'");

    SpaceDescriptor d;
    const std::string_view kind = parts[0];
    if (kind == "binary") d.kind = SpaceKind::binary_strings;
    else if (kind == "saw2d") d.kind = SpaceKind::saw2d;
    else if (kind == "graphs") d.kind = SpaceKind::labeled_graphs;
    else if (kind == "perms") d.kind = SpaceKind::permutations;
    else if (kind == "subset") d.kind = SpaceKind::random_subset;
    else throw ValidationError("unknown space kind: '" + std::string(kind) + "'");

    const size_t expected = d.kind == SpaceKind::random_subset ? 4 : 2;
    if (parts.size() != expected)
        throw ValidationError("bad space descriptor: '" + std::string(token) + "'");

    d.n = uint32_t(parse_u64(parts[1], "size parameter"));
    if (d.kind == SpaceKind::random_subset) {
        d.m = parse_u64(parts[2], "element count");
        d.seed = parse_u64(parts[3], "seed");
    }
    d.validate();
    return d;
}

uint64_t space_size(const SpaceDescriptor& desc) {
    desc.validate();
    switch (desc.kind) {
        case SpaceKind::binary_strings: return uint64_t{1} << desc.n;
        case SpaceKind::labeled_graphs: return uint64_t{1} << (desc.n * (desc.n - 1) / 2);
        case SpaceKind::permutations: return kFactorial[desc.n];
        case SpaceKind::random_subset: return desc.m;
        case SpaceKind::saw2d: return walk_table(desc.n)->size();
    }
    throw ValidationError("unknown space kind");
}

SpaceAccessor::SpaceAccessor(SpaceDescriptor desc) : desc_(desc) {
    desc_.validate();
    if (desc_.kind == SpaceKind::saw2d) walks_ = walk_table(desc_.n);
    if (desc_.kind == SpaceKind::random_subset) subset_ = subset_table(desc_);
    size_ = desc_.kind == SpaceKind::saw2d ? walks_->size() : space_size(desc_);
}

void SpaceAccessor::check_index(uint64_t index) const {
    if (index >= size_)
        throw BoundsError("index " + std::to_string(index) + " out of range for " + desc_.text() +
                          " (size " + std::to_string(size_) + ")");
}

uint64_t SpaceAccessor::string_value(uint64_t index) const {
    check_index(index);
    if (desc_.kind == SpaceKind::binary_strings) return index;
    if (desc_.kind == SpaceKind::random_subset) return (*subset_)[index];
    throw ApplicabilityError("space has no string value: " + desc_.text());
}

uint64_t SpaceAccessor::graph_mask(uint64_t index) const {
    check_index(index);
    if (desc_.kind != SpaceKind::labeled_graphs)
        throw ApplicabilityError("space has no graph mask: " + desc_.text());
    return index;
}

uint32_t SpaceAccessor::walk_code(uint64_t index) const {
    check_index(index);
    if (desc_.kind != SpaceKind::saw2d)
        throw ApplicabilityError("space has no walk code: " + desc_.text());
    return (*walks_)[index];
}

void SpaceAccessor::permutation_images(uint64_t index, std::span<uint8_t> out) const {
    check_index(index);
    if (desc_.kind != SpaceKind::permutations)
        throw ApplicabilityError("space has no permutation images: " + desc_.text());
    const uint32_t n = desc_.n;
    uint8_t pool[kMaxPermutationN];
    for (uint32_t i = 0; i < n; ++i) pool[i] = uint8_t(i + 1);
    uint64_t rest = index;
    for (uint32_t i = 0; i < n; ++i) {
        const uint64_t block = kFactorial[n - 1 - i];
        const uint32_t pick = uint32_t(rest / block);
        rest %= block;
        out[i] = pool[pick];
        for (uint32_t j = pick; j + 1 < n - i; ++j) pool[j] = pool[j + 1];
    }
}

BitString SpaceAccessor::encoding(uint64_t index) const {
    check_index(index);
    switch (desc_.kind) {
        case SpaceKind::binary_strings:
            return {index, desc_.n};
        case SpaceKind::random_subset:
            return {(*subset_)[index], desc_.n};
        case SpaceKind::labeled_graphs:
            return {index, desc_.n * (desc_.n - 1) / 2};
        case SpaceKind::saw2d:
            return {(*walks_)[index], 2 * desc_.n};
        case SpaceKind::permutations: {
            const uint32_t width = uint32_t(std::bit_width(desc_.n));
            uint8_t images[kMaxPermutationN];
            permutation_images(index, {images, desc_.n});
            uint64_t value = 0;
            for (uint32_t i = 0; i < desc_.n; ++i) value = (value << width) | images[i];
            return {value, desc_.n * width};
        }
    }
    throw ValidationError("unknown space kind");
}

BitString SpaceAccessor::canonical_encoding(uint64_t index) const {
    if (desc_.kind != SpaceKind::saw2d) return encoding(index);
    check_index(index);
    uint8_t dirs[kMaxSawSteps];
    decode_walk((*walks_)[index], desc_.n, {dirs, desc_.n});
    return {min_symmetry_code({dirs, desc_.n}), 2 * desc_.n};
}

Configuration SpaceAccessor::at(uint64_t index) const {
    return {desc_, index, encoding(index)};
}

Configuration configuration_at(const SpaceDescriptor& desc, uint64_t index) {
    return SpaceAccessor(desc).at(index);
}

uint32_t canonical_encoding_bits(const SpaceDescriptor& desc) {
    desc.validate();
    switch (desc.kind) {
        case SpaceKind::binary_strings:
        case SpaceKind::random_subset: return desc.n;
        case SpaceKind::labeled_graphs: return desc.n * (desc.n - 1) / 2;
        case SpaceKind::saw2d: return 2 * desc.n;
        case SpaceKind::permutations: return desc.n * uint32_t(std::bit_width(desc.n));
    }
    throw ValidationError("unknown space kind");
}

BitString canonical_encoding(const Configuration& config) {
    if (config.space.kind != SpaceKind::saw2d) return config.encoding;
    const uint32_t steps = config.space.n;
    uint8_t dirs[kMaxSawSteps];
    decode_walk(uint32_t(config.encoding.value()), steps, {dirs, steps});
    return {min_symmetry_code({dirs, steps}), 2 * steps};
}

BitString saw_canonical_encoding(std::span<const uint8_t> dirs) {
    if (dirs.empty() || dirs.size() > kMaxSawSteps)
        throw ValidationError("walk length out of range");
    return {min_symmetry_code(dirs), uint32_t(2 * dirs.size())};
}

std::vector<Configuration> enumerate(const SpaceDescriptor& desc) {
    SpaceAccessor acc(desc);
    if (acc.size() > (uint64_t{1} << 20))
        throw CapacityError("space too large to materialize; use for_each_configuration");
    std::vector<Configuration> out;
    out.reserve(size_t(acc.size()));
    for (uint64_t i = 0; i < acc.size(); ++i) out.push_back(acc.at(i));
    return out;
}

uint64_t saw2d_shape_count(uint32_t steps) {
    SpaceDescriptor desc{SpaceKind::saw2d, steps};
    desc.validate();
    auto walks = walk_table(steps);
    std::unordered_set<uint64_t> shapes;
    shapes.reserve(walks->size() / 4);
    uint8_t dirs[kMaxSawSteps];
    for (uint32_t code : *walks) {
        decode_walk(code, steps, {dirs, steps});
        shapes.insert(min_symmetry_code({dirs, steps}));
    }
    return shapes.size();
}

} // namespace optlab::spaces
