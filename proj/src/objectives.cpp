#include "optlab/objectives.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cstdlib>

#include "optlab/rng.hpp"

namespace optlab::objectives {

namespace {

using spaces::SpaceKind;

struct FamilyInfo {
    Family family;
    std::string_view token; // CLI form
    std::string_view id;    // symbolic name
    bool complex;
};

constexpr FamilyInfo kFamilies[] = {
    {Family::ones_count, "S1", "ones_count", false},
    {Family::leading_ones, "S2", "leading_ones", false},
    {Family::max_run, "S3", "max_run", false},
    {Family::alternations, "S4", "alternations", false},
    {Family::ising, "S5", "ising", false},
    {Family::neg_ising, "S6", "neg_ising", false},
    {Family::hamming_to_target, "C1", "hamming_to_target", true},
    {Family::random_function, "C2", "random_function", true},
    {Family::contact_count, "W1", "contact_count", false},
    {Family::neg_end_to_end_sq, "W2", "neg_end_to_end_sq", false},
    {Family::edge_count, "G1", "edge_count", false},
    {Family::triangle_count, "G2", "triangle_count", false},
    {Family::neg_degree_variance, "G3", "neg_degree_variance", false},
    {Family::neg_diameter, "G4", "neg_diameter", false},
    {Family::structured_affinity, "A1", "structured_affinity", false},
    {Family::random_affinity, "A2", "random_affinity", true},
};

const FamilyInfo& info(Family family) {
    for (const auto& f : kFamilies)
        if (f.family == family) return f;
    throw ValidationError("unknown objective family");
}

constexpr uint64_t kAffinityMask = (uint64_t{1} << 20) - 1;

uint64_t affinity_entry(uint64_t seed, uint32_t n, uint32_t i, uint32_t j) {
    // 1-based (i, j), row-major counter.
    return rng::hash_at(seed, uint64_t(i - 1) * n + j) & kAffinityMask;
}

int target_bit(uint64_t seed, uint32_t i) { return int(rng::hash_at(seed, i + 1) & 1); }

// String scores work on the n-bit value directly; bit i of the string is
// counted from the most significant end, matching BitString.
int64_t string_score(Family family, const ObjectiveDescriptor& obj, uint64_t value, uint32_t n) {
    switch (family) {
        case Family::ones_count:
            return std::popcount(value);
        case Family::leading_ones: {
            int64_t run = 0;
            for (uint32_t i = 0; i < n && ((value >> (n - 1 - i)) & 1); ++i) ++run;
            return run;
        }
        case Family::max_run: {
            int64_t best = 1, run = 1;
            for (uint32_t i = 1; i < n; ++i) {
                const bool same = ((value >> (n - 1 - i)) & 1) == ((value >> (n - i)) & 1);
                run = same ? run + 1 : 1;
                best = std::max(best, run);
            }
            return best;
        }
        case Family::alternations: {
            int64_t flips = 0;
            for (uint32_t i = 1; i < n; ++i)
                flips += ((value >> (n - 1 - i)) & 1) != ((value >> (n - i)) & 1);
            return flips;
        }
        case Family::ising:
        case Family::neg_ising: {
            int64_t sum = 0;
            for (uint32_t i = 1; i < n; ++i) {
                const bool same = ((value >> (n - 1 - i)) & 1) == ((value >> (n - i)) & 1);
                sum += same ? 1 : -1;
            }
            return family == Family::ising ? sum : -sum;
        }
        case Family::hamming_to_target: {
            int64_t agree = 0;
            for (uint32_t i = 0; i < n; ++i)
                agree += int((value >> (n - 1 - i)) & 1) == target_bit(obj.seed, i);
            return agree; // n - Hamming distance to the target
        }
        default:
            break;
    }
    throw ValidationError("not a string objective");
}

int64_t walk_score(Family family, uint64_t code, uint32_t steps) {
    int xs[16], ys[16];
    xs[0] = 0;
    ys[0] = 0;
    for (uint32_t t = 0; t < steps; ++t) {
        const uint32_t d = uint32_t(code >> (2 * (steps - 1 - t))) & 3u;
        xs[t + 1] = xs[t] + spaces::kStepDx[d];
        ys[t + 1] = ys[t] + spaces::kStepDy[d];
    }
    if (family == Family::neg_end_to_end_sq) {
        const int64_t dx = xs[steps], dy = ys[steps];
        return -(dx * dx + dy * dy);
    }
    // contact_count: lattice-adjacent residue pairs that are not consecutive
    // along the chain.
    int64_t contacts = 0;
    for (uint32_t i = 0; i + 2 <= steps; ++i)
        for (uint32_t j = i + 2; j <= steps; ++j)
            contacts += std::abs(xs[i] - xs[j]) + std::abs(ys[i] - ys[j]) == 1;
    return contacts;
}

// Upper-triangle adjacency mask: bit p holds pair p in row-major order over
// 0 <= i < j < n, so (0,1) is bit 0.
bool has_edge(uint64_t mask, uint32_t i, uint32_t j, uint32_t n) {
    if (i > j) std::swap(i, j);
    const uint32_t p = i * n - i * (i + 1) / 2 + (j - i - 1);
    return (mask >> p) & 1;
}

int64_t graph_score(Family family, uint64_t mask, uint32_t n) {
    switch (family) {
        case Family::edge_count:
            return std::popcount(mask);
        case Family::triangle_count: {
            int64_t triangles = 0;
            for (uint32_t i = 0; i < n; ++i)
                for (uint32_t j = i + 1; j < n; ++j)
                    for (uint32_t k = j + 1; k < n; ++k)
                        triangles += has_edge(mask, i, j, n) && has_edge(mask, j, k, n) &&
                                     has_edge(mask, i, k, n);
            return triangles;
        }
        case Family::neg_degree_variance: {
            int64_t sum = 0, sumsq = 0;
            for (uint32_t i = 0; i < n; ++i) {
                int64_t d = 0;
                for (uint32_t j = 0; j < n; ++j) d += j != i && has_edge(mask, i, j, n);
                sum += d;
                sumsq += d * d;
            }
            return -(int64_t(n) * sumsq - sum * sum);
        }
        case Family::neg_diameter: {
            constexpr int kInf = 64;
            int dist[7][7];
            for (uint32_t i = 0; i < n; ++i)
                for (uint32_t j = 0; j < n; ++j)
                    dist[i][j] = i == j ? 0 : (has_edge(mask, i, j, n) ? 1 : kInf);
            for (uint32_t k = 0; k < n; ++k)
                for (uint32_t i = 0; i < n; ++i)
                    for (uint32_t j = 0; j < n; ++j)
                        dist[i][j] = std::min(dist[i][j], dist[i][k] + dist[k][j]);
            int diameter = 0;
            for (uint32_t i = 0; i < n; ++i)
                for (uint32_t j = 0; j < n; ++j) diameter = std::max(diameter, dist[i][j]);
            if (diameter >= kInf) diameter = int(n); // disconnected
            return -diameter;
        }
        default:
            break;
    }
    throw ValidationError("not a graph objective");
}

int64_t affinity_score(const ObjectiveDescriptor& obj, const spaces::Configuration& config) {
    const uint32_t n = config.space.n;
    const uint32_t width = uint32_t(std::bit_width(n));
    const uint64_t value = config.encoding.value();
    int64_t sum = 0;
    for (uint32_t i = 1; i <= n; ++i) {
        const uint32_t image = uint32_t(value >> (width * (n - i))) & ((1u << width) - 1);
        if (obj.family == Family::structured_affinity) {
            const int64_t d = int64_t(i) - int64_t(image);
            sum -= d * d;
        } else {
            sum += int64_t(affinity_entry(obj.seed, n, i, image));
        }
    }
    return sum;
}

} // namespace

bool ObjectiveDescriptor::is_complex() const { return info(family).complex; }

std::string ObjectiveDescriptor::id() const {
    std::string base(info(family).id);
    return negated ? "neg(" + base + ")" : base;
}

std::string ObjectiveDescriptor::text() const {
    std::string base(info(family).token);
    if (is_complex()) base += ":" + std::to_string(seed);
    return negated ? "neg(" + base + ")" : base;
}

ObjectiveDescriptor ObjectiveDescriptor::parse(std::string_view token) {
    if (token.starts_with("neg(") && token.ends_with(")"))
        return negate(parse(token.substr(4, token.size() - 5)));

    std::string_view head = token;
    std::string_view seed_part;
    if (const size_t colon = token.find(':'); colon != std::string_view::npos) {
        head = token.substr(0, colon);
        seed_part = token.substr(colon + 1);
    }
    for (const auto& f : kFamilies) {
        if (f.token != head) continue;
        ObjectiveDescriptor obj;
        obj.family = f.family;
        if (f.complex) {
            if (seed_part.empty())
                throw ValidationError("objective " + std::string(head) + " needs a seed, e.g. " +
                                      std::string(head) + ":1");
            auto [ptr, ec] =
                std::from_chars(seed_part.data(), seed_part.data() + seed_part.size(), obj.seed);
            if (ec != std::errc{} || ptr != seed_part.data() + seed_part.size())
                throw ValidationError("bad objective seed: '" + std::string(seed_part) + "'");
        } else if (!seed_part.empty()) {
            throw ValidationError("objective " + std::string(head) + " takes no seed");
        }
        return obj;
    }
    throw ValidationError("unknown objective: '" + std::string(token) + "'");
}

bool applies_to(const ObjectiveDescriptor& obj, SpaceKind kind) {
    switch (obj.family) {
        case Family::ones_count:
        case Family::leading_ones:
        case Family::max_run:
        case Family::alternations:
        case Family::ising:
        case Family::neg_ising:
        case Family::hamming_to_target:
            return kind == SpaceKind::binary_strings || kind == SpaceKind::random_subset;
        case Family::random_function:
            return true; // depends only on the enumeration index
        case Family::contact_count:
        case Family::neg_end_to_end_sq:
            return kind == SpaceKind::saw2d;
        case Family::edge_count:
        case Family::triangle_count:
        case Family::neg_degree_variance:
        case Family::neg_diameter:
            return kind == SpaceKind::labeled_graphs;
        case Family::structured_affinity:
        case Family::random_affinity:
            return kind == SpaceKind::permutations;
    }
    throw ValidationError("unknown objective family");
}

Score evaluate(const ObjectiveDescriptor& obj, const spaces::Configuration& config) {
    if (!applies_to(obj, config.space.kind))
        throw ApplicabilityError("objective " + obj.text() + " is not defined on " +
                                 config.space.text());
    int64_t score = 0;
    switch (obj.family) {
        case Family::random_function:
            // Uniform on [0, 2^63): dropping one bit keeps negation exact for
            // every value (-INT64_MIN does not exist).
            score = int64_t(rng::hash_at(obj.seed, config.index + 1) >> 1);
            break;
        case Family::contact_count:
        case Family::neg_end_to_end_sq:
            score = walk_score(obj.family, config.encoding.value(), config.space.n);
            break;
        case Family::edge_count:
        case Family::triangle_count:
        case Family::neg_degree_variance:
        case Family::neg_diameter:
            score = graph_score(obj.family, config.encoding.value(), config.space.n);
            break;
        case Family::structured_affinity:
            score = affinity_score(obj, config);
            break;
        case Family::random_affinity:
            if (obj.table_n != 0 && obj.table_n != config.space.n)
                throw ApplicabilityError("random affinity table declared for n=" +
                                         std::to_string(obj.table_n) + ", space has n=" +
                                         std::to_string(config.space.n));
            score = affinity_score(obj, config);
            break;
        default:
            score = string_score(obj.family, obj, config.encoding.value(), config.space.n);
            break;
    }
    return obj.negated ? -score : score;
}

ObjectiveDescriptor negate(ObjectiveDescriptor obj) {
    obj.negated = !obj.negated;
    return obj;
}

ObjectiveDescriptor random_function(uint64_t seed) {
    return {.family = Family::random_function, .seed = seed};
}

ObjectiveDescriptor hamming_to_target(uint64_t seed) {
    return {.family = Family::hamming_to_target, .seed = seed};
}

ObjectiveDescriptor random_affinity(uint64_t seed, uint32_t n) {
    return {.family = Family::random_affinity, .seed = seed, .table_n = n};
}

uint64_t description_length_bits(const ObjectiveDescriptor& obj) {
    uint64_t bits = 8 * obj.id().size();
    if (obj.is_complex()) bits += 64;
    if (obj.family == Family::random_affinity) {
        if (obj.table_n == 0)
            throw ValidationError("random affinity has no declared table size");
        bits += uint64_t{20} * obj.table_n * obj.table_n;
    }
    return bits;
}

std::vector<ObjectiveDescriptor> simple_suite(SpaceKind kind) {
    std::vector<ObjectiveDescriptor> suite;
    for (const auto& f : kFamilies) {
        if (f.complex) continue;
        ObjectiveDescriptor obj{.family = f.family};
        if (applies_to(obj, kind)) suite.push_back(obj);
    }
    return suite;
}

} // namespace optlab::objectives
