#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "optlab/spaces.hpp"

namespace optlab::objectives {

/// Exact integer score. Objectives define their own integer scaling; keeping
/// scores integral makes tie-breaking bit-for-bit reproducible.
using Score = int64_t;

enum class Family {
    ones_count,          // S1
    leading_ones,        // S2
    max_run,             // S3
    alternations,        // S4
    ising,               // S5
    neg_ising,           // S6
    hamming_to_target,   // C1, seeded
    random_function,     // C2, seeded, applicable everywhere
    contact_count,       // W1
    neg_end_to_end_sq,   // W2
    edge_count,          // G1
    triangle_count,      // G2
    neg_degree_variance, // G3
    neg_diameter,        // G4
    structured_affinity, // A1
    random_affinity,     // A2, seeded
};

/// A pure objective. Complex families carry a seed; random_affinity also
/// declares its table side so its description length is well defined before
/// evaluation.
struct ObjectiveDescriptor {
    Family family = Family::ones_count;
    bool negated = false;
    uint64_t seed = 0;   // hamming_to_target / random_function / random_affinity
    uint32_t table_n = 0; // random_affinity: declared C matrix side, 0 = undeclared

    bool is_complex() const;

    std::string id() const;   // symbolic name, e.g. "ones_count", "neg(ising)"
    std::string text() const; // CLI form, e.g. "S1", "C2:9", "neg(A2:3)"
    static ObjectiveDescriptor parse(std::string_view token);

    friend bool operator==(const ObjectiveDescriptor&, const ObjectiveDescriptor&) = default;
};

bool applies_to(const ObjectiveDescriptor& obj, spaces::SpaceKind kind);

/// Exact score of one configuration. Pure: depends only on the arguments.
Score evaluate(const ObjectiveDescriptor& obj, const spaces::Configuration& config);

/// Pointwise sign inversion; an involution on descriptors.
ObjectiveDescriptor negate(ObjectiveDescriptor obj);

ObjectiveDescriptor random_function(uint64_t seed);            // C2
ObjectiveDescriptor hamming_to_target(uint64_t seed);          // C1
ObjectiveDescriptor random_affinity(uint64_t seed, uint32_t n); // A2

/// Bit length of the canonical serialized descriptor: 8 bits per id character,
/// plus 64 for a seed, plus 20·n² for a declared affinity table. A coarse,
/// monotone stand-in for descriptive complexity.
uint64_t description_length_bits(const ObjectiveDescriptor& obj);

/// The simple (unseeded) objectives defined on a space kind, in token order.
std::vector<ObjectiveDescriptor> simple_suite(spaces::SpaceKind kind);

} // namespace optlab::objectives
