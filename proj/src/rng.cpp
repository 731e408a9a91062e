#include "optlab/rng.hpp"

#include <algorithm>
#include <unordered_set>

#include "optlab/errors.hpp"

namespace optlab::rng {

std::vector<uint64_t> sample_without_replacement(uint64_t domain, uint64_t m, uint64_t seed) {
    if (m > domain)
        throw ValidationError("sample size exceeds domain size");
    std::unordered_set<uint64_t> chosen;
    chosen.reserve(size_t(m) * 2);
    uint64_t counter = 0;
    for (uint64_t j = domain - m; j < domain; ++j) {
        const uint64_t t = bounded(hash_at(seed, ++counter), j + 1);
        if (!chosen.insert(t).second) chosen.insert(j);
    }
    std::vector<uint64_t> out(chosen.begin(), chosen.end());
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace optlab::rng
