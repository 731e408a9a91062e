#include "doctest.h"

#include <algorithm>
#include <set>

#include "optlab/bits.hpp"
#include "optlab/rng.hpp"

using optlab::BitString;
namespace rng = optlab::rng;

TEST_CASE("bitstring round trips between value and string forms") {
    const BitString b(11, 4); // 1011
    CHECK(b.str() == "1011");
    CHECK(b.size() == 4);
    CHECK(b.value() == 11);
    CHECK(b.bit(0) == true);
    CHECK(b.bit(1) == false);
    CHECK(BitString::from_string("1011") == b);

    const BitString all(~uint64_t{0}, 64);
    CHECK(all.value() == ~uint64_t{0});
    CHECK(all.str() == std::string(64, '1'));
}

TEST_CASE("bitstring constructor masks excess value bits") {
    CHECK(BitString(0xFF, 4).value() == 0xF);
    CHECK(BitString(0, 0).empty());
}

TEST_CASE("bitstring rejects invalid input") {
    CHECK_THROWS_AS(BitString(0, 65), optlab::ValidationError);
    CHECK_THROWS_AS(BitString::from_string("01x1"), optlab::ValidationError);
}

TEST_CASE("bitstring complement flips every symbol") {
    const BitString b = BitString::from_string("0011010");
    CHECK(b.complement().str() == "1100101");
    CHECK(b.complement().complement() == b);
}

TEST_CASE("bitstring hex packs big endian with zero padding") {
    CHECK(BitString::from_string("11110000").hex() == "f0");
    CHECK(BitString::from_string("1111").hex() == "f0");
    CHECK(BitString::from_string("000000001").hex() == "0080");
    CHECK(BitString(0xDEADBEEF, 32).hex() == "deadbeef");
}

TEST_CASE("mix64 matches the published splitmix64 finalizer") {
    // splitmix64 with state 0: first output is mix64(0 + golden).
    CHECK(rng::hash_at(0, 1) == 0xE220A8397B1DCDAFULL);
    CHECK(rng::hash_at(0, 2) == 0x6E789E6AA1B965F4ULL);
    CHECK(rng::hash_at(0, 3) == 0x06C45D188009454FULL);
}

TEST_CASE("derived seeds are distinct across trials and masters") {
    std::set<uint64_t> seen;
    for (uint64_t master : {0ull, 1ull, 42ull})
        for (uint64_t trial = 0; trial < 100; ++trial)
            seen.insert(rng::derive_seed(master, trial));
    CHECK(seen.size() == 300);
}

TEST_CASE("bounded stays inside the bound and covers it") {
    std::set<uint64_t> hit;
    for (uint64_t i = 0; i < 400; ++i) {
        const uint64_t v = rng::bounded(rng::hash_at(7, i + 1), 6);
        REQUIRE(v < 6);
        hit.insert(v);
    }
    CHECK(hit.size() == 6);
}

TEST_CASE("sampling without replacement returns sorted distinct values") {
    const auto sample = rng::sample_without_replacement(1000, 64, 9);
    REQUIRE(sample.size() == 64);
    CHECK(std::is_sorted(sample.begin(), sample.end()));
    CHECK(std::adjacent_find(sample.begin(), sample.end()) == sample.end());
    CHECK(sample.back() < 1000);

    CHECK(rng::sample_without_replacement(1000, 64, 9) == sample); // deterministic
    CHECK(rng::sample_without_replacement(1000, 64, 10) != sample);
}

TEST_CASE("sampling the whole domain yields the identity") {
    const auto all = rng::sample_without_replacement(17, 17, 3);
    REQUIRE(all.size() == 17);
    for (uint64_t i = 0; i < 17; ++i) CHECK(all[size_t(i)] == i);
}

TEST_CASE("sampling more than the domain is rejected") {
    CHECK_THROWS_AS(rng::sample_without_replacement(4, 5, 1), optlab::ValidationError);
}
