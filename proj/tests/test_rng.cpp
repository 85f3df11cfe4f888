#include <algorithm>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "vmlp/rng.hpp"

using vmlp::Rng;

TEST_CASE("same seed reproduces the stream") {
    Rng a(42);
    Rng b(42);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("different seeds diverge") {
    Rng a(1);
    Rng b(2);
    bool differs = false;
    for (int i = 0; i < 10 && !differs; ++i) differs = a.next_u64() != b.next_u64();
    CHECK(differs);
}

TEST_CASE("seed zero is usable") {
    Rng r(0);
    CHECK(r.next_u64() != 0);
}

TEST_CASE("uniform stays in range") {
    Rng r(7);
    for (int i = 0; i < 10000; ++i) {
        const double u = r.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        const double v = r.uniform(-1.0, 1.0);
        CHECK(v >= -1.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("uniform(-1,1) is centered") {
    Rng r(123);
    double sum = 0.0;
    const int count = 100000;
    for (int i = 0; i < count; ++i) sum += r.uniform(-1.0, 1.0);
    const double mean = sum / count;
    CHECK(mean > -0.02);
    CHECK(mean < 0.02);
}

TEST_CASE("shuffle permutes deterministically") {
    std::vector<int> v1{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    std::vector<int> v2 = v1;
    Rng a(9);
    Rng b(9);
    a.shuffle(v1);
    b.shuffle(v2);
    CHECK(v1 == v2);
    std::vector<int> sorted = v1;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
}
