#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include <doctest.h>

#include "hk/errors.hpp"
#include "hk/metrics.hpp"
#include "hk/rng.hpp"

using namespace hk;

namespace {

std::vector<std::size_t> all_indices(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

std::vector<double> random_values(Rng& rng, std::size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = rng.uniform01();
    return v;
}

// Union-find over the epsilon interval graph; independent of the sorted-gap
// implementation.
std::vector<std::vector<std::size_t>> connectivity_oracle(const std::vector<double>& vals,
                                                          double epsilon) {
    const std::size_t n = vals.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(vals[i] - vals[j]) <= epsilon) parent[find(i)] = find(j);
        }
    }
    std::vector<std::vector<std::size_t>> groups;
    std::vector<long> slot(n, -1);
    // Groups ordered by their minimum opinion value, members ascending by value
    // (ties by index), to match cluster_partition's ordering.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    for (std::size_t k : order) {
        const std::size_t root = find(k);
        if (slot[root] < 0) {
            slot[root] = static_cast<long>(groups.size());
            groups.emplace_back();
        }
        groups[static_cast<std::size_t>(slot[root])].push_back(k);
    }
    return groups;
}

}  // namespace

TEST_CASE("diameter") {
    const std::vector<double> v = {0.1, 0.4, 0.9};
    CHECK(diameter(v, all_indices(3)) == doctest::Approx(0.8));
    const std::vector<std::size_t> single = {1};
    CHECK(diameter(v, single) == 0.0);
    CHECK_THROWS_AS(diameter(v, std::vector<std::size_t>{}), ConfigError);
    CHECK_THROWS_AS(diameter(v, std::vector<std::size_t>{5}), ConfigError);

    // O(n^2) max-pairwise-difference oracle.
    Rng rng({1, 0});
    const auto vals = random_values(rng, 20);
    double expect = 0.0;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        for (std::size_t j = 0; j < vals.size(); ++j)
            expect = std::max(expect, std::abs(vals[i] - vals[j]));
    }
    CHECK(diameter(vals, all_indices(20)) == expect);
}

TEST_CASE("anchored_deviation") {
    CHECK(anchored_deviation(std::vector<double>{0.5, 0.5}, all_indices(2), 0.5) == 0.0);
    CHECK(anchored_deviation(std::vector<double>{0.1, 0.9}, all_indices(2), 0.5) ==
          doctest::Approx(0.4));
    CHECK_THROWS_AS(anchored_deviation(std::vector<double>{0.1}, std::vector<std::size_t>{}, 0.5),
                    ConfigError);

    Rng rng({2, 0});
    const auto vals = random_values(rng, 25);
    const double anchor = 0.37;
    double expect = 0.0;
    for (double v : vals) expect = std::max(expect, std::abs(v - anchor));
    CHECK(anchored_deviation(vals, all_indices(25), anchor) == expect);
}

TEST_CASE("consensus_entry") {
    SUBCASE("documented example") {
        const std::vector<double> s = {0.5, 0.3, 0.01, 0.01, 0.01};
        const auto r = consensus_entry(s, 0.02, 2);
        REQUIRE(r.entry_time.has_value());
        CHECK(*r.entry_time == 2);
        CHECK(r.confirmed);
        CHECK(r.tail_margin == 2);
    }
    SUBCASE("never entering") {
        const std::vector<double> s = {0.5, 0.4, 0.3};
        const auto r = consensus_entry(s, 0.02, 1);
        CHECK(!r.entry_time.has_value());
        CHECK(!r.confirmed);
    }
    SUBCASE("entry is after the last exceedance (reverse-scan oracle)") {
        Rng rng({3, 1});
        for (int rep = 0; rep < 200; ++rep) {
            std::vector<double> s(40);
            for (auto& v : s) v = rng.uniform01();
            const double phi = 0.6;
            const auto r = consensus_entry(s, phi, 0);
            std::size_t expect = 0;
            bool found = false;
            for (std::size_t t = 0; t < s.size(); ++t) {
                bool ok = true;
                for (std::size_t u = t; u < s.size(); ++u) ok = ok && s[u] <= phi;
                if (ok) {
                    expect = t;
                    found = true;
                    break;
                }
            }
            CHECK(r.entry_time.has_value() == found);
            if (found) CHECK(*r.entry_time == expect);
        }
    }
    SUBCASE("short confirming tail is inconclusive") {
        const std::vector<double> s = {0.5, 0.01, 0.01};
        const auto r = consensus_entry(s, 0.02, 5);
        REQUIRE(r.entry_time.has_value());
        CHECK(!r.confirmed);
    }
    SUBCASE("monotone in phi: larger phi never enters later") {
        Rng rng({4, 2});
        for (int rep = 0; rep < 100; ++rep) {
            std::vector<double> s(30);
            for (auto& v : s) v = rng.uniform01();
            const auto lo = consensus_entry(s, 0.4, 0);
            const auto hi = consensus_entry(s, 0.7, 0);
            if (lo.entry_time) {
                REQUIRE(hi.entry_time.has_value());
                CHECK(*hi.entry_time <= *lo.entry_time);
            }
        }
    }
}

TEST_CASE("cluster_partition") {
    SUBCASE("documented examples") {
        const std::vector<double> v = {0.1, 0.15, 0.8};
        const auto groups = cluster_partition(v, 0.2);
        REQUIRE(groups.size() == 2);
        CHECK(groups[0] == std::vector<std::size_t>{0, 1});
        CHECK(groups[1] == std::vector<std::size_t>{2});

        CHECK(cluster_count(std::vector<double>{0.3, 0.3, 0.3}, 0.1) == 1);
        CHECK_THROWS_AS(cluster_partition(v, 0.0), ConfigError);
    }
    SUBCASE("matches the interval-graph connectivity oracle") {
        Rng rng({5, 3});
        for (int rep = 0; rep < 300; ++rep) {
            const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform01() * 28);
            const auto vals = random_values(rng, n);
            const double eps = 0.02 + 0.3 * rng.uniform01();
            CHECK(cluster_partition(vals, eps) == connectivity_oracle(vals, eps));
        }
    }
    SUBCASE("invariant under permutation of agent indices") {
        Rng rng({6, 4});
        const auto vals = random_values(rng, 15);
        std::vector<double> shuffled = vals;
        std::reverse(shuffled.begin(), shuffled.end());
        const auto a = cluster_partition(vals, 0.1);
        const auto b = cluster_partition(shuffled, 0.1);
        REQUIRE(a.size() == b.size());
        for (std::size_t g = 0; g < a.size(); ++g) {
            std::vector<double> va, vb;
            for (std::size_t i : a[g]) va.push_back(vals[i]);
            for (std::size_t i : b[g]) vb.push_back(shuffled[i]);
            CHECK(va == vb);
        }
    }
}

TEST_CASE("limsup_estimate") {
    const std::vector<double> c5 = {0.3, 0.3, 0.3, 0.3};
    CHECK(limsup_estimate(c5, 4) == 0.3);
    const std::vector<double> s = {1, 1, 0.1, 0.2, 0.1};
    CHECK(limsup_estimate(s, 3) == doctest::Approx(0.2));
    CHECK_THROWS_AS(limsup_estimate(s, 0), ConfigError);
    CHECK_THROWS_AS(limsup_estimate(s, 6), ConfigError);

    SUBCASE("suffix max-scan oracle") {
        Rng rng({7, 5});
        std::vector<double> v(50);
        for (auto& x : v) x = rng.uniform01();
        for (std::size_t w = 1; w <= v.size(); ++w) {
            double expect = 0.0;
            for (std::size_t k = v.size() - w; k < v.size(); ++k) expect = std::max(expect, v[k]);
            CHECK(limsup_estimate(v, w) == expect);
        }
    }
    SUBCASE("non-increasing as the window shrinks on an eventually-monotone series") {
        std::vector<double> v = {0.9, 0.8, 0.5, 0.4, 0.3, 0.2, 0.1};
        for (std::size_t w = v.size(); w > 1; --w)
            CHECK(limsup_estimate(v, w - 1) <= limsup_estimate(v, w));
    }
}

TEST_CASE("diameter vs anchored deviation triangle inequality") {
    Rng rng({8, 6});
    for (int rep = 0; rep < 300; ++rep) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform01() * 20);
        const auto vals = random_values(rng, n);
        const double anchor = rng.uniform01();
        CHECK(diameter(vals, all_indices(n)) <=
              2.0 * anchored_deviation(vals, all_indices(n), anchor));
    }
}

TEST_CASE("running means of a monotone sequence are monotone") {
    Rng rng({9, 7});
    for (int rep = 0; rep < 100; ++rep) {
        std::vector<double> z(30);
        for (auto& v : z) v = rng.uniform01();
        std::sort(z.begin(), z.end());
        const auto g = running_means(z);
        for (std::size_t k = 1; k < g.size(); ++k) CHECK(g[k] >= g[k - 1]);

        std::reverse(z.begin(), z.end());
        const auto h = running_means(z);
        for (std::size_t k = 1; k < h.size(); ++k) CHECK(h[k] <= h[k - 1]);
    }
}
