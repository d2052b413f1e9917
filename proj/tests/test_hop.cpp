#include <random>
#include <set>

#include "doctest.h"
#include "lso/hop.hpp"

using namespace lso;

namespace {

// Every midpoint that would make {i,l},{l,j} edges, straight from has_edge.
template <class S>
bool valid_midpoint(const S& s, int i, int j, int l) {
    return i <= l && l <= j && s.has_edge(i, l) && s.has_edge(l, j);
}

}  // namespace

TEST_CASE("two-hop edge counts on powers of two") {
    for (int d = 0; d <= 12; ++d) {
        int n = 1 << d;
        TwoHopPathSpanner s(n);
        CHECK(s.responsibility_count() == static_cast<long long>(n) * d + 1);
        for (int i = 1; i <= n; ++i) CHECK(static_cast<int>(s.responsible(i).size()) <= d);
    }
}

TEST_CASE("two-hop n=2 is a single edge") {
    TwoHopPathSpanner s(2);
    auto e = s.edges();
    REQUIRE(e.size() == 1);
    CHECK(e[0] == std::pair<int, int>{1, 2});
    CHECK(s.query(1, 2) == 1);
}

TEST_CASE("two-hop hub is the last vertex of the left half") {
    TwoHopPathSpanner s(8);
    CHECK(s.query(4, 7) == 4);
    CHECK(s.query(1, 8) == 4);
    CHECK(s.query(5, 8) == 6);
    CHECK(s.query(3, 3) == 3);
}

TEST_CASE("two-hop queries are valid for arbitrary n") {
    for (int n = 1; n <= 70; ++n) {
        TwoHopPathSpanner s(n);
        for (int i = 1; i <= n; ++i)
            for (int j = i; j <= n; ++j) REQUIRE(valid_midpoint(s, i, j, s.query(i, j)));
    }
}

TEST_CASE("two-hop rejects bad ranges") {
    TwoHopPathSpanner s(5);
    CHECK_THROWS_AS(s.query(0, 3), Error);
    CHECK_THROWS_AS(s.query(3, 2), Error);
    CHECK_THROWS_AS(s.query(1, 6), Error);
}

TEST_CASE("ft two-hop survives random faults") {
    std::mt19937_64 rng(7);
    for (int f : {0, 1, 2, 3, 4}) {
        for (int n : {1, 2, 5, 16, 33, 64}) {
            FtTwoHopPathSpanner s(n, f);
            CHECK(s.f() % 2 == 0);
            CHECK(s.f() >= f);
            CHECK(static_cast<long long>(s.edges().size()) <= s.edge_bound());
            for (int trial = 0; trial < 40; ++trial) {
                std::set<int> F;
                std::uniform_int_distribution<int> U(1, std::max(n, 1));
                while (static_cast<int>(F.size()) < std::min(f, n)) F.insert(U(rng));
                for (int i = 1; i <= n; ++i)
                    for (int j = i; j <= n; ++j) {
                        if (F.count(i) || F.count(j)) continue;
                        int l = s.query(i, j, [&](int x) { return F.count(x) > 0; });
                        REQUIRE(valid_midpoint(s, i, j, l));
                        REQUIRE((l == i || l == j || !F.count(l)));
                    }
            }
        }
    }
}

TEST_CASE("k-hop paths are monotone and use spanner edges") {
    for (int hops : {3, 4}) {
        for (int n : {1, 2, 4, 5, 9, 17, 40, 100}) {
            KHopPathSpanner s(n, hops);
            for (int i = 1; i <= n; ++i)
                for (int j = i; j <= n; ++j) {
                    auto p = s.query(i, j);
                    REQUIRE(p.front() == i);
                    REQUIRE(p.back() == j);
                    REQUIRE(static_cast<int>(p.size()) - 1 <= hops);
                    for (size_t t = 0; t + 1 < p.size(); ++t) {
                        REQUIRE(p[t] < p[t + 1]);
                        REQUIRE(s.has_edge(p[t], p[t + 1]));
                    }
                }
        }
    }
}

TEST_CASE("k-hop edge counts grow slower than the 2-hop structure") {
    int n = 1 << 12;
    TwoHopPathSpanner two(n);
    KHopPathSpanner three(n, 3), four(n, 4);
    CHECK(three.edges().size() < two.edges().size());
    CHECK(four.edges().size() < two.edges().size());
}
