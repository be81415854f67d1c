#include <doctest.h>

#include <set>
#include <stdexcept>

#include "hopfsub/classify.hpp"
#include "hopfsub/fibration.hpp"

using namespace hopfsub;
using namespace hopfsub::classify;

TEST_CASE("admissibility enumeration") {
    // (8, 4, 7, 3): k = 1, and r'+1 = r-r' = 4 makes both block signs work
    const AdmissibilityInstance a = admissible(8, 4, 7, 3);
    REQUIRE(a.solutions.size() == 2);
    bool has_10 = false;
    for (const auto& sol : a.solutions) {
        CHECK(sol.k == 1);
        CHECK(sol.q1 + sol.q2 == 1);
        has_10 = has_10 || (sol.q1 == 1 && sol.q2 == 0);
    }
    CHECK(has_10);

    // s = 5 is unreachable for (n, r, r') = (8, 7, 3)
    CHECK_FALSE(admissible(8, 5, 7, 3).admissible());

    // arithmetically fine, excluded by the catalogue
    CHECK(admissible(16, 8, 7, 7).admissible());

    CHECK_THROWS_AS(admissible(8, 9, 7, 3), std::invalid_argument);
    CHECK_THROWS_AS(admissible(8, 4, 3, 7), std::invalid_argument);
}

TEST_CASE("fibre parallelizability filter") {
    CHECK(fibre_index_allowed(0));
    CHECK(fibre_index_allowed(1));
    CHECK_FALSE(fibre_index_allowed(2));
    CHECK(fibre_index_allowed(3));
    CHECK_FALSE(fibre_index_allowed(5));
    CHECK(fibre_index_allowed(7));
}

TEST_CASE("catalogue") {
    int families = 0, composites = 0, excluded = 0;
    for (const CatalogEntry& e : catalog()) {
        if (e.exists == Existence::No) {
            ++excluded;
            CHECK(!e.note.empty());  // every excluded row carries its reason
        } else if (e.composite) {
            ++composites;
        } else {
            ++families;
        }
    }
    CHECK(families == 7);
    CHECK(composites == 3);
    CHECK(excluded == 3);

    SUBCASE("every classified entry passes the admissibility arithmetic") {
        for (const CatalogEntry& e : catalog()) {
            if (e.exists == Existence::No || e.composite) continue;
            const Fibration f = make_fibration(e.id, e.m > 0 ? e.m : 2, e.t);
            CHECK(admissible(f.base.dim, f.base.index, f.fibre.dim, f.fibre.index).admissible());
        }
    }

    SUBCASE("round trip with the fibration module") {
        for (const std::string& id : fibration_ids()) {
            int hits = 0;
            for (const CatalogEntry& e : catalog())
                if (e.id == id) ++hits;
            if (id == "pi3" || id == "pi6" || id == "pi9") {
                CHECK(hits == 1);
            } else if (id.rfind("pi_", 0) == 0) {
                CHECK(hits == 1);
            } else {
                // pi1, pi2, pi4, pi5, pi7, pi8 fall inside the four families
                const Fibration f = make_fibration(id);
                CHECK(lookup(f.total.dim, f.total.index).size() > 0);
            }
        }
    }
}

TEST_CASE("lookup") {
    SUBCASE("the two octonion rows over H(15,7)") {
        const auto hits = lookup(15, 7);
        std::set<std::string> ids;
        for (const auto& e : hits) ids.insert(e.id);
        CHECK(ids.count("pi9") == 1);
        CHECK(ids.count("pi6") == 1);
        // every division and para family fibres this total space as well
        CHECK(ids == std::set<std::string>{"pi_C", "pi_A", "pi_H", "pi_B", "pi9", "pi6"});
    }

    SUBCASE("quaternionic totals") {
        const auto hits = lookup(11, 7);  // H(4m+3, 4t+3) with m=2, t=1
        bool has_H = false;
        for (const auto& e : hits) has_H = has_H || e.id == "pi_H";
        CHECK(has_H);
    }

    SUBCASE("para-complex totals appear at half index") {
        const auto hits = lookup(5, 2);
        bool has_A = false;
        for (const auto& e : hits)
            if (e.id == "pi_A") {
                has_A = true;
                CHECK(e.m == 2);
            }
        CHECK(has_A);
    }

    SUBCASE("no family matches") {
        CHECK(lookup(4, 1).empty());   // even total dimension
        CHECK(lookup(5, 4).empty());   // odd a, even l, not the half index
        CHECK(lookup(9, 2).empty());   // odd a, even l, not the half index
    }
}

TEST_CASE("renderers") {
    const std::string md = catalog_to_markdown();
    // seven family rows plus three composite rows in the first table
    int rows = 0;
    std::size_t pos = 0;
    const std::string excluded_header = "Excluded:";
    const std::size_t cut = md.find(excluded_header);
    while ((pos = md.find("\n| pi", pos)) != std::string::npos && pos < cut) {
        ++rows;
        ++pos;
    }
    CHECK(rows == 10);

    const std::string j = catalog_to_json();
    CHECK(j.find("\"id\":\"pi_C\"") != std::string::npos);
    CHECK(j.find("\"exists\":false") != std::string::npos);
}

TEST_CASE("dimension and index sweep") {
    // independent enumeration of the classified rows
    std::set<std::array<int, 4>> expect;
    for (int m = 1; 2 * m <= 32; ++m) {
        for (int t = 0; t <= m; ++t) expect.insert({2 * m, 2 * t, 1, 1});
        expect.insert({2 * m, m, 1, 0});
    }
    for (int m = 1; 4 * m <= 32; ++m) {
        for (int t = 0; t <= m; ++t) expect.insert({4 * m, 4 * t, 3, 3});
        expect.insert({4 * m, 2 * m, 3, 1});
    }
    expect.insert({8, 0, 7, 7});
    expect.insert({8, 4, 7, 3});
    expect.insert({8, 8, 7, 7});

    std::set<std::array<int, 4>> got_exists, got_excluded;
    for (const SweepRow& row : sweep(32))
        (row.exists ? got_exists : got_excluded).insert({row.n, row.s, row.r, row.rp});

    CHECK(got_exists == expect);
    CHECK(got_excluded == std::set<std::array<int, 4>>{{16, 8, 7, 7}});
}
