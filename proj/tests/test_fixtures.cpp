#include <catch_amalgamated.hpp>

#include <nilgeo/nilgeo.hpp>

using namespace nilgeo;

TEST_CASE("built-in expectation suite is green", "[fixtures]") {
    std::vector<VerifyCheck> checks = verify_paper();
    REQUIRE(checks.size() > 200);
    for (const auto& c : checks) {
        INFO(c.name << ": " << c.detail);
        CHECK(c.pass);
    }
    REQUIRE(all_passed(checks));
}

TEST_CASE("corrupting one frozen value makes the suite fail", "[fixtures]") {
    std::vector<VerifyCheck> checks = verify_paper("", true);
    REQUIRE_FALSE(all_passed(checks));
    std::size_t failures = 0;
    for (const auto& c : checks)
        if (!c.pass) {
            ++failures;
            REQUIRE_FALSE(c.detail.empty());
        }
    REQUIRE(failures >= 1);
}

TEST_CASE("name filter subsets the suite", "[fixtures]") {
    std::vector<VerifyCheck> all = verify_paper();
    for (const std::string& tag : fixture_names()) {
        std::vector<VerifyCheck> sub = verify_paper(tag);
        REQUIRE_FALSE(sub.empty());
        REQUIRE(sub.size() < all.size());
        for (const auto& c : sub) {
            REQUIRE(c.name.find(tag) != std::string::npos);
            CHECK(c.pass);
        }
    }
    REQUIRE(verify_paper("no-such-fixture").empty());
}
