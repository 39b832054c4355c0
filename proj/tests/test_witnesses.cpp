#include <doctest.h>

#include "hullcert/witnesses.hpp"

using namespace hullcert;

TEST_CASE("unbounded-reciprocal witness, loose parameters") {
    UnboundednessWitness w = build_unbounded_reciprocal_witness(SpaceModel::C0Summing, Rational(1), Rational(1));
    CHECK(w.k0 == 5);
    CHECK(w.diameter < 1);
    for (const auto& f : w.facts) CHECK(f.reciprocal_lower > 1);
}

TEST_CASE("unbounded-reciprocal witness, the sharp parameter pair") {
    for (SpaceModel m : {SpaceModel::C0Summing, SpaceModel::L1Tail}) {
        UnboundednessWitness w = build_unbounded_reciprocal_witness(m, Rational(1000), rat(1, 100));
        CHECK(w.k0 == 401);
        CHECK(w.n_lo == 1001);
        CHECK(w.diameter < rat(1, 100));
        CHECK(w.diameter <= rat(4, 401));
        CHECK(w.diameter == (m == SpaceModel::C0Summing ? rat(2, 401) : rat(4, 401)));
        bool some_point_clears = false;
        for (const auto& f : w.facts) {
            CHECK(f.distance_upper == rat(1, f.n));
            CHECK(f.distance_lower > 0);
            CHECK(f.distance_lower <= f.distance_upper);
            some_point_clears = some_point_clears || f.reciprocal_lower >= 1000;
        }
        CHECK(some_point_clears);
    }
}

TEST_CASE("unbounded-reciprocal witness, mid parameters") {
    UnboundednessWitness w = build_unbounded_reciprocal_witness(SpaceModel::C0Summing, Rational(10), rat(1, 10));
    CHECK(w.k0 == 41);
    CHECK(w.diameter <= rat(4, 41));
    CHECK_THROWS_AS(build_unbounded_reciprocal_witness(SpaceModel::C0Summing, Rational(0), Rational(1)),
                    validation_error);
    CHECK_THROWS_AS(build_unbounded_reciprocal_witness(SpaceModel::C0Summing, Rational(1), Rational(0)),
                    validation_error);
}

TEST_CASE("nested sublevel demonstration") {
    for (SpaceModel m : {SpaceModel::C0Summing, SpaceModel::L1Tail}) {
        NestedSublevelReport r = build_nested_sublevel_report(m, 30, rat(1, 10));
        CHECK(r.k0 == 21);
        CHECK(r.rows.size() == 30);
        CHECK(r.center_lower > 0);
        for (const auto& row : r.rows) {
            CHECK(row.distance_to_center == rat(2, 21));
            CHECK(row.distance_to_center <= rat(1, 10));
            CHECK(row.upper <= row.level);
            CHECK(aug_norm(row.y - generator_point(m, row.witness)) == row.upper);
            CHECK(row.lower > 0);
        }
        // the n = 1 row already holds with any generator witness; here it is
        // certified well below level 1
        CHECK(r.rows[0].level == 1);
        CHECK(r.rows[0].upper == rat(1, 22));
    }
    CHECK_THROWS_AS(build_nested_sublevel_report(SpaceModel::C0Summing, 1, rat(1, 10)), validation_error);
    CHECK_THROWS_AS(build_nested_sublevel_report(SpaceModel::C0Summing, 5, Rational(0)), validation_error);
}

TEST_CASE("iterated family reduces to the one-level construction at order 1") {
    IteratedSmallSetsReport r = build_iterated_small_sets(SpaceModel::C0Summing, 1, {Rational(1)});
    REQUIRE(r.fixed_indices.size() == 1);
    CHECK(r.fixed_indices[0] == 5); // same k0 rule as the one-level recipe at eps = 1
    REQUIRE(r.levels.size() == 1);
    std::vector<AugPoint> plain = build_small_diameter_set(SpaceModel::C0Summing, 5, 6, 105);
    for (const auto& pt : r.levels[0].points) {
        bool found = false;
        for (const auto& q : plain) found = found || q == pt;
        CHECK(found);
    }
    for (const auto& ib : r.innermost) CHECK(ib.upper == rat(1, ib.chain.last()));
}

TEST_CASE("iterated family at order 2") {
    for (SpaceModel m : {SpaceModel::C0Summing, SpaceModel::L1Tail}) {
        IteratedSmallSetsReport r = build_iterated_small_sets(m, 2, {rat(1, 10), rat(1, 50)});
        REQUIRE(r.levels.size() == 2);
        CHECK(r.levels[0].diameter < rat(1, 10));
        CHECK(r.levels[1].diameter < rat(1, 50));
        // nesting: every level-2 point appears at level 1
        for (const auto& pt : r.levels[1].points) {
            bool found = false;
            for (const auto& q : r.levels[0].points) found = found || q == pt;
            CHECK(found);
        }
        // innermost bounds reach 1/100 and below
        Rational smallest(1);
        for (const auto& ib : r.innermost) {
            CHECK(ib.upper == rat(1, ib.chain.last()));
            if (ib.upper < smallest) smallest = ib.upper;
        }
        CHECK(smallest <= rat(1, 100));
    }
    CHECK_THROWS_AS(build_iterated_small_sets(SpaceModel::C0Summing, 2, {rat(1, 10)}), validation_error);
    CHECK_THROWS_AS(build_iterated_small_sets(SpaceModel::C0Summing, 2, {rat(1, 10), Rational(0)}),
                    validation_error);
    CHECK_THROWS_AS(build_iterated_small_sets(SpaceModel::C0Summing, 0, {}), validation_error);
}

TEST_CASE("iterated family at order 3 stays nested with decaying diameters") {
    IteratedSmallSetsReport r =
        build_iterated_small_sets(SpaceModel::C0Summing, 3, {rat(1, 4), rat(1, 20), rat(1, 100)});
    REQUIRE(r.levels.size() == 3);
    for (std::size_t j = 0; j + 1 < r.levels.size(); ++j) {
        CHECK(r.levels[j].diameter < r.levels[j].eps);
        for (const auto& pt : r.levels[j + 1].points) {
            bool found = false;
            for (const auto& q : r.levels[j].points) found = found || q == pt;
            CHECK(found);
        }
    }
}
