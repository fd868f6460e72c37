#include <doctest.h>

#include <stdexcept>

#include "ising/geometry.hpp"
#include "ising/scenario.hpp"

using namespace ising;

TEST_CASE("surface sites map to lightlike coordinates") {
    CHECK(MinimalCone::at_site(SiteIndex::at_integer(2)) == MinimalCone{2, -2});
    CHECK(MinimalCone::at_site(SiteIndex::at_half(0)) == MinimalCone{0, -1});
    CHECK(MinimalCone::at_site(SiteIndex::at_half(-1)) == MinimalCone{-1, 0});
    CHECK(MinimalCone::at(0, 2) == MinimalCone{2, -2});
    CHECK(MinimalCone::at(-0.5, 0.5) == MinimalCone{0, -1});
    CHECK_THROWS_AS(MinimalCone::at(0.25, 0.0), std::invalid_argument);
}

TEST_CASE("surface cells round-trip through surface_site") {
    for (int d = -4; d <= 4; ++d) {
        SiteIndex s = SiteIndex::from_doubled(d);
        MinimalCone c = MinimalCone::at_site(s);
        CHECK(c.on_surface());
        REQUIRE(c.surface_site().has_value());
        CHECK(*c.surface_site() == s);
    }
    CHECK_FALSE(MinimalCone{1, 1}.on_surface());
    CHECK_FALSE(MinimalCone{1, 1}.surface_site().has_value());
}

TEST_CASE("double cone shape counters") {
    DoubleCone o(-1, 0, 1, 1);
    CHECK(o.n_plus() == 2);
    CHECK(o.n_minus() == 1);
    CHECK(o.n() == 2);
    CHECK(o.cells().size() == 2);
    CHECK_THROWS_AS(DoubleCone(1, 0, 0, 0), std::invalid_argument);

    DoubleCone sites = DoubleCone::over_sites(SiteIndex::at_integer(-1),
                                              SiteIndex::at_integer(1));
    CHECK(sites == DoubleCone(-1, 1, -1, 1));
    CHECK(sites.n() == 5);
    CHECK(sites.cells().size() == 9);
}

TEST_CASE("containment, join, and translation") {
    DoubleCone big(-1, 1, -1, 1);
    CHECK(big.contains(MinimalCone{0, 0}));
    CHECK_FALSE(big.contains(MinimalCone{2, 0}));
    CHECK(big.contains(DoubleCone(-1, 0, 0, 1)));
    CHECK_FALSE(big.contains(DoubleCone(-1, 2, 0, 1)));
    CHECK(join(DoubleCone(-1, 0, 1, 1), DoubleCone(1, 1, -1, 0)) ==
          DoubleCone(-1, 1, -1, 1));
    // Time step shifts both lightlike coordinates; a space step shifts them
    // in opposite directions.
    CHECK(DoubleCone(0, 0, 0, 0).translated(1) == DoubleCone(1, 1, 1, 1));
    CHECK(DoubleCone(0, 0, 0, 0).translated(0, 1.0) == DoubleCone(1, 1, -1, -1));
    CHECK_THROWS_AS(DoubleCone(0, 0, 0, 0).translated(0, 0.5),
                    std::invalid_argument);
}

TEST_CASE("measurement regions are spacelike separated") {
    CHECK(spacelike_separated(event_region_left(), event_region_right()));
    CHECK_FALSE(spacelike_separated(event_region_left(), cause_region()));
    CHECK_FALSE(spacelike_separated(event_region_right(), cause_region()));
    CHECK_FALSE(spacelike_separated(event_region_left(), event_region_left()));
}

TEST_CASE("cause region sits inside the common past") {
    PastRegion common = PastRegion::of(PastRegion::Kind::common, event_region_left(),
                                       event_region_right());
    CHECK(common.contains(cause_region()));
    CHECK(common.contains(MinimalCone{0, 0}));
    CHECK_FALSE(common.contains(MinimalCone{1, 0}));
    CHECK_FALSE(common.contains(MinimalCone{0, 1}));

    PastRegion left = PastRegion::past_of(event_region_left());
    CHECK(left.contains(MinimalCone{0, 1}));
    CHECK(left.contains(event_region_left()));

    PastRegion weak = PastRegion::of(PastRegion::Kind::weak, event_region_left(),
                                     event_region_right());
    CHECK(weak.contains(MinimalCone{0, 1}));
    CHECK(weak.contains(common));

    PastRegion strong = PastRegion::of(PastRegion::Kind::strong, event_region_left(),
                                       event_region_right());
    CHECK(common.contains(strong));
}

TEST_CASE("support queries on surface elements") {
    AlgebraElement yl = AlgebraElement::generator(SiteIndex::at_half(-1)) *
                        AlgebraElement::generator(SiteIndex::at_half(0));
    CHECK(supported_in(yl, cause_region()));
    CHECK_FALSE(supported_in(AlgebraElement::generator(SiteIndex::at_integer(3)),
                             cause_region()));
    CHECK(supported_in(AlgebraElement::identity(), cause_region()));
    PastRegion common = PastRegion::of(PastRegion::Kind::common, event_region_left(),
                                       event_region_right());
    CHECK(supported_in(yl, common));
    CHECK_FALSE(supported_in(AlgebraElement::generator(SiteIndex::at_half(2)), common));
}
