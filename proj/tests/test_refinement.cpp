#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "elc/refinement.hpp"
#include "support/oracles.hpp"
#include "support/scenes.hpp"

using namespace elc;

namespace
{

KnownInstanceSet make_known(const std::vector<std::pair<std::vector<Point3>, InstanceId>>& parts, double r)
{
    KnownInstanceSet known;
    known.radius = r;
    for (const auto& [pts, id] : parts)
    {
        known.cloud.points.insert(known.cloud.points.end(), pts.begin(), pts.end());
        known.ids.insert(known.ids.end(), pts.size(), id);
    }
    return known;
}

// Splits a random scene into azimuth sectors; neighboring sectors usually touch.
KnownInstanceSet sector_instances(std::mt19937_64& rng, double r)
{
    KnownInstanceSet known;
    known.cloud = testing::random_scene(rng, 200, 1500);
    known.radius = r;
    for (const auto& p : known.cloud.points)
    {
        const double t = (std::atan2(p.y, p.x) + std::numbers::pi) / (2 * std::numbers::pi);
        known.ids.push_back(1 + static_cast<InstanceId>(std::min(t, 0.999999) * 24) * 3);
    }
    return known;
}

}  // namespace

TEST_CASE("validation")
{
    KnownInstanceSet known = make_known({{{{1, 0, 0}}, 1}}, 1.0);
    CHECK_NOTHROW(known.validate());
    known.radius = 0.0;
    CHECK_THROWS_AS(known.validate(), std::invalid_argument);
    known.radius = 1.0;
    known.ids[0] = 0;
    CHECK_THROWS_AS(known.validate(), std::invalid_argument);
    known.ids.push_back(2);
    CHECK_THROWS_AS(known.validate(), std::invalid_argument);
}

TEST_CASE("diffuse grouping by contact")
{
    SUBCASE("direct contact")
    {
        const auto known = make_known({{{{10, 0, 0}, {10.2, 0, 0}}, 4}, {{{10.7, 0, 0}}, 9}}, 1.0);
        CHECK(diffuse_groups(known) == std::vector<std::vector<InstanceId>>{{4, 9}});
    }
    SUBCASE("far apart")
    {
        const auto known = make_known({{{{10, 0, 0}}, 1}, {{{20, 0, 0}}, 2}}, 1.0);
        CHECK(diffuse_groups(known) == std::vector<std::vector<InstanceId>>{{1}, {2}});
    }
    SUBCASE("transitive chain")
    {
        // A touches B, B touches C, A and C are 1.6 m apart.
        const auto known = make_known({{{{10, 0, 0}}, 3}, {{{10.8, 0, 0}}, 1}, {{{11.6, 0, 0}}, 2}}, 1.0);
        const auto groups = diffuse_groups(known);
        CHECK(groups == std::vector<std::vector<InstanceId>>{{1, 2, 3}});
        CHECK(groups == testing::transitive_instance_groups(known.cloud.points, known.ids, 1.0));
    }
    SUBCASE("empty set")
    {
        CHECK(diffuse_groups(KnownInstanceSet{}).empty());
    }
}

TEST_CASE("diffuse groups match the transitive-closure oracle")
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> radius(0.2, 2.5);
    for (int trial = 0; trial < 12; ++trial)
    {
        const auto known = sector_instances(rng, radius(rng));
        const auto groups = diffuse_groups(known);
        CHECK(groups == testing::transitive_instance_groups(known.cloud.points, known.ids, known.radius));

        // Every ID exactly once.
        std::set<InstanceId> seen;
        std::size_t total = 0;
        for (const auto& g : groups)
        {
            seen.insert(g.begin(), g.end());
            total += g.size();
        }
        CHECK(total == seen.size());
        CHECK(seen == std::set<InstanceId>(known.ids.begin(), known.ids.end()));
    }
}

TEST_CASE("refinement of a single compact instance is a fixed point")
{
    const auto known = make_known({{testing::grid_block({10, 0, 0}, 0.1, 0.1, 4, 4, 4), 5}}, 1.0);
    const auto refined = refine_known(known, EllipsoidParams{});
    CHECK(refined.ids == std::vector<InstanceId>(known.cloud.size(), 1));
}

TEST_CASE("an over-segmented car heals into one instance")
{
    const auto front = testing::grid_block({10.0, -0.8, -1.0}, 0.1, 0.2, 11, 17, 8);
    const auto rear = testing::grid_block({11.3, -0.8, -1.0}, 0.1, 0.2, 11, 17, 8);
    const auto known = make_known({{front, 1}, {rear, 2}}, 1.0);
    CHECK(diffuse_groups(known).size() == 1);
    const auto refined = refine_known(known, EllipsoidParams{});
    CHECK(testing::count_instances(refined.ids) == 1);
}

TEST_CASE("instances beyond both reaches stay apart")
{
    // At 10-12 m the largest semi-axis is a = 1.0, so 3 m exceeds both r and 2 * a.
    const auto a = testing::grid_block({10.0, 0.0, 0.0}, 0.1, 0.1, 3, 3, 3);
    const auto b = testing::grid_block({13.2, 0.0, 0.0}, 0.1, 0.1, 3, 3, 3);
    const auto known = make_known({{a, 1}, {b, 2}}, 1.0);
    const auto refined = refine_known(known, EllipsoidParams{});
    CHECK(testing::count_instances(refined.ids) == 2);
    CHECK(testing::same_partition(refined.ids, known.ids));
}

TEST_CASE("refined labeling is a partition with dense global IDs")
{
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 8; ++trial)
    {
        const auto known = sector_instances(rng, 1.0);
        const auto refined = refine_known(known, EllipsoidParams{});
        REQUIRE(refined.size() == known.cloud.size());
        std::set<InstanceId> ids(refined.ids.begin(), refined.ids.end());
        CHECK(ids.count(0) == 0);
        CHECK(*ids.rbegin() == ids.size());

        // A refined instance never spans two diffuse groups.
        const auto groups = diffuse_groups(known);
        std::map<InstanceId, std::size_t> group_of;
        for (std::size_t g = 0; g < groups.size(); ++g)
            for (InstanceId id : groups[g])
                group_of[id] = g;
        std::vector<InstanceId> group_label;
        for (InstanceId id : known.ids)
            group_label.push_back(static_cast<InstanceId>(group_of[id]));
        CHECK(testing::is_refinement_of(refined.ids, group_label));
    }
}

TEST_CASE("relabeling the input instances does not change the refined partition")
{
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 5; ++trial)
    {
        const auto known = sector_instances(rng, 1.0);
        auto relabeled = known;
        for (auto& id : relabeled.ids)
            id = 1000 - id;  // reverses group processing order
        CHECK(testing::same_partition(refine_known(known, EllipsoidParams{}).ids,
                                      refine_known(relabeled, EllipsoidParams{}).ids));
    }
}

TEST_CASE("isolated instances reduce to per-instance re-clustering")
{
    std::vector<std::pair<std::vector<Point3>, InstanceId>> parts;
    std::vector<Point3> all;
    for (int k = 0; k < 5; ++k)
    {
        auto block = testing::grid_block({8.0 + 4.0 * k, 0.0, 0.0}, 0.1, 0.1, 3, 3, 3);
        // A second, detached piece of the same instance splits off.
        if (k == 2)
        {
            const auto extra = testing::grid_block({16.0, 0.0, 1.8}, 0.1, 0.1, 2, 2, 2);
            block.insert(block.end(), extra.begin(), extra.end());
        }
        parts.push_back({block, static_cast<InstanceId>(k + 1)});
    }
    const auto known = make_known(parts, 1.0);
    const auto groups = diffuse_groups(known);
    CHECK(groups.size() == 5);
    for (const auto& g : groups)
        CHECK(g.size() == 1);
    const auto refined = refine_known(known, EllipsoidParams{});
    CHECK(testing::count_instances(refined.ids) == 6);
}

TEST_CASE("majority semantic vote")
{
    const InstanceLabeling labeling{{1, 1, 1, 2, 2, 0, 3, 3}};
    const std::vector<SemanticId> semantic{10, 10, 18, 30, 31, 40, 18, 18};
    const auto vote = majority_semantic(labeling, semantic);
    CHECK(vote.size() == 3);
    CHECK(vote.at(1) == 10);
    CHECK(vote.at(2) == 30);  // tie goes to the smaller class
    CHECK(vote.at(3) == 18);
    CHECK_THROWS_AS(majority_semantic(labeling, std::vector<SemanticId>{1}), std::invalid_argument);
}
