#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <random>
#include <set>

#include "streamidx/batcher.hpp"
#include "test_util.hpp"

using namespace streamidx;

namespace {
ItemRecord tagged(std::uint64_t id, std::uint32_t tag) {
    return testutil::item(id, {1.0, 0.0}, tag);
}
}  // namespace

TEST_CASE("different tags never share a batch") {
    TagBatcher batcher(2, 100);
    CHECK(!batcher.push(tagged(1, 3)));
    CHECK(!batcher.push(tagged(2, 7)));

    auto batch = batcher.push(tagged(3, 3));
    REQUIRE(batch);
    CHECK(batch->size() == 2);
    CHECK((*batch)[0].tag == 3);
    CHECK((*batch)[1].tag == 3);
}

TEST_CASE("interleaved tags emit once one tag accumulates a full batch") {
    TagBatcher batcher(3, 100);
    CHECK(!batcher.push(tagged(1, 1)));
    CHECK(!batcher.push(tagged(2, 2)));
    CHECK(!batcher.push(tagged(3, 1)));
    CHECK(!batcher.push(tagged(4, 2)));
    auto batch = batcher.push(tagged(5, 1));
    REQUIRE(batch);
    REQUIRE(batch->size() == 3);
    CHECK((*batch)[0].item_id == 1);
    CHECK((*batch)[1].item_id == 3);
    CHECK((*batch)[2].item_id == 5);
}

TEST_CASE("recycle: empty set is a no-op, overflow drops oldest") {
    TagBatcher batcher(4, 2);
    batcher.recycle({});
    CHECK(batcher.recycle_pending() == 0);
    CHECK(batcher.recycle_dropped() == 0);

    batcher.recycle({tagged(1, 0), tagged(2, 0), tagged(3, 0)});
    CHECK(batcher.recycle_pending() == 2);
    CHECK(batcher.recycle_dropped() == 1);

    // The survivors are the two newest (2 and 3).
    auto batches = batcher.flush();
    REQUIRE(batches.size() == 1);
    REQUIRE(batches[0].size() == 2);
    CHECK(batches[0][0].item_id == 2);
    CHECK(batches[0][1].item_id == 3);
}

TEST_CASE("recycled items re-enter ahead of fresh same-tag items") {
    TagBatcher batcher(2, 100);
    batcher.recycle({tagged(100, 5)});
    auto batch = batcher.push(tagged(200, 5));
    REQUIRE(batch);
    REQUIRE(batch->size() == 2);
    CHECK((*batch)[0].item_id == 100);
    CHECK((*batch)[1].item_id == 200);
}

TEST_CASE("recycled items precede queued fresh items of the same tag") {
    TagBatcher batcher(3, 100);
    CHECK(!batcher.push(tagged(1, 5)));
    batcher.recycle({tagged(90, 5), tagged(91, 5)});
    auto batch = batcher.push(tagged(2, 5));
    REQUIRE(batch);
    REQUIRE(batch->size() == 4);  // recycle re-entry can push past batch_size
    CHECK((*batch)[0].item_id == 90);
    CHECK((*batch)[1].item_id == 91);
    CHECK((*batch)[2].item_id == 1);
    CHECK((*batch)[3].item_id == 2);
}

TEST_CASE("flush: empty, undersized, and per-tag batches; recycle drained last") {
    TagBatcher batcher(2, 100);
    CHECK(batcher.flush().empty());

    CHECK(!batcher.push(tagged(1, 4)));
    auto batches = batcher.flush();
    REQUIRE(batches.size() == 1);
    CHECK(batches[0].size() == 1);

    CHECK(!batcher.push(tagged(2, 1)));
    CHECK(!batcher.push(tagged(3, 9)));
    batcher.recycle({tagged(50, 1)});
    batches = batcher.flush();
    REQUIRE(batches.size() == 3);
    CHECK(batches[0][0].tag == 1);
    CHECK(batches[1][0].tag == 9);
    CHECK(batches[2][0].item_id == 50);  // recycle group last
    for (const auto& b : batches) {
        std::set<std::uint32_t> tags;
        for (const auto& item : b) tags.insert(item.tag);
        CHECK(tags.size() == 1);
    }
}

TEST_CASE("conservation and homogeneity over a random run") {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<std::uint32_t> tag(0, 6);
    TagBatcher batcher(8, 1000);

    std::set<std::uint64_t> emitted;
    std::vector<Batch> batches;
    for (std::uint64_t id = 0; id < 500; ++id) {
        if (auto b = batcher.push(tagged(id, tag(rng)))) batches.push_back(std::move(*b));
    }
    for (auto& b : batcher.flush()) batches.push_back(std::move(b));

    std::size_t total = 0;
    for (const auto& b : batches) {
        total += b.size();
        std::set<std::uint32_t> tags;
        for (const auto& item : b) {
            tags.insert(item.tag);
            CHECK(emitted.insert(item.item_id).second);  // exactly once
        }
        CHECK(tags.size() == 1);
    }
    CHECK(total == 500);
    CHECK(batcher.pending_items() == 0);
}

TEST_CASE("recycle-priority: recycled item emitted no later than later fresh items") {
    TagBatcher batcher(3, 100);
    CHECK(!batcher.push(tagged(1, 2)));
    batcher.recycle({tagged(99, 2)});
    // Re-entry puts 99 in front, so the fresh push completes the batch.
    auto batch = batcher.push(tagged(2, 2));
    REQUIRE(batch);
    REQUIRE(batch->size() == 3);
    CHECK((*batch)[0].item_id == 99);
    CHECK((*batch)[1].item_id == 1);
    CHECK((*batch)[2].item_id == 2);
}
