#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <set>

#include "test_support.hpp"
#include "tlcr/corpus.hpp"
#include "tlcr/error.hpp"
#include "tlcr/patches.hpp"
#include "tlcr/resample.hpp"

namespace tlcr {
namespace {

using testing::random_image;
using testing::random_values;

PatchGeometry geometry(int w, int h, int p = 12, int o = 4, int win = 20, int s = 2) {
    PatchGeometry g;
    g.patch_size = p;
    g.overlap = o;
    g.window_size = win;
    g.context_step = s;
    g.image_width = w;
    g.image_height = h;
    return g;
}

// Brute-force grid: step by the stride while the patch fits, then add a patch
// flush with the border if the last pixel is still uncovered.
std::vector<int> brute_positions(int extent, int p, int stride) {
    std::vector<int> pos;
    for (int t = 0; t + p <= extent; t += stride) {
        pos.push_back(t);
    }
    if (pos.back() + p < extent) {
        pos.push_back(extent - p);
    }
    return pos;
}

TEST(PatchGeometry, Validation) {
    EXPECT_NO_THROW(geometry(100, 120).validate());
    EXPECT_THROW(geometry(100, 120, 12, 12).validate(), InvalidInput);
    EXPECT_THROW(geometry(100, 120, 12, -1).validate(), InvalidInput);
    EXPECT_THROW(geometry(100, 120, 12, 4, 10).validate(), InvalidInput);
    EXPECT_THROW(geometry(100, 120, 12, 4, 19, 2).validate(), InvalidInput);
    EXPECT_THROW(geometry(100, 120, 12, 4, 20, 0).validate(), InvalidInput);
    EXPECT_THROW(geometry(11, 120).validate(), InvalidInput);
    EXPECT_EQ(geometry(100, 120).feature_dim(), 146);
    EXPECT_EQ(geometry(100, 120).offsets_per_axis(), 5);
}

TEST(Grid, FaceSizedImage) {
    const auto g = geometry(100, 120);
    const auto grid = enumerate_grid(g);
    const auto rows = brute_positions(120, 12, 8);
    const auto cols = brute_positions(100, 12, 8);
    // 100 = 11 * 8 + 12 tiles exactly; 120 needs one border-clamped row.
    EXPECT_EQ(cols.size(), 12u);
    EXPECT_EQ(rows.size(), 15u);
    ASSERT_EQ(grid.size(), 180u);
    std::size_t i = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c, ++i) {
            EXPECT_EQ(grid[i].grid_row, static_cast<int>(r));
            EXPECT_EQ(grid[i].grid_col, static_cast<int>(c));
            EXPECT_EQ(grid[i].top, rows[r]);
            EXPECT_EQ(grid[i].left, cols[c]);
            EXPECT_EQ(grid[i].top, std::min(grid[i].grid_row * 8, 120 - 12));
            EXPECT_EQ(grid[i].left, std::min(grid[i].grid_col * 8, 100 - 12));
        }
    }
}

TEST(Grid, CoversEveryPixel) {
    for (auto [w, h, p, o] : std::vector<std::array<int, 4>>{{100, 120, 12, 4}, {37, 29, 7, 3}, {16, 16, 5, 0}}) {
        const auto g = geometry(w, h, p, o, p, 1);
        std::vector<int> hits(static_cast<std::size_t>(w) * h, 0);
        for (const auto& idx : enumerate_grid(g)) {
            ASSERT_LE(idx.top + p, h);
            ASSERT_LE(idx.left + p, w);
            for (int y = idx.top; y < idx.top + p; ++y) {
                for (int x = idx.left; x < idx.left + p; ++x) {
                    ++hits[static_cast<std::size_t>(y) * w + x];
                }
            }
        }
        for (int v : hits) {
            ASSERT_GE(v, 1);
        }
    }
}

TEST(Grid, SinglePatch) {
    const auto grid = enumerate_grid(geometry(12, 12));
    ASSERT_EQ(grid.size(), 1u);
    EXPECT_EQ(grid[0], (PatchIndex{0, 0, 0, 0}));
}

TEST(Grid, ExactTilingIsDisjoint) {
    const auto grid = enumerate_grid(geometry(24, 24, 12, 0, 12, 1));
    ASSERT_EQ(grid.size(), 4u);
    std::set<std::pair<int, int>> corners;
    for (const auto& i : grid) {
        corners.insert({i.top, i.left});
    }
    EXPECT_EQ(corners, (std::set<std::pair<int, int>>{{0, 0}, {0, 12}, {12, 0}, {12, 12}}));
}

TEST(Grid, TooSmallImageRejected) {
    EXPECT_THROW(enumerate_grid(geometry(11, 20)), InvalidInput);
}

TEST(CandidateCount, PublishedSetting) {
    EXPECT_EQ(candidate_count(360, geometry(100, 120)), 9000);
    EXPECT_EQ(candidate_count(10, geometry(100, 120, 12, 4, 16, 2)), 90);
    EXPECT_EQ(candidate_count(37, geometry(100, 120, 12, 4, 12, 2)), 37);
}

TEST(CandidateCount, MonotoneInWindow) {
    std::int64_t prev = 0;
    for (int w = 12; w <= 32; w += 2) {
        const auto n = candidate_count(50, geometry(100, 120, 12, 4, w, 2));
        EXPECT_GE(n, prev);
        prev = n;
    }
}

TEST(ContextOffsets, CenteredAndClamped) {
    const auto g = geometry(100, 120);
    EXPECT_EQ(context_offsets(40, 100, g), (std::vector<int>{36, 38, 40, 42, 44}));
    EXPECT_EQ(context_offsets(0, 100, g), (std::vector<int>{0, 2, 4, 6, 8}));
    EXPECT_EQ(context_offsets(88, 100, g), (std::vector<int>{80, 82, 84, 86, 88}));
    for (int pos = 0; pos <= 88; ++pos) {
        const auto offs = context_offsets(pos, 100, g);
        EXPECT_EQ(offs.size(), 5u);
        EXPECT_GE(offs.front(), 0);
        EXPECT_LE(offs.back() + 12, 100);
    }
    // Window wider than the image: only offsets that fit.
    EXPECT_EQ(context_offsets(2, 16, g), (std::vector<int>{0, 2, 4}));
}

TEST(Features, ConstantPatch) {
    const auto g = geometry(100, 120);
    const std::vector<double> patch(144, 0.37);
    const auto f = make_lr_feature(patch, {0, 0, 0, 0}, 10.0, g);
    ASSERT_EQ(f.values.size(), 146u);
    for (int i = 0; i < 144; ++i) {
        EXPECT_NEAR(f.values[i], 0.0, 1e-15);
    }
    EXPECT_NEAR(f.source_mean, 0.37, 1e-15);
    EXPECT_EQ(f.values[144], 0.0);
    EXPECT_EQ(f.values[145], 0.0);
}

TEST(Features, PositionEntries) {
    const auto g = geometry(100, 120);
    const std::vector<double> patch = random_values(144, 5);
    const auto br = make_lr_feature(patch, {14, 11, 108, 88}, 10.0, g);
    EXPECT_DOUBLE_EQ(br.values[144], 10.0);
    EXPECT_DOUBLE_EQ(br.values[145], 10.0);
    const auto mid = make_lr_feature(patch, {5, 5, 40, 44}, 3.0, g);
    EXPECT_DOUBLE_EQ(mid.values[144], 3.0 * 44.0 / 88.0);
    EXPECT_DOUBLE_EQ(mid.values[145], 3.0 * 40.0 / 108.0);
    EXPECT_EQ(normalized_coordinate(0, 12, 12), 0.0);
}

TEST(Features, MeanRemovedForRandomPatches) {
    const auto g = geometry(100, 120);
    const auto img = random_image(100, 120, 9);
    for (const auto& idx : enumerate_grid(g)) {
        const auto pixels = extract_patch(img, idx.top, idx.left, 12);
        const auto f = make_lr_feature(pixels, idx, 10.0, g);
        const double sum = std::accumulate(f.values.begin(), f.values.begin() + 144, 0.0);
        ASSERT_NEAR(sum, 0.0, 1e-9);
        const double mean = std::accumulate(pixels.begin(), pixels.end(), 0.0) / 144.0;
        ASSERT_NEAR(f.source_mean, mean, 1e-15);

        std::vector<double> direct(146);
        const double m = write_lr_feature(img.data(), idx.top, idx.left, 10.0, g, direct);
        ASSERT_EQ(m, f.source_mean);
        ASSERT_EQ(direct, f.values);
    }
}

TEST(Residual, Examples) {
    const auto a = random_values(144, 1);
    for (double v : make_hr_residual(a, a)) {
        EXPECT_EQ(v, 0.0);
    }
    std::vector<double> shifted(a);
    for (auto& v : shifted) {
        v += 0.1;
    }
    for (double v : make_hr_residual(shifted, a)) {
        EXPECT_NEAR(v, 0.1, 1e-15);
    }
    const auto b = random_values(144, 2);
    const auto r = make_hr_residual(a, b);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(r[i], a[i] - b[i]);
    }
}

class GatherTest : public ::testing::Test {
protected:
    void SetUp() override {
        cfg.window_size = 20;
        std::vector<ImageBuffer> hr;
        for (int m = 0; m < 6; ++m) {
            hr.push_back(random_image(48, 40, 100 + m));
        }
        corpus = prepare_corpus(hr, cfg);
    }

    FeatureVector feature_from(int image, const PatchIndex& idx, const PatchGeometry& g) {
        const auto pixels = extract_patch(corpus.entry(image).upscaled_lr, idx.top, idx.left, g.patch_size);
        return make_lr_feature(pixels, idx, cfg.f, g);
    }

    HallucinationConfig cfg;
    TrainingCorpus corpus;
};

TEST_F(GatherTest, InteriorCountAndDistances) {
    const auto g = cfg.geometry(48, 40);
    const PatchIndex pos{2, 2, 16, 16};
    const auto test = feature_from(0, pos, g);
    const auto set = gather_candidates(test, pos, corpus, g, cfg.f);
    ASSERT_EQ(static_cast<std::int64_t>(set.size()), candidate_count(6, g));
    int zeros = 0;
    for (std::size_t i = 0; i < set.size(); ++i) {
        const auto& src = set.sources()[i];
        EXPECT_GE(src.top, 12);
        EXPECT_LE(src.top, 20);
        EXPECT_GE(src.left, 12);
        EXPECT_LE(src.left, 20);
        const auto oracle = feature_from(src.image, {0, 0, src.top, src.left}, g);
        double d2 = 0.0;
        for (int j = 0; j < g.feature_dim(); ++j) {
            ASSERT_EQ(set.feature(i)[j], oracle.values[j]);
            d2 += (test.values[j] - oracle.values[j]) * (test.values[j] - oracle.values[j]);
        }
        ASSERT_NEAR(set.distances()[i], std::sqrt(d2), 1e-12);
        ASSERT_GE(set.distances()[i], 0.0);
        if (src == CandidateSource{0, 16, 16}) {
            EXPECT_EQ(set.distances()[i], 0.0);
            ++zeros;
        }
        const auto hr = set.hr_patch(i);
        EXPECT_EQ(hr, extract_patch(corpus.entry(src.image).residual, src.top, src.left, 12));
    }
    EXPECT_EQ(zeros, 1);
    const auto pos_idx = set.position_indices(pos);
    ASSERT_EQ(pos_idx.size(), 6u);
    for (int i : pos_idx) {
        EXPECT_EQ(set.sources()[i].top, 16);
        EXPECT_EQ(set.sources()[i].left, 16);
    }
}

TEST_F(GatherTest, WindowEqualToPatchGivesPositionPatches) {
    cfg.window_size = cfg.patch_size;
    const auto g = cfg.geometry(48, 40);
    const PatchIndex pos{1, 3, 8, 24};
    const auto set = gather_candidates(feature_from(2, pos, g), pos, corpus, g, cfg.f);
    ASSERT_EQ(set.size(), corpus.size());
    for (std::size_t m = 0; m < set.size(); ++m) {
        EXPECT_EQ(set.sources()[m], (CandidateSource{static_cast<int>(m), 8, 24}));
    }
}

TEST_F(GatherTest, BorderPositionKeepsCount) {
    const auto g = cfg.geometry(48, 40);
    const PatchIndex pos{0, 0, 0, 0};
    const auto set = gather_candidates(feature_from(1, pos, g), pos, corpus, g, cfg.f);
    EXPECT_EQ(static_cast<std::int64_t>(set.size()), candidate_count(6, g));
}

TEST_F(GatherTest, Errors) {
    const auto g = cfg.geometry(48, 40);
    FeatureVector bad;
    bad.values.assign(10, 0.0);
    EXPECT_THROW(gather_candidates(bad, {0, 0, 0, 0}, corpus, g, cfg.f), InvalidInput);
    const auto ok = feature_from(0, {0, 0, 0, 0}, g);
    EXPECT_THROW(gather_candidates(ok, {0, 0, 0, 0}, TrainingCorpus{}, g, cfg.f), InvalidInput);
}

TEST(Assemble, ConstantPatches) {
    const auto g = geometry(40, 28);
    std::vector<PlacedPatch> patches;
    for (const auto& idx : enumerate_grid(g)) {
        patches.push_back({idx, std::vector<double>(144, -0.25)});
    }
    for (double v : assemble(patches, g).data()) {
        EXPECT_NEAR(v, -0.25, 1e-15);
    }
}

TEST(Assemble, TwoOverlappingPatches) {
    const auto g = geometry(20, 12, 12, 4, 12, 1);
    const std::vector<PlacedPatch> patches{{{0, 0, 0, 0}, std::vector<double>(144, 0.2)},
                                           {{0, 1, 0, 8}, std::vector<double>(144, 0.6)}};
    const auto out = assemble(patches, g);
    EXPECT_EQ(out(0, 5), 0.2);
    EXPECT_EQ(out(19, 5), 0.6);
    for (int x = 8; x < 12; ++x) {
        EXPECT_NEAR(out(x, 3), 0.4, 1e-15);
    }
}

TEST(Assemble, MatchesAccumulateCountOracle) {
    const auto g = geometry(37, 29, 7, 3, 7, 1);
    std::vector<PlacedPatch> patches;
    std::uint64_t seed = 1;
    for (const auto& idx : enumerate_grid(g)) {
        patches.push_back({idx, random_values(49, seed++, -1.0, 1.0)});
    }
    std::vector<double> acc(37 * 29, 0.0);
    std::vector<int> cnt(37 * 29, 0);
    for (const auto& pp : patches) {
        for (int y = 0; y < 7; ++y) {
            for (int x = 0; x < 7; ++x) {
                const int i = (pp.index.top + y) * 37 + pp.index.left + x;
                acc[i] += pp.values[y * 7 + x];
                ++cnt[i];
            }
        }
    }
    const auto out = assemble(patches, g);
    for (std::size_t i = 0; i < acc.size(); ++i) {
        EXPECT_NEAR(out.data()[i], acc[i] / cnt[i], 1e-14);
    }
}

TEST(Assemble, ExtractThenAssembleIsIdentity) {
    const auto img = random_image(37, 29, 77);
    for (int o : {0, 2, 5}) {
        const auto g = geometry(37, 29, 7, o, 7, 1);
        std::vector<PlacedPatch> patches;
        for (const auto& idx : enumerate_grid(g)) {
            patches.push_back({idx, extract_patch(img, idx.top, idx.left, 7)});
        }
        const auto out = assemble(patches, g);
        for (std::size_t i = 0; i < img.size(); ++i) {
            if (o == 0) {
                EXPECT_EQ(out.data()[i], img.data()[i]);
            } else {
                EXPECT_NEAR(out.data()[i], img.data()[i], 1e-15);
            }
        }
    }
}

TEST(Assemble, UncoveredPixelIsAnError) {
    const auto g = geometry(24, 12, 12, 0, 12, 1);
    const std::vector<PlacedPatch> patches{{{0, 0, 0, 0}, std::vector<double>(144, 0.0)}};
    EXPECT_THROW(assemble(patches, g), Error);
}

} // namespace
} // namespace tlcr
