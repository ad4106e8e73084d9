#include "resmgcn/metrics.hpp"

#include "resmgcn/errors.hpp"
#include "resmgcn/util.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace resmgcn;

namespace {

// ---- brute-force oracles ----------------------------------------------
// Independent of the library path: quadratic pair counting for AUROC,
// per-positive counting for average precision.

double auroc_oracle(const ScoredPairs& sp) {
    std::uint64_t twice_greater = 0, ties = 0, pos = 0, neg = 0;
    for (std::size_t i = 0; i < sp.size(); ++i) {
        if (!sp.labels[i]) continue;
        ++pos;
        for (std::size_t j = 0; j < sp.size(); ++j) {
            if (sp.labels[j]) continue;
            if (sp.scores[i] > sp.scores[j]) twice_greater += 2;
            if (sp.scores[i] == sp.scores[j]) ++ties;
        }
    }
    for (std::uint8_t l : sp.labels) neg += (l == 0);
    return static_cast<double>(twice_greater + ties) / (2.0 * pos * neg);
}

double auprc_oracle(const ScoredPairs& sp) {
    // Every positive contributes precision over the set of items scoring at
    // least as high as it does (tied block boundary). Contributions are
    // summed in descending-score order.
    std::vector<std::size_t> order(sp.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return sp.scores[a] > sp.scores[b]; });
    double sum = 0.0;
    std::size_t positives = 0;
    for (std::size_t idx : order) {
        if (!sp.labels[idx]) continue;
        ++positives;
        std::size_t at_least = 0, tp = 0;
        for (std::size_t j = 0; j < sp.size(); ++j) {
            if (sp.scores[j] >= sp.scores[idx]) {
                ++at_least;
                tp += sp.labels[j];
            }
        }
        sum += static_cast<double>(tp) / static_cast<double>(at_least);
    }
    return sum / static_cast<double>(positives);
}

ScoredPairs make_pairs(std::initializer_list<double> scores, std::initializer_list<int> labels) {
    ScoredPairs sp;
    for (double s : scores) sp.scores.push_back(s);
    for (int l : labels) sp.labels.push_back(static_cast<std::uint8_t>(l));
    return sp;
}

bool has_both_classes(const ScoredPairs& sp) {
    bool pos = false, neg = false;
    for (std::uint8_t l : sp.labels) (l ? pos : neg) = true;
    return pos && neg;
}

} // namespace

TEST_CASE("perfect ranking scores 1.0 on both metrics") {
    const auto sp = make_pairs({0.9, 0.8, 0.7, 0.2, 0.1}, {1, 1, 1, 0, 0});
    CHECK(auroc(sp) == 1.0);
    CHECK(auprc(sp) == 1.0);
}

TEST_CASE("all-equal scores give AUROC 0.5 and AUPRC equal to prevalence") {
    const auto sp = make_pairs({0.4, 0.4, 0.4, 0.4}, {1, 0, 0, 1});
    CHECK(auroc(sp) == 0.5);
    CHECK(auprc(sp) == 0.5);

    const auto skewed = make_pairs({0.3, 0.3, 0.3, 0.3, 0.3}, {1, 0, 0, 0, 0});
    CHECK(auprc(skewed) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(auprc(skewed) == auprc_oracle(skewed));
}

TEST_CASE("single-class input raises MetricError") {
    CHECK_THROWS_AS(auroc(make_pairs({0.1, 0.2}, {1, 1})), MetricError);
    CHECK_THROWS_AS(auroc(make_pairs({0.1, 0.2}, {0, 0})), MetricError);
    CHECK_THROWS_AS(auprc(make_pairs({0.1, 0.2}, {0, 0})), MetricError);
    CHECK_NOTHROW(auprc(make_pairs({0.1, 0.2}, {1, 1}))); // all-positive AP is defined (= 1)
    CHECK(auprc(make_pairs({0.1, 0.2}, {1, 1})) == 1.0);
}

TEST_CASE("six scores with one tie match the quadratic oracle and the frozen value") {
    const auto sp = make_pairs({0.9, 0.7, 0.7, 0.5, 0.3, 0.1}, {1, 1, 0, 0, 1, 0});
    const double expected = auroc_oracle(sp);
    CHECK(auroc(sp) == expected);
    // 9 pairs of (pos, neg): 0.9 beats all three negs; 0.7-pos ties 0.7-neg,
    // beats 0.5 and 0.1; 0.3 beats only 0.1 -> (2*(3+2+1) + 1) / (2*9)
    CHECK(expected == doctest::Approx(13.0 / 18.0).epsilon(1e-15));
    CHECK(auroc(sp) == 13.0 / 18.0);
}

TEST_CASE("five-element mixed ranking matches the rank-walk oracle and frozen value") {
    const auto sp = make_pairs({0.8, 0.6, 0.5, 0.4, 0.2}, {1, 0, 1, 0, 1});
    CHECK(auprc(sp) == auprc_oracle(sp));
    // positives at ranks 1, 3, 5 -> (1/1 + 2/3 + 3/5) / 3
    CHECK(auprc(sp) == doctest::Approx((1.0 + 2.0 / 3.0 + 3.0 / 5.0) / 3.0).epsilon(1e-15));
}

TEST_CASE("metrics match brute-force oracles exactly on every input up to length 8") {
    // Score multisets over {1..len} (ordering of equal inputs cannot matter)
    // crossed with every label pattern: covers every tie structure.
    std::size_t cases = 0;
    for (std::size_t len = 1; len <= 8; ++len) {
        std::vector<std::size_t> scores(len, 1); // non-decreasing multiset over 1..len
        while (true) {
            for (std::uint32_t labels = 0; labels < (1u << len); ++labels) {
                ScoredPairs sp;
                for (std::size_t i = 0; i < len; ++i) {
                    sp.push(static_cast<double>(scores[i]), (labels >> i) & 1u);
                }
                const bool any_pos = labels != 0;
                if (has_both_classes(sp)) {
                    CHECK(auroc(sp) == auroc_oracle(sp));
                }
                if (any_pos) {
                    CHECK(auprc(sp) == auprc_oracle(sp));
                }
                ++cases;
            }
            // next non-decreasing sequence
            std::size_t i = len;
            while (i > 0 && scores[i - 1] == len) --i;
            if (i == 0) break;
            const std::size_t next = scores[i - 1] + 1;
            for (std::size_t j = i - 1; j < len; ++j) scores[j] = next;
        }
    }
    CHECK(cases > 1000000); // exhaustive sweep actually ran
}

TEST_CASE("metric value is independent of input order") {
    Rng rng(51);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t len = 2 + rng.uniform_index(7);
        ScoredPairs sp;
        bool pos = false, neg = false;
        for (std::size_t i = 0; i < len; ++i) {
            const bool label = rng.uniform_index(2) == 1;
            sp.push(static_cast<double>(1 + rng.uniform_index(len)), label);
            (label ? pos : neg) = true;
        }
        if (!pos || !neg) continue;
        ScoredPairs shuffled = sp;
        std::vector<std::size_t> perm(len);
        for (std::size_t i = 0; i < len; ++i) perm[i] = i;
        rng.shuffle(perm);
        for (std::size_t i = 0; i < len; ++i) {
            shuffled.scores[i] = sp.scores[perm[i]];
            shuffled.labels[i] = sp.labels[perm[i]];
        }
        CHECK(auroc(sp) == auroc(shuffled));
        CHECK(auprc(sp) == auprc(shuffled));
    }
}

TEST_CASE("auroc is invariant under strictly monotone score transforms") {
    Rng rng(52);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t len = 2 + rng.uniform_index(10);
        ScoredPairs sp;
        bool pos = false, neg = false;
        for (std::size_t i = 0; i < len; ++i) {
            const bool label = rng.uniform_index(2) == 1;
            sp.push(static_cast<double>(rng.uniform_index(6)) / 4.0, label);
            (label ? pos : neg) = true;
        }
        if (!pos || !neg) continue;
        ScoredPairs affine = sp, cubed = sp;
        for (std::size_t i = 0; i < len; ++i) {
            affine.scores[i] = 3.0 * sp.scores[i] + 0.5;
            cubed.scores[i] = sp.scores[i] * sp.scores[i] * sp.scores[i];
        }
        CHECK(auroc(sp) == auroc(affine));
        CHECK(auroc(sp) == auroc(cubed));
    }
}

TEST_CASE("complement property on tie-free inputs") {
    Rng rng(53);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t len = 2 + rng.uniform_index(10);
        ScoredPairs sp;
        bool pos = false, neg = false;
        for (std::size_t i = 0; i < len; ++i) {
            const bool label = rng.uniform_index(2) == 1;
            // distinct scores: index-offset grid
            sp.push(static_cast<double>(i) + rng.uniform_real(0.0, 0.5), label);
            (label ? pos : neg) = true;
        }
        if (!pos || !neg) continue;
        ScoredPairs flipped = sp;
        for (auto& l : flipped.labels) l = static_cast<std::uint8_t>(1 - l);
        CHECK(auroc(sp) + auroc(flipped) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("curve points: endpoints and monotone recall") {
    const auto sp = make_pairs({0.9, 0.8, 0.8, 0.4, 0.2}, {1, 0, 1, 1, 0});
    const auto roc = roc_points(sp);
    CHECK(roc.front() == std::pair<double, double>{0.0, 0.0});
    CHECK(roc.back() == std::pair<double, double>{1.0, 1.0});
    for (std::size_t i = 1; i < roc.size(); ++i) {
        CHECK(roc[i].first >= roc[i - 1].first);
        CHECK(roc[i].second >= roc[i - 1].second);
    }
    const auto pr = pr_points(sp);
    CHECK(pr.back().first == 1.0); // recall reaches 1
    for (std::size_t i = 1; i < pr.size(); ++i) {
        CHECK(pr[i].first >= pr[i - 1].first);
    }
}
