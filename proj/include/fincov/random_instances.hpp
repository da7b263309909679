#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fincov/cover_map.hpp"
#include "fincov/slices.hpp"

namespace fincov {

/// Uniform integer in [lo, hi] computed from raw mt19937_64 output, so that
/// sequences do not depend on the standard library's distributions.
inline std::size_t draw(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    const std::uint64_t span = hi - lo + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t v;
    do v = rng(); while (v >= limit);
    return lo + static_cast<std::size_t>(v % span);
}

template <class T>
void shuffle_with(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[draw(rng, 0, i - 1)]);
}

struct RandomInstanceParams {
    std::size_t max_base = 6;
    std::size_t max_fiber = 3;
    std::size_t max_total = 12;
    std::size_t max_image = 3;    ///< largest base set a slice is drawn over
    std::size_t extra_rounds = 3; ///< up to this many rounds after X is covered
};

/// Random surjection with fibers of size <= max_fiber onto |Y| <= max_base
/// points (|X| <= max_total), and a random covering structure built from
/// full decompositions: pick a base set A whose fibers have a common size f,
/// split p^-1(A) into f random sheets over A, add all of them; repeat until
/// X is covered, then a few more rounds. Rejection-sampled against is_covering_structure.
inline CoverMap random_covering_instance(std::mt19937_64& rng, const RandomInstanceParams& params = {}) {
    for (;;) {
        const auto ny = draw(rng, 1, params.max_base);
        std::vector<std::size_t> fiber(ny);
        std::size_t nx = 0;
        for (auto& f : fiber) {
            f = draw(rng, 1, params.max_fiber);
            nx += f;
        }
        if (nx > params.max_total) continue;
        std::vector<std::string> xs, ys;
        for (std::size_t i = 0; i < nx; ++i) xs.push_back("x" + std::to_string(i));
        for (std::size_t i = 0; i < ny; ++i) ys.push_back("y" + std::to_string(i));
        auto X = make_space(xs), Y = make_space(ys);
        std::vector<PointIndex> image_of(nx);
        {
            std::vector<PointIndex> labels;
            for (std::size_t y = 0; y < ny; ++y)
                for (std::size_t k = 0; k < fiber[y]; ++k) labels.push_back(y);
            shuffle_with(labels, rng);
            for (std::size_t i = 0; i < nx; ++i) image_of[X->index_of(xs[i])] = Y->index_of(ys[labels[i]]);
        }
        CoverMap p(X, Y, image_of);

        std::vector<CoverElement> elements;
        PointSet covered(nx);
        std::size_t attempts = 0, extra = draw(rng, 0, params.extra_rounds);
        while ((!covered.all() || extra > 0) && attempts < 200) {
            ++attempts;
            if (covered.all()) --extra;
            // Seed with an uncovered point while there is one.
            std::vector<PointIndex> uncovered;
            for (PointIndex x = 0; x < nx; ++x)
                if (!covered.test(x) || covered.all()) uncovered.push_back(x);
            const auto seed = uncovered[draw(rng, 0, uncovered.size() - 1)];
            const auto f = p.fiber(p(seed)).count();
            std::vector<PointIndex> base{p(seed)};
            std::vector<PointIndex> others;
            for (PointIndex y = 0; y < ny; ++y)
                if (y != p(seed) && p.fiber(y).count() == f) others.push_back(y);
            shuffle_with(others, rng);
            const auto grow = std::min(others.size(), draw(rng, 0, params.max_image - 1));
            base.insert(base.end(), others.begin(), others.begin() + static_cast<long>(grow));
            std::vector<PointSet> sheets(f, PointSet(nx));
            for (auto y : base) {
                auto pts = members(p.fiber(y));
                shuffle_with(pts, rng);
                for (std::size_t s = 0; s < f; ++s) sheets[s].set(pts[s]);
            }
            for (auto& s : sheets) {
                covered |= s;
                elements.push_back({"s" + std::to_string(elements.size()), s});
            }
        }
        if (!covered.all()) continue;
        Cover structure(X, std::move(elements));
        if (is_covering_structure(p, structure)) return p.with_structure(std::move(structure));
    }
}

} // namespace fincov
