/*
Copyright 2026 The overlaymap Authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
you may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include "oracles.hpp"
#include "overlaymap/types.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#ifndef OVERLAYMAP_FIXTURE_DIR
#error "OVERLAYMAP_FIXTURE_DIR must be defined by the build"
#endif

namespace testing {

inline std::string read_fixture(const std::string& name) {
    std::ifstream in(std::string(OVERLAYMAP_FIXTURE_DIR) + "/" + name, std::ios::binary);
    if (!in)
        throw std::runtime_error("missing fixture " + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Four categories cat0..cat3 on the rectangle (0,0),(0,1),(2,1),(2,0) with
// the worked-example similarity matrix. Matches fixtures/paper4.paj.
inline overlaymap::OverlayMap paper_map(bool with_similarity = true) {
    using namespace overlaymap;
    const double xs[] = {0, 0, 2, 2};
    const double ys[] = {0, 1, 1, 0};
    std::vector<SubjectCategory> cats;
    for (std::size_t i = 0; i < 4; ++i)
        cats.push_back({i, static_cast<long>(i + 1), "cat" + std::to_string(i), xs[i], ys[i]});
    if (!with_similarity)
        return OverlayMap(cats);
    return OverlayMap(cats, SimilarityMatrix(4, oracle::flatten(oracle::paper_s())));
}

// n categories with uniform coordinates in [-10, 10]^2 and a random cosine
// similarity matrix (upper triangle mirrored, unit diagonal).
inline overlaymap::OverlayMap random_map(std::mt19937_64& rng, std::size_t n, bool with_similarity = true) {
    using namespace overlaymap;
    std::uniform_real_distribution<double> coord(-10.0, 10.0);
    std::vector<SubjectCategory> cats;
    for (std::size_t i = 0; i < n; ++i)
        cats.push_back({i, static_cast<long>(i + 1), "SC " + std::to_string(i), coord(rng), coord(rng)});
    if (!with_similarity)
        return OverlayMap(cats);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    SimilarityMatrix s(n);
    for (std::size_t i = 0; i < n; ++i) {
        s(i, i) = 1.0;
        for (std::size_t j = i + 1; j < n; ++j)
            s(i, j) = s(j, i) = u(rng) < 0.7 ? 0.0 : u(rng);
    }
    return OverlayMap(cats, s);
}

inline overlaymap::PublicationProfile random_profile(std::mt19937_64& rng, std::size_t n,
                                                     const std::string& id,
                                                     overlaymap::UnitKind kind = overlaymap::UnitKind::research_group) {
    return overlaymap::PublicationProfile(id, kind, oracle::random_counts(rng, n));
}

} // namespace testing
