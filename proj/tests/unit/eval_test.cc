// Copyright 2026 The JL2P Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>

#include "doctest.h"
#include "jl2p/error.h"
#include "jl2p/eval/eval_report.h"
#include "jl2p/eval/metrics.h"
#include "jl2p/random.h"
#include "jl2p/synth/generator.h"
#include "json.hpp"

using namespace jl2p;
using namespace jl2p::eval;
using pose::PoseSequence;
using pose::Vec3;

namespace {

PoseSequence Random(Rng& rng, std::size_t frames, const pose::Skeleton& sk) {
  std::vector<Vec3> v(frames * sk.joint_count());
  for (auto& p : v) p = {rng.Uniform(-100, 100), rng.Uniform(0, 1800), rng.Uniform(-100, 100)};
  return PoseSequence(sk, v, 12.5);
}

PoseSequence Shifted(const PoseSequence& s, Vec3 offset, std::size_t only_joint = SIZE_MAX) {
  std::vector<Vec3> v = s.positions();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (only_joint == SIZE_MAX || i % s.joint_count() == only_joint) v[i] = v[i] + offset;
  }
  return PoseSequence(s.skeleton(), v, s.fps());
}

// Scalar-loop reference for one joint.
double OracleApe(const PoseSequence& a, const PoseSequence& b, std::size_t j) {
  double sum = 0.0;
  for (std::size_t t = 0; t < a.frame_count(); ++t) {
    const double dx = a.at(t, j).x - b.at(t, j).x;
    const double dy = a.at(t, j).y - b.at(t, j).y;
    const double dz = a.at(t, j).z - b.at(t, j).z;
    sum += std::sqrt(dx * dx + dy * dy + dz * dz);
  }
  return sum / static_cast<double>(a.frame_count());
}

}  // namespace

TEST_CASE("ape") {
  const auto sk = synth::ToySkeleton();
  Rng rng(1);
  const auto truth = Random(rng, 4, sk);
  for (double v : ApePerJoint(truth, truth)) CHECK(v == 0.0);
  CHECK(Ape(Shifted(truth, {3, 4, 0}, 2), truth, 2) == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(Ape(Shifted(truth, {3, 4, 0}, 2), truth, 1) == 0.0);

  for (int trial = 0; trial < 10; ++trial) {
    const auto a = Random(rng, 4, sk);
    const auto b = Random(rng, 4, sk);
    for (std::size_t j = 0; j < sk.joint_count(); ++j) {
      CHECK(std::abs(Ape(a, b, j) - OracleApe(a, b, j)) < 1e-9);
      CHECK(Ape(a, b, j) >= 0.0);
      // Rigid translation of both leaves the error unchanged.
      const Vec3 off{123.0, -45.0, 6.0};
      CHECK(Ape(Shifted(a, off), Shifted(b, off), j) == doctest::Approx(Ape(a, b, j)));
    }
  }
  CHECK_THROWS_AS(Ape(Random(rng, 3, sk), Random(rng, 4, sk), 0), ContractError);
  CHECK_THROWS_AS(Ape(truth, truth, 8), ContractError);
  pose::Skeleton other({"a", "b", "c", "d", "e", "f", "g", "h"}, 0);
  CHECK_THROWS_AS(Ape(Random(rng, 4, other), truth, 0), ContractError);
}

TEST_CASE("pck") {
  const pose::Skeleton two({"a", "b"}, 0);
  const PoseSequence truth(two, {{0, 0, 0}, {0, 0, 0}}, 12.5);
  CHECK(Pck(truth, truth, 35.0) == 1.0);
  const PoseSequence pred(two, {{0, 0, 0}, {0, 40, 0}}, 12.5);
  CHECK(Pck(pred, truth, 35.0) == 0.5);
  CHECK(Pck(pred, truth, 40.0) == 1.0);  // boundary counts as correct
  CHECK(Pck(pred, truth, 1e300) == 1.0);
  CHECK(Pck(pred, truth, 1e-300) == 0.5);  // exactly-correct fraction
  CHECK_THROWS_AS(Pck(pred, truth, 0.0), ContractError);
  CHECK_THROWS_AS(Pck(pred, truth, -1.0), ContractError);

  Rng rng(2);
  const auto sk = synth::ToySkeleton();
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = Random(rng, 5, sk);
    auto b = Shifted(a, {0, 0, 0});
    std::vector<Vec3> v = a.positions();
    for (auto& p : v) p = p + Vec3{rng.Uniform(-40, 40), rng.Uniform(-40, 40), 0};
    b = PoseSequence(sk, v, 12.5);
    const auto sweep = PckSweep(b, a);
    REQUIRE(sweep.size() == kDefaultPckSigmas.size());
    for (std::size_t k = 0; k < sweep.size(); ++k) {
      std::size_t hits = 0;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (pose::Norm(v[i] - a.positions()[i]) <= kDefaultPckSigmas[k]) ++hits;
      }
      CHECK(sweep[k] == static_cast<double>(hits) / static_cast<double>(v.size()));
      if (k > 0) CHECK(sweep[k] >= sweep[k - 1]);
    }
  }
}

TEST_CASE("part groups") {
  const auto sk = synth::ToySkeleton();
  const auto groups = DefaultPartGroups(sk);
  REQUIRE(groups.size() == 5);
  CHECK(groups[0].name == "Root");
  CHECK(groups[0].joints == std::vector<std::size_t>{0});
  CHECK(groups[1].name == "Torso");
  CHECK(groups[1].joints == std::vector<std::size_t>{1, 7});
  CHECK(groups[2].joints == std::vector<std::size_t>{2});
  CHECK(groups[3].joints == std::vector<std::size_t>{3, 4});
  CHECK(groups[4].joints == std::vector<std::size_t>{5, 6});
  CheckPartition(groups, 8);

  std::vector<PartGroup> overlap = groups;
  overlap[1].joints.push_back(2);
  CHECK_THROWS_AS(CheckPartition(overlap, 8), ContractError);
  std::vector<PartGroup> missing = groups;
  missing.pop_back();
  CHECK_THROWS_AS(CheckPartition(missing, 8), ContractError);
}

TEST_CASE("ape by part over time") {
  const auto sk = synth::ToySkeleton();
  const auto groups = DefaultPartGroups(sk);
  Rng rng(3);
  const auto truth = Random(rng, 6, sk);
  for (const auto& row : ApeByPartOverTime(truth, truth, groups)) {
    for (double v : row) CHECK(v == 0.0);
  }
  for (const auto& row : ApeByPartOverTime(Shifted(truth, {3, 0, 4}), truth, groups)) {
    for (double v : row) CHECK(v == doctest::Approx(5.0));
  }
  const auto pred = Random(rng, 6, sk);
  const auto curves = ApeByPartOverTime(pred, truth, groups);
  for (std::size_t t = 0; t < 6; ++t) {
    double weighted = 0.0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      weighted += curves[t][g] * static_cast<double>(groups[g].joints.size());
    }
    double overall = 0.0;
    for (std::size_t j = 0; j < 8; ++j) overall += pose::Norm(pred.at(t, j) - truth.at(t, j));
    CHECK(weighted / 8.0 == doctest::Approx(overall / 8.0).epsilon(1e-12));
  }
  std::vector<PartGroup> bad = {{"All", {0, 1, 2}}};
  CHECK_THROWS_AS(ApeByPartOverTime(pred, truth, bad), ContractError);
}

TEST_CASE("trajectory") {
  const pose::Skeleton two({"root", "hand"}, 0);
  std::vector<Vec3> still(2 * 5, Vec3{50, 900, -20});
  auto t0 = ExtractTrajectory(PoseSequence(two, still, 12.5));
  CHECK(t0.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(t0.x[i] == 0.0);
    CHECK(t0.z[i] == 0.0);
  }
  CHECK(t0.PathLength() == 0.0);

  std::vector<Vec3> moving;
  for (int t = 0; t < 10; ++t) {
    moving.push_back({7.0 + t, 900, 3});
    moving.push_back({0, 0, 0});
  }
  auto t1 = ExtractTrajectory(PoseSequence(two, moving, 12.5));
  for (int i = 0; i < 10; ++i) {
    CHECK(t1.x[i] == doctest::Approx(i));
    CHECK(t1.z[i] == 0.0);
    CHECK(t1.time_s[i] == doctest::Approx(i / 12.5));
  }
  CHECK(t1.PathLength() == doctest::Approx(9.0));
  CHECK(t1.FinalX() == doctest::Approx(9.0));

  Rng rng(4);
  const auto seq = Random(rng, 7, synth::ToySkeleton());
  const auto tr = ExtractTrajectory(seq);
  double sum = 0.0;
  for (std::size_t t = 1; t < 7; ++t) {
    sum += std::hypot(seq.root(t).x - seq.root(t - 1).x, seq.root(t).z - seq.root(t - 1).z);
  }
  CHECK(tr.PathLength() == doctest::Approx(sum).epsilon(1e-12));
}

TEST_CASE("eval report aggregation") {
  const auto sk = synth::ToySkeleton();
  Rng rng(5);
  EvalAccumulator acc(sk, 12.5);
  const auto a = Random(rng, 4, sk);
  const auto b = Random(rng, 6, sk);
  acc.Add("c1", "s1", Shifted(a, {3, 4, 0}), a);
  acc.Add("c1", "s2", a, a);
  acc.Add("c2", "s3", Shifted(b, {0, 0, 10}, 0), b);
  auto r = acc.Finish();
  CHECK(r.clip_count == 2);
  CHECK(r.pair_count == 3);
  // Frames: 4 at 5 mm, 4 at 0, 6 with only the root at 10 mm.
  CHECK(r.per_joint_ape[0] == doctest::Approx((4 * 5.0 + 6 * 10.0) / 14.0));
  CHECK(r.per_joint_ape[1] == doctest::Approx(4 * 5.0 / 14.0));
  double mean = 0.0;
  for (double v : r.per_joint_ape) mean += v;
  CHECK(r.mean_ape == doctest::Approx(mean / 8.0));
  CHECK(r.mean_ape_without_root == doctest::Approx((mean - r.per_joint_ape[0]) / 7.0));
  for (std::size_t k = 1; k < r.pck.size(); ++k) CHECK(r.pck[k].second >= r.pck[k - 1].second);
  for (const auto& [s, p] : r.pck) CHECK((p >= 0.0 && p <= 1.0));
  CHECK(r.ape_by_part_over_time.size() == 6);
  CHECK(r.ape_by_part_over_time[5][0] == doctest::Approx(10.0));
  CHECK(r.ape_by_part_over_time[0][1] == doctest::Approx(5.0 / 3.0));
  REQUIRE(r.clips.size() == 3);
  CHECK(r.clips[0].mean_ape == doctest::Approx(5.0));

  auto doc = nlohmann::json::parse(EvalReportToJson(r));
  CHECK(doc.at("schema_version") == kEvalReportSchemaVersion);
  CHECK(doc.at("pck").size() == 5);
  CHECK(doc.at("clips").size() == 3);

  const std::string pck = PckCsv(r);
  CHECK(pck.rfind("sigma_mm,pck\n35,", 0) == 0);
  const std::string ape = ApeOverTimeCsv(r);
  CHECK(ape.rfind("timestep_ms,part,ape_mm\n0,Root,", 0) == 0);
  CHECK(ape.find("\n80,Root,") != std::string::npos);

  EvalAccumulator self(sk, 12.5);
  self.Add("c", "s", a, a);
  auto zero = self.Finish();
  CHECK(zero.mean_ape == 0.0);
  for (const auto& [s, p] : zero.pck) CHECK(p == 1.0);

  CHECK_THROWS_AS(EvalAccumulator(sk, 12.5).Finish(), ContractError);
  CHECK_THROWS_AS(EvalAccumulator(sk, 12.5, {35, 0}), ContractError);
}
