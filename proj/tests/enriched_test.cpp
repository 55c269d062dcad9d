#include <gtest/gtest.h>

#include <random>
#include <set>

#include "spinmod/enriched.hpp"
#include "spinmod/errors.hpp"

namespace spinmod {
namespace {

std::uint64_t ipow(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

TEST(TwoComponentCurve, Hypotheses) {
  TwoComponentCurve c(1, 2, 3);
  EXPECT_EQ(c.genus(), 5);
  EXPECT_EQ(c.j2_order(), 64u);
  EXPECT_THROW(TwoComponentCurve(0, 1, 2), InputError);
  EXPECT_THROW(TwoComponentCurve(1, 1, 0), InputError);
  EXPECT_THROW(TwoComponentCurve(1, 1, 21), LimitError);
}

TEST(Twisters, SpecExamples) {
  TwoComponentCurve c(1, 1, 3);
  DualGraph g = c.to_dual_graph();
  std::vector<Rational> v{2, Rational(1, 3), 5};
  auto pair = canonical_twister_pair(c, v);
  EXPECT_EQ(pair[0].multidegree, (std::vector<int>{-3, 3}));
  EXPECT_EQ(pair[1].multidegree, (std::vector<int>{3, -3}));
  EXPECT_TRUE(check_twister_tuple(g, pair));

  auto bad = pair;
  bad[0].multidegree = {-2, 3};
  EXPECT_FALSE(check_twister_tuple(g, bad));

  std::vector<Twister> trivial(2, Twister{{0, 0}, {1, 1, 1}});
  EXPECT_FALSE(check_twister_tuple(g, trivial));

  EXPECT_THROW(check_twister_tuple(g, {pair[0]}), InputError);
  EXPECT_THROW(check_twister_tuple(g, {pair[0], Twister{{3, -3}, {1}}}), InputError);
}

TEST(TwisterProperty, AcceptsCanonicalRejectsPerturbed) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t delta = 2 + rng() % 5;
    TwoComponentCurve c(1, 1, delta);
    std::vector<Rational> v;
    for (std::size_t i = 0; i < delta; ++i)
      v.emplace_back(static_cast<long>(rng() % 9) + 1, static_cast<long>(rng() % 5) + 1);
    auto pair = canonical_twister_pair(c, v);
    DualGraph g = c.to_dual_graph();
    EXPECT_TRUE(check_twister_tuple(g, pair));
    // a global rescaling of one gluing vector is still admissible
    auto scaled = pair;
    for (auto& a : scaled[1].gluing) a *= 7;
    EXPECT_TRUE(check_twister_tuple(g, scaled));
    auto broken = pair;
    broken[1].gluing[rng() % delta] *= 2;
    EXPECT_FALSE(check_twister_tuple(g, broken));
    auto shifted = pair;
    shifted[0].multidegree[0] -= 1;
    shifted[1].multidegree[0] += 1;
    EXPECT_FALSE(check_twister_tuple(g, shifted));
  }
}

TEST(Strata, ProperSubsetOrder) {
  auto s = proper_node_subsets(3);
  EXPECT_EQ(s, (std::vector<EdgeSet>{{}, {0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}}));
  EXPECT_EQ(proper_node_subsets(1), (std::vector<EdgeSet>{{}}));
}

TEST(Strata, LabelCounts) {
  TwoComponentCurve c(1, 1, 3);
  EXPECT_EQ(stratum_label_count(c, {}, 5), 1024u);
  EXPECT_EQ(stratum_label_count(c, {0, 2}, 5), 16u);
  EXPECT_EQ(stratum_label_count(TwoComponentCurve(2, 1, 1), {}, 13), 64u);
  auto count = enriched_count(c, 5);
  EXPECT_EQ(count.strata.size(), 7u);
  EXPECT_EQ(count.total, 1024u + 3 * 128 + 3 * 16);
}

TEST(Labels, ExhaustiveEnumerationMatchesCount) {
  PrimeField f(5);
  for (std::size_t delta = 1; delta <= 3; ++delta) {
    TwoComponentCurve c(1, 1, delta);
    for (const auto& support : proper_node_subsets(delta)) {
      const std::uint64_t n = stratum_label_count(c, support, 5);
      // oracle: independent nested enumeration of (j2, signs, direction)
      const std::size_t k = delta - support.size() - 1;
      EXPECT_EQ(n, c.j2_order() * ipow(2, k) * ipow(4, k));
      std::set<std::tuple<std::uint64_t, std::uint64_t, std::vector<std::uint64_t>>> seen;
      for (std::uint64_t r = 0; r < n; ++r) {
        auto label = decode_label(c, support, f, r);
        EXPECT_EQ(label.support, support);
        EXPECT_EQ(encode_label(c, label, f), r);
        std::vector<std::uint64_t> dir;
        for (const auto& a : label.direction) {
          EXPECT_FALSE(a.is_zero());
          dir.push_back(a.value());
        }
        seen.insert({label.j2, label.signs, dir});
      }
      EXPECT_EQ(seen.size(), n);
      EXPECT_THROW(decode_label(c, support, f, n), InputError);
    }
  }
}

TEST(ChiMap, SpecExamples) {
  PrimeField f(5);
  TwoComponentCurve c2(1, 1, 2);
  auto lim = line_limit(std::vector<FqElem>{f(1), f(1)});
  std::set<ProjectivePoint<Fq2Elem>> from_chi;
  for (std::uint64_t s : {0u, 1u}) {
    auto p = chi_map({{}, {f(1)}, 0, s}, c2, f);
    from_chi.insert(p.coordinates);
    EXPECT_EQ(p.coordinates, (ProjectivePoint<Fq2Elem>{f.ext(1, 0), f.ext(s ? 4 : 1, 0)}));
  }
  EXPECT_EQ(from_chi, std::set<ProjectivePoint<Fq2Elem>>(lim.begin(), lim.end()));

  TwoComponentCurve c3(1, 1, 3);
  auto corner = chi_map({{0, 1}, {}, 5, 0}, c3, f);
  EXPECT_EQ(corner.coordinates, (ProjectivePoint<Fq2Elem>{f.ext(0, 0), f.ext(0, 0), f.ext(1, 0)}));
  EXPECT_EQ(corner.xi_index, 5u);
  EXPECT_EQ(corner.incidence, 0b011u);

  auto p = chi_map({{0}, {f(4)}, 0, 1}, c3, f);
  EXPECT_EQ(p.coordinates, (ProjectivePoint<Fq2Elem>{f.ext(0, 0), f.ext(1, 0), f.ext(3, 0)}));

  EXPECT_THROW(chi_map({{0}, {f(0)}, 0, 0}, c3, f), InputError);
  EXPECT_THROW(chi_map({{0}, {}, 0, 0}, c3, f), InputError);
  EXPECT_THROW(chi_map({{0, 1, 2}, {}, 0, 0}, c3, f), InputError);
}

TEST(ChiMapProperty, StrataAreDisjointAndCoverTheDirectionPoints) {
  for (std::uint64_t q : {3u, 5u}) {
    PrimeField f(q);
    for (std::size_t delta = 2; delta <= 3; ++delta) {
      TwoComponentCurve c(1, 1, delta);
      std::set<std::pair<std::uint64_t, ProjectivePoint<Fq2Elem>>> image;
      std::uint64_t labels = 0;
      for (const auto& support : proper_node_subsets(delta)) {
        std::uint64_t pattern = 0;
        for (auto i : support) pattern |= std::uint64_t{1} << i;
        const std::uint64_t n = stratum_label_count(c, support, q);
        labels += n;
        for (std::uint64_t r = 0; r < n; ++r) {
          auto p = chi_map(decode_label(c, support, f, r), c, f);
          EXPECT_EQ(p.incidence, pattern);
          image.insert({p.xi_index, p.coordinates});
        }
      }
      EXPECT_EQ(image.size(), labels);
      // Per xi: every line_limit point of every nonzero F_q-direction.
      std::set<ProjectivePoint<Fq2Elem>> limits;
      const std::uint64_t total = ipow(q, delta);
      for (std::uint64_t code = 1; code < total; ++code) {
        std::vector<FqElem> d;
        std::uint64_t x = code;
        for (std::size_t i = 0; i < delta; ++i, x /= q) d.push_back(f(static_cast<std::int64_t>(x % q)));
        for (auto& pt : line_limit(d)) limits.insert(pt);
      }
      EXPECT_EQ(limits.size() * c.j2_order(), labels);
      for (const auto& [xi, pt] : image) EXPECT_TRUE(limits.count(pt));
    }
  }
}

TEST(Torsor, SpecExamples) {
  auto r = verify_torsor_bijection(TwoComponentCurve(1, 1, 2), {}, 5);
  EXPECT_TRUE(r.passed()) << r.witness;
  EXPECT_EQ(r.label_count, 128u);
  EXPECT_EQ(r.image_size, 128u);

  for (std::uint64_t q : {5u, 13u}) {
    auto z = verify_torsor_bijection(TwoComponentCurve(1, 1, 3), {0, 1}, q);
    EXPECT_TRUE(z.passed());
    EXPECT_EQ(z.image_size, 16u);
    EXPECT_EQ(z.expected_points_per_xi, 1u);
  }

  auto full = verify_torsor_bijection(TwoComponentCurve(1, 1, 3), {}, 5);
  EXPECT_TRUE(full.passed());
  EXPECT_EQ(full.expected_points_per_xi, 64u);
  EXPECT_EQ(full.predicted_points_per_xi, 64u);
}

TEST(Torsor, ThreadCountDoesNotChangeTheReport) {
  TwoComponentCurve c(1, 2, 3);
  for (const auto& s : proper_node_subsets(3)) {
    auto a = verify_torsor_bijection(c, s, 5, 1);
    auto b = verify_torsor_bijection(c, s, 5, 3);
    EXPECT_TRUE(a.passed());
    EXPECT_EQ(a.to_json().dump(), b.to_json().dump());
  }
  EXPECT_THROW(verify_torsor_bijection(TwoComponentCurve(1, 1, 7), {}, 5), LimitError);
  EXPECT_THROW(verify_torsor_bijection(c, {}, 4), InputError);
}

TEST(Report, EllipticPairDeltaThreeStrata) {
  auto j = stratification_report(TwoComponentCurve(1, 1, 3));
  ASSERT_EQ(j["strata"].size(), 7u);
  std::vector<int> dims;
  for (const auto& row : j["strata"]) dims.push_back(row["torus_dimension"].get<int>());
  EXPECT_EQ(dims, (std::vector<int>{2, 1, 1, 1, 0, 0, 0}));
  EXPECT_EQ(j["singular_spin_count"], 16);
  EXPECT_EQ(j["strata"][0]["name"], "C");
  EXPECT_EQ(j["strata"][4]["name"], "X_{1,2}");
}

TEST(Report, DegenerateDeltas) {
  auto one = stratification_report(TwoComponentCurve(1, 1, 1));
  ASSERT_EQ(one["strata"].size(), 1u);
  EXPECT_EQ(one["strata"][0]["torus_dimension"], 0);
  auto two = stratification_report(TwoComponentCurve(1, 1, 2), 5);
  std::vector<int> dims;
  for (const auto& row : two["strata"]) dims.push_back(row["torus_dimension"].get<int>());
  EXPECT_EQ(dims, (std::vector<int>{1, 0, 0}));
  EXPECT_FALSE(stratification_text(TwoComponentCurve(1, 1, 3), 5).empty());
}

TEST(Hyperplanes, StratificationIdentity) {
  for (std::uint64_t q : {3u, 5u, 13u})
    for (std::size_t delta = 1; delta <= 6; ++delta) {
      auto [lhs, rhs] = hyperplane_stratification_counts(delta, q);
      EXPECT_EQ(lhs, rhs);
      EXPECT_EQ(rhs, (ipow(q, delta) - 1) / (q - 1));
    }
}

}  // namespace
}  // namespace spinmod
