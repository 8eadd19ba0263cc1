#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <random>

#include "hoeffding/errors.hpp"
#include "hoeffding/lattice.hpp"

using namespace hoeffding;

TEST_CASE("enumeration order is cardinality then mask value") {
  CHECK(enumerate_subsets(1) == std::vector<SubsetMask>{0, 1});
  CHECK(enumerate_subsets(2) == std::vector<SubsetMask>{0, 1, 2, 3});

  const auto d3 = enumerate_subsets(3);
  REQUIRE(d3.size() == 8);
  CHECK(d3.front() == 0);
  CHECK(d3.back() == full_mask(3));
  CHECK(d3 == std::vector<SubsetMask>{0, 1, 2, 4, 3, 5, 6, 7});

  const auto d12 = enumerate_subsets(12);
  CHECK(d12.size() == 4096);
  CHECK(d12.back() == full_mask(12));
  for (std::size_t i = 1; i < d12.size(); ++i) {
    const bool ordered =
        cardinality(d12[i - 1]) < cardinality(d12[i]) ||
        (cardinality(d12[i - 1]) == cardinality(d12[i]) &&
         d12[i - 1] < d12[i]);
    CHECK(ordered);
  }

  CHECK_THROWS_AS(enumerate_subsets(0), Error);
  CHECK_THROWS_AS(enumerate_subsets(13), Error);
}

TEST_CASE("subset labels are sorted 1-based lists") {
  CHECK(subset_label(0) == "[]");
  CHECK(subset_label(0b1) == "[1]");
  CHECK(subset_label(0b101) == "[1,3]");
  CHECK(subset_label(full_mask(3)) == "[1,2,3]");
}

TEST_CASE("alternating sum base cases") {
  std::map<SubsetMask, Vector> values;
  Vector v0(2), v1(2);
  v0 << 1.0, 2.0;
  v1 << 5.0, -1.0;
  values[0] = v0;
  values[1] = v1;

  CHECK(mobius_alternating_sum(values, 0).isApprox(v0));
  CHECK(mobius_alternating_sum(values, 1).isApprox(v1 - v0));

  std::map<SubsetMask, Vector> missing;
  missing[1] = v1;
  CHECK_THROWS_AS(mobius_alternating_sum(missing, 1), Error);
}

TEST_CASE("alternating sum inverts down-set cumulative sums") {
  // values[B] = Σ_{C ⊆ B} w[C] must invert back to w[A], for every A.
  std::mt19937_64 rng(20240811);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  for (int d = 1; d <= 4; ++d) {
    std::map<SubsetMask, Vector> w, sums;
    for (SubsetMask a : enumerate_subsets(d)) {
      Vector v(3);
      v << unif(rng), unif(rng), unif(rng);
      w[a] = v;
    }
    for (SubsetMask a : enumerate_subsets(d)) {
      Vector acc = Vector::Zero(3);
      for (SubsetMask b : subsets_of(a)) acc += w[b];
      sums[a] = acc;
    }
    for (SubsetMask a : enumerate_subsets(d)) {
      const Vector got = mobius_alternating_sum(sums, a);
      CHECK((got - w[a]).lpNorm<Eigen::Infinity>() < 1e-12);
    }
  }
}

TEST_CASE("comparables and uncomparables split the lattice") {
  SUBCASE("d=2 singleton") {
    CHECK(comparables(0b1, 2) == std::vector<SubsetMask>{0, 1, 3});
    CHECK(uncomparables(0b1, 2) == std::vector<SubsetMask>{2});
  }
  SUBCASE("extremes have no uncomparables") {
    for (int d = 1; d <= 4; ++d) {
      CHECK(uncomparables(0, d).empty());
      CHECK(uncomparables(full_mask(d), d).empty());
    }
  }
  SUBCASE("partition and symmetry properties") {
    for (int d = 1; d <= 5; ++d) {
      for (SubsetMask a : enumerate_subsets(d)) {
        const auto c = comparables(a, d);
        const auto u = uncomparables(a, d);
        CHECK(c.size() + u.size() == (std::size_t(1) << d));
        CHECK(std::find(c.begin(), c.end(), a) != c.end());
        CHECK(std::find(c.begin(), c.end(), SubsetMask(0)) != c.end());
        CHECK(std::find(c.begin(), c.end(), full_mask(d)) != c.end());
        for (SubsetMask b : u) {
          const auto ub = uncomparables(b, d);
          CHECK(std::find(ub.begin(), ub.end(), a) != ub.end());
        }
      }
    }
  }
}
