#include <gtest/gtest.h>

#include <random>

#include "residue_atlas/cylinders.hpp"

using namespace residue_atlas;

namespace {

ResidueTuple ints(std::initializer_list<long long> v) {
  ResidueTuple r;
  for (auto x : v) r.push_back(Cyclo(x));
  return r;
}

}  // namespace

TEST(Cylinders, SingleCylinderAlwaysFits) {
  for (auto s : {Stratum(1, 1, {0}), Stratum(1, 2, {2}), Stratum(1, 2, {1, 1}), Stratum(1, 3, {4}),
                 Stratum(1, 3, {2, 1, 1})}) {
    auto d = decide_cylinders(s, {Cyclo::gaussian(3, 2)});
    EXPECT_EQ(d.verdict, Verdict::Realizable) << s.to_string();
  }
  auto d = decide_cylinders(Stratum(1, 2, {2}), {Cyclo(1)});
  // one vertex with a loop, genus g-1
  EXPECT_EQ(d.certificate["families"].size(), 1u);
  EXPECT_EQ(d.certificate["genus"][0], 1);
}

TEST(Cylinders, BoundAndSearchAgree) {
  // three cylinders in genus 2 with a single zero exceed g+n-1 = 2; the
  // graph search alone reaches the same verdict
  Stratum s(1, 2, {2});
  auto lam = ints({1, 1, 1});
  EXPECT_EQ(decide_cylinders(s, lam).verdict, Verdict::NotRealizable);
  EXPECT_EQ(decide_cylinders(s, lam, false).verdict, Verdict::NotRealizable);
  for (auto st : {Stratum(1, 2, {1, 1}), Stratum(1, 3, {4}), Stratum(1, 3, {2, 2})}) {
    int maxt = st.genus + st.n_zeros() - 1;
    ResidueTuple too_many(maxt + 1, Cyclo(1));
    EXPECT_EQ(decide_cylinders(st, too_many, false).verdict, Verdict::NotRealizable) << st.to_string();
  }
}

TEST(Cylinders, MinimalStratumMatchesDoubledTuple) {
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int g = 1; g <= 3; ++g) {
    Stratum s(1, g, {2 * g - 2});
    for (int t = 1; t <= g; ++t)
      for (int it = 0; it < 12; ++it) {
        ResidueTuple lam;
        bool real = it % 2 == 0;
        for (int i = 0; i < t; ++i) {
          Cyclo x = real ? Cyclo(d(rng)) : Cyclo::gaussian(d(rng), d(rng));
          if (x.is_zero()) x = Cyclo(1);
          lam.push_back(x);
        }
        Verdict want;
        int rest = g - t;
        if (rest >= 1) {
          want = Verdict::Realizable;
        } else {
          ResidueTuple dbl = lam;
          for (auto& x : lam) dbl.push_back(-x);
          std::vector<int> orders{2 * g - 2};
          for (int i = 0; i < 2 * t; ++i) orders.push_back(-1);
          want = decide_minimal_abelian(Stratum(1, 0, orders), dbl).verdict;
        }
        EXPECT_EQ(decide_cylinders(s, lam).verdict, want) << "g=" << g << " t=" << t;
      }
  }
}

TEST(Cylinders, CertificateDegreeConditions) {
  Stratum s(1, 3, {2, 1, 1});
  auto d = decide_cylinders(s, ints({1, 2, 3}));
  ASSERT_EQ(d.verdict, Verdict::Realizable);
  auto& c = d.certificate;
  int V = static_cast<int>(c["families"].size());
  std::vector<int> val(V, 0);
  for (auto& e : c["edges"]) {
    val[e[0].get<int>()]++;
    val[e[1].get<int>()]++;
  }
  int genus_sum = 0;
  for (int v = 0; v < V; ++v) {
    int sigma = 0;
    for (auto& a : c["families"][v]) sigma += a.get<int>();
    EXPECT_EQ(sigma - val[v], 2 * c["genus"][v].get<int>() - 2);
    genus_sum += c["genus"][v].get<int>();
  }
  EXPECT_EQ(genus_sum + static_cast<int>(c["edges"].size()) - (V - 1), s.genus);
}

TEST(Cylinders, Preconditions) {
  EXPECT_THROW(decide_cylinders(Stratum(1, 0, {0, -1, -1}), ints({1})), std::invalid_argument);
  EXPECT_THROW(decide_cylinders(Stratum(1, 2, {2}), ints({0})), std::invalid_argument);
}
