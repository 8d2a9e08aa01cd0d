#include <gtest/gtest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "residue_atlas/classifier.hpp"
#include "spot_suite.hpp"

using namespace residue_atlas;
using spot::ints;
using spot::st;

TEST(Classifier, SpotSuite) {
  auto suite = spot::suite();
  ASSERT_EQ(suite.size(), 25u);
  for (auto& t : suite) {
    auto d = classify(t.stratum, t.tuple);
    EXPECT_EQ(d.verdict, t.verdict) << t.name << " tag=" << d.tag;
    EXPECT_FALSE(d.tag.empty()) << t.name;
  }
}

TEST(Classifier, TagsNameTheRule) {
  EXPECT_EQ(classify(st(4, 0, {5, -1}, {-4, -4, -4}), ints({1, 1, -4})).tag, "thm:geq0kspe#4");
  EXPECT_EQ(classify(st(2, 1, {8}, {-4, -4}), ints({0, 0})).tag, "thm:geq1#i");
  EXPECT_EQ(classify(st(2, 1, {4}, {-2, -2}), ints({1, 1})).tag, "thm:geq1#ii");
  EXPECT_EQ(classify(st(1, 0, {4}, {-2, -2, -2}), ints({0, 0, 0})).tag, "thm:geq0keq1#i");
  auto j = classify(st(4, 0, {5, -1}, {-4, -4, -4}), ints({1, 1, -4})).to_json();
  EXPECT_EQ(j["verdict"], "NotRealizable");
}

TEST(Classifier, SporadicNeighboursAreRealizable) {
  // the exclusions are lines, nearby tuples are in the image
  EXPECT_EQ(classify(st(4, 0, {5, -1}, {-4, -4, -4}), ints({1, 1, 4})).verdict, Verdict::Realizable);
  EXPECT_EQ(classify(st(3, 0, {1, 2}, {-3, -3, -3}), ints({1, 1, 2})).verdict, Verdict::Realizable);
  EXPECT_EQ(classify(st(3, 0, {-1, 1}, {-3, -3}), ints({1, 1})).verdict, Verdict::Realizable);
  // even k flips the sign pattern of the first item
  EXPECT_EQ(classify(st(4, 0, {-1, 1}, {-4, -4}), ints({1, 1})).verdict, Verdict::NotRealizable);
  EXPECT_EQ(classify(st(4, 0, {-1, 1}, {-4, -4}), ints({1, -1})).verdict, Verdict::Realizable);
  // both components of a union are removed
  EXPECT_EQ(classify(st(3, 0, {-1, 4}, {-3, -3, -3}), ints({2, 2, 2})).verdict, Verdict::NotRealizable);
  EXPECT_EQ(classify(st(3, 0, {2, 10}, {-3, -3, -3, -3, -3, -3}), ints({1, 1, 1, 1, 1, 1})).verdict,
            Verdict::NotRealizable);
  // three zeros are always surjective for k >= 3
  EXPECT_EQ(classify(st(3, 0, {1, 1, 1}, {-3, -3, -3}), ints({1, 1, 1})).verdict, Verdict::Realizable);
}

TEST(Classifier, SporadicTableMatchesStatement) {
  const auto& t = sporadic_table();
  EXPECT_EQ(t.version, 1);
  std::set<int> items;
  for (auto& it : t.items) items.insert(it.item);
  EXPECT_EQ(items.size(), 11u);
  // every listed stratum satisfies the degree condition and is primitive
  for (auto& it : t.items) {
    int k = it.k ? it.k : 3;
    std::vector<int> o = it.zeros;
    for (int i = 0; i < it.s; ++i) o.push_back(-k);
    Stratum s(k, 0, o);
    EXPECT_TRUE(validate_stratum(s).empty()) << it.item;
    EXPECT_EQ(forced_power_divisor(s), 1) << it.item;
    for (auto& p : it.patterns(k)) EXPECT_TRUE(residue_tuple_valid(s, p));
  }
}

TEST(Classifier, SporadicTableOverride) {
  auto t = parse_sporadic_table(json::parse(R"({"version":7,"items":[
      {"item":1,"k":"any","k_min":3,"zeros":[-1,1],"s":2,
       "excluded_by_parity":{"even":[[1,1]],"odd":[[1,-1]]}}]})"));
  EXPECT_EQ(t.version, 7);
  EXPECT_EQ(t.items[0].patterns(5)[0], ints({1, -1}));
  EXPECT_THROW(parse_sporadic_table(json::parse(R"({"version":1,"items":[
      {"item":2,"k":6,"zeros":[-1,7],"s":3,"excluded":[[1,1]]}]})")),
               parse_error);
}

TEST(Classifier, QuadraticFamilies) {
  Cyclo i = Cyclo::i();
  // (1^2s', R, R) for several R, including R on the ray of 1
  Stratum a = st(2, 0, {3, 5}, spot::minus(2, 6));
  for (Cyclo R : {Cyclo(1), Cyclo(7), i, Cyclo::gaussian(2, -5)}) {
    ResidueTuple r{R, Cyclo(1), Cyclo(1), R, Cyclo(1), Cyclo(1)};
    EXPECT_EQ(classify(a, r).verdict, Verdict::NotRealizable);
  }
  EXPECT_EQ(classify(a, {Cyclo(1), Cyclo(1), Cyclo(1), i, Cyclo(2), Cyclo(1)}).verdict, Verdict::Realizable);
  // triangular with a repeated third entry
  Stratum b = st(2, 0, {3, 3}, spot::minus(2, 5));
  EXPECT_EQ(classify(b, ints({4, 1, 1, 1, 1})).verdict, Verdict::NotRealizable);
  EXPECT_EQ(classify(b, ints({1, 4, 4, 4, 1})).verdict, Verdict::NotRealizable);
  EXPECT_EQ(classify(b, {Cyclo(1), i, Cyclo(3), Cyclo(3), Cyclo(3)}).verdict, Verdict::Realizable);
  // same ray with two positive zeros stays open
  EXPECT_EQ(classify(st(2, 0, {1, 3}, spot::minus(2, 4)), ints({1, 2, 3, 4})).verdict, Verdict::Undecided);
  // several zeros
  EXPECT_EQ(classify(st(2, 0, {1, 1, 1, 1}, spot::minus(2, 4)), ints({1, 1, 1, 1})).verdict, Verdict::Realizable);
  EXPECT_EQ(classify(st(2, 0, {1, 1, 4}, spot::minus(2, 5)), ints({1, 1, 1, 1, 1})).verdict, Verdict::Realizable);
  EXPECT_EQ(classify(st(2, 0, {1, 1, 2}, spot::minus(2, 4)), ints({1, 1, 1, 1})).verdict, Verdict::Undecided);
}

TEST(Classifier, QuadraticMinusOneZero) {
  // (-1, 2s-3; -2^s) with s = 4: the square roots must form a realizable abelian tuple
  Stratum s = st(2, 0, {-1, 5}, spot::minus(2, 4));
  EXPECT_EQ(classify(s, ints({1, 1, 1, 1})).verdict, Verdict::NotRealizable);
  EXPECT_EQ(classify(s, ints({1, 4, 9, 9})).verdict, Verdict::Undecided);
  EXPECT_EQ(classify(s, ints({1, 2, 3, 5})).verdict, Verdict::Undecided);
}

TEST(Classifier, PowerTransport) {
  // every quadratic differential here is the square of an abelian one
  Stratum s(2, 0, {2, -2, -2, -2});
  auto no = classify(s, ints({1, 1, 1}));
  EXPECT_EQ(no.verdict, Verdict::NotRealizable);
  EXPECT_EQ(no.tag, "lem:puissk");
  auto yes = classify(s, ints({1, 1, 4}));
  EXPECT_EQ(yes.verdict, Verdict::Realizable);
  EXPECT_EQ(yes.certificate["d"], 2);
  // square roots outside the field
  EXPECT_EQ(classify(s, ints({1, 1, 5})).verdict, Verdict::Undecided);
}

TEST(Classifier, ZeroTupleRules) {
  // one pole: zero tuple iff at least three zeros
  EXPECT_EQ(classify(st(3, 0, {1, 2}, {-9}), ints({0})).verdict, Verdict::NotRealizable);
  EXPECT_EQ(classify(st(3, 0, {1, 1, 1}, {-9}), ints({0})).verdict, Verdict::Realizable);
  // p >= 2, four zeros: open
  EXPECT_EQ(classify(st(3, 0, {1, 1, 1, 3}, {-6, -6}), ints({0, 0})).verdict, Verdict::Undecided);
  // (4p'-3, 4p'-1; -4^2p') misses the line through (1,...,1) only
  Stratum e = st(2, 0, {1, 3}, {-4, -4});
  EXPECT_EQ(classify(e, ints({2, 2})).verdict, Verdict::NotRealizable);
  EXPECT_EQ(classify(e, ints({2, 1})).verdict, Verdict::Realizable);
}

TEST(Classifier, MarkedPointsDoNotMatter) {
  auto d1 = classify(st(3, 0, {1, 2}, spot::minus(3, 3)), ints({1, 1, 1}));
  auto d2 = classify(st(3, 0, {1, 2, 0, 0}, spot::minus(3, 3)), ints({1, 1, 1}));
  EXPECT_EQ(d1.verdict, d2.verdict);
  EXPECT_EQ(d1.tag, d2.tag);
}

TEST(Classifier, Errors) {
  EXPECT_THROW(classify(Stratum(2, 0, {3, -1}), {}), invalid_stratum);
  EXPECT_THROW(classify(Stratum(2, 2, {4}), {}), invalid_stratum);
  EXPECT_THROW(classify(st(3, 0, {1, 2}, spot::minus(3, 3)), ints({1, 1})), std::invalid_argument);
  EXPECT_THROW(classify(st(3, 0, {1, 2}, spot::minus(3, 3)), ints({1, 0, 1})), std::invalid_argument);
}

TEST(Triangular, Examples) {
  EXPECT_TRUE(is_triangular(Cyclo(1), Cyclo(1), Cyclo(4)));
  EXPECT_FALSE(is_triangular(Cyclo(1), Cyclo(1), Cyclo(1)));
  EXPECT_THROW(is_triangular(Cyclo(0), Cyclo(1), Cyclo(1)), std::invalid_argument);
}

TEST(Triangular, AgreesWithSignEnumeration) {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> d(-6, 6), mode(0, 2);
  int trues = 0;
  for (int it = 0; it < 10000; ++it) {
    Cyclo R[3];
    if (mode(rng) == 0) {
      // squares of roots that sum to zero, so the identity is hit often
      Cyclo a = Cyclo::gaussian(d(rng), d(rng)), b = Cyclo::gaussian(d(rng), d(rng));
      R[0] = a * a;
      R[1] = b * b;
      R[2] = (a + b) * (a + b);
    } else {
      for (auto& x : R) x = Cyclo::gaussian(Rational(d(rng), 1 + std::abs(d(rng))), d(rng));
    }
    if (R[0].is_zero() || R[1].is_zero() || R[2].is_zero()) continue;
    bool exact = is_triangular(R[0], R[1], R[2]);
    bool numeric = oracle_ref::triangular_numeric(R[0].to_complex(), R[1].to_complex(), R[2].to_complex());
    EXPECT_EQ(exact, numeric);
    trues += exact;
    // homogeneity
    Cyclo lam = gen::scalar(rng);
    EXPECT_EQ(is_triangular(R[0] * lam, R[1] * lam, R[2] * lam), exact);
  }
  EXPECT_GT(trues, 1000);
}

TEST(Admissible, WitnessesCheckOut) {
  Stratum s(3, 0, {2, 2, 2, -6, -6});
  auto d = admissible_decomposition(s);
  EXPECT_EQ(d.has_value(), oracle_ref::admissible_exists(3, {2, 2, 2}, {2, 2}));
  if (d) EXPECT_TRUE(check_admissible_decomposition(s, *d));
  EXPECT_THROW(admissible_decomposition(Stratum(3, 0, {1, 1, 1, -9})), std::invalid_argument);
  EXPECT_THROW(admissible_decomposition(Stratum(3, 0, {1, 5, -6, -6})), std::invalid_argument);
}

TEST(Admissible, AgreesWithLiteralEnumeration) {
  int checked = 0, found = 0;
  for (int k = 2; k <= 4; ++k)
    for (int p = 2; p <= 4; ++p) {
      std::vector<int> ell(p, 2);
      // all nondecreasing l vectors with entries up to 4
      std::function<void(int)> rec = [&](int i) {
        if (i == p) {
          int total = 0;
          for (int l : ell) total += k * l;
          int zsum = total - 2 * k;
          for (int a1 = 1 - k; a1 <= zsum; ++a1)
            for (int a2 = 1 - k; a2 <= a1; ++a2) {
              int a3 = zsum - a1 - a2;
              if (a3 <= -k || a3 > a2) continue;
              std::vector<int> o{a1, a2, a3};
              for (int l : ell) o.push_back(-k * l);
              Stratum s(k, 0, o);
              if (forced_power_divisor(s) > 1 || !is_valid_partition(s)) continue;
              if (std::find(o.begin(), o.begin() + 3, 0) != o.begin() + 3) continue;
              auto d = admissible_decomposition(s);
              bool want = oracle_ref::admissible_exists(k, {a1, a2, a3}, ell);
              EXPECT_EQ(d.has_value(), want) << s.to_string();
              if (d) EXPECT_TRUE(check_admissible_decomposition(s, *d)) << s.to_string();
              ++checked;
              found += want;
            }
          return;
        }
        for (int l = (i ? ell[i - 1] : 2); l <= 4; ++l) {
          ell[i] = l;
          rec(i + 1);
        }
      };
      rec(0);
    }
  EXPECT_GT(checked, 100);
  EXPECT_GT(found, 0);
  EXPECT_LT(found, checked);
}

TEST(Admissible, DivisibleZeroBound) {
  // if k | a1 and a decomposition exists then a_i <= sum(k l) - p for the others
  for (int k = 2; k <= 4; ++k)
    for (int l1 = 2; l1 <= 4; ++l1)
      for (int l2 = l1; l2 <= 4; ++l2) {
        int total = k * (l1 + l2), p = 2;
        for (int a1 = k; a1 <= total; a1 += k)
          for (int a2 = 1 - k; a2 <= total; ++a2) {
            int a3 = total - 2 * k - a1 - a2;
            if (a3 <= -k || a2 % k == 0 || a3 % k == 0) continue;
            Stratum s(k, 0, {a1, a2, a3, -k * l1, -k * l2});
            if (forced_power_divisor(s) > 1) continue;
            if (admissible_decomposition(s)) {
              EXPECT_LE(a2, total - p) << s.to_string();
              EXPECT_LE(a3, total - p) << s.to_string();
            }
          }
      }
}

TEST(Metamorphic, ScalingAndPermutation) {
  std::mt19937 rng(77);
  std::map<std::string, int> tags;
  for (int it = 0; it < 600; ++it) {
    Stratum s = gen::stratum(rng);
    ResidueTuple r = gen::tuple(s, rng);
    Cyclo lam = gen::scalar(rng);
    auto d = classify(s, r);
    tags[d.tag]++;
    EXPECT_EQ(classify(s, scale(r, lam)).verdict, d.verdict) << s.to_string() << " " << d.tag;
    EXPECT_EQ(classify(s, gen::permute_equal_orders(s, r, rng)).verdict, d.verdict) << s.to_string();
  }
  EXPECT_GE(tags.size(), 8u);
}

TEST(Agreement, AbelianSimplePolesMatchGraphSearch) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> sd(2, 6), nd(1, 3), w(-3, 3), coin(0, 1);
  for (int it = 0; it < 300; ++it) {
    int s = sd(rng), n = nd(rng);
    int a = s - 2;
    std::vector<int> zeros(n, 0);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int t = 0; t < a; ++t) zeros[pick(rng)]++;
    std::vector<int> o = zeros;
    for (int t = 0; t < s; ++t) o.push_back(-1);
    Stratum st1(1, 0, o);
    ResidueTuple r;
    Cyclo sum;
    bool real = coin(rng);
    for (int t = 0; t + 1 < s; ++t) {
      Cyclo x = real ? Cyclo(w(rng)) : Cyclo::gaussian(w(rng), w(rng));
      if (x.is_zero()) x = Cyclo(1);
      r.push_back(x);
      sum += x;
    }
    r.push_back(-sum);
    if (!residue_tuple_valid(st1, r)) continue;
    auto c = classify(st1, r);
    Stratum stripped = detail::strip_marked_points(st1);
    auto g = stripped.n_zeros() == 1 ? decide_minimal_abelian(stripped, r) : decide_multizero_abelian(stripped, r);
    EXPECT_EQ(c.verdict, g.verdict) << st1.to_string();
  }
}
