// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "generators.hpp"
#include "gluings.hpp"
#include "jacobian_check.hpp"
#include "oracles.hpp"
#include "residue_atlas/builders.hpp"
#include "residue_atlas/classifier.hpp"
#include "residue_atlas/connection.hpp"
#include "residue_atlas/oracle.hpp"
#include "spot_suite.hpp"

using namespace residue_atlas;
using spot::ints;
using spot::st;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int hw_jobs() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

std::string run_cli(const std::string& args, int& code) {
  std::string cmd = std::string(RESIDUE_ATLAS_CLI) + " " + args;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    code = -1;
    return {};
  }
  std::string out;
  char buf[4096];
  while (size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  int st = pclose(p);
  code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return out;
}

// Partitions of n into exactly parts pieces, each at most maxp, descending.
std::vector<std::vector<long long>> parts(long long n, int k, long long maxp) {
  std::vector<std::vector<long long>> out;
  if (k == 0) {
    if (n == 0) out.push_back({});
    return out;
  }
  for (long long v = std::min(n, maxp); v >= 1; --v)
    for (auto& rest : parts(n - v, k - 1, v)) {
      rest.insert(rest.begin(), v);
      out.push_back(rest);
    }
  return out;
}

long long gcd_all(const std::vector<long long>& x, const std::vector<long long>& y) {
  long long g = 0;
  for (auto v : x) g = std::gcd(g, v);
  for (auto v : y) g = std::gcd(g, v);
  return g;
}

IntTuple as_tuple(const std::vector<long long>& x, const std::vector<long long>& y) {
  IntTuple t(x.begin(), x.end());
  for (auto it = y.rbegin(); it != y.rend(); ++it) t.push_back(-*it);
  return t;
}

Outcome forbidden_reproduction() {
  int code = 0;
  auto out = json::parse(run_cli("enumerate-forbidden 2 2", code));
  bool ok = code == 0 && out.at("forbidden") == json::array({json::array({1, 1, -1, -1})});
  std::ostringstream d;
  d << "2,2 -> " << out.at("forbidden").dump();
  for (int s2 = 1; s2 <= 6; ++s2) {
    auto o = json::parse(run_cli("enumerate-forbidden 1 " + std::to_string(s2), code));
    bool empty = code == 0 && o.at("forbidden").empty();
    ok = ok && empty;
    if (!empty) d << "; 1," << s2 << " nonempty";
  }
  return {ok, d.str()};
}

Outcome bound_compliance() {
  bool ok = true;
  int patterns_seen = 0;
  std::ostringstream d;
  for (auto [s1, s2] : std::vector<std::pair<int, int>>{{2, 3}, {3, 3}, {2, 4}}) {
    auto trees = oracle_ref::prufer_trees(s1 + s2);
    const std::int64_t bound = forbidden_bound(s1, s2);
    const std::int64_t cap = bound + 2;
    auto got = enumerate_forbidden_upto(s1, s2, cap, hw_jobs());
    std::set<IntTuple> set(got.begin(), got.end());
    auto reported = enumerate_forbidden(s1, s2, hw_jobs());
    int over = 0, missing_pattern = 0, oracle_mismatch = 0;
    for (auto& t : got) {
      std::int64_t sum = 0;
      for (int i = 0; i < s1; ++i) sum += t[i];
      if (2 * sum > static_cast<std::int64_t>(s1) * s2) ++over;
    }
    int ones_patterns = 0;
    for (long long n = std::max(s1, s2); n <= cap; ++n)
      for (auto& x : parts(n, s1, n))
        for (auto& y : parts(n, s2, n)) {
          if (gcd_all(x, y) != 1) continue;
          auto t = as_tuple(x, y);
          bool forbidden = set.count(t) > 0;
          if (forbidden == oracle_ref::tree_exists(x, y, true, trees)) ++oracle_mismatch;
          auto ones = [](const std::vector<long long>& v) { return std::count(v.begin(), v.end(), 1LL); };
          if (2 * ones(x) > n && 2 * ones(y) > n) {
            ++ones_patterns;
            if (!forbidden) ++missing_pattern;
          }
        }
    bool same = std::set<IntTuple>(reported.begin(), reported.end()) == set;
    bool here = over == 0 && missing_pattern == 0 && oracle_mismatch == 0 && same;
    patterns_seen += ones_patterns;
    ok = ok && here;
    d << "(" << s1 << "," << s2 << "): " << got.size() << " forbidden, bound " << bound << ", over " << over
      << ", ones-patterns " << ones_patterns << " missing " << missing_pattern << ", oracle mismatches "
      << oracle_mismatch << "; ";
  }
  // the ones pattern only fits some shapes; it must show up somewhere
  return {ok && patterns_seen > 0, d.str()};
}

Outcome oracle_agreement() {
  FitOptions opt;
  opt.n_starts = 200;
  opt.tol = 1e-9;
  opt.seed = 1;
  opt.jobs = hw_jobs();
  int total = 0, conflicts = 0, undecided = 0;
  std::ostringstream d;
  for (int s = 2; s <= 6; ++s)
    for (int s1 = 1; s1 < s; ++s1)
      for (long long n = std::max(s1, s - s1); n <= 6; ++n)
        for (auto& x : parts(n, s1, n))
          for (auto& y : parts(n, s - s1, n)) {
            if (gcd_all(x, y) != 1) continue;
            auto t = as_tuple(x, y);
            ResidueTuple r;
            for (auto v : t) r.push_back(Cyclo(static_cast<long long>(v)));
            Stratum str = st(1, 0, {s - 2}, spot::minus(1, s));
            auto dec = classify(str, r);
            if (dec.verdict == Verdict::Undecided) {
              ++undecided;
              continue;
            }
            auto cc = cross_check(str, r, dec, opt);
            ++total;
            if (cc.conflict) {
              ++conflicts;
              d << "CONFLICT " << str.to_string() << " " << json(t).dump() << " verdict " << to_string(dec.verdict)
                << " residual " << cc.fit.residual << "; ";
            }
          }
  d << total << " tuples, " << conflicts << " conflicts, " << undecided << " undecided";
  return {conflicts == 0 && undecided == 0 && total > 0, d.str()};
}

Outcome figure() {
  Stratum s = st(1, 0, {5}, spot::minus(1, 7));
  ResidueTuple r = ints({3, 1, 1, 1, -2, -2, -2});
  auto d = classify(s, r);
  if (d.verdict != Verdict::Realizable) return {false, std::string("verdict ") + to_string(d.verdict)};
  auto w = find_witness(s, r);
  if (!w.surface) return {false, "no witness: " + w.reason};
  auto rep = verify_surface(*w.surface, s, r);
  bool ok = rep.ok && rep.genus_ok && rep.zeros_ok && rep.poles_ok && rep.residues_ok && w.surface->genus == 0;
  return {ok, "verify " + rep.to_json().dump()};
}

Outcome multi_zero() {
  ResidueTuple r = ints({2, 1, 1, -1, -1, -2});
  auto a = classify(st(1, 0, {2, 2}, spot::minus(1, 6)), r);
  auto b = classify(st(1, 0, {1, 3}, spot::minus(1, 6)), r);
  auto c = classify(st(1, 0, {4}, spot::minus(1, 6)), r);
  bool ok = a.verdict == Verdict::Realizable && b.verdict == Verdict::Realizable && c.verdict == Verdict::NotRealizable;
  return {ok, std::string("(2,2): ") + to_string(a.verdict) + ", (1,3): " + to_string(b.verdict) + ", (4): " + to_string(c.verdict)};
}

Outcome spot_suite() {
  auto t0 = Clock::now();
  auto suite = spot::suite();
  int good = 0;
  std::ostringstream d;
  for (auto& t : suite) {
    Verdict v = classify(t.stratum, t.tuple).verdict;
    if (v == t.verdict)
      ++good;
    else
      d << "wrong: " << t.name << "; ";
  }
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  d << good << "/" << suite.size() << " in " << secs << " s";
  return {suite.size() == 25 && good == 25 && secs < 1.0, d.str()};
}

Outcome triangular() {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> d(-6, 6), mode(0, 2);
  int checked = 0, disagree = 0, trues = 0;
  while (checked < 10000) {
    Cyclo R[3];
    if (mode(rng) == 0) {
      Cyclo a = Cyclo::gaussian(d(rng), d(rng)), b = Cyclo::gaussian(d(rng), d(rng));
      R[0] = a * a;
      R[1] = b * b;
      R[2] = (a + b) * (a + b);
    } else {
      for (auto& x : R) x = Cyclo::gaussian(Rational(d(rng), 1 + std::abs(d(rng))), d(rng));
    }
    if (R[0].is_zero() || R[1].is_zero() || R[2].is_zero()) continue;
    ++checked;
    bool exact = is_triangular(R[0], R[1], R[2]);
    trues += exact;
    if (exact != oracle_ref::triangular_numeric(R[0].to_complex(), R[1].to_complex(), R[2].to_complex())) ++disagree;
  }
  bool fixed = is_triangular(Cyclo(1), Cyclo(1), Cyclo(4)) && !is_triangular(Cyclo(1), Cyclo(1), Cyclo(1));
  std::ostringstream o;
  o << checked << " triples, " << trues << " triangular, " << disagree << " disagreements, fixtures "
    << (fixed ? "ok" : "wrong");
  return {disagree == 0 && fixed, o.str()};
}

Outcome gauss_bonnet() {
  std::mt19937 rng(7);
  int built = 0, rejected = 0, bad = 0;
  for (int it = 0; it < 1000; ++it) {
    auto t = gluings::random_gluing(rng);
    if (!t.built) {
      ++rejected;
      continue;
    }
    ++built;
    if (!t.euler_ok) ++bad;
  }
  std::ostringstream o;
  o << built << " glued, " << rejected << " rejected, " << bad << " violations";
  return {bad == 0 && built > 0, o.str()};
}

Outcome jacobian() {
  std::mt19937 rng(31);
  double worst = 0;
  for (int it = 0; it < 100; ++it) worst = std::max(worst, jac::sample(rng).rel_error);
  std::ostringstream o;
  o << "worst relative error " << worst << " over 100 configurations";
  return {worst < 1e-5, o.str()};
}

Outcome scaling() {
  std::mt19937 rng(1234);
  int compared = 0, skipped = 0, mismatches = 0;
  std::ostringstream o;
  while (compared < 1000) {
    Stratum s = gen::stratum(rng);
    ResidueTuple r = gen::tuple(s, rng);
    Cyclo lam = gen::scalar(rng);
    try {
      auto a = classify(s, r);
      if (a.verdict == Verdict::Undecided) {
        ++skipped;
        continue;
      }
      auto b = classify(s, scale(r, lam));
      ++compared;
      if (a.verdict != b.verdict) {
        ++mismatches;
        o << "mismatch " << s.to_string() << " " << a.tag << "; ";
      }
    } catch (const std::exception&) {
      ++skipped;
    }
  }
  o << compared << " compared, " << skipped << " skipped, " << mismatches << " mismatches";
  return {mismatches == 0, o.str()};
}

}  // namespace

int main() {
  const std::vector<std::tuple<int, std::string, double, std::function<Outcome()>>> criteria = {
      {1, "forbidden tuples reproduced", 10, forbidden_reproduction},
      {2, "forbidden tuples respect the bound", 300, bound_compliance},
      {3, "oracle agrees with graph decisions", 1800, oracle_agreement},
      {4, "figure surface realized and verified", 0, figure},
      {5, "multi-zero verdicts", 0, multi_zero},
      {6, "classifier spot suite", 1, spot_suite},
      {7, "triangularity against sign enumeration", 10, triangular},
      {8, "Gauss-Bonnet on random gluings", 60, gauss_bonnet},
      {9, "oracle Jacobian against central differences", 0, jacobian},
      {10, "verdicts invariant under scaling", 0, scaling},
  };
  int failed = 0;
  for (auto& [id, name, limit, fn] : criteria) {
    auto t0 = Clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (limit > 0 && secs > limit) {
      o.pass = false;
      o.detail += " (over time limit)";
    }
    failed += !o.pass;
    std::printf("[%s] %2d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
