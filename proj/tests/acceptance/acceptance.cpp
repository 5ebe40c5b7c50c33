// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "pell/cli.hpp"
#include "pell/conic.hpp"
#include "pell/cubic.hpp"
#include "pell/oracle.hpp"
#include "properties.hpp"
#include "test_support.hpp"

using namespace pell;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

int failures = 0;

void criterion(const char* id, const char* title, double budget_s,
               const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0 && secs >= budget_s) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "over time budget (%.3f s >= %.0f s)", secs, budget_s);
    out.require(false, buf);
  }
  if (!out.ok) ++failures;
  char timing[64];
  if (budget_s > 0) {
    std::snprintf(timing, sizeof timing, "%.3f s, limit %.0f s", secs, budget_s);
  } else {
    std::snprintf(timing, sizeof timing, "%.3f s", secs);
  }
  std::printf("[%s] %s %s (%s)%s%s\n", out.ok ? "PASS" : "FAIL", id, title, timing,
              out.detail.empty() ? "" : ": ", out.detail.c_str());
  std::fflush(stdout);
}

std::string show(const Field& f, const CubicPoint& p) {
  return "(" + f.format(p.x) + "," + f.format(p.y) + "," + f.format(p.z) + ")";
}

template <class Point>
size_t distinct(std::vector<Point> v) {
  std::sort(v.begin(), v.end());
  return static_cast<size_t>(std::unique(v.begin(), v.end()) - v.begin());
}

uint64_t class_formula(CubeKind kind, uint64_t q) {
  switch (kind) {
    case CubeKind::NonCube: return q * q + q + 1;
    case CubeKind::CubeThreeRoots: return (q - 1) * (q - 1);
    case CubeKind::CubeOneRoot: return q * q - 1;
    case CubeKind::Char3: return q * q;
  }
  return 0;
}

std::string run_cli(const std::string& cmdline, int* code = nullptr) {
  std::vector<std::string> args;
  std::istringstream is(cmdline);
  for (std::string a; is >> a;) args.push_back(a);
  std::istringstream in;
  std::ostringstream out, err;
  const int rc = cli::run(args, in, out, err);
  if (code) *code = rc;
  return out.str();
}

}  // namespace

int main() {
  criterion("AC1", "non-cube example q=7 r=2", 1.0, [](Outcome& o) {
    const Field f = Field::make(7);
    const PellCubic c(f, f.from_int(2));
    o.require(c.kind() == CubeKind::NonCube, "2 should be a non-cube in F_7");
    const auto sols = c.enumerate_solutions();
    o.require(sols.size() == 57 && distinct(sols) == 57,
              "expected 57 distinct solutions, got " + std::to_string(distinct(sols)));
    const auto a = c.psi1({f.from_int(3), f.from_int(5), f.one()});
    const auto b = c.psi1({f.from_int(4), f.one(), f.zero()});
    o.require(a == CubicPoint{f.from_int(5), f.from_int(4), f.from_int(4)},
              "psi1([3:5:1]) = " + show(f, a));
    o.require(b == CubicPoint{f.from_int(2), f.from_int(4), f.from_int(1)},
              "psi1([4:1:0]) = " + show(f, b));
  });

  criterion("AC2", "three-root example q=13 r=5", 1.0, [](Outcome& o) {
    const Field f = Field::make(13);
    const Fq r = f.from_int(5);
    const auto sols = PellCubic(f, r).enumerate_solutions();
    o.require(sols.size() == 144 && distinct(sols) == 144,
              "expected 144 distinct solutions, got " + std::to_string(distinct(sols)));
    const ProjPoint3 P{f.from_int(9), f.from_int(3), f.one()}, Q{f.from_int(4), f.one(), f.zero()};
    const CubicPoint a{f.from_int(3), f.from_int(4), f.from_int(3)};
    const CubicPoint b{f.from_int(10), f.from_int(4), f.from_int(9)};
    std::string matched;
    for (Fq s : f.classify_cube(r).roots) {
      const PellCubic c(f, r, s);
      if (c.psi2(P) == a && c.psi2(Q) == b && c.psi2_inv(a) == P && c.psi2_inv(b) == Q) {
        matched += (matched.empty() ? "" : ",") + f.format(s);
      }
    }
    o.require(!matched.empty(), "no cube root s reproduces psi2([9:3:1]) and psi2([4:1:0])");
    if (o.ok) o.detail = "s=" + matched;
  });

  criterion("AC3", "one-root example q=11 r=9", 1.0, [](Outcome& o) {
    const Field f = Field::make(11);
    const PellCubic c(f, f.from_int(9));
    const auto sols = c.enumerate_solutions();
    o.require(sols.size() == 120 && distinct(sols) == 120,
              "expected 120 distinct solutions, got " + std::to_string(distinct(sols)));
    const ProjPoint3 P{f.from_int(7), f.from_int(2), f.one()}, Q{f.from_int(3), f.one(), f.zero()};
    const CubicPoint a{f.from_int(9), f.from_int(1), f.from_int(6)};
    const CubicPoint b{f.from_int(4), f.from_int(5), f.zero()};
    o.require(c.psi3(P) == a, "psi3([7:2:1]) = " + show(f, c.psi3(P)));
    o.require(c.psi3(Q) == b, "psi3([3:1:0]) = " + show(f, c.psi3(Q)));
    o.require(c.psi3_inv(a) == P && c.psi3_inv(b) == Q, "psi3_inv does not round-trip");
  });

  criterion("AC4", "cubic enumeration equals brute force, all q <= 31, all r", 60.0, [](Outcome& o) {
    uint64_t cases = 0;
    for (const Field& f : testing::fields_upto(31)) {
      for (uint64_t i = 1; i < f.q(); ++i) {
        const PellCubic c(f, f.element(i));
        auto sols = c.enumerate_solutions();
        std::sort(sols.begin(), sols.end());
        const auto truth = oracle::brute_force_cubic(f, c.r());
        const std::string tag = "q=" + std::to_string(f.q()) + " r=" + f.format(c.r());
        o.require(sols == truth.points, tag + ": enumeration differs from brute force");
        o.require(sols.size() == class_formula(c.kind(), f.q()),
                  tag + ": size differs from the " + std::string(to_string(c.kind())) + " formula");
        ++cases;
      }
    }
    if (o.ok) o.detail = std::to_string(cases) + " parameters";
  });

  criterion("AC5", "conic enumeration equals brute force, odd q <= 31, all d", 10.0, [](Outcome& o) {
    uint64_t cases = 0;
    for (const Field& f : testing::fields_upto(31, /*odd_only=*/true)) {
      for (uint64_t i = 1; i < f.q(); ++i) {
        const PellConic c(f, f.element(i));
        auto sols = c.enumerate_solutions();
        std::sort(sols.begin(), sols.end());
        const std::string tag = "q=" + std::to_string(f.q()) + " d=" + f.format(c.d());
        o.require(sols == oracle::brute_force_conic(f, c.d()).points,
                  tag + ": enumeration differs from brute force");
        o.require(sols.size() == (f.is_square(c.d()) ? f.q() - 1 : f.q() + 1), tag + ": wrong size");
        ++cases;
      }
    }
    if (o.ok) o.detail = std::to_string(cases) + " parameters";
  });

  criterion("AC6", "group structure and CRT splits, q <= 13", 30.0, [](Outcome& o) {
    uint64_t orders = 0, splits = 0;
    for (const Field& f : testing::fields_upto(13)) {
      for (uint64_t i = 1; i < f.q(); ++i) {
        const Fq a = f.element(i);
        const std::string tag = "q=" + std::to_string(f.q()) + " param=" + f.format(a);
        const PellCubic c(f, a);
        if (c.kind() != CubeKind::Char3) {
          const auto check = oracle::check_element_orders(c);
          o.require(check.confirmed, tag + ": cubic " + check.claimed.structure_string() +
                                         " not confirmed (max order " +
                                         std::to_string(check.max_order) + ")");
          ++orders;
        }
        if (c.kind() == CubeKind::CubeThreeRoots) {
          for (const auto& pt : oracle::brute_force_cubic(f, a).points) {
            if (c.pow(pt, f.q() - 1) != c.identity()) {
              o.require(false, tag + ": pt^(q-1) != identity");
              break;
            }
          }
          o.require(oracle::check_crt_split(c), tag + ": cubic CRT split fails");
          ++splits;
        }
        if (f.p() != 2) {
          const PellConic k(f, a);
          o.require(oracle::check_element_orders(k).confirmed, tag + ": conic not cyclic");
          ++orders;
          if (k.sqrt_d()) {
            o.require(oracle::check_crt_split(k), tag + ": conic CRT split fails");
            ++splits;
          }
        }
      }
    }
    if (o.ok) o.detail = std::to_string(orders) + " order checks, " + std::to_string(splits) + " splits";
  });

  criterion("AC7", "randomized property suites, >= 1000 instances per class", 0, [](Outcome& o) {
    constexpr uint64_t kInstances = 2000;
    std::string summary;
    auto record = [&](const std::string& name, const testing::Tally& t) {
      o.require(t.instances >= 1000, name + ": only " + std::to_string(t.instances) + " instances");
      o.require(t.failures == 0, name + ": " + std::to_string(t.failures) + " failures, first: " +
                                     t.first_failure);
      summary += (summary.empty() ? "" : ", ") + name + " " + std::to_string(t.instances) + "/" +
                 std::to_string(t.checks);
    };
    uint64_t seed = 1;
    for (CubeKind kind : {CubeKind::NonCube, CubeKind::CubeThreeRoots, CubeKind::CubeOneRoot,
                          CubeKind::Char3}) {
      record(std::string(to_string(kind)), testing::run_cubic_properties(kind, kInstances, seed++));
    }
    record("ConicNonSquare", testing::run_conic_properties(testing::ConicKind::NonSquare, kInstances, seed++));
    record("ConicSquare", testing::run_conic_properties(testing::ConicKind::Square, kInstances, seed++));
    if (o.ok) o.detail = "instances/checks " + summary;
  });

  criterion("AC8", "enumerate and sample --seed 42 are byte-identical across runs", 0, [](Outcome& o) {
    for (const std::string cmd :
         {"enumerate --p 13 --cubic --r 5", "enumerate --p 3 --k 3 --cubic --r 2,1,0 --threads 4",
          "enumerate --p 7 --conic --d 3 --format csv", "sample --p 11 --cubic --r 9 --n 1000 --seed 42",
          "sample --p 7 --cubic --r 2 --n 1000 --seed 42", "sample --p 13 --conic --d 2 --n 100 --seed 42"}) {
      int c1 = -1, c2 = -1;
      const std::string first = run_cli(cmd, &c1), second = run_cli(cmd, &c2);
      o.require(c1 == 0 && c2 == 0, cmd + ": nonzero exit");
      o.require(!first.empty() && first == second, cmd + ": outputs differ");
    }
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
