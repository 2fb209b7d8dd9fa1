#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ccqo/bench.hpp"
#include "ccqo/classic_bb.hpp"
#include "ccqo/ibbplus.hpp"
#include "ccqo/instance_gen.hpp"
#include "ccqo/qp_core.hpp"
#include "test_util.hpp"

using namespace ccqo;

namespace {

SolverConfig unlimited() {
  SolverConfig cfg;
  cfg.max_iterations = 100'000'000;
  cfg.soft_no_improve_iters = 100'000'000;
  cfg.hard_time_limit = 1e9;
  cfg.soft_no_improve_time = 1e9;
  return cfg;
}

}  // namespace

TEST_CASE("unordered unpruned traversal matches the shared call count") {
  const QuadraticObjective obj = testutil::random_objective(5, 71);
  const SearchBox box = SearchBox::cube(5, 2.0);
  SolverConfig cfg = unlimited();
  cfg.disable_bound_deletion = true;
  cfg.in_level_ordering = false;
  const SolveResult res = solve_bb(obj, box, 2, cfg);
  CHECK(res.lb_calls == 16);  // equal to the flag-box solver's count
  CHECK(res.stop_reason == StopReason::Exhausted);
}

TEST_CASE("call-count identity across dimensions") {
  for (int p = 4; p <= 7; ++p) {
    const QuadraticObjective obj = testutil::random_objective(p, 80 + static_cast<unsigned>(p));
    const SearchBox box = SearchBox::cube(p, 2.0);
    for (int k = 1; k < p; ++k) {
      SolverConfig cfg = unlimited();
      cfg.disable_bound_deletion = true;
      cfg.in_level_ordering = false;
      const SolveResult bb = solve_bb(obj, box, k, cfg);
      SolverConfig icfg = unlimited();
      icfg.disable_bound_deletion = true;
      const SolveResult ibb = solve_ibb(obj, box, k, icfg);
      const auto expected = static_cast<long>(bench::expected_lb_calls(p, k));
      CHECK(bb.lb_calls == expected);
      CHECK(ibb.lb_calls == expected);
    }
  }
}

TEST_CASE("optimal values match the brute-force oracle") {
  for (int id = 0; id < 4; ++id) {
    const int p = 7 + id;
    const auto inst = generate_custom(
        p, 3 * p, GenParams{.example_id = 1 + id % 3, .snr = 1.0,
                            .seed = static_cast<std::uint64_t>(300 + id), .k0 = 4, .k = 3});
    const QuadraticObjective obj = build_ccqo(inst.X, inst.y);
    const SearchBox box = inst.box();
    for (const bool ordering : {false, true}) {
      SolverConfig cfg = unlimited();
      cfg.in_level_ordering = ordering;
      const SolveResult res = solve_bb(obj, box, 3, cfg);
      const auto oracle = bench::brute_force_oracle(obj, box, 3);
      REQUIRE(res.stop_reason == StopReason::Exhausted);
      CHECK(res.value == doctest::Approx(oracle.value).epsilon(1e-6));
      CHECK(count_nonzeros(res.point) <= 3);
    }
  }
}

TEST_CASE("k = p-1 is a depth-one tree over single deletions") {
  const QuadraticObjective obj = testutil::random_objective(6, 91);
  const SearchBox box = SearchBox::cube(6, 1.5);
  SolverConfig cfg = unlimited();
  cfg.disable_bound_deletion = true;
  cfg.in_level_ordering = false;
  const SolveResult res = solve_bb(obj, box, 5, cfg);
  CHECK(res.lb_calls == 7);  // root + p single-feature deletions
  double best = obj.c();
  for (int s = 0; s < 6; ++s) {
    IndexSet retained;
    for (int i = 0; i < 6; ++i)
      if (i != s) retained.push_back(i);
    best = std::min(best, lower_bound(obj, box, retained, 1e-9).value);
  }
  CHECK(res.value == doctest::Approx(best).epsilon(1e-9));
}

TEST_CASE("criterion is monotone under feature deletion") {
  const QuadraticObjective obj = testutil::random_objective(8, 95);
  const SearchBox box = SearchBox::cube(8, 1.0);
  IndexSet s = full_index_set(8);
  double prev = lower_bound(obj, box, s, 1e-9).value;
  // Delete one feature at a time and watch q rise.
  for (int drop : {6, 3, 0, 7, 2}) {
    IndexSet next;
    for (int i : s)
      if (i != drop) next.push_back(i);
    s = next;
    const double v = lower_bound(obj, box, s, 1e-9).value;
    CHECK(v >= prev - 1e-9);
    prev = v;
  }
}
