#include <doctest.h>

#include <cstdlib>
#include <stdexcept>

#include "finsler/analysis.hpp"
#include "finsler/json_io.hpp"
#include "finsler/parallel.hpp"

using namespace finsler;

TEST_CASE("parallel_map keeps index order") {
  for (ExecMode mode : {ExecMode::serial, ExecMode::openmp}) {
    const auto v = parallel_map<std::size_t>(1000, [](std::size_t i) { return i * i; }, mode);
    REQUIRE(v.size() == 1000);
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == i * i);
  }
}

TEST_CASE("the smallest failing index wins") {
  for (ExecMode mode : {ExecMode::serial, ExecMode::openmp}) {
    try {
      parallel_map<int>(
          200,
          [](std::size_t i) -> int {
            if (i % 37 == 11) throw std::runtime_error(std::to_string(i));
            return 0;
          },
          mode);
      FAIL("no exception");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()) == "11");
    }
  }
}

TEST_CASE("serial and OpenMP sweeps produce identical reports") {
  const MetricSpec funk = lookup_metric("funk");
  const FamilyParams k{{0.3, -0.2}};
  CHECK(to_json(verify_identities(funk, k, 12, ExecMode::serial)).dump() ==
        to_json(verify_identities(funk, k, 12, ExecMode::openmp)).dump());
  const MetricSpec r = lookup_metric("randers-nonconst");
  CHECK(to_json(classify(r, 12, {}, ExecMode::serial)).dump() == to_json(classify(r, 12, {}, ExecMode::openmp)).dump());
  const auto a = sample_flags(funk, 16, ExecMode::serial), b = sample_flags(funk, 16, ExecMode::openmp);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].K == b[i].K);
  PathConfig cfg;
  cfg.count = 3;
  cfg.t_max = 0.5;
  CHECK(to_json(theorem3_residual(funk, 1.0, cfg, ExecMode::serial)).dump() ==
        to_json(theorem3_residual(funk, 1.0, cfg, ExecMode::openmp)).dump());
}

TEST_CASE("thread limit from the environment") {
  setenv("FINSLER_LAB_THREADS", "1", 1);
  CHECK(thread_limit() == 1);
  CHECK(default_exec_mode() == ExecMode::serial);
  setenv("FINSLER_LAB_THREADS", "junk", 1);
  CHECK(thread_limit() >= 1);
  unsetenv("FINSLER_LAB_THREADS");
  CHECK(thread_limit() >= 1);
}
