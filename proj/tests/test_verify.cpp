#include <doctest.h>

#include "gapcert/verify.hpp"

using namespace gapcert;

TEST_SUITE_BEGIN("verify");

namespace {

verify::Options quick_opts() {
  verify::Options opts;
  opts.quick = true;
  return opts;
}

void require_all_pass(const std::vector<verify::CheckResult>& results) {
  for (const auto& r : results) {
    INFO(r.name, ": ", r.detail);
    CHECK(r.pass);
  }
}

}  // namespace

TEST_CASE("gap property suite passes at quick scale") {
  require_all_pass(verify::gap_properties(quick_opts()));
}

TEST_CASE("bounds property suite passes at quick scale") {
  require_all_pass(verify::bounds_properties(quick_opts()));
}

TEST_CASE("hypercube property suite passes at quick scale") {
  require_all_pass(verify::hypercube_properties(quick_opts()));
}

TEST_CASE("doeblin property suite passes at quick scale") {
  require_all_pass(verify::doeblin_properties(quick_opts()));
}

TEST_CASE("bernoulli property suite passes at quick scale") {
  require_all_pass(verify::bernoulli_properties(quick_opts()));
}

TEST_CASE("monte carlo validity checks pass at quick scale") {
  auto opts = quick_opts();
  require_all_pass({verify::bound_validity(opts)});
  require_all_pass({verify::histogram_uniform(opts)});
}

TEST_SUITE_END();
