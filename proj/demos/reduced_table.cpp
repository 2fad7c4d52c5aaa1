// Evidence carried by a published test decision or p-value alone.
#include <cstdio>

#include "gll/reduced.hpp"

int main() {
  using gll::PowerFunction;
  using gll::TestOutcome;
  std::printf("%-28s %8s %8s\n", "test", "reject", "accept");
  auto row = [](const char* name, const PowerFunction& pf) {
    std::printf("%-28s %8.4g %8.4g\n", name, gll::glr_from_test(pf, TestOutcome::rejected),
                gll::glr_from_test(pf, TestOutcome::not_rejected));
  };
  row("one-sided, alpha 0.05", PowerFunction::one_sided(0.05));
  row("one-sided, alpha 0.025", PowerFunction::one_sided(0.025));
  row("point null, alpha 0.05", PowerFunction::point_null_one_sided(0.05));
  row("two-sided, alpha 0.05", PowerFunction::two_sided_point_null(0.05));
  row("equivalence, pi_max 0.9", PowerFunction::equivalence(0.05, 0.9));

  std::printf("\n%-8s %12s\n", "p-value", "GLR mu>0");
  for (double u : {0.001, 0.01, 0.05, 0.1, 0.5, 0.9})
    std::printf("%-8g %12.6g\n", u, gll::glr_from_pvalue_normal(u));
}
