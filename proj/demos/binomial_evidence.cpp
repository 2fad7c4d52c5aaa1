// 9 successes out of 17: evidence for theta > 0.2 over theta <= 0.2, the
// 1/8 and 1/32 support intervals, and the normalized likelihood curve.
#include <filesystem>
#include <fstream>
#include <iostream>

#include "gll/gll.hpp"
#include "gll/io.hpp"

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : ".";
  std::filesystem::create_directories(dir);
  const auto m = gll::binomial_model(gll::BinomialData(9, 17));
  const auto h2 = gll::parse_region("theta > 0.2", m.space());
  const auto h1 = gll::complement(h2);

  const auto rep = gll::glr(m, h2, h1);
  std::cout << "GLR(theta > 0.2 : theta <= 0.2) = " << gll::format12(rep.glr) << " ("
            << rep.strength.label << ")\n";
  for (double k : {8.0, 32.0}) {
    const auto s = gll::support_set(m, k);
    std::cout << "S_" << k << " = " << s.set << '\n';
  }
  std::cout << "k* for theta > 0.2: " << gll::format12(gll::k_star(m, h2)) << '\n';

  std::ofstream csv(dir + "/curve_binomial.csv");
  gll::write_profile_csv(csv, gll::profile_curve(m, "theta", {0.0, 1.0, 1001}));
  std::cout << "wrote " << dir << "/curve_binomial.csv\n";
}
