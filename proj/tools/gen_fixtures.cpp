// Writes the corpus complexes as JSON files (default into ./data).

#include <filesystem>
#include <fstream>
#include <iostream>

#include "support/fixtures.hpp"
#include "tcx/json_io.hpp"

int main(int argc, char** argv) {
  std::filesystem::path dir = argc > 1 ? argv[1] : "data";
  std::filesystem::create_directories(dir);
  auto write = [&](const std::string& name, const tcx::TriangleComplex& X) {
    std::ofstream f(dir / name);
    f << tcx::dump_deterministic(tcx::complex_to_json(X));
    std::cout << (dir / name).string() << "\n";
  };
  write("c1_square.json", fixtures::c1_square());
  write("c2_book.json", fixtures::c2_book(3));
  write("c3_theta_circle.json", fixtures::c3_theta_circle());
  write("fan5.json", fixtures::equilateral_fan(5));
  write("fan6.json", fixtures::equilateral_fan(6));
  write("fan7.json", fixtures::equilateral_fan(7));
  write("wedge_hex_hex.json", fixtures::wedge_hex_hex());
  write("wedge_sq_hex.json", fixtures::wedge_sq_hex());
  write("wedge_sq_sq.json", fixtures::wedge_sq_sq());
  write("chain3_hex.json", fixtures::chain3_hex());
  write("clover3_wedge.json", fixtures::clover3_wedge());
  write("torus_pair.json", fixtures::torus_pair());
  write("theta_interval.json", fixtures::theta_interval());
  tcx::AtomEnv env;
  env.declare("alpha", 0.3);
  write("cone_annulus_alpha.json",
        fixtures::cone_annulus(7, tcx::AngleExpr::atom("alpha", 1), env));
  write("cone_annulus_third.json", fixtures::cone_annulus(7, tcx::angle_pi(1, 3)));
  return 0;
}
