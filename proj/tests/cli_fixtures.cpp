// Writes the input files and golden outputs used by the CLI smoke tests.
// Usage: cli_fixtures <dir>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include "tmkit/io.hpp"
#include "tmkit/measure.hpp"
#include "tmkit/quasi_integral.hpp"
#include "tmkit/sampling.hpp"
#include "tmkit/shapes.hpp"
#include "tmkit/topology.hpp"

using namespace tmkit;
namespace fs = std::filesystem;

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: cli_fixtures <dir>\n";
    return 2;
  }
  const fs::path dir = argv[1];
  fs::create_directories(dir);
  using io::json;

  const GridPtr sq = Grid::make({0.0, 1.0, 0.0, 1.0, 64, 64, SpaceModel::Square});
  io::write_region(shapes::annulus(sq, {0.5, 0.5}, 0.15, 0.35), dir / "annulus.pgm");
  io::write_region(union_of(shapes::disk(sq, {0.25, 0.3}, 0.12), shapes::disk(sq, {0.7, 0.7}, 0.15)),
                   dir / "blobs.pgm");

  // Square of diameter eps; the golden line comes from the pairwise scan.
  const GridPtr pl = Grid::make({-2.0, 4.0, -3.0, 3.0, 120, 120, SpaceModel::Plane});
  const double eps = 0.5;
  const Region sqr = shapes::square(pl, {1.0, 0.0}, eps / std::sqrt(2.0));
  io::write_region(sqr, dir / "square.pgm");
  const double d = diameter_bruteforce(sqr);
  if (std::abs(d - eps) > pl->spec().pitch()) {
    std::cerr << "square diameter " << d << " is not within a pitch of " << eps << '\n';
    return 1;
  }
  io::write_text(dir / "square.golden", "diameter: " + io::format_double(d) + "\n");

  // Radial bump at p1 = (0, 0) on the two-point window.
  FunctionSampler fs(pl, 1);
  const SampledFunction bump = fs.bump({0.0, 0.0}, 1.5, 1.0);
  io::write_function_binary(bump, dir / "bump.bin");
  io::write_text(dir / "two_point.json",
                 json{{"measure", {{"type", "two_point"}, {"p1", {0.0, 0.0}}, {"p2", {2.0, 0.0}}}}}.dump(2) + "\n");
  const Measure tp = catalog::two_point(pl, {0.0, 0.0}, {2.0, 0.0});
  io::write_text(dir / "two_point.golden",
                 io::integral_csv_header() + "\n" + io::integral_csv_row({tp.name(), "bump.bin", quasi_integral(tp, bump)}) + "\n");

  // Point mass: the integral is f(x).
  const Point x{0.5, 0.25};
  io::write_text(dir / "point_mass.json", json{{"measure", {{"type", "point_mass"}, {"x", {x.x, x.y}}}}}.dump(2) + "\n");
  const double fx = bump[pl->cell_at(x)];
  io::write_text(dir / "point_mass.golden", "point_mass,bump.bin," + io::format_double(fx) + "," +
                                                io::format_double(std::min(bump.min(), 0.0)) + "," +
                                                io::format_double(bump.max()) + "\n");

  // Lebesgue and the constant 1 on the unit square.
  io::write_function_csv(SampledFunction(sq, 1.0), dir / "one.csv");
  io::write_text(dir / "lebesgue.json",
                 json{{"grid", io::grid_to_json(sq->spec())}, {"measure", {{"type", "lebesgue"}}}}.dump(2) + "\n");
  io::write_text(dir / "lebesgue.golden", "lebesgue,one.csv,1,0,1\n");
  // Same measure, function on another grid.
  io::write_function_binary(SampledFunction(Grid::make({0.0, 1.0, 0.0, 1.0, 32, 32, SpaceModel::Square}), 1.0),
                            dir / "one32.bin");

  io::write_text(dir / "broken.pgm", "P5\n3 3\n255\n");
  io::write_text(dir / "run.json", json{{"scenario", "aarnes-partition"}, {"seed", 4}, {"grid", {{"model", "disk"}, {"bounds", {-1, 1, -1, 1}}, {"nx", 96}, {"ny", 96}}}}.dump(2) + "\n");
  return 0;
}
