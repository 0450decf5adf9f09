// Copyright 2026 The ectkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ectkit/align.hpp"
#include "ectkit/errors.hpp"
#include "ectkit/mesh.hpp"
#include "ectkit/metric.hpp"
#include "ectkit/transform.hpp"
#include "ectkit/transform2d.hpp"

namespace fs = std::filesystem;

namespace {

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

ect::Mesh load_2d(const std::string& path) {
  ect::Mesh m = ect::load_off(path);
  m.dim = 2;
  return m;
}

void write_discrete_csv(const std::string& path, const ect::DiscreteEct& d) {
  std::ofstream out(path);
  if (!out) throw ect::ParseError("cannot open for writing: " + path);
  out << "dx,dy,dz";
  for (double h : d.heights) out << ',' << fmt17(h);
  out << '\n';
  for (size_t i = 0; i < d.directions.size(); ++i) {
    out << fmt17(d.directions[i].x) << ',' << fmt17(d.directions[i].y) << ','
        << fmt17(d.directions[i].z);
    for (int v : d.values[i]) out << ',' << v;
    out << '\n';
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Exact Euler characteristic transforms for triangle meshes"};
  app.require_subcommand(1);

  uint64_t seed = 0;
  int jobs = 1;
  bool deterministic = false;
  app.add_option("--seed", seed, "random seed (default 0)");
  app.add_option("--jobs", jobs, "worker threads for pair sums");
  app.add_flag("--deterministic", deterministic,
               "force the deterministic pairwise reduction (always on; "
               "accepted for interface stability)");

  // transform
  auto* tr = app.add_subcommand("transform", "OFF mesh -> exact ECT (.ectp)");
  std::string tr_mesh, tr_out = "out.ectp";
  bool tr_merge = false;
  tr->add_option("mesh", tr_mesh, "input OFF file")->required();
  tr->add_option("--out", tr_out, "output .ectp path");
  tr->add_flag("--merge", tr_merge, "merge equal-gain adjacent regions");

  // transform2d
  auto* t2 = app.add_subcommand(
      "transform2d", "planar OFF mesh (z = 0) -> arc table CSV");
  std::string t2_mesh, t2_out = "out.arcs.csv";
  double t2_radius = 1.0;
  t2->add_option("mesh", t2_mesh, "input OFF file with z = 0")->required();
  t2->add_option("--out", t2_out, "output CSV path");
  t2->add_option("--radius", t2_radius, "height domain is [-R, R]");

  // inner2d
  auto* i2 = app.add_subcommand("inner2d",
                                "exact 2D ECT inner product of two meshes");
  std::string i2_a, i2_b;
  double i2_radius = 1.0;
  i2->add_option("mesh_a", i2_a)->required();
  i2->add_option("mesh_b", i2_b)->required();
  i2->add_option("--radius", i2_radius, "height domain is [-R, R]");

  // distmat
  auto* dm = app.add_subcommand(
      "distmat", "pairwise exact ECT distances over a directory of .ectp");
  std::string dm_dir, dm_out = "dist.csv";
  dm->add_option("dir", dm_dir, "directory containing .ectp files")
      ->required();
  dm->add_option("--out", dm_out, "output CSV path");

  // discretize
  auto* dc = app.add_subcommand(
      "discretize", "discrete ECT on an octahedral direction grid");
  std::string dc_mesh, dc_mesh2, dc_out = "discrete.csv";
  int dc_k = 9, dc_heights = 100;
  bool dc_unweighted = false;
  dc->add_option("mesh", dc_mesh, "input OFF file")->required();
  dc->add_option("mesh_b", dc_mesh2, "optional second mesh; prints distance");
  dc->add_option("--k", dc_k, "octahedron refinement level (4k^2+2 points)");
  dc->add_option("--heights", dc_heights, "number of height samples");
  dc->add_option("--out", dc_out, "output CSV path");
  dc->add_flag("--unweighted", dc_unweighted,
               "plain matrix L2 instead of grid-cell weighting");

  // mantel
  auto* mt = app.add_subcommand(
      "mantel", "Mantel correlation of two distance-matrix CSVs");
  std::string mt_a, mt_b;
  mt->add_option("csv_a", mt_a)->required();
  mt->add_option("csv_b", mt_b)->required();

  // align
  auto* al = app.add_subcommand("align",
                                "rotational alignment of two .ectp files");
  std::string al_x, al_y, al_method = "grid+gradient",
                          al_out = "trace.csv";
  int al_iters = 11;
  std::vector<double> al_truth;
  al->add_option("x", al_x, "reference .ectp")->required();
  al->add_option("y", al_y, ".ectp to rotate onto x")->required();
  al->add_option("--method", al_method, "grid | gradient | grid+gradient");
  al->add_option("--iters", al_iters, "grid-search iterations");
  al->add_option("--out", al_out, "trace CSV path");
  al->add_option("--truth", al_truth,
                 "true Euler angles alpha beta gamma; reports SO(3) distance")
      ->expected(3);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help/usage text
    return code == 0 ? 0 : 2;
  }

  ect::MetricOptions opts;
  opts.jobs = deterministic ? 1 : std::max(1, jobs);

  if (*tr) {
    ect::Mesh m = ect::normalize(ect::load_off(tr_mesh));
    ect::ProtoTransform t = ect::build_proto_transform(m, tr_merge);
    t.mesh_id = fs::path(tr_mesh).stem().string();
    ect::write_ectp_file(tr_out, t);
    std::cout << "terms " << t.terms.size() << "\nchi "
              << ect::euler_characteristic(m) << '\n';
  } else if (*t2) {
    ect::ArcTable tab = ect::build_proto_transform_2d(load_2d(t2_mesh),
                                                      t2_radius);
    std::ofstream out(t2_out);
    if (!out) throw ect::ParseError("cannot open for writing: " + t2_out);
    out << "theta0,theta1,order,chi\n";
    for (const auto& a : tab.arcs) {
      out << fmt17(a.theta0) << ',' << fmt17(a.theta1) << ',';
      for (size_t i = 0; i < a.order.size(); ++i)
        out << (i ? " " : "") << a.order[i] + 1;
      out << ',';
      for (size_t i = 0; i < a.chi.size(); ++i)
        out << (i ? " " : "") << a.chi[i];
      out << '\n';
    }
    std::cout << "arcs " << tab.arcs.size() << '\n';
  } else if (*i2) {
    const ect::ArcTable a = ect::build_proto_transform_2d(load_2d(i2_a),
                                                          i2_radius);
    const ect::ArcTable b = ect::build_proto_transform_2d(load_2d(i2_b),
                                                          i2_radius);
    std::cout << fmt17(ect::inner_product_2d(a, b)) << '\n';
  } else if (*dm) {
    std::vector<std::string> paths;
    for (const auto& entry : fs::directory_iterator(dm_dir))
      if (entry.path().extension() == ".ectp")
        paths.push_back(entry.path().string());
    std::sort(paths.begin(), paths.end());
    if (paths.size() < 2)
      throw ect::ArgError("need at least two .ectp files in " + dm_dir);
    std::vector<ect::ProtoTransform> collection;
    std::vector<std::string> labels;
    for (const auto& p : paths) {
      collection.push_back(ect::read_ectp_file(p));
      labels.push_back(fs::path(p).stem().string());
    }
    const ect::DistanceMatrix m =
        ect::distance_matrix(collection, labels, opts, /*verbose=*/true);
    ect::write_distance_csv(dm_out, m);
    std::cout << "wrote " << dm_out << '\n';
  } else if (*dc) {
    const std::vector<ect::Vec3d> dirs = ect::octahedron_directions(dc_k);
    const ect::Mesh a = ect::normalize(ect::load_off(dc_mesh));
    const ect::DiscreteEct da = ect::discrete_ect(a, dirs, dc_heights);
    write_discrete_csv(dc_out, da);
    std::cout << "directions " << dirs.size() << " heights " << dc_heights
              << '\n';
    if (!dc_mesh2.empty()) {
      const ect::Mesh b = ect::normalize(ect::load_off(dc_mesh2));
      const ect::DiscreteEct db = ect::discrete_ect(b, dirs, dc_heights);
      std::cout << "distance "
                << fmt17(ect::discrete_distance(da, db, !dc_unweighted))
                << '\n';
    }
  } else if (*mt) {
    const double r = ect::mantel_correlation(ect::read_distance_csv(mt_a),
                                             ect::read_distance_csv(mt_b));
    std::printf("%.4f\n", r);
  } else if (*al) {
    const ect::ProtoTransform x = ect::read_ectp_file(al_x);
    const ect::ProtoTransform y = ect::read_ectp_file(al_y);
    ect::Mat3d truth_m;
    const bool has_truth = !al_truth.empty();
    if (has_truth)
      truth_m = ect::euler_to_matrix({al_truth[0], al_truth[1], al_truth[2]});
    const ect::Mat3d* truth = has_truth ? &truth_m : nullptr;

    ect::AlignResult res;
    if (al_method == "grid") {
      res = ect::adaptive_grid_search(x, y, al_iters, opts, truth);
    } else if (al_method == "gradient") {
      res = ect::gradient_ascent(x, y, {0, 0, 0}, {}, opts, truth);
    } else if (al_method == "grid+gradient") {
      res = ect::adaptive_grid_search(x, y, al_iters, opts, truth);
      ect::AlignResult ga =
          ect::gradient_ascent(x, y, res.angles, {}, opts, truth);
      const int base = static_cast<int>(res.trace.rows.size());
      for (auto row : ga.trace.rows) {
        row.iteration += base;
        res.trace.rows.push_back(row);
      }
      if (ga.objective > res.objective) {
        res.objective = ga.objective;
        res.angles = ga.angles;
      }
    } else {
      throw ect::ArgError("unknown method: " + al_method);
    }
    ect::write_trace_csv(al_out, res.trace);
    const ect::EulerAngles c = ect::canonical(res.angles);
    std::cout << "alpha " << fmt17(c.alpha) << "\nbeta " << fmt17(c.beta)
              << "\ngamma " << fmt17(c.gamma) << "\nobjective "
              << fmt17(res.objective) << '\n';
    if (truth)
      std::cout << "so3_distance "
                << fmt17(ect::so3_distance(*truth, ect::euler_to_matrix(c)))
                << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ect::ArgError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ect::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const ect::DegeneracyError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
