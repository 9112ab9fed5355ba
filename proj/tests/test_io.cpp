/*
 * test_io.cpp
 *
 * This source file is part of the magbloch project
 *
 * Copyright 2026 The magbloch authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <filesystem>

#include "fixtures.hpp"
#include "pipeline.hpp"

using namespace magbloch;
namespace fs = std::filesystem;

namespace {

std::string source_path(const std::string& rel) { return std::string(MAGBLOCH_SOURCE_DIR) + "/" + rel; }

std::string error_name(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.name();
  }
  return "";
}

fs::path scratch_dir(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("magbloch_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

bool same_series(const FourierScalar& a, const FourierScalar& b) {
  FourierScalar x = a, y = b;
  x.prune();
  y.prune();
  if (x.coefficients().size() != y.coefficients().size()) return false;
  for (const auto& [n, c] : x.coefficients())
    if (std::abs(c - y.at(n)) > 1e-15) return false;
  return true;
}

bool same_model(const LatticeModel& a, const LatticeModel& b) {
  if (a.lattice.dim != b.lattice.dim || (a.lattice.basis - b.lattice.basis).norm() > 0.0) return false;
  if (!same_series(a.potential, b.potential)) return false;
  for (int j = 0; j < a.lattice.dim; ++j)
    if (!same_series(a.vector_potential.comp[j], b.vector_potential.comp[j])) return false;
  return true;
}

ModelDocument document(const LatticeModel& m) {
  ModelDocument d;
  d.model = m;
  d.has_vector_potential = true;
  return d;
}

RunConfig config_for(const std::string& pipeline) {
  RunConfig c;
  c.model = "inline";
  c.pipeline = pipeline;
  return c;
}

const CheckEntry* find_check(const PipelineResult& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

const Artifact* find_artifact(const PipelineResult& r, const std::string& file) {
  for (const auto& a : r.artifacts)
    if (a.file == file) return &a;
  return nullptr;
}

}  // namespace

TEST_CASE("config: minimal document gets the documented defaults") {
  RunConfig c = parse_config(R"({"model": "m.json", "pipeline": "validate"})");
  CHECK(c.model == "m.json");
  CHECK(c.pipeline == "validate");
  CHECK(c.cutoff == 5);
  CHECK(c.grid.empty());
  CHECK(c.grid_for(2) == IVec{kDefaultGridSide, kDefaultGridSide});
  CHECK(c.rank == 1);
  CHECK(c.relevant().bands == std::vector<int>{0});
  CHECK(c.tol.gap == 1e-6);
  CHECK(c.tol.trs == 1e-6);
  CHECK(c.tol.flux == 1e-10);
  CHECK(c.tol.integer == 1e-6);
  CHECK(c.output == "out");
  CHECK(c.supercells == std::vector<int>{8, 16, 32, 64});
}

TEST_CASE("config: errors name the offending key") {
  CHECK(error_name([] { parse_config(R"({"model": "m", "pipeline": "bands", "grid": [31, 32]})"); }) == "grid[0]");
  CHECK(error_name([] { parse_config(R"({"model": "m", "pipeline": "bands", "grid": [32, 7]})"); }) == "grid[1]");
  CHECK(error_name([] { parse_config(R"({"pipeline": "bands"})"); }) == "model");
  CHECK(error_name([] { parse_config(R"({"model": "m"})"); }) == "pipeline");
  CHECK(error_name([] { parse_config(R"({"model": "m", "pipeline": "draw"})"); }) == "pipeline");
  CHECK(error_name([] { parse_config(R"({"model": "m", "pipeline": "bands", "cutoff": 0})"); }) == "cutoff");
  CHECK(error_name([] {
          parse_config(R"({"model": "m", "pipeline": "bands", "tolerances": {"gap": 0}})");
        }) == "tolerances.gap");
  CHECK(error_name([] {
          parse_config(R"({"model": "m", "pipeline": "bands", "tolerances": {"trs": -1e-3}})");
        }) == "tolerances.trs");
  CHECK(error_name([] { parse_config(R"({"model": "m", "pipeline": "bands", "bands": [1, 0]})"); }) == "bands[1]");
  CHECK(error_name([] { parse_config(R"({"model": "m", "pipeline": "bands", "gird": [4]})"); }) == "gird");
  CHECK(error_name([] { parse_config("{not json"); }) == "json");
  Error e(ErrorKind::Config, "x", "y");
  CHECK(e.exit_code() == 2);
}

TEST_CASE("config: write then parse is the identity") {
  RunConfig c = parse_config(R"({"model": "models/cos2d.json", "pipeline": "wannier", "cutoff": 7,
    "grid": [32, 16], "bands": [3, 1], "tolerances": {"gap": 0.5, "trs": 1e-7, "flux": 1e-9, "integer": 1e-5},
    "output": "o", "trials": [{"center": [0.5, 0.25], "width": 0.3}], "path": [[0, 0], [0.5, 0.5]],
    "path_samples": 9, "count": 4, "supercells": [4, 12], "resolution": 20, "write_projector": true})");
  CHECK(c.bands == std::vector<int>{0, 2});
  const std::string text = write_config(c);
  RunConfig back = parse_config(text);
  CHECK(write_config(back) == text);
  CHECK(back.model == c.model);
  CHECK(back.cutoff == 7);
  CHECK(back.grid == IVec{32, 16});
  CHECK(back.bands == c.bands);
  CHECK(back.tol.trs == 1e-7);
  CHECK(back.trials.size() == 1);
  CHECK(back.trials[0].center[1] == 0.25);
  CHECK(back.path == c.path);
  CHECK(back.write_projector);
  RunConfig minimal = parse_config(R"({"model": "m", "pipeline": "tpuv"})");
  CHECK(write_config(parse_config(write_config(minimal))) == write_config(minimal));
}

TEST_CASE("model files: shipped documents reproduce the fixtures") {
  CHECK(same_model(load_model(source_path("models/cos2d.json")).model, cos2d_model(10.0)));
  CHECK(same_model(load_model(source_path("models/pure_gauge.json")).model, gauge_model(10.0, 0.5)));
  CHECK(same_model(load_model(source_path("models/magnetic_sin.json")).model, magnetic_sin_model(10.0, 0.5)));
  CHECK(same_model(load_model(source_path("models/cos1d.json")).model, cos1d_model(4.0)));
  ModelDocument dimer = load_model(source_path("models/dimer2d.json"));
  CHECK(same_model(dimer.model, dimer2d_model(-20.0, -2.0, -40.0)));
  CHECK(dimer.trials.size() == 2);
  ModelDocument field = load_model(source_path("models/magnetic_sin_field.json"));
  CHECK(field.model.field.has_value());
  CHECK_FALSE(field.has_vector_potential);
  ModelDocument sky = load_model(source_path("models/skyrmion.json"));
  REQUIRE(sky.synthetic.has_value());
  CHECK(sky.dimension() == 2);
  CHECK(load_model(source_path("models/dirac4.json")).dimension() == 4);
}

TEST_CASE("model files: write then parse is the identity, errors name keys") {
  ModelDocument d = document(magnetic_sin_model(3.0, 0.7));
  GaussianTrial t;
  t.center = RVec::Constant(2, 0.5);
  d.trials = {t};
  const std::string text = write_model(d);
  ModelDocument back = parse_model(text);
  CHECK(same_model(back.model, d.model));
  CHECK(write_model(back) == text);
  CHECK(error_name([] { parse_model(R"({"dimension": 2, "potential": [{"n": [1], "re": 1}]})"); }) ==
        "potential[0].n");
  CHECK(error_name([] { parse_model(R"({"dimension": 5})"); }) == "dimension");
  CHECK(error_name([] { parse_model(R"({"basis": [[1]]})"); }) == "dimension");
  CHECK(error_name([] { parse_model(R"({"dimension": 2, "basis": [[1, 0], [2, 0]]})"); }) == "basis");
  CHECK(error_name([] { parse_model(R"({"dimension": 1, "vector_potential": []})"); }) == "vector_potential");
  CHECK(error_name([] { parse_model(R"({"synthetic": {"kind": "torus", "mass": 1}})"); }) == "synthetic.kind");
  CHECK(error_name([] { load_model("/nonexistent/model.json"); }) == "io");
}

TEST_CASE("csv writers: band table and symmetry rows") {
  BandTable t;
  t.dim = 2;
  t.count = 2;
  t.kappa.push_back(RVec::Constant(2, 1.0 / 3.0));
  RVec e(2);
  e << 0.1, 2.0;
  t.energies.push_back(e);
  CHECK(band_csv(t) == "k1,k2,E1,E2\n0.33333333333333331,0.33333333333333331,0.10000000000000001,2\n");
  std::vector<SymmetryRow> rows{{"trs-projector", 1e-9, 1e-6, true, 5}};
  CHECK(symmetry_csv(rows) == "check,residual,tolerance,pass,cutoff\ntrs-projector,1.0000000000000001e-09,"
                              "9.9999999999999995e-07,1,5\n");
}

TEST_CASE("chern report json has the documented shape") {
  ProjectorField f = skyrmion_field(12, 1.0);
  Json j = chern_report_json(chern_report(f, 1.0));
  REQUIRE(j["c1"].size() == 1);
  CHECK(j["c1"][0]["plane"] == Json::array({1, 2}));
  CHECK(j["c1"][0]["value"].get<long>() == -1);
  CHECK(j["c1"][0].contains("residual"));
  CHECK(j["c1"][0].contains("curvature_value"));
  CHECK(j["c2"].is_null());
  CHECK(j.contains("instanton_charge"));
  CHECK(j["verdict"] == "non-trivial");
  CHECK(j["sigma"].get<int>() == 1);
  CHECK(j["calibration"]["s"].get<int>() == kChern2Sign);
  CHECK(j["calibration"]["nu"].get<double>() == kChern2Nu);
}

TEST_CASE("binary containers round trip") {
  fs::path dir = scratch_dir("containers");
  ProjectorField f = build_projector_field(cos2d_model(5.0), PlaneWaveBasis(2, 2), KGrid(IVec{4, 6}),
                                           RelevantSet::lowest(1));
  const std::string pp = (dir / "p.bin").string();
  write_projector_container(pp, f);
  const std::string bytes = read_text_file(pp);
  // magic, d = 2 little-endian, N = (4, 6), M = 25, m = 1, cutoff 2
  CHECK(bytes.size() == 8 * 7 + f.grid.size() * 25 * 25 * 16);
  CHECK(bytes.substr(0, 8) == "MBPROJ01");
  CHECK(static_cast<unsigned char>(bytes[8]) == 2);
  CHECK(static_cast<unsigned char>(bytes[24]) == 6);
  ProjectorField g = read_projector_container(pp);
  CHECK(g.grid.dims == f.grid.dims);
  CHECK(g.m == 1);
  CHECK(g.embedding == EmbeddingKind::PlaneWave);
  double dist = 0.0;
  for (std::size_t i = 0; i < f.grid.size(); ++i)
    dist = std::max(dist, projector_distance(f.frames[i], g.frames[i]));
  CHECK(dist < 1e-12);

  WannierFunction w;
  w.cells = {3, 2};
  w.resolution = 2;
  w.cell_volume = 2.0;
  w.samples.resize(24);
  for (std::size_t i = 0; i < w.samples.size(); ++i) w.samples[i] = cplx(0.1 * i, -0.05 * i);
  const std::string wp = (dir / "w.bin").string();
  write_wannier_container(wp, w);
  WannierFunction v = read_wannier_container(wp);
  CHECK(v.cells == w.cells);
  CHECK(v.resolution == 2);
  CHECK(v.cell_volume == 2.0);
  CHECK(v.samples == w.samples);
  CHECK(v.mass.size() == 6);
  CHECK(error_name([&] { read_projector_container(wp); }) == "corrupt");
  const std::string csv = mass_csv(v, unit_lattice(2));
  CHECK(csv.rfind("g1,g2,norm,mass\n0,0,0,", 0) == 0);
  CHECK(csv.find("\n-1,-1,1.4142135623730951,") != std::string::npos);
}

TEST_CASE("pipeline validate: zero-flux field passes with all-zero fluxes") {
  RunConfig c = config_for("validate");
  PipelineResult r = run_pipeline(c, load_model(source_path("models/magnetic_sin_field.json")));
  CHECK(r.exit_code() == 0);
  CHECK_FALSE(r.error.has_value());
  for (const auto& row : r.values["validate"]["flux"]) CHECK(row["flux"].get<double>() == 0.0);
  const CheckEntry* consistency = find_check(r, "field-potential-consistency");
  REQUIRE(consistency != nullptr);
  CHECK(consistency->pass);
  REQUIRE(find_artifact(r, "flux.csv") != nullptr);
}

TEST_CASE("pipeline validate: nonzero flux is an assumption failure before any spectral work") {
  ModelDocument d = document(cos2d_model(1.0));
  FieldSpec B(2);
  B.upper_ref(0, 1).set({0, 0}, 0.3);
  d.model.field = B;
  d.has_vector_potential = false;
  PipelineResult r = run_pipeline(config_for("wannier"), d);
  REQUIRE(r.error.has_value());
  CHECK(r.error->stage == "validate");
  CHECK(r.error->name == "flux-violation");
  CHECK(r.exit_code() == 3);
  CHECK(find_artifact(r, "bands.csv") == nullptr);
}

TEST_CASE("pipeline chern: skyrmion synthetic input reports c1 = +-1 and a verdict") {
  RunConfig c = config_for("chern");
  c.grid = {24, 24};
  PipelineResult r = run_pipeline(c, load_model(source_path("models/skyrmion.json")));
  CHECK(r.exit_code() == 0);
  CHECK(std::abs(r.values["chern"]["c1"][0]["value"].get<long>()) == 1);
  CHECK(report_text(r).find("verdict_line = verdict: ") != std::string::npos);
  REQUIRE(find_artifact(r, "chern.json") != nullptr);
  c.pipeline = "bands";
  CHECK(run_pipeline(c, load_model(source_path("models/skyrmion.json"))).exit_code() == 2);
}

TEST_CASE("pipeline wannier: cos2d golden run produces every artifact") {
  RunConfig c = config_for("wannier");
  c.cutoff = 5;
  c.grid = {16, 16};
  PipelineResult r = run_pipeline(c, document(cos2d_model(10.0)));
  CHECK(r.exit_code() == 0);
  for (const char* f : {"flux.csv", "bands.csv", "wannier_1.bin", "masses_1.csv", "decay_1.svg"})
    CHECK(find_artifact(r, f) != nullptr);
  for (const char* n : {"gap", "gauge-trs", "gauge-periodicity", "gauge-range", "gauge-orthonormality",
                        "wannier1-translate-orthogonality", "wannier1-decay-rate"}) {
    const CheckEntry* e = find_check(r, n);
    REQUIRE(e != nullptr);
    CHECK(e->pass);
  }
  CHECK(r.values["wannier"]["decay"][0]["line"].get<std::string>().rfind("decay rate=", 0) == 0);
  // determinism: byte-identical artifacts and report
  PipelineResult again = run_pipeline(c, document(cos2d_model(10.0)));
  REQUIRE(again.artifacts.size() == r.artifacts.size());
  for (std::size_t i = 0; i < r.artifacts.size(); ++i) CHECK(again.artifacts[i].content == r.artifacts[i].content);
  CHECK(report_json(again).dump() == report_json(r).dump());
}

TEST_CASE("pipeline wannier: failures carry stage context and exit codes") {
  RunConfig c = config_for("wannier");
  c.cutoff = 3;
  c.grid = {8, 8};
  PipelineResult mag = run_pipeline(c, document(magnetic_sin_model(5.0, 0.5)));
  REQUIRE(mag.error.has_value());
  CHECK(mag.error->stage == "wannier");
  CHECK(mag.error->name == "trs-violated");
  CHECK(mag.exit_code() == 3);
  c.rank = 2;
  PipelineResult no_trials = run_pipeline(c, document(dimer2d_model(-20.0, -2.0, -40.0)));
  REQUIRE(no_trials.error.has_value());
  CHECK(no_trials.error->name == "trials");
  CHECK(no_trials.exit_code() == 2);
  c.rank = 1;
  c.grid = {8, 8, 8};
  CHECK(run_pipeline(c, document(cos2d_model(5.0))).error->name == "grid");
}

TEST_CASE("pipeline symmetry and tpuv: rows and estimates") {
  RunConfig c = config_for("symmetry");
  c.cutoff = 5;
  c.grid = {6, 6};
  PipelineResult s = run_pipeline(c, document(gauge_model(5.0, 0.5)));
  CHECK(s.exit_code() == 0);
  const Artifact* csv = find_artifact(s, "symmetry.csv");
  REQUIRE(csv != nullptr);
  CHECK(csv->content.rfind("check,residual,tolerance,pass,cutoff\n", 0) == 0);
  CHECK(csv->content.find("trs-projector,") != std::string::npos);
  CHECK(csv->content.find("translation-cocycle,") != std::string::npos);
  CHECK(s.values["symmetry"]["trs_projector"].size() == 3);

  RunConfig t = config_for("tpuv");
  t.grid = {32};
  t.supercells = {16, 32};
  PipelineResult p = run_pipeline(t, document(cos1d_model(4.0)));
  CHECK(p.exit_code() == 0);
  CHECK(std::abs(p.values["tpuv"]["projector"].get<double>() - 1.0) < 1e-10);
  CHECK(p.values["tpuv"]["supercell"].size() == 2);
}

TEST_CASE("report: empty result is valid and files parse back to the same values") {
  fs::path dir = scratch_dir("report");
  PipelineResult empty;
  write_report(empty, dir.string());
  Json j = Json::parse(read_text_file((dir / "report.json").string()));
  CHECK(j == report_json(empty));
  CHECK(j["checks"].empty());
  CHECK(j["status"] == "pass");
  CHECK(read_text_file((dir / "report.txt").string()) == flatten_json(j));

  RunConfig c = config_for("chern");
  c.grid = {12, 12};
  PipelineResult r = run_pipeline(c, load_model(source_path("models/skyrmion.json")));
  write_report(r, dir.string());
  Json back = Json::parse(read_text_file((dir / "report.json").string()));
  CHECK(back == report_json(r));
  CHECK(read_text_file((dir / "report.txt").string()) == flatten_json(back));
  CHECK(fs::exists(dir / "chern.json"));
  CHECK(error_name([&] { write_report(r, "/proc/magbloch/none"); }) == "io");
}
