/*
 * io.cpp
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

#include "io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

namespace magbloch {

namespace {

[[noreturn]] void config_error(const std::string& key, const std::string& what) {
  fail(ErrorKind::Config, key, key + ": " + what);
}

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::Config, "json", what + " is not valid JSON: " + e.what());
  }
}

void check_keys(const Json& obj, const std::string& prefix, std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : allowed) known = known || it.key() == k;
    if (!known) config_error(prefix + it.key(), "unknown key");
  }
}

const Json& require(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) config_error(path.empty() ? "document" : path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) config_error(path + key, "missing required key");
  return *it;
}

double as_real(const Json& v, const std::string& key) {
  if (!v.is_number()) config_error(key, "expected a number");
  return v.get<double>();
}

long as_integer(const Json& v, const std::string& key) {
  if (!v.is_number_integer()) config_error(key, "expected an integer");
  return v.get<long>();
}

const Json& as_array(const Json& v, const std::string& key) {
  if (!v.is_array()) config_error(key, "expected an array");
  return v;
}

std::string as_string(const Json& v, const std::string& key) {
  if (!v.is_string()) config_error(key, "expected a string");
  return v.get<std::string>();
}

std::string at_index(const std::string& key, std::size_t i) { return key + "[" + std::to_string(i) + "]"; }

IVec parse_index(const Json& v, int d, const std::string& key) {
  as_array(v, key);
  if (static_cast<int>(v.size()) != d) config_error(key, "expected " + std::to_string(d) + " integers");
  IVec n(d);
  for (int j = 0; j < d; ++j) n[j] = static_cast<int>(as_integer(v[j], at_index(key, j)));
  return n;
}

FourierScalar parse_series(const Json& v, int d, const std::string& key) {
  FourierScalar s(d);
  as_array(v, key);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string k = at_index(key, i);
    const Json& c = v[i];
    if (!c.is_object()) config_error(k, "expected {n, re, im}");
    check_keys(c, k + ".", {"n", "re", "im"});
    IVec n = parse_index(require(c, "n", k + "."), d, k + ".n");
    double re = c.contains("re") ? as_real(c["re"], k + ".re") : 0.0;
    double im = c.contains("im") ? as_real(c["im"], k + ".im") : 0.0;
    s.add(n, cplx(re, im));
  }
  return s;
}

Json write_series(const FourierScalar& s) {
  Json out = Json::array();
  for (const auto& [n, c] : s.coefficients()) out.push_back(Json{{"n", n}, {"re", c.real()}, {"im", c.imag()}});
  return out;
}

std::vector<GaussianTrial> parse_trials(const Json& v, int d, const std::string& key) {
  std::vector<GaussianTrial> trials;
  as_array(v, key);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string k = at_index(key, i);
    if (!v[i].is_object()) config_error(k, "expected {center, width}");
    check_keys(v[i], k + ".", {"center", "width"});
    const Json& c = as_array(require(v[i], "center", k + "."), k + ".center");
    if (d > 0 && static_cast<int>(c.size()) != d) config_error(k + ".center", "expected " + std::to_string(d) + " reals");
    GaussianTrial t;
    t.center = RVec(static_cast<Eigen::Index>(c.size()));
    for (std::size_t j = 0; j < c.size(); ++j) t.center[j] = as_real(c[j], at_index(k + ".center", j));
    if (v[i].contains("width")) t.width = as_real(v[i]["width"], k + ".width");
    if (!(t.width > 0.0)) config_error(k + ".width", "must be positive");
    trials.push_back(t);
  }
  return trials;
}

Json write_trials(const std::vector<GaussianTrial>& trials) {
  Json out = Json::array();
  for (const auto& t : trials)
    out.push_back(Json{{"center", std::vector<double>(t.center.data(), t.center.data() + t.center.size())},
                       {"width", t.width}});
  return out;
}

double positive(const Json& obj, const char* key, const std::string& path, double fallback) {
  if (!obj.contains(key)) return fallback;
  double v = as_real(obj[key], path + key);
  if (!(v > 0.0)) config_error(path + key, "must be positive");
  return v;
}

// Little-endian 64-bit serialization.
void put_u64(std::ostream& os, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 8);
}

void put_i64(std::ostream& os, std::int64_t v) { put_u64(os, static_cast<std::uint64_t>(v)); }

void put_f64(std::ostream& os, double v) { put_u64(os, std::bit_cast<std::uint64_t>(v)); }

std::uint64_t get_u64(std::istream& is, const std::string& path) {
  unsigned char b[8];
  if (!is.read(reinterpret_cast<char*>(b), 8)) fail(ErrorKind::Io, "truncated", path + ": truncated container");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

std::int64_t get_i64(std::istream& is, const std::string& path) {
  return static_cast<std::int64_t>(get_u64(is, path));
}

double get_f64(std::istream& is, const std::string& path) { return std::bit_cast<double>(get_u64(is, path)); }

constexpr std::uint64_t kProjectorMagic = 0x31304a4f5250424dULL;  // "MBPROJ01"
constexpr std::uint64_t kWannierMagic = 0x31304e4e4157424dULL;    // "MBWANN01"

std::ofstream open_out(const std::string& path, bool binary) {
  std::ofstream os(path, binary ? std::ios::binary | std::ios::trunc : std::ios::trunc);
  if (!os) fail(ErrorKind::Io, "io", "cannot open " + path + " for writing: " + std::strerror(errno));
  return os;
}

std::ifstream open_in(const std::string& path, bool binary) {
  std::ifstream is(path, binary ? std::ios::binary : std::ios::in);
  if (!is) fail(ErrorKind::Io, "io", "cannot open " + path + ": " + std::strerror(errno));
  return is;
}

std::int64_t checked_extent(std::int64_t v, std::int64_t lo, std::int64_t hi, const std::string& path) {
  if (v < lo || v > hi) fail(ErrorKind::Io, "corrupt", path + ": header value out of range");
  return v;
}

}  // namespace

int ModelDocument::dimension() const {
  if (synthetic) return synthetic->kind == "dirac4" ? 4 : 2;
  return model.lattice.dim;
}

ModelDocument parse_model(const std::string& text) {
  const Json doc = parse_json(text, "model");
  if (!doc.is_object()) config_error("document", "expected an object");
  check_keys(doc, "", {"name", "dimension", "basis", "potential", "vector_potential", "field", "trials", "synthetic"});
  ModelDocument out;
  if (doc.contains("name")) out.model.name = as_string(doc["name"], "name");
  if (doc.contains("synthetic")) {
    const Json& s = doc["synthetic"];
    if (!s.is_object()) config_error("synthetic", "expected {kind, mass}");
    check_keys(s, "synthetic.", {"kind", "mass"});
    SyntheticSpec synth;
    synth.kind = as_string(require(s, "kind", "synthetic."), "synthetic.kind");
    if (synth.kind != "skyrmion" && synth.kind != "dirac4")
      config_error("synthetic.kind", "expected skyrmion or dirac4");
    synth.mass = as_real(require(s, "mass", "synthetic."), "synthetic.mass");
    out.synthetic = synth;
    for (const char* k : {"basis", "potential", "vector_potential", "field"})
      if (doc.contains(k)) config_error(k, "not allowed with a synthetic model");
    const int d = out.dimension();
    if (doc.contains("dimension") && as_integer(doc["dimension"], "dimension") != d)
      config_error("dimension", "does not match the synthetic kind");
    out.model.lattice = unit_lattice(d);
    out.model.potential = FourierScalar(d);
    out.model.vector_potential = FourierVector(d);
    out.has_vector_potential = true;
    if (doc.contains("trials")) out.trials = parse_trials(doc["trials"], d, "trials");
    if (out.model.name.empty()) out.model.name = synth.kind;
    return out;
  }
  const long dl = as_integer(require(doc, "dimension", ""), "dimension");
  if (dl < 1 || dl > kMaxDim) config_error("dimension", "must be between 1 and 4");
  const int d = static_cast<int>(dl);
  RMat basis = RMat::Identity(d, d);
  if (doc.contains("basis")) {
    const Json& b = as_array(doc["basis"], "basis");
    if (static_cast<int>(b.size()) != d) config_error("basis", "expected " + std::to_string(d) + " vectors");
    for (int j = 0; j < d; ++j) {
      const std::string k = at_index("basis", j);
      as_array(b[j], k);
      if (static_cast<int>(b[j].size()) != d) config_error(k, "expected " + std::to_string(d) + " reals");
      for (int i = 0; i < d; ++i) basis(i, j) = as_real(b[j][i], at_index(k, i));
    }
    if (std::abs(basis.determinant()) < 1e-12) config_error("basis", "lattice vectors are linearly dependent");
  }
  out.model.lattice = make_lattice(basis);
  out.model.potential = doc.contains("potential") ? parse_series(doc["potential"], d, "potential") : FourierScalar(d);
  out.model.vector_potential = FourierVector(d);
  if (doc.contains("vector_potential")) {
    const Json& a = as_array(doc["vector_potential"], "vector_potential");
    if (static_cast<int>(a.size()) != d)
      config_error("vector_potential", "expected " + std::to_string(d) + " component arrays");
    for (int j = 0; j < d; ++j) out.model.vector_potential.comp[j] = parse_series(a[j], d, at_index("vector_potential", j));
    out.has_vector_potential = true;
  }
  if (doc.contains("field")) {
    const Json& f = as_array(doc["field"], "field");
    FieldSpec B(d);
    for (std::size_t i = 0; i < f.size(); ++i) {
      const std::string k = at_index("field", i);
      if (!f[i].is_object()) config_error(k, "expected {plane, coefficients}");
      check_keys(f[i], k + ".", {"plane", "coefficients"});
      IVec plane = parse_index(require(f[i], "plane", k + "."), 2, k + ".plane");
      if (plane[0] < 1 || plane[1] > d || plane[0] >= plane[1])
        config_error(k + ".plane", "expected 1 <= j < l <= dimension");
      for (int& a : plane) a -= 1;
      FourierScalar s = parse_series(require(f[i], "coefficients", k + "."), d, k + ".coefficients");
      for (const auto& [n, c] : s.coefficients()) B.upper_ref(plane[0], plane[1]).add(n, c);
    }
    out.model.field = B;
  } else if (!out.has_vector_potential) {
    out.has_vector_potential = true;  // A = 0
  }
  if (doc.contains("trials")) out.trials = parse_trials(doc["trials"], d, "trials");
  return out;
}

ModelDocument load_model(const std::string& path) { return parse_model(read_text_file(path)); }

std::string write_model(const ModelDocument& doc) {
  Json out = Json::object();
  if (!doc.model.name.empty()) out["name"] = doc.model.name;
  if (doc.synthetic) {
    out["synthetic"] = Json{{"kind", doc.synthetic->kind}, {"mass", doc.synthetic->mass}};
  } else {
    const int d = doc.model.lattice.dim;
    out["dimension"] = d;
    Json basis = Json::array();
    for (int j = 0; j < d; ++j) {
      Json col = Json::array();
      for (int i = 0; i < d; ++i) col.push_back(doc.model.lattice.basis(i, j));
      basis.push_back(col);
    }
    out["basis"] = basis;
    out["potential"] = write_series(doc.model.potential);
    if (doc.has_vector_potential && !(doc.model.field && doc.model.vector_potential.zero())) {
      Json a = Json::array();
      for (int j = 0; j < d; ++j) a.push_back(write_series(doc.model.vector_potential.comp[j]));
      out["vector_potential"] = a;
    }
    if (doc.model.field) {
      Json f = Json::array();
      for (int j = 0; j < d; ++j)
        for (int l = j + 1; l < d; ++l) {
          const FourierScalar& s = doc.model.field->upper[FieldSpec::slot(d, j, l)];
          if (!s.empty()) f.push_back(Json{{"plane", {j + 1, l + 1}}, {"coefficients", write_series(s)}});
        }
      out["field"] = f;
    }
  }
  if (!doc.trials.empty()) out["trials"] = write_trials(doc.trials);
  return out.dump(2) + "\n";
}

RelevantSet RunConfig::relevant() const {
  if (!bands.empty()) return RelevantSet{bands};
  return RelevantSet::lowest(rank);
}

IVec RunConfig::grid_for(int dim) const {
  if (grid.empty()) return IVec(dim, kDefaultGridSide);
  if (static_cast<int>(grid.size()) != dim)
    config_error("grid", "expected " + std::to_string(dim) + " sizes for a " + std::to_string(dim) + "-dimensional model");
  return grid;
}

RunConfig parse_config(const std::string& text) {
  const Json doc = parse_json(text, "configuration");
  if (!doc.is_object()) config_error("document", "expected an object");
  check_keys(doc, "", {"model", "pipeline", "cutoff", "grid", "bands", "tolerances", "output", "trials", "path",
                       "path_samples", "count", "supercells", "resolution", "write_projector"});
  RunConfig c;
  c.model = as_string(require(doc, "model", ""), "model");
  c.pipeline = as_string(require(doc, "pipeline", ""), "pipeline");
  const auto& names = pipeline_names();
  if (std::find(names.begin(), names.end(), c.pipeline) == names.end())
    config_error("pipeline", "unknown pipeline '" + c.pipeline + "'");
  if (doc.contains("cutoff")) {
    long n = as_integer(doc["cutoff"], "cutoff");
    if (n < 1) config_error("cutoff", "must be at least 1");
    c.cutoff = static_cast<int>(n);
  }
  if (doc.contains("grid")) {
    const Json& g = as_array(doc["grid"], "grid");
    if (g.empty() || g.size() > kMaxDim) config_error("grid", "expected 1 to 4 sizes");
    for (std::size_t i = 0; i < g.size(); ++i) {
      long n = as_integer(g[i], at_index("grid", i));
      if (n < 2 || n % 2 != 0) config_error(at_index("grid", i), "grid sizes must be even and at least 2");
      c.grid.push_back(static_cast<int>(n));
    }
  }
  if (doc.contains("bands")) {
    const Json& b = doc["bands"];
    if (b.is_array()) {
      if (b.empty()) config_error("bands", "expected at least one band");
      std::set<int> seen;
      for (std::size_t i = 0; i < b.size(); ++i) {
        long n = as_integer(b[i], at_index("bands", i));
        if (n < 1) config_error(at_index("bands", i), "band numbers start at 1");
        if (!seen.insert(static_cast<int>(n - 1)).second) config_error(at_index("bands", i), "duplicate band");
      }
      c.bands.assign(seen.begin(), seen.end());
      c.rank = static_cast<int>(c.bands.size());
    } else {
      long m = as_integer(b, "bands");
      if (m < 1) config_error("bands", "must be at least 1");
      c.rank = static_cast<int>(m);
    }
  }
  if (doc.contains("tolerances")) {
    const Json& t = doc["tolerances"];
    if (!t.is_object()) config_error("tolerances", "expected an object");
    check_keys(t, "tolerances.", {"gap", "trs", "flux", "integer"});
    c.tol.gap = positive(t, "gap", "tolerances.", c.tol.gap);
    c.tol.trs = positive(t, "trs", "tolerances.", c.tol.trs);
    c.tol.flux = positive(t, "flux", "tolerances.", c.tol.flux);
    c.tol.integer = positive(t, "integer", "tolerances.", c.tol.integer);
  }
  if (doc.contains("output")) c.output = as_string(doc["output"], "output");
  if (doc.contains("trials")) c.trials = parse_trials(doc["trials"], 0, "trials");
  if (doc.contains("path")) {
    const Json& p = as_array(doc["path"], "path");
    if (p.size() < 2) config_error("path", "expected at least two corners");
    for (std::size_t i = 0; i < p.size(); ++i) {
      const std::string k = at_index("path", i);
      as_array(p[i], k);
      std::vector<double> corner;
      for (std::size_t j = 0; j < p[i].size(); ++j) corner.push_back(as_real(p[i][j], at_index(k, j)));
      if (corner.empty() || (!c.path.empty() && corner.size() != c.path.front().size()))
        config_error(k, "corner dimension mismatch");
      c.path.push_back(corner);
    }
  }
  if (doc.contains("path_samples")) {
    long n = as_integer(doc["path_samples"], "path_samples");
    if (n < 1) config_error("path_samples", "must be at least 1");
    c.path_samples = static_cast<int>(n);
  }
  if (doc.contains("count")) {
    long n = as_integer(doc["count"], "count");
    if (n < 0) config_error("count", "must be non-negative");
    c.count = static_cast<int>(n);
  }
  if (doc.contains("supercells")) {
    const Json& s = as_array(doc["supercells"], "supercells");
    if (s.empty()) config_error("supercells", "expected at least one size");
    c.supercells.clear();
    for (std::size_t i = 0; i < s.size(); ++i) {
      long n = as_integer(s[i], at_index("supercells", i));
      if (n < 1 || (!c.supercells.empty() && n <= c.supercells.back()))
        config_error(at_index("supercells", i), "sizes must be positive and increasing");
      c.supercells.push_back(static_cast<int>(n));
    }
  }
  if (doc.contains("resolution")) {
    long n = as_integer(doc["resolution"], "resolution");
    if (n < 0) config_error("resolution", "must be non-negative");
    c.resolution = static_cast<int>(n);
  }
  if (doc.contains("write_projector")) {
    if (!doc["write_projector"].is_boolean()) config_error("write_projector", "expected a boolean");
    c.write_projector = doc["write_projector"].get<bool>();
  }
  return c;
}

RunConfig load_config(const std::string& path) { return parse_config(read_text_file(path)); }

std::string write_config(const RunConfig& c) {
  Json out = Json::object();
  out["model"] = c.model;
  out["pipeline"] = c.pipeline;
  out["cutoff"] = c.cutoff;
  if (!c.grid.empty()) out["grid"] = c.grid;
  if (c.bands.empty()) {
    out["bands"] = c.rank;
  } else {
    Json b = Json::array();
    for (int n : c.bands) b.push_back(n + 1);
    out["bands"] = b;
  }
  out["tolerances"] = Json{{"gap", c.tol.gap}, {"trs", c.tol.trs}, {"flux", c.tol.flux}, {"integer", c.tol.integer}};
  out["output"] = c.output;
  if (!c.trials.empty()) out["trials"] = write_trials(c.trials);
  if (!c.path.empty()) out["path"] = c.path;
  out["path_samples"] = c.path_samples;
  out["count"] = c.count;
  out["supercells"] = c.supercells;
  out["resolution"] = c.resolution;
  out["write_projector"] = c.write_projector;
  return out.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream is = open_in(path, true);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream os = open_out(path, true);
  os << text;
  if (!os.flush()) fail(ErrorKind::Io, "io", "write to " + path + " failed: " + std::strerror(errno));
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string band_csv(const BandTable& table) {
  std::string out;
  for (int j = 0; j < table.dim; ++j) out += (j ? ",k" : "k") + std::to_string(j + 1);
  for (int b = 0; b < table.count; ++b) out += ",E" + std::to_string(b + 1);
  out += "\n";
  for (std::size_t r = 0; r < table.kappa.size(); ++r) {
    for (int j = 0; j < table.dim; ++j) out += (j ? "," : "") + format_real(table.kappa[r][j]);
    for (int b = 0; b < table.count; ++b) out += "," + format_real(table.energies[r][b]);
    out += "\n";
  }
  return out;
}

std::string symmetry_csv(const std::vector<SymmetryRow>& rows) {
  std::string out = "check,residual,tolerance,pass,cutoff\n";
  for (const auto& r : rows)
    out += r.check + "," + format_real(r.residual) + "," + format_real(r.tolerance) + "," + (r.pass ? "1" : "0") +
           "," + std::to_string(r.cutoff) + "\n";
  return out;
}

Json chern_report_json(const ChernReport& report) {
  Json c1 = Json::array();
  for (std::size_t i = 0; i < report.c1.size(); ++i) {
    const auto& p = report.c1[i];
    Json e{{"plane", {p.plane[0] + 1, p.plane[1] + 1}}, {"value", p.value}, {"residual", p.residual}};
    e["curvature_value"] = i < report.c1_curvature.size() ? Json(report.c1_curvature[i].value) : Json(nullptr);
    c1.push_back(e);
  }
  Json out = Json::object();
  out["c1"] = c1;
  if (report.c2) {
    Json c2{{"value", report.c2->value}, {"residual", report.c2->residual}, {"raw", report.c2->raw}};
    c2["curvature_value"] = report.c2_curvature ? Json(report.c2_curvature->value) : Json(nullptr);
    out["c2"] = c2;
  } else {
    out["c2"] = nullptr;
  }
  out["instanton_charge"] = report.dim == 4 ? Json(report.instanton_charge) : Json(nullptr);
  out["verdict"] = verdict_name(report.verdict.verdict);
  out["sigma"] = report.verdict.sigma;
  out["calibration"] = Json{{"s", report.calibration_sign}, {"nu", report.calibration_nu}};
  return out;
}

std::string projector_container(const ProjectorField& field) {
  std::ostringstream os;
  const int d = field.dim();
  put_u64(os, kProjectorMagic);
  put_i64(os, d);
  for (int j = 0; j < d; ++j) put_i64(os, field.grid.dims[j]);
  put_i64(os, field.M);
  put_i64(os, field.m);
  put_i64(os, field.embedding == EmbeddingKind::PlaneWave ? field.basis.cutoff() : -1);
  for (std::size_t f = 0; f < field.grid.size(); ++f) {
    CMat P = field.projector(f);
    for (int r = 0; r < field.M; ++r)
      for (int c = 0; c < field.M; ++c) {
        put_f64(os, P(r, c).real());
        put_f64(os, P(r, c).imag());
      }
  }
  return os.str();
}

void write_projector_container(const std::string& path, const ProjectorField& field) {
  write_text_file(path, projector_container(field));
}

ProjectorField read_projector_container(const std::string& path) {
  std::ifstream is = open_in(path, true);
  if (get_u64(is, path) != kProjectorMagic) fail(ErrorKind::Io, "corrupt", path + ": not a projector container");
  ProjectorField field;
  const int d = static_cast<int>(checked_extent(get_i64(is, path), 1, kMaxDim, path));
  IVec dims(d);
  for (int j = 0; j < d; ++j) dims[j] = static_cast<int>(checked_extent(get_i64(is, path), 1, 1 << 16, path));
  field.grid = KGrid(dims);
  field.M = static_cast<int>(checked_extent(get_i64(is, path), 1, 1 << 16, path));
  field.m = static_cast<int>(checked_extent(get_i64(is, path), 0, field.M, path));
  const std::int64_t cutoff = get_i64(is, path);
  if (cutoff >= 0) {
    field.embedding = EmbeddingKind::PlaneWave;
    field.basis = PlaneWaveBasis(d, static_cast<int>(checked_extent(cutoff, 0, 64, path)));
    if (field.basis.size() != field.M) fail(ErrorKind::Io, "corrupt", path + ": cutoff does not match M");
  }
  field.frames.resize(field.grid.size());
  CMat P(field.M, field.M);
  for (std::size_t f = 0; f < field.grid.size(); ++f) {
    for (int r = 0; r < field.M; ++r)
      for (int c = 0; c < field.M; ++c) {
        double re = get_f64(is, path);
        double im = get_f64(is, path);
        P(r, c) = cplx(re, im);
      }
    // range of P: eigenvectors of the m largest eigenvalues
    Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (P + P.adjoint()));
    field.frames[f] = es.eigenvectors().rightCols(field.m);
  }
  return field;
}

std::string wannier_container(const WannierFunction& w) {
  std::ostringstream os;
  put_u64(os, kWannierMagic);
  put_i64(os, static_cast<std::int64_t>(w.cells.size()));
  for (int c : w.cells) put_i64(os, c);
  put_i64(os, w.resolution);
  put_f64(os, w.cell_volume);
  for (const cplx& s : w.samples) {
    put_f64(os, s.real());
    put_f64(os, s.imag());
  }
  return os.str();
}

void write_wannier_container(const std::string& path, const WannierFunction& w) {
  write_text_file(path, wannier_container(w));
}

WannierFunction read_wannier_container(const std::string& path) {
  std::ifstream is = open_in(path, true);
  if (get_u64(is, path) != kWannierMagic) fail(ErrorKind::Io, "corrupt", path + ": not a Wannier container");
  WannierFunction w;
  const int d = static_cast<int>(checked_extent(get_i64(is, path), 1, kMaxDim, path));
  w.cells.resize(d);
  for (int j = 0; j < d; ++j) w.cells[j] = static_cast<int>(checked_extent(get_i64(is, path), 1, 1 << 12, path));
  w.resolution = static_cast<int>(checked_extent(get_i64(is, path), 1, 1 << 12, path));
  w.cell_volume = get_f64(is, path);
  std::size_t total = 1;
  for (int j = 0; j < d; ++j) total *= static_cast<std::size_t>(w.cells[j]) * w.resolution;
  w.samples.resize(total);
  for (auto& s : w.samples) {
    double re = get_f64(is, path);
    double im = get_f64(is, path);
    s = cplx(re, im);
  }
  // per-cell masses and norm from the samples
  const double dv = w.cell_volume / std::pow(static_cast<double>(w.resolution), d);
  IVec dims(d);
  for (int j = 0; j < d; ++j) dims[j] = w.cells[j] * w.resolution;
  w.mass.assign(grid_volume(w.cells), 0.0);
  IVec cell(d);
  double total_mass = 0.0;
  for (std::size_t f = 0; f < total; ++f) {
    IVec x = unflat_index(f, dims);
    for (int j = 0; j < d; ++j) cell[j] = x[j] / w.resolution;
    double p = std::norm(w.samples[f]) * dv;
    w.mass[flat_index(cell, w.cells)] += p;
    total_mass += p;
  }
  for (double& m : w.mass) m = std::sqrt(m);
  w.norm = std::sqrt(total_mass);
  return w;
}

std::string mass_csv(const WannierFunction& w, const Lattice& lat) {
  const int d = static_cast<int>(w.cells.size());
  std::string out;
  for (int j = 0; j < d; ++j) out += (j ? ",g" : "g") + std::to_string(j + 1);
  out += ",norm,mass\n";
  RVec g(d);
  for (std::size_t f = 0; f < w.mass.size(); ++f) {
    IVec c = unflat_index(f, w.cells);
    for (int j = 0; j < d; ++j) {
      int v = c[j] >= (w.cells[j] + 1) / 2 ? c[j] - w.cells[j] : c[j];
      g[j] = v;
      out += (j ? "," : "") + std::to_string(v);
    }
    out += "," + format_real(lat.point(g).norm()) + "," + format_real(w.mass[f]) + "\n";
  }
  return out;
}

std::string decay_line(const DecayFit& fit) {
  return "decay rate=" + format_real(fit.rate) + " r2=" + format_real(fit.r2) + " shells=" +
         std::to_string(fit.shells) + " rmin=" + format_real(fit.rmin) + " rmax=" + format_real(fit.rmax) +
         " capped=" + (fit.capped ? "1" : "0");
}

std::string svg_plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                     const std::vector<PlotSeries>& series, bool log_y) {
  constexpr double W = 640, H = 420, L = 70, R = 20, T = 40, B = 50;
  auto yv = [&](double y) { return log_y ? std::log10(y) : y; };
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (log_y && !(s.y[i] > 0.0)) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, yv(s.y[i]));
      y1 = std::max(y1, yv(s.y[i]));
    }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 - x0 < 1e-300) x1 = x0 + 1;
  if (y1 - y0 < 1e-300) y1 = y0 + 1;
  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return H - B - (yv(y) - y0) / (y1 - y0) * (H - T - B); };
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return std::string(buf);
  };
  auto esc = [](const std::string& s) {
    std::string o;
    for (char ch : s) o += ch == '<' ? "&lt;" : ch == '>' ? "&gt;" : ch == '&' ? "&amp;" : std::string(1, ch);
    return o;
  };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};
  std::string o = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"420\" font-family=\"sans-serif\" "
                  "font-size=\"12\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o += "<text x=\"" + num(W / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" + esc(title) + "</text>\n";
  o += "<rect x=\"" + num(L) + "\" y=\"" + num(T) + "\" width=\"" + num(W - L - R) + "\" height=\"" + num(H - T - B) +
       "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    double xv = x0 + (x1 - x0) * i / 4, yt = y0 + (y1 - y0) * i / 4;
    double X = L + (W - L - R) * i / 4, Y = H - B - (H - T - B) * i / 4;
    o += "<text x=\"" + num(X) + "\" y=\"" + num(H - B + 16) + "\" text-anchor=\"middle\">" + num(xv) + "</text>\n";
    o += "<text x=\"" + num(L - 6) + "\" y=\"" + num(Y + 4) + "\" text-anchor=\"end\">" +
         (log_y ? "1e" + num(yt) : num(yt)) + "</text>\n";
  }
  o += "<text x=\"" + num(W / 2) + "\" y=\"" + num(H - 12) + "\" text-anchor=\"middle\">" + esc(xlabel) + "</text>\n";
  o += "<text x=\"16\" y=\"" + num(H / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " + num(H / 2) +
       ")\">" + esc(ylabel) + "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const std::string color = colors[k % 6];
    std::string pts;
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (log_y && !(s.y[i] > 0.0)) continue;
      if (s.markers)
        o += "<circle cx=\"" + num(px(s.x[i])) + "\" cy=\"" + num(py(s.y[i])) + "\" r=\"2.5\" fill=\"" + color + "\"/>\n";
      else
        pts += num(px(s.x[i])) + "," + num(py(s.y[i])) + " ";
    }
    if (!pts.empty()) o += "<polyline fill=\"none\" stroke=\"" + color + "\" points=\"" + pts + "\"/>\n";
    if (!s.label.empty())
      o += "<text x=\"" + num(W - R - 6) + "\" y=\"" + num(T + 16 + 14 * k) + "\" text-anchor=\"end\" fill=\"" + color +
           "\">" + esc(s.label) + "</text>\n";
  }
  o += "</svg>\n";
  return o;
}

}  // namespace magbloch
