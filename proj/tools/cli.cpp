#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <set>
#include <sstream>

#include "fewnomial/bounds.hpp"
#include "fewnomial/chambers.hpp"
#include "fewnomial/contour.hpp"
#include "fewnomial/errors.hpp"
#include "fewnomial/gale.hpp"
#include "fewnomial/io.hpp"
#include "fewnomial/spectrum.hpp"
#include "fewnomial/zeroset.hpp"

#ifndef FEWNOMIAL_DATA_DIR
#define FEWNOMIAL_DATA_DIR "data"
#endif

namespace fewnomial::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct Global {
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  bool quiet = false;
  bool json_out = false;
  std::string data_dir = FEWNOMIAL_DATA_DIR;
};

json vec_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json box_json(const Box& b) { return json::array({b.xmin, b.xmax, b.ymin, b.ymax}); }

json chambers_json(const ChamberMap& map) {
  json out;
  json list = json::array();
  for (const Chamber& c : map.chambers) list.push_back({{"id", c.id}, {"inner", c.inner}, {"cell_count", c.cell_count}});
  out["chambers"] = list;
  out["box"] = box_json(map.box);
  out["resolution"] = map.resolution;
  return out;
}

json bound_json(const BoundReport& r) {
  json out{{"n", r.n}, {"k", r.k}, {"theorem1", r.theorem1}, {"outer", r.outer}};
  out["theorem1_k3"] = r.theorem1_k3 ? json(*r.theorem1_k3) : json(nullptr);
  out["simplicial_refined"] = r.simplicial_refined ? json(*r.simplicial_refined) : json(nullptr);
  out["general_refined"] = r.general_refined ? json(*r.general_refined) : json(nullptr);
  out["t_bound"] = r.t_bound ? json(*r.t_bound) : json(nullptr);
  out["flags"] = r.flags;
  return out;
}

json count_json(const ComponentCount& c) {
  json out{{"count", c.count},
           {"stabilized", c.stabilized},
           {"box_radius", c.box_radius},
           {"boundary_touching", c.boundary_touching},
           {"resolution", c.resolution},
           {"history", c.history}};
  if (c.sign_changes) out["sign_changes"] = *c.sign_changes;
  if (!c.zeros.empty()) out["zeros"] = c.zeros;
  return out;
}

json sweep_json(const LineSweepReport& r) {
  json lines = json::array();
  for (const LineResult& l : r.lines) {
    json counts = json::object();
    for (const auto& [sigma, n] : l.counts) counts[sigma] = n;
    lines.push_back({{"seed", l.seed}, {"redraws", l.redraws}, {"counts", counts}, {"max_count", l.max_count},
                     {"pass", l.pass}});
  }
  return {{"bound", r.bound}, {"completed", r.completed}, {"pass", r.pass}, {"log", r.log}, {"lines", lines}};
}

json path_json(const PathResult& r) {
  json steps = json::array();
  for (const PathStep& s : r.steps) {
    steps.push_back({{"t", s.t}, {"point", vec_json(s.point)}, {"count", s.count.count},
                     {"stabilized", s.count.stabilized}, {"near_contour", s.near_contour}});
  }
  json crossings = json::array();
  for (const PathCrossing& c : r.crossings) {
    crossings.push_back({{"t", c.t}, {"point", vec_json(c.point)}, {"source", c.source},
                         {"cloud_distance", c.cloud_distance}});
  }
  return {{"sigma", r.sigma.str()}, {"steps", steps}, {"crossings", crossings}, {"violations", r.violations},
          {"pass", r.pass}};
}

json census_json(const CensusResult& r) {
  json rows = json::array();
  for (const CensusRow& row : r.rows) {
    rows.push_back({{"sigma", row.sigma}, {"chamber", row.chamber}, {"inner", row.inner},
                    {"point", vec_json(row.point)}, {"c", vec_json(row.c)}, {"components", row.components},
                    {"stabilized", row.stabilized}});
  }
  return {{"theorem1", r.theorem1},
          {"outer_bound", r.outer_bound},
          {"max_components", r.max_components},
          {"max_outer_components", r.max_outer_components},
          {"violations", r.violations},
          {"pass", r.pass},
          {"rows", rows}};
}

std::string dump(json j) {
  json wrapped;
  wrapped["schema_version"] = "1";
  for (auto& [key, value] : j.items()) wrapped[key] = value;
  return wrapped.dump(2) + "\n";
}

class Runner {
 public:
  Runner(const Global& g, std::ostream& out, std::ostream& err) : g_(g), out_(out), err_(err) {}

  fs::path output_path(const std::string& name) const {
    const fs::path p(name);
    if (p.is_absolute()) return p;
    return fs::path(g_.out_dir) / p;
  }

  void write(const std::string& name, const std::string& contents) const {
    const fs::path p = output_path(name);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    write_file(p.string(), contents);
  }

  void say(const std::string& line) const {
    if (!g_.quiet) out_ << line << "\n";
  }

  void emit_json(const json& j) const { out_ << dump(j); }
  void print(const std::string& text) const { out_ << text; }

  const Global& global() const { return g_; }
  std::ostream& err() const { return err_; }

 private:
  const Global& g_;
  std::ostream& out_;
  std::ostream& err_;
};

std::optional<SignVector> parse_sigma(const std::string& text) {
  if (text == "all") return std::nullopt;
  return SignVector::parse(text);
}

SignReading parse_reading(const std::string& text) {
  if (text == "linear") return SignReading::linear_forms;
  if (text == "log") return SignReading::log_magnitudes;
  throw InvalidArgument("--reading must be 'linear' or 'log'");
}

FiberSigns parse_fiber_signs(const std::string& text) {
  if (text == "projected") return FiberSigns::projected;
  if (text == "unrestricted") return FiberSigns::unrestricted;
  throw InvalidArgument("--fiber-signs must be 'projected' or 'unrestricted'");
}

std::string fixed(double v, int digits = 6) {
  std::ostringstream s;
  s << std::setprecision(digits) << v;
  return s.str();
}

// ---------------------------------------------------------------------------

struct ContourArgs {
  std::string spectrum, sigma = "all", box, out, reading = "linear", fiber_signs = "projected";
  int resolution = 10000;
  bool completed = false;
};

int cmd_contour(const Runner& r, const ContourArgs& a) {
  const Spectrum spec = read_spectrum(a.spectrum);
  const NullBasis basis = null_basis(spec);
  SweepOptions opts;
  opts.resolution = a.resolution;
  opts.seed = r.global().seed;
  opts.reading = parse_reading(a.reading);
  opts.fiber_signs = parse_fiber_signs(a.fiber_signs);
  const auto sigma = parse_sigma(a.sigma);
  ContourCloud cloud =
      a.completed ? completed_contour(spec, basis, sigma, opts) : sample_contour(spec, basis, sigma, opts);
  if (!a.box.empty()) {
    const Box box = Box::parse(a.box);
    std::vector<ContourSample> kept;
    for (const ContourSample& s : cloud.samples) {
      if (s.point.size() >= 2 && box.contains(s.point(0), s.point(1))) kept.push_back(s);
    }
    cloud.samples = std::move(kept);
    cloud.branches.clear();
  }
  if (a.out.empty()) {
    r.print(cloud_csv(cloud));
    return kOk;
  }
  r.write(a.out, cloud_csv(cloud));
  const auto classes = cloud.main_classes();
  if (r.global().json_out) {
    r.emit_json({{"samples", cloud.samples.size()},
                 {"main", cloud.main_count()},
                 {"face", cloud.face_count()},
                 {"classes", std::vector<std::string>(classes.begin(), classes.end())},
                 {"out", r.output_path(a.out).string()}});
  } else {
    r.say(std::to_string(cloud.samples.size()) + " samples (" + std::to_string(cloud.main_count()) + " main, " +
          std::to_string(cloud.face_count()) + " fiber) in " + std::to_string(classes.size()) + " classes -> " +
          r.output_path(a.out).string());
  }
  return kOk;
}

struct ChambersArgs {
  std::string spectrum, sigma, box = "-4,4,-4,4", out, fiber_signs = "projected";
  int resolution = 1024;
  bool main_only = false;
  bool stable = false;
};

int cmd_chambers(const Runner& r, const ChambersArgs& a) {
  const Spectrum spec = read_spectrum(a.spectrum);
  const NullBasis basis = null_basis(spec);
  SweepOptions opts;
  opts.seed = r.global().seed;
  opts.fiber_signs = parse_fiber_signs(a.fiber_signs);
  const auto sigma = parse_sigma(a.sigma);
  const ContourCloud cloud =
      a.main_only ? sample_contour(spec, basis, sigma, opts) : completed_contour(spec, basis, sigma, opts);
  const Box box = Box::parse(a.box);
  json report;
  report["sigma"] = a.sigma;
  int code = kOk;
  if (a.stable) {
    const StableChambers st = stable_chambers(cloud, box, a.resolution);
    report.update(chambers_json(st.map));
    report["counts"] = st.counts;
    report["inner_counts"] = st.inner_counts;
    report["stable"] = st.stable;
    if (!st.stable) code = kAssertionFailed;
  } else {
    report.update(chambers_json(chambers(cloud, box, a.resolution)));
  }
  if (!a.out.empty()) r.write(a.out, dump(report));
  if (r.global().json_out || a.out.empty()) {
    r.emit_json(report);
  } else {
    int inner = 0;
    for (const auto& c : report["chambers"]) inner += c["inner"].get<bool>();
    r.say(a.sigma + ": " + std::to_string(report["chambers"].size()) + " chambers, " + std::to_string(inner) +
          " inner");
  }
  if (code != kOk) r.err() << "chamber counts differ across resolutions\n";
  return code;
}

struct GaleArgs {
  std::string spectrum, report, box = "-4,4,-4,4";
  int lines = 100;
  int resolution = 4000;
  bool completed = false;
};

int cmd_gale(const Runner& r, const GaleArgs& a) {
  const Spectrum spec = read_spectrum(a.spectrum);
  const NullBasis basis = null_basis(spec);
  const LineSweepReport rep = sweep_lines(spec, basis, realized_classes(basis), a.lines, r.global().seed,
                                          a.completed, Box::parse(a.box), a.resolution);
  const json j = sweep_json(rep);
  if (!a.report.empty()) r.write(a.report, dump(j));
  int worst = 0;
  for (const LineResult& l : rep.lines) worst = std::max(worst, l.max_count);
  if (r.global().json_out) {
    r.emit_json({{"bound", rep.bound}, {"max_count", worst}, {"lines", rep.lines.size()}, {"pass", rep.pass}});
  } else {
    r.say(std::to_string(rep.lines.size()) + " lines, max count " + std::to_string(worst) + ", bound " +
          fixed(rep.bound) + (rep.pass ? ": pass" : ": FAIL"));
  }
  for (const std::string& note : rep.log) r.err() << note << "\n";
  return rep.pass ? kOk : kAssertionFailed;
}

struct BoundsArgs {
  int n = 2, k = 3;
  std::vector<int> table;
  std::string report;
};

int cmd_bounds(const Runner& r, const BoundsArgs& a) {
  std::vector<BoundReport> rows;
  if (!a.table.empty()) {
    rows = bound_table(a.table.at(0), a.table.at(1));
  } else {
    rows.push_back(bound_report(a.n, a.k));
  }
  json list = json::array();
  for (const BoundReport& b : rows) list.push_back(bound_json(b));
  const json j{{"bounds", list}};
  if (!a.report.empty()) r.write(a.report, dump(j));
  if (r.global().json_out) {
    r.emit_json(j);
    return kOk;
  }
  auto opt = [](const std::optional<double>& v) { return v ? fixed(*v, 10) : std::string("-"); };
  r.say("| n | k | theorem1 | outer | simplicial | general | T(n,k) | flags |");
  r.say("|---|---|---|---|---|---|---|---|");
  for (const BoundReport& b : rows) {
    std::string flags;
    for (const std::string& f : b.flags) flags += (flags.empty() ? "" : "; ") + f;
    r.say("| " + std::to_string(b.n) + " | " + std::to_string(b.k) + " | " + fixed(b.theorem1, 10) + " | " +
          fixed(b.outer, 10) + " | " + opt(b.simplicial_refined) + " | " + opt(b.general_refined) + " | " +
          opt(b.t_bound) + " | " + flags + " |");
  }
  return kOk;
}

struct ComponentsArgs {
  std::string spectrum, coeffs;
  int resolution = 512;
  double r0 = 4.0;
};

int cmd_components(const Runner& r, const ComponentsArgs& a) {
  const Spectrum spec = read_spectrum(a.spectrum);
  const ExpSum g(spec, read_coefficients(a.coeffs, spec.terms()));
  ComponentCount c;
  if (spec.n() == 1) {
    c = count_components_1d(g);
  } else {
    Count2dOptions opts;
    opts.resolution = a.resolution;
    opts.r0 = a.r0;
    c = count_components_2d(g, opts);
  }
  if (r.global().json_out) {
    r.emit_json(count_json(c));
  } else {
    r.say("N = " + std::to_string(c.count) + (c.stabilized ? "" : " (not stabilized)") + ", radius " +
          fixed(c.box_radius));
  }
  if (!c.stabilized) {
    r.err() << "component count did not stabilize\n";
    return kAssertionFailed;
  }
  return kOk;
}

struct CensusArgs {
  std::string spectrum, out, box = "-4,4,-4,4";
  int samples = 4;
  int total = 0;
  int resolution = 1024;
};

int cmd_census(const Runner& r, const CensusArgs& a) {
  const Spectrum spec = read_spectrum(a.spectrum);
  const NullBasis basis = null_basis(spec);
  CensusOptions opts;
  opts.box = Box::parse(a.box);
  opts.chamber_resolution = a.resolution;
  opts.total_samples = a.total;
  opts.strict = false;
  opts.sweep.seed = r.global().seed;
  const CensusResult res = chamber_census(spec, basis, a.samples, r.global().seed, opts);
  const json j = census_json(res);
  if (!a.out.empty()) r.write(a.out, dump(j));
  if (r.global().json_out) {
    r.emit_json({{"rows", res.rows.size()},
                 {"max_components", res.max_components},
                 {"theorem1", res.theorem1},
                 {"pass", res.pass}});
  } else {
    r.say(std::to_string(res.rows.size()) + " samples, max N " + std::to_string(res.max_components) + " (bound " +
          fixed(res.theorem1) + "), max outer N " + std::to_string(res.max_outer_components) + " (bound " +
          fixed(res.outer_bound) + ")" + (res.pass ? ": pass" : ": FAIL"));
  }
  for (const std::string& v : res.violations) r.err() << v << "\n";
  return res.pass ? kOk : kAssertionFailed;
}

struct PathArgs {
  std::string spectrum, from, to, out, box = "-4,4,-4,4";
  int steps = 40;
};

int cmd_path(const Runner& r, const PathArgs& a) {
  const Spectrum spec = read_spectrum(a.spectrum);
  const NullBasis basis = null_basis(spec);
  PathOptions opts;
  opts.box = Box::parse(a.box);
  opts.sweep.seed = r.global().seed;
  const PathResult res = path_experiment(spec, basis, read_coefficients(a.from, spec.terms()),
                                         read_coefficients(a.to, spec.terms()), a.steps, opts);
  const json j = path_json(res);
  if (!a.out.empty()) r.write(a.out, dump(j));
  if (r.global().json_out) {
    r.emit_json(j);
  } else {
    std::string counts;
    for (const PathStep& s : res.steps) counts += (counts.empty() ? "" : " ") + std::to_string(s.count.count);
    r.say("N along path: " + counts);
    r.say(std::to_string(res.crossings.size()) + " contour crossings" + (res.pass ? ": pass" : ": FAIL"));
  }
  for (const std::string& v : res.violations) r.err() << v << "\n";
  return res.pass ? kOk : kAssertionFailed;
}

// ---------------------------------------------------------------------------
// Worked examples.

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

class Reproduction {
 public:
  Reproduction(const Runner& r, std::string name) : r_(r), name_(std::move(name)) {}

  void check(const std::string& what, bool ok, const std::string& detail) {
    checks_.push_back({what, ok, detail});
    r_.say(std::string(ok ? "PASS " : "FAIL ") + what + ": " + detail);
  }

  void output(const std::string& file, const std::string& contents) {
    const std::string rel = name_ + "/" + file;
    r_.write(rel, contents);
    outputs_.push_back(rel);
  }

  void param(const std::string& key, json value) { params_[key] = std::move(value); }

  int finish(const std::string& spectrum_file) {
    bool pass = true;
    json checks = json::array();
    for (const Check& c : checks_) {
      pass = pass && c.pass;
      checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    }
    outputs_.push_back(name_ + "/manifest.json");
    const json manifest{{"command", "reproduce " + name_},
                        {"spectrum", spectrum_file},
                        {"seed", r_.global().seed},
                        {"parameters", params_},
                        {"outputs", outputs_},
                        {"assertions", checks},
                        {"pass", pass}};
    r_.write(name_ + "/manifest.json", dump(manifest));
    if (r_.global().json_out) r_.emit_json(manifest);
    return pass ? kOk : kAssertionFailed;
  }

 private:
  const Runner& r_;
  std::string name_;
  std::vector<Check> checks_;
  std::vector<std::string> outputs_;
  json params_ = json::object();
};

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (int x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

int reproduce_pentagon(const Runner& r) {
  Reproduction rep(r, "pentagon");
  const std::string file = (fs::path(r.global().data_dir) / "pentagon.txt").string();
  const Spectrum spec = read_spectrum(file);
  const NullBasis basis = null_basis(spec);
  SweepOptions opts;
  opts.seed = r.global().seed;
  const Box box = Box::square(4.0);
  const int resolution = 1024;
  rep.param("sweep_resolution", opts.resolution);
  rep.param("box", box_json(box));
  rep.param("chamber_resolution", resolution);

  const ContourCloud all = sample_contour(spec, basis, std::nullopt, opts);
  const std::set<std::string> nonempty = all.main_classes();
  rep.check("nonempty sign classes", nonempty.size() == 5 && SignVector::all(5).size() == 16,
            std::to_string(nonempty.size()) + " of " + std::to_string(SignVector::all(5).size()) + " classes nonempty");
  rep.output("contour_all.csv", cloud_csv(all));

  // Reference order of the five classes and their expected chamber counts.
  const std::vector<std::string> order = {"++--+", "+---+", "+--++", "+--+-", "+-++-"};
  const std::vector<int> expected = {2, 2, 3, 2, 2};
  std::vector<int> counts;
  std::vector<std::string> with_inner;
  bool stable = true;
  json maps = json::array();
  for (const std::string& label : order) {
    const SignVector sigma = SignVector::parse(label);
    const ContourCloud cloud = completed_contour(spec, basis, sigma, opts);
    rep.output("contour_" + label + ".csv", cloud_csv(cloud));
    const StableChambers st = stable_chambers(cloud, box, resolution);
    stable = stable && st.stable;
    counts.push_back(st.counts.front());
    if (st.map.inner_count() > 0) with_inner.push_back(label);
    json entry = chambers_json(st.map);
    entry["sigma"] = label;
    entry["counts"] = st.counts;
    entry["stable"] = st.stable;
    maps.push_back(entry);
  }
  rep.output("chambers.json", dump({{"classes", maps}}));
  rep.check("chamber counts", counts == expected && stable,
            join_ints(counts) + (stable ? " (stable over two doublings)" : " (unstable)"));
  rep.check("inner chambers", with_inner == std::vector<std::string>{"+--++"},
            with_inner.empty() ? "none" : "only " + with_inner.front());

  const LineSweepReport sweep = sweep_lines(spec, basis, realized_classes(basis), 100, r.global().seed, false, box);
  int worst = 0;
  for (const LineResult& l : sweep.lines) worst = std::max(worst, l.max_count);
  rep.output("gale_lines.json", dump(sweep_json(sweep)));
  rep.check("line intersections", sweep.pass,
            "max " + std::to_string(worst) + " per class over 100 lines, bound " + fixed(sweep.bound));
  return rep.finish(file);
}

int reproduce_parallelogram(const Runner& r) {
  Reproduction rep(r, "parallelogram");
  const std::string file = (fs::path(r.global().data_dir) / "parallelogram.txt").string();
  const Spectrum spec = read_spectrum(file);
  const NullBasis basis = null_basis(spec);
  SweepOptions opts;
  opts.seed = r.global().seed;
  const Box box = Box::square(4.0);
  rep.param("box", box_json(box));

  const std::vector<Face> ns = non_simplicial_faces(spec);
  std::vector<std::vector<double>> normals;
  for (const Face& f : ns) normals.push_back({std::round(f.normal(0) * 1e9) / 1e9, std::round(f.normal(1) * 1e9) / 1e9});
  std::sort(normals.begin(), normals.end());
  const bool faces_ok = normals == std::vector<std::vector<double>>{{-1, 0}, {0, -1}};
  std::string nd;
  for (const auto& v : normals) nd += "(" + fixed(v[0]) + "," + fixed(v[1]) + ")";
  rep.check("non-simplicial facets", faces_ok, std::to_string(ns.size()) + " with normals " + nd);

  const ContourCloud all = completed_contour(spec, basis, std::nullopt, opts);
  int fibers = 0;
  for (const Branch& b : all.branches) fibers += b.face >= 0;
  rep.output("completed_all.csv", cloud_csv(all));
  rep.check("line fibers", fibers == 2, std::to_string(fibers) + " fiber lines in the completed contour");

  const std::size_t pr = projective_row_classes(basis).size();
  rep.check("projective row classes", pr == static_cast<std::size_t>(spec.n() + 1), std::to_string(pr));

  json maps = json::array();
  bool stable = true;
  for (const SignVector& sigma : realized_classes(basis)) {
    const ContourCloud cloud = completed_contour(spec, basis, sigma, opts);
    rep.output("completed_" + sigma.str() + ".csv", cloud_csv(cloud));
    const StableChambers st = stable_chambers(cloud, box, 1024);
    stable = stable && st.stable;
    json entry = chambers_json(st.map);
    entry["sigma"] = sigma.str();
    entry["counts"] = st.counts;
    entry["stable"] = st.stable;
    maps.push_back(entry);
  }
  rep.output("chambers.json", dump({{"classes", maps}}));
  rep.check("chamber stability", stable, stable ? "counts agree over two doublings" : "counts differ");

  const LineSweepReport sweep = sweep_lines(spec, basis, realized_classes(basis), 100, r.global().seed, true, box);
  int worst = 0;
  for (const LineResult& l : sweep.lines) worst = std::max(worst, l.max_count);
  rep.output("gale_lines.json", dump(sweep_json(sweep)));
  rep.check("completed line intersections", sweep.pass,
            "max " + std::to_string(worst) + " over 100 lines, bound " + fixed(sweep.bound));
  return rep.finish(file);
}

int reproduce_circles(const Runner& r) {
  Reproduction rep(r, "circles");
  const fs::path dir(r.global().data_dir);
  const std::string file = (dir / "circles.txt").string();
  const Spectrum spec = read_spectrum(file);
  const NullBasis basis = null_basis(spec);
  const Vector c1 = read_coefficients((dir / "circles_g1.txt").string(), spec.terms());
  const Vector c2 = read_coefficients((dir / "circles_g2.txt").string(), spec.terms());
  SweepOptions opts;
  opts.seed = r.global().seed;
  const Box box = Box::square(4.0);
  rep.param("box", box_json(box));

  const ComponentCount n1 = count_components_2d(ExpSum(spec, c1));
  const ComponentCount n2 = count_components_2d(ExpSum(spec, c2));
  rep.check("N(g1)", n1.count == 1 && n1.stabilized, std::to_string(n1.count) + (n1.stabilized ? "" : " (not stabilized)"));
  rep.check("N(g2)", n2.count == 0 && n2.stabilized, std::to_string(n2.count) + (n2.stabilized ? "" : " (not stabilized)"));

  const SignVector sigma = SignVector::of(std::span<const double>(c1.data(), static_cast<std::size_t>(c1.size())));
  const ContourCloud cloud = completed_contour(spec, basis, sigma, opts);
  rep.output("completed_" + sigma.str() + ".csv", cloud_csv(cloud));
  const ChamberMap map = chambers(cloud, box, 1024);
  rep.output("chambers.json", dump(chambers_json(map)));
  const Location l1 = locate(spec, basis, c1, map);
  const Location l2 = locate(spec, basis, c2, map);
  const bool distinct = l1.chamber && l2.chamber && *l1.chamber != *l2.chamber;
  auto where = [](const Location& l) { return l.chamber ? std::to_string(*l.chamber) : std::string("contour"); };
  rep.check("distinct chambers", distinct, "g1 in chamber " + where(l1) + ", g2 in chamber " + where(l2));

  PathOptions popts;
  popts.box = box;
  popts.sweep = opts;
  const PathResult path = path_experiment(spec, basis, c2, c1, 20, popts);
  rep.output("path_g2_g1.json", dump(path_json(path)));
  rep.check("path g2 -> g1",
            path.pass && path.crossings.size() == 1 && path.steps.front().count.count == 0 &&
                path.steps.back().count.count == 1,
            "N " + std::to_string(path.steps.front().count.count) + " -> " +
                std::to_string(path.steps.back().count.count) + " with " + std::to_string(path.crossings.size()) +
                " crossing(s)");
  return rep.finish(file);
}

int cmd_reproduce(const Runner& r, const std::string& which) {
  if (which == "pentagon") return reproduce_pentagon(r);
  if (which == "parallelogram") return reproduce_parallelogram(r);
  if (which == "circles") return reproduce_circles(r);
  throw InvalidArgument("unknown example '" + which + "'");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discriminant contours, signed chambers and component counts for real exponential sums", "fewnomial"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--seed", g.seed, "Seed for every random choice")->capture_default_str();
  app.add_option("--out-dir", g.out_dir, "Directory for relative output paths")->capture_default_str();
  app.add_flag("--quiet", g.quiet, "Suppress progress text");
  app.add_flag("--json", g.json_out, "Print summaries as JSON");
  app.add_option("--data-dir", g.data_dir, "Directory holding the bundled example spectra")->capture_default_str();

  ContourArgs ca;
  auto* contour = app.add_subcommand("contour", "Sample a signed (or completed) reduced contour to CSV");
  contour->add_option("--spectrum", ca.spectrum, "Spectrum file")->required();
  contour->add_option("--sigma", ca.sigma, "Sign class such as +--++, or all")->capture_default_str();
  contour->add_option("--resolution", ca.resolution, "Sweep resolution")->capture_default_str();
  contour->add_option("--box", ca.box, "Keep only samples in xmin,xmax,ymin,ymax");
  contour->add_option("--out", ca.out, "CSV output (stdout when omitted)");
  contour->add_flag("--completed", ca.completed, "Add the face fibers");
  contour->add_option("--reading", ca.reading, "Sign reading: linear or log")->capture_default_str();
  contour->add_option("--fiber-signs", ca.fiber_signs, "projected or unrestricted")->capture_default_str();

  ChambersArgs cha;
  auto* cham = app.add_subcommand("chambers", "Raster chamber decomposition of a completed signed contour");
  cham->add_option("--spectrum", cha.spectrum, "Spectrum file")->required();
  cham->add_option("--sigma", cha.sigma, "Sign class, or all")->required();
  cham->add_option("--box", cha.box, "xmin,xmax,ymin,ymax")->capture_default_str();
  cham->add_option("--resolution", cha.resolution, "Raster side")->capture_default_str();
  cham->add_option("--out", cha.out, "JSON output");
  cham->add_flag("--main-only", cha.main_only, "Leave out the face fibers");
  cham->add_flag("--stable", cha.stable, "Also rasterize at 2x and 4x and require equal counts");
  cham->add_option("--fiber-signs", cha.fiber_signs, "projected or unrestricted")->capture_default_str();

  GaleArgs ga;
  auto* gale = app.add_subcommand("gale", "Count line intersections through Gale dual systems");
  gale->add_option("--spectrum", ga.spectrum, "Spectrum file")->required();
  gale->add_option("--lines", ga.lines, "Number of random lines")->capture_default_str();
  gale->add_flag("--completed", ga.completed, "Include face fibers");
  gale->add_option("--report", ga.report, "JSON report");
  gale->add_option("--box", ga.box, "Lines pass through this box")->capture_default_str();
  gale->add_option("--resolution", ga.resolution, "Root search resolution")->capture_default_str();

  BoundsArgs ba;
  auto* bounds = app.add_subcommand("bounds", "Evaluate the component and intersection bounds");
  bounds->add_option("--n", ba.n, "Number of variables")->capture_default_str();
  bounds->add_option("--k", ba.k, "Terms minus variables")->capture_default_str();
  bounds->add_option("--table", ba.table, "nmax kmax")->expected(2);
  bounds->add_option("--report", ba.report, "JSON report");

  ComponentsArgs coa;
  auto* comps = app.add_subcommand("components", "Count connected components of the real zero set");
  comps->add_option("--spectrum", coa.spectrum, "Spectrum file")->required();
  comps->add_option("--coeffs", coa.coeffs, "Coefficient file")->required();
  comps->add_option("--resolution", coa.resolution, "Raster side at the first radius")->capture_default_str();
  comps->add_option("--r0", coa.r0, "Smallest first radius")->capture_default_str();

  CensusArgs cea;
  auto* census = app.add_subcommand("census", "Sample coefficients in every signed chamber and count components");
  census->add_option("--spectrum", cea.spectrum, "Spectrum file")->required();
  census->add_option("--out", cea.out, "JSON table");
  census->add_option("--samples", cea.samples, "Samples per chamber")->capture_default_str();
  census->add_option("--total", cea.total, "Spread this many samples over all chambers instead");
  census->add_option("--box", cea.box, "xmin,xmax,ymin,ymax")->capture_default_str();
  census->add_option("--resolution", cea.resolution, "Chamber raster side")->capture_default_str();

  PathArgs pa;
  auto* path = app.add_subcommand("path", "Follow a coefficient path and watch the component count");
  path->add_option("--spectrum", pa.spectrum, "Spectrum file")->required();
  path->add_option("--from", pa.from, "Start coefficients")->required();
  path->add_option("--to", pa.to, "End coefficients")->required();
  path->add_option("--steps", pa.steps, "Number of steps")->capture_default_str();
  path->add_option("--out", pa.out, "JSON report");
  path->add_option("--box", pa.box, "xmin,xmax,ymin,ymax")->capture_default_str();

  std::string example;
  auto* repro = app.add_subcommand("reproduce", "Run a bundled worked example and check its assertions");
  repro->add_option("example", example, "pentagon, parallelogram or circles")
      ->required()
      ->check(CLI::IsMember({"pentagon", "parallelogram", "circles"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  const Runner runner(g, out, err);
  try {
    if (*contour) return cmd_contour(runner, ca);
    if (*cham) return cmd_chambers(runner, cha);
    if (*gale) return cmd_gale(runner, ga);
    if (*bounds) return cmd_bounds(runner, ba);
    if (*comps) return cmd_components(runner, coa);
    if (*census) return cmd_census(runner, cea);
    if (*path) return cmd_path(runner, pa);
    if (*repro) return cmd_reproduce(runner, example);
  } catch (const InconsistentChamber& e) {
    err << "error: " << e.what() << "\n";
    return kAssertionFailed;
  } catch (const NotStabilized& e) {
    err << "error: " << e.what() << "\n";
    return kAssertionFailed;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.push_back("fewnomial");
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace fewnomial::cli
