// pdfam: command-line front end.
//
// Exit codes: 0 success, 2 input or format error, 3 verification or
// hypothesis failure.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pdfam/pdfam.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace pdfam;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitVerification = 3;

/// Verification failed; the message names what failed.
struct VerificationFailure : Error {
  using Error::Error;
};

PointCloud load_cloud(const std::string& path) {
  if (path == "-") return read_cloud(std::cin);
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  try {
    return read_cloud(in);
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write '" + path.string() + "'");
  return out;
}

void save_cloud(const fs::path& path, const PointCloud& cloud) {
  auto out = open_output(path);
  write_cloud(out, cloud);
  if (!out) throw InvalidInput("cannot write '" + path.string() + "'");
}

Point parse_vector(const std::string& s) {
  Point v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    double x = 0;
    try {
      x = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw InvalidInput("cannot parse vector component '" + tok + "'");
    }
    if (used != tok.size() || !std::isfinite(x)) throw InvalidInput("cannot parse vector component '" + tok + "'");
    v.push_back(x);
  }
  if (v.empty()) throw InvalidInput("empty vector '" + s + "'");
  return v;
}

/// "a:b:step", "a:b" (step 1) or "a,b,c".
std::vector<std::size_t> parse_range(const std::string& s) {
  std::vector<std::size_t> out;
  auto num = [&](const std::string& t) -> std::size_t {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(t, &used);
    } catch (const std::exception&) {
      throw InvalidInput("cannot parse range '" + s + "'");
    }
    if (used != t.size() || v < 1) throw InvalidInput("cannot parse range '" + s + "'");
    return static_cast<std::size_t>(v);
  };
  if (s.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    if (parts.size() < 2 || parts.size() > 3) throw InvalidInput("cannot parse range '" + s + "'");
    const std::size_t lo = num(parts[0]), hi = num(parts[1]);
    const std::size_t step = parts.size() == 3 ? num(parts[2]) : 1;
    if (hi < lo) throw InvalidInput("empty range '" + s + "'");
    for (std::size_t x = lo; x <= hi; x += step) out.push_back(x);
  } else {
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(num(tok));
  }
  if (out.empty()) throw InvalidInput("empty range '" + s + "'");
  return out;
}

json class_summary(const std::vector<ClassifiedEdge>& classes) {
  json j = {{"Short", 0}, {"Medium", 0}, {"Long", 0}};
  for (const auto& c : classes) j[std::string(to_string(c.cls))] = j[std::string(to_string(c.cls))].get<int>() + 1;
  return j;
}

json diagram_json(const PersistenceDiagram& d) {
  json arr = json::array();
  for (const auto& p : d.pairs) {
    if (p.finite()) arr.push_back({p.birth, p.death});
    else arr.push_back({p.birth, "inf"});
  }
  return arr;
}

void emit(const json& j) { std::cout << j.dump() << '\n'; }

CLI::Validator cone_validator() {
  return CLI::Validator(
      [](std::string& s) -> std::string {
        double v = 0;
        try {
          v = std::stod(s);
        } catch (const std::exception&) {
          return "cone must be a number in radians";
        }
        if (!(v >= 0.0 && v < std::numbers::pi / 4)) return "cone half-angle must lie in [0, pi/4)";
        return {};
      },
      "RADIANS in [0, pi/4)");
}

struct TailOptions {
  std::size_t n = 10;
  double cone = 0.2;
  std::uint64_t seed = 1;
  double spacing_min = 1.0;
  double spacing_max = 1.0;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--n", n, "Number of tail points, vertex included")->check(CLI::PositiveNumber);
    cmd->add_option("--cone", cone, "Cone half-angle bounding the tail (radians)")->check(cone_validator());
    cmd->add_option("--seed", seed, "Random seed");
    cmd->add_option("--spacing-min", spacing_min, "Smallest gap between consecutive projections");
    cmd->add_option("--spacing-max", spacing_max, "Largest gap between consecutive projections");
  }
  TailSpec spec(Ray ray) const { return TailSpec{std::move(ray), n, spacing_min, spacing_max, cone, seed}; }
};

std::vector<FiltrationKind> applicable_kinds(std::size_t dim) {
  std::vector<FiltrationKind> k{FiltrationKind::VietorisRips, FiltrationKind::Cech};
  if (dim == 2) k.push_back(FiltrationKind::Delaunay2D);
  return k;
}

// ---------------------------------------------------------------------------

int run(int argc, char** argv) {
  CLI::App app{"Persistence of point sets: diagrams, edge classes, tails, long wedges, experiments"};
  app.require_subcommand(1);

  std::string input, kind_name = "vr", out_path;
  int dim = 1;
  std::optional<double> max_scale;

  auto* pd = app.add_subcommand("pd", "Persistence diagram of a cloud file as CSV");
  pd->add_option("--input", input, "Cloud file ('-' for stdin)")->required();
  pd->add_option("--kind", kind_name, "vr | cech | delaunay");
  pd->add_option("--dim", dim, "Homology dimension (0 or 1)")->check(CLI::IsMember({0, 1}));
  pd->add_option("--max-scale", max_scale, "Cap on filtration values");

  auto* classify = app.add_subcommand("classify", "Short/medium/long class of every edge as CSV");
  classify->add_option("--input", input, "Cloud file ('-' for stdin)")->required();
  classify->add_option("--kind", kind_name, "vr | cech | delaunay");

  TailOptions tail_opts;
  std::size_t ambient = 2;
  std::string vertex_str, direction_str;
  auto* make_tail = app.add_subcommand("make-tail", "Generate a tail along a ray and verify it");
  tail_opts.add_to(make_tail);
  make_tail->add_option("--dim", ambient, "Ambient dimension")->check(CLI::PositiveNumber);
  make_tail->add_option("--vertex", vertex_str, "Ray vertex as comma-separated coordinates (default origin)");
  make_tail->add_option("--direction", direction_str, "Ray direction (default first axis)");
  make_tail->add_option("--out", out_path, "Write the tail to this cloud file");

  std::size_t vertex_index = 0;
  bool probe = false;
  auto* attach = app.add_subcommand("attach", "Attach a generated tail to a cloud at one of its points");
  tail_opts.add_to(attach);
  attach->add_option("--input", input, "Base cloud file")->required();
  attach->add_option("--vertex-index", vertex_index, "Index of the attachment point in the base cloud");
  attach->add_option("--direction", direction_str, "Ray direction (default: away from the base cloud)");
  attach->add_option("--kind", kind_name, "vr | cech | delaunay");
  attach->add_option("--out", out_path, "Write the union to this cloud file");
  attach->add_flag("--probe", probe, "Attach even when mu >= theta + pi/2 fails");

  std::vector<std::string> inputs;
  auto* wedge = app.add_subcommand("verify-wedge", "Check a long wedge and its diagram identity");
  wedge->add_option("--input", inputs, "Component cloud files (repeat)")->required();
  wedge->add_option("--kind", kind_name, "vr | cech | delaunay");

  std::vector<std::string> tail_specs;
  std::size_t variants = 10;
  std::string out_dir;
  auto* family = app.add_subcommand("family", "Variants of a base cloud extended by tails, all with empty PD1");
  family->add_option("--input", input, "Base cloud file with empty PD1")->required();
  family->add_option("--tail", tail_specs, "VERTEX/DIRECTION/N/CONE, e.g. 0/-1,0/8/0.2 (repeat)");
  family->add_option("--variants", variants, "Number of variants")->check(CLI::PositiveNumber);
  family->add_option("--seed", tail_opts.seed, "Random seed");
  family->add_option("--spacing-min", tail_opts.spacing_min, "Smallest tail gap");
  family->add_option("--spacing-max", tail_opts.spacing_max, "Largest tail gap");
  family->add_option("--kind", kind_name, "vr | cech | delaunay");
  family->add_option("--out-dir", out_dir, "Directory for member_NNN.txt files")->required();

  auto* experiment = app.add_subcommand("experiment", "Randomized experiments on the unit cube");
  experiment->require_subcommand(1);
  std::string n_str = "10", dim_str = "2";
  std::size_t trials = 100, bins = 50;
  std::uint64_t seed = 1;
  auto* hist = experiment->add_subcommand("hist", "Histogram of 1D persistence");
  auto* sweep = experiment->add_subcommand("sweep", "Median gap ratio over a grid of (n, N)");
  for (auto* cmd : {hist, sweep}) {
    cmd->add_option("--n", n_str, cmd == hist ? "Points per cloud" : "Range a:b[:step] or list");
    cmd->add_option("--N", dim_str, cmd == hist ? "Dimension" : "Range a:b[:step] or list");
    cmd->add_option("--trials", trials, "Clouds per cell")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", seed, "Master seed");
    cmd->add_option("--kind", kind_name, "vr | cech | delaunay");
    cmd->add_option("--out", out_dir, "Output directory")->required();
  }
  hist->add_option("--bins", bins, "Histogram bins")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  const FiltrationKind kind = parse_kind(kind_name);

  if (*pd) {
    const PointCloud cloud = load_cloud(input);
    write_diagram_csv(std::cout, compute_pd(build_filtration(cloud, kind, max_scale), dim));
    return kExitOk;
  }

  if (*classify) {
    const PointCloud cloud = load_cloud(input);
    write_classes_csv(std::cout, cloud, classify_all(build_filtration(cloud, kind)));
    return kExitOk;
  }

  if (*make_tail) {
    Point vertex = vertex_str.empty() ? Point(ambient, 0.0) : parse_vector(vertex_str);
    Point direction(vertex.size(), 0.0);
    if (direction_str.empty()) direction[0] = 1.0;
    else direction = parse_vector(direction_str);
    const Ray ray(vertex, direction);
    const PointCloud tail = generate_tail(tail_opts.spec(ray));
    if (!out_path.empty()) save_cloud(out_path, tail);

    json rep = {{"command", "make-tail"}, {"n", tail.size()}, {"dim", tail.dim()}, {"seed", tail_opts.seed}};
    rep["omega"] = tail.size() >= 2 ? angular_deviation(tail, ray) : 0.0;
    rep["theta"] = tail.size() >= 2 ? angular_thickness(tail, ray) : 0.0;
    bool all_ok = true;
    bool pd1_empty = true;
    json per_kind = json::object();
    for (auto k : applicable_kinds(tail.dim())) {
      const TailValidation v = validate_tail(tail, k);
      const FilteredComplex c = build_filtration(tail, k);
      const bool empty = compute_pd(c, 1).empty();
      per_kind[std::string(to_string(k))] = {{"tail_valid", v.ok}, {"pd1_empty", empty},
                                             {"edge_classes", class_summary(classify_all(c))}};
      all_ok = all_ok && v.ok && empty;
      pd1_empty = pd1_empty && empty;
    }
    rep["kinds"] = per_kind;
    rep["pd1_empty"] = pd1_empty;
    rep["tail_valid"] = all_ok;
    emit(rep);
    return all_ok ? kExitOk : kExitVerification;
  }

  if (*attach) {
    const PointCloud base = load_cloud(input);
    if (vertex_index >= base.size()) throw InvalidInput("--vertex-index out of range");
    const Point direction = direction_str.empty() ? outward_direction(base, vertex_index) : parse_vector(direction_str);
    const Ray ray(base.point(vertex_index), direction);
    const PointCloud tail = generate_tail(tail_opts.spec(ray));
    const AttachResult att = attach_tail(base, vertex_index, ray, tail);

    json rep = {{"command", "attach"}, {"kind", to_string(kind)}, {"mu", att.report.mu},
                {"theta", att.report.theta}, {"hypothesis", att.report.hypothesis_holds},
                {"min_cross_angle", att.report.min_cross_angle}};
    if (std::isinf(att.report.mu)) rep["mu"] = "inf";
    if (std::isinf(att.report.min_cross_angle)) rep["min_cross_angle"] = "inf";
    if (!att.report.hypothesis_holds && !probe) {
      rep["error"] = "mu >= theta + pi/2 violated";
      emit(rep);
      throw HypothesisError("mu >= theta + pi/2 violated");
    }
    if (!out_path.empty()) save_cloud(out_path, att.cloud);

    if (!att.report.hypothesis_holds) {  // probe mode: report the angles only
      emit(rep);
      return kExitOk;
    }
    const TailTheoremReport th = verify_tail_theorem(base, vertex_index, ray, tail, kind);
    rep["is_long_wedge"] = th.wedge.is_long_wedge;
    rep["pd_union_ok"] = th.union_identity;
    rep["tail_pd1_empty"] = th.tail_pd_empty;
    rep["pd1_equals_base"] = th.equals_base;
    rep["pd1_empty"] = th.union_pd.empty();
    rep["pd1"] = diagram_json(th.union_pd);
    emit(rep);
    if (!(th.wedge.is_long_wedge && th.union_identity && th.tail_pd_empty && th.equals_base))
      throw VerificationFailure("attachment does not preserve PD1");
    return kExitOk;
  }

  if (*wedge) {
    std::vector<PointCloud> parts;
    for (const auto& f : inputs) parts.push_back(load_cloud(f));
    const WedgeReport w = verify_long_wedge(parts, kind);
    json offending = json::array();
    for (auto [a, b] : w.offending_edges) offending.push_back({a, b});
    json rep = {{"command", "verify-wedge"}, {"kind", to_string(kind)}, {"components", parts.size()},
                {"is_long_wedge", w.is_long_wedge}, {"pd_union_ok", w.pd_union_ok},
                {"offending_edges", offending}, {"absent_cross_edges", w.absent_cross_edges},
                {"pd1", diagram_json(w.union_pd)}};
    emit(rep);
    if (!w.is_long_wedge) throw VerificationFailure("not a long wedge");
    if (!w.pd_union_ok) throw VerificationFailure("PD1 of the wedge is not the union of the components' PD1");
    return kExitOk;
  }

  if (*family) {
    const PointCloud base = load_cloud(input);
    std::vector<TailRequest> requests;
    for (const auto& spec : tail_specs) {
      std::vector<std::string> parts;
      std::stringstream ss(spec);
      std::string tok;
      while (std::getline(ss, tok, '/')) parts.push_back(tok);
      if (parts.size() != 4) throw InvalidInput("--tail expects VERTEX/DIRECTION/N/CONE, got '" + spec + "'");
      TailRequest r;
      const Point nums = parse_vector(parts[0] + "," + parts[2] + "," + parts[3]);
      if (nums[0] < 0 || nums[0] != std::floor(nums[0]) || nums[1] < 1 || nums[1] != std::floor(nums[1]))
        throw InvalidInput("--tail vertex and point count must be integers, got '" + spec + "'");
      r.vertex = static_cast<std::size_t>(nums[0]);
      r.direction = parse_vector(parts[1]);
      r.n = static_cast<std::size_t>(nums[1]);
      r.cone_half_angle = nums[2];
      if (!(r.cone_half_angle >= 0.0 && r.cone_half_angle < std::numbers::pi / 4))
        throw InvalidInput("--tail cone half-angle must lie in [0, pi/4)");
      r.spacing_min = tail_opts.spacing_min;
      r.spacing_max = tail_opts.spacing_max;
      requests.push_back(std::move(r));
    }
    const FamilyResult fam = generate_trivial_family(base, requests, kind, variants, tail_opts.seed);
    fs::create_directories(out_dir);
    bool all_empty = true;
    for (std::size_t k = 0; k < fam.members.size(); ++k) {
      const auto& m = fam.members[k];
      char name[32];
      std::snprintf(name, sizeof name, "member_%03zu.txt", k);
      save_cloud(fs::path(out_dir) / name, m.cloud);
      json att = json::array();
      for (const auto& a : m.attachments) att.push_back({{"mu", a.mu}, {"theta", a.theta}});
      emit({{"command", "family"}, {"member", k}, {"file", name}, {"points", m.cloud.size()},
            {"pd1_empty", m.pd1_empty}, {"tails", att}});
      all_empty = all_empty && m.pd1_empty;
    }
    emit({{"command", "family"}, {"members", fam.members.size()}, {"pd1_empty", all_empty},
          {"pairwise_distinct", fam.pairwise_distinct}});
    if (!all_empty) throw VerificationFailure("a family member has nonempty PD1");
    return kExitOk;
  }

  if (*hist || *sweep) {
    fs::create_directories(out_dir);
    json cfg = {{"command", *hist ? "experiment hist" : "experiment sweep"}, {"n", n_str}, {"N", dim_str},
                {"trials", trials}, {"seed", seed}, {"kind", to_string(kind)}, {"rng", "mt19937_64"}};
    if (*hist) {
      ExperimentConfig ec{parse_range(n_str).front(), parse_range(dim_str).front(), trials, seed, kind, bins};
      cfg["bins"] = bins;
      const Histogram h = persistence_histogram(ec);
      auto hf = open_output(fs::path(out_dir) / "histogram.csv");
      write_histogram_csv(hf, h);
      auto rf = open_output(fs::path(out_dir) / "raw.csv");
      write_raw_csv(rf, ec.n_points, ec.dim, h);
    } else {
      const SweepResult s = gap_ratio_sweep(parse_range(n_str), parse_range(dim_str), trials, seed, kind);
      auto sf = open_output(fs::path(out_dir) / "sweep.csv");
      write_sweep_csv(sf, s);
    }
    auto cf = open_output(fs::path(out_dir) / "config.json");
    cf << cfg.dump(2) << '\n';
    return kExitOk;
  }
  return kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const HypothesisError& e) {
    std::cerr << "pdfam: " << e.what() << '\n';
    return kExitVerification;
  } catch (const VerificationFailure& e) {
    std::cerr << "pdfam: verification failed: " << e.what() << '\n';
    return kExitVerification;
  } catch (const InvalidInput& e) {
    std::cerr << "pdfam: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "pdfam: " << e.what() << '\n';
    return kExitInput;
  }
}
