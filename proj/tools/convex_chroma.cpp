// Command line front end: generate families, color and partition them,
// verify the bound chain against exact oracles, export graphs and drawings.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "convex_chroma/convex_chroma.hpp"

namespace cc = convex_chroma;
using cc::Json;

namespace {

struct Common {
  std::string in;
  std::string out;
  std::uint64_t seed = 0;
  std::string caps;
  std::size_t samples = cc::kDefaultCoverSamples;
  bool timing = false;
};

// "omega=100,chi=45"; either key may be omitted.
cc::SolverCaps parse_caps(const std::string& text, cc::SolverCaps caps) {
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw cc::InputError("caps entry \"" + item + "\" is not key=value");
    const std::string key = item.substr(0, eq);
    std::size_t value = 0;
    try {
      value = std::stoul(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw cc::InputError("caps value in \"" + item + "\" is not a number");
    }
    if (key == "omega") caps.clique = value;
    else if (key == "chi") caps.coloring = value;
    else throw cc::InputError("unknown caps key \"" + key + "\"");
  }
  return caps;
}

// Defaults, then CONVEX_CHROMA_CAPS, then --caps.
cc::SolverCaps resolve_caps(const std::string& flag) {
  cc::SolverCaps caps;
  if (const char* env = std::getenv("CONVEX_CHROMA_CAPS")) caps = parse_caps(env, caps);
  if (!flag.empty()) caps = parse_caps(flag, caps);
  return caps;
}

cc::RunOptions options(const Common& c) {
  cc::RunOptions opt;
  opt.seed = c.seed;
  opt.caps = resolve_caps(c.caps);
  opt.samples = c.samples;
  return opt;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") std::cout << text;
  else cc::write_text_file(path, text);
}

cc::FamilyFile load_family(const std::string& path) {
  if (path.empty()) throw cc::InputError("--in is required");
  return cc::family_file_from_json(cc::read_json_file(path));
}

// Named bodies, "box:s1,s2,..." or a body JSON file.
cc::ConvexBody parse_body(const std::string& name) {
  if (name == "square") return cc::ConvexBody::box({1.0, 1.0});
  if (name == "disk") return cc::ConvexBody::disk();
  if (name == "triangle") return cc::ConvexBody::polygon({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}});
  if (name == "hexagon") {
    std::vector<cc::Vec2> v;
    for (int i = 0; i < 6; ++i) v.push_back({std::cos(M_PI / 3.0 * i), std::sin(M_PI / 3.0 * i)});
    return cc::ConvexBody::polygon(std::move(v));
  }
  if (name.rfind("box:", 0) == 0) {
    std::vector<double> sides;
    std::stringstream ss(name.substr(4));
    std::string part;
    while (std::getline(ss, part, ',')) {
      try {
        sides.push_back(std::stod(part));
      } catch (const std::exception&) {
        throw cc::InputError("bad box side \"" + part + "\"");
      }
    }
    return cc::ConvexBody::box(std::move(sides));
  }
  return cc::body_from_json(cc::read_json_file(name));
}

Json run_header(const std::string& command, const cc::Family& family, const cc::RunOptions& opt) {
  Json r;
  r["command"] = command;
  r["input_digest"] = cc::digest(cc::to_json(family));
  r["seed"] = opt.seed;
  r["members"] = family.size();
  return r;
}

Json check_entry(const std::string& name, double lhs, double rhs, bool pass, bool skipped = false) {
  return {{"name", name}, {"lhs", lhs}, {"rhs", rhs}, {"status", skipped ? "skipped" : pass ? "pass" : "fail"}};
}

// ---------------------------------------------------------------------------

struct GenerateArgs {
  std::string construction;
  std::string body = "square";
  std::size_t m = 2;
  std::size_t k = 1;
  std::size_t count = 20;
  double window = 5.0;
  double scale_min = 1.0;
  double scale_max = 1.0;
};

int cmd_generate(const GenerateArgs& a, const Common& c) {
  cc::Family family{cc::ConvexBody::disk(), {}, {}};
  if (a.construction == "grid") {
    family = cc::grid_family(parse_body(a.body), a.m);
  } else if (a.construction == "pentagon") {
    family = cc::pentagon_family(a.k);
  } else if (a.construction == "pentagon_disjoint") {
    family = cc::pentagon_disjoint_family(a.k);
  } else if (a.construction == "random") {
    const cc::ConvexBody body = parse_body(a.body);
    const std::size_t n = body.dimension();
    family = cc::random_family(body, a.count, cc::AxisBox{cc::Point(n, 0.0), cc::Point(n, a.window)},
                               {a.scale_min, a.scale_max}, c.seed);
  } else {
    throw cc::InputError("unknown construction \"" + a.construction + "\"");
  }
  emit(c.out, cc::dump(cc::to_json(family)));
  return cc::kExitPass;
}

int cmd_color(const std::string& method, const Common& c) {
  const cc::FamilyFile file = load_family(c.in);
  const cc::RunOptions opt = options(c);
  const cc::ColoringReport rep = cc::run_coloring(method, file.family, opt);
  const cc::Graph g = cc::build_graph(file.family);
  const bool proper = file.family.size() == 0 || cc::verify_coloring(g, rep.colors);
  const bool within = static_cast<double>(rep.colors_used) <= rep.bound_value + cc::kTolerance;
  const bool exact = rep.omega_exact || file.family.size() == 0;

  Json r = run_header("color", file.family, opt);
  r["method"] = method;
  r["report"] = cc::to_json(rep);
  r["checks"] = {check_entry("coloring is proper", proper, 1, proper),
                 check_entry("omega <= colors", static_cast<double>(rep.omega_used),
                             static_cast<double>(rep.colors_used), rep.omega_used <= rep.colors_used, !exact),
                 check_entry("colors <= bound", static_cast<double>(rep.colors_used), rep.bound_value, within, !exact)};
  const bool ok = proper && (!exact || (within && rep.omega_used <= rep.colors_used));
  r["status"] = !ok ? "fail" : exact ? "pass" : "capped";
  emit(c.out, cc::dump(r));
  return !ok ? cc::kExitCheckFailed : exact ? cc::kExitPass : cc::kExitCapExceeded;
}

int cmd_partition(const std::string& method, const Common& c) {
  const cc::FamilyFile file = load_family(c.in);
  const cc::RunOptions opt = options(c);
  const cc::PartitionReport rep = cc::run_partition(method, file.family, opt);
  const cc::Graph g = cc::build_graph(file.family);
  const bool cliques = file.family.size() == 0 || cc::verify_clique_partition(g, rep.classes);
  const bool within = static_cast<double>(rep.classes_used) <= rep.bound_value + cc::kTolerance;
  const bool exact = rep.nu_exact || file.family.size() == 0;

  Json r = run_header("partition", file.family, opt);
  r["method"] = method;
  r["report"] = cc::to_json(rep);
  r["checks"] = {check_entry("classes are cliques", cliques, 1, cliques),
                 check_entry("nu <= classes", static_cast<double>(rep.nu_used), static_cast<double>(rep.classes_used),
                             rep.nu_used <= rep.classes_used, !exact),
                 check_entry("classes <= bound", static_cast<double>(rep.classes_used), rep.bound_value, within, !exact)};
  const bool ok = cliques && (!exact || (within && rep.nu_used <= rep.classes_used));
  r["status"] = !ok ? "fail" : exact ? "pass" : "capped";
  emit(c.out, cc::dump(r));
  return !ok ? cc::kExitCheckFailed : exact ? cc::kExitPass : cc::kExitCapExceeded;
}

int cmd_verify(const Common& c) {
  const cc::FamilyFile file = load_family(c.in);
  const cc::VerifyResult result = cc::run_verify(file, options(c));
  emit(c.out, cc::dump(result.report));
  for (const cc::Check& chk : result.checks) {
    if (!chk.skipped && !chk.pass) std::cerr << "check failed: " << chk.name << " (" << chk.lhs << " vs " << chk.rhs << ")\n";
  }
  return result.exit_code();
}

int cmd_cover(const std::string& body, const Common& c) {
  const cc::CoveringCertificate cert = cc::difference_cover(parse_body(body), c.samples);
  emit(c.out, cc::dump(cc::to_json(cert)));
  return cert.verification.ok() ? cc::kExitPass : cc::kExitCheckFailed;
}

// --- export ----------------------------------------------------------------

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(6) << (std::abs(x) < 5e-7 ? 0.0 : x);
  return os.str();
}

std::string fill_for(int color, int total) {
  if (color < 0) return "none";
  std::ostringstream os;
  const int hue = total <= 0 ? 0 : (color * 360) / total;
  os << "hsl(" << hue << ",70%,60%)";
  return os.str();
}

std::string render_svg(const cc::Family& family, const std::vector<int>& colors) {
  if (family.body.dimension() != 2) throw cc::InputError("SVG export needs a planar family");
  double lox = 0, loy = 0, hix = 1, hiy = 1;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const cc::AxisBox b = cc::bounding_box(family.body, family.placements[i]);
    if (i == 0) lox = b.lo[0], loy = b.lo[1], hix = b.hi[0], hiy = b.hi[1];
    lox = std::min(lox, b.lo[0]), loy = std::min(loy, b.lo[1]);
    hix = std::max(hix, b.hi[0]), hiy = std::max(hiy, b.hi[1]);
  }
  const double pad = 0.05 * std::max(hix - lox, hiy - loy);
  lox -= pad, loy -= pad, hix += pad, hiy += pad;
  const int total = colors.empty() ? 0 : static_cast<int>(cc::count_classes(colors));

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt(lox) << ' ' << fmt(-hiy) << ' '
     << fmt(hix - lox) << ' ' << fmt(hiy - loy) << "\" width=\"600\" height=\""
     << fmt(600.0 * (hiy - loy) / (hix - lox)) << "\">\n";
  os << "<g transform=\"scale(1,-1)\" stroke=\"black\" stroke-width=\"" << fmt(0.004 * (hix - lox))
     << "\" fill-opacity=\"0.45\">\n";
  for (std::size_t i = 0; i < family.size(); ++i) {
    const cc::Placement& p = family.placements[i];
    const std::string fill = fill_for(colors.empty() ? -1 : colors[i], total);
    const std::string cls = colors.empty() ? "" : " class=\"c" + std::to_string(colors[i]) + "\"";
    if (family.body.is_disk()) {
      os << "<circle" << cls << " cx=\"" << fmt(p.center[0]) << "\" cy=\"" << fmt(p.center[1]) << "\" r=\""
         << fmt(p.scale) << "\" fill=\"" << fill << "\"/>\n";
    } else {
      const std::vector<cc::Vec2> shape =
          family.body.is_box() ? cc::box_vertices(family.body) : family.body.vertices();
      os << "<polygon" << cls << " points=\"";
      for (std::size_t v = 0; v < shape.size(); ++v) {
        const cc::Vec2 q = p.scale * shape[v] + cc::as_vec2(p.center);
        os << (v ? " " : "") << fmt(q.x) << ',' << fmt(q.y);
      }
      os << "\" fill=\"" << fill << "\"/>\n";
    }
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

std::string render_csv(const cc::Family& family, const cc::RunOptions& opt) {
  const cc::Graph g = cc::build_graph(family);
  const cc::GraphInvariants inv = cc::compute_invariants(g, opt.caps);
  auto value = [](std::size_t v, bool capped) { return capped ? std::string() : std::to_string(v); };
  std::ostringstream os;
  os << "members,edges,omega,nu,chi,theta\n";
  os << family.size() << ',' << g.edge_count() << ',' << value(inv.omega.size, inv.omega.capped) << ','
     << value(inv.alpha.size, inv.alpha.capped) << ',' << value(inv.chi.size, inv.chi.capped) << ','
     << value(inv.theta.size, inv.theta.capped) << '\n';
  return os.str();
}

int cmd_export(const std::string& format, const std::string& coloring, const Common& c) {
  const cc::FamilyFile file = load_family(c.in);
  if (format == "dimacs") {
    std::ostringstream os;
    cc::write_dimacs(os, cc::build_graph(file.family), file.family.meta.construction);
    emit(c.out, os.str());
  } else if (format == "svg") {
    std::vector<int> colors;
    if (!coloring.empty()) {
      const Json j = cc::read_json_file(coloring);
      colors = cc::assignment_from_json(j.is_object() && j.contains("report") ? j.at("report") : j);
      if (colors.size() != file.family.size()) throw cc::InputError("coloring size differs from the family");
    }
    emit(c.out, render_svg(file.family, colors));
  } else if (format == "csv") {
    emit(c.out, render_csv(file.family, options(c)));
  } else {
    throw cc::InputError("unknown export format \"" + format + "\"");
  }
  return cc::kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Colorings and clique partitions of translates and homothets of convex bodies"};
  app.require_subcommand(1);
  Common common;

  auto add_io = [&](CLI::App* sub, bool with_in) {
    if (with_in) sub->add_option("--in", common.in, "Family JSON file")->required();
    sub->add_option("--out", common.out, "Output file (stdout when omitted)");
    sub->add_option("--seed", common.seed, "Seed for every random choice")->capture_default_str();
    sub->add_option("--caps", common.caps, "Exact solver caps, e.g. omega=100,chi=45");
    sub->add_option("--samples", common.samples, "Samples for covering certificates")->capture_default_str();
    sub->add_flag("--timing", common.timing, "Print wall time to stderr");
  };

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a family JSON file");
  generate->add_option("construction", gen.construction, "grid | pentagon | pentagon_disjoint | random")->required();
  generate->add_option("--body", gen.body, "square | disk | triangle | hexagon | box:s1,s2,... | body JSON file");
  generate->add_option("--m", gen.m, "Grid parameter");
  generate->add_option("--k", gen.k, "Pentagon parameter");
  generate->add_option("--count", gen.count, "Random family size");
  generate->add_option("--window", gen.window, "Random centers lie in [0, window]^n");
  generate->add_option("--scale-min", gen.scale_min, "Smallest random scale");
  generate->add_option("--scale-max", gen.scale_max, "Largest random scale");
  add_io(generate, false);

  std::string color_method = "translates";
  auto* color = app.add_subcommand("color", "Color a family and check the bound");
  color->add_option("--method", color_method, "translates | homothets | symmetrized");
  add_io(color, true);

  std::string partition_method = "translates";
  auto* partition = app.add_subcommand("partition", "Partition a family into cliques and check the bound");
  partition->add_option("--method", partition_method, "translates | homothets | symmetrized");
  add_io(partition, true);

  auto* verify = app.add_subcommand("verify", "Run all algorithms against exact oracles");
  add_io(verify, true);

  std::string format = "dimacs", coloring;
  auto* exporter = app.add_subcommand("export", "Export the intersection graph, a drawing or invariants");
  exporter->add_option("--format", format, "dimacs | svg | csv");
  exporter->add_option("--coloring", coloring, "Coloring or report JSON for SVG fills");
  add_io(exporter, true);

  std::string cover_body = "square";
  auto* cover = app.add_subcommand("cover", "Covering certificate of C - C by translates of C");
  cover->add_option("--body", cover_body, "Body name or JSON file");
  add_io(cover, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cc::kExitInputError;
  }

  const auto start = std::chrono::steady_clock::now();
  int code = cc::kExitPass;
  try {
    if (*generate) code = cmd_generate(gen, common);
    else if (*color) code = cmd_color(color_method, common);
    else if (*partition) code = cmd_partition(partition_method, common);
    else if (*verify) code = cmd_verify(common);
    else if (*exporter) code = cmd_export(format, coloring, common);
    else if (*cover) code = cmd_cover(cover_body, common);
  } catch (const cc::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    code = cc::kExitInputError;
  } catch (const cc::CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << '\n';
    code = cc::kExitCapExceeded;
  } catch (const cc::ConstructionError& e) {
    std::cerr << "construction failed: " << e.what() << '\n';
    code = cc::kExitInputError;
  } catch (const cc::InvariantViolation& e) {
    std::cerr << "invariant violated: " << e.what() << '\n';
    code = cc::kExitCheckFailed;
  }
  if (common.timing) {
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    std::cerr << "wall time: " << std::fixed << std::setprecision(1) << ms << " ms\n";
  }
  return code;
}
