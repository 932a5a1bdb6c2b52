// wrlat: systoles, well-rounding flow, symplectic product lattices and the
// verification suites from the command line.
//
// Exit codes: 0 success / all checks pass, 1 a verification or flow failed,
// 2 input or usage error.

#include "wrlat/group_actions.hpp"
#include "wrlat/io.hpp"
#include "wrlat/retraction.hpp"
#include "wrlat/verify.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>

using namespace wrlat;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct GlobalFlags {
  std::uint64_t seed = 0;
  std::optional<double> tol;
  int jobs = 0;
  std::string grid;
  double imax = 2.0;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string vec_str(const IntVector& v) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v(i));
  return s + "]";
}

void print_matrix(const Matrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::cout << "  ";
    for (Eigen::Index j = 0; j < m.cols(); ++j) std::cout << (j ? " " : "") << fmt(m(i, j));
    std::cout << '\n';
  }
}

std::pair<int, int> parse_grid(const std::string& text, std::pair<int, int> fallback) {
  if (text.empty()) return fallback;
  const auto x = text.find('x');
  try {
    if (x == std::string::npos) throw std::invalid_argument("grid");
    std::size_t used_w = 0, used_h = 0;
    const int w = std::stoi(text.substr(0, x), &used_w);
    const std::string hs = text.substr(x + 1);
    const int h = std::stoi(hs, &used_h);
    if (used_w != x || used_h != hs.size()) throw std::invalid_argument("grid");
    return {w, h};
  } catch (const std::exception&) {
    throw InputError("--grid expects WxH, e.g. 200x120");
  }
}

GramMatrix load_gram(const std::string& path, bool normalize) {
  const GramMatrix q = read_lattice_file(path).to_gram();
  return normalize ? normalize_gram(q) : q;
}

void print_minimal(const MinimalVectorSet& m) {
  std::cout << "vectors: " << m.vectors.size() << '\n';
  for (const auto& v : m.vectors) std::cout << "  " << vec_str(v) << '\n';
}

int cmd_systole(const std::string& path, bool normalize) {
  const GramMatrix q = load_gram(path, normalize);
  const MinimalVectorSet m = systole_data(q);
  std::cout << "systole_sq: " << fmt(m.systole_sq) << '\n';
  print_minimal(m);
  std::cout << "stratum: " << span_rank(m).value << '\n';
  return 0;
}

int cmd_minvecs(const std::string& path, bool normalize) {
  print_minimal(systole_data(load_gram(path, normalize)));
  return 0;
}

int cmd_stratum(const std::string& path, bool normalize) {
  const GramMatrix q = load_gram(path, normalize);
  const int s = stratum_index(q).value;
  std::cout << "stratum: " << s << '\n' << "well_rounded: " << (s == q.dim() ? "true" : "false") << '\n';
  return 0;
}

int cmd_retract(const std::string& path, bool normalize, const std::string& trace_path) {
  const GramMatrix q = load_gram(path, normalize);
  RetractionTrace trace = [&] {
    try {
      return well_rounded_retract(q);
    } catch (const NumericalError& e) {
      std::cerr << "flow failed: " << e.what() << '\n';
      std::exit(kExitFail);
    }
  }();
  if (!trace_path.empty()) write_text(trace_path, trace_to_json(trace).dump(2) + "\n");
  std::cout << "events: " << trace.events.size() << '\n';
  for (const auto& ev : trace.events) {
    std::cout << "  t_star " << fmt(ev.t_star) << "  stratum " << ev.stratum_before << " -> " << ev.stratum_after
              << "  new";
    for (const auto& v : ev.new_vectors) std::cout << ' ' << vec_str(v);
    std::cout << '\n';
  }
  std::cout << "final:\n";
  print_matrix(trace.final_gram.matrix());
  return 0;
}

int cmd_embed(const std::string& taus_text, const std::string& out_path) {
  const auto taus = parse_taus(taus_text);
  const SiegelPoint p = product_embed(taus);
  LatticeFile f;
  f.n = 2 * p.genus();
  f.basis = p.basis();
  f.label = "product of " + std::to_string(taus.size()) + " planes";
  if (!out_path.empty()) write_lattice_file(out_path, f);
  std::cout << "basis:\n";
  print_matrix(p.basis());
  std::cout << "gram:\n";
  print_matrix(p.gram().matrix());
  std::cout << "stratum: " << stratum_index(p.gram()).value << '\n';
  std::cout << "bavard: " << (in_bavard_set(p) ? "true" : "false") << '\n';
  return 0;
}

int cmd_bavard(const std::string& taus_text, const std::string& input) {
  if (taus_text.empty() == input.empty()) throw InputError("bavard needs either points or --input");
  SiegelPoint p = [&] {
    if (!input.empty()) {
      const LatticeFile f = read_lattice_file(input);
      if (!f.basis) throw InputError("bavard --input needs a \"basis\" lattice file");
      try {
        return SiegelPoint(*f.basis);
      } catch (const PreconditionError&) {
        throw InputError("basis is not symplectic");
      }
    }
    return product_embed(parse_taus(taus_text));
  }();
  const MinimalVectorSet m = systole_data(p.gram());
  const IntMatrix form = restricted_form(m, standard_J(p.genus()));
  print_minimal(m);
  std::cout << "restricted_form:\n";
  print_matrix(form.cast<double>());
  std::cout << "bavard: " << (form.isZero() ? "false" : "true") << '\n';
  return 0;
}

int cmd_scan(const GlobalFlags& flags, double re_min, double re_max, double im_min, bool anchored,
             const std::string& out_csv, const std::string& out_pgm) {
  GridSpec grid;
  grid.kind = anchored ? GridKind::AnchoredAtHexagonal : GridKind::Rectangular;
  grid.re_min = re_min;
  grid.re_max = re_max;
  grid.im_min = im_min;
  grid.im_max = flags.imax;
  std::tie(grid.width, grid.height) = parse_grid(flags.grid, {200, 120});
  std::vector<ScanPoint> points;
  try {
    points = scan_grid(grid, ScanTarget::ProductWithHexagonal);
  } catch (const PreconditionError& e) {
    throw InputError(e.what());
  }
  const std::string csv = scan_csv(points);
  if (out_csv.empty())
    std::cout << csv;
  else
    write_text(out_csv, csv);
  if (!out_pgm.empty()) write_pgm(out_pgm, grid, points);
  return 0;
}

int cmd_verify(const GlobalFlags& flags, const std::string& suite, std::optional<int> p,
               const std::string& out_csv) {
  VerifyOptions opt;
  opt.seed = flags.seed;
  opt.tol = flags.tol;
  opt.im_max = flags.imax;
  opt.p = p;
  if (!flags.grid.empty()) {
    const auto [w, h] = parse_grid(flags.grid, {0, 0});
    opt.grid_width = w;
    opt.grid_height = h;
  }
  if (!out_csv.empty()) opt.out_csv = out_csv;

  std::vector<VerificationOutcome> outcomes;
  try {
    outcomes = run_suite(suite, opt);
  } catch (const UnknownSuiteError& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  }
  bool all = true;
  for (const auto& o : outcomes) {
    std::cout << "suite " << o.suite << '\n';
    for (const auto& c : o.checks)
      std::cout << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.description << ": measured " << fmt(c.measured)
                << ", bound " << fmt(c.bound) << '\n';
    std::cout << "  => " << (o.passed() ? "PASS" : "FAIL") << '\n';
    all = all && o.passed();
  }
  return all ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wrlat: systoles, well-rounded retraction and symplectic lattice checks"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags flags;
  app.add_option("--seed", flags.seed, "Seed for randomized suites");
  app.add_option("--tol", flags.tol, "Override default check tolerances");
  app.add_option("--jobs", flags.jobs, "Worker threads for scans (speed only)");
  app.add_option("--grid", flags.grid, "Grid size WxH");
  app.add_option("--imax", flags.imax, "Upper bound for Im tau in scans");

  std::string input, trace_path, taus, out, pgm, suite, bavard_input;
  bool normalize = false;
  bool anchored = false;
  double re_min = -0.5, re_max = 0.5, im_min = 0.9 * 0.86602540378443864676;
  std::optional<int> p;

  auto add_lattice_cmd = [&](const char* name, const char* help) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("file", input, "Lattice file (JSON)")->required();
    c->add_flag("--normalize", normalize, "Rescale to covolume 1 first");
    return c;
  };
  auto* systole = add_lattice_cmd("systole", "Systole, minimal vectors and stratum");
  auto* minvecs = add_lattice_cmd("minvecs", "Minimal vectors up to sign");
  auto* stratum = add_lattice_cmd("stratum", "Stratum index i of X_i");
  auto* retract = add_lattice_cmd("retract", "Run the well-rounding flow");
  retract->add_option("--trace", trace_path, "Write the trace as JSON");

  auto* embed = app.add_subcommand("embed", "Product symplectic lattice of points x+yi");
  embed->add_option("taus", taus, "Comma separated points, e.g. \"0+1i, 0.5+0.8660254i\"")->required();
  embed->add_option("--out", out, "Write the basis as a lattice file");

  auto* bavard = app.add_subcommand("bavard", "Membership in the non-isotropic systole set");
  bavard->add_option("taus", taus, "Comma separated points x+yi");
  bavard->add_option("--input", bavard_input, "Lattice file with a symplectic basis");

  auto* scan = app.add_subcommand("scan", "Stratum of product(tau, tau0) over a grid");
  scan->add_option("--re-min", re_min);
  scan->add_option("--re-max", re_max);
  scan->add_option("--im-min", im_min);
  scan->add_flag("--anchored", anchored, "Shift rows so Im tau0 is on the grid");
  scan->add_option("--out", out, "CSV output (default stdout)");
  scan->add_option("--pgm", pgm, "Binary PGM heatmap of strata");

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", suite, "Suite name or 'all'")->required();
  verify->add_option("--p", p, "thm12-odd: only this p");
  verify->add_option("--out", out, "claim-g2: write the scan CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  set_scan_workers(flags.jobs);
  try {
    if (*systole) return cmd_systole(input, normalize);
    if (*minvecs) return cmd_minvecs(input, normalize);
    if (*stratum) return cmd_stratum(input, normalize);
    if (*retract) return cmd_retract(input, normalize, trace_path);
    if (*embed) return cmd_embed(taus, out);
    if (*bavard) return cmd_bavard(taus, bavard_input);
    if (*scan) return cmd_scan(flags, re_min, re_max, im_min, anchored, out, pgm);
    if (*verify) return cmd_verify(flags, suite, p, out);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NotPositiveDefiniteError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}
