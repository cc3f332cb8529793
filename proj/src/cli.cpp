#include "steklov/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "steklov/errors.hpp"
#include "steklov/io.hpp"
#include "steklov/report.hpp"
#include "steklov/verification.hpp"

namespace steklov {

namespace fs = std::filesystem;

namespace {

/// Raised for argument problems found after parsing.
struct Usage : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Global {
  SolverSettings settings;
  std::string out_dir = "out";
  std::string format = "json";
  int jobs = std::max(1u, std::thread::hardware_concurrency());
};

struct SpectrumArgs {
  std::string mode;
  bool disk = false;
  std::optional<double> ell;
  std::optional<double> alpha;
  int k = 6;
  std::string name;
};

struct SweepArgs {
  std::string mode = "intersection";
  std::vector<double> ells;
  std::string ell_range;
  std::vector<double> alphas;
  int k = 4;
  bool svg = false;
  std::string name;
};

struct VerifyArgs {
  std::vector<double> alphas;
  double rho = 1.0;
  bool regular_control = false;
  std::string name = "certificates";
};

struct PlotArgs {
  std::string input;
  int index = 2;
  std::string name;
};

void check_settings(const Global& g) {
  if (!(g.settings.tol > 0.0)) throw Usage("--tol must be positive");
  if (g.settings.n_per_arc < 8 || g.settings.n_per_arc % 2 != 0) {
    throw Usage("--n-per-arc must be an even integer >= 8");
  }
  if (!(g.settings.grading >= 1.0)) throw Usage("--grading must be >= 1");
  if (g.jobs < 1) throw Usage("--jobs must be >= 1");
}

std::string ell_tag(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

DiskPairDomain spectrum_domain(const SpectrumArgs& a) {
  if (a.alpha) {
    if (a.disk || !a.mode.empty() || a.ell) throw Usage("--alpha selects the domain by itself");
    return normalized_domain(*a.alpha);
  }
  if (a.disk || a.mode == "disk") {
    if (a.ell) throw Usage("the disk takes no --ell");
    return DiskPairDomain::unit_disk();
  }
  if (a.mode.empty()) throw Usage("give --mode, --disk or --alpha");
  if (!a.ell) throw Usage("--mode " + a.mode + " needs --ell");
  if (!(*a.ell > 0.0 && *a.ell < 1.0)) {
    throw Usage("--ell must lie in the open range (0,1), got " + format_number(*a.ell));
  }
  return DiskPairDomain::make(*a.ell, parse_domain_mode(a.mode));
}

int cmd_spectrum(const Global& g, const SpectrumArgs& a, std::ostream& out) {
  const DiskPairDomain d = spectrum_domain(a);
  if (a.k < 1) throw Usage("--k must be >= 1");
  const SteklovSpectrum sp = solve_steklov(d, a.k, g.settings);
  std::string stem = a.name;
  if (stem.empty()) {
    stem = std::string("spectrum_") + to_string(d.mode());
    if (d.mode() != DomainMode::Disk) stem += "_" + ell_tag(d.ell());
  }
  const fs::path dir(g.out_dir);
  write_atomic(dir / (stem + ".json"), dump_json(spectrum_to_json(d, g.settings, sp)) + "\n");
  if (g.format == "csv") write_atomic(dir / (stem + ".csv"), spectrum_to_csv(sp));
  for (int i = 0; i < sp.size(); ++i) {
    out << "mu_" << i + 1 << " = " << format_number(sp.eigenvalues[i]) << "  " << sp.labels[i]
        << "  multiplicity " << sp.multiplicity[i] << "\n";
  }
  out << "est_error = " << format_number(sp.est_error) << "\n";
  out << "wrote " << (dir / (stem + ".json")).string() << "\n";
  return 0;
}

std::vector<double> parse_range(const std::string& text) {
  double lo, hi, step;
  char c1, c2;
  std::istringstream in(text);
  if (!(in >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || !(in >> std::ws).eof()) {
    throw Usage("range must look like start:stop:step, got '" + text + "'");
  }
  if (!(step > 0.0)) throw Usage("range step must be positive");
  std::vector<double> v;
  for (int i = 0;; ++i) {
    const double x = std::round((lo + i * step) * 1e12) / 1e12;
    if (x > hi + 1e-12) break;
    v.push_back(x);
    if (i > 100000) throw Usage("range has too many points");
  }
  return v;
}

int cmd_sweep(const Global& g, const SweepArgs& a, std::ostream& out, std::ostream& err) {
  SweepRequest r;
  r.mode = parse_domain_mode(a.mode);
  r.ells = a.ells;
  if (!a.ell_range.empty()) {
    const std::vector<double> more = parse_range(a.ell_range);
    r.ells.insert(r.ells.end(), more.begin(), more.end());
  }
  r.alphas = a.alphas;
  r.k = a.k;
  r.jobs = g.jobs;
  if (r.ells.empty() && r.alphas.empty()) throw Usage("the sweep grid is empty");
  try {
    validate(r);
  } catch (const std::invalid_argument& e) {
    throw Usage(e.what());
  }
  const std::vector<SweepRow> rows = run_sweep(r, g.settings);
  const std::string stem =
      a.name.empty() ? std::string("sweep_") + (r.alphas.empty() ? a.mode : "alpha") : a.name;
  const fs::path dir(g.out_dir);
  const std::string csv = sweep_to_csv(rows, r.k);
  if (g.format == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (const SweepRow& row : rows) {
      nlohmann::json e = {{"ell", row.ell},
                          {"mode", to_string(row.mode)},
                          {"eigenvalues", row.eigenvalues},
                          {"gap_to_1", row.gap_to_1},
                          {"verdict", row.verdict}};
      if (row.alpha) e["alpha"] = *row.alpha;
      j.push_back(e);
    }
    write_atomic(dir / (stem + ".json"), dump_json(j) + "\n");
  }
  write_atomic(dir / (stem + ".csv"), csv);
  if (a.svg) {
    write_atomic(dir / (stem + ".svg"), branches_svg(parse_sweep_csv(csv), "Steklov branches"));
  }
  int failed = 0;
  for (const SweepRow& row : rows) {
    out << "ell=" << format_number(row.ell) << "  " << row.verdict << "\n";
    if (!row.ok()) ++failed;
  }
  out << "wrote " << (dir / (stem + ".csv")).string() << "\n";
  if (failed > 0) {
    err << failed << " of " << rows.size() << " sweep rows failed\n";
    return 2;
  }
  return 0;
}

void check_alpha(double alpha) {
  if (alpha == 1.0) {
    throw Usage(
        "alpha = 1 is the regular case, outside the singular family; run "
        "'verify --regular-control' for the alpha = 1 control");
  }
  if (alpha >= 2.0) {
    throw Usage("no solution of the singular equation exists for alpha >= 2 (got " +
                format_number(alpha) + ")");
  }
  if (!(alpha > 0.0)) throw Usage("alpha must lie in (0,1) or (1,2), got " + format_number(alpha));
}

int cmd_verify(const Global& g, const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  if (a.alphas.empty() && !a.regular_control) throw Usage("give at least one --alpha");
  for (double alpha : a.alphas) check_alpha(alpha);
  if (!(a.rho > 0.0)) throw Usage("--rho must be positive");

  std::vector<Certificate> certs;
  std::string failure;
  const auto run = [&](const std::string& label, const auto& make) {
    try {
      certs.push_back(make());
      const Certificate& c = certs.back();
      out << (c.passed() ? "PASS " : "FAIL ") << c.name << " " << label << "\n";
      if (!c.passed() && failure.empty()) failure = c.name + " " + label + " (" + c.first_failure() + ")";
    } catch (const Error& e) {
      out << "FAIL " << label << ": " << e.what() << "\n";
      if (failure.empty()) failure = label + ": " + e.what();
    }
  };
  for (double alpha : a.alphas) {
    const std::string label = "alpha=" + format_number(alpha);
    const DiskPairDomain d = normalized_domain(alpha);
    run(label, [&] { return check_mu_alpha_identity(alpha); });
    run(label, [&] { return check_fractional_residuals(alpha, a.rho); });
    run(label, [&] {
      Certificate c = check_eigenvalue_placement(d.ell(), d.mode(), g.settings);
      c.params.insert(c.params.begin(), {"alpha", alpha});
      return c;
    });
    run(label, [&] { return morse_index(alpha, g.settings); });
    run(label, [&] { return check_nondegeneracy_pipeline(alpha, g.settings, a.rho); });
  }
  if (a.regular_control) run("alpha=1", [&] { return check_regular_control(g.settings); });

  const fs::path dir(g.out_dir);
  std::string lines;
  if (g.format == "csv") {
    lines = "name,params,check,measured,reference,tolerance,verdict\n";
    for (const Certificate& c : certs) {
      std::string params;
      for (const auto& [k, v] : c.params) {
        if (!params.empty()) params += ';';
        params += k + "=" + std::visit([](const auto& x) {
          if constexpr (std::is_same_v<std::decay_t<decltype(x)>, double>) {
            return format_number(x);
          } else {
            return x;
          }
        }, v);
      }
      for (const Check& k : c.checks) {
        lines += c.name + ',' + params + ',' + k.what + ',' + format_number(k.measured) + ',' +
                 format_number(k.reference) + ',' + format_number(k.tolerance) + ',' +
                 (k.passed() ? "pass" : "fail") + '\n';
      }
    }
    write_atomic(dir / (a.name + ".csv"), lines);
  } else {
    for (const Certificate& c : certs) lines += dump_json(certificate_to_json(c), -1) + "\n";
    write_atomic(dir / (a.name + ".jsonl"), lines);
  }
  if (!failure.empty()) {
    err << "first failing certificate: " << failure << "\n";
    return 2;
  }
  out << "all " << certs.size() << " certificates pass\n";
  return 0;
}

int cmd_plot(const Global& g, const PlotArgs& a, std::ostream& out) {
  if (a.input.empty()) throw Usage("plot needs --input");
  const fs::path in(a.input);
  if (!fs::exists(in)) throw Usage("input file " + a.input + " does not exist");
  const std::string text = read_file(in);
  const std::string stem = a.name.empty() ? in.stem().string() : a.name;
  const fs::path target = fs::path(g.out_dir) / (stem + ".svg");
  if (in.extension() == ".csv") {
    BranchTable t;
    try {
      t = parse_sweep_csv(text);
    } catch (const std::invalid_argument& e) {
      throw Usage(e.what());
    }
    write_atomic(target, branches_svg(t, "Steklov branches"));
  } else {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw Usage("cannot parse " + a.input + ": " + e.what());
    }
    if (j.value("schema", "") != spectrum_schema) {
      throw Usage(a.input + " is not a spectrum document");
    }
    const auto& dom = j.at("domain");
    const DomainMode mode = parse_domain_mode(dom.at("mode").get<std::string>());
    const DiskPairDomain d = mode == DomainMode::Disk
                                 ? DiskPairDomain::unit_disk()
                                 : DiskPairDomain::make(dom.at("ell").get<double>(), mode);
    SolverSettings s;
    s.n_per_arc = j.at("n_per_arc").get<int>();
    s.grading = j.value("grading", s.grading);
    s.panel_order = j.value("panel_order", s.panel_order);
    s.tol = j.at("tol").get<double>();
    const int k = static_cast<int>(j.at("eigenvalues").size());
    if (a.index < 1 || a.index > k) {
      throw Usage("--index must lie in [1," + std::to_string(k) + "]");
    }
    const BoundaryDiscretization b = discretize(d, s.n_per_arc, s.grading, s.panel_order);
    const SteklovSpectrum sp = compute_spectrum(b, k, s.tol);
    const double threshold = std::max(10.0 * sp.est_error, 1e-10);
    const std::vector<Point> marks =
        boundary_nodal_points(sp.eigenvectors.col(a.index - 1), b, threshold);
    std::string title = std::string(to_string(mode));
    if (mode != DomainMode::Disk) title += " ell=" + ell_tag(d.ell());
    title += ", eigenfunction " + std::to_string(a.index) + " (mu=" +
             ell_tag(sp.eigenvalues[a.index - 1]) + ")";
    write_atomic(target, domain_svg(d, marks, title));
    out << marks.size() << " nodal points\n";
  }
  out << "wrote " << target.string() << "\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Steklov spectra of two-disk domains and singular Liouville bubble certificates",
               "steklov"};
  app.set_config("--config", "", "key=value configuration file; flags take precedence");
  app.require_subcommand(1);
  app.fallthrough();

  Global g;
  if (const char* env = std::getenv(out_dir_env); env != nullptr && *env != '\0') g.out_dir = env;
  app.add_option("--tol", g.settings.tol, "solver accuracy target")->capture_default_str();
  app.add_option("--n-per-arc", g.settings.n_per_arc, "panels per boundary arc")
      ->capture_default_str();
  app.add_option("--grading", g.settings.grading, "corner grading exponent")->capture_default_str();
  app.add_option("--panel-order", g.settings.panel_order, "Gauss points per panel")
      ->capture_default_str();
  app.add_option("--out", g.out_dir,
                 std::string("output directory (default from ") + out_dir_env + ", else out)");
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--jobs", g.jobs, "worker threads for sweeps")->capture_default_str();

  SpectrumArgs sa;
  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues of one domain");
  spectrum->add_option("--mode", sa.mode, "intersection, union or disk")
      ->check(CLI::IsMember({"intersection", "union", "disk"}));
  spectrum->add_flag("--disk", sa.disk, "the unit disk");
  spectrum->add_option("--ell", sa.ell, "center offset in (0,1)");
  spectrum->add_option("--alpha", sa.alpha, "use the normalized domain of this exponent");
  spectrum->add_option("--k", sa.k, "number of eigenvalues")->capture_default_str();
  spectrum->add_option("--name", sa.name, "output file stem");

  SweepArgs wa;
  auto* sweep = app.add_subcommand("sweep", "eigenvalue branches over an ell or alpha grid");
  sweep->add_option("--mode", wa.mode, "intersection or union")
      ->check(CLI::IsMember({"intersection", "union"}))
      ->capture_default_str();
  sweep->add_option("--ell", wa.ells, "grid values (repeat or comma separate)")->delimiter(',');
  sweep->add_option("--ell-range", wa.ell_range, "grid as start:stop:step");
  sweep->add_option("--alpha", wa.alphas, "alpha grid; each alpha picks its normalized domain")
      ->delimiter(',');
  sweep->add_option("--k", wa.k, "eigenvalues per row")->capture_default_str();
  sweep->add_flag("--svg", wa.svg, "also write an SVG of the branches");
  sweep->add_option("--name", wa.name, "output file stem");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run the certificates for each alpha");
  verify->add_option("--alpha", va.alphas, "exponents in (0,1) or (1,2)")->delimiter(',');
  verify->add_option("--rho", va.rho, "bubble scale")->capture_default_str();
  verify->add_flag("--regular-control", va.regular_control, "add the alpha = 1 disk control");
  verify->add_option("--name", va.name, "output file stem")->capture_default_str();

  PlotArgs pa;
  auto* plot = app.add_subcommand("plot", "SVG of a spectrum JSON or a sweep CSV");
  plot->add_option("--input", pa.input, "spectrum .json or sweep .csv");
  plot->add_option("--index", pa.index, "eigenfunction to mark, 1-based")->capture_default_str();
  plot->add_option("--name", pa.name, "output file stem");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    check_settings(g);
    if (spectrum->parsed()) return cmd_spectrum(g, sa, out);
    if (sweep->parsed()) return cmd_sweep(g, wa, out, err);
    if (verify->parsed()) return cmd_verify(g, va, out, err);
    return cmd_plot(g, pa, out);
  } catch (const NotConverged& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const QuadratureNotConverged& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace steklov
