#include "steklov/report.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "steklov/errors.hpp"
#include "steklov/io.hpp"
#include "steklov/verification.hpp"

namespace steklov {

namespace {

void check_grid(const std::vector<double>& g, double lo, double hi, const char* what) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!std::isfinite(g[i]) || !(g[i] > lo && g[i] < hi)) {
      throw std::invalid_argument(std::string(what) + " grid value " + format_number(g[i]) +
                                  " is outside (" + format_number(lo) + "," + format_number(hi) +
                                  ")");
    }
    if (i > 0 && !(g[i] > g[i - 1])) {
      throw std::invalid_argument(std::string(what) + " grid must be strictly increasing");
    }
  }
}

std::string clean(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

SweepRow solve_row(std::optional<double> alpha, double ell, DomainMode mode, int k,
                   const SolverSettings& s) {
  SweepRow row{alpha, ell, mode, {}, std::nan(""), ""};
  try {
    const BoundaryDiscretization b =
        discretize(DiskPairDomain::make(ell, mode), s.n_per_arc, s.grading, s.panel_order);
    const SteklovSpectrum sp = compute_spectrum(b, std::max(k, 4), s.tol);
    row.eigenvalues.assign(sp.eigenvalues.begin(), sp.eigenvalues.begin() + k);
    row.gap_to_1 = gap_around_one(sp);
    const Certificate c = placement_from_spectrum(b, sp, s);
    row.verdict = c.passed() ? "pass" : "fail:" + clean(c.first_failure());
  } catch (const std::exception& e) {
    row.eigenvalues.clear();
    row.verdict = "error:" + clean(e.what());
  }
  return row;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                         "#8c564b", "#e377c2", "#17becf"};

std::string svg_header(int w, int h, const std::string& title) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<!-- steklov plot v1 -->\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(w) + "\" height=\"" + std::to_string(h) + "\" viewBox=\"0 0 " +
         std::to_string(w) + " " + std::to_string(h) + "\">\n<title>" + title +
         "</title>\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

}  // namespace

void validate(const SweepRequest& r) {
  if (r.mode == DomainMode::Disk) throw std::invalid_argument("a sweep needs a two-disk mode");
  if (r.k < 1) throw std::invalid_argument("k must be at least 1");
  if (r.jobs < 1) throw std::invalid_argument("jobs must be at least 1");
  if (r.ells.empty() == r.alphas.empty()) {
    throw std::invalid_argument("give exactly one non-empty grid (ell or alpha)");
  }
  check_grid(r.ells, 0.0, 1.0, "ell");
  check_grid(r.alphas, 0.0, 2.0, "alpha");
  for (double a : r.alphas) {
    if (a == 1.0) throw std::invalid_argument("alpha grid must not contain 1");
  }
}

std::vector<SweepRow> run_sweep(const SweepRequest& r, const SolverSettings& s) {
  validate(r);
  const bool by_alpha = !r.alphas.empty();
  const std::size_t n = by_alpha ? r.alphas.size() : r.ells.size();
  std::vector<SweepRow> rows(n);
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      if (by_alpha) {
        const DiskPairDomain d = normalized_domain(r.alphas[i]);
        rows[i] = solve_row(r.alphas[i], d.ell(), d.mode(), r.k, s);
      } else {
        rows[i] = solve_row(std::nullopt, r.ells[i], r.mode, r.k, s);
      }
    }
  };
  const int threads = static_cast<int>(std::min<std::size_t>(r.jobs, n));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();
  return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows, int k) {
  const bool by_alpha = !rows.empty() && rows.front().alpha.has_value();
  std::string out = by_alpha ? "alpha,ell" : "ell";
  for (int i = 1; i <= k; ++i) out += ",mu_" + std::to_string(i);
  out += ",gap_to_1,verdicts\n";
  for (const SweepRow& row : rows) {
    if (by_alpha) out += format_number(*row.alpha) + ',';
    out += format_number(row.ell);
    for (int i = 0; i < k; ++i) {
      out += ',';
      out += i < static_cast<int>(row.eigenvalues.size()) ? format_number(row.eigenvalues[i])
                                                          : "nan";
    }
    out += ',' + format_number(row.gap_to_1) + ',' + row.verdict + '\n';
  }
  return out;
}

BranchTable parse_sweep_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty sweep file");
  std::vector<std::string> header;
  {
    std::istringstream h(line);
    for (std::string cell; std::getline(h, cell, ',');) header.push_back(cell);
  }
  const auto ell_col = std::find(header.begin(), header.end(), "ell") - header.begin();
  std::vector<int> mu_cols;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i].rfind("mu_", 0) == 0) mu_cols.push_back(static_cast<int>(i));
  }
  if (ell_col == static_cast<long>(header.size()) || mu_cols.empty()) {
    throw std::invalid_argument("sweep file needs ell and mu_ columns");
  }
  BranchTable t;
  t.branches.resize(mu_cols.size());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream c(line);
    for (std::string cell; std::getline(c, cell, ',');) cells.push_back(cell);
    if (cells.size() != header.size()) throw std::invalid_argument("ragged sweep row: " + line);
    try {
      t.ell.push_back(std::stod(cells[ell_col]));
      for (std::size_t b = 0; b < mu_cols.size(); ++b) {
        t.branches[b].push_back(std::stod(cells[mu_cols[b]]));
      }
    } catch (const std::logic_error&) {
      throw std::invalid_argument("unreadable number in sweep row: " + line);
    }
  }
  if (t.ell.empty()) throw std::invalid_argument("sweep file has no rows");
  return t;
}

std::vector<Point> boundary_nodal_points(const Eigen::VectorXd& v, const BoundaryDiscretization& b,
                                         double threshold) {
  std::vector<int> idx;
  for (int i = 0; i < b.size(); ++i) {
    if (std::abs(v[i]) > threshold) idx.push_back(i);
  }
  std::vector<Point> out;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const int i = idx[k];
    const int j = idx[(k + 1) % idx.size()];
    if ((v[i] > 0.0) == (v[j] > 0.0)) continue;
    const double t = v[i] / (v[i] - v[j]);
    if (b.node_arc[i] == b.node_arc[j] && j > i) {
      const Arc& a = b.arcs[b.node_arc[i]];
      out.push_back(a.at(b.angles[i] + t * (b.angles[j] - b.angles[i])));
    } else {
      out.push_back(b.nodes[i] + t * (b.nodes[j] - b.nodes[i]));
    }
  }
  return out;
}

std::string domain_svg(const DiskPairDomain& d, const std::vector<Point>& marks,
                       const std::string& title) {
  const int size = 480;
  const double extent = d.scale() * (1.0 + (d.mode() == DomainMode::Union ? d.ell() : 0.0)) * 1.1;
  const double k = size / (2.0 * extent);
  const auto X = [&](double x) { return num(size / 2.0 + k * x); };
  const auto Y = [&](double y) { return num(size / 2.0 - k * y); };
  std::string s = svg_header(size, size, title);
  s += "<line x1=\"0\" y1=\"" + Y(0) + "\" x2=\"" + std::to_string(size) + "\" y2=\"" + Y(0) +
       "\" stroke=\"#ccc\"/>\n<line x1=\"" + X(0) + "\" y1=\"0\" x2=\"" + X(0) + "\" y2=\"" +
       std::to_string(size) + "\" stroke=\"#ccc\"/>\n";
  s += "<path fill=\"#eef3fb\" stroke=\"black\" stroke-width=\"2\" d=\"";
  bool first = true;
  for (const Arc& a : d.arcs()) {
    const int steps = 128;
    for (int i = 0; i <= steps; ++i) {
      const Point p = a.at(a.angle_from + (a.angle_to - a.angle_from) * i / steps);
      s += (first ? "M" : " L") + X(p.x) + "," + Y(p.y);
      first = false;
    }
  }
  s += " Z\"/>\n";
  for (const Point& p : marks) {
    s += "<circle class=\"nodal\" cx=\"" + X(p.x) + "\" cy=\"" + Y(p.y) +
         "\" r=\"6\" fill=\"#d62728\"/>\n";
  }
  s += "<text x=\"10\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" + title +
       "</text>\n</svg>\n";
  return s;
}

std::string branches_svg(const BranchTable& t, const std::string& title) {
  const int w = 640, h = 420, m = 50;
  double top = 1.2;
  for (const auto& br : t.branches) {
    for (double v : br) {
      if (std::isfinite(v)) top = std::max(top, v);
    }
  }
  top *= 1.05;
  const auto X = [&](double x) { return num(m + (w - 2 * m) * x); };
  const auto Y = [&](double y) { return num(h - m - (h - 2 * m) * y / top); };
  std::string s = svg_header(w, h, title);
  s += "<rect x=\"" + std::to_string(m) + "\" y=\"" + std::to_string(m) + "\" width=\"" +
       std::to_string(w - 2 * m) + "\" height=\"" + std::to_string(h - 2 * m) +
       "\" fill=\"none\" stroke=\"black\"/>\n";
  s += "<line class=\"reference\" x1=\"" + X(0) + "\" y1=\"" + Y(1) + "\" x2=\"" + X(1) +
       "\" y2=\"" + Y(1) + "\" stroke=\"gray\" stroke-dasharray=\"6,4\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double x = i / 4.0;
    s += "<text x=\"" + X(x) + "\" y=\"" + std::to_string(h - m + 18) +
         "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" + num(x) +
         "</text>\n";
  }
  s += "<text x=\"" + std::to_string(m - 8) + "\" y=\"" + Y(1) +
       "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">1</text>\n";
  for (std::size_t b = 0; b < t.branches.size(); ++b) {
    s += "<polyline class=\"branch\" fill=\"none\" stroke-width=\"2\" stroke=\"" +
         std::string(palette[b % 8]) + "\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < t.ell.size(); ++i) {
      if (!std::isfinite(t.branches[b][i])) continue;
      s += (first ? "" : " ") + X(t.ell[i]) + "," + Y(t.branches[b][i]);
      first = false;
    }
    s += "\"/>\n";
  }
  s += "<text x=\"" + std::to_string(m) + "\" y=\"30\" font-family=\"sans-serif\" "
       "font-size=\"14\">" + title + "</text>\n</svg>\n";
  return s;
}

}  // namespace steklov
