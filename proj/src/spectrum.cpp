#include "steklov/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "steklov/assembly.hpp"
#include "steklov/errors.hpp"

namespace steklov {

namespace {

constexpr double pure_share = 0.99;
constexpr int max_subspace_iterations = 400;
constexpr double ritz_tol = 1e-13;

struct Orbit {
  std::array<int, 4> nodes;
  std::array<double, 4> signs;
};

Orbit orbit(const BoundaryDiscretization& b, int j, Sector s) {
  const double sx = s.odd_x ? -1.0 : 1.0;
  const double sy = s.odd_y ? -1.0 : 1.0;
  const int mx = b.mirror_x[j];
  const int my = b.mirror_y[j];
  return {{j, mx, my, b.mirror_x[my]}, {1.0, sx, sy, sx * sy}};
}

// Folds the columns of rows assembled at the fundamental nodes.
Eigen::MatrixXd fold(const Eigen::MatrixXd& rows, const BoundaryDiscretization& b,
                     const std::vector<int>& fundamental, Sector s) {
  const auto m = static_cast<Eigen::Index>(fundamental.size());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index c = 0; c < m; ++c) {
    const Orbit o = orbit(b, fundamental[c], s);
    for (int k = 0; k < 4; ++k) out.col(c) += o.signs[k] * rows.col(o.nodes[k]);
  }
  return out;
}

Eigen::MatrixXd dtn_from(Eigen::MatrixXd single, Eigen::MatrixXd dbl) {
  dbl.diagonal().array() += 0.5;
  return single.partialPivLu().solve(dbl);
}

struct SectorOperators {
  std::vector<int> fundamental;
  std::array<Eigen::MatrixXd, 4> dtn;  // Sector::all() order
};

SectorOperators sector_operators(const BoundaryDiscretization& b) {
  SectorOperators out;
  out.fundamental = fundamental_nodes(b);
  const LayerOperators ops = assemble_layer_rows(b, out.fundamental);
  const auto sectors = Sector::all();
  for (int s = 0; s < 4; ++s) {
    out.dtn[s] = dtn_from(fold(ops.single_layer, b, out.fundamental, sectors[s]),
                          fold(ops.double_layer, b, out.fundamental, sectors[s]));
  }
  return out;
}

struct Eigenpairs {
  std::vector<double> values;  // ascending real parts
  Eigen::MatrixXd vectors;     // matching columns
  double max_imag = 0.0;       // over the returned values
};

// Sorted real parts of eigenvalues of a real matrix with real parts of the
// matching eigenvectors.
Eigenpairs sorted_pairs(const Eigen::MatrixXd& a, int count, bool vectors) {
  const Eigen::EigenSolver<Eigen::MatrixXd> es(a, vectors);
  const Eigen::VectorXcd& ev = es.eigenvalues();
  std::vector<int> order(ev.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return ev[x].real() < ev[y].real(); });
  Eigenpairs out;
  count = std::min<int>(count, static_cast<int>(ev.size()));
  if (vectors) out.vectors.resize(a.rows(), count);
  for (int i = 0; i < count; ++i) {
    out.values.push_back(ev[order[i]].real());
    out.max_imag = std::max(out.max_imag, std::abs(ev[order[i]].imag()));
    if (vectors) out.vectors.col(i) = es.eigenvectors().col(order[i]).real().normalized();
  }
  return out;
}

// Lowest eigenpairs by shift-invert block iteration with Rayleigh-Ritz
// extraction. The DtN spectrum is nonnegative, so the shift -1 keeps the
// shifted matrix well away from singular. Falls back to a dense solve when
// the Ritz residuals stall.
Eigenpairs lowest_eigenpairs(const Eigen::MatrixXd& d, int count) {
  const Eigen::Index m = d.rows();
  const int block = static_cast<int>(std::min<Eigen::Index>(m, 2 * count + 8));
  if (block >= m / 2) return sorted_pairs(d, count, true);

  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(d + Eigen::MatrixXd::Identity(m, m));
  Eigen::MatrixXd q(m, block);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (int c = 0; c < block; ++c) {
      q(i, c) = std::sin(1.0 + 0.37 * static_cast<double>(i) * (c + 1) + 0.11 * c);
    }
  }
  const double scale = d.lpNorm<Eigen::Infinity>();
  for (int it = 0; it < max_subspace_iterations; ++it) {
    q = Eigen::HouseholderQR<Eigen::MatrixXd>(lu.solve(q)).householderQ() *
        Eigen::MatrixXd::Identity(m, block);
    if (it % 4 != 3) continue;
    const Eigen::MatrixXd dq = d * q;
    Eigenpairs ritz = sorted_pairs(q.transpose() * dq, count, true);
    bool converged = true;
    for (int i = 0; i < count && converged; ++i) {
      const Eigen::VectorXd y = ritz.vectors.col(i);
      const double r = (dq * y - ritz.values[i] * (q * y)).norm();
      converged = r <= ritz_tol * scale;
    }
    if (converged) {
      ritz.vectors = q * ritz.vectors;
      return ritz;
    }
  }
  return sorted_pairs(d, count, true);
}

double weighted_dot(const Eigen::VectorXd& u, const Eigen::VectorXd& v,
                    const Eigen::VectorXd& w) {
  return (u.array() * v.array() * w.array()).sum();
}

Eigen::VectorXd unfold(const Eigen::VectorXd& vf, const BoundaryDiscretization& b,
                       const std::vector<int>& fundamental, Sector s) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(b.size());
  for (std::size_t c = 0; c < fundamental.size(); ++c) {
    const Orbit o = orbit(b, fundamental[c], s);
    for (int k = 0; k < 4; ++k) v[o.nodes[k]] = o.signs[k] * vf[static_cast<Eigen::Index>(c)];
  }
  return v;
}

Eigen::VectorXd weights_of(const BoundaryDiscretization& b) {
  return Eigen::Map<const Eigen::VectorXd>(b.weights.data(), b.size());
}

// Boundary-L2 normalization and the sign convention: int psi x >= 0, or
// psi >= 0 at the first node when that moment vanishes.
void normalize(Eigen::VectorXd& v, const BoundaryDiscretization& b) {
  const Eigen::VectorXd w = weights_of(b);
  v /= std::sqrt(weighted_dot(v, v, w));
  Eigen::VectorXd x(b.size());
  for (int i = 0; i < b.size(); ++i) x[i] = b.nodes[i].x;
  const double moment = weighted_dot(v, x, w);
  const double floor = 1e-8 * std::sqrt(weighted_dot(x, x, w));
  if (std::abs(moment) > floor ? moment < 0.0 : v[0] < 0.0) v = -v;
}

BoundaryDiscretization coarse_of(const BoundaryDiscretization& b) {
  int n = std::max(8, (b.n_per_arc / 2) & ~1);
  int order = b.panel_order;
  if (n == b.n_per_arc) order = std::max(2, order - 2);
  return discretize(b.domain, n, b.grading_exponent, order);
}

void check_k(const BoundaryDiscretization& b, int k) {
  if (k < 1 || k > b.size() / 4) {
    throw std::invalid_argument("k must lie in [1, " + std::to_string(b.size() / 4) + "]");
  }
}

struct Candidate {
  double value;
  int sector;
  int index;  // within the sector's pairs
};

std::vector<Candidate> merged(const std::array<Eigenpairs, 4>& per_sector, int count) {
  std::vector<Candidate> all;
  for (int s = 0; s < 4; ++s) {
    const auto& values = per_sector[s].values;
    for (std::size_t i = 0; i < values.size(); ++i) {
      all.push_back({values[i], s, static_cast<int>(i)});
    }
  }
  std::stable_sort(all.begin(), all.end(),
                   [](const Candidate& a, const Candidate& c) { return a.value < c.value; });
  all.resize(std::min<std::size_t>(all.size(), static_cast<std::size_t>(count)));
  return all;
}

void finish(SteklovSpectrum& s) {
  const int k = s.size();
  // The constant mode comes out as roundoff of either sign; the operator is
  // nonnegative, so clip tiny negatives.
  for (double& mu : s.eigenvalues) {
    if (mu < 0.0 && -mu <= 10.0 * s.est_error + 1e-10) mu = 0.0;
  }
  s.gaps.clear();
  for (int i = 0; i + 1 < k; ++i) s.gaps.push_back(s.eigenvalues[i + 1] - s.eigenvalues[i]);
  const double tol = s.gap_tol();
  std::vector<double> chain = s.eigenvalues;
  chain.push_back(s.next_eigenvalue);
  s.multiplicity.assign(k, 1);
  int start = 0;
  for (int i = 1; i <= k; ++i) {
    if (i == k || chain[i] - chain[i - 1] >= tol) {
      // chain[start..i-1] is a cluster; extend it by the trailing value.
      const bool open_end = i == k && chain[k] - chain[k - 1] < tol;
      const int size = i - start + (open_end ? 1 : 0);
      for (int j = start; j < i; ++j) s.multiplicity[j] = size;
      start = i;
    }
  }
}

void check_converged(const SteklovSpectrum& s, double tol) {
  if (s.est_error > tol) {
    throw NotConverged("eigenvalues moved by " + std::to_string(s.est_error) +
                       " under refinement, above tol " + std::to_string(tol));
  }
}

}  // namespace

std::string Sector::name() const {
  return std::string(odd_x ? "o" : "e") + (odd_y ? "o" : "e");
}

Sector Sector::parse(const std::string& text) {
  if (text.size() == 2 && (text[0] == 'e' || text[0] == 'o') &&
      (text[1] == 'e' || text[1] == 'o')) {
    return {text[0] == 'o', text[1] == 'o'};
  }
  throw std::invalid_argument("unknown sector '" + text + "' (expected ee, eo, oe or oo)");
}

std::array<Sector, 4> Sector::all() {
  return {Sector{false, false}, Sector{false, true}, Sector{true, false}, Sector{true, true}};
}

double SteklovSpectrum::gap_tol() const { return std::max(1e-3, 50.0 * est_error); }

std::vector<int> fundamental_nodes(const BoundaryDiscretization& b) {
  std::vector<int> out;
  for (int i = 0; i < b.size(); ++i) {
    if (b.nodes[i].x > 0.0 && b.nodes[i].y > 0.0) out.push_back(i);
  }
  if (4 * static_cast<int>(out.size()) != b.size()) {
    throw std::logic_error("discretization is not symmetric under both reflections");
  }
  return out;
}

Eigen::MatrixXd dtn_matrix(const BoundaryDiscretization& b) {
  const LayerOperators ops = assemble_layer_operators(b);
  return dtn_from(ops.single_layer, ops.double_layer);
}

Eigen::MatrixXd sector_dtn_matrix(const BoundaryDiscretization& b, Sector sector) {
  const std::vector<int> fundamental = fundamental_nodes(b);
  const LayerOperators ops = assemble_layer_rows(b, fundamental);
  return dtn_from(fold(ops.single_layer, b, fundamental, sector),
                  fold(ops.double_layer, b, fundamental, sector));
}

SteklovSpectrum compute_spectrum(const BoundaryDiscretization& b, int k, double tol) {
  check_k(b, k);
  const SectorOperators fine = sector_operators(b);
  const SectorOperators coarse = sector_operators(coarse_of(b));
  std::array<Eigenpairs, 4> fine_ev;
  std::array<Eigenpairs, 4> coarse_ev;
  for (int s = 0; s < 4; ++s) {
    fine_ev[s] = lowest_eigenpairs(fine.dtn[s], k + 1);
    coarse_ev[s] = lowest_eigenpairs(coarse.dtn[s], k);
  }
  const std::vector<Candidate> picked = merged(fine_ev, k + 1);
  const std::vector<Candidate> reference = merged(coarse_ev, k);

  SteklovSpectrum out;
  out.eigenvectors.resize(b.size(), k);
  const auto sectors = Sector::all();
  for (int i = 0; i < k; ++i) {
    const Candidate& c = picked[i];
    out.est_error = std::max({out.est_error, std::abs(c.value - reference[i].value),
                              fine_ev[c.sector].max_imag});
    Eigen::VectorXd v =
        unfold(fine_ev[c.sector].vectors.col(c.index), b, fine.fundamental, sectors[c.sector]);
    normalize(v, b);
    out.eigenvalues.push_back(c.value);
    out.eigenvectors.col(i) = v;
    out.labels.push_back(sectors[c.sector].name());
  }
  out.next_eigenvalue = picked[k].value;
  finish(out);
  check_converged(out, tol);
  return out;
}

SteklovSpectrum compute_sector_spectrum(const BoundaryDiscretization& b, Sector sector, int k,
                                        double tol) {
  check_k(b, k);
  const std::vector<int> fundamental = fundamental_nodes(b);
  const Eigenpairs fine = lowest_eigenpairs(sector_dtn_matrix(b, sector), k + 1);
  const Eigenpairs coarse = lowest_eigenpairs(sector_dtn_matrix(coarse_of(b), sector), k);

  SteklovSpectrum out;
  out.eigenvectors.resize(b.size(), k);
  out.est_error = fine.max_imag;
  for (int i = 0; i < k; ++i) {
    out.est_error = std::max(out.est_error, std::abs(fine.values[i] - coarse.values[i]));
    Eigen::VectorXd v = unfold(fine.vectors.col(i), b, fundamental, sector);
    normalize(v, b);
    out.eigenvalues.push_back(fine.values[i]);
    out.eigenvectors.col(i) = v;
    out.labels.push_back(sector.name());
  }
  out.next_eigenvalue = fine.values[k];
  finish(out);
  check_converged(out, tol);
  return out;
}

SteklovSpectrum solve_steklov(const DiskPairDomain& d, int k, const SolverSettings& settings) {
  const BoundaryDiscretization b =
      discretize(d, settings.n_per_arc, settings.grading, settings.panel_order);
  return compute_spectrum(b, k, settings.tol);
}

std::array<double, 4> sector_shares(const Eigen::VectorXd& v, const BoundaryDiscretization& b) {
  const Eigen::VectorXd w = weights_of(b);
  const double total = weighted_dot(v, v, w);
  std::array<double, 4> shares{};
  const auto sectors = Sector::all();
  for (int s = 0; s < 4; ++s) {
    Eigen::VectorXd p(b.size());
    for (int i = 0; i < b.size(); ++i) {
      const Orbit o = orbit(b, i, sectors[s]);
      double acc = 0.0;
      for (int k = 0; k < 4; ++k) acc += o.signs[k] * v[o.nodes[k]];
      p[i] = 0.25 * acc;
    }
    shares[s] = total > 0.0 ? weighted_dot(p, p, w) / total : 0.0;
  }
  return shares;
}

std::vector<std::string> classify_symmetry(const SteklovSpectrum& s,
                                           const BoundaryDiscretization& b) {
  std::vector<std::string> labels;
  const auto sectors = Sector::all();
  for (int i = 0; i < s.eigenvectors.cols(); ++i) {
    const auto shares = sector_shares(s.eigenvectors.col(i), b);
    const auto best = std::max_element(shares.begin(), shares.end());
    labels.push_back(*best >= pure_share ? sectors[best - shares.begin()].name() : "mixed");
  }
  return labels;
}

void resplit_clusters(SteklovSpectrum& s, const BoundaryDiscretization& b) {
  s.labels = classify_symmetry(s, b);
  const Eigen::VectorXd w = weights_of(b);
  const Eigen::VectorXd sw = w.array().sqrt();
  const auto sectors = Sector::all();
  int start = 0;
  while (start < s.size()) {
    int end = start + 1;
    while (end < s.size() && s.eigenvalues[end] - s.eigenvalues[end - 1] < s.gap_tol()) ++end;
    const bool mixed = std::any_of(s.labels.begin() + start, s.labels.begin() + end,
                                   [](const std::string& l) { return l == "mixed"; });
    if (mixed) {
      // Orthonormal basis of each sector's projection of the cluster span.
      const int m = end - start;
      std::vector<std::pair<Eigen::VectorXd, int>> pure;
      for (int sec = 0; sec < 4; ++sec) {
        Eigen::MatrixXd proj(b.size(), m);
        for (int c = 0; c < m; ++c) {
          const Eigen::VectorXd v = s.eigenvectors.col(start + c);
          for (int i = 0; i < b.size(); ++i) {
            const Orbit o = orbit(b, i, sectors[sec]);
            double acc = 0.0;
            for (int k = 0; k < 4; ++k) acc += o.signs[k] * v[o.nodes[k]];
            proj(i, c) = 0.25 * acc * sw[i];
          }
        }
        const Eigen::JacobiSVD<Eigen::MatrixXd> svd(proj, Eigen::ComputeThinU);
        for (int c = 0; c < m; ++c) {
          if (svd.singularValues()[c] > 0.1) {
            pure.emplace_back(svd.matrixU().col(c).cwiseQuotient(sw), sec);
          }
        }
      }
      if (static_cast<int>(pure.size()) == m) {
        for (int c = 0; c < m; ++c) {
          Eigen::VectorXd v = pure[c].first;
          normalize(v, b);
          s.eigenvectors.col(start + c) = v;
          s.labels[start + c] = sectors[pure[c].second].name();
        }
      }
    }
    start = end;
  }
}

int boundary_nodal_count(const Eigen::VectorXd& v, const BoundaryDiscretization& b,
                         double threshold) {
  std::vector<int> signs;
  for (int i = 0; i < b.size(); ++i) {
    if (std::abs(v[i]) > threshold) signs.push_back(v[i] > 0.0 ? 1 : -1);
  }
  int changes = 0;
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (signs[i] != signs[(i + 1) % signs.size()]) ++changes;
  }
  return changes;
}

HarmonicExtension::HarmonicExtension(const BoundaryDiscretization& b,
                                     const Eigen::VectorXd& trace)
    : b_(b), trace_(trace) {
  flux_ = dtn_matrix(b) * trace;
}

double HarmonicExtension::operator()(Point q) const {
  if (!b_.domain.contains(q)) throw TooCloseToBoundary("point is not inside the domain");
  int nearest = 0;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < b_.size(); ++i) {
    const double d = distance(q, b_.nodes[i]);
    if (d < best) {
      best = d;
      nearest = i;
    }
  }
  if (best <= b_.panel_length(b_.node_panel[nearest])) {
    throw TooCloseToBoundary("distance " + std::to_string(best) +
                             " to the boundary is within one panel length");
  }
  const PotentialRows rows = potential_rows(b_, q);
  double value = 0.0;
  for (int j = 0; j < b_.size(); ++j) {
    value += rows.single_layer[j] * flux_[j] - rows.double_layer[j] * trace_[j];
  }
  return value;
}

double interior_eval(const Eigen::VectorXd& v, const BoundaryDiscretization& b, Point q) {
  return HarmonicExtension(b, v)(q);
}

}  // namespace steklov
