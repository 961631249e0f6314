#include "molsym/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <optional>
#include <random>
#include <thread>

namespace molsym {

std::string to_string(StationaryKind kind) {
  switch (kind) {
    case StationaryKind::Minimum: return "minimum";
    case StationaryKind::Saddle: return "saddle";
    case StationaryKind::Maximum: return "maximum";
    case StationaryKind::Degenerate: return "degenerate";
  }
  return "?";
}

int rigid_mode_count(const Configuration& config) {
  if (config.size() == 1) return 3;
  return is_collinear(config) ? 5 : 6;
}

Eigen::MatrixXd rigid_motion_basis(const Configuration& config) {
  const int n = config.size();
  const Eigen::Vector3d c = centroid(config);
  Eigen::MatrixXd gen(3 * n, 6);
  gen.setZero();
  for (int k = 0; k < 3; ++k) {
    for (int j = 0; j < n; ++j) {
      gen(3 * j + k, k) = 1.0;  // translation along e_k
      const Eigen::Vector3d arm = config.positions[j] - c;
      gen.col(3 + k).segment<3>(3 * j) = Eigen::Vector3d::Unit(k).cross(arm);
    }
  }
  // Orthonormalize and drop the rank-deficient rotation(s) of collinear input.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(gen, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-10 * sv(0)) ++rank;
  return svd.matrixU().leftCols(rank);
}

Eigen::MatrixXd rigid_complement_basis(const Configuration& config) {
  const Eigen::MatrixXd rigid = rigid_motion_basis(config);
  const int dim = static_cast<int>(rigid.rows());
  const int r = static_cast<int>(rigid.cols());
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(rigid);
  const Eigen::MatrixXd full_q = qr.householderQ() * Eigen::MatrixXd::Identity(dim, dim);
  return full_q.rightCols(dim - r);
}

namespace {

// |s(mu)| for the regularized root step s_i = -g_i lam_i / (lam_i^2 + mu).
double step_norm(const Eigen::VectorXd& ghat, const Eigen::VectorXd& lam, double mu) {
  double n2 = 0.0;
  for (int i = 0; i < ghat.size(); ++i) {
    const double denom = lam(i) * lam(i) + mu;
    if (denom > 0.0) {
      const double s = ghat(i) * lam(i) / denom;
      n2 += s * s;
    }
  }
  return std::sqrt(n2);
}

Eigen::VectorXd regularized_step(const Eigen::VectorXd& ghat, const Eigen::VectorXd& lam,
                                 double mu) {
  Eigen::VectorXd s = Eigen::VectorXd::Zero(ghat.size());
  for (int i = 0; i < ghat.size(); ++i) {
    const double denom = lam(i) * lam(i) + mu;
    if (denom > 0.0) s(i) = -ghat(i) * lam(i) / denom;
  }
  return s;
}

struct Evaluation {
  Eigen::VectorXd gradient;
  double merit;  // 0.5 |grad|^2
};

}  // namespace

StationaryPoint find_stationary_point(const PotentialModel& model, const Configuration& init,
                                      const OptimizerOptions& opts) {
  if (init.size() != model.spec().nucleus_count())
    throw DimensionError("initial configuration does not match molecule spec");

  const double scale = model.length_scale();
  const double tol = opts.gradient_tolerance * (model.units().is_si() ? model.gradient_scale() : 1.0);
  double radius = opts.initial_trust_radius > 0.0 ? opts.initial_trust_radius : 0.25 * scale;
  const double radius_max = 100.0 * scale;
  const double radius_min = 1e-13 * scale;

  Eigen::VectorXd x = init.stacked();
  Configuration current = init;

  auto evaluate = [&](const Configuration& config) -> Evaluation {
    Evaluation ev;
    ev.gradient = model.gradient(config);
    ev.merit = 0.5 * ev.gradient.squaredNorm();
    return ev;
  };

  Evaluation ev;
  try {
    ev = evaluate(current);
  } catch (const DegenerateConfigurationError& e) {
    throw DegeneratePathError(std::string("degenerate initial configuration: ") + e.what());
  }

  int iter = 0;
  for (; iter < opts.max_iterations; ++iter) {
    if (ev.gradient.norm() <= tol) break;

    const Eigen::MatrixXd hess = model.hessian(current);
    const Eigen::MatrixXd basis = rigid_complement_basis(current);
    const Eigen::VectorXd g_r = basis.transpose() * ev.gradient;
    const Eigen::MatrixXd h_r = basis.transpose() * hess * basis;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h_r);
    const Eigen::VectorXd lam = es.eigenvalues();
    const Eigen::VectorXd ghat = es.eigenvectors().transpose() * g_r;

    // Choose mu >= 0 so the step fits the trust region.
    double mu = 0.0;
    if (step_norm(ghat, lam, 0.0) > radius || lam.cwiseAbs().minCoeff() == 0.0) {
      double lo = 0.0;
      double hi = std::max(1e-12, lam.cwiseAbs().maxCoeff());
      while (step_norm(ghat, lam, hi) > radius && hi < 1e200) hi *= 10.0;
      for (int b = 0; b < 200; ++b) {
        mu = 0.5 * (lo + hi);
        (step_norm(ghat, lam, mu) > radius ? lo : hi) = mu;
      }
      mu = hi;
    }
    Eigen::VectorXd s_hat = regularized_step(ghat, lam, mu);

    if (s_hat.norm() <= 1e-18 * std::max(1.0, x.norm())) {
      // Newton direction vanished (gradient concentrated on zero-curvature
      // directions); steepest descent on the merit 0.5|grad|^2.
      Eigen::VectorXd d = -(h_r * g_r);
      const double dn = d.norm();
      if (dn <= 1e-300) throw ConvergenceError("search stalled: merit gradient vanished", current);
      d *= radius / dn;
      s_hat = es.eigenvectors().transpose() * d;
    }

    const Eigen::VectorXd step = basis * (es.eigenvectors() * s_hat);
    const Eigen::VectorXd predicted = g_r + h_r * (es.eigenvectors() * s_hat);
    const double predicted_merit = 0.5 * predicted.squaredNorm();
    const double predicted_drop = ev.merit - predicted_merit;

    bool accepted = false;
    const Eigen::VectorXd x_trial = x + step;
    try {
      const Configuration trial = Configuration::from_stacked(x_trial);
      const Evaluation ev_trial = evaluate(trial);
      const double drop = ev.merit - ev_trial.merit;
      const double rho = predicted_drop > 0.0 ? drop / predicted_drop : -1.0;
      if (drop > 0.0) {
        x = x_trial;
        current = trial;
        ev = ev_trial;
        accepted = true;
      }
      if (rho > 0.75 && s_hat.norm() > 0.9 * radius)
        radius = std::min(2.0 * radius, radius_max);
      else if (rho < 0.25)
        radius *= 0.25;
    } catch (const DegenerateConfigurationError&) {
      radius *= 0.25;
    }

    if (!accepted && radius < radius_min)
      throw ConvergenceError("trust region collapsed before reaching tolerance", current);
  }

  if (ev.gradient.norm() > tol)
    throw ConvergenceError("no convergence after " + std::to_string(opts.max_iterations) +
                               " iterations (|grad| = " + std::to_string(ev.gradient.norm()) + ")",
                           current);

  StationaryPoint result;
  result.configuration = centered(model.spec(), current);
  result.value = model.total_potential(result.configuration);
  result.gradient_norm = model.gradient(result.configuration).norm();
  const ClassificationResult cls =
      classify_stationary_point(model, result.configuration, opts.zero_mode_threshold);
  result.kind = cls.kind;
  result.zero_modes = cls.zero_modes;
  result.eigenvalues = cls.eigenvalues;
  result.signature = pair_distance_signature(model.spec(), result.configuration);
  result.iterations = iter;
  return result;
}

ClassificationResult classify_stationary_point(const PotentialModel& model,
                                               const Configuration& config, double zero_tol) {
  const double gate = 1e-5 * (model.units().is_si() ? model.gradient_scale() : 1.0);
  const double gn = model.gradient(config).norm();
  if (gn > gate)
    throw NotStationaryError("configuration is not stationary (|grad| = " + std::to_string(gn) +
                             ")");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(model.hessian(config));
  ClassificationResult out;
  out.eigenvalues = es.eigenvalues();
  const double max_abs = out.eigenvalues.cwiseAbs().maxCoeff();
  if (max_abs <= 0.0) {
    out.kind = StationaryKind::Degenerate;
    out.zero_modes = static_cast<int>(out.eigenvalues.size());
    return out;
  }

  const double cut = zero_tol * max_abs;
  int zero = 0, pos = 0, neg = 0;
  for (int i = 0; i < out.eigenvalues.size(); ++i) {
    const double v = out.eigenvalues(i);
    if (std::abs(v) <= cut) ++zero;
    else if (v > 0.0) ++pos;
    else ++neg;
  }
  out.zero_modes = zero;

  const int geometric = rigid_mode_count(config);
  if (zero > geometric || (pos == 0 && neg == 0))
    out.kind = StationaryKind::Degenerate;
  else if (neg == 0)
    out.kind = StationaryKind::Minimum;
  else if (pos == 0)
    out.kind = StationaryKind::Maximum;
  else
    out.kind = StationaryKind::Saddle;
  return out;
}

const CatalogEntry* StationaryCatalog::find_kind(StationaryKind kind) const {
  for (const auto& e : entries)
    if (e.point.kind == kind) return &e;
  return nullptr;
}

namespace {

Configuration random_start(const MoleculeSpec& spec, double radius, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Configuration config;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    config.positions.clear();
    for (int j = 0; j < spec.nucleus_count(); ++j) {
      Eigen::Vector3d dir(gauss(rng), gauss(rng), gauss(rng));
      dir.normalize();
      config.positions.push_back(radius * std::cbrt(unit(rng)) * dir);
    }
    if (config.min_pair_distance() > 0.02 * radius) return config;
  }
  throw DegeneratePathError("could not sample a non-degenerate start");
}

}  // namespace

StationaryCatalog multistart_search(const PotentialModel& model, int n_starts,
                                    std::uint64_t seed, const OptimizerOptions& opts) {
  if (n_starts < 1) throw DomainError("multistart needs n_starts >= 1");
  const double radius = 3.0 * model.length_scale();

  std::vector<std::optional<StationaryPoint>> results(n_starts);
  auto run_range = [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      // Independent substream per start keeps the catalog reproducible
      // regardless of thread scheduling.
      std::mt19937_64 rng(seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(i + 1));
      try {
        const Configuration start = random_start(model.spec(), radius, rng);
        results[i] = find_stationary_point(model, start, opts);
      } catch (const Error&) {
        results[i] = std::nullopt;
      }
    }
  };

  const int workers = std::max(1u, std::min(std::thread::hardware_concurrency(),
                                            static_cast<unsigned>(n_starts)));
  std::vector<std::thread> pool;
  const int chunk = (n_starts + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const int begin = w * chunk;
    const int end = std::min(n_starts, begin + chunk);
    if (begin < end) pool.emplace_back(run_range, begin, end);
  }
  for (auto& t : pool) t.join();

  StationaryCatalog catalog;
  catalog.total_starts = n_starts;
  for (auto& r : results) {
    if (!r) {
      ++catalog.failed_starts;
      continue;
    }
    bool merged = false;
    for (auto& entry : catalog.entries) {
      if (entry.point.signature.matches(r->signature, 1e-5)) {
        ++entry.hits;
        merged = true;
        break;
      }
    }
    if (!merged) catalog.entries.push_back(CatalogEntry{std::move(*r), 1});
  }
  std::sort(catalog.entries.begin(), catalog.entries.end(),
            [](const CatalogEntry& a, const CatalogEntry& b) {
              if (a.point.value != b.point.value) return a.point.value < b.point.value;
              return a.point.signature.entries < b.point.signature.entries;
            });
  return catalog;
}

}  // namespace molsym
