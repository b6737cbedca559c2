#include "lax2d/lax_operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace lax2d {

namespace {

int steps_for(double t, double dt, const char* what) {
  const double raw = t / dt;
  const double rounded = std::round(raw);
  if (std::abs(raw - rounded) > 1e-9 * std::max(1.0, std::abs(raw)))
    throw ConfigError(std::string(what) + " " + std::to_string(t) +
                      " is not an integer multiple of dt=" + std::to_string(dt));
  return static_cast<int>(rounded);
}

std::vector<Complex> sorted_values(const Eigen::VectorXcd& v) {
  std::vector<Complex> out(v.data(), v.data() + v.size());
  std::stable_sort(out.begin(), out.end(), [](const Complex& a, const Complex& b) {
    if (a.imag() != b.imag()) return a.imag() < b.imag();
    if (a.real() != b.real()) return a.real() < b.real();
    return std::abs(a) < std::abs(b);
  });
  return out;
}

}  // namespace

ModeBox ModeBox::make(int K) {
  if (K < 1 || K > kMaxK)
    throw ConfigError("mode box truncation K must be in [1, " + std::to_string(kMaxK) + "], got " +
                      std::to_string(K));
  ModeBox box;
  box.K = K;
  box.modes.reserve(static_cast<size_t>(2 * K + 1) * (2 * K + 1) - 1);
  for (int kx = -K; kx <= K; ++kx)
    for (int ky = -K; ky <= K; ++ky)
      if (kx != 0 || ky != 0) box.modes.push_back({kx, ky});
  return box;
}

int ModeBox::index_of(int kx, int ky) const {
  if (std::max(std::abs(kx), std::abs(ky)) > K) return -1;
  if (kx == 0 && ky == 0) return -1;
  const int linear = (kx + K) * (2 * K + 1) + (ky + K);
  const int center = K * (2 * K + 1) + K;
  return linear < center ? linear : linear - 1;
}

OperatorMatrix assemble_operator(const SpectralField& omega, OperatorKind kind, const ModeBox& box) {
  const Grid g = omega.grid;
  if (box.K > g.max_mode())
    throw ConfigError("mode box K=" + std::to_string(box.K) +
                      " exceeds the grid's representable modes (max " + std::to_string(g.max_mode()) + ")");
  const SpectralField gen = kind == OperatorKind::LOfOmega ? omega : poisson_solve(omega);
  const int support = std::min(gen.band.value_or(g.max_mode()), g.max_mode());

  const int dim = box.dim();
  OperatorMatrix m{box, kind, Eigen::MatrixXcd::Zero(dim, dim)};
  for (int col = 0; col < dim; ++col) {
    const auto [qx, qy] = box.modes[col];
    for (int row = 0; row < dim; ++row) {
      const auto [kx, ky] = box.modes[row];
      const int px = kx - qx;
      const int py = ky - qy;
      if (std::max(std::abs(px), std::abs(py)) > support) continue;
      const double cross = static_cast<double>(px) * qy - static_cast<double>(py) * qx;
      if (cross == 0.0) continue;
      m.entries(row, col) = -cross * gen.at_mode(px, py);
    }
  }
  return m;
}

Eigensystem eigendecompose(const OperatorMatrix& m, bool values_only) {
  const Eigen::MatrixXcd& a = m.entries;
  const double norm = a.norm();
  const double skew_defect = (a + a.adjoint()).norm();

  Eigensystem out;
  if (skew_defect <= 1e-12 * std::max(norm, 1e-300)) {
    // i*M is Hermitian; its real eigenvalues mu map back as lambda = -i*mu.
    const Eigen::MatrixXcd h = Complex(0.0, 1.0) * a;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
        h, values_only ? Eigen::EigenvaluesOnly : Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success)
      throw NumericError("self-adjoint eigendecomposition failed (||M||_F = " + std::to_string(norm) + ")");
    const int dim = m.box.dim();
    out.values.resize(dim);
    // mu ascending => Im(lambda) = -mu descending; reverse for the sort order.
    for (int j = 0; j < dim; ++j) out.values(j) = Complex(0.0, -es.eigenvalues()(dim - 1 - j));
    if (!values_only) {
      out.vectors.resize(dim, dim);
      for (int j = 0; j < dim; ++j) out.vectors.col(j) = es.eigenvectors().col(dim - 1 - j);
    }
    out.hermitian_path = true;
    return out;
  }

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(a, !values_only);
  if (es.info() != Eigen::Success)
    throw NumericError("complex eigendecomposition failed (||M||_F = " + std::to_string(norm) + ")");
  const int dim = m.box.dim();
  std::vector<int> order(dim);
  std::iota(order.begin(), order.end(), 0);
  const auto& vals = es.eigenvalues();
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    const Complex a_ = vals(i), b_ = vals(j);
    if (a_.imag() != b_.imag()) return a_.imag() < b_.imag();
    if (a_.real() != b_.real()) return a_.real() < b_.real();
    return std::abs(a_) < std::abs(b_);
  });
  out.values.resize(dim);
  if (!values_only) out.vectors.resize(dim, dim);
  for (int j = 0; j < dim; ++j) {
    out.values(j) = vals(order[j]);
    if (!values_only) out.vectors.col(j) = es.eigenvectors().col(order[j]);
  }
  return out;
}

double max_eigen_residual(const OperatorMatrix& m, const Eigensystem& eig) {
  if (eig.vectors.size() == 0) throw ConfigError("eigen residual needs eigenvectors");
  double worst = 0.0;
  for (int j = 0; j < eig.values.size(); ++j) {
    const Eigen::VectorXcd v = eig.vectors.col(j);
    const double vn = v.norm();
    if (vn == 0.0) continue;
    worst = std::max(worst, (m.entries * v - eig.values(j) * v).norm() / vn);
  }
  return worst;
}

double hausdorff_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.empty() || b.empty()) throw ConfigError("hausdorff_distance needs non-empty sets");
  auto directed = [](const std::vector<Complex>& from, const std::vector<Complex>& to) {
    double worst = 0.0;
    for (const Complex& x : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const Complex& y : to) best = std::min(best, std::abs(x - y));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

SpectrumReport spectrum_along_flow(const SpectralField& ic, const TimeStepper& stepper, int K,
                                   const std::vector<double>& sample_times) {
  if (sample_times.empty()) throw ConfigError("spectrum_along_flow needs at least one sample time");
  if (std::abs(sample_times.front()) > 1e-12)
    throw ConfigError("sample times must start at 0");
  for (size_t i = 1; i < sample_times.size(); ++i)
    if (!(sample_times[i] > sample_times[i - 1]))
      throw ConfigError("sample times must be strictly increasing");

  std::vector<int> sample_steps;
  sample_steps.reserve(sample_times.size());
  for (double t : sample_times) sample_steps.push_back(steps_for(t, stepper.dt, "sample time"));

  const ModeBox box = ModeBox::make(K);
  SpectrumReport report;
  report.K = K;
  report.times = sample_times;

  FlowState state(ic);
  int done = 0;
  for (size_t i = 0; i < sample_steps.size(); ++i) {
    state = advance(std::move(state), stepper, sample_steps[i] - done);
    done = sample_steps[i];
    const OperatorMatrix m = assemble_operator(state.omega, OperatorKind::LOfOmega, box);
    if (i == 0) report.matrix_norm = m.frobenius_norm();
    report.spectra.push_back(sorted_values(eigendecompose(m, /*values_only=*/true).values));
  }
  for (size_t i = 1; i < report.spectra.size(); ++i)
    report.drifts.push_back(hausdorff_distance(report.spectra[i - 1], report.spectra[i]));
  return report;
}

TransportCheck eigenfunction_transport_check(const SpectralField& ic, int K, int mode_index,
                                             const TimeStepper& stepper, double T) {
  const Grid g = ic.grid;
  const double ic_norm = l2_norm(ic);
  const double rhs_norm = l2_norm(euler_rhs(ic));
  if (rhs_norm > 1e-10 * std::max(ic_norm, 1e-300))
    throw ConfigError("transport check requires a stationary vorticity field; ||euler_rhs|| = " +
                      std::to_string(rhs_norm) + " relative " + std::to_string(rhs_norm / ic_norm));

  SpectralField psi = poisson_solve(ic);
  double wdot = 0.0, w2 = 0.0;
  for (size_t i = 0; i < psi.coeffs.size(); ++i) {
    wdot += (psi.coeffs[i] * std::conj(ic.coeffs[i])).real();
    w2 += std::norm(ic.coeffs[i]);
  }
  if (w2 == 0.0) throw ConfigError("transport check requires a nonzero vorticity field");
  const double c = wdot / w2;
  if (l2_norm(psi - c * ic) > 1e-10 * std::max(l2_norm(psi), 1e-300))
    throw ConfigError(
        "transport check requires psi = c * omega (single Laplacian eigenspace); "
        "this stationary state is not of that form");

  const ModeBox box = ModeBox::make(K);
  // The generator acting inside the box only sees stream modes up to 2K, so
  // the worst-case exact-bracket band during evolution is 3K.
  if (3 * K > g.max_mode())
    throw ConfigError("transport check needs n >= " + std::to_string(6 * K + 2) +
                      " to evaluate the projected transport exactly (have n=" + std::to_string(g.n) + ")");

  OperatorMatrix l0 = assemble_operator(ic, OperatorKind::LOfOmega, box);
  Eigensystem eig = eigendecompose(l0);
  const int dim = box.dim();
  int idx = mode_index;
  if (idx < 0) {
    idx = 0;
    for (int j = 1; j < dim; ++j)
      if (std::abs(eig.values(j)) > std::abs(eig.values(idx))) idx = j;
  }
  if (idx >= dim) throw ConfigError("mode index " + std::to_string(idx) + " out of range (dim " +
                                    std::to_string(dim) + ")");
  const Complex lambda = eig.values(idx);

  auto lift = [&](const Eigen::VectorXcd& v) {
    SpectralField f(g);
    for (int r = 0; r < dim; ++r) f.at_mode(box.modes[r][0], box.modes[r][1]) = v(r);
    f.band = K;
    return f;
  };
  auto project = [&](SpectralField f) {
    for (int si = 0; si < g.n; ++si) {
      const int kx = g.wavenumber(si);
      for (int sj = 0; sj < g.n; ++sj) {
        const int ky = g.wavenumber(sj);
        if (box.index_of(kx, ky) < 0) f.at_index(si, sj) = Complex(0.0, 0.0);
      }
    }
    f.band = K;
    return f;
  };

  const SpectralField phi0 = lift(eig.vectors.col(idx));
  const double phi0_norm = l2_norm(phi0);

  const int steps = steps_for(T, stepper.dt, "transport horizon T");
  const double dt = stepper.dt;
  SpectralField omega = ic;
  SpectralField phi = phi0;
  for (int s = 0; s < steps; ++s) {
    // Joint RK4: omega under the dealiased flow, phi under the box-projected
    // transport with the stage-consistent stream function.
    auto rate = [&](const SpectralField& w, const SpectralField& p)
        -> std::pair<SpectralField, SpectralField> {
      SpectralField ps = poisson_solve(w);
      SpectralField dn = -1.0 * bracket_dealiased(ps, w);
      dn.at_mode(0, 0) = Complex(0.0, 0.0);
      SpectralField trimmed = ps;
      enforce_band(trimmed, std::min(ps.band.value_or(g.max_mode()), 2 * K));
      SpectralField dp = -1.0 * project(bracket_exact(trimmed, p));
      return {std::move(dn), std::move(dp)};
    };
    const auto k1 = rate(omega, phi);
    const auto k2 = rate(omega + (0.5 * dt) * k1.first, phi + (0.5 * dt) * k1.second);
    const auto k3 = rate(omega + (0.5 * dt) * k2.first, phi + (0.5 * dt) * k2.second);
    const auto k4 = rate(omega + dt * k3.first, phi + dt * k3.second);
    omega = omega + (dt / 6.0) * (k1.first + 2.0 * k2.first + 2.0 * k3.first + k4.first);
    phi = phi + (dt / 6.0) * (k1.second + 2.0 * k2.second + 2.0 * k3.second + k4.second);
    if (!all_finite(omega) || !all_finite(phi))
      throw NumericError("non-finite values during transport evolution");
  }

  TransportCheck out;
  out.lambda = lambda;
  out.T = T;
  out.K = K;
  out.mode_index = idx;
  out.stream_ratio = c;
  const Complex factor = std::exp(-c * lambda * T);
  out.transport_error = l2_norm(phi - factor * phi0) / phi0_norm;
  out.norm_ratio = l2_norm(phi) / phi0_norm;

  const OperatorMatrix lt = assemble_operator(omega, OperatorKind::LOfOmega, box);
  Eigen::VectorXcd vt(dim);
  for (int r = 0; r < dim; ++r) vt(r) = phi.at_mode(box.modes[r][0], box.modes[r][1]);
  const double vt_norm = vt.norm();
  out.eigen_residual = vt_norm == 0.0 ? 0.0 : (lt.entries * vt - lambda * vt).norm() / vt_norm;
  return out;
}

}  // namespace lax2d
