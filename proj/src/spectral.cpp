#include "lax2d/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <unordered_map>

namespace lax2d {

namespace {

// One forward/backward plan pair per grid size, created once under a lock.
// Plans are built with FFTW_ESTIMATE (deterministic algorithm choice, so
// identical runs produce bit-identical results) and FFTW_UNALIGNED (safe to
// execute on any caller buffer via fftw_execute_dft).
struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

PlanPair plans_for(int n) {
  static std::mutex mutex;
  static std::unordered_map<int, PlanPair> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::vector<Complex> a(static_cast<size_t>(n) * n), b(a.size());
  auto* ap = reinterpret_cast<fftw_complex*>(a.data());
  auto* bp = reinterpret_cast<fftw_complex*>(b.data());
  PlanPair p;
  p.fwd = fftw_plan_dft_2d(n, n, ap, bp, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  p.bwd = fftw_plan_dft_2d(n, n, ap, bp, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!p.fwd || !p.bwd) throw NumericError("fftw plan creation failed for n=" + std::to_string(n));
  cache.emplace(n, p);
  return p;
}

void dft(const std::vector<Complex>& in, std::vector<Complex>& out, int n, int sign) {
  PlanPair p = plans_for(n);
  auto* ip = reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in.data()));
  auto* op = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(sign == FFTW_FORWARD ? p.fwd : p.bwd, ip, op);
}

void check_same_grid(const SpectralField& a, const SpectralField& b) {
  if (!(a.grid == b.grid)) throw ConfigError("fields live on different grids");
}

std::optional<int> combine_bands(const SpectralField& a, const SpectralField& b) {
  if (a.band && b.band) return std::max(*a.band, *b.band);
  return std::nullopt;
}

double symmetry_defect(const SpectralField& fh) {
  const int n = fh.grid.n;
  double worst = 0.0;
  for (int si = 0; si < n; ++si) {
    const int mi = (n - si) % n;
    for (int sj = 0; sj < n; ++sj) {
      const int mj = (n - sj) % n;
      const Complex d = fh.at_index(si, sj) - std::conj(fh.at_index(mi, mj));
      worst = std::max(worst, std::abs(d));
    }
  }
  return worst;
}

}  // namespace

int dealias_cutoff(int n) { return n / 3; }

void symmetrize(SpectralField& fh) {
  const int n = fh.grid.n;
  for (int si = 0; si < n; ++si) {
    const int mi = (n - si) % n;
    for (int sj = 0; sj < n; ++sj) {
      const int mj = (n - sj) % n;
      if (std::make_pair(si, sj) > std::make_pair(mi, mj)) continue;
      Complex& a = fh.at_index(si, sj);
      Complex& b = fh.at_index(mi, mj);
      if (si == mi && sj == mj) {
        a = Complex(a.real(), 0.0);
      } else {
        const Complex m = 0.5 * (a + std::conj(b));
        a = m;
        b = std::conj(m);
      }
    }
  }
  fh.real_valued = true;
}

void enforce_band(SpectralField& fh, int band) {
  const int n = fh.grid.n;
  for (int si = 0; si < n; ++si) {
    const int kx = fh.grid.wavenumber(si);
    for (int sj = 0; sj < n; ++sj) {
      const int ky = fh.grid.wavenumber(sj);
      if (std::max(std::abs(kx), std::abs(ky)) > band) fh.at_index(si, sj) = Complex(0.0, 0.0);
    }
  }
  fh.band = band;
}

SpectralField to_spectral(const RealField& f) {
  for (double v : f.values)
    if (!std::isfinite(v)) throw NumericError("non-finite values in physical field");
  const int n = f.grid.n;
  ComplexField tmp(f.grid);
  for (size_t i = 0; i < f.values.size(); ++i) tmp.values[i] = Complex(f.values[i], 0.0);
  SpectralField out(f.grid);
  dft(tmp.values, out.coeffs, n, FFTW_FORWARD);
  const double scale = 1.0 / (static_cast<double>(n) * n);
  for (Complex& c : out.coeffs) c *= scale;
  symmetrize(out);
  return out;
}

SpectralField to_spectral(const ComplexField& f) {
  for (const Complex& v : f.values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw NumericError("non-finite values in physical field");
  const int n = f.grid.n;
  SpectralField out(f.grid);
  dft(f.values, out.coeffs, n, FFTW_FORWARD);
  const double scale = 1.0 / (static_cast<double>(n) * n);
  for (Complex& c : out.coeffs) c *= scale;
  return out;
}

ComplexField to_complex(const SpectralField& fh) {
  ComplexField out(fh.grid);
  dft(fh.coeffs, out.values, fh.grid.n, FFTW_BACKWARD);
  return out;
}

RealField to_real(const SpectralField& fh) {
  const double norm = l2_norm(fh);
  const double defect = symmetry_defect(fh);
  if (defect > 1e-12 * std::max(norm, 1e-300))
    throw NumericError("conjugate symmetry violated: defect " + std::to_string(defect) +
                       " exceeds 1e-12 * ||f||");
  ComplexField tmp = to_complex(fh);
  RealField out(fh.grid);
  for (size_t i = 0; i < tmp.values.size(); ++i) out.values[i] = tmp.values[i].real();
  return out;
}

SpectralField derivative(const SpectralField& fh, Axis axis) {
  const Grid g = fh.grid;
  SpectralField out(g);
  for (int si = 0; si < g.n; ++si) {
    const int kx = g.wavenumber(si);
    for (int sj = 0; sj < g.n; ++sj) {
      const int ky = g.wavenumber(sj);
      const int k = axis == Axis::X ? kx : ky;
      if (k == -g.n / 2) continue;  // Nyquist zeroed
      out.at_index(si, sj) = Complex(0.0, static_cast<double>(k)) * fh.at_index(si, sj);
    }
  }
  out.band = fh.band;
  out.real_valued = fh.real_valued;
  return out;
}

SpectralField directional_derivative(const SpectralField& fh, double ax, double ay) {
  const Grid g = fh.grid;
  SpectralField out(g);
  for (int si = 0; si < g.n; ++si) {
    const int kx = g.wavenumber(si);
    for (int sj = 0; sj < g.n; ++sj) {
      const int ky = g.wavenumber(sj);
      if (kx == -g.n / 2 || ky == -g.n / 2) continue;
      const double k = ax * kx + ay * ky;
      out.at_index(si, sj) = Complex(0.0, k) * fh.at_index(si, sj);
    }
  }
  out.band = fh.band;
  out.real_valued = fh.real_valued;
  return out;
}

SpectralField laplacian(const SpectralField& fh) {
  const Grid g = fh.grid;
  SpectralField out(g);
  for (int si = 0; si < g.n; ++si) {
    const int kx = g.wavenumber(si);
    for (int sj = 0; sj < g.n; ++sj) {
      const int ky = g.wavenumber(sj);
      const double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky;
      out.at_index(si, sj) = -k2 * fh.at_index(si, sj);
    }
  }
  out.band = fh.band;
  out.real_valued = fh.real_valued;
  return out;
}

SpectralField poisson_solve(const SpectralField& omega) {
  const Grid g = omega.grid;
  const double norm = l2_norm(omega);
  const double mean = std::abs(omega.at_mode(0, 0));
  if (mean > 1e-12 * std::max(norm, 1e-300))
    throw NumericError(
        "poisson_solve: nonzero mean vorticity (|omegahat_0| = " + std::to_string(mean) +
        ") violates the periodic solvability condition; the mean must vanish");
  SpectralField out(g);
  for (int si = 0; si < g.n; ++si) {
    const int kx = g.wavenumber(si);
    for (int sj = 0; sj < g.n; ++sj) {
      const int ky = g.wavenumber(sj);
      if (kx == 0 && ky == 0) continue;  // zero-mean gauge
      const double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky;
      out.at_index(si, sj) = -omega.at_index(si, sj) / k2;
    }
  }
  out.band = omega.band;
  out.real_valued = omega.real_valued;
  return out;
}

std::pair<RealField, RealField> velocity_from_stream(const SpectralField& psi) {
  SpectralField uh = -1.0 * derivative(psi, Axis::Y);
  SpectralField vh = derivative(psi, Axis::X);
  return {to_real(uh), to_real(vh)};
}

SpectralField resample(const SpectralField& fh, Grid target) {
  SpectralField out(target);
  const int kmax = std::min(fh.grid.max_mode(), target.max_mode());
  for (int kx = -kmax; kx <= kmax; ++kx)
    for (int ky = -kmax; ky <= kmax; ++ky)
      out.at_mode(kx, ky) = fh.at_mode(kx, ky);
  if (fh.band) out.band = std::min(*fh.band, target.max_mode());
  out.real_valued = fh.real_valued;
  return out;
}

namespace {

// Shared core of the three bracket evaluators and the products: transforms
// the prepared operands, multiplies pointwise, transforms back.
SpectralField pointwise_bilinear(const SpectralField& a1, const SpectralField& a2,
                                 const SpectralField& b1, const SpectralField& b2,
                                 bool subtract) {
  const Grid g = a1.grid;
  ComplexField p1 = to_complex(a1);
  ComplexField p2 = to_complex(a2);
  ComplexField q1 = to_complex(b1);
  ComplexField q2 = to_complex(b2);
  ComplexField prod(g);
  for (size_t i = 0; i < prod.values.size(); ++i) {
    const Complex t = p1.values[i] * p2.values[i];
    prod.values[i] = subtract ? t - q1.values[i] * q2.values[i] : t;
  }
  return to_spectral(prod);
}

SpectralField bracket_on_grid(const SpectralField& fh, const SpectralField& gh) {
  return pointwise_bilinear(derivative(fh, Axis::X), derivative(gh, Axis::Y),
                            derivative(fh, Axis::Y), derivative(gh, Axis::X),
                            /*subtract=*/true);
}

void require_bands(const SpectralField& fh, const SpectralField& gh, const char* op) {
  if (!fh.band || !gh.band)
    throw ConfigError(std::string(op) +
                      " requires declared bands on both operands (exactness cannot be "
                      "guaranteed otherwise)");
}

// Exact bilinear evaluation: embed both operands on a grid large enough to
// hold the full product band alias-free, evaluate, and truncate back.
SpectralField exact_bilinear(const SpectralField& fh, const SpectralField& gh, bool bracket,
                             const char* op) {
  check_same_grid(fh, gh);
  require_bands(fh, gh, op);
  const int band_sum = *fh.band + *gh.band;
  if (band_sum > fh.grid.max_mode())
    throw ConfigError(std::string(op) + ": result band " + std::to_string(band_sum) +
                      " is not representable on an n=" + std::to_string(fh.grid.n) +
                      " grid; need n >= " + std::to_string(2 * band_sum + 2));
  const int m = std::max(2 * band_sum + 2, 8);
  const Grid padded = Grid::make(m);
  const SpectralField fp = resample(fh, padded);
  const SpectralField gp = resample(gh, padded);
  SpectralField hp = bracket ? bracket_on_grid(fp, gp)
                             : pointwise_bilinear(fp, gp, fp, gp, /*subtract=*/false);
  SpectralField out = resample(hp, fh.grid);
  enforce_band(out, band_sum);  // out-of-band content is analytically zero
  out.real_valued = false;
  if (fh.real_valued && gh.real_valued) symmetrize(out);
  return out;
}

}  // namespace

SpectralField bracket_exact(const SpectralField& fh, const SpectralField& gh) {
  return exact_bilinear(fh, gh, /*bracket=*/true, "bracket_exact");
}

SpectralField multiply_exact(const SpectralField& fh, const SpectralField& gh) {
  return exact_bilinear(fh, gh, /*bracket=*/false, "multiply_exact");
}

SpectralField bracket_dealiased(const SpectralField& fh, const SpectralField& gh) {
  check_same_grid(fh, gh);
  const int kc = dealias_cutoff(fh.grid.n);
  SpectralField fm = fh;
  SpectralField gm = gh;
  enforce_band(fm, std::min(kc, fh.band.value_or(kc)));
  enforce_band(gm, std::min(kc, gh.band.value_or(kc)));
  SpectralField out = bracket_on_grid(fm, gm);
  enforce_band(out, std::min(kc, *fm.band + *gm.band));
  out.real_valued = false;
  if (fh.real_valued && gh.real_valued) symmetrize(out);
  return out;
}

SpectralField bracket_aliased(const SpectralField& fh, const SpectralField& gh) {
  check_same_grid(fh, gh);
  SpectralField out = bracket_on_grid(fh, gh);
  out.band = std::nullopt;
  out.real_valued = false;
  if (fh.real_valued && gh.real_valued) symmetrize(out);
  return out;
}

SpectralField multiply_aliased(const SpectralField& fh, const SpectralField& gh) {
  check_same_grid(fh, gh);
  SpectralField out = pointwise_bilinear(fh, gh, fh, gh, /*subtract=*/false);
  out.band = std::nullopt;
  out.real_valued = false;
  if (fh.real_valued && gh.real_valued) symmetrize(out);
  return out;
}

double l2_norm(const SpectralField& fh) {
  double s = 0.0;
  for (const Complex& c : fh.coeffs) s += std::norm(c);
  return std::sqrt(s);
}

double l2_norm(const RealField& f) {
  double s = 0.0;
  for (double v : f.values) s += v * v;
  return std::sqrt(s / f.grid.size());
}

double l2_norm(const ComplexField& f) {
  double s = 0.0;
  for (const Complex& v : f.values) s += std::norm(v);
  return std::sqrt(s / f.grid.size());
}

double grad_norm(const SpectralField& fh) {
  const Grid g = fh.grid;
  double s = 0.0;
  for (int si = 0; si < g.n; ++si) {
    const int kx = g.wavenumber(si);
    for (int sj = 0; sj < g.n; ++sj) {
      const int ky = g.wavenumber(sj);
      const double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky;
      s += k2 * std::norm(fh.at_index(si, sj));
    }
  }
  return std::sqrt(s);
}

double linf_norm(const RealField& f) {
  double m = 0.0;
  for (double v : f.values) m = std::max(m, std::abs(v));
  return m;
}

bool all_finite(const SpectralField& fh) {
  for (const Complex& c : fh.coeffs)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

SpectralField operator+(const SpectralField& a, const SpectralField& b) {
  check_same_grid(a, b);
  SpectralField out(a.grid);
  for (size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] = a.coeffs[i] + b.coeffs[i];
  out.band = combine_bands(a, b);
  out.real_valued = a.real_valued && b.real_valued;
  return out;
}

SpectralField operator-(const SpectralField& a, const SpectralField& b) {
  check_same_grid(a, b);
  SpectralField out(a.grid);
  for (size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] = a.coeffs[i] - b.coeffs[i];
  out.band = combine_bands(a, b);
  out.real_valued = a.real_valued && b.real_valued;
  return out;
}

SpectralField operator*(double s, const SpectralField& a) {
  SpectralField out = a;
  for (Complex& c : out.coeffs) c *= s;
  return out;
}

SpectralField operator*(Complex s, const SpectralField& a) {
  SpectralField out = a;
  for (Complex& c : out.coeffs) c *= s;
  out.real_valued = a.real_valued && s.imag() == 0.0;
  return out;
}

}  // namespace lax2d
