#include <cmath>

#include "doctest.h"
#include "lax2d/lax_operators.hpp"
#include "lax2d/verification.hpp"

using namespace lax2d;

namespace {

SpectralField shear(Grid g) { return initial_condition("shear", {}, g, 0); }

std::vector<Complex> expected_shear_spectrum(int K) {
  // For omega = cos y the operator decomposes into fixed-kx chains that are
  // tridiagonal Toeplitz with +-kx/2 couplings: eigenvalues
  // i*kx*cos(j*pi/(m+1)), j = 1..m, m = 2K+1, plus one zero per kx = 0 mode.
  std::vector<Complex> out;
  const int m = 2 * K + 1;
  for (int kx = -K; kx <= K; ++kx) {
    if (kx == 0) continue;
    for (int j = 1; j <= m; ++j)
      out.push_back(Complex(0.0, kx * std::cos(j * M_PI / (m + 1))));
  }
  for (int i = 0; i < 2 * K; ++i) out.push_back(Complex(0.0, 0.0));
  std::sort(out.begin(), out.end(), [](const Complex& a, const Complex& b) {
    return a.imag() != b.imag() ? a.imag() < b.imag() : a.real() < b.real();
  });
  return out;
}

}  // namespace

TEST_CASE("mode box enumeration") {
  const ModeBox box = ModeBox::make(5);
  CHECK(box.dim() == 11 * 11 - 1);
  CHECK(box.modes.front() == std::array<int, 2>{-5, -5});
  CHECK(box.modes.back() == std::array<int, 2>{5, 5});
  for (int i = 0; i < box.dim(); ++i)
    CHECK(box.index_of(box.modes[i][0], box.modes[i][1]) == i);
  CHECK(box.index_of(0, 0) == -1);
  CHECK(box.index_of(6, 0) == -1);
  CHECK_THROWS_AS(ModeBox::make(0), ConfigError);
  CHECK_THROWS_AS(ModeBox::make(33), ConfigError);
}

TEST_CASE("operator assembly") {
  const Grid g = Grid::make(32);

  SUBCASE("zero vorticity assembles the zero matrix") {
    SpectralField zero(g);
    zero.real_valued = true;
    zero.band = 0;
    const OperatorMatrix m = assemble_operator(zero, OperatorKind::LOfOmega, ModeBox::make(3));
    CHECK(m.entries.norm() == 0.0);
  }

  SUBCASE("shear couples modes along ky with entries +-kx/2") {
    const ModeBox box = ModeBox::make(3);
    const OperatorMatrix m = assemble_operator(shear(g), OperatorKind::LOfOmega, box);
    const int col = box.index_of(2, 0);
    for (int row = 0; row < box.dim(); ++row) {
      const Complex e = m.entries(row, col);
      if (row == box.index_of(2, 1)) CHECK(e == Complex(1.0, 0.0));       // +kx/2
      else if (row == box.index_of(2, -1)) CHECK(e == Complex(-1.0, 0.0)); // -kx/2
      else CHECK(e == Complex(0.0, 0.0));
    }
  }

  SUBCASE("the shear transport operator is the negated vorticity operator") {
    // psi = -omega for the shear, so the A truncation equals -L bit-exactly.
    const ModeBox box = ModeBox::make(4);
    const OperatorMatrix l = assemble_operator(shear(g), OperatorKind::LOfOmega, box);
    const OperatorMatrix a = assemble_operator(shear(g), OperatorKind::AOfPsi, box);
    CHECK((l.entries + a.entries).norm() == 0.0);
  }

  SUBCASE("skew-Hermitian and conjugation-symmetric for real fields") {
    const SpectralField omega = random_real_field(g, 6, 42);
    const ModeBox box = ModeBox::make(8);
    const OperatorMatrix m = assemble_operator(omega, OperatorKind::LOfOmega, box);
    CHECK((m.entries + m.entries.adjoint()).norm() <= 1e-13 * m.entries.norm());
    for (auto [kx, ky] : {std::pair{3, 2}, std::pair{-1, 7}, std::pair{5, -4}})
      for (auto [qx, qy] : {std::pair{1, 1}, std::pair{-2, 3}}) {
        const Complex fwd = m.entries(box.index_of(kx, ky), box.index_of(qx, qy));
        const Complex mir = m.entries(box.index_of(-kx, -ky), box.index_of(-qx, -qy));
        CHECK(std::abs(mir - std::conj(fwd)) <= 1e-15);
      }
  }

  SUBCASE("assembly is linear in the generating field") {
    const SpectralField w1 = random_real_field(g, 5, 1);
    const SpectralField w2 = random_real_field(g, 5, 2);
    const ModeBox box = ModeBox::make(6);
    const OperatorMatrix ml = assemble_operator(2.5 * w1 + (-0.75) * w2, OperatorKind::LOfOmega, box);
    const OperatorMatrix m1 = assemble_operator(w1, OperatorKind::LOfOmega, box);
    const OperatorMatrix m2 = assemble_operator(w2, OperatorKind::LOfOmega, box);
    CHECK((ml.entries - 2.5 * m1.entries + 0.75 * m2.entries).norm() <= 1e-14 * ml.entries.norm());
  }

  SUBCASE("matrix-vector action matches the exact bracket plus projection") {
    const SpectralField omega = random_real_field(g, 4, 314);
    const int K = 6;
    const ModeBox box = ModeBox::make(K);
    const OperatorMatrix m = assemble_operator(omega, OperatorKind::LOfOmega, box);

    const SpectralField phi = random_complex_field(g, K, 2718);
    Eigen::VectorXcd v(box.dim());
    for (int r = 0; r < box.dim(); ++r) v(r) = phi.at_mode(box.modes[r][0], box.modes[r][1]);
    const Eigen::VectorXcd mv = m.entries * v;

    const SpectralField br = bracket_exact(omega, phi);
    double err = 0.0;
    for (int r = 0; r < box.dim(); ++r)
      err = std::max(err, std::abs(mv(r) - br.at_mode(box.modes[r][0], box.modes[r][1])));
    CHECK(err <= 1e-12 * l2_norm(br));
  }

  SUBCASE("box beyond the grid support is rejected") {
    const Grid small = Grid::make(16);
    CHECK_THROWS_AS(assemble_operator(shear(small), OperatorKind::LOfOmega, ModeBox::make(10)),
                    ConfigError);
  }
}

TEST_CASE("eigendecomposition") {
  const Grid g = Grid::make(32);

  SUBCASE("zero matrix has an all-zero spectrum") {
    SpectralField zero(g);
    zero.real_valued = true;
    zero.band = 0;
    const OperatorMatrix m = assemble_operator(zero, OperatorKind::LOfOmega, ModeBox::make(2));
    const Eigensystem eig = eigendecompose(m);
    CHECK(eig.values.norm() == 0.0);
  }

  SUBCASE("shear spectrum matches the closed-form chain eigenvalues") {
    const int K = 4;
    const OperatorMatrix m = assemble_operator(shear(g), OperatorKind::LOfOmega, ModeBox::make(K));
    const Eigensystem eig = eigendecompose(m, /*values_only=*/true);
    CHECK(eig.hermitian_path);
    const std::vector<Complex> expected = expected_shear_spectrum(K);
    REQUIRE(static_cast<int>(expected.size()) == eig.values.size());
    double err = 0.0;
    for (int i = 0; i < eig.values.size(); ++i) err = std::max(err, std::abs(eig.values(i) - expected[i]));
    CHECK(err <= 1e-12);
  }

  SUBCASE("random real fields give purely imaginary spectra and small residuals") {
    const SpectralField omega = random_real_field(g, 6, 5);
    const OperatorMatrix m = assemble_operator(omega, OperatorKind::LOfOmega, ModeBox::make(7));
    const Eigensystem eig = eigendecompose(m);
    CHECK(eig.hermitian_path);
    double re_max = 0.0;
    for (int i = 0; i < eig.values.size(); ++i) re_max = std::max(re_max, std::abs(eig.values(i).real()));
    CHECK(re_max <= 1e-11 * m.entries.norm());
    CHECK(max_eigen_residual(m, eig) <= 1e-10 * m.entries.norm());
  }

  SUBCASE("complex generating fields fall back to the general solver") {
    const SpectralField gen = random_complex_field(g, 3, 8);
    SpectralField banded = gen;
    banded.band = 3;
    const OperatorMatrix m = assemble_operator(banded, OperatorKind::LOfOmega, ModeBox::make(4));
    const Eigensystem eig = eigendecompose(m);
    CHECK_FALSE(eig.hermitian_path);
    CHECK(max_eigen_residual(m, eig) <= 1e-10 * m.entries.norm());
  }
}

TEST_CASE("hausdorff distance") {
  using V = std::vector<Complex>;
  CHECK(hausdorff_distance(V{{0, 0}, {1, 0}}, V{{0, 0}, {1, 0}}) == 0.0);
  CHECK(hausdorff_distance(V{{0, 0}}, V{{0, 3}}) == doctest::Approx(3.0));
  CHECK(hausdorff_distance(V{{0, 0}, {1, 0}}, V{{0, 0}}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(hausdorff_distance(V{}, V{{0, 0}}), ConfigError);
}

TEST_CASE("spectrum along the flow") {
  const Grid g = Grid::make(32);
  const TimeStepper stepper = TimeStepper::make(1e-2, false);

  SUBCASE("stationary shear has zero drift") {
    const SpectrumReport rep = spectrum_along_flow(shear(g), stepper, 4, {0.0, 0.05, 0.1});
    REQUIRE(rep.drifts.size() == 2);
    CHECK(rep.drifts[0] <= 1e-10 * rep.matrix_norm);
    CHECK(rep.drifts[1] <= 1e-10 * rep.matrix_norm);
  }

  SUBCASE("zero vorticity has an identically zero spectrum") {
    SpectralField zero(g);
    zero.real_valued = true;
    zero.band = 0;
    const SpectrumReport rep = spectrum_along_flow(zero, stepper, 3, {0.0, 0.02});
    for (const auto& spectrum : rep.spectra)
      for (const Complex& v : spectrum) CHECK(std::abs(v) == 0.0);
  }

  SUBCASE("sample time validation") {
    CHECK_THROWS_AS(spectrum_along_flow(shear(g), stepper, 3, {0.1, 0.2}), ConfigError);
    CHECK_THROWS_AS(spectrum_along_flow(shear(g), stepper, 3, {0.0, 0.2, 0.2}), ConfigError);
    CHECK_THROWS_AS(spectrum_along_flow(shear(g), stepper, 3, {0.0, 0.0151}), ConfigError);
  }
}

TEST_CASE("eigenfunction transport on the stationary shear") {
  const Grid g = Grid::make(32);
  const TimeStepper stepper = TimeStepper::make(1e-3, false);
  const int K = 4;

  SUBCASE("largest eigenvalue follows the closed form") {
    const TransportCheck check = eigenfunction_transport_check(shear(g), K, -1, stepper, 0.1);
    CHECK(check.stream_ratio == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(std::abs(check.lambda) == doctest::Approx(K * std::cos(M_PI / (2 * K + 2))).epsilon(1e-12));
    CHECK(check.transport_error <= 1e-8);
    CHECK(std::abs(check.norm_ratio - 1.0) <= 1e-10);
    CHECK(check.eigen_residual <= 1e-8);
  }

  SUBCASE("a zero eigenvalue transports a constant profile") {
    // sorted order puts the zero chain in the middle of the spectrum
    const OperatorMatrix m = assemble_operator(shear(g), OperatorKind::LOfOmega, ModeBox::make(K));
    const Eigensystem eig = eigendecompose(m, true);
    int zero_index = -1;
    for (int i = 0; i < eig.values.size(); ++i)
      if (std::abs(eig.values(i)) < 1e-13) zero_index = i;
    REQUIRE(zero_index >= 0);
    const TransportCheck check = eigenfunction_transport_check(shear(g), K, zero_index, stepper, 0.1);
    CHECK(std::abs(check.lambda) < 1e-13);
    CHECK(check.transport_error <= 1e-10);
  }

  SUBCASE("non-stationary initial data is rejected") {
    const SpectralField ic = initial_condition("perturbed-shear", {}, g, 0);
    CHECK_THROWS_AS(eigenfunction_transport_check(ic, K, -1, stepper, 0.1), ConfigError);
  }

  SUBCASE("out-of-range mode index is rejected") {
    CHECK_THROWS_AS(eigenfunction_transport_check(shear(g), K, 100000, stepper, 0.1), ConfigError);
  }
}
