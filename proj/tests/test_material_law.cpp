#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <functional>

#include "evocert/material_law.hpp"
#include "evocert/random.hpp"

using namespace evocert;

TEST_SUITE_BEGIN("material_law");

namespace {

MatrixFamily scalar_family(const TimeGrid& g,
                           const std::function<double(double)>& c, int dim) {
  MatrixFamily f(g.n);
  for (int k = 0; k < g.n; ++k)
    f[k] = c(g.nodes[k]) * Eigen::MatrixXd::Identity(dim, dim);
  return f;
}

}  // namespace

TEST_CASE("multiplication by the identity family is the identity") {
  TimeGrid g = build_grid(0.0, 1.0, 5, 1.0);
  MatrixFamily m = constant_family(Eigen::MatrixXd::Identity(2, 2), g.n);
  SpaceTimeOperator op = mult_operator(m, g, 3);
  CHECK((op.matrix - Eigen::MatrixXd::Identity(30, 30)).norm() == 0.0);
}

TEST_CASE("scalar families commute with block-diagonal-in-time operators") {
  TimeGrid g = build_grid(0.0, 1.0, 4, 1.0);
  MatrixFamily scal = scalar_family(g, [](double t) { return 1.0 + t * t; }, 2);
  auto rng = make_rng(17);
  MatrixFamily other(g.n);
  for (int k = 0; k < g.n; ++k) other[k] = random_matrix(rng, 2, 2);
  CHECK(commutator_residual(mult_operator(scal, g), mult_operator(other, g)) <=
        1e-13);
}

TEST_CASE("symmetric families give weighted self-adjoint operators") {
  TimeGrid g = build_grid(0.0, 1.0, 6, 1.3);
  auto rng = make_rng(18);
  MatrixFamily m(g.n);
  for (int k = 0; k < g.n; ++k) m[k] = random_spd(rng, 3, 0.2);
  SpaceTimeOperator op = mult_operator(m, g, 2);
  CHECK((weighted_adjoint(op).matrix - op.matrix).norm() <=
        1e-13 * op.matrix.norm());
}

TEST_CASE("mult_operator validates the sample count") {
  TimeGrid g = build_grid(0.0, 1.0, 4, 1.0);
  MatrixFamily m = constant_family(Eigen::MatrixXd::Identity(2, 2), 3);
  CHECK_THROWS_AS(mult_operator(m, g), SampleCountMismatch);
}

TEST_CASE("lipschitz derivative closed forms") {
  TimeGrid g = build_grid(0.0, 1.0, 16, 1.0);
  MatrixFamily constant = constant_family(2.0 * Eigen::MatrixXd::Identity(2, 2),
                                          g.n);
  for (const auto& d : lipschitz_derivative(constant, g))
    CHECK(d.norm() == 0.0);

  MatrixFamily linear = scalar_family(g, [](double t) { return t; }, 2);
  for (const auto& d : lipschitz_derivative(linear, g))
    CHECK((d - Eigen::MatrixXd::Identity(2, 2)).norm() <= 1e-12);

  CHECK_THROWS_AS(lipschitz_derivative(MatrixFamily(1), g), TooFewSamples);
}

TEST_CASE("lipschitz derivative is first-order accurate") {
  auto max_err = [](int n) {
    TimeGrid g = build_grid(0.0, 1.0, n, 1.0);
    MatrixFamily m = scalar_family(g, [](double t) { return std::sin(t); }, 1);
    MatrixFamily d = lipschitz_derivative(m, g);
    double err = 0.0;
    // skip the copied last node: it is a zeroth-order extrapolation
    for (int k = 0; k + 1 < g.n; ++k)
      err = std::max(err, std::abs(d[k](0, 0) - std::cos(g.nodes[k])));
    return err;
  };
  const double e64 = max_err(64);
  const double e128 = max_err(128);
  CHECK(e128 <= 0.625 * e64);
  CHECK(e128 >= 0.375 * e64);
}

TEST_CASE("positive-definiteness condition margins") {
  TimeGrid g = build_grid(0.0, 1.0, 4, 1.0);
  const int n = g.n;
  auto zero2 = constant_family(Eigen::MatrixXd::Zero(2, 2), n);

  MaterialLaw plain = MaterialLaw::create(
      2, constant_family(Eigen::MatrixXd::Identity(2, 2), n), zero2,
      constant_family(Eigen::MatrixXd::Zero(2, 2), n), Regime::lipschitz);
  Certificate c1 = check_pos_def_condition(plain, 1.0, 1.0);
  CHECK(c1.margin == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c1.passed);
  CHECK_FALSE(check_pos_def_condition(plain, 1.0, 1.5).passed);

  // degenerate kernel: margin = min(rho, 1)
  MaterialLaw degen = MaterialLaw::create(
      2, constant_family(Eigen::Vector2d(1.0, 0.0).asDiagonal(), n),
      constant_family(Eigen::Vector2d(0.0, 1.0).asDiagonal(), n),
      constant_family(Eigen::MatrixXd::Zero(2, 2), n), Regime::lipschitz);
  for (double rho : {0.25, 1.0, 4.0})
    CHECK(check_pos_def_condition(degen, rho, 0.0).margin ==
          doctest::Approx(std::min(rho, 1.0)).epsilon(1e-12));

  MaterialLaw bad = MaterialLaw::create(
      2, constant_family(Eigen::MatrixXd::Identity(2, 2), n), zero2,
      constant_family(-4.0 * Eigen::MatrixXd::Identity(2, 2), n),
      Regime::lipschitz);
  Certificate c3 = check_pos_def_condition(bad, 1.0, 0.01);
  CHECK(c3.margin == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK_FALSE(c3.passed);

  MaterialLaw noderiv = MaterialLaw::create(
      2, constant_family(Eigen::MatrixXd::Identity(2, 2), n), zero2,
      std::nullopt, Regime::lipschitz);
  CHECK_THROWS_AS(check_pos_def_condition(noderiv, 1.0, 0.0),
                  MissingDerivative);
}

TEST_CASE("pos-def margin is monotone in rho for PSD coefficients") {
  TimeGrid g = build_grid(0.0, 1.0, 6, 1.0);
  auto rng = make_rng(77);
  MatrixFamily m0(g.n), m1(g.n), m0p(g.n);
  for (int k = 0; k < g.n; ++k) {
    m0[k] = random_spd(rng, 3, 0.0);
    m1[k] = random_matrix(rng, 3, 3);
    Eigen::MatrixXd s = random_matrix(rng, 3, 3);
    m0p[k] = 0.5 * (s + s.transpose());
  }
  MaterialLaw law =
      MaterialLaw::create(3, m0, m1, m0p, Regime::lipschitz);
  double prev = -1e300;
  for (double rho : {0.5, 1.0, 2.0, 4.0}) {
    const double margin = check_pos_def_condition(law, rho, 0.0).margin;
    CHECK(margin >= prev - 1e-12);
    prev = margin;
  }
}

TEST_CASE("sqrt_psd closed forms and properties") {
  CHECK((sqrt_psd(Eigen::MatrixXd::Identity(3, 3)) -
         Eigen::MatrixXd::Identity(3, 3)).norm() <= 1e-14);
  Eigen::MatrixXd d49 = Eigen::Vector2d(4.0, 9.0).asDiagonal();
  Eigen::MatrixXd d23 = Eigen::Vector2d(2.0, 3.0).asDiagonal();
  CHECK((sqrt_psd(d49) - d23).norm() <= 1e-13);

  auto rng = make_rng(88);
  for (int t = 0; t < 10; ++t) {
    Eigen::MatrixXd m = random_spd(rng, 4, 0.1);
    Eigen::MatrixXd r = sqrt_psd(m);
    CHECK((r * r - m).norm() <= 1e-10 * m.norm());
    CHECK((r - r.transpose()).norm() <= 1e-12);
    // homogeneity
    CHECK((sqrt_psd(3.0 * m) - std::sqrt(3.0) * r).norm() <= 1e-12 * r.norm());
  }

  Eigen::MatrixXd asym(2, 2);
  asym << 1.0, 0.5, 0.0, 1.0;
  CHECK_THROWS_AS(sqrt_psd(asym), NotSymmetric);
  Eigen::MatrixXd neg = Eigen::Vector2d(1.0, -0.5).asDiagonal();
  CHECK_THROWS_AS(sqrt_psd(neg), NegativeEigenvalue);
}

TEST_CASE("square roots of commuting pairs commute") {
  auto rng = make_rng(89);
  for (int t = 0; t < 6; ++t) {
    // commuting pair: polynomials in a common symmetric matrix
    Eigen::MatrixXd s = random_spd(rng, 3, 0.5);
    Eigen::MatrixXd m = s * s + 2.0 * s;                 // SPD polynomial
    Eigen::MatrixXd a = 3.0 * s - s * s * s;             // anything commuting
    REQUIRE((m * a - a * m).norm() <= 1e-10 * m.norm() * a.norm());
    Eigen::MatrixXd r = sqrt_psd(m);
    CHECK((r * a - a * r).norm() <= 1e-10 * r.norm() * a.norm());
  }
}

TEST_CASE("rho0 in the lipschitz regime") {
  TimeGrid g = build_grid(0.0, 1.0, 4, 1.0);
  const int n = g.n;
  auto eye = [&](double s) {
    return constant_family(s * Eigen::MatrixXd::Identity(2, 2), n);
  };
  std::vector<double> rho_grid{0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0};

  MaterialLaw shifted = MaterialLaw::create(2, eye(1.0), eye(-2.0), eye(0.0),
                                            Regime::lipschitz);
  auto r1 = rho0_lipschitz(shifted, 1.0, rho_grid);
  REQUIRE(r1.has_value());
  CHECK(*r1 == doctest::Approx(3.0).epsilon(1e-12));

  MaterialLaw degen = MaterialLaw::create(
      2, constant_family(Eigen::Vector2d(1.0, 0.0).asDiagonal(), n),
      constant_family(Eigen::Vector2d(0.0, 1.0).asDiagonal(), n), eye(0.0),
      Regime::lipschitz);
  auto r2 = rho0_lipschitz(degen, 0.5, rho_grid);
  REQUIRE(r2.has_value());
  CHECK(*r2 == doctest::Approx(0.5).epsilon(1e-12));

  MaterialLaw kernel = MaterialLaw::create(
      2, constant_family(Eigen::Vector2d(1.0, 0.0).asDiagonal(), n),
      constant_family(Eigen::MatrixXd::Zero(2, 2), n), eye(0.0),
      Regime::lipschitz);
  CHECK_FALSE(rho0_lipschitz(kernel, 0.1, rho_grid).has_value());
}

TEST_CASE("rho0 in the commutator regime") {
  TimeGrid g = build_grid(0.0, 1.0, 4, 1.0);
  const int n = g.n;
  auto zero2 = constant_family(Eigen::MatrixXd::Zero(2, 2), n);

  MaterialLaw trivial = MaterialLaw::create(
      2, constant_family(Eigen::MatrixXd::Identity(2, 2), n), zero2,
      std::nullopt, Regime::commutator, 1.0);
  CHECK(rho0_commutator(trivial, 1.0) == doctest::Approx(1.0).epsilon(1e-12));

  Eigen::MatrixXd m1(2, 2);
  m1 << 0.0, 1.0, 0.0, 0.0;
  MaterialLaw worked = MaterialLaw::create(
      2, constant_family(Eigen::Vector2d(1.0, 4.0).asDiagonal(), n),
      constant_family(m1, n), std::nullopt, Regime::commutator, 1.0);
  // M0^{1/2} M1 M0^{-1/2} = [[0, 0.5],[0,0]], spectral norm 0.5
  CHECK(rho0_commutator(worked, 1.0) == doctest::Approx(1.5).epsilon(1e-12));

  MaterialLaw doubled = MaterialLaw::create(
      2, constant_family(Eigen::Vector2d(1.0, 4.0).asDiagonal(), n),
      constant_family((2.0 * m1).eval(), n), std::nullopt, Regime::commutator,
      1.0);
  CHECK(rho0_commutator(doubled, 1.0) == doctest::Approx(2.0).epsilon(1e-12));

  MaterialLaw no_bound = MaterialLaw::create(
      2, constant_family(Eigen::MatrixXd::Identity(2, 2), n), zero2,
      std::nullopt, Regime::lipschitz);
  CHECK_THROWS_AS(rho0_commutator(no_bound, 1.0), MissingLowerBound);
}

TEST_CASE("lower bound controls the inverse square root") {
  auto rng = make_rng(91);
  const double d_low = 0.3;
  for (int t = 0; t < 8; ++t) {
    Eigen::MatrixXd m = random_spd(rng, 3, d_low);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    REQUIRE(es.eigenvalues().minCoeff() >= d_low);
    Eigen::MatrixXd inv_root = sqrt_psd(m).inverse();
    CHECK(inv_root.jacobiSvd().singularValues()(0) <=
          1.0 / std::sqrt(d_low) + 1e-10);
  }
}

TEST_CASE("product rule residual") {
  TimeGrid g = build_grid(0.0, 1.0, 32, 1.0);
  auto rng = make_rng(92);
  GridFunction u(g, 2, random_vector(rng, 64));

  MaterialLaw constant = MaterialLaw::create(
      2, constant_family(random_spd(rng, 2, 0.5), g.n),
      constant_family(Eigen::MatrixXd::Zero(2, 2), g.n),
      constant_family(Eigen::MatrixXd::Zero(2, 2), g.n), Regime::lipschitz);
  CHECK(product_rule_residual(constant, g, u) <= 1e-12);

  MaterialLaw linear = MaterialLaw::create(
      2, scalar_family(g, [](double t) { return t; }, 2),
      constant_family(Eigen::MatrixXd::Zero(2, 2), g.n),
      constant_family(Eigen::MatrixXd::Identity(2, 2), g.n),
      Regime::lipschitz);
  GridFunction ones(g, 2);
  ones.values().setOnes();
  CHECK(product_rule_residual(linear, g, ones) <= 1e-12);

  MaterialLaw noderiv = MaterialLaw::create(
      2, scalar_family(g, [](double t) { return t; }, 2),
      constant_family(Eigen::MatrixXd::Zero(2, 2), g.n), std::nullopt,
      Regime::lipschitz);
  CHECK_THROWS_AS(product_rule_residual(noderiv, g, u), MissingDerivative);
}

TEST_CASE("product rule residual is first order for smooth coefficients") {
  auto residual = [](int n) {
    TimeGrid g = build_grid(0.0, 1.0, n, 1.0);
    MaterialLaw law = MaterialLaw::create(
        1, scalar_family(g, [](double t) { return std::sin(t); }, 1),
        constant_family(Eigen::MatrixXd::Zero(1, 1), g.n),
        scalar_family(g, [](double t) { return std::cos(t); }, 1),
        Regime::lipschitz);
    GridFunction u = sample_scalar(g, [](double t) { return std::exp(t); });
    return product_rule_residual(law, g, u);
  };
  const double r64 = residual(64);
  const double r128 = residual(128);
  CHECK(r128 <= 0.65 * r64);
}

TEST_CASE("construction validates symmetry and commutator hypotheses") {
  TimeGrid g = build_grid(0.0, 1.0, 4, 1.0);
  Eigen::MatrixXd asym(2, 2);
  asym << 1.0, 0.5, 0.0, 1.0;
  CHECK_THROWS_AS(
      MaterialLaw::create(2, constant_family(asym, g.n),
                          constant_family(Eigen::MatrixXd::Zero(2, 2), g.n),
                          std::nullopt, Regime::lipschitz),
      NotSymmetric);
  CHECK_THROWS_AS(
      MaterialLaw::create(2,
                          constant_family(Eigen::MatrixXd::Identity(2, 2), 4),
                          constant_family(Eigen::MatrixXd::Zero(2, 2), 3),
                          std::nullopt, Regime::lipschitz),
      SampleCountMismatch);
}

TEST_SUITE_END();
