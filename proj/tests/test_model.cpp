#include <cmath>
#include <random>
#include <stdexcept>

#include <doctest.h>

#include "dnnbound/model.hpp"
#include "dnnbound/oracle.hpp"
#include "dnnbound/synthetic.hpp"
#include "test_util.hpp"

using namespace dnnbound;

namespace {

SymMatrix lift_point(const Eigen::VectorXd& u) {
  Eigen::VectorXd x(u.size() + 1);
  x(0) = 1.0;
  x.tail(u.size()) = u;
  return SymMatrix::symmetrized(x * x.transpose());
}

}  // namespace

TEST_SUITE_BEGIN("model");

TEST_CASE("build_dnn direct substitution") {
  QopModel q;
  q.n = 1;
  q.C = Eigen::MatrixXd::Constant(1, 1, 2.0);
  q.c = Eigen::VectorXd::Constant(1, 3.0);
  q.A = Eigen::MatrixXd(0, 1);
  q.b = Eigen::VectorXd(0);
  const DnnCop d = build_dnn(q);
  CHECK(d.Q0(0, 0) == 0.0);
  CHECK(d.Q0(0, 1) == 3.0);
  CHECK(d.Q0(1, 0) == 3.0);
  CHECK(d.Q0(1, 1) == 2.0);
  CHECK(norm(d.H1) == 0.0);
  CHECK(d.H0(0, 0) == 1.0);
  CHECK(inner(d.H0, d.H0) == 1.0);
}

TEST_CASE("build_dnn rank-one constraint Gram matrix") {
  QopModel q;
  q.n = 2;
  q.C = Eigen::MatrixXd::Zero(2, 2);
  q.c = Eigen::VectorXd::Zero(2);
  q.A = Eigen::MatrixXd::Ones(1, 2);
  q.b = Eigen::VectorXd::Ones(1);
  const DnnCop d = build_dnn(q);
  Eigen::MatrixXd expected(3, 3);
  expected << 1, -1, -1, -1, 1, 1, -1, 1, 1;
  CHECK((d.H1.mat() - expected).norm() == 0.0);
}

TEST_CASE("lifted feasible points annihilate H1") {
  const Eigen::MatrixXd f = random_bqop_matrix(3, 99);
  const QopModel q = build_bqop(f, false);
  const DnnCop d = build_dnn(q);
  // every binary v with w = e - v is feasible
  for (int code = 0; code < 8; ++code) {
    Eigen::VectorXd u(6);
    for (int i = 0; i < 3; ++i) {
      u(i) = (code >> i) & 1;
      u(3 + i) = 1.0 - u(i);
    }
    const SymMatrix xx = lift_point(u);
    CHECK(std::abs(inner(d.H1, xx)) <= 1e-12);
    CHECK(inner(d.H0, xx) == 1.0);
  }
}

TEST_CASE("build_bqop shape") {
  const Eigen::MatrixXd f = Eigen::MatrixXd::Zero(2, 2);
  const QopModel q = build_bqop(f, false);
  CHECK(q.n == 4);
  Eigen::MatrixXd expected(2, 4);
  expected << 1, 0, 1, 0, 0, 1, 0, 1;
  CHECK((q.A - expected).norm() == 0.0);
  CHECK((q.b - Eigen::VectorXd::Ones(2)).norm() == 0.0);
  CHECK(q.bin_indices.size() == 4);
  CHECK(q.comp_pairs.empty());
  CHECK(q.feasible_objective == 0.0);

  CHECK(brute_qop_binary(q).value == 0.0);
}

TEST_CASE("build_bqop lift preserves the optimum") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const Eigen::MatrixXd f = random_bqop_matrix(3, seed);
    const double direct = brute_bqop(f).value;
    const QopOptimum lifted = brute_qop_binary(build_bqop(f, false));
    CHECK(lifted.feasible);
    CHECK(lifted.value == doctest::Approx(direct).epsilon(1e-12));
    // maximization flips the sign of the quadratic form
    const double direct_max = -brute_bqop(-f).value;
    const QopOptimum lifted_max = brute_qop_binary(build_bqop(f, true));
    CHECK(lifted_max.value == doctest::Approx(-direct_max).epsilon(1e-12));
  }
}

TEST_CASE("build_bqop rejects asymmetric input") {
  Eigen::MatrixXd f(2, 2);
  f << 0, 1, 2, 0;
  CHECK_THROWS_AS(build_bqop(f, false), std::invalid_argument);
}

TEST_CASE("build_qap toy instance") {
  Eigen::MatrixXd a(2, 2), b(2, 2);
  a << 0, 1, 1, 0;
  b << 0, 3, 3, 0;
  CHECK(brute_qap(a, b).value == 6.0);
  const QopModel q = build_qap(a, b);
  CHECK(q.n == 4);
  const QopOptimum lifted = brute_qop_binary(q);
  CHECK(lifted.feasible);
  CHECK(lifted.value == doctest::Approx(6.0));
  REQUIRE(q.feasible_objective.has_value());
  CHECK(*q.feasible_objective == doctest::Approx((a.array() * b.array()).sum()));
}

TEST_CASE("build_qap identity permutation is feasible") {
  auto [a, b] = random_qap_pair(3, 4);
  const QopModel q = build_qap(a, b);
  const DnnCop d = build_dnn(q);
  Eigen::MatrixXd w = Eigen::MatrixXd::Identity(3, 3);
  Eigen::VectorXd u = Eigen::Map<Eigen::VectorXd>(w.data(), 9);
  CHECK((q.A * u - q.b).lpNorm<Eigen::Infinity>() == 0.0);
  CHECK(std::abs(inner(d.H1, lift_point(u))) <= 1e-12);
}

TEST_CASE("build_qap matches the permutation enumeration") {
  for (std::uint64_t seed : {5u, 6u}) {
    auto [a, b] = random_qap_pair(3, seed);
    const double direct = brute_qap(a, b).value;
    const QopOptimum lifted = brute_qop_binary(build_qap(a, b));
    CHECK(lifted.feasible);
    CHECK(lifted.value == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("objective lift identity") {
  std::mt19937_64 rng(8);
  const Eigen::MatrixXd f = random_bqop_matrix(4, 77);
  const QopModel q = build_bqop(f, false);
  const DnnCop d = build_dnn(q);
  for (int rep = 0; rep < 10; ++rep) {
    Eigen::VectorXd u(q.n);
    for (int i = 0; i < q.n; ++i) u(i) = testutil::sym_real(rng, 2.0);
    const double direct = u.dot(q.C * u) + 2.0 * q.c.dot(u);
    const double lifted = inner(d.Q0, lift_point(u));
    CHECK(lifted == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("lagrangian folding") {
  const Eigen::MatrixXd f = random_bqop_matrix(2, 12);
  const DnnCop d = build_dnn(build_bqop(f, false));
  const LagrangianCop cop = lagrangian(d, 10000.0);
  CHECK(cop.rho == 5.0);  // 1 + n with n = 4
  CHECK(norm((cop.Q - d.Q0) - 10000.0 * d.H1) <=
        1e-12 * (1.0 + 10000.0 * norm(d.H1)));
  CHECK(norm(cop.H - d.H0) == 0.0);

  CHECK_THROWS_AS(lagrangian(d, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(lagrangian(d, -1.0), std::invalid_argument);
  CHECK(lagrangian(d, 1.0, 7.0).rho == 7.0);

  // H1 = 0 leaves the objective untouched
  QopModel loose;
  loose.n = 2;
  loose.C = Eigen::MatrixXd::Identity(2, 2);
  loose.c = Eigen::VectorXd::Zero(2);
  loose.A = Eigen::MatrixXd(0, 2);
  loose.b = Eigen::VectorXd(0);
  loose.bin_indices = {1, 2};
  const DnnCop d2 = build_dnn(loose);
  CHECK(norm(lagrangian(d2, 123.0).Q - d2.Q0) == 0.0);
}

TEST_CASE("automatic rho needs all-binary variables") {
  QopModel q;
  q.n = 2;
  q.C = Eigen::MatrixXd::Identity(2, 2);
  q.c = Eigen::VectorXd::Zero(2);
  q.A = Eigen::MatrixXd(0, 2);
  q.b = Eigen::VectorXd(0);
  q.bin_indices = {1};  // variable 2 unconstrained: trace bound unavailable
  const DnnCop d = build_dnn(q);
  CHECK_THROWS_AS(lagrangian(d, 10.0), std::invalid_argument);
  CHECK_NOTHROW(lagrangian(d, 10.0, 3.0));
}

TEST_CASE("qap_tight_rho") {
  CHECK(qap_tight_rho(12) == 13.0);
  CHECK_THROWS_AS(qap_tight_rho(0), std::invalid_argument);
}

TEST_CASE("lifted feasible points live in the cone") {
  const Eigen::MatrixXd f = random_bqop_matrix(2, 31);
  const QopModel q = build_bqop(f, false);
  const DnnCop d = build_dnn(q);
  for (int code = 0; code < 4; ++code) {
    Eigen::VectorXd u(4);
    for (int i = 0; i < 2; ++i) {
      u(i) = (code >> i) & 1;
      u(2 + i) = 1.0 - u(i);
    }
    const SymMatrix xx = lift_point(u);
    CHECK(norm(project_psd(xx) - xx) <= 1e-10 * (1.0 + norm(xx)));
    CHECK(norm(project_k2(xx, d.cone) - xx) <= 1e-12);
  }
}

TEST_SUITE_END();
