#include <filesystem>
#include <fstream>

#include <doctest.h>

#include "dnnbound/instance_io.hpp"
#include "dnnbound/synthetic.hpp"

using namespace dnnbound;

TEST_SUITE_BEGIN("instance_io");

TEST_CASE("biqmac basic parse") {
  const BiqmacInstance inst = parse_biqmac("2 1\n1 2 5\n");
  CHECK(inst.r == 2);
  CHECK(inst.F(0, 0) == 0.0);
  CHECK(inst.F(0, 1) == 5.0);
  CHECK(inst.F(1, 0) == 5.0);
  CHECK(inst.F(1, 1) == 0.0);

  const BiqmacInstance diag = parse_biqmac("1 1\n1 1 -3\n");
  CHECK(diag.r == 1);
  CHECK(diag.F(0, 0) == -3.0);
}

TEST_CASE("biqmac accepts blank lines and decimal entries") {
  const BiqmacInstance inst = parse_biqmac("2 2\n\n1 1 0.5\n2 2 -1.25\n");
  CHECK(inst.F(0, 0) == 0.5);
  CHECK(inst.F(1, 1) == -1.25);
}

TEST_CASE("biqmac located errors") {
  // malformed header
  CHECK_THROWS_AS(parse_biqmac(""), ParseError);
  CHECK_THROWS_AS(parse_biqmac("2\n"), ParseError);

  // index out of range, with the offending line number
  try {
    parse_biqmac("2 1\n1 3 5\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }

  // duplicate entry
  try {
    parse_biqmac("2 2\n1 2 5\n2 1 4\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }

  // truncated file
  CHECK_THROWS_AS(parse_biqmac("2 2\n1 2 5\n"), ParseError);
  // trailing content
  CHECK_THROWS_AS(parse_biqmac("2 1\n1 2 5\n1 1 1\n"), ParseError);
  // non-numeric token
  CHECK_THROWS_AS(parse_biqmac("2 1\n1 2 x\n"), ParseError);
}

TEST_CASE("biqmac round trip") {
  const Eigen::MatrixXd f = random_bqop_matrix(5, 42);
  const BiqmacInstance back = parse_biqmac(write_biqmac(f));
  CHECK(back.r == 5);
  CHECK((back.F - f).norm() == 0.0);
}

TEST_CASE("qaplib basic parse") {
  const QaplibInstance inst = parse_qaplib("2 0 1 1 0 0 3 3 0");
  CHECK(inst.r == 2);
  CHECK(inst.A(0, 1) == 1.0);
  CHECK(inst.A(1, 0) == 1.0);
  CHECK(inst.B(0, 1) == 3.0);
  CHECK(inst.B(1, 1) == 0.0);

  const QaplibInstance zeros = parse_qaplib("1 0 0");
  CHECK(zeros.A(0, 0) == 0.0);
  CHECK(zeros.B(0, 0) == 0.0);
}

TEST_CASE("qaplib token-count errors") {
  CHECK_THROWS_AS(parse_qaplib(""), ParseError);
  CHECK_THROWS_AS(parse_qaplib("2 0 1 1 0 0 3 3"), ParseError);     // missing
  CHECK_THROWS_AS(parse_qaplib("2 0 1 1 0 0 3 3 0 7"), ParseError); // extra
  CHECK_THROWS_AS(parse_qaplib("x 0 1"), ParseError);
  CHECK_THROWS_AS(parse_qaplib("0"), ParseError);
}

TEST_CASE("qaplib round trip") {
  auto [a, b] = random_qap_pair(4, 7);
  const QaplibInstance back = parse_qaplib(write_qaplib(a, b));
  CHECK((back.A - a).norm() == 0.0);
  CHECK((back.B - b).norm() == 0.0);
}

TEST_CASE("format detection") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "dnnbound_io_test";
  fs::create_directories(dir);

  const fs::path qap = dir / "toy.dat";
  {
    std::ofstream out(qap);
    out << write_qaplib(Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd::Zero(2, 2));
  }
  const InstanceFile fq = describe_instance(qap);
  CHECK(fq.format == InstanceFormat::Qaplib);
  CHECK(fq.r == 2);

  const fs::path bqp = dir / "toy.sparse";
  {
    std::ofstream out(bqp);
    out << write_biqmac(random_bqop_matrix(3, 1));
  }
  const InstanceFile fb = describe_instance(bqp);
  CHECK(fb.format == InstanceFormat::Biqmac);
  CHECK(fb.r == 3);

  fs::remove_all(dir);
}

TEST_SUITE_END();
