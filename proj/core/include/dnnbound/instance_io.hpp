#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace dnnbound {

/// Located parse failure: line is 1-based, 0 when the failure has no line
/// (e.g. a flat token stream).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line)
      : std::runtime_error(line > 0 ? message + " (line " +
                                          std::to_string(line) + ")"
                                    : message),
        message_(message),
        line_(line) {}
  int line() const { return line_; }
  const std::string& message() const { return message_; }

 private:
  std::string message_;
  int line_;
};

enum class InstanceFormat { Biqmac, Qaplib };

struct InstanceFile {
  std::filesystem::path path;
  InstanceFormat format = InstanceFormat::Biqmac;
  int r = 0;
};

/// Sparse triple format used by the BiqMac corpus: a "r m" header, then m
/// lines "i j q" (1-based). Off-diagonal entries are listed once and mirror
/// into both positions; unlisted entries are zero.
struct BiqmacInstance {
  int r = 0;
  Eigen::MatrixXd F;
};
BiqmacInstance parse_biqmac(const std::string& text);
std::string write_biqmac(const Eigen::MatrixXd& F);

/// Flat QAPLIB format: the size r followed by the r^2 entries of A and then
/// the r^2 entries of B, whitespace-delimited, row-major.
struct QaplibInstance {
  int r = 0;
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;
};
QaplibInstance parse_qaplib(const std::string& text);
std::string write_qaplib(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B);

std::string read_text_file(const std::filesystem::path& path);

BiqmacInstance load_biqmac_file(const std::filesystem::path& path);
QaplibInstance load_qaplib_file(const std::filesystem::path& path);

/// Probe a file and report its detected format and size.
InstanceFile describe_instance(const std::filesystem::path& path,
                               std::optional<InstanceFormat> format = {});

}  // namespace dnnbound
