#include "dnnbound/instance_io.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace dnnbound {

namespace {

bool parse_double(const std::string& tok, double& out) {
  const char* begin = tok.data();
  const char* end = begin + tok.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc{} && ptr == end;
}

bool parse_int(const std::string& tok, int& out) {
  const char* begin = tok.data();
  const char* end = begin + tok.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc{} && ptr == end;
}

std::string format_value(double v) {
  if (v == static_cast<long long>(v) && std::abs(v) < 1e15) {
    return std::to_string(static_cast<long long>(v));
  }
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

BiqmacInstance parse_biqmac(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;

  auto next_content_line = [&]() -> std::optional<std::string> {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r\n") != std::string::npos) return line;
    }
    return std::nullopt;
  };

  auto header = next_content_line();
  if (!header) throw ParseError("biqmac: empty input", 0);
  int r = 0, m = 0;
  {
    std::istringstream hs(*header);
    std::string t1, t2, extra;
    if (!(hs >> t1 >> t2) || (hs >> extra) || !parse_int(t1, r) ||
        !parse_int(t2, m)) {
      throw ParseError("biqmac: malformed header, expected \"r m\"", line_no);
    }
  }
  if (r < 1) throw ParseError("biqmac: size must be >= 1", line_no);
  if (m < 0) throw ParseError("biqmac: negative entry count", line_no);

  BiqmacInstance inst;
  inst.r = r;
  inst.F = Eigen::MatrixXd::Zero(r, r);
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> seen(r, r);
  seen.setConstant(false);

  for (int e = 0; e < m; ++e) {
    auto content = next_content_line();
    if (!content) {
      throw ParseError("biqmac: truncated file, expected " +
                           std::to_string(m) + " entries but found " +
                           std::to_string(e),
                       line_no);
    }
    std::istringstream es(*content);
    std::string ti, tj, tq, extra;
    int i = 0, j = 0;
    double q = 0;
    if (!(es >> ti >> tj >> tq) || (es >> extra) || !parse_int(ti, i) ||
        !parse_int(tj, j) || !parse_double(tq, q)) {
      throw ParseError("biqmac: malformed entry, expected \"i j q\"", line_no);
    }
    if (i < 1 || i > r || j < 1 || j > r) {
      throw ParseError("biqmac: index (" + std::to_string(i) + "," +
                           std::to_string(j) + ") out of range [1," +
                           std::to_string(r) + "]",
                       line_no);
    }
    if (seen(i - 1, j - 1)) {
      throw ParseError("biqmac: duplicate entry (" + std::to_string(i) + "," +
                           std::to_string(j) + ")",
                       line_no);
    }
    seen(i - 1, j - 1) = seen(j - 1, i - 1) = true;
    inst.F(i - 1, j - 1) = q;
    inst.F(j - 1, i - 1) = q;
  }
  if (next_content_line()) {
    throw ParseError("biqmac: trailing content after " + std::to_string(m) +
                         " entries",
                     line_no);
  }
  return inst;
}

std::string write_biqmac(const Eigen::MatrixXd& F) {
  const int r = static_cast<int>(F.rows());
  if (r < 1 || F.cols() != r || !F.isApprox(F.transpose(), 0)) {
    throw std::invalid_argument("write_biqmac: F must be square and symmetric");
  }
  std::vector<std::string> entries;
  for (int i = 0; i < r; ++i) {
    for (int j = i; j < r; ++j) {
      if (F(i, j) != 0.0) {
        entries.push_back(std::to_string(i + 1) + " " + std::to_string(j + 1) +
                          " " + format_value(F(i, j)));
      }
    }
  }
  std::ostringstream os;
  os << r << " " << entries.size() << "\n";
  for (const auto& e : entries) os << e << "\n";
  return os.str();
}

QaplibInstance parse_qaplib(const std::string& text) {
  std::istringstream in(text);
  std::vector<double> tokens;
  std::string tok;
  while (in >> tok) {
    double v = 0;
    if (!parse_double(tok, v)) {
      throw ParseError("qaplib: non-numeric token \"" + tok + "\"", 0);
    }
    tokens.push_back(v);
  }
  if (tokens.empty()) throw ParseError("qaplib: empty input", 0);
  const double r_raw = tokens[0];
  const int r = static_cast<int>(r_raw);
  if (r < 1 || r != r_raw) {
    throw ParseError("qaplib: first token must be a positive integer size", 0);
  }
  const std::size_t expected = 1 + 2 * static_cast<std::size_t>(r) * r;
  if (tokens.size() != expected) {
    throw ParseError("qaplib: expected " + std::to_string(expected) +
                         " tokens for r=" + std::to_string(r) + ", found " +
                         std::to_string(tokens.size()),
                     0);
  }
  QaplibInstance inst;
  inst.r = r;
  inst.A.resize(r, r);
  inst.B.resize(r, r);
  std::size_t pos = 1;
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) inst.A(i, j) = tokens[pos++];
  }
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) inst.B(i, j) = tokens[pos++];
  }
  return inst;
}

std::string write_qaplib(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  const int r = static_cast<int>(A.rows());
  if (r < 1 || A.cols() != r || B.rows() != r || B.cols() != r) {
    throw std::invalid_argument("write_qaplib: A and B must be square of equal size");
  }
  std::ostringstream os;
  os << r << "\n\n";
  for (const Eigen::MatrixXd* mat : {&A, &B}) {
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < r; ++j) {
        os << (j ? " " : "") << format_value((*mat)(i, j));
      }
      os << "\n";
    }
    os << "\n";
  }
  return os.str();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open file: " + path.string());
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

BiqmacInstance load_biqmac_file(const std::filesystem::path& path) {
  try {
    return parse_biqmac(read_text_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.message(), e.line());
  }
}

QaplibInstance load_qaplib_file(const std::filesystem::path& path) {
  try {
    return parse_qaplib(read_text_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.message(), e.line());
  }
}

InstanceFile describe_instance(const std::filesystem::path& path,
                               std::optional<InstanceFormat> format) {
  const std::string text = read_text_file(path);
  InstanceFile f;
  f.path = path;
  if (format) {
    f.format = *format;
    if (*format == InstanceFormat::Biqmac) {
      f.r = parse_biqmac(text).r;
    } else {
      f.r = parse_qaplib(text).r;
    }
    return f;
  }
  // a QAPLIB file is a bare token stream with exactly 1 + 2r^2 numbers;
  // try it first, then fall back to the triple format
  try {
    f.r = parse_qaplib(text).r;
    f.format = InstanceFormat::Qaplib;
    return f;
  } catch (const ParseError&) {
  }
  f.r = parse_biqmac(text).r;
  f.format = InstanceFormat::Biqmac;
  return f;
}

}  // namespace dnnbound
