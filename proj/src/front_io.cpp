#include "mopsoca/front_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace mopsoca {

namespace {

double parse_double(std::string_view token, std::size_t line_no) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw FrontFormatError("line " + std::to_string(line_no) + ": invalid number '" +
                           std::string(token) + "'");
  }
  return value;
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

std::string join_values(const VectorXd& values, std::string_view separator) {
  std::string out;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (i > 0) out += separator;
    out += format_double(values(i));
  }
  return out;
}

void write_front(std::ostream& out, std::span<const VectorXd> points, std::string_view comment) {
  if (!comment.empty()) out << "# " << comment << '\n';
  for (const auto& p : points) out << join_values(p) << '\n';
}

void write_front(const std::filesystem::path& path, std::span<const VectorXd> points,
                 std::string_view comment) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write front file " + path.string());
  write_front(out, points, comment);
  if (!out) throw std::runtime_error("failed writing front file " + path.string());
}

std::vector<VectorXd> read_front(std::istream& in) {
  std::vector<VectorXd> points;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;

    std::vector<double> values;
    std::istringstream tokens(line);
    std::string token;
    while (tokens >> token) values.push_back(parse_double(token, line_no));
    if (!points.empty() && values.size() != static_cast<std::size_t>(points.front().size())) {
      throw FrontFormatError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(points.front().size()) + " values");
    }
    points.push_back(Eigen::Map<const VectorXd>(values.data(),
                                                static_cast<Eigen::Index>(values.size())));
  }
  return points;
}

std::vector<VectorXd> read_front(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read front file " + path.string());
  return read_front(in);
}

VectorXd parse_csv_vector(std::string_view text) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    auto token = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    values.push_back(parse_double(token, 1));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return Eigen::Map<const VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

}  // namespace mopsoca
