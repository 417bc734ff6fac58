// Plain-text front files: one point per line, values separated by a single
// space, lines starting with '#' are comments.

#ifndef MOPSOCA_FRONT_IO_HPP
#define MOPSOCA_FRONT_IO_HPP

#include "mopsoca/types.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mopsoca {

class FrontFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest decimal text that reads back to the same double.
std::string format_double(double value);

/// Values joined by `separator`, each formatted with format_double.
std::string join_values(const VectorXd& values, std::string_view separator = " ");

void write_front(std::ostream& out, std::span<const VectorXd> points,
                 std::string_view comment = {});
void write_front(const std::filesystem::path& path, std::span<const VectorXd> points,
                 std::string_view comment = {});

std::vector<VectorXd> read_front(std::istream& in);
std::vector<VectorXd> read_front(const std::filesystem::path& path);

/// Parses "a,b,c" into a vector.
VectorXd parse_csv_vector(std::string_view text);

}  // namespace mopsoca

#endif  // MOPSOCA_FRONT_IO_HPP
