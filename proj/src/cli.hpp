#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace qgraph::cli {

enum class Scale { linear, log };

/** start:stop:step, or start:stop:count:log. */
struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;
  std::size_t count = 0;
  Scale scale = Scale::linear;

  void validate() const;
  std::vector<double> points() const;
};

GridSpec parse_grid(const std::string& text);

using Cell = std::variant<std::int64_t, double, std::string, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

void write_csv(const Table& t, std::ostream& os);
void write_json(const Table& t, std::ostream& os);

enum Exit { ok = 0, usage = 1, not_converged = 2 };

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace qgraph::cli
