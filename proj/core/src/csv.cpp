#include "logitmeta/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "logitmeta/error.hpp"

namespace logitmeta {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    cells.push_back(cell);
  }
  return cells;
}

double parse_number(const std::string& cell, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used != cell.size()) throw std::invalid_argument(cell);
    return v;
  } catch (const std::exception&) {
    throw InvalidArgument("line " + std::to_string(line) + ": '" + cell + "' is not a number");
  }
}

bool next_line(std::istream& in, std::string& line, std::size_t& number) {
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line != "\r") return true;
  }
  return false;
}

std::size_t read_dimension(std::istream& in, std::size_t& number) {
  std::string line;
  if (!next_line(in, line, number)) throw InvalidArgument("empty input");
  const auto cells = split_line(line);
  if (cells.size() != 2 || cells[0] != "dimension") {
    throw InvalidArgument("line " + std::to_string(number) + ": expected 'dimension,N'");
  }
  const double n = parse_number(cells[1], number);
  if (n < 0 || n != std::floor(n)) throw InvalidArgument("line " + std::to_string(number) + ": bad dimension");
  return static_cast<std::size_t>(n);
}

}  // namespace

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_table(std::ostream& out, const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows) {
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
}

void write_table(const std::filesystem::path& path, const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows) {
  std::ostringstream out;
  write_table(out, header, rows);
  save_to_file(path, out.str());
}

void write_distribution(std::ostream& out, const Distribution& mu) {
  out << "dimension," << mu.size() << '\n';
  for (std::size_t x = 0; x < mu.size(); ++x) out << x << ',' << format_number(mu[x]) << '\n';
}

Distribution read_distribution(std::istream& in) {
  std::size_t number = 0;
  const std::size_t n = read_dimension(in, number);
  std::vector<double> p(n, 0.0);
  std::vector<bool> seen(n, false);
  std::string line;
  while (next_line(in, line, number)) {
    const auto cells = split_line(line);
    if (cells.size() != 2) throw InvalidArgument("line " + std::to_string(number) + ": expected 'state,probability'");
    const double x = parse_number(cells[0], number);
    if (x < 0 || x >= static_cast<double>(n) || x != std::floor(x)) {
      throw InvalidArgument("line " + std::to_string(number) + ": state out of range");
    }
    const auto s = static_cast<std::size_t>(x);
    if (seen[s]) throw InvalidArgument("line " + std::to_string(number) + ": duplicate state");
    seen[s] = true;
    p[s] = parse_number(cells[1], number);
  }
  return Distribution(std::move(p));
}

void write_matrix(std::ostream& out, const StochasticMatrix& p) {
  const std::size_t n = p.size();
  out << "dimension," << n << '\n';
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) out << (y ? "," : "") << format_number(p(x, y));
    out << '\n';
  }
}

StochasticMatrix read_matrix(std::istream& in) {
  std::size_t number = 0;
  const std::size_t n = read_dimension(in, number);
  std::vector<double> a;
  a.reserve(n * n);
  std::string line;
  std::size_t rows = 0;
  while (next_line(in, line, number)) {
    const auto cells = split_line(line);
    if (cells.size() != n) throw InvalidArgument("line " + std::to_string(number) + ": expected " + std::to_string(n) + " entries");
    for (const auto& c : cells) a.push_back(parse_number(c, number));
    ++rows;
  }
  if (rows != n) throw InvalidArgument("expected " + std::to_string(n) + " rows, found " + std::to_string(rows));
  return StochasticMatrix(n, std::move(a));
}

void write_birth_death(std::ostream& out, const BirthDeathChain& chain) {
  chain.validate();
  out << "k,p,q,r,label\n";
  for (int k = 0; k <= chain.top(); ++k) {
    const auto i = static_cast<std::size_t>(k);
    out << k << ',' << format_number(chain.up[i]) << ',' << format_number(chain.down[i]) << ','
        << format_number(chain.hold(k)) << ',' << format_number(chain.label(k)) << '\n';
  }
}

BirthDeathChain read_birth_death(std::istream& in) {
  std::size_t number = 0;
  std::string line;
  if (!next_line(in, line, number)) throw InvalidArgument("empty input");
  const auto header = split_line(line);
  if (header.size() < 3 || header[0] != "k" || header[1] != "p" || header[2] != "q") {
    throw InvalidArgument("line 1: expected header 'k,p,q[,r][,label]'");
  }
  std::size_t label_col = header.size();
  for (std::size_t i = 3; i < header.size(); ++i) {
    if (header[i] == "label") label_col = i;
  }
  BirthDeathChain chain;
  std::vector<double> labels;
  while (next_line(in, line, number)) {
    const auto cells = split_line(line);
    if (cells.size() != header.size()) throw InvalidArgument("line " + std::to_string(number) + ": wrong column count");
    const double k = parse_number(cells[0], number);
    if (k != static_cast<double>(chain.up.size())) {
      throw InvalidArgument("line " + std::to_string(number) + ": states must be listed as 0, 1, 2, ...");
    }
    chain.up.push_back(parse_number(cells[1], number));
    chain.down.push_back(parse_number(cells[2], number));
    if (label_col < cells.size()) labels.push_back(parse_number(cells[label_col], number));
  }
  if (chain.up.empty()) throw InvalidArgument("no states");
  if (labels.size() >= 2) {
    chain.label_offset = labels[0];
    chain.label_scale = labels[1] - labels[0];
    for (std::size_t k = 0; k < labels.size(); ++k) {
      if (std::abs(chain.label(static_cast<int>(k)) - labels[k]) > 1e-9 * (1 + std::abs(labels[k]))) {
        throw InvalidArgument("labels must be an affine function of k");
      }
    }
  } else if (labels.size() == 1) {
    chain.label_offset = labels[0];
  }
  chain.validate();
  return chain;
}

void save_to_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error("failed writing " + path.string());
}

std::string load_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace logitmeta
