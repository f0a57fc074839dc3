#include "support.hpp"

#include <algorithm>

#include "logitmeta/csv.hpp"
#include "logitmeta/simulation.hpp"
#include "logitmeta/subsets.hpp"

namespace experiments {

void emit_table(Summary& summary, const RunContext& ctx, const std::string& file,
                const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  if (ctx.out_dir.empty()) return;
  const auto path = ctx.out_dir / summary.name() / file;
  logitmeta::write_table(path, header, rows);
  summary.add_file(path);
}

std::vector<std::vector<double>> curve_rows(const std::vector<double>& curve, std::uint64_t stride) {
  std::vector<std::vector<double>> rows;
  if (stride == 0) stride = 1;
  for (std::size_t t = 0; t < curve.size(); ++t) {
    if (t % stride == 0 || t + 1 == curve.size()) rows.push_back({static_cast<double>(t), curve[t]});
  }
  return rows;
}

std::vector<std::size_t> states_where(const logitmeta::StateSpace& space, const std::string& predicate) {
  return logitmeta::named_subset(space, predicate).members();
}

std::vector<std::size_t> minimal_elements(const std::vector<std::size_t>& states) {
  std::vector<std::size_t> out;
  for (auto z : states) {
    const bool dominated = std::any_of(states.begin(), states.end(),
                                       [z](std::size_t w) { return w != z && logitmeta::precedes(w, z); });
    if (!dominated) out.push_back(z);
  }
  return out;
}

double max_over(const std::vector<double>& v, std::size_t from, std::size_t to) {
  double m = 0.0;
  for (std::size_t t = from; t <= to && t < v.size(); ++t) m = std::max(m, v[t]);
  return m;
}

std::string fmt(double v) { return logitmeta::format_number(v); }

}  // namespace experiments
