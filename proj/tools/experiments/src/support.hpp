#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "experiments/params.hpp"
#include "experiments/presets.hpp"
#include "experiments/summary.hpp"
#include "logitmeta/distribution.hpp"
#include "logitmeta/state_space.hpp"

namespace experiments {

// Writes a CSV under ctx.out_dir/<summary name>/ and records it.
void emit_table(Summary& summary, const RunContext& ctx, const std::string& file,
                const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);

// (t, value) rows, keeping every `stride`-th entry plus the last.
std::vector<std::vector<double>> curve_rows(const std::vector<double>& curve, std::uint64_t stride = 1);

std::vector<std::size_t> states_where(const logitmeta::StateSpace& space, const std::string& predicate);

// Elements of `states` with no other element preceding them (see precedes()).
std::vector<std::size_t> minimal_elements(const std::vector<std::size_t>& states);

double max_over(const std::vector<double>& v, std::size_t from, std::size_t to);

std::string fmt(double v);

Summary preset_toy3(const Params& p, const RunContext& ctx);
Summary preset_coord2(const Params& p, const RunContext& ctx);
Summary preset_or_uniform_meta(const Params& p, const RunContext& ctx);
Summary preset_or_pseudo_mix(const Params& p, const RunContext& ctx);
Summary preset_ising_pi_meta(const Params& p, const RunContext& ctx);
Summary preset_ising_convergence(const Params& p, const RunContext& ctx);
Summary preset_ring_bottlenecks(const Params& p, const RunContext& ctx);
Summary preset_ring_pseudo(const Params& p, const RunContext& ctx);
Summary preset_ring_nodom(const Params& p, const RunContext& ctx);
Summary preset_bd_suite(const Params& p, const RunContext& ctx);

}  // namespace experiments
