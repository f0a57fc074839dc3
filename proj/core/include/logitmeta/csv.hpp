#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "logitmeta/birth_death.hpp"
#include "logitmeta/distribution.hpp"
#include "logitmeta/stochastic_matrix.hpp"

namespace logitmeta {

// %.17g
std::string format_number(double value);

// Comma-separated table with a header line.
void write_table(std::ostream& out, const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows);
void write_table(const std::filesystem::path& path, const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows);

// Distribution: "dimension,N" then one "state,probability" line per state.
void write_distribution(std::ostream& out, const Distribution& mu);
Distribution read_distribution(std::istream& in);

// Matrix: "dimension,N" then N row-major lines of N entries.
void write_matrix(std::ostream& out, const StochasticMatrix& p);
StochasticMatrix read_matrix(std::istream& in);

// Columns k,p,q,r,label.
void write_birth_death(std::ostream& out, const BirthDeathChain& chain);
BirthDeathChain read_birth_death(std::istream& in);

void save_to_file(const std::filesystem::path& path, const std::string& text);
std::string load_file(const std::filesystem::path& path);

}  // namespace logitmeta
